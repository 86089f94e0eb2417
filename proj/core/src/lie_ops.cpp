#include "sympgeo/lie_ops.hpp"

#include "field_ops.hpp"

namespace sympgeo {
namespace {

// (1 + Lap) applied to a symplectic field, as an ambient velocity.
VelocityField inertia_velocity(const SymplecticVectorField& w) {
  SpectrumField s = w.stream();
  s.axpy(1.0, apply_multiplier(w.stream(), Multiplier::kLapPos));
  return to_velocity(SymplecticVectorField(std::move(s), w.harmonic()));
}

struct VelocityInterpolant {
  TrigInterpolant c1;
  TrigInterpolant c2;
  explicit VelocityInterpolant(const VelocityField& u)
      : c1(u.u1, kFlowInterpTolerance), c2(u.u2, kFlowInterpTolerance) {}
  Vec2 operator()(Point2 p) const {
    const Point2 w{wrap_coordinate(p.x), wrap_coordinate(p.y)};
    return {c1(w), c2(w)};
  }
};

Vec2 mul(const Mat2& m, Vec2 a) { return {m[0] * a[0] + m[1] * a[1], m[2] * a[0] + m[3] * a[1]}; }
Vec2 mul_transpose(const Mat2& m, Vec2 a) { return {m[0] * a[0] + m[2] * a[1], m[1] * a[0] + m[3] * a[1]}; }

VelocityField from_samples(const Grid2D& grid, const std::vector<Vec2>& samples) {
  VelocitySamples s{PhysicalField(grid), PhysicalField(grid)};
  for (std::size_t j = 0; j < samples.size(); ++j) {
    s.v1.data()[j] = samples[j][0];
    s.v2.data()[j] = samples[j][1];
  }
  return to_spectral(s);
}

}  // namespace

SymplecticVectorField ad(const SymplecticVectorField& v, const SymplecticVectorField& u) {
  const VelocityField a = to_velocity(v);
  const VelocityField b = to_velocity(u);
  SpectrumField omega = dealiased_product(a.u1, b.u2);
  omega -= dealiased_product(a.u2, b.u1);
  return SymplecticVectorField(std::move(omega));
}

VelocityField lie_bracket(const VelocityField& a, const VelocityField& b) {
  return detail::scaled_sum(1.0, detail::advect(a, b), -1.0, detail::advect(b, a));
}

SymplecticVectorField ad_star(const SymplecticVectorField& v, const SymplecticVectorField& w) {
  const SpectrumField q = casimir_q(w);
  const VelocityField u = to_velocity(v);
  // q J v with J v = (v2, -v1)
  VelocityField qjv(dealiased_product(q, u.u2), -1.0 * dealiased_product(q, u.u1));
  SymplecticVectorField out = helmholtz_inverse(project_P(qjv));
  out *= -1.0;
  return out;
}

SymplecticVectorField K_op(const SymplecticVectorField& v, const SymplecticVectorField& w) { return ad_star(w, v); }

VelocityField Ad_group(const FlowMapSampler& eta, const SymplecticVectorField& w, Direction direction) {
  const Grid2D& grid = w.grid();
  const VelocityInterpolant wi(to_velocity(w));
  std::vector<Vec2> out(grid.size());
  if (direction == Direction::kInverse) {
    const auto pos = eta.map().positions();
    const auto jac = eta.map().jacobians();
    for (std::size_t j = 0; j < out.size(); ++j) out[j] = mul(inverse(jac[j]), wi(pos[j]));
  } else {
    const auto& pts = eta.lattice_inverse().points;
    const auto& jac = eta.lattice_inverse_jacobians();
    for (std::size_t j = 0; j < out.size(); ++j) out[j] = mul(jac[j], wi(pts[j]));
  }
  return from_samples(grid, out);
}

Projection Ad_symplectic(const FlowMapSampler& eta, const SymplecticVectorField& w, Direction direction) {
  return project_P_with_residual(Ad_group(eta, w, direction));
}

SymplecticVectorField coAd_group(const FlowMapSampler& eta, const SymplecticVectorField& w, Direction direction) {
  const Grid2D& grid = w.grid();
  const VelocityInterpolant mi(inertia_velocity(w));
  std::vector<Vec2> out(grid.size());
  if (direction == Direction::kForward) {
    const auto pos = eta.map().positions();
    const auto jac = eta.map().jacobians();
    for (std::size_t j = 0; j < out.size(); ++j) out[j] = mul_transpose(jac[j], mi(pos[j]));
  } else {
    // D(eta^{-1})(x) = (D eta(eta^{-1} x))^{-1}
    const auto& pts = eta.lattice_inverse().points;
    const auto& jac = eta.lattice_inverse_jacobians();
    for (std::size_t j = 0; j < out.size(); ++j) out[j] = mul_transpose(inverse(jac[j]), mi(pts[j]));
  }
  return helmholtz_inverse(project_P(from_samples(grid, out)));
}

Eigen::MatrixXd Ad_matrix(const FlowMapSampler& eta, const GalerkinBasis& basis, Direction direction) {
  return basis.assemble([&](const SymplecticVectorField& e) { return project_P(Ad_group(eta, e, direction)); });
}

Eigen::MatrixXd Ad_star_matrix(const FlowMapSampler& eta, const GalerkinBasis& basis, Direction direction) {
  return basis.adjoint(Ad_matrix(eta, basis, direction));
}

}  // namespace sympgeo
