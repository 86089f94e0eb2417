#include "sympgeo/jacobi.hpp"

#include <cmath>
#include <sstream>

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include "field_ops.hpp"
#include "sympgeo/error.hpp"
#include "sympgeo/lie_ops.hpp"

namespace sympgeo {
namespace {

// ad_v y from the lattice samples of v: J grad of omega(v, y) = v1 y2 - v2 y1.
SymplecticVectorField ad_from_physics(const detail::VelocityPhysics& v, const SymplecticVectorField& y,
                                      bool dealias) {
  const VelocityField yv = to_velocity(y);
  const PhysicalField y1 = transform(detail::maybe_dealias(yv.u1, dealias));
  const PhysicalField y2 = transform(detail::maybe_dealias(yv.u2, dealias));
  PhysicalField omega = v.value[0] * y2;
  auto o = omega.data();
  auto a = v.value[1].data();
  auto b = y1.data();
  for (std::size_t j = 0; j < o.size(); ++j) o[j] -= a[j] * b[j];
  return SymplecticVectorField(detail::maybe_dealias(transform(omega), dealias));
}

JacobiRate rate_from_physics(const SymplecticVectorField& y, const SymplecticVectorField& z,
                             const detail::VelocityPhysics& v, bool dealias) {
  const detail::VelocityPhysics zp(to_velocity(z), dealias);
  SymplecticVectorField zdot = helmholtz_inverse(project_P(detail::h1_nonlinear_sym(zp, v, dealias)));
  zdot *= -1.0;
  SymplecticVectorField ydot = z;
  ydot += ad_from_physics(v, y, dealias);
  return {std::move(ydot), std::move(zdot)};
}

// Cholesky factor L of the Gram matrix; coordinates c map to L^T c in an
// H1-orthonormal frame.
Eigen::MatrixXd gram_factor(const Eigen::MatrixXd& gram) {
  Eigen::LLT<Eigen::MatrixXd> llt(gram);
  if (llt.info() != Eigen::Success) throw ConfigError("Gram matrix is not positive definite");
  return llt.matrixL();
}

// L^T A L^{-T}
Eigen::MatrixXd orthonormal_frame(const Eigen::MatrixXd& a, const Eigen::MatrixXd& l) {
  const Eigen::MatrixXd lt = l.transpose();
  const Eigen::MatrixXd x = lt * a;
  // x L^{-T} = (L^{-1} x^T)^T
  return l.triangularView<Eigen::Lower>().solve(x.transpose()).transpose();
}

int count_below(const Eigen::VectorXd& sigma, double threshold) {
  int c = 0;
  for (Eigen::Index i = 0; i < sigma.size(); ++i) c += sigma(i) < threshold ? 1 : 0;
  return c;
}

void require_uniform_samples(const Trajectory& traj, double t, std::size_t& count, double& h) {
  const auto& s = traj.samples;
  if (!traj.config.track_flow) throw ConfigError("Omega/Gamma assembly needs a trajectory with the flow map");
  if (s.size() < 2 || s.front().t != 0.0) throw ConfigError("trajectory needs samples starting at t = 0");
  h = s[1].t - s[0].t;
  const double tol = 1e-9 * std::max(1.0, t);
  count = 0;
  for (std::size_t j = 0; j < s.size() && s[j].t <= t + tol; ++j) {
    if (std::abs(s[j].t - static_cast<double>(j) * h) > tol) {
      throw ConfigError("trajectory samples must be equally spaced for Omega/Gamma quadrature");
    }
    count = j + 1;
  }
  if (count < 2 || std::abs(s[count - 1].t - t) > tol) {
    std::ostringstream msg;
    msg << "no trajectory sample at t = " << t << " (sample spacing " << h << ")";
    throw ConfigError(msg.str());
  }
}

}  // namespace

JacobiState JacobiState::initial(const SymplecticVectorField& w0) {
  return JacobiState{SymplecticVectorField(w0.grid()), w0, 0.0};
}

JacobiRate jacobi_rhs(const JacobiState& state, const SymplecticVectorField& background_v, bool dealias) {
  const detail::VelocityPhysics v(to_velocity(background_v), dealias);
  return rate_from_physics(state.y, state.z, v, dealias);
}

JacobiRate jacobi_rhs(const JacobiState& state, const GeodesicState& background, bool dealias) {
  return jacobi_rhs(state, background.v, dealias);
}

JacobiFlow::JacobiFlow(const SymplecticVectorField& v0, const std::vector<SymplecticVectorField>& w0,
                       SolverConfig config)
    : config_(config), background_(initial_state(v0)) {
  config_.validate();
  columns_.reserve(w0.size());
  for (const auto& w : w0) {
    if (!(w.grid() == v0.grid())) throw ConfigError("Jacobi initial data on a different grid than the geodesic");
    columns_.push_back(JacobiState::initial(w));
  }
}

void JacobiFlow::advance_to(double t) {
  if (t < time() - 1e-12) throw ConfigError("JacobiFlow cannot integrate backwards");
  const double tol = 1e-12 * std::max(1.0, t);
  while (time() < t - tol) step(std::min(config_.dt, t - time()));
}

void JacobiFlow::step(double dt) {
  std::vector<SymplecticVectorField> stages;
  GeodesicState next = detail::step_rk4_stages(background_, config_, dt, &stages);
  std::vector<detail::VelocityPhysics> phys;
  phys.reserve(4);
  for (const auto& s : stages) phys.emplace_back(to_velocity(s), config_.dealias);

  const bool dealias = config_.dealias;
  for (JacobiState& c : columns_) {
    const JacobiRate k1 = rate_from_physics(c.y, c.z, phys[0], dealias);
    const JacobiRate k2 = rate_from_physics(SymplecticVectorField(c.y).axpy(0.5 * dt, k1.ydot),
                                            SymplecticVectorField(c.z).axpy(0.5 * dt, k1.zdot), phys[1], dealias);
    const JacobiRate k3 = rate_from_physics(SymplecticVectorField(c.y).axpy(0.5 * dt, k2.ydot),
                                            SymplecticVectorField(c.z).axpy(0.5 * dt, k2.zdot), phys[2], dealias);
    const JacobiRate k4 = rate_from_physics(SymplecticVectorField(c.y).axpy(dt, k3.ydot),
                                            SymplecticVectorField(c.z).axpy(dt, k3.zdot), phys[3], dealias);
    c.y.axpy(dt / 6.0, k1.ydot).axpy(dt / 3.0, k2.ydot).axpy(dt / 3.0, k3.ydot).axpy(dt / 6.0, k4.ydot);
    c.z.axpy(dt / 6.0, k1.zdot).axpy(dt / 3.0, k2.zdot).axpy(dt / 3.0, k3.zdot).axpy(dt / 6.0, k4.zdot);
    c.t = next.t;
  }
  background_ = std::move(next);
}

PhiMatrix::PhiMatrix(Eigen::MatrixXd m, double time, Frame f, const Eigen::MatrixXd& g)
    : matrix(std::move(m)), t(time), frame(f), gram(g) {
  const Eigen::MatrixXd b = orthonormal_frame(matrix, gram_factor(gram));
  singular_values = Eigen::JacobiSVD<Eigen::MatrixXd>(b).singularValues();
}

PhiMatrix assemble_phi(const Trajectory& traj, const GalerkinBasis& basis, double t, PhiMethod method) {
  if (!(basis.grid() == traj.v0.grid())) throw ConfigError("basis and trajectory use different grids");
  if (method == PhiMethod::kOmegaGamma) {
    const OmegaGamma og = omega_gamma_series(traj, basis, t).back();
    return PhiMatrix(og.omega - og.gamma, t, Frame::kBody, basis.gram());
  }
  SolverConfig cfg = traj.config;
  cfg.track_flow = true;
  JacobiFlow flow(traj.v0, basis.elements(), cfg);
  flow.advance_to(t);
  const FlowMapSampler eta(flow.background().eta);
  Eigen::MatrixXd m(basis.dim(), basis.dim());
  for (int j = 0; j < basis.dim(); ++j) {
    m.col(j) = basis.coordinates(project_P(Ad_group(eta, flow.columns()[static_cast<std::size_t>(j)].y,
                                                    Direction::kInverse)));
  }
  return PhiMatrix(std::move(m), t, Frame::kBody, basis.gram());
}

std::vector<OmegaGamma> omega_gamma_series(const Trajectory& traj, const GalerkinBasis& basis, double t) {
  std::size_t count = 0;
  double h = 0.0;
  require_uniform_samples(traj, t, count, h);
  const int m = basis.dim();

  std::vector<FlowMapSampler> eta;
  eta.reserve(count);
  for (std::size_t j = 0; j < count; ++j) eta.emplace_back(traj.samples[j].eta);

  auto ad_inv = [&](std::size_t j, const SymplecticVectorField& w) {
    return project_P(Ad_group(eta[j], w, Direction::kInverse));
  };
  // Integrand of Omega and the Volterra kernel Ad_{eta^{-1}} K_v Ad_eta.
  auto omega_integrand = [&](std::size_t j, const SymplecticVectorField& w) {
    return ad_inv(j, coAd_group(eta[j], w, Direction::kInverse));
  };
  auto kernel = [&](std::size_t j, const SymplecticVectorField& u) {
    const SymplecticVectorField y = project_P(Ad_group(eta[j], u, Direction::kForward));
    return ad_inv(j, K_op(traj.samples[j].v, y));
  };

  std::vector<OmegaGamma> out(count);
  for (std::size_t j = 0; j < count; ++j) {
    out[j].omega = Eigen::MatrixXd::Zero(m, m);
    out[j].gamma = Eigen::MatrixXd::Zero(m, m);
    out[j].t = traj.samples[j].t;
  }

  constexpr int kMaxIterations = 50;
  constexpr double kIterationTolerance = 1e-13;
  for (int col = 0; col < m; ++col) {
    const SymplecticVectorField& w0 = basis[col];
    SymplecticVectorField prev_integrand = omega_integrand(0, w0);
    SymplecticVectorField omega_w(w0.grid());
    SymplecticVectorField history(w0.grid());  // sum of G_i u_i over 0 < i < j
    std::vector<SymplecticVectorField> u{SymplecticVectorField(w0.grid())};
    for (std::size_t j = 1; j < count; ++j) {
      const SymplecticVectorField integrand = omega_integrand(j, w0);
      omega_w.axpy(0.5 * h, prev_integrand).axpy(0.5 * h, integrand);
      prev_integrand = integrand;

      // u_j = Omega_j w0 - h * history - (h/2) G_j u_j, by fixed-point iteration
      // from a linear extrapolation.
      SymplecticVectorField rhs = omega_w;
      rhs.axpy(-h, history);
      SymplecticVectorField uj = j >= 2 ? 2.0 * u[j - 1] - u[j - 2] : rhs;
      SymplecticVectorField gj = kernel(j, uj);
      for (int it = 0;; ++it) {
        SymplecticVectorField next = rhs;
        next.axpy(-0.5 * h, gj);
        const double change = h1_norm(next - uj);
        uj = std::move(next);
        gj = kernel(j, uj);
        if (change <= kIterationTolerance * std::max(1.0, h1_norm(uj))) break;
        if (it + 1 >= kMaxIterations) {
          throw NumericalError("Volterra fixed-point iteration for Gamma did not converge", traj.samples[j].t);
        }
      }
      // the i = 0 endpoint drops out since u_0 = 0
      history += gj;

      out[j].omega.col(col) = basis.coordinates(omega_w);
      out[j].gamma.col(col) = basis.coordinates(omega_w - uj);
      u.push_back(std::move(uj));
    }
  }
  return out;
}

SpdReport omega_spd(const Eigen::MatrixXd& omega, const Eigen::MatrixXd& gram) {
  const Eigen::MatrixXd s = gram * omega;
  const double asym = (s - s.transpose()).norm() / std::max(s.norm(), 1e-300);
  const Eigen::MatrixXd b = orthonormal_frame(omega, gram_factor(gram));
  const Eigen::MatrixXd sym = 0.5 * (b + b.transpose());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(sym, Eigen::EigenvaluesOnly);
  return {es.eigenvalues().minCoeff(), asym};
}

IndexReport index_check(const PhiMatrix& phi, double rel_threshold) {
  IndexReport r;
  const Eigen::VectorXd& sigma = phi.singular_values;
  if (sigma.size() == 0) return r;
  const double threshold = rel_threshold * sigma(0);
  r.dim_ker = count_below(sigma, threshold);

  const Eigen::MatrixXd b = orthonormal_frame(phi.matrix, gram_factor(phi.gram));
  const Eigen::VectorXd sigma_adj = Eigen::JacobiSVD<Eigen::MatrixXd>(b.transpose()).singularValues();
  r.dim_coker = count_below(sigma_adj, threshold);

  const Eigen::Index k = sigma.size() - r.dim_ker;  // first index below threshold
  if (r.dim_ker > 0 && k > 0) {
    const double above = sigma(k - 1);
    const double below = sigma(k);
    if (below <= 0.0 ? false : above / below < 10.0) {
      r.ambiguous = true;
      std::ostringstream msg;
      msg << "threshold " << threshold << " lies inside a singular-value cluster (" << above << ", " << below << ")";
      r.warning = msg.str();
    }
  }
  return r;
}

}  // namespace sympgeo
