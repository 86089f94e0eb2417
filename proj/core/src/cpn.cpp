#include "sympgeo/cpn.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "sympgeo/error.hpp"
#include "sympgeo/geodesic.hpp"

namespace sympgeo {
namespace {

using C = std::complex<double>;
constexpr C kI{0.0, 1.0};

void put_block(CMatrix& m, int at, C a, C b, C c, C d) {
  m(at, at) = a;
  m(at, at + 1) = b;
  m(at + 1, at) = c;
  m(at + 1, at + 1) = d;
}

}  // namespace

UnitaryPath::UnitaryPath(int n) : n_(n) {
  if (n < 2) throw std::domain_error("the CP^n construction needs n >= 2, got n = " + std::to_string(n));
}

CMatrix UnitaryPath::A(double s) const {
  CMatrix m = CMatrix::Zero(dim(), dim());
  m(0, 0) = kI;
  const int blocks = n_ % 2 == 0 ? n_ / 2 : (n_ - 1) / 2;
  for (int b = 0; b < blocks; ++b) put_block(m, 1 + 2 * b, kI * std::cos(s), std::sin(s), std::sin(s), kI * std::cos(s));
  if (n_ % 2 == 1) m(n_, n_) = kI;
  return m;
}

CMatrix UnitaryPath::dA(double s) const {
  CMatrix m = CMatrix::Zero(dim(), dim());
  const int blocks = n_ % 2 == 0 ? n_ / 2 : (n_ - 1) / 2;
  for (int b = 0; b < blocks; ++b) {
    put_block(m, 1 + 2 * b, -kI * std::sin(s), std::cos(s), std::cos(s), -kI * std::sin(s));
  }
  return m;
}

CMatrix UnitaryPath::B(double t) const {
  CMatrix m = CMatrix::Zero(dim(), dim());
  const int blocks = n_ % 2 == 0 ? n_ / 2 : (n_ - 1) / 2;
  for (int b = 0; b < blocks; ++b) put_block(m, 2 * b, kI * std::cos(t), std::sin(t), std::sin(t), kI * std::cos(t));
  for (int r = 2 * blocks; r < dim(); ++r) m(r, r) = kI;
  return m;
}

CMatrix UnitaryPath::dB(double t) const {
  CMatrix m = CMatrix::Zero(dim(), dim());
  const int blocks = n_ % 2 == 0 ? n_ / 2 : (n_ - 1) / 2;
  for (int b = 0; b < blocks; ++b) {
    put_block(m, 2 * b, -kI * std::sin(t), std::cos(t), std::cos(t), -kI * std::sin(t));
  }
  return m;
}

// A is unitary, so A^{-1} = A^*.
CMatrix UnitaryPath::gamma(double s, double t) const {
  const CMatrix a = A(s);
  return a * B(t) * a.adjoint();
}

CMatrix UnitaryPath::gamma_t(double s, double t) const {
  const CMatrix a = A(s);
  return a * dB(t) * a.adjoint();
}

CMatrix UnitaryPath::gamma_s(double s, double t) const {
  const CMatrix a = A(s);
  const CMatrix ai = a.adjoint();
  const CMatrix da = dA(s);
  // d/ds (A B A^{-1}) = A' B A^{-1} - A B A^{-1} A' A^{-1}
  return da * B(t) * ai - a * B(t) * ai * da * ai;
}

UnitaryPath build_path(int n) { return UnitaryPath(n); }

CMatrix velocity_field(const UnitaryPath& path, double s, double t) {
  const CMatrix v = path.gamma_t(s, t) * path.gamma(s, t).adjoint();
  const double defect = skew_hermitian_defect(v);
  if (defect > 1e-12) {
    throw NumericalError("velocity matrix is not skew-Hermitian (defect " + std::to_string(defect) + ")");
  }
  return v;
}

CMatrix variation_field(const UnitaryPath& path, double t) { return path.gamma_s(0.0, t); }

double skew_hermitian_defect(const CMatrix& m) { return (m + m.adjoint()).cwiseAbs().maxCoeff(); }

double unitarity_defect(const CMatrix& m) {
  return (m.adjoint() * m - CMatrix::Identity(m.rows(), m.cols())).cwiseAbs().maxCoeff();
}

double projective_distance(const CMatrix& m, const CMatrix& n) {
  // phase of <n, m> minimizes |m - e^{i theta} n|_F
  const C inner = (n.adjoint() * m).trace();
  const C phase = std::abs(inner) > 0.0 ? inner / std::abs(inner) : C{1.0, 0.0};
  return (m - phase * n).cwiseAbs().maxCoeff();
}

CMatrix printed_variation_form(int blocks, double t) {
  CMatrix m = CMatrix::Zero(2 * blocks, 2 * blocks);
  for (int b = 0; b + 1 < blocks; ++b) {
    const bool last = b + 2 == blocks;
    const C d0 = -std::sin(t);
    const C d1 = last ? kI * (1.0 - std::cos(t)) : C{std::sin(t), 0.0};
    const int r = 2 * b;
    const int c = 2 * (b + 1);
    m(r, c) = d0;
    m(r + 1, c + 1) = d1;
    m(c, r) = -d0;
    m(c + 1, r + 1) = -d1;
  }
  return m;
}

double magnitude_multiset_distance(const CMatrix& a, const CMatrix& b) {
  auto mags = [](const CMatrix& m) {
    std::vector<double> v;
    for (Eigen::Index i = 0; i < m.size(); ++i) v.push_back(std::abs(m(i)));
    return v;
  };
  std::vector<double> x = mags(a);
  std::vector<double> y = mags(b);
  const std::size_t size = std::max(x.size(), y.size());
  x.resize(size, 0.0);
  y.resize(size, 0.0);
  std::sort(x.begin(), x.end());
  std::sort(y.begin(), y.end());
  double worst = 0.0;
  for (std::size_t i = 0; i < size; ++i) worst = std::max(worst, std::abs(x[i] - y[i]));
  return worst;
}

double killing_stationarity_torus(Vec2 h, int n) {
  const SymplecticVectorField v(SpectrumField(Grid2D(n)), h);
  return h1_norm(rhs_direct(v));
}

TranslationCheck killing_translation_check(Vec2 h, double t_end, int n, double dt) {
  const Grid2D grid(n);
  const SymplecticVectorField v0(SpectrumField(grid), h);
  SolverConfig cfg;
  cfg.n = n;
  cfg.dt = dt;
  cfg.t_end = t_end;
  cfg.basis_dim = 0;
  const Trajectory traj = solve_geodesic(v0, cfg);
  if (traj.failure) throw NumericalError(*traj.failure, traj.failure_time);
  const GeodesicState& end = traj.final_state();
  TranslationCheck r;
  r.velocity_change = h1_norm(end.v - v0);
  const auto pos = end.eta.positions();
  for (int j1 = 0; j1 < n; ++j1) {
    for (int j2 = 0; j2 < n; ++j2) {
      const Point2 p = pos[grid.flat(j1, j2)];
      r.translation_error = std::max({r.translation_error, std::abs(p.x - grid.coordinate(j1) - end.t * h[0]),
                                      std::abs(p.y - grid.coordinate(j2) - end.t * h[1])});
    }
  }
  return r;
}

}  // namespace sympgeo
