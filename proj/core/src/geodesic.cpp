#include "sympgeo/geodesic.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "field_ops.hpp"
#include "sympgeo/error.hpp"
#include "sympgeo/lie_ops.hpp"

namespace sympgeo {
namespace {

constexpr double kBlowUpSpeed = 1e6;

// Velocity and velocity gradient of a symplectic field at arbitrary points.
// One pass over the stream coefficients yields f_x, f_y, f_xx, f_xy, f_yy;
// the band is chosen from the l1 mass of the velocity spectrum (|k| |c_k|)
// so that rounding noise amplified by the second derivatives does not force
// the full dealiased band. Nyquist modes carry no gradient and are skipped.
class ParticleVelocity {
 public:
  ParticleVelocity(const SymplecticVectorField& v, double tol) : h_(v.harmonic()) {
    const SpectrumField& f = v.stream();
    const Grid2D& g = f.grid();
    const int n = g.n();
    const int top = n / 2 - 1;
    std::vector<double> shell(static_cast<std::size_t>(top) + 1, 0.0);
    double total = 0.0;
    for (int i1 = 0; i1 < n; ++i1) {
      for (int i2 = 0; i2 < n; ++i2) {
        const int k1 = g.wavenumber(i1);
        const int k2 = g.wavenumber(i2);
        if (g.is_nyquist(k1) || g.is_nyquist(k2)) continue;
        const double a = std::hypot(k1, k2) * std::abs(f.data()[g.flat(i1, i2)]);
        shell[static_cast<std::size_t>(std::max(std::abs(k1), std::abs(k2)))] += a;
        total += a;
      }
    }
    int b = top;
    double dropped = 0.0;
    while (b > 0 && dropped + shell[static_cast<std::size_t>(b)] <= tol * total) dropped += shell[static_cast<std::size_t>(b--)];
    band_ = b;
    width_ = 2 * band_ + 1;
    // rows k1 = 0..band, k1 > 0 doubled for the conjugate half
    c_.resize(static_cast<std::size_t>(band_ + 1) * width_);
    for (int k1 = 0; k1 <= band_; ++k1) {
      for (int k2 = -band_; k2 <= band_; ++k2) {
        c_[static_cast<std::size_t>(k1) * width_ + (k2 + band_)] = (k1 > 0 ? 2.0 : 1.0) * f.coeff(k1, k2);
      }
    }
  }

  // dX = v(X), dM = grad v(X) M
  void rates(const std::vector<Point2>& x, const std::vector<Mat2>& m, std::vector<Point2>& dx,
             std::vector<Mat2>& dm) const {
    dx.resize(x.size());
    dm.resize(x.size());
    std::vector<Complex> ey(static_cast<std::size_t>(width_));
    for (std::size_t j = 0; j < x.size(); ++j) {
      const Complex sy = std::polar(1.0, x[j].y);
      ey[band_] = 1.0;
      for (int k = 1; k <= band_; ++k) {
        ey[band_ + k] = ey[band_ + k - 1] * sy;
        ey[band_ - k] = std::conj(ey[band_ + k]);
      }
      const Complex sx = std::polar(1.0, x[j].x);
      Complex ex = 1.0;
      double fx = 0.0, fy = 0.0, fxx = 0.0, fxy = 0.0, fyy = 0.0;
      for (int k1 = 0; k1 <= band_; ++k1) {
        const Complex* row = c_.data() + static_cast<std::size_t>(k1) * width_;
        Complex s0, s1, s2;
        for (int i = 0; i < width_; ++i) {
          const Complex t = row[i] * ey[i];
          const double k2 = i - band_;
          s0 += t;
          s1 += k2 * t;
          s2 += (k2 * k2) * t;
        }
        const Complex a0 = ex * s0, a1 = ex * s1, a2 = ex * s2;
        // d/dx -> i k1, d/dy -> i k2; the field is the real part
        fx -= k1 * a0.imag();
        fy -= a1.imag();
        fxx -= k1 * k1 * a0.real();
        fxy -= k1 * a1.real();
        fyy -= a2.real();
        ex *= sx;
      }
      // v = (f_y + h1, -f_x + h2); grad v = [[f_xy, f_yy], [-f_xx, -f_xy]]
      dx[j] = {fy + h_[0], -fx + h_[1]};
      const Mat2 g{fxy, fyy, -fxx, -fxy};
      dm[j] = g * m[j];
    }
  }

 private:
  int band_ = 0;
  int width_ = 1;
  std::vector<Complex> c_;
  Vec2 h_;
};

struct Stage {
  SymplecticVectorField dv;
  std::vector<Point2> dx;
  std::vector<Mat2> dm;
};

Stage evaluate_stage(const SymplecticVectorField& v, const std::vector<Point2>& x, const std::vector<Mat2>& m,
                     const SolverConfig& config) {
  Stage s{velocity_rate(v, config), {}, {}};
  if (config.track_flow) ParticleVelocity(v, config.interp_tolerance).rates(x, m, s.dx, s.dm);
  return s;
}

void offset(const std::vector<Point2>& x0, const std::vector<Mat2>& m0, const Stage& k, double h,
            std::vector<Point2>& x, std::vector<Mat2>& m) {
  x.resize(x0.size());
  m.resize(m0.size());
  for (std::size_t j = 0; j < k.dx.size(); ++j) {
    x[j] = {x0[j].x + h * k.dx[j].x, x0[j].y + h * k.dx[j].y};
    for (int e = 0; e < 4; ++e) m[j][e] = m0[j][e] + h * k.dm[j][e];
  }
}

bool all_finite(const SymplecticVectorField& v) {
  for (const Complex& c : v.stream().data()) {
    if (!std::isfinite(c.real()) || !std::isfinite(c.imag())) return false;
  }
  return std::isfinite(v.harmonic()[0]) && std::isfinite(v.harmonic()[1]);
}

double lattice_rms(std::span<const double> a) {
  double s = 0.0;
  for (double x : a) s += x * x;
  return std::sqrt(s / static_cast<double>(a.size()));
}

bool at_cadence(int step, int every, int last) { return step == last || (every > 0 && step % every == 0); }

}  // namespace

void SolverConfig::validate() const {
  const Grid2D grid(n);
  if (!(dt > 0.0) || !std::isfinite(dt)) throw ConfigError("dt must be positive and finite");
  if (!(t_end >= 0.0) || !std::isfinite(t_end)) throw ConfigError("t_end must be non-negative and finite");
  if (sample_every < 0) throw ConfigError("sample_every must be >= 0");
  if (diag_every < 0) throw ConfigError("diag_every must be >= 0");
  if (basis_dim < 0) throw ConfigError("basis_dim must be >= 0");
  if (!(interp_tolerance >= 0.0)) throw ConfigError("interp_tolerance must be >= 0");
  if (basis_dim > 0 && 4 * basis_dim > GalerkinBasis::resolved_dimension(grid)) {
    throw ConfigError("basis_dim " + std::to_string(basis_dim) + " too large for n = " + std::to_string(n));
  }
}

GeodesicState initial_state(const SymplecticVectorField& v0) {
  return GeodesicState{v0, FlowMap::identity(v0.grid(), 0.0), 0.0};
}

SymplecticVectorField rhs_direct(const SymplecticVectorField& v, bool dealias) {
  const detail::VelocityPhysics u(to_velocity(v), dealias);
  SymplecticVectorField out = helmholtz_inverse(project_P(detail::h1_nonlinear(u, u, dealias)));
  out *= -1.0;
  return out;
}

SpectrumField rhs_vorticity(const SpectrumField& q, const SymplecticVectorField& v, bool dealias) {
  const VelocityField u = to_velocity(v);
  const SpectrumField qd = detail::maybe_dealias(q, dealias);
  PhysicalField adv = transform(detail::maybe_dealias(u.u1, dealias)) *
                      transform(apply_multiplier(qd, Multiplier::kGrad1));
  adv += transform(detail::maybe_dealias(u.u2, dealias)) * transform(apply_multiplier(qd, Multiplier::kGrad2));
  SpectrumField out = detail::maybe_dealias(transform(adv), dealias);
  out *= -1.0;
  return out;
}

SymplecticVectorField velocity_rate(const SymplecticVectorField& v, const SolverConfig& config) {
  if (config.form == Form::kDirect) return rhs_direct(v, config.dealias);
  return from_casimir(rhs_vorticity(casimir_q(v), v, config.dealias));
}

double max_speed(const SymplecticVectorField& v) {
  const VelocitySamples s = to_physical(to_velocity(v));
  double worst = 0.0;
  auto a = s.v1.data();
  auto b = s.v2.data();
  for (std::size_t j = 0; j < a.size(); ++j) {
    const double sp = std::hypot(a[j], b[j]);
    if (std::isnan(sp)) return sp;
    worst = std::max(worst, sp);
  }
  return worst;
}

GeodesicState detail::step_rk4_stages(const GeodesicState& state, const SolverConfig& config, double dt,
                                      std::vector<SymplecticVectorField>* stages) {
  const Grid2D& grid = state.v.grid();
  const double vmax = max_speed(state.v);
  if (!std::isfinite(vmax) || vmax > kBlowUpSpeed) {
    std::ostringstream msg;
    msg << "blow-up detected at t = " << state.t << " (max |v| = " << vmax
        << "); the solution is under-resolved, increase n or reduce dt";
    throw NumericalError(msg.str(), state.t);
  }
  const double courant = dt * vmax * grid.n() / kTwoPi;
  if (courant >= 1.0) {
    std::ostringstream msg;
    msg << "CFL bound violated at t = " << state.t << ": dt * max|v| * n / 2pi = " << courant
        << " >= 1; use a smaller dt (below " << kTwoPi / (vmax * grid.n()) << ")";
    throw NumericalError(msg.str(), state.t);
  }

  std::vector<Point2> x0;
  std::vector<Mat2> m0;
  if (config.track_flow) {
    x0.assign(state.eta.positions().begin(), state.eta.positions().end());
    m0.assign(state.eta.jacobians().begin(), state.eta.jacobians().end());
  }
  std::vector<Point2> x;
  std::vector<Mat2> m;

  if (stages) stages->clear();
  auto record = [&](const SymplecticVectorField& v) {
    if (stages) stages->push_back(v);
  };

  record(state.v);
  const Stage k1 = evaluate_stage(state.v, x0, m0, config);
  SymplecticVectorField v = state.v;
  v.axpy(0.5 * dt, k1.dv);
  offset(x0, m0, k1, 0.5 * dt, x, m);
  record(v);
  const Stage k2 = evaluate_stage(v, x, m, config);
  v = state.v;
  v.axpy(0.5 * dt, k2.dv);
  offset(x0, m0, k2, 0.5 * dt, x, m);
  record(v);
  const Stage k3 = evaluate_stage(v, x, m, config);
  v = state.v;
  v.axpy(dt, k3.dv);
  offset(x0, m0, k3, dt, x, m);
  record(v);
  const Stage k4 = evaluate_stage(v, x, m, config);

  v = state.v;
  v.axpy(dt / 6.0, k1.dv).axpy(dt / 3.0, k2.dv).axpy(dt / 3.0, k3.dv).axpy(dt / 6.0, k4.dv);
  if (!all_finite(v)) throw NumericalError("non-finite velocity after RK4 step at t = " + std::to_string(state.t), state.t);

  const double t = state.t + dt;
  if (!config.track_flow) return GeodesicState{std::move(v), FlowMap::identity(grid, t), t};

  for (std::size_t j = 0; j < x0.size(); ++j) {
    x[j] = {x0[j].x + dt / 6.0 * (k1.dx[j].x + 2.0 * k2.dx[j].x + 2.0 * k3.dx[j].x + k4.dx[j].x),
            x0[j].y + dt / 6.0 * (k1.dx[j].y + 2.0 * k2.dx[j].y + 2.0 * k3.dx[j].y + k4.dx[j].y)};
    for (int e = 0; e < 4; ++e) {
      m[j][e] = m0[j][e] + dt / 6.0 * (k1.dm[j][e] + 2.0 * k2.dm[j][e] + 2.0 * k3.dm[j][e] + k4.dm[j][e]);
    }
  }
  return GeodesicState{std::move(v), FlowMap(grid, std::move(x), std::move(m), t), t};
}

GeodesicState step_rk4(const GeodesicState& state, const SolverConfig& config, double dt) {
  return detail::step_rk4_stages(state, config, dt, nullptr);
}

GeodesicState step_rk4(const GeodesicState& state, const SolverConfig& config) {
  return step_rk4(state, config, config.dt);
}

DiagnosticsRecord diagnostics(const GeodesicState& state, const SymplecticVectorField& v0, const SpectrumField& q0,
                              const GalerkinBasis* basis) {
  DiagnosticsRecord r;
  r.t = state.t;
  r.energy = h1_inner(state.v, state.v);
  r.vmax = max_speed(state.v);
  r.detjac_dev = state.eta.max_det_deviation();
  r.harmonic_drift = std::max(std::abs(state.v.harmonic()[0] - v0.harmonic()[0]),
                              std::abs(state.v.harmonic()[1] - v0.harmonic()[1]));

  const PhysicalField q0_lattice = transform(q0);
  const double q0_norm = lattice_rms(q0_lattice.data());
  if (q0_norm > 0.0) {
    const TrigInterpolant q(casimir_q(state.v), kFlowInterpTolerance);
    const auto pos = state.eta.positions();
    std::vector<double> diff(pos.size());
    for (std::size_t j = 0; j < pos.size(); ++j) {
      diff[j] = q({wrap_coordinate(pos[j].x), wrap_coordinate(pos[j].y)}) - q0_lattice.data()[j];
    }
    r.casimir_residual = lattice_rms(diff) / q0_norm;
  }

  if (basis != nullptr) {
    const Eigen::VectorXd c0 = basis->coordinates(v0);
    const double c0_norm = basis->norm(c0);
    if (c0_norm > 0.0) {
      const FlowMapSampler eta(state.eta);
      const Eigen::MatrixXd a_star = Ad_star_matrix(eta, *basis, Direction::kForward);
      r.adstar_residual = basis->norm(a_star * basis->coordinates(state.v) - c0) / c0_norm;
    }
  }
  return r;
}

double Trajectory::max_energy_drift() const {
  if (diagnostics.empty()) return 0.0;
  const double e0 = diagnostics.front().energy;
  double worst = 0.0;
  for (const auto& d : diagnostics) worst = std::max(worst, std::abs(d.energy - e0));
  return e0 > 0.0 ? worst / e0 : worst;
}

double Trajectory::max_harmonic_drift() const {
  double worst = 0.0;
  for (const auto& d : diagnostics) worst = std::max(worst, d.harmonic_drift);
  return worst;
}

Trajectory solve_geodesic(const SymplecticVectorField& v0, const SolverConfig& config) {
  config.validate();
  if (v0.grid().n() != config.n) {
    throw ConfigError("initial field has n = " + std::to_string(v0.grid().n()) + " but the solver expects n = " +
                      std::to_string(config.n));
  }
  Trajectory traj{config, v0, {}, {}, std::nullopt, 0.0};
  std::optional<GalerkinBasis> basis;
  if (config.track_flow && config.basis_dim > 0) basis.emplace(v0.grid(), config.basis_dim);
  const GalerkinBasis* basis_ptr = basis ? &*basis : nullptr;
  const SpectrumField q0 = casimir_q(v0);

  GeodesicState state = initial_state(v0);
  traj.samples.push_back(state);
  const int steps = config.t_end > 0.0 ? static_cast<int>(std::ceil(config.t_end / config.dt - 1e-9)) : 0;
  try {
    traj.diagnostics.push_back(diagnostics(state, v0, q0, basis_ptr));
    for (int k = 1; k <= steps; ++k) {
      const double target = k == steps ? config.t_end : k * config.dt;
      state = step_rk4(state, config, target - state.t);
      state.t = target;
      if (at_cadence(k, config.sample_every, steps)) traj.samples.push_back(state);
      if (at_cadence(k, config.diag_every, steps)) traj.diagnostics.push_back(diagnostics(state, v0, q0, basis_ptr));
    }
  } catch (const NumericalError& e) {
    traj.failure = e.what();
    traj.failure_time = e.time();
    if (traj.samples.back().t != state.t) traj.samples.push_back(state);
  }
  return traj;
}

}  // namespace sympgeo
