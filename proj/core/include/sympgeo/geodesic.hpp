#pragma once

// Geodesics of the right-invariant H1 metric: the averaged symplectic Euler
// equation (1 + Lap) v_t + P((v.grad)(1 + Lap) v + (grad v)^T Lap v) = 0
// together with the flow map eta_t = v o eta.

#include <optional>
#include <string>
#include <vector>

#include "sympgeo/flow_map.hpp"
#include "sympgeo/galerkin.hpp"
#include "sympgeo/symplectic_fields.hpp"

namespace sympgeo {

enum class Form {
  kDirect,    ///< full H1 Euler-Arnold right-hand side; evolves h
  kVorticity  ///< transport of q = Lap (1 + Lap) f; h frozen
};

struct SolverConfig {
  int n = 64;
  double dt = 1e-3;
  double t_end = 1.0;
  Form form = Form::kDirect;
  int sample_every = 0;  ///< store a state every k steps; 0 keeps only the endpoints
  int diag_every = 0;    ///< diagnostics every k steps; 0 only at both ends
  bool dealias = true;
  bool track_flow = true;  ///< integrate eta and D eta alongside v
  int basis_dim = 24;      ///< Galerkin basis for the Ad* residual; 0 skips it
  /// l1 truncation used when sampling v at the particles (0: exact band).
  double interp_tolerance = kFlowInterpTolerance;

  /// Throws ConfigError on inconsistent values.
  void validate() const;
};

struct GeodesicState {
  SymplecticVectorField v;
  FlowMap eta;
  double t = 0.0;
};

GeodesicState initial_state(const SymplecticVectorField& v0);

/// v_t = -(1 + Lap)^{-1} P(N(v, v)), N(a, b) = (a.grad)(1 + Lap) b + (grad a)^T Lap b.
SymplecticVectorField rhs_direct(const SymplecticVectorField& v, bool dealias = true);

/// q_t = -v.grad q.
SpectrumField rhs_vorticity(const SpectrumField& q, const SymplecticVectorField& v, bool dealias = true);

/// dv/dt in the configured form.
SymplecticVectorField velocity_rate(const SymplecticVectorField& v, const SolverConfig& config);

/// One classical RK4 step of size dt for (v, eta, D eta). Throws
/// NumericalError on a CFL violation or a non-finite state.
GeodesicState step_rk4(const GeodesicState& state, const SolverConfig& config, double dt);
GeodesicState step_rk4(const GeodesicState& state, const SolverConfig& config);

/// Largest pointwise speed on the lattice.
double max_speed(const SymplecticVectorField& v);

struct DiagnosticsRecord {
  double t = 0.0;
  double energy = 0.0;
  double casimir_residual = 0.0;  ///< |q(t) o eta(t) - q0|_2 / |q0|_2 (0 when q0 = 0)
  double adstar_residual = 0.0;   ///< |Ad*_eta v(t) - v0|_1 / |v0|_1 on the Galerkin basis
  double detjac_dev = 0.0;
  double vmax = 0.0;
  double harmonic_drift = 0.0;  ///< |h(t) - h(0)|_inf
};

/// basis may be null, in which case adstar_residual is reported as 0.
DiagnosticsRecord diagnostics(const GeodesicState& state, const SymplecticVectorField& v0, const SpectrumField& q0,
                              const GalerkinBasis* basis);

struct Trajectory {
  SolverConfig config;
  SymplecticVectorField v0;
  std::vector<GeodesicState> samples;
  std::vector<DiagnosticsRecord> diagnostics;
  std::optional<std::string> failure;  ///< set when the solve stopped early
  double failure_time = 0.0;

  const GeodesicState& final_state() const { return samples.back(); }
  double max_energy_drift() const;
  double max_harmonic_drift() const;
};

/// Integrates to config.t_end. Numerical failures do not throw: the partial
/// trajectory is returned with failure set.
Trajectory solve_geodesic(const SymplecticVectorField& v0, const SolverConfig& config);

namespace detail {

/// step_rk4 that also reports the four stage velocities, so linearized
/// equations can be advanced with the same scheme.
GeodesicState step_rk4_stages(const GeodesicState& state, const SolverConfig& config, double dt,
                              std::vector<SymplecticVectorField>* stages);

}  // namespace detail

}  // namespace sympgeo
