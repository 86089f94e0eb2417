#pragma once

// Jacobi fields along H1 geodesics and the solution operator
// Phi_t w0 = D exp(t v0)(t w0).
//
// y = J o eta^{-1} is the right-translated Jacobi field and z the velocity
// variation. With ad_v y = -[v, y]:
//   y_t = z + ad_v y,   z_t = -(1 + Lap)^{-1} P(N(z, v) + N(v, z)).
// The body-frame field u = Ad_{eta^{-1}} y then satisfies
//   u(t) = Omega_t w0 - int_0^t Ad_{eta^{-1}} K_v Ad_eta u dtau,
//   Omega_t = int_0^t Ad_{eta^{-1}} Ad*_{eta^{-1}} dtau.

#include <optional>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "sympgeo/galerkin.hpp"
#include "sympgeo/geodesic.hpp"

namespace sympgeo {

struct JacobiState {
  SymplecticVectorField y;
  SymplecticVectorField z;
  double t = 0.0;

  /// y = 0, z = w0 at t = 0.
  static JacobiState initial(const SymplecticVectorField& w0);
};

struct JacobiRate {
  SymplecticVectorField ydot;
  SymplecticVectorField zdot;
};

JacobiRate jacobi_rhs(const JacobiState& state, const SymplecticVectorField& background_v, bool dealias = true);
JacobiRate jacobi_rhs(const JacobiState& state, const GeodesicState& background, bool dealias = true);

/// Integrates a geodesic together with any number of Jacobi columns using one
/// RK4 scheme for the joint system, so the columns see exactly the background
/// stage velocities. The last step is shortened to land on the requested time.
class JacobiFlow {
 public:
  JacobiFlow(const SymplecticVectorField& v0, const std::vector<SymplecticVectorField>& w0, SolverConfig config);

  void advance_to(double t);

  double time() const noexcept { return background_.t; }
  const GeodesicState& background() const noexcept { return background_; }
  const std::vector<JacobiState>& columns() const noexcept { return columns_; }
  const SolverConfig& config() const noexcept { return config_; }

 private:
  void step(double dt);

  SolverConfig config_;
  GeodesicState background_;
  std::vector<JacobiState> columns_;
};

enum class Frame {
  kBody,    ///< u = Ad_{eta^{-1}} y, i.e. (Omega_t - Gamma_t) w0
  kSpatial  ///< y itself
};

enum class PhiMethod { kLinearized, kOmegaGamma };

/// Matrix of w0 -> (frame field at time t) in Galerkin coordinates.
struct PhiMatrix {
  PhiMatrix(Eigen::MatrixXd matrix, double t, Frame frame, const Eigen::MatrixXd& gram);

  Eigen::MatrixXd matrix;
  double t;
  Frame frame;
  Eigen::MatrixXd gram;
  /// Singular values in the H1-orthonormal frame, descending.
  Eigen::VectorXd singular_values;
};

/// Phi at time t in the body frame. LINEARIZED integrates the Jacobi equation
/// from traj.v0 with traj.config.dt; OMEGA_GAMMA uses the stored samples of
/// traj, which must be equally spaced from 0 and include t.
PhiMatrix assemble_phi(const Trajectory& traj, const GalerkinBasis& basis, double t, PhiMethod method);

struct OmegaGamma {
  Eigen::MatrixXd omega;  ///< Omega_t in basis coordinates
  Eigen::MatrixXd gamma;  ///< Gamma_t in basis coordinates
  double t = 0.0;
};

/// Omega_t and Gamma_t at every stored sample time up to t (trapezoid
/// quadrature for Omega, implicit trapezoid stepping for the Volterra
/// equation of Gamma). Columns are propagated at full resolution and only
/// projected onto the basis at the end.
std::vector<OmegaGamma> omega_gamma_series(const Trajectory& traj, const GalerkinBasis& basis, double t);

/// Smallest eigenvalue of the H1-symmetrized Omega matrix, with the relative
/// asymmetry |G Omega - (G Omega)^T| / |G Omega|.
struct SpdReport {
  double min_eigenvalue;
  double asymmetry;
};
SpdReport omega_spd(const Eigen::MatrixXd& omega, const Eigen::MatrixXd& gram);

struct IndexReport {
  int dim_ker = 0;
  int dim_coker = 0;
  bool ambiguous = false;  ///< threshold falls inside a singular-value cluster
  std::string warning;

  int index() const noexcept { return dim_ker - dim_coker; }
};

/// dim_ker counts singular values of Phi below rel_threshold * sigma_max;
/// dim_coker does the same for the H1 adjoint G^{-1} Phi^T G.
IndexReport index_check(const PhiMatrix& phi, double rel_threshold);

}  // namespace sympgeo
