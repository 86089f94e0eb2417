#pragma once

// Conjugate-point detection: scan sigma_min of a square matrix path over a
// time grid, refine candidate times, and report multiplicities.

#include <functional>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "sympgeo/galerkin.hpp"
#include "sympgeo/geodesic.hpp"
#include "sympgeo/jacobi.hpp"

namespace sympgeo {

struct ScanOptions {
  double rel_threshold = 1e-6;  ///< sigma below rel_threshold * sigma_max counts as zero
  double t_tolerance = 1e-10;   ///< refinement stops at this bracket width
};

struct ScanRow {
  double t = 0.0;
  double sigma_min = 0.0;
  double sigma_max = 0.0;
  int det_sign = 0;
  int dim_ker = 0;
  int dim_coker = 0;
};

struct ConjugatePoint {
  double t = 0.0;
  int multiplicity = 0;
  double sigma_min = 0.0;  ///< relative to sigma_max at t
  int dim_ker = 0;
  int dim_coker = 0;
  bool from_sign_change = false;  ///< false: located as a local minimum of sigma_min
};

struct ConjugateScan {
  std::vector<ScanRow> rows;
  std::vector<ConjugatePoint> points;
  std::vector<std::string> warnings;
};

/// A matrix path t -> Phi(t) with its H1 Gram matrix. Calls arrive in
/// increasing grid order; refinement calls stay within the last two grid
/// intervals.
struct MatrixPath {
  std::function<Eigen::MatrixXd(double)> at;
  Eigen::MatrixXd gram;
};

/// A time is reported when det changes sign across a grid interval and
/// bisection drives sigma_min below the threshold, or when sigma_min has an
/// interior local minimum that golden-section search takes below the
/// threshold (even multiplicity, no sign change).
ConjugateScan detect_conjugate(const MatrixPath& path, const std::vector<double>& t_grid,
                               const ScanOptions& options = {});

/// Jacobi matrix path along the geodesic from v0, advanced incrementally
/// with checkpoints. kBody gives (Omega_t - Gamma_t) in basis coordinates,
/// kSpatial the compressed y.
MatrixPath jacobi_path(const SymplecticVectorField& v0, const GalerkinBasis& basis, const SolverConfig& config,
                       Frame frame = Frame::kBody);

ConjugateScan detect_conjugate(const SymplecticVectorField& v0, const GalerkinBasis& basis,
                               const SolverConfig& config, const std::vector<double>& t_grid,
                               const ScanOptions& options = {}, Frame frame = Frame::kBody);

/// start:step:stop inclusive of stop (within rounding); t_grid values must be positive.
std::vector<double> make_t_grid(double start, double step, double stop);

}  // namespace sympgeo
