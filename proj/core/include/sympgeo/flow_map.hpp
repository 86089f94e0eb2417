#pragma once

#include <array>
#include <optional>
#include <span>
#include <vector>

#include "sympgeo/spectral.hpp"

namespace sympgeo {

/// Row-major 2x2 matrix [[a00, a01], [a10, a11]].
using Mat2 = std::array<double, 4>;

constexpr Mat2 kIdentity2{1.0, 0.0, 0.0, 1.0};

constexpr double det(const Mat2& m) noexcept { return m[0] * m[3] - m[1] * m[2]; }
Mat2 inverse(const Mat2& m);
Mat2 operator*(const Mat2& a, const Mat2& b) noexcept;

/// Truncation used when interpolating flow-map and velocity fields at
/// particle positions; see TrigInterpolant for the meaning.
inline constexpr double kFlowInterpTolerance = 1e-13;

/// Lagrangian flow map sampled at the collocation lattice: particle positions
/// eta(x_j) (unwrapped, so eta - id is periodic) and Jacobians D eta(x_j).
class FlowMap {
 public:
  static FlowMap identity(Grid2D grid, double time = 0.0);
  FlowMap(Grid2D grid, std::vector<Point2> positions, std::vector<Mat2> jacobians, double time);

  const Grid2D& grid() const noexcept { return grid_; }
  double time() const noexcept { return time_; }
  std::span<const Point2> positions() const noexcept { return positions_; }
  std::span<const Mat2> jacobians() const noexcept { return jacobians_; }

  /// max_j |det D eta(x_j) - 1|
  double max_det_deviation() const;
  /// Periodic displacement eta(x_j) - x_j, one component.
  PhysicalField displacement(int component) const;
  /// One entry (row r, column c) of D eta on the lattice.
  PhysicalField jacobian_entry(int r, int c) const;

 private:
  Grid2D grid_;
  std::vector<Point2> positions_;
  std::vector<Mat2> jacobians_;
  double time_;
};

/// Inverse flow map evaluated at a set of targets.
struct InversePoints {
  std::vector<Point2> points;  ///< eta^{-1}(x), wrapped into the period cell
  double worst_residual = 0.0; ///< max |eta(p) - x|_inf after the last iteration
  int iterations = 0;
};

/// Spectral interpolant of a FlowMap: evaluates eta and D eta anywhere and
/// inverts eta by Newton iteration.
class FlowMapSampler {
 public:
  explicit FlowMapSampler(const FlowMap& map, double l1_tolerance = kFlowInterpTolerance);

  const FlowMap& map() const noexcept { return map_; }

  /// eta(p), unwrapped relative to p.
  Point2 position(Point2 p) const;
  Mat2 jacobian(Point2 p) const;

  static constexpr int kMaxNewtonIterations = 20;
  static constexpr double kNewtonTolerance = 1e-12;

  /// Solves eta(p) = x for every target; throws NumericalError with the worst
  /// residual if Newton has not converged after kMaxNewtonIterations.
  InversePoints invert(std::span<const Point2> targets) const;
  /// invert() at the collocation lattice, computed once and cached.
  const InversePoints& lattice_inverse() const;
  /// D eta at the points of lattice_inverse(), cached alongside them.
  const std::vector<Mat2>& lattice_inverse_jacobians() const;

 private:
  FlowMap map_;
  TrigInterpolant d1_;
  TrigInterpolant d2_;
  std::array<TrigInterpolant, 4> jac_;
  mutable std::optional<InversePoints> lattice_inverse_;
  mutable std::optional<std::vector<Mat2>> lattice_inverse_jacobians_;
};

}  // namespace sympgeo
