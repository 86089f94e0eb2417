#include "sympgeo/flow_map.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "sympgeo/error.hpp"

namespace sympgeo {

Mat2 inverse(const Mat2& m) {
  const double d = det(m);
  if (d == 0.0 || !std::isfinite(d)) throw NumericalError("singular flow-map Jacobian");
  return {m[3] / d, -m[1] / d, -m[2] / d, m[0] / d};
}

Mat2 operator*(const Mat2& a, const Mat2& b) noexcept {
  return {a[0] * b[0] + a[1] * b[2], a[0] * b[1] + a[1] * b[3],
          a[2] * b[0] + a[3] * b[2], a[2] * b[1] + a[3] * b[3]};
}

FlowMap FlowMap::identity(Grid2D grid, double time) {
  return FlowMap(grid, grid.lattice(), std::vector<Mat2>(grid.size(), kIdentity2), time);
}

FlowMap::FlowMap(Grid2D grid, std::vector<Point2> positions, std::vector<Mat2> jacobians, double time)
    : grid_(grid), positions_(std::move(positions)), jacobians_(std::move(jacobians)), time_(time) {
  if (positions_.size() != grid_.size() || jacobians_.size() != grid_.size()) {
    throw ConfigError("flow map arrays do not match the grid");
  }
}

double FlowMap::max_det_deviation() const {
  double worst = 0.0;
  for (const Mat2& m : jacobians_) worst = std::max(worst, std::abs(det(m) - 1.0));
  return worst;
}

PhysicalField FlowMap::displacement(int component) const {
  PhysicalField out(grid_);
  const int n = grid_.n();
  for (int j1 = 0; j1 < n; ++j1) {
    for (int j2 = 0; j2 < n; ++j2) {
      const std::size_t s = grid_.flat(j1, j2);
      out.data()[s] = component == 0 ? positions_[s].x - grid_.coordinate(j1)
                                     : positions_[s].y - grid_.coordinate(j2);
    }
  }
  return out;
}

PhysicalField FlowMap::jacobian_entry(int r, int c) const {
  PhysicalField out(grid_);
  for (std::size_t s = 0; s < jacobians_.size(); ++s) out.data()[s] = jacobians_[s][2 * r + c];
  return out;
}

FlowMapSampler::FlowMapSampler(const FlowMap& map, double l1_tolerance)
    : map_(map),
      d1_(transform(map.displacement(0)), l1_tolerance),
      d2_(transform(map.displacement(1)), l1_tolerance),
      jac_{TrigInterpolant(transform(map.jacobian_entry(0, 0)), l1_tolerance),
           TrigInterpolant(transform(map.jacobian_entry(0, 1)), l1_tolerance),
           TrigInterpolant(transform(map.jacobian_entry(1, 0)), l1_tolerance),
           TrigInterpolant(transform(map.jacobian_entry(1, 1)), l1_tolerance)} {}

Point2 FlowMapSampler::position(Point2 p) const {
  const Point2 w{wrap_coordinate(p.x), wrap_coordinate(p.y)};
  return {p.x + d1_(w), p.y + d2_(w)};
}

Mat2 FlowMapSampler::jacobian(Point2 p) const {
  const Point2 w{wrap_coordinate(p.x), wrap_coordinate(p.y)};
  return {jac_[0](w), jac_[1](w), jac_[2](w), jac_[3](w)};
}

namespace {

double periodic_residual(Point2 e, Point2 target, double& rx, double& ry) {
  rx = std::remainder(e.x - target.x, kTwoPi);
  ry = std::remainder(e.y - target.y, kTwoPi);
  return std::max(std::abs(rx), std::abs(ry));
}

}  // namespace

InversePoints FlowMapSampler::invert(std::span<const Point2> targets) const {
  InversePoints out;
  out.points.reserve(targets.size());
  // Damped Newton from p = x - d(x); when that stalls (large deformations),
  // restart from the lattice point whose image lies closest to the target.
  auto solve = [&](Point2 p, Point2 target, double& residual, int& it) {
    double rx = 0.0;
    double ry = 0.0;
    residual = periodic_residual(position(p), target, rx, ry);
    for (it = 0; it < kMaxNewtonIterations && residual >= kNewtonTolerance; ++it) {
      const Mat2 inv = inverse(jacobian(p));
      const Point2 step{inv[0] * rx + inv[1] * ry, inv[2] * rx + inv[3] * ry};
      double lambda = 1.0;
      for (int k = 0; k < 30; ++k, lambda *= 0.5) {
        const Point2 q{p.x - lambda * step.x, p.y - lambda * step.y};
        double qx = 0.0;
        double qy = 0.0;
        const double r = periodic_residual(position(q), target, qx, qy);
        if (r < residual || k == 29) {
          p = q;
          residual = r;
          rx = qx;
          ry = qy;
          break;
        }
      }
    }
    return p;
  };
  const auto& images = map_.positions();
  const auto lattice = map_.grid().lattice();
  for (const Point2& x : targets) {
    const Point2 xw{wrap_coordinate(x.x), wrap_coordinate(x.y)};
    double residual = 0.0;
    int it = 0;
    Point2 p = solve({xw.x - d1_(xw), xw.y - d2_(xw)}, xw, residual, it);
    if (residual >= kNewtonTolerance) {
      std::size_t best = 0;
      double best_r = INFINITY;
      for (std::size_t s = 0; s < images.size(); ++s) {
        double rx = 0.0;
        double ry = 0.0;
        const double r = periodic_residual(images[s], xw, rx, ry);
        if (r < best_r) {
          best_r = r;
          best = s;
        }
      }
      p = solve(lattice[best], xw, residual, it);
    }
    if (residual >= kNewtonTolerance) {
      std::ostringstream msg;
      msg << "flow-map inversion did not converge in " << kMaxNewtonIterations
          << " Newton iterations (residual " << residual << " at target (" << x.x << ", " << x.y << "))";
      throw NumericalError(msg.str(), map_.time());
    }
    out.worst_residual = std::max(out.worst_residual, residual);
    out.iterations = std::max(out.iterations, it);
    out.points.push_back({wrap_coordinate(p.x), wrap_coordinate(p.y)});
  }
  return out;
}

const InversePoints& FlowMapSampler::lattice_inverse() const {
  if (!lattice_inverse_) {
    const auto pts = map_.grid().lattice();
    lattice_inverse_ = invert(pts);
  }
  return *lattice_inverse_;
}

const std::vector<Mat2>& FlowMapSampler::lattice_inverse_jacobians() const {
  if (!lattice_inverse_jacobians_) {
    const auto& pts = lattice_inverse().points;
    std::vector<Mat2> jac;
    jac.reserve(pts.size());
    for (const Point2& p : pts) jac.push_back(jacobian(p));
    lattice_inverse_jacobians_ = std::move(jac);
  }
  return *lattice_inverse_jacobians_;
}

}  // namespace sympgeo
