#include "sympgeo/conjugate.hpp"

#include <cmath>
#include <deque>
#include <memory>
#include <sstream>

#include <Eigen/Cholesky>
#include <Eigen/LU>
#include <Eigen/SVD>

#include "sympgeo/error.hpp"
#include "sympgeo/lie_ops.hpp"

namespace sympgeo {
namespace {

struct Sample {
  ScanRow row;
  double rel = 0.0;  // sigma_min / sigma_max
};

class Evaluator {
 public:
  Evaluator(const MatrixPath& path, double rel_threshold) : path_(path), rel_threshold_(rel_threshold) {
    Eigen::LLT<Eigen::MatrixXd> llt(path.gram);
    if (llt.info() != Eigen::Success) throw ConfigError("Gram matrix is not positive definite");
    l_ = llt.matrixL();
  }

  Sample operator()(double t) const {
    const Eigen::MatrixXd m = path_.at(t);
    const Eigen::MatrixXd b = l_.transpose() * m * l_.transpose().inverse();
    const Eigen::VectorXd sigma = Eigen::JacobiSVD<Eigen::MatrixXd>(b).singularValues();
    const Eigen::VectorXd sigma_adj = Eigen::JacobiSVD<Eigen::MatrixXd>(b.transpose()).singularValues();
    Sample s;
    s.row.t = t;
    s.row.sigma_max = sigma(0);
    s.row.sigma_min = sigma(sigma.size() - 1);
    const double d = m.determinant();
    s.row.det_sign = d > 0.0 ? 1 : (d < 0.0 ? -1 : 0);
    const double threshold = rel_threshold_ * s.row.sigma_max;
    for (Eigen::Index i = 0; i < sigma.size(); ++i) {
      s.row.dim_ker += sigma(i) < threshold ? 1 : 0;
      s.row.dim_coker += sigma_adj(i) < threshold ? 1 : 0;
    }
    s.rel = s.row.sigma_max > 0.0 ? s.row.sigma_min / s.row.sigma_max : 0.0;
    return s;
  }

 private:
  const MatrixPath& path_;
  double rel_threshold_;
  Eigen::MatrixXd l_;
};

ConjugatePoint to_point(const Sample& s, bool sign_change) {
  ConjugatePoint p;
  p.t = s.row.t;
  p.multiplicity = s.row.dim_ker;
  p.sigma_min = s.rel;
  p.dim_ker = s.row.dim_ker;
  p.dim_coker = s.row.dim_coker;
  p.from_sign_change = sign_change;
  return p;
}

Sample bisect_sign(const Evaluator& eval, Sample lo, Sample hi, double tol) {
  while (hi.row.t - lo.row.t > tol) {
    const Sample mid = eval(0.5 * (lo.row.t + hi.row.t));
    if (mid.row.det_sign == 0) return mid;
    if (mid.row.det_sign == lo.row.det_sign) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return lo.rel < hi.rel ? lo : hi;
}

Sample golden_min(const Evaluator& eval, double a, double b, double tol, double rel_threshold) {
  const double g = 0.5 * (std::sqrt(5.0) - 1.0);
  double c = b - g * (b - a);
  double d = a + g * (b - a);
  Sample fc = eval(c);
  Sample fd = eval(d);
  while (b - a > tol) {
    if (std::min(fc.rel, fd.rel) < rel_threshold * 1e-3) break;
    if (fc.rel < fd.rel) {
      b = d;
      d = c;
      fd = fc;
      c = b - g * (b - a);
      fc = eval(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + g * (b - a);
      fd = eval(d);
    }
  }
  return fc.rel < fd.rel ? fc : fd;
}

bool already_reported(const std::vector<ConjugatePoint>& pts, double t, double tol) {
  for (const auto& p : pts) {
    if (std::abs(p.t - t) <= tol) return true;
  }
  return false;
}

}  // namespace

ConjugateScan detect_conjugate(const MatrixPath& path, const std::vector<double>& t_grid, const ScanOptions& options) {
  for (std::size_t k = 0; k < t_grid.size(); ++k) {
    if (!(t_grid[k] > 0.0) || (k > 0 && !(t_grid[k] > t_grid[k - 1]))) {
      throw ConfigError("t_grid must be positive and strictly increasing");
    }
  }
  const Evaluator eval(path, options.rel_threshold);
  const double thr = options.rel_threshold;
  ConjugateScan scan;
  std::vector<Sample> samples;
  samples.reserve(t_grid.size());
  const double dup_tol = 1e3 * options.t_tolerance;

  for (std::size_t k = 0; k < t_grid.size(); ++k) {
    samples.push_back(eval(t_grid[k]));
    scan.rows.push_back(samples.back().row);
    if (k == 0) continue;
    const Sample& prev = samples[k - 1];
    const Sample& cur = samples[k];

    if (prev.row.det_sign * cur.row.det_sign < 0) {
      const Sample s = bisect_sign(eval, prev, cur, options.t_tolerance);
      if (s.rel < thr) {
        if (!already_reported(scan.points, s.row.t, dup_tol)) scan.points.push_back(to_point(s, true));
      } else {
        std::ostringstream msg;
        msg << "det changes sign in (" << prev.row.t << ", " << cur.row.t << ") but sigma_min/sigma_max stays at "
            << s.rel << " after refinement";
        scan.warnings.push_back(msg.str());
      }
      if (k >= 2 && samples[k - 2].row.det_sign * prev.row.det_sign < 0) {
        std::ostringstream msg;
        msg << "t_grid too coarse near t = " << prev.row.t << ": det changes sign in consecutive intervals";
        scan.warnings.push_back(msg.str());
      }
    } else if (k >= 2) {
      const Sample& before = samples[k - 2];
      const bool no_flip = before.row.det_sign * prev.row.det_sign > 0;
      if (no_flip && prev.rel < before.rel && prev.rel < cur.rel) {
        const Sample s = golden_min(eval, before.row.t, cur.row.t, options.t_tolerance, thr);
        if (s.rel < thr && !already_reported(scan.points, s.row.t, dup_tol)) {
          scan.points.push_back(to_point(s, false));
        }
      }
    }
    if (k >= 2 && samples[k - 2].rel < thr && prev.rel >= thr && cur.rel < thr) {
      std::ostringstream msg;
      msg << "t_grid too coarse near t = " << prev.row.t << ": sigma_min oscillates across the threshold";
      scan.warnings.push_back(msg.str());
    }
  }
  return scan;
}

MatrixPath jacobi_path(const SymplecticVectorField& v0, const GalerkinBasis& basis, const SolverConfig& config,
                       Frame frame) {
  if (!(basis.grid() == v0.grid())) throw ConfigError("basis and initial field use different grids");
  SolverConfig cfg = config;
  cfg.track_flow = frame == Frame::kBody;
  cfg.basis_dim = 0;

  struct Cache {
    JacobiFlow origin;
    std::deque<JacobiFlow> checkpoints;  // increasing time, at most three
  };
  auto cache = std::make_shared<Cache>(Cache{JacobiFlow(v0, basis.elements(), cfg), {}});
  const GalerkinBasis* b = &basis;

  MatrixPath path;
  path.gram = basis.gram();
  path.at = [cache, b, frame](double t) {
    const JacobiFlow* start = &cache->origin;
    for (const auto& c : cache->checkpoints) {
      if (c.time() <= t) start = &c;
    }
    JacobiFlow flow = *start;
    flow.advance_to(t);
    Eigen::MatrixXd m(b->dim(), b->dim());
    if (frame == Frame::kBody) {
      const FlowMapSampler eta(flow.background().eta);
      for (int j = 0; j < b->dim(); ++j) {
        m.col(j) = b->coordinates(
            project_P(Ad_group(eta, flow.columns()[static_cast<std::size_t>(j)].y, Direction::kInverse)));
      }
    } else {
      for (int j = 0; j < b->dim(); ++j) m.col(j) = b->coordinates(flow.columns()[static_cast<std::size_t>(j)].y);
    }
    if (cache->checkpoints.empty() || t > cache->checkpoints.back().time()) {
      cache->checkpoints.push_back(std::move(flow));
      if (cache->checkpoints.size() > 3) cache->checkpoints.pop_front();
    }
    return m;
  };
  return path;
}

ConjugateScan detect_conjugate(const SymplecticVectorField& v0, const GalerkinBasis& basis,
                               const SolverConfig& config, const std::vector<double>& t_grid,
                               const ScanOptions& options, Frame frame) {
  return detect_conjugate(jacobi_path(v0, basis, config, frame), t_grid, options);
}

std::vector<double> make_t_grid(double start, double step, double stop) {
  if (!(step > 0.0) || !(start > 0.0) || !(stop >= start) || !std::isfinite(stop)) {
    throw ConfigError("t_grid must be start:step:stop with 0 < start <= stop and step > 0");
  }
  std::vector<double> grid;
  for (long k = 0;; ++k) {
    const double t = start + static_cast<double>(k) * step;
    if (t > stop + 1e-9 * step) break;
    grid.push_back(t);
  }
  return grid;
}

}  // namespace sympgeo
