#include "sympgeo/galerkin.hpp"

#include <algorithm>
#include <cmath>
#include <tuple>

#include "sympgeo/error.hpp"

namespace sympgeo {

int GalerkinBasis::resolved_dimension(const Grid2D& grid) {
  const int c = grid.dealias_cutoff();
  return 2 + (2 * c + 1) * (2 * c + 1) - 1;
}

GalerkinBasis::GalerkinBasis(Grid2D grid, int m) : grid_(grid) {
  if (m < 1) throw ConfigError("basis dimension must be positive");
  if (4 * m > resolved_dimension(grid)) {
    throw ConfigError("basis dimension " + std::to_string(m) + " too large for n = " + std::to_string(grid.n()) +
                      " (limit " + std::to_string(resolved_dimension(grid) / 4) + ")");
  }
  const int c = grid.dealias_cutoff();
  std::vector<std::tuple<int, int, int>> modes;  // (|k|^2, k1, k2) over the upper half-plane
  for (int k1 = 0; k1 <= c; ++k1) {
    for (int k2 = -c; k2 <= c; ++k2) {
      if (k1 == 0 && k2 <= 0) continue;
      modes.emplace_back(k1 * k1 + k2 * k2, k1, k2);
    }
  }
  std::sort(modes.begin(), modes.end());

  const double inv_side = 1.0 / kTwoPi;
  elements_.emplace_back(SpectrumField(grid), Vec2{inv_side, 0.0});
  labels_.emplace_back("h1");
  if (m >= 2) {
    elements_.emplace_back(SpectrumField(grid), Vec2{0.0, inv_side});
    labels_.emplace_back("h2");
  }
  for (const auto& [ksq, k1, k2] : modes) {
    if (dim() >= m) break;
    for (int part = 0; part < 2 && dim() < m; ++part) {
      SpectrumField f(grid);
      f.set_mode(k1, k2, part == 0 ? Complex(0.5, 0.0) : Complex(0.0, -0.5));
      SymplecticVectorField e(std::move(f));
      e *= 1.0 / h1_norm(e);
      elements_.push_back(std::move(e));
      labels_.push_back(std::string(part == 0 ? "cos(" : "sin(") + std::to_string(k1) + "," + std::to_string(k2) + ")");
      max_wavenumber_ = std::max({max_wavenumber_, k1, std::abs(k2)});
    }
  }

  gram_.resize(m, m);
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j <= i; ++j) {
      gram_(i, j) = gram_(j, i) = h1_inner(elements_[i], elements_[j]);
    }
  }
  gram_llt_.compute(gram_);
  if (gram_llt_.info() != Eigen::Success) throw ConfigError("Galerkin Gram matrix is not positive definite");
}

Eigen::VectorXd GalerkinBasis::coordinates(const SymplecticVectorField& x) const {
  Eigen::VectorXd rhs(dim());
  for (int i = 0; i < dim(); ++i) rhs(i) = h1_inner(elements_[i], x);
  return gram_llt_.solve(rhs);
}

SymplecticVectorField GalerkinBasis::synthesize(const Eigen::VectorXd& coords) const {
  if (coords.size() != dim()) throw ConfigError("coordinate vector does not match basis dimension");
  SymplecticVectorField out(grid_);
  for (int i = 0; i < dim(); ++i) out.axpy(coords(i), elements_[i]);
  return out;
}

Eigen::MatrixXd GalerkinBasis::assemble(
    const std::function<SymplecticVectorField(const SymplecticVectorField&)>& op) const {
  Eigen::MatrixXd a(dim(), dim());
  for (int j = 0; j < dim(); ++j) a.col(j) = coordinates(op(elements_[j]));
  return a;
}

Eigen::MatrixXd GalerkinBasis::adjoint(const Eigen::MatrixXd& a) const {
  return gram_llt_.solve(a.transpose() * gram_);
}

double GalerkinBasis::norm(const Eigen::VectorXd& coords) const {
  return std::sqrt(std::max(0.0, coords.dot(gram_ * coords)));
}

}  // namespace sympgeo
