#pragma once

#include <functional>
#include <string>
#include <vector>

#include <Eigen/Cholesky>
#include <Eigen/Core>

#include "sympgeo/symplectic_fields.hpp"

namespace sympgeo {

/// Finite basis of the symplectic tangent space: the two harmonic directions
/// followed by cos(k.x) and sin(k.x) streams in increasing |k|^2, each
/// normalized to unit H1 norm. Ties in |k|^2 are broken by (k1, k2).
class GalerkinBasis {
 public:
  /// Throws ConfigError when m < 1 or m exceeds resolved_dimension(grid) / 4.
  GalerkinBasis(Grid2D grid, int m);

  /// Dimension of the dealiased symplectic space: 2 + (2 n/3 + 1)^2 - 1.
  static int resolved_dimension(const Grid2D& grid);

  const Grid2D& grid() const noexcept { return grid_; }
  int dim() const noexcept { return static_cast<int>(elements_.size()); }
  const std::vector<SymplecticVectorField>& elements() const noexcept { return elements_; }
  const SymplecticVectorField& operator[](int i) const { return elements_[static_cast<std::size_t>(i)]; }
  const std::string& label(int i) const { return labels_[static_cast<std::size_t>(i)]; }
  /// Largest |k|_inf present among the stream elements.
  int max_wavenumber() const noexcept { return max_wavenumber_; }

  /// H1 Gram matrix of the elements.
  const Eigen::MatrixXd& gram() const noexcept { return gram_; }

  /// Coordinates of the H1-orthogonal projection of x onto the span.
  Eigen::VectorXd coordinates(const SymplecticVectorField& x) const;
  SymplecticVectorField synthesize(const Eigen::VectorXd& coords) const;

  /// Matrix of x -> coordinates(op(element_j)) column by column.
  Eigen::MatrixXd assemble(const std::function<SymplecticVectorField(const SymplecticVectorField&)>& op) const;

  /// H1 adjoint G^{-1} A^T G of a matrix in basis coordinates.
  Eigen::MatrixXd adjoint(const Eigen::MatrixXd& a) const;

  /// H1 norm of the field with the given coordinates, sqrt(c^T G c).
  double norm(const Eigen::VectorXd& coords) const;

 private:
  Grid2D grid_;
  std::vector<SymplecticVectorField> elements_;
  std::vector<std::string> labels_;
  int max_wavenumber_ = 0;
  Eigen::MatrixXd gram_;
  Eigen::LLT<Eigen::MatrixXd> gram_llt_;
};

}  // namespace sympgeo
