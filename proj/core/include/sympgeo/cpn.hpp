#pragma once

// Matrix-level check of a two-parameter family of isometries of CP^n:
// gamma(s, t) = A(s) B(t) A(s)^{-1} in U(n+1), with 2x2 blocks
//   AA(s) = [[i cos s, sin s], [sin s, i cos s]] and BB(t) likewise.
// Even n: A = diag(i, AA, ..., AA),     B = diag(BB, ..., BB, i).
// Odd n:  A = diag(i, AA, ..., AA, i),  B = diag(BB, ..., BB, i I_2).
// Matrices differing by a unit scalar are the same isometry.

#include <complex>

#include <Eigen/Core>

#include "sympgeo/symplectic_fields.hpp"

namespace sympgeo {

using CMatrix = Eigen::MatrixXcd;

class UnitaryPath {
 public:
  /// Throws std::domain_error for n < 2.
  explicit UnitaryPath(int n);

  int n() const noexcept { return n_; }
  int dim() const noexcept { return n_ + 1; }

  CMatrix A(double s) const;
  CMatrix dA(double s) const;
  CMatrix B(double t) const;
  CMatrix dB(double t) const;

  CMatrix gamma(double s, double t) const;
  CMatrix gamma_t(double s, double t) const;
  /// d/ds gamma(s, t), exact.
  CMatrix gamma_s(double s, double t) const;

 private:
  int n_;
};

UnitaryPath build_path(int n);

/// v(s, t) = gamma_t gamma^{-1}; throws NumericalError if it is not
/// skew-Hermitian within 1e-12.
CMatrix velocity_field(const UnitaryPath& path, double s, double t);

/// J(t) = d/ds gamma(s, t) at s = 0.
CMatrix variation_field(const UnitaryPath& path, double t);

/// max |M + M^*|
double skew_hermitian_defect(const CMatrix& m);
/// max |M^* M - I|
double unitarity_defect(const CMatrix& m);
/// min over theta of max |M - e^{i theta} N|, with theta fitted by least squares.
double projective_distance(const CMatrix& m, const CMatrix& n);

/// Block-tridiagonal matrix with 2x2 blocks D1(t) = diag(-sin t, sin t) on
/// the super-diagonal and -D1 below, the last pair replaced by
/// D2(t) = diag(-sin t, i(1 - cos t)); `blocks` block rows.
CMatrix printed_variation_form(int blocks, double t);

/// Distance between the sorted multisets of entry magnitudes of two
/// matrices (padded with zeros to the same size).
double magnitude_multiset_distance(const CMatrix& a, const CMatrix& b);

/// H1 norm of rhs_direct at the constant field h on an n-grid.
double killing_stationarity_torus(Vec2 h, int n = 16);

struct TranslationCheck {
  double velocity_change = 0.0;    ///< |v(t) - v0|_1
  double translation_error = 0.0;  ///< max |eta(x) - x - t h|
};

/// Solves the geodesic from the constant field h to t_end.
TranslationCheck killing_translation_check(Vec2 h, double t_end, int n = 16, double dt = 1e-2);

}  // namespace sympgeo
