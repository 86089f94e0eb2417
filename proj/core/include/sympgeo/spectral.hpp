#pragma once

// Fourier representation of real periodic scalar fields on [0, 2pi)^2.
//
// Coefficients are stored in FFT order: entry (i1, i2) holds the mode
// k = (wavenumber(i1), wavenumber(i2)), row-major with k2 fastest. The
// physical field is u(x) = sum_k c(k) exp(i k.x), so c(0,0) is the lattice
// mean of the samples.

#include <complex>
#include <cstddef>
#include <numbers>
#include <span>
#include <vector>

namespace sympgeo {

using Complex = std::complex<double>;

inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

struct Point2 {
  double x = 0.0;
  double y = 0.0;
};

class Grid2D {
 public:
  /// Throws ConfigError unless n is even and at least 8.
  explicit Grid2D(int n);

  int n() const noexcept { return n_; }
  std::size_t size() const noexcept { return static_cast<std::size_t>(n_) * n_; }

  /// Signed wavenumber stored at FFT index idx; the Nyquist index maps to -n/2.
  int wavenumber(int idx) const noexcept { return idx < n_ / 2 ? idx : idx - n_; }
  /// FFT index holding wavenumber k (taken modulo n).
  int index(int k) const noexcept {
    const int r = k % n_;
    return r < 0 ? r + n_ : r;
  }
  bool is_nyquist(int k) const noexcept { return k == -n_ / 2 || k == n_ / 2; }

  /// Largest |k|_inf retained by the 2/3-rule.
  int dealias_cutoff() const noexcept { return n_ / 3; }

  double coordinate(int j) const noexcept { return kTwoPi * j / n_; }
  std::size_t flat(int i1, int i2) const noexcept {
    return static_cast<std::size_t>(i1) * n_ + static_cast<std::size_t>(i2);
  }

  /// The n*n collocation points x_j = 2 pi j / n in storage order.
  std::vector<Point2> lattice() const;

  bool operator==(const Grid2D&) const = default;

 private:
  int n_;
};

class SpectrumField {
 public:
  explicit SpectrumField(Grid2D grid);
  SpectrumField(Grid2D grid, std::vector<Complex> coeffs);

  const Grid2D& grid() const noexcept { return grid_; }

  Complex coeff(int k1, int k2) const { return coeffs_[slot(k1, k2)]; }
  /// Writes a single coefficient; the caller keeps Hermitian symmetry.
  void set_coeff(int k1, int k2, Complex c) { coeffs_[slot(k1, k2)] = c; }
  /// Writes c at k and conj(c) at -k.
  void set_mode(int k1, int k2, Complex c);

  std::span<const Complex> data() const noexcept { return coeffs_; }
  std::span<Complex> data() noexcept { return coeffs_; }

  /// max |c(k) - conj(c(-k))| over all k.
  double hermitian_defect() const;
  /// sum_k |c(k)|^2, the lattice mean of the squared physical field.
  double power() const;
  /// Largest |k|_inf carrying a nonzero coefficient (-1 for the zero field).
  int support_band() const;

  SpectrumField& operator+=(const SpectrumField& other);
  SpectrumField& operator-=(const SpectrumField& other);
  SpectrumField& operator*=(double s);
  /// this += s * other
  SpectrumField& axpy(double s, const SpectrumField& other);

 private:
  std::size_t slot(int k1, int k2) const noexcept {
    return grid_.flat(grid_.index(k1), grid_.index(k2));
  }

  Grid2D grid_;
  std::vector<Complex> coeffs_;
};

SpectrumField operator+(SpectrumField a, const SpectrumField& b);
SpectrumField operator-(SpectrumField a, const SpectrumField& b);
SpectrumField operator*(double s, SpectrumField a);

class PhysicalField {
 public:
  explicit PhysicalField(Grid2D grid);
  PhysicalField(Grid2D grid, std::vector<double> values);

  const Grid2D& grid() const noexcept { return grid_; }
  double at(int j1, int j2) const { return values_[grid_.flat(j1, j2)]; }

  std::span<const double> data() const noexcept { return values_; }
  std::span<double> data() noexcept { return values_; }

  double max_abs() const;
  bool all_finite() const;

  PhysicalField& operator*=(const PhysicalField& other);
  PhysicalField& operator+=(const PhysicalField& other);

 private:
  Grid2D grid_;
  std::vector<double> values_;
};

PhysicalField operator*(PhysicalField a, const PhysicalField& b);

/// Spectrum to lattice values.
PhysicalField transform(const SpectrumField& field);
/// Lattice values to spectrum, normalized so c(0,0) is the lattice mean.
SpectrumField transform(const PhysicalField& field);

enum class Multiplier {
  kGrad1,        ///< i k1 (zero on the Nyquist row)
  kGrad2,        ///< i k2 (zero on the Nyquist column)
  kLapPos,       ///< |k|^2, the positive Laplacian
  kHelmholtzInv  ///< 1 / (1 + |k|^2)
};

SpectrumField apply_multiplier(const SpectrumField& field, Multiplier symbol);

/// Zeroes every coefficient with max(|k1|, |k2|) > n/3.
SpectrumField dealias(const SpectrumField& field);

/// Product of two fields evaluated on the lattice and truncated by the 2/3 rule.
/// Both factors are dealiased first, so the result is exact on the kept band.
SpectrumField dealiased_product(const SpectrumField& a, const SpectrumField& b);

/// Evaluates the trigonometric polynomial sum_k c(k) e^{ik.x} directly.
///
/// The sum runs over the square |k|_inf <= band. With l1_tolerance = 0 the
/// band is the exact support of the field; a positive tolerance drops the
/// outermost shells while their total l1 mass stays below
/// l1_tolerance * sum_k |c(k)|, which bounds the pointwise error by the same
/// amount. Nyquist modes are evaluated as cos(n x / 2) so that lattice
/// values agree with transform().
class TrigInterpolant {
 public:
  explicit TrigInterpolant(const SpectrumField& field, double l1_tolerance = 0.0);

  double operator()(Point2 p) const;
  std::vector<double> evaluate(std::span<const Point2> points) const;

  int band() const noexcept { return band_; }

 private:
  int n_;
  int band_;
  bool nyquist_;
  int width_;                 // 2 * band + 1 (+1 when the Nyquist row is present)
  std::vector<Complex> rows_; // coefficients repacked as [k1][k2] over the band
};

/// Direct evaluation at arbitrary points (wrapped into the period cell).
std::vector<double> interpolate_at(const SpectrumField& field, std::span<const Point2> points);

/// Wraps a coordinate into [0, 2pi).
double wrap_coordinate(double x) noexcept;

}  // namespace sympgeo
