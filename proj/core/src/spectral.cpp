#include "sympgeo/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "fft.hpp"
#include "sympgeo/error.hpp"

namespace sympgeo {

Grid2D::Grid2D(int n) : n_(n) {
  if (n < 8 || n % 2 != 0) {
    throw ConfigError("grid size must be even and >= 8, got " + std::to_string(n));
  }
}

std::vector<Point2> Grid2D::lattice() const {
  std::vector<Point2> pts;
  pts.reserve(size());
  for (int j1 = 0; j1 < n_; ++j1) {
    for (int j2 = 0; j2 < n_; ++j2) pts.push_back({coordinate(j1), coordinate(j2)});
  }
  return pts;
}

namespace {

void require_same_grid(const Grid2D& a, const Grid2D& b) {
  if (!(a == b)) {
    throw ConfigError("grid mismatch: " + std::to_string(a.n()) + " vs " + std::to_string(b.n()));
  }
}

}  // namespace

// --- SpectrumField ---------------------------------------------------------

SpectrumField::SpectrumField(Grid2D grid) : grid_(grid), coeffs_(grid.size()) {}

SpectrumField::SpectrumField(Grid2D grid, std::vector<Complex> coeffs)
    : grid_(grid), coeffs_(std::move(coeffs)) {
  if (coeffs_.size() != grid_.size()) throw ConfigError("coefficient array does not match grid");
}

void SpectrumField::set_mode(int k1, int k2, Complex c) {
  set_coeff(k1, k2, c);
  set_coeff(-k1, -k2, std::conj(c));
}

double SpectrumField::hermitian_defect() const {
  const int n = grid_.n();
  double worst = 0.0;
  for (int i1 = 0; i1 < n; ++i1) {
    for (int i2 = 0; i2 < n; ++i2) {
      const Complex a = coeffs_[grid_.flat(i1, i2)];
      const Complex b = coeffs_[grid_.flat((n - i1) % n, (n - i2) % n)];
      worst = std::max(worst, std::abs(a - std::conj(b)));
    }
  }
  return worst;
}

double SpectrumField::power() const {
  double s = 0.0;
  for (const Complex& c : coeffs_) s += std::norm(c);
  return s;
}

int SpectrumField::support_band() const {
  const int n = grid_.n();
  int band = -1;
  for (int i1 = 0; i1 < n; ++i1) {
    for (int i2 = 0; i2 < n; ++i2) {
      if (coeffs_[grid_.flat(i1, i2)] != Complex{}) {
        band = std::max({band, std::abs(grid_.wavenumber(i1)), std::abs(grid_.wavenumber(i2))});
      }
    }
  }
  return band;
}

SpectrumField& SpectrumField::operator+=(const SpectrumField& other) {
  require_same_grid(grid_, other.grid_);
  for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] += other.coeffs_[i];
  return *this;
}

SpectrumField& SpectrumField::operator-=(const SpectrumField& other) {
  require_same_grid(grid_, other.grid_);
  for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] -= other.coeffs_[i];
  return *this;
}

SpectrumField& SpectrumField::operator*=(double s) {
  for (Complex& c : coeffs_) c *= s;
  return *this;
}

SpectrumField& SpectrumField::axpy(double s, const SpectrumField& other) {
  require_same_grid(grid_, other.grid_);
  for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] += s * other.coeffs_[i];
  return *this;
}

SpectrumField operator+(SpectrumField a, const SpectrumField& b) { return a += b; }
SpectrumField operator-(SpectrumField a, const SpectrumField& b) { return a -= b; }
SpectrumField operator*(double s, SpectrumField a) { return a *= s; }

// --- PhysicalField ---------------------------------------------------------

PhysicalField::PhysicalField(Grid2D grid) : grid_(grid), values_(grid.size()) {}

PhysicalField::PhysicalField(Grid2D grid, std::vector<double> values)
    : grid_(grid), values_(std::move(values)) {
  if (values_.size() != grid_.size()) throw ConfigError("value array does not match grid");
}

double PhysicalField::max_abs() const {
  double m = 0.0;
  for (double v : values_) m = std::max(m, std::abs(v));
  return m;
}

bool PhysicalField::all_finite() const {
  return std::all_of(values_.begin(), values_.end(), [](double v) { return std::isfinite(v); });
}

PhysicalField& PhysicalField::operator*=(const PhysicalField& other) {
  require_same_grid(grid_, other.grid_);
  for (std::size_t i = 0; i < values_.size(); ++i) values_[i] *= other.values_[i];
  return *this;
}

PhysicalField& PhysicalField::operator+=(const PhysicalField& other) {
  require_same_grid(grid_, other.grid_);
  for (std::size_t i = 0; i < values_.size(); ++i) values_[i] += other.values_[i];
  return *this;
}

PhysicalField operator*(PhysicalField a, const PhysicalField& b) { return a *= b; }

// --- transforms and multipliers -------------------------------------------

PhysicalField transform(const SpectrumField& field) {
  PhysicalField out(field.grid());
  detail::inverse_fft(field.grid(), field.data(), out.data());
  return out;
}

SpectrumField transform(const PhysicalField& field) {
  SpectrumField out(field.grid());
  detail::forward_fft(field.grid(), field.data(), out.data());
  return out;
}

SpectrumField apply_multiplier(const SpectrumField& field, Multiplier symbol) {
  const Grid2D& g = field.grid();
  const int n = g.n();
  SpectrumField out(g);
  auto src = field.data();
  auto dst = out.data();
  for (int i1 = 0; i1 < n; ++i1) {
    const int k1 = g.wavenumber(i1);
    for (int i2 = 0; i2 < n; ++i2) {
      const int k2 = g.wavenumber(i2);
      const std::size_t s = g.flat(i1, i2);
      const double k2sq = static_cast<double>(k1) * k1 + static_cast<double>(k2) * k2;
      switch (symbol) {
        case Multiplier::kGrad1:
          dst[s] = g.is_nyquist(k1) ? Complex{} : Complex(0.0, k1) * src[s];
          break;
        case Multiplier::kGrad2:
          dst[s] = g.is_nyquist(k2) ? Complex{} : Complex(0.0, k2) * src[s];
          break;
        case Multiplier::kLapPos:
          dst[s] = k2sq * src[s];
          break;
        case Multiplier::kHelmholtzInv:
          dst[s] = src[s] / (1.0 + k2sq);
          break;
      }
    }
  }
  return out;
}

SpectrumField dealias(const SpectrumField& field) {
  const Grid2D& g = field.grid();
  const int n = g.n();
  const int cut = g.dealias_cutoff();
  SpectrumField out = field;
  auto dst = out.data();
  for (int i1 = 0; i1 < n; ++i1) {
    const int k1 = std::abs(g.wavenumber(i1));
    for (int i2 = 0; i2 < n; ++i2) {
      if (std::max(k1, std::abs(g.wavenumber(i2))) > cut) dst[g.flat(i1, i2)] = Complex{};
    }
  }
  return out;
}

SpectrumField dealiased_product(const SpectrumField& a, const SpectrumField& b) {
  require_same_grid(a.grid(), b.grid());
  PhysicalField pa = transform(dealias(a));
  pa *= transform(dealias(b));
  return dealias(transform(pa));
}

// --- direct trigonometric evaluation ---------------------------------------

double wrap_coordinate(double x) noexcept {
  double r = std::fmod(x, kTwoPi);
  if (r < 0.0) r += kTwoPi;
  return r < kTwoPi ? r : 0.0;  // r + 2 pi can round up to 2 pi
}

TrigInterpolant::TrigInterpolant(const SpectrumField& field, double l1_tolerance)
    : n_(field.grid().n()) {
  const Grid2D& g = field.grid();
  const int half = n_ / 2;
  // l1 mass per |k|_inf shell; shell n/2 collects the Nyquist row and column.
  std::vector<double> shell(half + 1, 0.0);
  double total = 0.0;
  for (int i1 = 0; i1 < n_; ++i1) {
    for (int i2 = 0; i2 < n_; ++i2) {
      const double a = std::abs(field.data()[g.flat(i1, i2)]);
      shell[std::max(std::abs(g.wavenumber(i1)), std::abs(g.wavenumber(i2)))] += a;
      total += a;
    }
  }
  int b = half;
  double dropped = 0.0;
  while (b >= 0 && dropped + shell[b] <= l1_tolerance * total) {
    dropped += shell[b];
    --b;
  }
  nyquist_ = (b == half);
  band_ = nyquist_ ? half - 1 : std::max(b, 0);
  width_ = 2 * band_ + 1 + (nyquist_ ? 1 : 0);
  const int rows = band_ + 1 + (nyquist_ ? 1 : 0);
  rows_.assign(static_cast<std::size_t>(rows) * width_, Complex{});
  auto col_of = [&](int k2) { return k2 + band_; };  // Nyquist column sits at width_-1
  for (int r = 0; r < rows; ++r) {
    const int k1 = (r <= band_) ? r : -half;
    for (int k2 = -band_; k2 <= band_; ++k2) {
      rows_[static_cast<std::size_t>(r) * width_ + col_of(k2)] = field.coeff(k1, k2);
    }
    if (nyquist_) rows_[static_cast<std::size_t>(r) * width_ + width_ - 1] = field.coeff(k1, -half);
  }
}

double TrigInterpolant::operator()(Point2 p) const {
  const int half = n_ / 2;
  // e^{i k2 y} for k2 in [-band, band] by recurrence, plus cos(n y / 2).
  thread_local std::vector<Complex> ey;
  ey.resize(width_);
  const Complex step_y = std::polar(1.0, p.y);
  ey[band_] = 1.0;
  for (int k = 1; k <= band_; ++k) {
    ey[band_ + k] = ey[band_ + k - 1] * step_y;
    ey[band_ - k] = std::conj(ey[band_ + k]);
  }
  if (nyquist_) ey[width_ - 1] = std::cos(half * p.y);

  auto row_sum = [&](int r) {
    const Complex* row = rows_.data() + static_cast<std::size_t>(r) * width_;
    double re = 0.0;
    double im = 0.0;
    for (int j = 0; j < width_; ++j) {
      re += row[j].real() * ey[j].real() - row[j].imag() * ey[j].imag();
      im += row[j].real() * ey[j].imag() + row[j].imag() * ey[j].real();
    }
    return Complex(re, im);
  };

  double value = row_sum(0).real();
  const Complex step_x = std::polar(1.0, p.x);
  Complex ex = 1.0;
  for (int k1 = 1; k1 <= band_; ++k1) {
    ex *= step_x;
    value += 2.0 * (ex * row_sum(k1)).real();
  }
  if (nyquist_) value += std::cos(half * p.x) * row_sum(band_ + 1).real();
  return value;
}

std::vector<double> TrigInterpolant::evaluate(std::span<const Point2> points) const {
  std::vector<double> out;
  out.reserve(points.size());
  for (const Point2& p : points) out.push_back((*this)(p));
  return out;
}

std::vector<double> interpolate_at(const SpectrumField& field, std::span<const Point2> points) {
  if (points.empty()) return {};
  TrigInterpolant interp(field);
  std::vector<double> out;
  out.reserve(points.size());
  for (const Point2& p : points) out.push_back(interp({wrap_coordinate(p.x), wrap_coordinate(p.y)}));
  return out;
}

}  // namespace sympgeo
