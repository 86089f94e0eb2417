#include "fft.hpp"

#include <fftw3.h>

#include <map>
#include <memory>
#include <mutex>

namespace sympgeo::detail {
namespace {

// One r2c/c2r pair per grid size, executed on its own buffers. FFTW planning
// is not re-entrant, so creation and execution both happen under the lock.
class PlanPair {
 public:
  explicit PlanPair(int n) : n_(n), half_(n / 2 + 1) {
    real_ = fftw_alloc_real(static_cast<std::size_t>(n) * n);
    cplx_ = fftw_alloc_complex(static_cast<std::size_t>(n) * half_);
    forward_ = fftw_plan_dft_r2c_2d(n, n, real_, cplx_, FFTW_ESTIMATE);
    inverse_ = fftw_plan_dft_c2r_2d(n, n, cplx_, real_, FFTW_ESTIMATE);
  }
  ~PlanPair() {
    fftw_destroy_plan(forward_);
    fftw_destroy_plan(inverse_);
    fftw_free(real_);
    fftw_free(cplx_);
  }
  PlanPair(const PlanPair&) = delete;
  PlanPair& operator=(const PlanPair&) = delete;

  void inverse(std::span<const Complex> coeffs, std::span<double> values) {
    for (int i1 = 0; i1 < n_; ++i1) {
      for (int i2 = 0; i2 < half_; ++i2) {
        const Complex c = coeffs[static_cast<std::size_t>(i1) * n_ + i2];
        fftw_complex& dst = cplx_[static_cast<std::size_t>(i1) * half_ + i2];
        dst[0] = c.real();
        dst[1] = c.imag();
      }
    }
    fftw_execute(inverse_);
    std::copy(real_, real_ + values.size(), values.begin());
  }

  void forward(std::span<const double> values, std::span<Complex> coeffs) {
    std::copy(values.begin(), values.end(), real_);
    fftw_execute(forward_);
    const double scale = 1.0 / (static_cast<double>(n_) * n_);
    for (int i1 = 0; i1 < n_; ++i1) {
      for (int i2 = 0; i2 < half_; ++i2) {
        const fftw_complex& src = cplx_[static_cast<std::size_t>(i1) * half_ + i2];
        coeffs[static_cast<std::size_t>(i1) * n_ + i2] = Complex(src[0], src[1]) * scale;
      }
      // Remaining columns follow from c(-k) = conj(c(k)).
      const int j1 = (n_ - i1) % n_;
      for (int i2 = half_; i2 < n_; ++i2) {
        const fftw_complex& src = cplx_[static_cast<std::size_t>(j1) * half_ + (n_ - i2)];
        coeffs[static_cast<std::size_t>(i1) * n_ + i2] = Complex(src[0], -src[1]) * scale;
      }
    }
  }

 private:
  int n_;
  int half_;
  double* real_;
  fftw_complex* cplx_;
  fftw_plan forward_;
  fftw_plan inverse_;
};

std::mutex& plan_mutex() {
  static std::mutex m;
  return m;
}

PlanPair& plans_for(int n) {
  static std::map<int, std::unique_ptr<PlanPair>> cache;
  auto& slot = cache[n];
  if (!slot) slot = std::make_unique<PlanPair>(n);
  return *slot;
}

}  // namespace

void inverse_fft(const Grid2D& grid, std::span<const Complex> coeffs, std::span<double> values) {
  std::lock_guard lock(plan_mutex());
  plans_for(grid.n()).inverse(coeffs, values);
}

void forward_fft(const Grid2D& grid, std::span<const double> values, std::span<Complex> coeffs) {
  std::lock_guard lock(plan_mutex());
  plans_for(grid.n()).forward(values, coeffs);
}

}  // namespace sympgeo::detail
