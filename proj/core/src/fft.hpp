#pragma once

#include <span>

#include "sympgeo/spectral.hpp"

namespace sympgeo::detail {

/// values = sum_k coeffs(k) e^{ik.x}; coeffs must be Hermitian.
void inverse_fft(const Grid2D& grid, std::span<const Complex> coeffs, std::span<double> values);

/// coeffs(k) = n^-2 sum_j values(j) e^{-ik.x_j}, full (not half) spectrum.
void forward_fft(const Grid2D& grid, std::span<const double> values, std::span<Complex> coeffs);

}  // namespace sympgeo::detail
