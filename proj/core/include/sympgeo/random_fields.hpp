#pragma once

#include <cstdint>
#include <random>

#include "sympgeo/symplectic_fields.hpp"

namespace sympgeo {

/// Hermitian random spectrum supported on 0 < |k|_inf <= band, coefficients
/// uniform in the unit square scaled by `decay^|k|_inf`.
SpectrumField random_band_limited(Grid2D grid, int band, std::mt19937_64& rng, double decay = 1.0);

/// Random symplectic field: band-limited stream plus a harmonic part drawn
/// uniformly from [-1, 1]^2 (omitted when with_harmonic is false).
SymplecticVectorField random_symplectic(Grid2D grid, int band, std::mt19937_64& rng,
                                        bool with_harmonic = true, double decay = 1.0);

}  // namespace sympgeo
