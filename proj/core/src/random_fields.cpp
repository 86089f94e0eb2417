#include "sympgeo/random_fields.hpp"

#include <cmath>
#include <cstdlib>

#include "sympgeo/error.hpp"

namespace sympgeo {

SpectrumField random_band_limited(Grid2D grid, int band, std::mt19937_64& rng, double decay) {
  if (band < 1 || band >= grid.n() / 2) throw ConfigError("random field band out of range");
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  SpectrumField f(grid);
  for (int k1 = 0; k1 <= band; ++k1) {
    for (int k2 = -band; k2 <= band; ++k2) {
      if (k1 == 0 && k2 <= 0) continue;  // upper half-plane only; set_mode fills -k
      const double scale = std::pow(decay, std::max(k1, std::abs(k2)));
      const double re = unit(rng);
      const double im = unit(rng);
      f.set_mode(k1, k2, scale * Complex(re, im));
    }
  }
  return f;
}

SymplecticVectorField random_symplectic(Grid2D grid, int band, std::mt19937_64& rng,
                                        bool with_harmonic, double decay) {
  SpectrumField f = random_band_limited(grid, band, rng, decay);
  Vec2 h{0.0, 0.0};
  if (with_harmonic) {
    std::uniform_real_distribution<double> unit(-1.0, 1.0);
    h[0] = unit(rng);
    h[1] = unit(rng);
  }
  return SymplecticVectorField(std::move(f), h);
}

}  // namespace sympgeo
