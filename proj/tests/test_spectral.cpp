#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "sympgeo/error.hpp"
#include "sympgeo/random_fields.hpp"
#include "sympgeo/spectral.hpp"

using namespace sympgeo;

namespace {

double max_coeff_diff(const SpectrumField& a, const SpectrumField& b) {
  double worst = 0.0;
  for (std::size_t i = 0; i < a.data().size(); ++i) worst = std::max(worst, std::abs(a.data()[i] - b.data()[i]));
  return worst;
}

}  // namespace

TEST(Grid, RejectsOddOrSmallSizes) {
  EXPECT_THROW(Grid2D(7), ConfigError);
  EXPECT_THROW(Grid2D(6), ConfigError);
  EXPECT_THROW(Grid2D(31), ConfigError);
  EXPECT_NO_THROW(Grid2D(8));
}

TEST(Grid, WavenumbersFollowFftOrder) {
  const Grid2D g(8);
  EXPECT_EQ(g.wavenumber(0), 0);
  EXPECT_EQ(g.wavenumber(3), 3);
  EXPECT_EQ(g.wavenumber(4), -4);
  EXPECT_EQ(g.wavenumber(7), -1);
  EXPECT_EQ(g.index(-1), 7);
  EXPECT_TRUE(g.is_nyquist(-4));
  EXPECT_EQ(g.dealias_cutoff(), 2);
}

TEST(Transform, MatchesDirectDft) {
  const Grid2D g(12);
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<double> values(g.size());
  for (double& v : values) v = u(rng);
  const SpectrumField fast = transform(PhysicalField(g, values));
  EXPECT_LT(max_coeff_diff(fast, oracle::dft(g, values)), 1e-15);
  const PhysicalField back = transform(fast);
  for (std::size_t i = 0; i < values.size(); ++i) EXPECT_NEAR(back.data()[i], values[i], 1e-14);
}

TEST(Transform, MeanIsZeroMode) {
  const Grid2D g(16);
  const auto values = oracle::sample(g, [](double x, double y) { return 2.5 + std::cos(x) * std::sin(2 * y); });
  const SpectrumField f = transform(PhysicalField(g, values));
  EXPECT_NEAR(f.coeff(0, 0).real(), 2.5, 1e-15);
  // cos x sin 2y = (e^{i(x+2y)} - e^{i(x-2y)} + e^{i(-x+2y)} - e^{-i(x+2y)}) / (4i)
  EXPECT_NEAR(std::abs(f.coeff(1, 2) - Complex(0.0, -0.25)), 0.0, 1e-15);
  EXPECT_LT(f.hermitian_defect(), 1e-16);
}

TEST(Multiplier, DerivativesOfTrigonometricFields) {
  const Grid2D g(16);
  const auto values = oracle::sample(g, [](double x, double y) { return std::sin(3 * x) * std::cos(2 * y); });
  const SpectrumField f = transform(PhysicalField(g, values));
  const PhysicalField fx = transform(apply_multiplier(f, Multiplier::kGrad1));
  const PhysicalField fy = transform(apply_multiplier(f, Multiplier::kGrad2));
  const PhysicalField lap = transform(apply_multiplier(f, Multiplier::kLapPos));
  const PhysicalField helm = transform(apply_multiplier(f, Multiplier::kHelmholtzInv));
  for (int j1 = 0; j1 < g.n(); ++j1) {
    for (int j2 = 0; j2 < g.n(); ++j2) {
      const double x = g.coordinate(j1);
      const double y = g.coordinate(j2);
      const double base = std::sin(3 * x) * std::cos(2 * y);
      EXPECT_NEAR(fx.at(j1, j2), 3 * std::cos(3 * x) * std::cos(2 * y), 1e-13);
      EXPECT_NEAR(fy.at(j1, j2), -2 * std::sin(3 * x) * std::sin(2 * y), 1e-13);
      EXPECT_NEAR(lap.at(j1, j2), 13 * base, 1e-12);
      EXPECT_NEAR(helm.at(j1, j2), base / 14.0, 1e-15);
    }
  }
}

TEST(Multiplier, GradientVanishesOnNyquist) {
  const Grid2D g(8);
  SpectrumField f(g);
  f.set_coeff(-4, 1, {1.0, 0.0});
  f.set_coeff(1, -4, {1.0, 0.0});
  const SpectrumField d1 = apply_multiplier(f, Multiplier::kGrad1);
  const SpectrumField d2 = apply_multiplier(f, Multiplier::kGrad2);
  EXPECT_EQ(d1.coeff(-4, 1), Complex{});
  EXPECT_EQ(d2.coeff(1, -4), Complex{});
  EXPECT_NE(d1.coeff(1, -4), Complex{});
}

TEST(Dealias, KeepsTwoThirdsBand) {
  const Grid2D g(12);
  SpectrumField f(g);
  f.set_mode(4, 0, {1.0, 0.0});
  f.set_mode(5, 1, {1.0, 0.0});
  f.set_mode(-3, 4, {1.0, 0.0});
  const SpectrumField d = dealias(f);
  EXPECT_EQ(d.coeff(4, 0), Complex(1.0, 0.0));
  EXPECT_EQ(d.coeff(-3, 4), Complex(1.0, 0.0));
  EXPECT_EQ(d.coeff(5, 1), Complex{});
  EXPECT_EQ(d.support_band(), 4);
}

TEST(Dealias, ProductIsExactOnKeptBand) {
  // Band-limited factors whose product lies inside n/3: oracle is the pointwise product.
  const Grid2D g(24);
  std::mt19937_64 rng(11);
  const SpectrumField a = random_band_limited(g, 4, rng);
  const SpectrumField b = random_band_limited(g, 4, rng);
  const auto av = transform(a);
  const auto bv = transform(b);
  std::vector<double> prod(g.size());
  for (std::size_t i = 0; i < prod.size(); ++i) prod[i] = av.data()[i] * bv.data()[i];
  EXPECT_LT(max_coeff_diff(dealiased_product(a, b), oracle::dft(g, prod)), 1e-13);
}

TEST(Dealias, ProductTruncatesOutsideBand) {
  const Grid2D g(12);
  SpectrumField a(g);
  a.set_mode(3, 0, {0.5, 0.0});  // cos 3x
  const SpectrumField p = dealiased_product(a, a);  // cos^2 3x = (1 + cos 6x) / 2
  EXPECT_NEAR(p.coeff(0, 0).real(), 0.5, 1e-15);
  EXPECT_EQ(p.support_band(), 0);
}

TEST(Interpolant, MatchesDirectSumOffLattice) {
  const Grid2D g(16);
  std::mt19937_64 rng(5);
  const SpectrumField f = random_band_limited(g, 5, rng);
  const TrigInterpolant interp(f);
  std::uniform_real_distribution<double> u(-10.0, 10.0);
  for (int i = 0; i < 50; ++i) {
    const Point2 p{u(rng), u(rng)};
    EXPECT_NEAR(interp(p), oracle::eval(f, p.x, p.y), 1e-13);
  }
  EXPECT_EQ(interp.band(), 5);
}

TEST(Interpolant, AgreesWithTransformOnLatticeIncludingNyquist) {
  const Grid2D g(8);
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<double> values(g.size());
  for (double& v : values) v = u(rng);
  const SpectrumField f = transform(PhysicalField(g, values));
  const auto at = interpolate_at(f, g.lattice());
  for (std::size_t i = 0; i < values.size(); ++i) EXPECT_NEAR(at[i], values[i], 1e-14);
}

TEST(Interpolant, ToleranceBoundsPointwiseError) {
  const Grid2D g(32);
  std::mt19937_64 rng(9);
  const SpectrumField f = random_band_limited(g, 10, rng, 0.3);
  double l1 = 0.0;
  for (const Complex& c : f.data()) l1 += std::abs(c);
  const double tol = 1e-2;
  const TrigInterpolant exact(f);
  const TrigInterpolant cut(f, tol);
  EXPECT_LT(cut.band(), exact.band());
  std::uniform_real_distribution<double> u(0.0, kTwoPi);
  for (int i = 0; i < 50; ++i) {
    const Point2 p{u(rng), u(rng)};
    EXPECT_LE(std::abs(cut(p) - exact(p)), tol * l1);
  }
}

TEST(Spectrum, PowerIsMeanSquare) {
  const Grid2D g(16);
  std::mt19937_64 rng(4);
  const SpectrumField f = random_band_limited(g, 6, rng);
  const PhysicalField v = transform(f);
  double ms = 0.0;
  for (double x : v.data()) ms += x * x;
  EXPECT_NEAR(f.power(), ms / static_cast<double>(g.size()), 1e-14 * f.power());
}

TEST(Spectrum, WrapCoordinate) {
  EXPECT_NEAR(wrap_coordinate(-0.5), kTwoPi - 0.5, 1e-15);
  EXPECT_NEAR(wrap_coordinate(kTwoPi + 1.0), 1.0, 1e-14);
  EXPECT_GE(wrap_coordinate(-1e-300), 0.0);
  EXPECT_LT(wrap_coordinate(-1e-300), kTwoPi);
}
