#include <cmath>
#include <numbers>
#include <random>

#include <Eigen/Dense>
#include <gtest/gtest.h>

#include "oracles.hpp"
#include "sympgeo/error.hpp"
#include "sympgeo/random_fields.hpp"
#include "sympgeo/symplectic_fields.hpp"

using namespace sympgeo;

namespace {

constexpr double kArea = 4.0 * std::numbers::pi * std::numbers::pi;

SymplecticVectorField stream_of(const Grid2D& g, double (*f)(double, double)) {
  return SymplecticVectorField(transform(PhysicalField(g, oracle::sample(g, f))));
}

VelocityField velocity_of(const Grid2D& g, double (*a)(double, double), double (*b)(double, double)) {
  return VelocityField(transform(PhysicalField(g, oracle::sample(g, a))), transform(PhysicalField(g, oracle::sample(g, b))));
}

double max_diff(const PhysicalField& a, const std::vector<double>& b) {
  double worst = 0.0;
  for (std::size_t i = 0; i < b.size(); ++i) worst = std::max(worst, std::abs(a.data()[i] - b[i]));
  return worst;
}

}  // namespace

TEST(Symplectic, JIsCompatibleWithOmega) {
  // omega(a, b) = g(a, J b) for random vectors.
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int i = 0; i < 20; ++i) {
    const Vec2 a{u(rng), u(rng)};
    const Vec2 b{u(rng), u(rng)};
    const Vec2 jb = apply_J(b);
    EXPECT_NEAR(symplectic_form(a, b), a[0] * jb[0] + a[1] * jb[1], 1e-15);
  }
}

TEST(Symplectic, StreamMeanAndNyquistAreDropped) {
  const Grid2D g(8);
  SpectrumField f(g);
  f.set_coeff(0, 0, {3.0, 0.0});
  f.set_mode(-4, 1, {1.0, 0.0});
  f.set_mode(1, 1, {0.5, 0.0});
  const SymplecticVectorField v(f);
  EXPECT_EQ(v.stream().coeff(0, 0), Complex{});
  EXPECT_EQ(v.stream().coeff(-4, 1), Complex{});
  EXPECT_EQ(v.stream().coeff(1, 1), Complex(0.5, 0.0));
}

TEST(ToVelocity, CosX) {
  const Grid2D g(16);
  const VelocitySamples s = to_physical(to_velocity(stream_of(g, [](double x, double) { return std::cos(x); })));
  EXPECT_LT(max_diff(s.v1, std::vector<double>(g.size(), 0.0)), 1e-15);
  EXPECT_LT(max_diff(s.v2, oracle::sample(g, [](double x, double) { return std::sin(x); })), 4e-15);
}

TEST(ToVelocity, CosYAndHarmonic) {
  const Grid2D g(16);
  SymplecticVectorField v(stream_of(g, [](double, double y) { return std::cos(y); }).stream(), {1.0, 0.0});
  const VelocitySamples s = to_physical(to_velocity(v));
  EXPECT_LT(max_diff(s.v1, oracle::sample(g, [](double, double y) { return 1.0 - std::sin(y); })), 4e-15);
  EXPECT_LT(max_diff(s.v2, std::vector<double>(g.size(), 0.0)), 1e-15);
}

TEST(ProjectP, GradientIsRemoved) {
  const Grid2D g(16);
  const VelocityField grad = velocity_of(g, [](double x, double) { return std::sin(2 * x); }, [](double, double) { return 0.0; });
  const Projection p = project_P_with_residual(grad);
  EXPECT_LT(h1_norm(p.field), 1e-14);
  // residual is the L2 norm of sin 2x in the lattice-mean convention
  EXPECT_NEAR(p.residual, std::sqrt(0.5), 1e-14);
}

TEST(ProjectP, IdempotentOnSymplecticFields) {
  const Grid2D g(32);
  std::mt19937_64 rng(4);
  const SymplecticVectorField v = random_symplectic(g, 10, rng);
  const Projection p = project_P_with_residual(to_velocity(v));
  EXPECT_LT(h1_norm(p.field - v), 1e-13 * h1_norm(v));
  EXPECT_LT(p.residual, 1e-13);
}

TEST(ProjectP, MatchesDenseLeastSquaresOracle) {
  // u = (0, sin x) + (cos y, 0) + (sin 2x, 0); fit on span of J grad of
  // cos x, sin x, cos y, sin y, plus the gradient distractor removed.
  const Grid2D g(16);
  const VelocityField u = velocity_of(
      g, [](double x, double y) { return std::cos(y) + std::sin(2 * x) + 0.3 * std::cos(x + y); },
      [](double x, double y) { return std::sin(x) - 0.3 * std::cos(x + y); });
  // Candidate streams and their velocities J grad f = (f_y, -f_x).
  struct Cand {
    double (*f)(double, double);
    double (*fx)(double, double);
    double (*fy)(double, double);
  };
  const std::vector<Cand> cands{
      {[](double x, double) { return std::cos(x); }, [](double x, double) { return -std::sin(x); }, [](double, double) { return 0.0; }},
      {[](double x, double) { return std::sin(x); }, [](double x, double) { return std::cos(x); }, [](double, double) { return 0.0; }},
      {[](double, double y) { return std::cos(y); }, [](double, double) { return 0.0; }, [](double, double y) { return -std::sin(y); }},
      {[](double, double y) { return std::sin(y); }, [](double, double) { return 0.0; }, [](double, double y) { return std::cos(y); }},
      {[](double x, double y) { return std::sin(x + y); }, [](double x, double y) { return std::cos(x + y); }, [](double x, double y) { return std::cos(x + y); }},
      {[](double x, double y) { return std::cos(x + y); }, [](double x, double y) { return -std::sin(x + y); }, [](double x, double y) { return -std::sin(x + y); }},
      {[](double x, double) { return std::cos(2 * x); }, [](double x, double) { return -2 * std::sin(2 * x); }, [](double, double) { return 0.0; }},
      {[](double x, double) { return std::sin(2 * x); }, [](double x, double) { return 2 * std::cos(2 * x); }, [](double, double) { return 0.0; }},
  };
  const auto s = to_physical(u);
  const int rows = static_cast<int>(2 * g.size());
  Eigen::MatrixXd a(rows, static_cast<int>(cands.size()));
  Eigen::VectorXd rhs(rows);
  for (std::size_t c = 0; c < cands.size(); ++c) {
    const auto v1 = oracle::sample(g, cands[c].fy);
    const auto v2 = oracle::sample(g, cands[c].fx);
    for (std::size_t j = 0; j < g.size(); ++j) {
      a(static_cast<int>(j), static_cast<int>(c)) = v1[j];
      a(static_cast<int>(g.size() + j), static_cast<int>(c)) = -v2[j];
    }
  }
  for (std::size_t j = 0; j < g.size(); ++j) {
    rhs(static_cast<int>(j)) = s.v1.data()[j];
    rhs(static_cast<int>(g.size() + j)) = s.v2.data()[j];
  }
  const Eigen::VectorXd coef = a.colPivHouseholderQr().solve(rhs);
  std::vector<double> expected(g.size(), 0.0);
  for (std::size_t c = 0; c < cands.size(); ++c) {
    const auto f = oracle::sample(g, cands[c].f);
    for (std::size_t j = 0; j < g.size(); ++j) expected[j] += coef(static_cast<int>(c)) * f[j];
  }
  const SymplecticVectorField p = project_P(u);
  EXPECT_LT(max_diff(transform(p.stream()), expected), 1e-13);
  EXPECT_NEAR(coef(0), 1.0, 1e-13);  // cos x
  EXPECT_NEAR(coef(3), 1.0, 1e-13);  // sin y
}

TEST(ProjectP, SelfAdjointAndIdempotentMatrix) {
  // L2 matrix of P on ambient fields supported on modes with |k|_inf <= 2.
  const Grid2D g(12);
  std::vector<VelocityField> basis;
  for (int k1 = -2; k1 <= 2; ++k1) {
    for (int k2 = -2; k2 <= 2; ++k2) {
      if (k1 < 0 || (k1 == 0 && k2 <= 0)) continue;
      for (int comp = 0; comp < 2; ++comp) {
        for (Complex c : {Complex(0.5, 0.0), Complex(0.0, 0.5)}) {
          VelocityField u(g);
          (comp == 0 ? u.u1 : u.u2).set_mode(k1, k2, c);
          basis.push_back(u);
        }
      }
    }
  }
  const int m = static_cast<int>(basis.size());
  Eigen::MatrixXd pm(m, m);
  Eigen::MatrixXd gram(m, m);
  for (int i = 0; i < m; ++i) {
    const VelocityField pi = to_velocity(project_P(basis[static_cast<std::size_t>(i)]));
    for (int j = 0; j < m; ++j) {
      pm(j, i) = l2_inner(basis[static_cast<std::size_t>(j)], pi);
      gram(j, i) = l2_inner(basis[static_cast<std::size_t>(j)], basis[static_cast<std::size_t>(i)]);
    }
  }
  EXPECT_LT((pm - pm.transpose()).norm(), 1e-10 * pm.norm());
  const Eigen::MatrixXd op = gram.ldlt().solve(pm);
  EXPECT_LT((op * op - op).norm(), 1e-10 * op.norm());
}

TEST(Hodge, SymplecticFieldsAreL2OrthogonalToGradients) {
  const Grid2D g(32);
  std::mt19937_64 rng(6);
  for (int i = 0; i < 10; ++i) {
    const SymplecticVectorField w = random_symplectic(g, 8, rng);
    const SpectrumField s = random_band_limited(g, 8, rng);
    const VelocityField grad(apply_multiplier(s, Multiplier::kGrad1), apply_multiplier(s, Multiplier::kGrad2));
    const VelocityField wv = to_velocity(w);
    EXPECT_LT(std::abs(l2_inner(wv, grad)), 1e-12 * std::sqrt(l2_inner(wv, wv) * l2_inner(grad, grad)));
  }
}

TEST(H1Inner, Examples) {
  const Grid2D g(16);
  const auto cx = stream_of(g, [](double x, double) { return std::cos(x); });
  const auto cy = stream_of(g, [](double, double y) { return std::cos(y); });
  EXPECT_NEAR(h1_inner(cx, cx), kArea, 1e-12);
  EXPECT_NEAR(oracle::h1_inner(cx, cx), kArea, 1e-12);
  const SymplecticVectorField h(SpectrumField(g), {1.0, 0.0});
  EXPECT_NEAR(h1_inner(h, h), kArea, 1e-12);
  EXPECT_NEAR(h1_inner(cx, cy), 0.0, 1e-14);
}

TEST(H1Inner, MatchesQuadratureOracleOnRandomFields) {
  const Grid2D g(16);
  std::mt19937_64 rng(8);
  for (int i = 0; i < 4; ++i) {
    const SymplecticVectorField u = random_symplectic(g, 3, rng);
    const SymplecticVectorField v = random_symplectic(g, 3, rng);
    const double ref = oracle::h1_inner(u, v);
    EXPECT_NEAR(h1_inner(u, v), ref, 1e-11 * std::max(1.0, std::abs(ref)));
  }
}

TEST(H1Inner, SymmetricAndPositive) {
  const Grid2D g(32);
  std::mt19937_64 rng(12);
  for (int i = 0; i < 20; ++i) {
    const SymplecticVectorField u = random_symplectic(g, 10, rng);
    const SymplecticVectorField v = random_symplectic(g, 10, rng);
    EXPECT_NEAR(h1_inner(u, v), h1_inner(v, u), 1e-12 * h1_norm(u) * h1_norm(v));
    EXPECT_GT(h1_inner(u, u), 0.0);
  }
}

TEST(H1Inner, GridMismatchThrows) {
  EXPECT_THROW(h1_inner(SymplecticVectorField(Grid2D(8)), SymplecticVectorField(Grid2D(16))), ConfigError);
}

TEST(Casimir, Examples) {
  const Grid2D g(16);
  // rounding noise at |k| ~ 8 is amplified by |k|^2 (1 + |k|^2) ~ 1e4
  const auto q1 = transform(casimir_q(stream_of(g, [](double x, double) { return std::cos(x); })));
  EXPECT_LT(max_diff(q1, oracle::sample(g, [](double x, double) { return 2 * std::cos(x); })), 1e-12);
  const auto q2 = transform(casimir_q(stream_of(g, [](double x, double) { return std::cos(2 * x); })));
  EXPECT_LT(max_diff(q2, oracle::sample(g, [](double x, double) { return 20 * std::cos(2 * x); })), 1e-12);
  EXPECT_EQ(casimir_q(SymplecticVectorField(g)).power(), 0.0);
}

TEST(Casimir, RoundTrip) {
  const Grid2D g(32);
  std::mt19937_64 rng(3);
  const SymplecticVectorField v = random_symplectic(g, 10, rng);
  const SymplecticVectorField back = from_casimir(casimir_q(v), v.harmonic());
  EXPECT_LT(h1_norm(back - v), 1e-14 * h1_norm(v));
}

TEST(Helmholtz, InverseOfOnePlusLaplacian) {
  const Grid2D g(16);
  const auto v = helmholtz_inverse(stream_of(g, [](double x, double y) { return std::sin(x) * std::cos(2 * y); }));
  EXPECT_LT(max_diff(transform(v.stream()), oracle::sample(g, [](double x, double y) { return std::sin(x) * std::cos(2 * y) / 6.0; })),
            1e-15);
}

TEST(Symplectic, HermitianSymmetryPreserved) {
  const Grid2D g(32);
  std::mt19937_64 rng(21);
  const SymplecticVectorField v = random_symplectic(g, 10, rng);
  const VelocityField u = to_velocity(v);
  EXPECT_LT(u.u1.hermitian_defect(), 1e-15);
  EXPECT_LT(u.u2.hermitian_defect(), 1e-15);
  EXPECT_LT(project_P(u).stream().hermitian_defect(), 1e-15);
  EXPECT_LT(casimir_q(v).hermitian_defect(), 1e-12);
}
