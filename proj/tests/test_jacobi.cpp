#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "sympgeo/error.hpp"
#include "sympgeo/jacobi.hpp"
#include "sympgeo/lie_ops.hpp"
#include "sympgeo/random_fields.hpp"

using namespace sympgeo;

namespace {

SymplecticVectorField generic_field(int n, std::uint64_t seed, bool harmonic = true) {
  std::mt19937_64 rng(seed);
  SymplecticVectorField v = random_symplectic(Grid2D(n), 3, rng, harmonic, 0.5);
  v *= 1.0 / max_speed(v);
  return v;
}

SolverConfig config(int n, double dt, double t_end) {
  SolverConfig c;
  c.n = n;
  c.dt = dt;
  c.t_end = t_end;
  c.basis_dim = 0;
  return c;
}

SymplecticVectorField cos_x(int n) {
  SpectrumField f{Grid2D(n)};
  f.set_mode(1, 0, {0.5, 0.0});
  return SymplecticVectorField(f);
}

}  // namespace

TEST(JacobiRhs, VelocityEquationIsLinearizedEulerArnold) {
  // rhs_direct is quadratic, so the central difference is exact up to rounding.
  const SymplecticVectorField v = generic_field(32, 1);
  const SymplecticVectorField w = generic_field(32, 2);
  const JacobiRate r = jacobi_rhs(JacobiState::initial(w), v);
  const double eps = 1e-3;
  const SymplecticVectorField fd = (1.0 / (2 * eps)) * (rhs_direct(v + eps * w) - rhs_direct(v - eps * w));
  EXPECT_LT(h1_norm(r.zdot - fd), 1e-9 * h1_norm(fd));
  EXPECT_LT(h1_norm(r.ydot - w), 1e-15);
}

TEST(JacobiRhs, PositionEquationTransportsY) {
  const SymplecticVectorField v = generic_field(32, 3);
  const JacobiState s{generic_field(32, 4), generic_field(32, 5)};
  const JacobiRate r = jacobi_rhs(s, v);
  EXPECT_LT(h1_norm(r.ydot - (s.z + ad(v, s.y))), 1e-13 * h1_norm(r.ydot));
}

TEST(JacobiFlow, BackgroundMatchesGeodesicSolver) {
  const SymplecticVectorField v0 = generic_field(32, 6);
  const SolverConfig c = config(32, 0.01, 0.37);
  JacobiFlow flow(v0, {}, c);
  flow.advance_to(0.37);
  const Trajectory t = solve_geodesic(v0, c);
  EXPECT_DOUBLE_EQ(flow.time(), 0.37);
  EXPECT_LT(h1_norm(flow.background().v - t.final_state().v), 1e-14 * h1_norm(v0));
  EXPECT_THROW(flow.advance_to(0.1), ConfigError);
}

TEST(JacobiFlow, VariationAlongTheGeodesicIsTimeRescaling) {
  // exp(t (1 + eps) v0) = eta((1 + eps) t), so the Jacobi field with w0 = v0
  // is y(t) = t v(t); then ydot = z + ad_v y gives z = v + t vdot.
  const SymplecticVectorField v0 = generic_field(32, 7, false);
  JacobiFlow flow(v0, {v0}, config(32, 0.01, 1.0));
  flow.advance_to(0.8);
  const SymplecticVectorField expect = 0.8 * flow.background().v;
  const SymplecticVectorField z = flow.background().v + 0.8 * rhs_direct(flow.background().v);
  EXPECT_LT(h1_norm(flow.columns()[0].y - expect), 1e-6 * h1_norm(expect));
  EXPECT_LT(h1_norm(flow.columns()[0].z - z), 1e-6 * h1_norm(z));
}

TEST(JacobiFlow, HarmonicBackgroundGivesLinearGrowth) {
  // Constant background: ad_h y = -(h.grad) y, the z equation stays linear
  // in z with a constant-coefficient transport, and y(t) = t * shift.
  const Grid2D g(16);
  const SymplecticVectorField h(SpectrumField(g), {0.5, 0.0});
  const SymplecticVectorField w(SpectrumField(g), {0.0, 1.0});
  JacobiFlow flow(h, {w}, config(16, 0.05, 2.0));
  flow.advance_to(2.0);
  EXPECT_LT(h1_norm(flow.columns()[0].y - 2.0 * w), 1e-13);
}

TEST(PhiMatrix, SingularValuesInOrthonormalFrame) {
  const GalerkinBasis basis(Grid2D(16), 6);
  Eigen::MatrixXd m = Eigen::MatrixXd::Identity(6, 6);
  m(5, 5) = 1e-12;
  const PhiMatrix phi(m, 1.0, Frame::kBody, basis.gram());
  EXPECT_NEAR(phi.singular_values(0), 1.0, 1e-14);
  EXPECT_NEAR(phi.singular_values(5), 1e-12, 1e-20);
}

TEST(IndexCheck, SyntheticDiagonal) {
  const GalerkinBasis basis(Grid2D(16), 6);
  Eigen::MatrixXd m = Eigen::MatrixXd::Identity(6, 6);
  m(3, 3) = 1e-12;
  const IndexReport r = index_check(PhiMatrix(m, 1.0, Frame::kBody, basis.gram()), 1e-6);
  EXPECT_EQ(r.dim_ker, 1);
  EXPECT_EQ(r.dim_coker, 1);
  EXPECT_EQ(r.index(), 0);
  EXPECT_FALSE(r.ambiguous);
}

TEST(IndexCheck, RankDeficientNilpotent) {
  // A Jordan block has a one-dimensional kernel and cokernel.
  const GalerkinBasis basis(Grid2D(16), 3);
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(3, 3);
  m(0, 1) = 1.0;
  m(1, 2) = 1.0;
  const IndexReport r = index_check(PhiMatrix(m, 1.0, Frame::kBody, basis.gram()), 1e-6);
  EXPECT_EQ(r.dim_ker, 1);
  EXPECT_EQ(r.dim_coker, 1);
}

TEST(IndexCheck, FlagsThresholdInsideCluster) {
  const GalerkinBasis basis(Grid2D(16), 4);
  Eigen::MatrixXd m = Eigen::MatrixXd::Identity(4, 4);
  m(3, 3) = 1.5e-6;
  m(2, 2) = 0.8e-6;
  const IndexReport r = index_check(PhiMatrix(m, 1.0, Frame::kBody, basis.gram()), 1e-6);
  EXPECT_TRUE(r.ambiguous);
  EXPECT_FALSE(r.warning.empty());
}

TEST(OmegaGamma, AgreesWithLinearizedAndOmegaIsPositive) {
  SolverConfig c = config(16, 0.02, 0.4);
  c.sample_every = 1;
  const Trajectory traj = solve_geodesic(cos_x(16), c);
  ASSERT_FALSE(traj.failure);
  const GalerkinBasis basis(Grid2D(16), 8);
  const PhiMatrix lin = assemble_phi(traj, basis, 0.4, PhiMethod::kLinearized);
  const PhiMatrix og = assemble_phi(traj, basis, 0.4, PhiMethod::kOmegaGamma);
  EXPECT_LT((lin.matrix - og.matrix).norm(), 1e-3 * lin.matrix.norm());
  const auto series = omega_gamma_series(traj, basis, 0.4);
  ASSERT_EQ(series.size(), 21u);
  for (const auto& s : series) {
    if (s.t < 0.1) continue;
    const SpdReport spd = omega_spd(s.omega, basis.gram());
    EXPECT_GT(spd.min_eigenvalue, 0.1 * s.t);
    EXPECT_LT(spd.asymmetry, 1e-12);
  }
  // Gamma_t = O(t^2) near 0, Omega_t ~ t
  EXPECT_LT(series[1].gamma.norm(), 0.1 * series[1].omega.norm());
}

TEST(OmegaGamma, RequiresUniformSamplesWithFlow) {
  SolverConfig c = config(16, 0.02, 0.2);
  c.sample_every = 3;  // samples at 0, 0.06, 0.12, 0.18 and the endpoint 0.2
  const Trajectory uneven = solve_geodesic(cos_x(16), c);
  const GalerkinBasis basis(Grid2D(16), 4);
  EXPECT_THROW(omega_gamma_series(uneven, basis, 0.2), ConfigError);
  EXPECT_THROW(omega_gamma_series(uneven, basis, 0.1), ConfigError);
  c.sample_every = 1;
  c.track_flow = false;
  const Trajectory no_flow = solve_geodesic(cos_x(16), c);
  EXPECT_THROW(omega_gamma_series(no_flow, basis, 0.2), ConfigError);
}
