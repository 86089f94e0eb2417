#include "commands.hpp"

#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "csv.hpp"
#include "sympgeo/conjugate.hpp"
#include "sympgeo/cpn.hpp"
#include "sympgeo/error.hpp"
#include "sympgeo/lie_ops.hpp"
#include "sympgeo/random_fields.hpp"

#ifndef SYMPGEO_VERSION
#define SYMPGEO_VERSION "unknown"
#endif

namespace sympgeo::cli {
namespace {

namespace fs = std::filesystem;

std::string path_in(const RunConfig& cfg, const std::string& name) { return (fs::path(cfg.out) / name).string(); }

std::string int_cell(long long x) { return std::to_string(x); }

struct Check {
  std::string name;
  double value;
  double threshold;
  bool lower_bound = false;  ///< pass when value > threshold instead of below it

  bool pass() const { return lower_bound ? value > threshold : value < threshold; }
  std::string pass_cell() const { return pass() ? "true" : "false"; }
};

bool all_pass(const std::vector<Check>& checks) {
  for (const auto& c : checks) {
    if (!c.pass()) return false;
  }
  return true;
}

int run_geodesic(const RunConfig& cfg, std::ostream& log) {
  const Trajectory traj = solve_geodesic(initial_field(cfg), solver_config(cfg));
  CsvWriter csv(path_in(cfg, "diagnostics.csv"), {"t", "energy", "casimir_residual", "adstar_residual", "detjac_dev", "vmax"});
  for (const auto& d : traj.diagnostics) {
    csv.row({format_double(d.t), format_double(d.energy), format_double(d.casimir_residual),
             format_double(d.adstar_residual), format_double(d.detjac_dev), format_double(d.vmax)});
  }
  csv.close();
  log << "energy drift " << format_double(traj.max_energy_drift()) << ", harmonic drift "
      << format_double(traj.max_harmonic_drift()) << "\n";
  if (traj.failure) {
    log << "numerical failure at t = " << format_double(traj.failure_time) << ": " << *traj.failure << "\n";
    return kNumerical;
  }
  return kOk;
}

int run_jacobi_scan(const RunConfig& cfg, std::ostream& log) {
  const SymplecticVectorField v0 = initial_field(cfg);
  const GalerkinBasis basis(v0.grid(), cfg.basis_dim);
  const std::vector<double> grid = make_t_grid(cfg.t_grid.start, cfg.t_grid.step, cfg.t_grid.stop);
  ScanOptions opts;
  opts.rel_threshold = cfg.threshold;
  const ConjugateScan scan = detect_conjugate(v0, basis, solver_config(cfg), grid, opts);

  CsvWriter rows(path_in(cfg, "scan.csv"), {"t", "sigma_min", "det_sign", "dim_ker", "dim_coker"});
  for (const auto& r : scan.rows) {
    rows.row({format_double(r.t), format_double(r.sigma_min), int_cell(r.det_sign), int_cell(r.dim_ker),
              int_cell(r.dim_coker)});
  }
  rows.close();
  CsvWriter points(path_in(cfg, "conjugate_times.csv"), {"t", "multiplicity", "sigma_min", "dim_ker", "dim_coker"});
  bool index_zero = true;
  for (const auto& p : scan.points) {
    points.row({format_double(p.t), int_cell(p.multiplicity), format_double(p.sigma_min), int_cell(p.dim_ker),
                int_cell(p.dim_coker)});
    index_zero = index_zero && p.dim_ker == p.dim_coker;
  }
  points.close();
  for (const auto& w : scan.warnings) log << "warning: " << w << "\n";
  log << scan.points.size() << " conjugate time(s) in (0, " << format_double(grid.back()) << "]\n";
  if (!index_zero) {
    log << "dim_ker != dim_coker at a reported conjugate time\n";
    return kAssertion;
  }
  return kOk;
}

double rel(double err, double scale) { return scale > 0.0 ? err / scale : err; }

std::vector<Check> selftest_checks(const RunConfig& cfg) {
  const Grid2D grid(cfg.n);
  const int band = std::max(2, grid.dealias_cutoff() / 2);
  std::mt19937_64 rng(cfg.seed);
  constexpr int kTrials = 5;
  double transform_err = 0.0;
  double projection_err = 0.0;
  double bracket_err = 0.0;
  double antisym_err = 0.0;
  double adjoint_err = 0.0;
  double rhs_err = 0.0;
  double casimir_err = 0.0;
  double symmetry_err = 0.0;
  for (int trial = 0; trial < kTrials; ++trial) {
    const SymplecticVectorField u = random_symplectic(grid, band, rng);
    const SymplecticVectorField v = random_symplectic(grid, band, rng);
    const SymplecticVectorField w = random_symplectic(grid, band, rng);

    const SpectrumField back = transform(transform(u.stream()));
    double diff = 0.0;
    for (std::size_t i = 0; i < back.data().size(); ++i) {
      diff = std::max(diff, std::abs(back.data()[i] - u.stream().data()[i]));
    }
    transform_err = std::max(transform_err, diff);

    projection_err = std::max(projection_err, rel(h1_norm(project_P(to_velocity(u)) - u), h1_norm(u)));

    const SymplecticVectorField a = ad(v, u);
    const double scale = h1_norm(a);
    const SymplecticVectorField b = project_P(lie_bracket(to_velocity(v), to_velocity(u)));
    bracket_err = std::max(bracket_err, rel(h1_norm(a + b), scale));
    antisym_err = std::max(antisym_err, rel(h1_norm(a + ad(u, v)), scale));

    const double lhs = h1_inner(ad_star(v, w), u);
    const double rhs = h1_inner(w, ad(v, u));
    adjoint_err = std::max(adjoint_err, rel(std::abs(lhs - rhs), h1_norm(w) * h1_norm(ad(v, u))));

    const SymplecticVectorField r = rhs_direct(v);
    rhs_err = std::max(rhs_err, rel(h1_norm(r + ad_star(v, v)), h1_norm(ad_star(v, v))));

    const SymplecticVectorField c = from_casimir(casimir_q(u), u.harmonic());
    casimir_err = std::max(casimir_err, rel(h1_norm(c - u), h1_norm(u)));

    symmetry_err = std::max(symmetry_err, rel(std::abs(h1_inner(u, v) - h1_inner(v, u)), h1_norm(u) * h1_norm(v)));
  }

  // Group coadjoint against the group adjoint along a short geodesic.
  SymplecticVectorField v0 = random_symplectic(grid, 2, rng, false);
  v0 *= 1.0 / max_speed(v0);
  SolverConfig sc;
  sc.n = cfg.n;
  sc.dt = 0.01;
  sc.t_end = 0.1;
  sc.basis_dim = 0;
  const Trajectory traj = solve_geodesic(v0, sc);
  if (traj.failure) throw NumericalError(*traj.failure, traj.failure_time);
  const FlowMapSampler eta(traj.final_state().eta);
  const SymplecticVectorField w = random_symplectic(grid, 2, rng);
  const SymplecticVectorField x = random_symplectic(grid, 2, rng);
  const double co = h1_inner(coAd_group(eta, w, Direction::kForward), x);
  const SymplecticVectorField adx = project_P(Ad_group(eta, x, Direction::kForward));
  const double coadjoint_err = rel(std::abs(co - h1_inner(w, adx)), h1_norm(w) * h1_norm(adx));

  return {
      {"transform_roundtrip", transform_err, 1e-13},
      {"projection_idempotent", projection_err, 1e-13},
      {"ad_equals_minus_bracket", bracket_err, 1e-12},
      {"ad_antisymmetry", antisym_err, 1e-13},
      {"adstar_adjointness", adjoint_err, 1e-12},
      {"rhs_direct_equals_minus_adstar", rhs_err, 1e-10},
      {"casimir_roundtrip", casimir_err, 1e-13},
      {"h1_symmetry", symmetry_err, 1e-14},
      {"group_coadjoint_adjointness", coadjoint_err, 1e-10},
      {"killing_stationarity", killing_stationarity_torus({1.0, 0.0}, cfg.n), 1e-13},
  };
}

int run_selftest(const RunConfig& cfg, std::ostream& log) {
  const std::vector<Check> checks = selftest_checks(cfg);
  CsvWriter csv(path_in(cfg, "selftest.csv"), {"check", "value", "threshold", "pass"});
  for (const auto& c : checks) {
    csv.row({c.name, format_double(c.value), format_double(c.threshold), c.pass_cell()});
    if (!c.pass()) log << "FAILED " << c.name << ": " << format_double(c.value) << "\n";
  }
  csv.close();
  return all_pass(checks) ? kOk : kAssertion;
}

std::vector<Check> cpn_checks(int n, std::uint64_t seed) {
  const UnitaryPath path = build_path(n);
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);
  const double two_pi = 2.0 * std::numbers::pi;
  const CMatrix identity = CMatrix::Identity(path.dim(), path.dim());

  double unitary = 0.0;
  double gamma0 = 0.0;
  double skew = 0.0;
  for (int i = 0; i < 100; ++i) {
    const double s = angle(rng);
    const double t = angle(rng);
    unitary = std::max({unitary, unitarity_defect(path.A(s)), unitarity_defect(path.B(t)),
                        unitarity_defect(path.gamma(s, t))});
    gamma0 = std::max(gamma0, projective_distance(path.gamma(s, 0.0), identity));
    skew = std::max(skew, skew_hermitian_defect(path.gamma_t(s, t) * path.gamma(s, t).adjoint()));
  }

  double fd = 0.0;
  constexpr double kStep = 1e-5;
  for (int i = 0; i <= 64; ++i) {
    const double t = two_pi * i / 64.0;
    const CMatrix central = (path.gamma(kStep, t) - path.gamma(-kStep, t)) / (2.0 * kStep);
    fd = std::max(fd, (central - variation_field(path, t)).cwiseAbs().maxCoeff());
  }

  // Grid points of [0, 2 pi] at spacing 1e-3 where J vanishes, endpoints excluded.
  int interior_zeros = 0;
  for (int k = 1; k * 1e-3 < two_pi - 1e-3; ++k) {
    if (variation_field(path, k * 1e-3).norm() < 1e-12) ++interior_zeros;
  }

  std::vector<Check> checks{
      {"unitarity", unitary, 1e-13},
      {"gamma_s0_identity", gamma0, 1e-13},
      {"velocity_skew_hermitian", skew, 1e-12},
      {"J_0_norm", variation_field(path, 0.0).norm(), 1e-12},
      {"J_2pi_norm", variation_field(path, two_pi).norm(), 1e-12},
      {"J_pi_norm", variation_field(path, std::numbers::pi).norm(), 0.1, true},
      {"J_fd_error", fd, 1e-9},
      {"J_interior_zeros", static_cast<double>(interior_zeros), 0.5},
  };
  if (n == 2 || n == 4) {
    const int blocks = (n + 2) / 2;
    double worst = 0.0;
    for (int i = 0; i <= 64; ++i) {
      const double t = two_pi * i / 64.0;
      worst = std::max(worst, magnitude_multiset_distance(variation_field(path, t), printed_variation_form(blocks, t)));
    }
    checks.push_back({"printed_form_magnitudes", worst, 1e-12});
  }
  return checks;
}

int run_cpn(const RunConfig& cfg, std::ostream& log) {
  std::vector<Check> checks = cpn_checks(cfg.cpn_n, cfg.seed);
  checks.push_back({"killing_stationarity_torus", killing_stationarity_torus({1.0, 0.0}), 1e-13});
  const TranslationCheck tr = killing_translation_check({0.3, -0.7}, 5.0);
  checks.push_back({"killing_velocity_change", tr.velocity_change, 1e-10});
  checks.push_back({"killing_translation_error", tr.translation_error, 1e-10});

  CsvWriter csv(path_in(cfg, "cpn_report.csv"), {"check", "n", "value", "threshold", "pass"});
  for (const auto& c : checks) {
    csv.row({c.name, int_cell(cfg.cpn_n), format_double(c.value), format_double(c.threshold), c.pass_cell()});
    if (!c.pass()) log << "FAILED " << c.name << ": " << format_double(c.value) << "\n";
  }
  csv.close();
  return all_pass(checks) ? kOk : kAssertion;
}

}  // namespace

int run(const RunConfig& cfg, std::ostream& log) {
  std::error_code ec;
  fs::create_directories(cfg.out, ec);
  if (ec) throw IoError("cannot create output directory " + cfg.out + ": " + ec.message());

  const auto start = std::chrono::steady_clock::now();
  int status = kOk;
  switch (cfg.command) {
    case Command::kGeodesic:
      status = run_geodesic(cfg, log);
      break;
    case Command::kJacobiScan:
      status = run_jacobi_scan(cfg, log);
      break;
    case Command::kOpsSelftest:
      status = run_selftest(cfg, log);
      break;
    case Command::kCpnVerify:
      status = run_cpn(cfg, log);
      break;
  }
  const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

  std::ofstream manifest(path_in(cfg, "run_manifest.txt"), std::ios::binary | std::ios::trunc);
  manifest << "# sympgeo " << SYMPGEO_VERSION << "\n"
           << "# wall_time_s = " << format_double(wall) << "\n"
           << "# exit_status = " << status << "\n"
           << echo_config(cfg);
  manifest.flush();
  if (!manifest) throw IoError("cannot write " + path_in(cfg, "run_manifest.txt"));
  return status;
}

}  // namespace sympgeo::cli
