#pragma once

// Run configuration for the sympgeo tool: `key = value` lines, `#` comments,
// optional `[command]` sections whose keys apply only to that command.

#include <cstdint>
#include <map>
#include <stdexcept>
#include <optional>
#include <string>
#include <vector>

#include "sympgeo/geodesic.hpp"
#include "sympgeo/symplectic_fields.hpp"

namespace sympgeo::cli {

enum class Command { kGeodesic, kJacobiScan, kOpsSelftest, kCpnVerify };

const char* command_name(Command c);
std::optional<Command> parse_command(const std::string& name);

struct StreamMode {
  int k1 = 0;
  int k2 = 0;
  double re = 0.0;
  double im = 0.0;
  bool operator==(const StreamMode&) const = default;
};

struct TimeGrid {
  double start = 0.1;
  double step = 0.1;
  double stop = 5.0;
  bool operator==(const TimeGrid&) const = default;
};

struct RunConfig {
  Command command = Command::kGeodesic;
  int n = 64;
  double dt = 1e-3;
  double t_end = 1.0;
  Form form = Form::kDirect;
  std::vector<StreamMode> modes{{1, 0, 0.5, 0.0}};  ///< conjugate-completed after parsing
  Vec2 harmonic{0.0, 0.0};
  int random_band = 0;  ///< > 0 replaces modes by a seeded random field of this band
  int basis_dim = 24;
  TimeGrid t_grid;
  int sample_every = 0;
  int diag_every = 0;
  std::uint64_t seed = 1;
  int cpn_n = 2;
  double threshold = 1e-6;
  std::string out = "sympgeo_out";

  bool operator==(const RunConfig&) const = default;
};

/// Parse or validation failure, prefixed with "source:line: " when known.
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Where each key was last set ("file:line" or "--set").
using Origins = std::map<std::string, std::string>;

/// Applies one `key = value` assignment.
void assign(RunConfig& cfg, const std::string& key, const std::string& value);

/// Reads a config text. Keys outside any section apply to every command;
/// keys in `[name]` apply when name matches the command (given, or taken
/// from a top-level `command` key).
RunConfig parse_config(const std::string& text, const std::string& source,
                       std::optional<Command> command = std::nullopt, Origins* origins = nullptr);

/// Applies `key=value` overrides on top of cfg.
void apply_overrides(RunConfig& cfg, const std::vector<std::string>& sets, Origins* origins = nullptr);

/// Completes unpaired modes with their conjugates and checks every numeric
/// field; throws ParseError naming the offending key.
void finalize(RunConfig& cfg, const Origins& origins = {});

/// Text that parse_config turns back into an equal RunConfig.
std::string echo_config(const RunConfig& cfg);

SolverConfig solver_config(const RunConfig& cfg);
SymplecticVectorField initial_field(const RunConfig& cfg);

}  // namespace sympgeo::cli
