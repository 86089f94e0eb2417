#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "commands.hpp"
#include "run_config.hpp"
#include "sympgeo/error.hpp"

using namespace sympgeo::cli;

int main(int argc, char** argv) {
  CLI::App app{"Geodesics, Jacobi fields and conjugate points of the H1 symplectic Euler flow on the torus"};
  std::string command;
  std::string config_path;
  std::vector<std::string> sets;
  std::string out;
  app.add_option("command", command, "geodesic | jacobi-scan | ops-selftest | cpn-verify")->required();
  app.add_option("--config", config_path, "key = value config file");
  app.add_option("--set", sets, "override a config key (key=value), repeatable");
  app.add_option("--out", out, "output directory");
  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kConfig;
  }

  RunConfig cfg;
  try {
    const auto cmd = parse_command(command);
    if (!cmd) throw ParseError("unknown command '" + command + "'");
    Origins origins;
    if (!config_path.empty()) {
      std::ifstream in(config_path, std::ios::binary);
      if (!in) throw ParseError(config_path + ": cannot read config file");
      std::ostringstream text;
      text << in.rdbuf();
      cfg = parse_config(text.str(), config_path, *cmd, &origins);
    }
    cfg.command = *cmd;
    apply_overrides(cfg, sets, &origins);
    if (!out.empty()) {
      cfg.out = out;
      origins["out"] = "--out";
    }
    finalize(cfg, origins);
  } catch (const ParseError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kConfig;
  } catch (const sympgeo::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kConfig;
  }

  try {
    return run(cfg, std::cout);
  } catch (const sympgeo::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kConfig;
  } catch (const sympgeo::NumericalError& e) {
    std::cerr << "numerical failure at t = " << e.time() << ": " << e.what() << "\n";
    return kNumerical;
  } catch (const sympgeo::IoError& e) {
    std::cerr << "I/O error: " << e.what() << "\n";
    return kIo;
  }
}
