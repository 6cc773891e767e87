#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "spinor_forge/config.hpp"
#include "spinor_forge/report.hpp"
#include "spinor_forge/spacetimes.hpp"

namespace {

constexpr int kUsageError = 64;

void add_common(CLI::App* cmd, spinor_forge::RunConfig& cfg) {
  cmd->add_option("--seed", cfg.seed, "Random seed")->capture_default_str();
  cmd->add_option("--tol-alg", cfg.tol.alg, "Tolerance for pointwise algebra")->capture_default_str();
  cmd->add_option("--tol-geo", cfg.tol.geo, "Tolerance for finite-difference geometry")->capture_default_str();
  cmd->add_option("--out", cfg.out, "Write the report here instead of stdout");
  cmd->add_option("--format", cfg.format, "Output format")
      ->check(CLI::IsMember({"json", "text"}))
      ->capture_default_str();
}

int emit(const spinor_forge::RunConfig& cfg, const spinor_forge::CommandResult& result) {
  const std::string body = cfg.format == "text" ? spinor_forge::render_text(result.document)
                                                : spinor_forge::dump_json(result.document);
  if (cfg.out.empty()) {
    std::cout << body;
  } else {
    std::ofstream file(cfg.out, std::ios::binary);
    if (!file) {
      std::cerr << "error: cannot write '" << cfg.out << "'\n";
      return 1;
    }
    file << body;
  }
  return result.exit_code;
}

}  // namespace

int main(int argc, char** argv) {
  spinor_forge::RunConfig cfg;
  CLI::App app{"Algebraic spinor and spacetime frame verification"};
  app.set_version_flag("--version", spinor_forge::tool_version());
  app.require_subcommand(1);

  CLI::App* selftest = app.add_subcommand("selftest", "Property suites over algebras, ideals and matrices");
  add_common(selftest, cfg);
  selftest->add_flag("--inject-fault", cfg.inject_fault)->group("");

  CLI::App* report = app.add_subcommand("report", "Identity checks and frame classification for one spacetime");
  add_common(report, cfg);
  report->add_option("--spacetime", cfg.spacetime, "minkowski | schwarzschild | eds")->capture_default_str();
  report->add_option("--config", cfg.config_path, "Custom spacetime config file");
  report->add_option("--tetrad", cfg.tetrad, "Tetrad name, or 'default'")->capture_default_str();
  report->add_option("--mass", cfg.mass, "Schwarzschild mass")->capture_default_str();
  report->add_option("--points", cfg.points, "Number of sample points")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kUsageError;
  }

  try {
    if (selftest->parsed()) {
      cfg.command = "selftest";
      return emit(cfg, spinor_forge::cmd_algebra_selftest(cfg));
    }
    cfg.command = "report";
    return emit(cfg, spinor_forge::cmd_report(cfg));
  } catch (const spinor_forge::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kUsageError;
  } catch (const spinor_forge::UnknownNameError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsageError;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsageError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
