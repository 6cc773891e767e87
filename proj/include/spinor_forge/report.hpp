#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"
#include "spinor_forge/constraints.hpp"

namespace spinor_forge {

inline constexpr int kSchemaVersion = 1;
std::string tool_version();

struct RunConfig {
  std::string command;
  std::string spacetime = "minkowski";
  std::string config_path;
  std::string tetrad = "default";
  double mass = 1.0;
  int points = 64;
  std::uint64_t seed = 1;
  Tolerances tol;
  std::string out;
  std::string format = "json";
  /// Negative control: corrupts one product-table entry during the run.
  bool inject_fault = false;
};

/// Throws std::invalid_argument on out-of-range settings.
void validate(const RunConfig& cfg);

/// Conventions frozen by computation: quaternion orientation, rep(e),
/// F normalization, raise/lower sign, spinor column choice.
nlohmann::json conventions_block();

struct SuiteResult {
  std::string name;
  double max_residual = 0.0;
  double threshold = 0.0;
  Status status = Status::Pass;
};

/// Property suites over the algebras, isomorphisms, ideals and matrix
/// representation, with random inputs drawn from `seed`.
std::vector<SuiteResult> algebra_suites(std::uint64_t seed, int samples);

struct CommandResult {
  nlohmann::json document;
  int exit_code = 0;
};

CommandResult cmd_algebra_selftest(const RunConfig& cfg);
CommandResult cmd_report(const RunConfig& cfg);

/// Sorted keys, shortest round-trip floats, two-space indent, trailing newline.
std::string dump_json(const nlohmann::json& doc);
std::string render_text(const nlohmann::json& doc);

/// 0 all pass, 1 any failure, 2 inconclusive without failure.
int exit_code_for(const std::string& verdict);

}  // namespace spinor_forge
