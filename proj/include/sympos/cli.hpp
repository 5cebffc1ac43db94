#pragma once

#include <cstdint>
#include <string>

#include "sympos/json_io.hpp"

namespace sympos {

struct CliOptions {
  double tol = 1e-9;
  std::uint64_t seed = 42;
  int truncation = 40;
  std::string format = "text";  // text | json
  std::string output;           // optional report file
  bool timings = false;         // real timing breaks byte-identical reports
};

// Exit codes: 0 completed (verdicts may be negative), 2 invalid input,
// 3 numerical failure.
inline constexpr int kExitOk = 0;
inline constexpr int kExitInvalid = 2;
inline constexpr int kExitNumerical = 3;

// One sub-instance: kind + payload (after sweep expansion).
Json run_element(const std::string& kind, const Json& payload, const CliOptions& opts);

// Full instance file: expands the optional "sweep" array of payload patches.
Json run_instance(const Json& instance, const CliOptions& opts);

std::string render_text(const Json& report);

int run_cli(int argc, const char* const* argv);

}  // namespace sympos
