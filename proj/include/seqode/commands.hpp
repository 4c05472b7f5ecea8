#pragma once

// Command-line front end. Lives in the library so tests can drive it
// in-process; tools/seqode is a thin wrapper around run_cli().

#include <cstdint>
#include <iosfwd>
#include <string>

#include "seqode/json_io.hpp"

namespace seqode {

enum ExitCode : int { exit_pass = 0, exit_failure = 1, exit_usage = 2 };

struct RunConfig {
  Space space = Space::c0();
  /// Only "geometric" (a_k = 2^-k) is available.
  std::string anchor = "geometric";
  std::size_t depth = 40;
  double tol = 1e-9;
  Index dim = 48;
  std::uint64_t seed = 20090601;
  /// Empty means standard output.
  std::string out;

  /// Throws std::invalid_argument on the first invalid field.
  void validate() const;
  SeqVec anchor_vector() const;
  /// Everything except the output path, which does not affect results.
  Json to_json() const;
  /// Reads the keys space, anchor, depth, tol, dim, seed, out; unknown keys
  /// are an error.
  static RunConfig from_json(const nlohmann::json& j);
};

/// Parses argv and runs one subcommand: params, verify, eval, integrate or
/// probe. Results go to --out or `out`; diagnostics go to `err`.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace seqode
