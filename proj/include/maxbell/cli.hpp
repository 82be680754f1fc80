#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>

namespace maxbell {

enum class Command { bellman, verify, sweep, extremal, stability, selftest };
enum class Format { json, csv };

struct RunConfig {
  Command command = Command::selftest;
  std::optional<double> p, q, beta, f, F;
  std::optional<int> arity, depth;
  std::string input;   // StepFunction JSON; empty means random
  std::string output;  // empty means stdout
  std::optional<Format> format;
  std::string kind = "alpha";              // sweep: alpha or beta
  std::string layout = "interleaved";      // extremal/stability: chain or interleaved
  std::uint64_t seed = 42;
  std::optional<std::size_t> samples;
};

/// Exit status: 0 success, 1 invariant violation, 2 invalid configuration.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

/// Parses flags (and an optional --config file) and calls run().
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace maxbell
