#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace maxent::cli {

inline constexpr const char* kToolName = "maxent_lab";
inline constexpr const char* kToolVersion = "0.1.0";

inline constexpr int kExitOk = 0;
inline constexpr int kExitInvalidConfig = 2;
inline constexpr int kExitResourceRefusal = 3;
inline constexpr int kExitIoError = 4;

/// Largest N the sampling commands accept.
inline constexpr int kMaxSampleQubits = 24;

/// Fully resolved run configuration. Every output embeds the fields that
/// determine its data rows as JSON, and feeding that back via --config
/// reproduces them. Empty strings and empty optionals mean "unset".
struct RunConfig {
  std::string command;
  std::optional<int> n;
  std::string na;         // "3", "1..11", "1,2,5" or "all"
  std::string dist;       // gaussian:qbar,dq | micro:q0 | flat | omega | cat:M,L | table:path
  std::optional<long long> samples;
  std::optional<std::uint64_t> seed;
  std::string format;     // csv | json
  std::string mode;       // haar | haar-full | brickwork:steps
  std::string fractions;  // comma list of n_A values or "default"
  std::string delta;      // lo:hi:count or comma list
  std::string kappa;      // lo:hi:count or comma list
  std::optional<int> r;
  unsigned threads = 0;   // execution only, not echoed
  std::string out;        // empty = stdout
};

/// Parses argv-style arguments (without the program name), runs the
/// command, writes data to --out or `out`, diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace maxent::cli
