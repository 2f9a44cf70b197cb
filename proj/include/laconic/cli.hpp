#pragma once

#include <iosfwd>
#include <string>

namespace laconic::cli {

inline constexpr const char* kVersion = "0.1.0";

// Exit codes shared by every subcommand.
inline constexpr int kExitOk = 0;            // success / verified
inline constexpr int kExitVerifyFailed = 1;  // a checked property failed
inline constexpr int kExitUsage = 2;         // bad flags, ranges, or input
inline constexpr int kExitResourceCap = 3;   // an explicit cap was hit

// One completed invocation. The payload is the command's own JSON object;
// parameters echo the effective flag values. Records with equal parameters
// produce byte-identical payloads — timing_seconds is measured wall time
// and is excluded from that contract.
struct RunRecord {
  std::string command;
  std::string parameters_json;  // JSON object
  std::string payload_json;     // JSON object
  double timing_seconds = 0.0;
  std::string version = kVersion;
  int worker_count = 1;

  // Single-line JSON record: {command, parameters, payload, timing_seconds,
  // version, worker_count}.
  std::string to_json_line() const;

  // key,value rows with dotted paths (arrays indexed numerically); cells
  // are quoted when they contain commas, quotes, or newlines.
  std::string to_csv() const;
};

// Full argv-level entry point; parses flags, dispatches, writes the record
// to `out` and diagnostics to `err`, and returns the process exit code.
int run(int argc, const char* const* argv, std::ostream& out,
        std::ostream& err);

}  // namespace laconic::cli
