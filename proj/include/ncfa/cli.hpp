#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

namespace ncfa {

// Exit-code contract shared by every subcommand:
//   0  all verdicts passed
//   1  at least one verdict failed
//   2  usage, parse or configuration error
enum class Command { transform, verify, sweep, subgroups };
enum class Format { json, csv };

struct RunConfig {
  std::string group_spec;
  Command command = Command::verify;
  std::uint64_t seed = 0;
  int trials = 100;
  double tol = 1e-9;       // must lie in (0, 1e-3]
  Format format = Format::json;
  std::string in_path;
  std::string out_path;
  int max_order = 48;      // cap for subgroup enumeration
  int workers = 1;         // concurrency knob; never affects output bytes
};

void validate_config(const RunConfig& cfg);  // throws InvalidArgument

// Reports are pure functions of (config minus workers); instance seeds are
// derived per index, so the emitted bytes are identical for any worker count.
nlohmann::json verify_report(const RunConfig& cfg);
nlohmann::json sweep_report(const RunConfig& cfg);
nlohmann::json subgroups_report(const RunConfig& cfg);

int exit_code_of(const nlohmann::json& report);  // 0 or 1 from the summary

std::string report_to_csv(const nlohmann::json& report);  // RFC 4180, CRLF

// Full command-line front end; argv-style arguments without the program
// name. Writes results to `out`, diagnostics to `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace ncfa
