#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "json.hpp"

namespace frobtoric {

using Json = nlohmann::ordered_json;

enum ExitStatus : int { kExitPass = 0, kExitFail = 1, kExitInput = 2, kExitCapacity = 3 };

struct SessionConfig {
  std::uint32_t prime = 2;
  int box_margin = -1;  // -1: rank + 1
  std::uint64_t seed = 0x5eed;
  std::string format = "json";
  std::size_t max_matrix = 4096;
  std::uint64_t max_grades = 2000000;

  // Throws InputError.
  void validate() const;
  Json to_json() const;
};

struct CommandArgs {
  std::string fan;
  std::string divisor;
  std::string cone;
  int n = 0;
  int form = -1;  // -1: every form degree
  std::size_t samples = 100;
};

struct CommandOutcome {
  int status = kExitPass;
  Json report;
};

const std::vector<std::string>& subcommand_names();

// Never throws for library errors: they become exit statuses 1-3 with an
// error object in the report.
CommandOutcome run_subcommand(const std::string& name, const CommandArgs& args, const SessionConfig& config);

// JSON (two-space indent) or a flat "path: value" listing.
std::string render_report(const Json& report, const std::string& format);

// Full command line front end; returns the process exit status.
int run_cli(const std::vector<std::string>& argv, std::ostream& out, std::ostream& err);

}  // namespace frobtoric
