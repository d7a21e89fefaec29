#pragma once

#include <map>
#include <string>

#include "maim/sim.hpp"

namespace maim {

using KeyValues = std::map<std::string, std::string>;

// Flat key=value text: one assignment per line, '#' starts a comment,
// whitespace around keys and values is ignored. Duplicate keys are rejected.
KeyValues parse_config_file(const std::string& path);

// "key=value" command-line override; inserts or replaces.
void apply_override(KeyValues& kv, const std::string& assignment);

// A parsed experiment description: the simulation setup plus orchestration
// switches consumed by the command-line driver.
struct RunSpec {
  SimConfig sim;
  std::vector<Scheme> scheme_list;  // sweep subcommand; defaults to {sim.scheme}
  bool include_bound = false;
  bool include_baseline = false;
};

// Builds and validates a RunSpec. Unknown keys and unparseable values are
// configuration errors.
RunSpec make_run_spec(const KeyValues& kv);

}  // namespace maim
