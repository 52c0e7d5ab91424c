#pragma once

#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "nvol/optimizer.hpp"

namespace nvol {

// One reproduced numeric statement. Exact claims pass only on exact
// equality; optimizer claims pass when |delta| <= tolerance.
struct Claim {
  std::string id;  // stable, e.g. "ade.dk-volume"
  std::string section;
  std::string location;
  std::string expected;
  std::string computed;
  double delta = 0.0;
  double tolerance = 0.0;
  bool exact = true;
  bool pass = false;
};

// Section names in run order.
std::vector<std::string> reproduce_sections();

// Every claim, or the claims of one section. Unknown sections throw
// kInvalidArgument. "example-5.1" is accepted as an alias of "ade-examples".
std::vector<Claim> reproduce(const std::optional<std::string>& section, const OptimizerOptions& opts = {});

nlohmann::json to_json(const Claim& claim);

}  // namespace nvol
