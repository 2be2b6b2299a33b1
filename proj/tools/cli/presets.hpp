#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "refgame/oed.hpp"

namespace refgame::cli {

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Scenario shape, search mode and model set of one experiment.
struct Preset {
  std::string name;
  std::size_t nouns = 3;
  std::size_t adjectives = 3;
  std::optional<SearchMode> mode;  // absent: heuristic designs, no OED
  std::vector<std::string> models;
  std::size_t iterations = 100000;
  std::size_t top_k = 500;
  FilterSettings filter;
};

const std::vector<Preset>& presets();
// Throws UsageError for an unknown name.
const Preset& find_preset(std::string_view name);

}  // namespace refgame::cli
