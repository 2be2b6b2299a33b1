#include "cli/presets.hpp"

namespace refgame::cli {

const std::vector<Preset>& presets() {
  static const std::vector<std::string> four_metrics = {
      "bigram:literal", "embedding-cosine:literal", "graph-relatedness:literal",
      "topic-distance:literal"};
  static const std::vector<std::string> three_metrics = {
      "bigram:literal", "embedding-cosine:literal", "graph-relatedness:literal"};
  static const std::vector<Preset> all = {
      {"exp1", 5, 8, std::nullopt, four_metrics},
      {"exp2-speaker", 3, 4, SearchMode::separate_speaker, four_metrics},
      {"exp2-listener", 3, 4, SearchMode::separate_listener, four_metrics},
      {"exp3", 3, 3, SearchMode::joint, three_metrics},
      {"exp4", 3, 3, SearchMode::joint, {"bigram:literal", "bigram:pragmatic:1.0"}},
  };
  return all;
}

const Preset& find_preset(std::string_view name) {
  for (const auto& preset : presets()) {
    if (preset.name == name) return preset;
  }
  std::string known;
  for (const auto& preset : presets()) known += (known.empty() ? "" : ", ") + preset.name;
  throw UsageError("unknown preset '" + std::string(name) + "' (known: " + known + ")");
}

}  // namespace refgame::cli
