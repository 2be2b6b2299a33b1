#include "refgame/game.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

#include "refgame/error.hpp"
#include "refgame/lexicon.hpp"

namespace refgame {

std::string_view to_string(Role role) {
  return role == Role::speaker ? "speaker" : "listener";
}

Role parse_role(std::string_view text) {
  if (text == "speaker") return Role::speaker;
  if (text == "listener") return Role::listener;
  throw DomainError("unknown role '" + std::string(text) + "'");
}

namespace {

void require_distinct(std::vector<std::size_t> indices, const char* what) {
  std::sort(indices.begin(), indices.end());
  if (std::adjacent_find(indices.begin(), indices.end()) != indices.end()) {
    throw DomainError(std::string("scenario repeats a ") + what);
  }
}

}  // namespace

void Scenario::validate() const {
  if (nouns.size() < 2) throw DomainError("scenario needs at least two nouns");
  if (adjectives.empty()) throw DomainError("scenario needs at least one adjective");
  require_distinct(nouns, "noun");
  require_distinct(adjectives, "adjective");
}

void Scenario::validate(const Lexicon& lexicon) const {
  validate();
  for (auto n : nouns) {
    if (n >= lexicon.noun_count()) throw DomainError("noun index out of range");
  }
  for (auto a : adjectives) {
    if (a >= lexicon.adjective_count()) throw DomainError("adjective index out of range");
  }
}

std::vector<NounPair> enumerate_pairs(std::size_t noun_count) {
  std::vector<NounPair> pairs;
  if (noun_count >= 2) pairs.reserve(noun_count * (noun_count - 1) / 2);
  for (std::size_t i = 0; i < noun_count; ++i) {
    for (std::size_t j = i + 1; j < noun_count; ++j) pairs.push_back({i, j});
  }
  return pairs;
}

std::size_t pair_ordinal(NounPair pair, std::size_t noun_count) {
  // pairs starting below `first` come before: sum_{i<first} (k - 1 - i)
  const std::size_t i = pair.first;
  return i * (2 * noun_count - i - 1) / 2 + (pair.second - i - 1);
}

Configuration Configuration::speaker(Scenario scenario, NounPair target) {
  scenario.validate();
  if (target.first > target.second) std::swap(target.first, target.second);
  if (target.first == target.second || target.second >= scenario.nouns.size()) {
    throw DomainError("target pair is not a pair of scenario nouns");
  }
  return Configuration(std::move(scenario), target);
}

Configuration Configuration::listener(Scenario scenario, std::size_t clue) {
  scenario.validate();
  if (clue >= scenario.adjectives.size()) throw DomainError("clue is not a scenario adjective");
  return Configuration(std::move(scenario), clue);
}

Role Configuration::role() const {
  return std::holds_alternative<NounPair>(index_) ? Role::speaker : Role::listener;
}

NounPair Configuration::target() const {
  if (const auto* pair = std::get_if<NounPair>(&index_)) return *pair;
  throw std::logic_error("listener configuration has no target pair");
}

std::size_t Configuration::clue() const {
  if (const auto* clue = std::get_if<std::size_t>(&index_)) return *clue;
  throw std::logic_error("speaker configuration has no clue");
}

std::vector<Configuration> speaker_configurations(const Scenario& scenario) {
  std::vector<Configuration> out;
  for (const auto& pair : enumerate_pairs(scenario.nouns.size())) {
    out.push_back(Configuration::speaker(scenario, pair));
  }
  return out;
}

std::vector<Configuration> listener_configurations(const Scenario& scenario) {
  std::vector<Configuration> out;
  for (std::size_t j = 0; j < scenario.adjectives.size(); ++j) {
    out.push_back(Configuration::listener(scenario, j));
  }
  return out;
}

std::vector<Answer> answer_support(const Configuration& configuration) {
  std::vector<Answer> support;
  const auto& scenario = configuration.scenario();
  if (configuration.role() == Role::listener) {
    for (const auto& pair : enumerate_pairs(scenario.nouns.size())) support.emplace_back(pair);
  } else {
    for (std::size_t j = 0; j < scenario.adjectives.size(); ++j) support.emplace_back(j);
  }
  return support;
}

}  // namespace refgame
