#pragma once

#include <compare>
#include <cstddef>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

namespace refgame {

class Lexicon;

enum class Role { speaker, listener };

std::string_view to_string(Role role);
Role parse_role(std::string_view text);

// Unordered pair of scenario noun positions, stored with first < second.
struct NounPair {
  std::size_t first = 0;
  std::size_t second = 0;

  auto operator<=>(const NounPair&) const = default;
};

// A set of k nouns and m adjectives (lexicon indices) shown to both players.
struct Scenario {
  std::vector<std::size_t> nouns;
  std::vector<std::size_t> adjectives;

  std::size_t pair_count() const { return nouns.size() * (nouns.size() - 1) / 2; }

  // Throws DomainError unless k >= 2, m >= 1 and indices are distinct.
  void validate() const;
  // validate() plus range checks against the lexicon.
  void validate(const Lexicon& lexicon) const;

  auto operator<=>(const Scenario&) const = default;
};

// All C(k, 2) pairs, ordered by (smaller position, larger position).
std::vector<NounPair> enumerate_pairs(std::size_t noun_count);

// Position of `pair` within enumerate_pairs(noun_count).
std::size_t pair_ordinal(NounPair pair, std::size_t noun_count);

// A scenario plus an index: the target pair for a speaker, the clue for a
// listener.
class Configuration {
 public:
  static Configuration speaker(Scenario scenario, NounPair target);
  static Configuration listener(Scenario scenario, std::size_t clue);

  const Scenario& scenario() const { return scenario_; }
  Role role() const;
  // Only valid for the matching role; throws std::logic_error otherwise.
  NounPair target() const;
  std::size_t clue() const;

  bool operator==(const Configuration&) const = default;

 private:
  Configuration(Scenario scenario, std::variant<NounPair, std::size_t> index)
      : scenario_(std::move(scenario)), index_(index) {}

  Scenario scenario_;
  std::variant<NounPair, std::size_t> index_;
};

std::vector<Configuration> speaker_configurations(const Scenario& scenario);
std::vector<Configuration> listener_configurations(const Scenario& scenario);

// A possible response: a noun pair (listener answers) or a scenario adjective
// position (speaker answers).
using Answer = std::variant<NounPair, std::size_t>;

// Answer set of a configuration in canonical order.
std::vector<Answer> answer_support(const Configuration& configuration);

}  // namespace refgame
