#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "refgame/association.hpp"
#include "refgame/game.hpp"
#include "refgame/rsa.hpp"

namespace refgame {

struct ResponseProbabilities {
  std::vector<PredictionDistribution> per_model;
  // P(y | c) under the uniform prior over models.
  std::vector<double> mixture;
};

ResponseProbabilities response_probability(const AssociationSet& associations,
                                           const Configuration& config,
                                           std::span<const ModelSpec> models);

// Mutual information I(M; Y) in bits between a uniformly drawn model and its
// response, given each model's response distribution over a shared support.
double model_response_information(std::span<const std::vector<double>> per_model);

// U(c) = sum_y P(y|c) * KL(P(m|y,c) || P(m)) in bits, i.e. I(M; Y | c).
// Zero for fewer than two models.
double configuration_utility(const AssociationSet& associations, const Configuration& config,
                             std::span<const ModelSpec> models);

// Geometric mean of the utilities of all speaker and listener configurations
// of the scenario; zero if any of them is zero.
double scenario_joint_utility(const AssociationSet& associations, const Scenario& scenario,
                              std::span<const ModelSpec> speaker_models,
                              std::span<const ModelSpec> listener_models);

enum class SearchMode { separate_speaker, separate_listener, joint };

std::string_view to_string(SearchMode mode);
SearchMode parse_search_mode(std::string_view text);

inline constexpr std::uint64_t kDefaultSeed = 20180731;

struct SearchSettings {
  std::size_t iterations = 100000;
  std::size_t nouns = 3;
  std::size_t adjectives = 4;
  SearchMode mode = SearchMode::separate_listener;
  std::uint64_t seed = kDefaultSeed;
  std::size_t top_k = 500;
  unsigned threads = 0;  // 0: hardware concurrency
};

struct DesignCandidate {
  Scenario scenario;
  // Absent in joint mode, where whole scenarios are scored.
  std::optional<Configuration> configuration;
  double utility = 0.0;

  bool operator==(const DesignCandidate&) const = default;
};

// Uniform Monte Carlo search over scenarios (and indices in separate modes).
// Each model's role is overridden to match the configuration being scored, so
// joint mode applies the same model list to both sides. Duplicates are
// scored once; the result keeps the top_k by (utility desc, first draw asc)
// and depends only on the seed, never on the thread count.
std::vector<DesignCandidate> monte_carlo_search(const AssociationSet& associations,
                                                std::span<const ModelSpec> models,
                                                const SearchSettings& settings);

// `count` distinct scenarios drawn uniformly with the same sampler the search
// uses. Throws DomainError if the shape does not fit the lexicon or fewer than
// `count` distinct scenarios exist.
std::vector<Scenario> sample_scenarios(const Lexicon& lexicon, std::size_t nouns,
                                       std::size_t adjectives, std::size_t count,
                                       std::uint64_t seed);

struct FilterSettings {
  std::size_t min_word_difference = 2;
  std::size_t max_word_occurrence = 20;
};

// Number of words in either candidate's noun+adjective set that the other
// lacks, taking the larger side.
std::size_t word_difference(const Scenario& a, const Scenario& b);

// Greedy scan in input order (expected: utility descending). A candidate is
// kept if it differs from every kept candidate in at least
// min_word_difference words and keeping it leaves every word's occurrence
// count at or below max_word_occurrence.
std::vector<DesignCandidate> filter_candidates(std::span<const DesignCandidate> candidates,
                                               const FilterSettings& settings = {});

// Indices of entries whose mean confidence (1..5) is strictly above the mean
// of all entries. Throws DomainError on empty input or out-of-range ratings.
std::vector<std::size_t> confidence_filter(std::span<const double> mean_confidences);

}  // namespace refgame
