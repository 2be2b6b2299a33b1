#include "refgame/oed.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <iostream>
#include <map>
#include <mutex>
#include <numeric>
#include <random>
#include <thread>
#include <unordered_map>

#include "refgame/error.hpp"

namespace refgame {

namespace {

void warn_single_model() {
  static std::once_flag once;
  std::call_once(once, [] {
    std::clog << "refgame: warning: utility with fewer than two models is always 0\n";
  });
}

std::vector<ModelSpec> with_role(std::span<const ModelSpec> models, Role role) {
  std::vector<ModelSpec> out(models.begin(), models.end());
  for (auto& model : out) model.role = role;
  return out;
}

}  // namespace

ResponseProbabilities response_probability(const AssociationSet& associations,
                                           const Configuration& config,
                                           std::span<const ModelSpec> models) {
  ResponseProbabilities out;
  out.per_model.reserve(models.size());
  for (const auto& model : models) out.per_model.push_back(predict(associations, config, model));
  if (out.per_model.empty()) return out;

  out.mixture.assign(out.per_model.front().probs.size(), 0.0);
  for (const auto& prediction : out.per_model) {
    for (std::size_t y = 0; y < out.mixture.size(); ++y) out.mixture[y] += prediction.probs[y];
  }
  const auto count = static_cast<double>(out.per_model.size());
  for (double& p : out.mixture) p /= count;
  return out;
}

double model_response_information(std::span<const std::vector<double>> per_model) {
  const std::size_t models = per_model.size();
  if (models < 2) return 0.0;
  const std::size_t outcomes = per_model.front().size();
  for (const auto& probs : per_model) {
    if (probs.size() != outcomes) throw DomainError("model predictions have different supports");
  }
  const auto m = static_cast<double>(models);
  double utility = 0.0;
  for (std::size_t y = 0; y < outcomes; ++y) {
    double p_y = 0.0;
    for (const auto& probs : per_model) p_y += probs[y];
    p_y /= m;
    if (p_y <= 0.0) continue;
    // u(y) = KL(P(m | y) || P(m)) with a uniform prior P(m) = 1 / |M|
    double gain = 0.0;
    for (const auto& probs : per_model) {
      const double posterior = probs[y] / (m * p_y);
      if (posterior > 0.0) gain += posterior * std::log2(posterior * m);
    }
    utility += p_y * gain;
  }
  return std::max(utility, 0.0);
}

double configuration_utility(const AssociationSet& associations, const Configuration& config,
                             std::span<const ModelSpec> models) {
  if (models.size() < 2) {
    warn_single_model();
    return 0.0;
  }
  const auto responses = response_probability(associations, config, models);
  std::vector<std::vector<double>> per_model;
  per_model.reserve(responses.per_model.size());
  for (const auto& prediction : responses.per_model) per_model.push_back(prediction.probs);
  return model_response_information(per_model);
}

double scenario_joint_utility(const AssociationSet& associations, const Scenario& scenario,
                              std::span<const ModelSpec> speaker_models,
                              std::span<const ModelSpec> listener_models) {
  if (speaker_models.empty() || listener_models.empty()) {
    throw DomainError("joint utility needs speaker and listener models");
  }
  double log_sum = 0.0;
  std::size_t count = 0;
  auto accumulate = [&](const std::vector<Configuration>& configs,
                        std::span<const ModelSpec> models) {
    for (const auto& config : configs) {
      const double utility = configuration_utility(associations, config, models);
      if (utility <= 0.0) return false;
      log_sum += std::log(utility);
      ++count;
    }
    return true;
  };
  if (!accumulate(speaker_configurations(scenario), speaker_models)) return 0.0;
  if (!accumulate(listener_configurations(scenario), listener_models)) return 0.0;
  return std::exp(log_sum / static_cast<double>(count));
}

std::string_view to_string(SearchMode mode) {
  switch (mode) {
    case SearchMode::separate_speaker:
      return "separate-speaker";
    case SearchMode::separate_listener:
      return "separate-listener";
    case SearchMode::joint:
      return "joint";
  }
  return "unknown";
}

SearchMode parse_search_mode(std::string_view text) {
  for (auto mode : {SearchMode::separate_speaker, SearchMode::separate_listener, SearchMode::joint}) {
    if (text == to_string(mode)) return mode;
  }
  throw DomainError("unknown search mode '" + std::string(text) + "'");
}

namespace {

// Uniform integer in [0, bound) by rejection; independent of the standard
// library's distribution implementation so results are portable.
std::uint64_t draw_below(std::mt19937_64& rng, std::uint64_t bound) {
  const std::uint64_t threshold = (0 - bound) % bound;
  std::uint64_t x = rng();
  while (x < threshold) x = rng();
  return x % bound;
}

// Uniform k-subset of `pool`, returned sorted. Partial Fisher-Yates keeps the
// pool a permutation, so it need not be reset between draws.
std::vector<std::size_t> draw_subset(std::mt19937_64& rng, std::vector<std::size_t>& pool,
                                     std::size_t k) {
  for (std::size_t i = 0; i < k; ++i) {
    const auto j = i + draw_below(rng, pool.size() - i);
    std::swap(pool[i], pool[j]);
  }
  std::vector<std::size_t> subset(pool.begin(), pool.begin() + static_cast<std::ptrdiff_t>(k));
  std::sort(subset.begin(), subset.end());
  return subset;
}

struct KeyHash {
  std::size_t operator()(const std::vector<std::size_t>& key) const {
    std::uint64_t h = 1469598103934665603ULL;
    for (auto v : key) {
      h ^= v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    }
    return static_cast<std::size_t>(h);
  }
};

std::vector<std::size_t> candidate_key(const Scenario& scenario, std::size_t index) {
  std::vector<std::size_t> key = scenario.nouns;
  key.push_back(static_cast<std::size_t>(-1));
  key.insert(key.end(), scenario.adjectives.begin(), scenario.adjectives.end());
  key.push_back(index);
  return key;
}

template <typename Fn>
void parallel_for(std::size_t count, unsigned threads, Fn fn) {
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, std::max<std::size_t>(count, 1)));
  if (threads <= 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  std::vector<std::thread> workers;
  workers.reserve(threads);
  for (unsigned t = 0; t < threads; ++t) {
    workers.emplace_back([&] {
      try {
        for (std::size_t i = next++; i < count; i = next++) fn(i);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        next = count;
      }
    });
  }
  for (auto& worker : workers) worker.join();
  if (failure) std::rethrow_exception(failure);
}

}  // namespace

std::vector<DesignCandidate> monte_carlo_search(const AssociationSet& associations,
                                                std::span<const ModelSpec> models,
                                                const SearchSettings& settings) {
  const auto& lexicon = associations.lexicon();
  if (!lexicon) throw DomainError("search needs at least one association table");
  if (settings.iterations == 0) throw DomainError("iterations must be positive");
  if (settings.nouns < 2) throw DomainError("scenarios need at least two nouns");
  if (settings.adjectives < 1) throw DomainError("scenarios need at least one adjective");
  if (settings.nouns > lexicon->noun_count()) {
    throw DomainError("cannot sample " + std::to_string(settings.nouns) + " nouns from " +
                      std::to_string(lexicon->noun_count()));
  }
  if (settings.adjectives > lexicon->adjective_count()) {
    throw DomainError("cannot sample " + std::to_string(settings.adjectives) +
                      " adjectives from " + std::to_string(lexicon->adjective_count()));
  }
  if (models.size() < 2) warn_single_model();

  const auto speaker_models = with_role(models, Role::speaker);
  const auto listener_models = with_role(models, Role::listener);
  const auto pairs = enumerate_pairs(settings.nouns);

  // Draw every design from the seed first; scoring order cannot affect them.
  std::mt19937_64 rng(settings.seed);
  std::vector<std::size_t> noun_pool(lexicon->noun_count());
  std::vector<std::size_t> adjective_pool(lexicon->adjective_count());
  std::iota(noun_pool.begin(), noun_pool.end(), std::size_t{0});
  std::iota(adjective_pool.begin(), adjective_pool.end(), std::size_t{0});

  std::vector<DesignCandidate> candidates;
  std::unordered_map<std::vector<std::size_t>, std::size_t, KeyHash> seen;
  for (std::size_t it = 0; it < settings.iterations; ++it) {
    Scenario scenario{draw_subset(rng, noun_pool, settings.nouns),
                      draw_subset(rng, adjective_pool, settings.adjectives)};
    std::size_t index = 0;
    if (settings.mode == SearchMode::separate_speaker) {
      index = draw_below(rng, pairs.size());
    } else if (settings.mode == SearchMode::separate_listener) {
      index = draw_below(rng, settings.adjectives);
    }
    if (!seen.emplace(candidate_key(scenario, index), candidates.size()).second) continue;

    DesignCandidate candidate;
    if (settings.mode == SearchMode::separate_speaker) {
      candidate.configuration = Configuration::speaker(scenario, pairs[index]);
    } else if (settings.mode == SearchMode::separate_listener) {
      candidate.configuration = Configuration::listener(scenario, index);
    }
    candidate.scenario = std::move(scenario);
    candidates.push_back(std::move(candidate));
  }

  parallel_for(candidates.size(), settings.threads, [&](std::size_t i) {
    auto& candidate = candidates[i];
    switch (settings.mode) {
      case SearchMode::separate_speaker:
        candidate.utility =
            configuration_utility(associations, *candidate.configuration, speaker_models);
        break;
      case SearchMode::separate_listener:
        candidate.utility =
            configuration_utility(associations, *candidate.configuration, listener_models);
        break;
      case SearchMode::joint:
        candidate.utility = scenario_joint_utility(associations, candidate.scenario,
                                                   speaker_models, listener_models);
        break;
    }
  });

  // candidates are in first-draw order, so a stable sort breaks utility ties by it
  std::stable_sort(candidates.begin(), candidates.end(),
                   [](const DesignCandidate& a, const DesignCandidate& b) {
                     return a.utility > b.utility;
                   });
  if (candidates.size() > settings.top_k) candidates.resize(settings.top_k);
  return candidates;
}

std::vector<Scenario> sample_scenarios(const Lexicon& lexicon, std::size_t nouns,
                                       std::size_t adjectives, std::size_t count,
                                       std::uint64_t seed) {
  if (nouns < 2 || adjectives < 1) throw DomainError("scenarios need two nouns and one adjective");
  if (nouns > lexicon.noun_count() || adjectives > lexicon.adjective_count()) {
    throw DomainError("scenario shape exceeds the lexicon");
  }
  auto choose = [](std::size_t n, std::size_t k) {
    double c = 1.0;
    for (std::size_t i = 0; i < k; ++i) c = c * static_cast<double>(n - i) / static_cast<double>(i + 1);
    return c;
  };
  const double available =
      choose(lexicon.noun_count(), nouns) * choose(lexicon.adjective_count(), adjectives);
  if (static_cast<double>(count) > available) {
    throw DomainError("only " + std::to_string(static_cast<std::uint64_t>(available)) +
                      " distinct scenarios exist");
  }

  std::mt19937_64 rng(seed);
  std::vector<std::size_t> noun_pool(lexicon.noun_count());
  std::vector<std::size_t> adjective_pool(lexicon.adjective_count());
  std::iota(noun_pool.begin(), noun_pool.end(), std::size_t{0});
  std::iota(adjective_pool.begin(), adjective_pool.end(), std::size_t{0});

  std::vector<Scenario> out;
  std::unordered_map<std::vector<std::size_t>, std::size_t, KeyHash> seen;
  while (out.size() < count) {
    Scenario scenario{draw_subset(rng, noun_pool, nouns),
                      draw_subset(rng, adjective_pool, adjectives)};
    if (seen.emplace(candidate_key(scenario, 0), out.size()).second) {
      out.push_back(std::move(scenario));
    }
  }
  return out;
}

namespace {

// Nouns encode as 2i, adjectives as 2i + 1, so one sorted set holds both.
std::vector<std::size_t> word_set(const Scenario& scenario) {
  std::vector<std::size_t> words;
  words.reserve(scenario.nouns.size() + scenario.adjectives.size());
  for (auto n : scenario.nouns) words.push_back(2 * n);
  for (auto a : scenario.adjectives) words.push_back(2 * a + 1);
  std::sort(words.begin(), words.end());
  words.erase(std::unique(words.begin(), words.end()), words.end());
  return words;
}

std::size_t one_sided_difference(const std::vector<std::size_t>& a,
                                 const std::vector<std::size_t>& b) {
  std::size_t count = 0;
  auto ib = b.begin();
  for (auto value : a) {
    while (ib != b.end() && *ib < value) ++ib;
    if (ib == b.end() || *ib != value) ++count;
  }
  return count;
}

std::size_t word_difference(const std::vector<std::size_t>& a, const std::vector<std::size_t>& b) {
  return std::max(one_sided_difference(a, b), one_sided_difference(b, a));
}

}  // namespace

std::size_t word_difference(const Scenario& a, const Scenario& b) {
  return word_difference(word_set(a), word_set(b));
}

std::vector<DesignCandidate> filter_candidates(std::span<const DesignCandidate> candidates,
                                               const FilterSettings& settings) {
  for (std::size_t i = 1; i < candidates.size(); ++i) {
    if (candidates[i].utility > candidates[i - 1].utility) {
      throw DomainError("candidates must be sorted by descending utility");
    }
  }
  std::vector<DesignCandidate> kept;
  std::vector<std::vector<std::size_t>> kept_words;
  std::map<std::size_t, std::size_t> occurrences;
  for (const auto& candidate : candidates) {
    auto words = word_set(candidate.scenario);
    const bool distinct = std::all_of(kept_words.begin(), kept_words.end(), [&](const auto& other) {
      return word_difference(words, other) >= settings.min_word_difference;
    });
    if (!distinct) continue;
    const bool under_cap = std::all_of(words.begin(), words.end(), [&](std::size_t word) {
      const auto it = occurrences.find(word);
      const std::size_t current = it == occurrences.end() ? 0 : it->second;
      return current + 1 <= settings.max_word_occurrence;
    });
    if (!under_cap) continue;
    for (auto word : words) ++occurrences[word];
    kept.push_back(candidate);
    kept_words.push_back(std::move(words));
  }
  return kept;
}

std::vector<std::size_t> confidence_filter(std::span<const double> mean_confidences) {
  if (mean_confidences.empty()) throw DomainError("confidence filter needs at least one entry");
  for (double c : mean_confidences) {
    if (!(c >= 1.0 && c <= 5.0)) throw DomainError("mean confidence outside [1, 5]");
  }
  const double grand_mean =
      std::accumulate(mean_confidences.begin(), mean_confidences.end(), 0.0) /
      static_cast<double>(mean_confidences.size());
  // equal ratings can land a rounding error above their own mean
  const double margin = 1e-12 * std::max(1.0, std::abs(grand_mean));
  std::vector<std::size_t> retained;
  for (std::size_t i = 0; i < mean_confidences.size(); ++i) {
    if (mean_confidences[i] - grand_mean > margin) retained.push_back(i);
  }
  return retained;
}

}  // namespace refgame
