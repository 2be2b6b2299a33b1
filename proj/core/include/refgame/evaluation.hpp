#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "refgame/association.hpp"
#include "refgame/game.hpp"
#include "refgame/rsa.hpp"

namespace refgame {

// Observed responses for one configuration. counts is parallel to
// answer_support(configuration).
struct ResponseRecord {
  Configuration configuration;
  std::vector<std::uint64_t> counts;
  std::vector<int> confidences;  // each in [1, 5]

  // Throws DomainError if counts do not match the support, sum to zero, or a
  // confidence is out of range.
  void validate() const;
  double mean_confidence() const;
};

// Probabilities within this distance of the maximum count as tied.
inline constexpr double kArgmaxTolerance = 1e-12;

// Answers whose probability is within kArgmaxTolerance of the maximum.
std::vector<std::size_t> argmax_set(std::span<const double> probs);

// 1 if the model's argmax set intersects the set of most frequent answers.
int top_answer(const PredictionDistribution& prediction, const ResponseRecord& response);

// Spearman correlation: Pearson correlation of average ranks. Returns 0 when
// either rank vector is constant; throws DomainError for fewer than two
// entries or mismatched lengths.
double spearman(std::span<const double> x, std::span<const double> y);

// Spearman between model probabilities and answer frequencies (unchosen
// answers included as a tied block).
double rank_correlation(const PredictionDistribution& prediction, const ResponseRecord& response);

struct Summary {
  double mean = 0.0;
  double sem = 0.0;  // sample standard deviation / sqrt(n)
  std::size_t n = 0;
};

// Throws DomainError for fewer than two scores.
Summary aggregate(std::span<const double> scores);

struct ScoreReport {
  std::vector<int> top_answer;
  std::vector<double> rank_correlation;
  Summary top_answer_summary;
  Summary rank_correlation_summary;
};

ScoreReport score_model(const AssociationSet& associations, const ModelSpec& spec,
                        std::span<const ResponseRecord> responses);

// Relative answer frequencies as a distribution over the configuration's support.
PredictionDistribution empirical_distribution(const ResponseRecord& response);

// sum_a P(L = target | a) * P(S = a). listener_by_clue[j] is the listener
// distribution for scenario adjective j; it may be absent only where the
// speaker puts no mass.
double average_success(const PredictionDistribution& speaker,
                       std::span<const std::optional<PredictionDistribution>> listener_by_clue,
                       NounPair target);

struct GameplayResult {
  std::vector<Configuration> configurations;  // speaker configurations scored
  std::vector<double> per_configuration;
  std::vector<double> per_scenario;  // mean over the scenario's target pairs
  Summary summary;  // over configurations; sem is 0 when only one was scored
};

// Analytic agent-vs-agent success over every speaker configuration of every
// scenario.
GameplayResult simulate_gameplay(const AssociationSet& associations,
                                 std::span<const Scenario> scenarios,
                                 const ModelSpec& speaker, const ModelSpec& listener);

// Success estimated from relative response frequencies: each speaker record
// is paired with the listener records of the same scenario. Speaker records
// whose scenario lacks a listener record for a chosen clue are skipped.
GameplayResult empirical_gameplay(std::span<const ResponseRecord> responses);

// Spearman over all noun x adjective cells of two tables on one lexicon.
double metric_rank_correlation(const NormalizedAssociation& a, const NormalizedAssociation& b);

struct Agreement {
  double top_answer = 0.0;        // fraction of configs whose argmax sets intersect
  double rank_correlation = 0.0;  // mean Spearman between the two predictions
};

Agreement model_agreement(const ModelSpec& a, const ModelSpec& b,
                          const AssociationSet& associations,
                          std::span<const Configuration> configurations);

struct TTestResult {
  double t = 0.0;
  double p = 1.0;  // two-sided
  double degrees_of_freedom = 0.0;
};

// Welch's unequal-variance t-test of mean(a) - mean(b).
TTestResult confidence_ttest(std::span<const double> a, std::span<const double> b);

}  // namespace refgame
