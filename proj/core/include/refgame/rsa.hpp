#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "refgame/association.hpp"
#include "refgame/game.hpp"
#include "refgame/matrix.hpp"

namespace refgame {

enum class Depth { literal, pragmatic };

// Reserved metric label: an agent that spreads mass evenly over its support.
inline constexpr std::string_view kUniformMetric = "uniform";

struct ModelSpec {
  std::string metric;
  Role role = Role::listener;
  Depth depth = Depth::literal;
  double alpha = 1.0;  // rationality exponent; pragmatic only

  bool operator==(const ModelSpec&) const = default;
};

// Parses "metric:literal" or "metric:pragmatic[:alpha]" (alpha defaults to 1).
// Throws std::invalid_argument on malformed text or alpha <= 0.
ModelSpec parse_model_spec(std::string_view text, Role role);
std::string to_string(const ModelSpec& spec);

struct PredictionDistribution {
  std::vector<Answer> support;
  std::vector<double> probs;
};

// s(p, a) for every scenario pair (rows, enumerate_pairs order) and scenario
// adjective (columns, scenario order).
Matrix<double> pair_scores(const NormalizedAssociation& norm, const Scenario& scenario);

// Agents over a pair x adjective score matrix. Each returns probabilities over
// pairs (listeners) or adjectives (speakers) in matrix order.
//
//   L0(p | a) ∝ s(p, a)                 S0(a | p) ∝ s(p, a)
//   S1(a | p) ∝ L0(p | a)^alpha         L1(p | a) ∝ S0(a | p)^alpha
//   L1(p | a) ∝ S1(a | p)               S1(a | p) ∝ L1(p | a)
std::vector<double> literal_listener(const Matrix<double>& scores, std::size_t clue);
std::vector<double> literal_speaker(const Matrix<double>& scores, std::size_t pair);
std::vector<double> pragmatic_listener(const Matrix<double>& scores, std::size_t clue, double alpha);
std::vector<double> pragmatic_speaker(const Matrix<double>& scores, std::size_t pair, double alpha);

PredictionDistribution literal_listener(const NormalizedAssociation& norm,
                                        const Configuration& config);
PredictionDistribution literal_speaker(const NormalizedAssociation& norm,
                                       const Configuration& config);
PredictionDistribution pragmatic_listener(const NormalizedAssociation& norm,
                                          const Configuration& config, double alpha);
PredictionDistribution pragmatic_speaker(const NormalizedAssociation& norm,
                                         const Configuration& config, double alpha);

PredictionDistribution uniform_prediction(const Configuration& config);

// Dispatches on spec depth and role; throws DomainError on a role mismatch.
PredictionDistribution predict(const NormalizedAssociation& norm, const Configuration& config,
                               const ModelSpec& spec);
// Looks the table up by spec.metric; the uniform metric needs no table.
PredictionDistribution predict(const AssociationSet& associations, const Configuration& config,
                               const ModelSpec& spec);

}  // namespace refgame
