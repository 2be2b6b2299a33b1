#include "refgame/evaluation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>

#include <boost/math/distributions/students_t.hpp>

#include "refgame/error.hpp"
#include "refgame/ranks.hpp"

namespace refgame {

void ResponseRecord::validate() const {
  const auto support = answer_support(configuration);
  if (counts.size() != support.size()) {
    throw DomainError("response has " + std::to_string(counts.size()) + " answer counts for " +
                      std::to_string(support.size()) + " possible answers");
  }
  if (std::accumulate(counts.begin(), counts.end(), std::uint64_t{0}) == 0) {
    throw DomainError("response record has no answers");
  }
  for (int c : confidences) {
    if (c < 1 || c > 5) throw DomainError("confidence rating " + std::to_string(c) + " outside 1..5");
  }
}

double ResponseRecord::mean_confidence() const {
  if (confidences.empty()) throw DomainError("response record has no confidence ratings");
  return std::accumulate(confidences.begin(), confidences.end(), 0.0) /
         static_cast<double>(confidences.size());
}

std::vector<std::size_t> argmax_set(std::span<const double> probs) {
  std::vector<std::size_t> out;
  if (probs.empty()) return out;
  const double best = *std::max_element(probs.begin(), probs.end());
  for (std::size_t i = 0; i < probs.size(); ++i) {
    if (probs[i] >= best - kArgmaxTolerance) out.push_back(i);
  }
  return out;
}

namespace {

void check_alignment(const PredictionDistribution& prediction, const ResponseRecord& response) {
  if (prediction.support != answer_support(response.configuration) ||
      prediction.probs.size() != response.counts.size()) {
    throw DomainError("support mismatch between prediction and responses");
  }
}

std::vector<double> as_doubles(const std::vector<std::uint64_t>& counts) {
  return {counts.begin(), counts.end()};
}

bool intersects(const std::vector<std::size_t>& a, const std::vector<std::size_t>& b) {
  return std::any_of(a.begin(), a.end(), [&](std::size_t i) {
    return std::find(b.begin(), b.end(), i) != b.end();
  });
}

Summary summarize(std::span<const double> scores) {
  if (scores.size() >= 2) return aggregate(scores);
  Summary single;
  single.n = scores.size();
  single.mean = scores.empty() ? 0.0 : scores.front();
  return single;
}

}  // namespace

int top_answer(const PredictionDistribution& prediction, const ResponseRecord& response) {
  check_alignment(prediction, response);
  const auto model_best = argmax_set(prediction.probs);
  const auto max_count = *std::max_element(response.counts.begin(), response.counts.end());
  std::vector<std::size_t> modal;
  for (std::size_t i = 0; i < response.counts.size(); ++i) {
    if (response.counts[i] == max_count) modal.push_back(i);
  }
  return intersects(model_best, modal) ? 1 : 0;
}

double spearman(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw DomainError("rank correlation of vectors of different length");
  if (x.size() < 2) throw DomainError("rank correlation needs at least two answers");
  const auto rx = average_ranks(x);
  const auto ry = average_ranks(y);
  // both rank vectors have mean (n + 1) / 2
  const double mean = 0.5 * static_cast<double>(x.size() + 1);
  double sxy = 0.0, sxx = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < rx.size(); ++i) {
    const double dx = rx[i] - mean;
    const double dy = ry[i] - mean;
    sxy += dx * dy;
    sxx += dx * dx;
    syy += dy * dy;
  }
  if (sxx == 0.0 || syy == 0.0) return 0.0;
  return std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
}

double rank_correlation(const PredictionDistribution& prediction, const ResponseRecord& response) {
  check_alignment(prediction, response);
  return spearman(prediction.probs, as_doubles(response.counts));
}

Summary aggregate(std::span<const double> scores) {
  if (scores.size() < 2) throw DomainError("standard error needs at least two scores");
  const auto n = static_cast<double>(scores.size());
  const double mean = std::accumulate(scores.begin(), scores.end(), 0.0) / n;
  double ss = 0.0;
  for (double s : scores) ss += (s - mean) * (s - mean);
  return {mean, std::sqrt(ss / (n - 1.0)) / std::sqrt(n), scores.size()};
}

ScoreReport score_model(const AssociationSet& associations, const ModelSpec& spec,
                        std::span<const ResponseRecord> responses) {
  ScoreReport report;
  std::vector<double> tops;
  for (const auto& response : responses) {
    response.validate();
    auto role_spec = spec;
    role_spec.role = response.configuration.role();
    const auto prediction = predict(associations, response.configuration, role_spec);
    report.top_answer.push_back(top_answer(prediction, response));
    report.rank_correlation.push_back(rank_correlation(prediction, response));
    tops.push_back(report.top_answer.back());
  }
  report.top_answer_summary = aggregate(tops);
  report.rank_correlation_summary = aggregate(report.rank_correlation);
  return report;
}

PredictionDistribution empirical_distribution(const ResponseRecord& response) {
  response.validate();
  const auto total = static_cast<double>(
      std::accumulate(response.counts.begin(), response.counts.end(), std::uint64_t{0}));
  PredictionDistribution out{answer_support(response.configuration), {}};
  for (auto c : response.counts) out.probs.push_back(static_cast<double>(c) / total);
  return out;
}

double average_success(const PredictionDistribution& speaker,
                       std::span<const std::optional<PredictionDistribution>> listener_by_clue,
                       NounPair target) {
  if (listener_by_clue.size() != speaker.probs.size()) {
    throw DomainError("need one listener slot per scenario adjective");
  }
  double success = 0.0;
  for (std::size_t j = 0; j < speaker.probs.size(); ++j) {
    if (speaker.probs[j] <= 0.0) continue;
    if (!listener_by_clue[j]) {
      throw DomainError("no listener distribution for clue " + std::to_string(j) +
                        " although the speaker uses it");
    }
    const auto& listener = *listener_by_clue[j];
    const auto it = std::find(listener.support.begin(), listener.support.end(), Answer{target});
    if (it == listener.support.end()) throw DomainError("target pair not in listener support");
    success += listener.probs[static_cast<std::size_t>(it - listener.support.begin())] *
               speaker.probs[j];
  }
  return success;
}

GameplayResult simulate_gameplay(const AssociationSet& associations,
                                 std::span<const Scenario> scenarios, const ModelSpec& speaker,
                                 const ModelSpec& listener) {
  if (scenarios.empty()) throw DomainError("simulation needs at least one scenario");
  if (speaker.role != Role::speaker) throw DomainError("speaker model must have the speaker role");
  if (listener.role != Role::listener) {
    throw DomainError("listener model must have the listener role");
  }
  GameplayResult result;
  for (const auto& scenario : scenarios) {
    std::vector<std::optional<PredictionDistribution>> listener_by_clue;
    for (const auto& config : listener_configurations(scenario)) {
      listener_by_clue.emplace_back(predict(associations, config, listener));
    }
    double scenario_total = 0.0;
    const auto configs = speaker_configurations(scenario);
    for (const auto& config : configs) {
      const auto said = predict(associations, config, speaker);
      const double success = average_success(said, listener_by_clue, config.target());
      result.configurations.push_back(config);
      result.per_configuration.push_back(success);
      scenario_total += success;
    }
    result.per_scenario.push_back(scenario_total / static_cast<double>(configs.size()));
  }
  result.summary = summarize(result.per_configuration);
  return result;
}

GameplayResult empirical_gameplay(std::span<const ResponseRecord> responses) {
  struct Pooled {
    std::map<NounPair, ResponseRecord> speaker;
    std::map<std::size_t, ResponseRecord> listener;
  };
  std::map<Scenario, Pooled> by_scenario;
  auto pool = [](auto& slot, const auto& key, const ResponseRecord& record) {
    auto it = slot.find(key);
    if (it == slot.end()) {
      slot.emplace(key, record);
      return;
    }
    for (std::size_t i = 0; i < record.counts.size(); ++i) it->second.counts[i] += record.counts[i];
  };
  for (const auto& record : responses) {
    record.validate();
    auto& pooled = by_scenario[record.configuration.scenario()];
    if (record.configuration.role() == Role::speaker) {
      pool(pooled.speaker, record.configuration.target(), record);
    } else {
      pool(pooled.listener, record.configuration.clue(), record);
    }
  }

  GameplayResult result;
  for (const auto& [scenario, pooled] : by_scenario) {
    std::vector<std::optional<PredictionDistribution>> listener_by_clue(scenario.adjectives.size());
    for (const auto& [clue, record] : pooled.listener) {
      listener_by_clue[clue] = empirical_distribution(record);
    }
    double scenario_total = 0.0;
    std::size_t scored = 0;
    for (const auto& [target, record] : pooled.speaker) {
      const auto said = empirical_distribution(record);
      bool covered = true;
      for (std::size_t j = 0; j < said.probs.size(); ++j) {
        if (said.probs[j] > 0.0 && !listener_by_clue[j]) covered = false;
      }
      if (!covered) continue;
      const double success = average_success(said, listener_by_clue, target);
      result.configurations.push_back(record.configuration);
      result.per_configuration.push_back(success);
      scenario_total += success;
      ++scored;
    }
    if (scored > 0) result.per_scenario.push_back(scenario_total / static_cast<double>(scored));
  }
  if (result.per_configuration.empty()) {
    throw DomainError("no speaker response has matching listener responses");
  }
  result.summary = summarize(result.per_configuration);
  return result;
}

double metric_rank_correlation(const NormalizedAssociation& a, const NormalizedAssociation& b) {
  if (!a.lexicon || !b.lexicon || *a.lexicon != *b.lexicon) {
    throw DomainError("association tables use different lexicons");
  }
  return spearman(a.values.values(), b.values.values());
}

Agreement model_agreement(const ModelSpec& a, const ModelSpec& b,
                          const AssociationSet& associations,
                          std::span<const Configuration> configurations) {
  if (configurations.empty()) throw DomainError("model agreement needs configurations");
  Agreement agreement;
  for (const auto& config : configurations) {
    const auto pa = predict(associations, config, a);
    const auto pb = predict(associations, config, b);
    if (intersects(argmax_set(pa.probs), argmax_set(pb.probs))) agreement.top_answer += 1.0;
    agreement.rank_correlation += spearman(pa.probs, pb.probs);
  }
  const auto n = static_cast<double>(configurations.size());
  agreement.top_answer /= n;
  agreement.rank_correlation /= n;
  return agreement;
}

TTestResult confidence_ttest(std::span<const double> a, std::span<const double> b) {
  if (a.size() < 2 || b.size() < 2) throw DomainError("t-test needs at least two ratings per group");
  auto moments = [](std::span<const double> v) {
    const auto n = static_cast<double>(v.size());
    const double mean = std::accumulate(v.begin(), v.end(), 0.0) / n;
    double ss = 0.0;
    for (double x : v) ss += (x - mean) * (x - mean);
    return std::pair{mean, ss / (n - 1.0)};
  };
  const auto [mean_a, var_a] = moments(a);
  const auto [mean_b, var_b] = moments(b);
  const double na = static_cast<double>(a.size());
  const double nb = static_cast<double>(b.size());
  const double qa = var_a / na;
  const double qb = var_b / nb;
  const double se2 = qa + qb;

  TTestResult result;
  if (se2 == 0.0) {
    result.degrees_of_freedom = na + nb - 2.0;
    if (mean_a == mean_b) return result;
    result.t = mean_a > mean_b ? std::numeric_limits<double>::infinity()
                               : -std::numeric_limits<double>::infinity();
    result.p = 0.0;
    return result;
  }
  result.t = (mean_a - mean_b) / std::sqrt(se2);
  result.degrees_of_freedom = se2 * se2 / (qa * qa / (na - 1.0) + qb * qb / (nb - 1.0));
  const boost::math::students_t_distribution<double> dist(result.degrees_of_freedom);
  result.p = 2.0 * boost::math::cdf(boost::math::complement(dist, std::abs(result.t)));
  return result;
}

}  // namespace refgame
