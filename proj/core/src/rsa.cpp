#include "refgame/rsa.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "refgame/error.hpp"
#include "refgame/format.hpp"

namespace refgame {

ModelSpec parse_model_spec(std::string_view text, Role role) {
  std::vector<std::string> parts;
  std::string_view rest = text;
  while (true) {
    const auto pos = rest.find(':');
    parts.emplace_back(rest.substr(0, pos));
    if (pos == std::string_view::npos) break;
    rest.remove_prefix(pos + 1);
  }
  const std::string quoted = "'" + std::string(text) + "'";
  if (parts.size() < 2 || parts.size() > 3 || parts[0].empty()) {
    throw std::invalid_argument("model spec " + quoted + " is not metric:depth[:alpha]");
  }
  ModelSpec spec;
  spec.metric = parts[0];
  spec.role = role;
  if (parts[1] == "literal") {
    spec.depth = Depth::literal;
  } else if (parts[1] == "pragmatic") {
    spec.depth = Depth::pragmatic;
  } else {
    throw std::invalid_argument("model spec " + quoted + ": unknown depth '" + parts[1] + "'");
  }
  if (parts.size() == 3) {
    try {
      spec.alpha = parse_double(parts[2], "alpha");
    } catch (const DomainError& e) {
      throw std::invalid_argument("model spec " + quoted + ": " + e.what());
    }
    if (!(spec.alpha > 0.0)) {
      throw std::invalid_argument("model spec " + quoted + ": alpha must be positive");
    }
  }
  return spec;
}

std::string to_string(const ModelSpec& spec) {
  if (spec.depth == Depth::literal) return spec.metric + ":literal";
  return spec.metric + ":pragmatic:" + format_double(spec.alpha);
}

namespace {

std::vector<double> normalized(std::vector<double> weights) {
  double total = 0.0;
  for (double w : weights) total += w;
  if (!(total > 0.0) || !std::isfinite(total)) {
    throw DomainError("cannot normalize weights summing to " + format_double(total));
  }
  for (double& w : weights) w /= total;
  return weights;
}

void check_alpha(double alpha) {
  if (!(alpha > 0.0) || !std::isfinite(alpha)) {
    throw DomainError("alpha must be positive and finite");
  }
}

// Row-normalized matrix: out(p, a) = m(p, a) / sum_a' m(p, a').
Matrix<double> normalize_rows(const Matrix<double>& m) {
  Matrix<double> out(m.rows(), m.cols());
  for (std::size_t r = 0; r < m.rows(); ++r) {
    auto probs = normalized({m.row(r).begin(), m.row(r).end()});
    std::copy(probs.begin(), probs.end(), out.row(r).begin());
  }
  return out;
}

// Column-normalized matrix: out(p, a) = m(p, a) / sum_p' m(p', a).
Matrix<double> normalize_columns(const Matrix<double>& m) {
  Matrix<double> out(m.rows(), m.cols());
  for (std::size_t c = 0; c < m.cols(); ++c) {
    double total = 0.0;
    for (std::size_t r = 0; r < m.rows(); ++r) total += m(r, c);
    if (!(total > 0.0)) throw DomainError("cannot normalize an all-zero column");
    for (std::size_t r = 0; r < m.rows(); ++r) out(r, c) = m(r, c) / total;
  }
  return out;
}

Matrix<double> power(Matrix<double> m, double alpha) {
  if (alpha != 1.0) {
    for (double& v : m.values()) v = std::pow(v, alpha);
  }
  return m;
}

std::vector<double> column(const Matrix<double>& m, std::size_t c) {
  std::vector<double> out(m.rows());
  for (std::size_t r = 0; r < m.rows(); ++r) out[r] = m(r, c);
  return out;
}

void check_clue(const Matrix<double>& scores, std::size_t clue) {
  if (clue >= scores.cols()) throw DomainError("clue index out of range");
}

void check_pair(const Matrix<double>& scores, std::size_t pair) {
  if (pair >= scores.rows()) throw DomainError("pair index out of range");
}

void require_role(const Configuration& config, Role role) {
  if (config.role() != role) {
    throw DomainError("expected a " + std::string(to_string(role)) + " configuration, got a " +
                      std::string(to_string(config.role())) + " configuration");
  }
}

PredictionDistribution distribution(const Configuration& config, std::vector<double> probs) {
  return {answer_support(config), std::move(probs)};
}

}  // namespace

Matrix<double> pair_scores(const NormalizedAssociation& norm, const Scenario& scenario) {
  const auto pairs = enumerate_pairs(scenario.nouns.size());
  Matrix<double> scores(pairs.size(), scenario.adjectives.size());
  for (std::size_t p = 0; p < pairs.size(); ++p) {
    const auto n1 = scenario.nouns[pairs[p].first];
    const auto n2 = scenario.nouns[pairs[p].second];
    for (std::size_t j = 0; j < scenario.adjectives.size(); ++j) {
      scores(p, j) = pair_association(norm, n1, n2, scenario.adjectives[j]);
    }
  }
  return scores;
}

std::vector<double> literal_listener(const Matrix<double>& scores, std::size_t clue) {
  check_clue(scores, clue);
  return normalized(column(scores, clue));
}

std::vector<double> literal_speaker(const Matrix<double>& scores, std::size_t pair) {
  check_pair(scores, pair);
  return normalized({scores.row(pair).begin(), scores.row(pair).end()});
}

std::vector<double> pragmatic_listener(const Matrix<double>& scores, std::size_t clue,
                                       double alpha) {
  check_alpha(alpha);
  check_clue(scores, clue);
  const auto l0 = normalize_columns(scores);           // L0(p | a)
  const auto s1 = normalize_rows(power(l0, alpha));    // S1(a | p)
  return normalized(column(s1, clue));                 // L1(p | clue)
}

std::vector<double> pragmatic_speaker(const Matrix<double>& scores, std::size_t pair,
                                      double alpha) {
  check_alpha(alpha);
  check_pair(scores, pair);
  const auto s0 = normalize_rows(scores);               // S0(a | p)
  const auto l1 = normalize_columns(power(s0, alpha));  // L1(p | a)
  return normalized({l1.row(pair).begin(), l1.row(pair).end()});  // S1(a | pair)
}

PredictionDistribution literal_listener(const NormalizedAssociation& norm,
                                        const Configuration& config) {
  require_role(config, Role::listener);
  return distribution(config, literal_listener(pair_scores(norm, config.scenario()), config.clue()));
}

PredictionDistribution literal_speaker(const NormalizedAssociation& norm,
                                       const Configuration& config) {
  require_role(config, Role::speaker);
  const auto& scenario = config.scenario();
  const auto pair = pair_ordinal(config.target(), scenario.nouns.size());
  return distribution(config, literal_speaker(pair_scores(norm, scenario), pair));
}

PredictionDistribution pragmatic_listener(const NormalizedAssociation& norm,
                                          const Configuration& config, double alpha) {
  require_role(config, Role::listener);
  return distribution(config,
                      pragmatic_listener(pair_scores(norm, config.scenario()), config.clue(), alpha));
}

PredictionDistribution pragmatic_speaker(const NormalizedAssociation& norm,
                                         const Configuration& config, double alpha) {
  require_role(config, Role::speaker);
  const auto& scenario = config.scenario();
  const auto pair = pair_ordinal(config.target(), scenario.nouns.size());
  return distribution(config, pragmatic_speaker(pair_scores(norm, scenario), pair, alpha));
}

PredictionDistribution uniform_prediction(const Configuration& config) {
  auto support = answer_support(config);
  std::vector<double> probs(support.size(), 1.0 / static_cast<double>(support.size()));
  return {std::move(support), std::move(probs)};
}

PredictionDistribution predict(const NormalizedAssociation& norm, const Configuration& config,
                               const ModelSpec& spec) {
  require_role(config, spec.role);
  if (spec.role == Role::listener) {
    return spec.depth == Depth::literal ? literal_listener(norm, config)
                                        : pragmatic_listener(norm, config, spec.alpha);
  }
  return spec.depth == Depth::literal ? literal_speaker(norm, config)
                                      : pragmatic_speaker(norm, config, spec.alpha);
}

PredictionDistribution predict(const AssociationSet& associations, const Configuration& config,
                               const ModelSpec& spec) {
  if (spec.metric == kUniformMetric) {
    require_role(config, spec.role);
    return uniform_prediction(config);
  }
  return predict(associations.at(spec.metric), config, spec);
}

}  // namespace refgame
