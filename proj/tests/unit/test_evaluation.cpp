#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "oracles.hpp"
#include "refgame/error.hpp"
#include "refgame/evaluation.hpp"
#include "synthetic.hpp"

namespace refgame {
namespace {

using refgame::testing::exact_spearman;
using refgame::testing::make_lexicon;
using refgame::testing::make_matrix;
using refgame::testing::make_table;

const Scenario kThree{{0, 1, 2}, {0, 1, 2}};

ResponseRecord listener_record(std::vector<std::uint64_t> counts, std::size_t clue = 0) {
  return {Configuration::listener(kThree, clue), std::move(counts), {3}};
}

PredictionDistribution listener_prediction(std::vector<double> probs, std::size_t clue = 0) {
  return {answer_support(Configuration::listener(kThree, clue)), std::move(probs)};
}

TEST(ArgmaxSet, ToleranceTies) {
  const std::vector<double> p{0.4, 0.4 - 1e-13, 0.2};
  EXPECT_EQ(argmax_set(p), (std::vector<std::size_t>{0, 1}));
  const std::vector<double> q{0.4, 0.4 - 1e-9, 0.2};
  EXPECT_EQ(argmax_set(q), (std::vector<std::size_t>{0}));
}

TEST(TopAnswer, SetIntersection) {
  EXPECT_EQ(top_answer(listener_prediction({0.6, 0.3, 0.1}), listener_record({5, 2, 0})), 1);
  EXPECT_EQ(top_answer(listener_prediction({0.6, 0.3, 0.1}), listener_record({2, 5, 0})), 0);
  // modal tie: any of the tied answers counts
  EXPECT_EQ(top_answer(listener_prediction({0.1, 0.3, 0.6}), listener_record({4, 1, 4})), 1);
  // model tie
  EXPECT_EQ(top_answer(listener_prediction({0.45, 0.45, 0.1}), listener_record({0, 3, 1})), 1);
}

TEST(TopAnswer, SupportMismatch) {
  const PredictionDistribution speaker{answer_support(Configuration::speaker(kThree, {0, 1})),
                                       {0.5, 0.5, 0.0}};
  EXPECT_THROW(top_answer(speaker, listener_record({1, 2, 3})), DomainError);
  const PredictionDistribution shorter{answer_support(Configuration::listener({{0, 1}, {0}}, 0)), {1.0}};
  EXPECT_THROW(top_answer(shorter, listener_record({1, 2, 3})), DomainError);
}

TEST(Spearman, HandValues) {
  const std::vector<double> model{0.5, 0.3, 0.2};
  const std::vector<double> human{2, 2, 0};
  EXPECT_NEAR(spearman(model, human), 1.5 / std::sqrt(3.0), 1e-15);
  EXPECT_NEAR(spearman(std::vector<double>{1, 2, 3, 4}, std::vector<double>{4, 3, 2, 1}), -1.0, 1e-15);
  EXPECT_EQ(spearman(std::vector<double>{1, 1, 1}, std::vector<double>{1, 2, 3}), 0.0);
  EXPECT_THROW(spearman(std::vector<double>{1}, std::vector<double>{1}), DomainError);
  EXPECT_THROW(spearman(std::vector<double>{1, 2}, std::vector<double>{1, 2, 3}), DomainError);
}

TEST(Spearman, MatchesExactOracleOnTiedVectors) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t n = 2 + trial % 12;
    std::uniform_int_distribution<int> level(0, 3);
    std::vector<double> x(n), y(n);
    for (auto& v : x) v = level(rng);
    for (auto& v : y) v = level(rng) * 0.25;
    EXPECT_NEAR(spearman(x, y), exact_spearman(x, y), 1e-12);
  }
}

TEST(Spearman, SymmetricAndMonotoneInvariant) {
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<double> x(7), y(7);
    for (auto& v : x) v = std::round(u(rng) * 4);
    for (auto& v : y) v = u(rng);
    std::vector<double> tx(x.size());
    std::transform(x.begin(), x.end(), tx.begin(), [](double v) { return std::exp(3 * v) - 2; });
    EXPECT_DOUBLE_EQ(spearman(x, y), spearman(y, x));
    EXPECT_DOUBLE_EQ(spearman(x, y), spearman(tx, y));
  }
}

TEST(RankCorrelation, UnchosenAnswersFormATiedBlock) {
  const auto r = rank_correlation(listener_prediction({0.5, 0.3, 0.2}), listener_record({2, 2, 0}));
  EXPECT_NEAR(r, 1.5 / std::sqrt(3.0), 1e-15);
}

TEST(Aggregate, MeanAndSem) {
  const std::vector<double> s{0, 1};
  const auto a = aggregate(s);
  EXPECT_DOUBLE_EQ(a.mean, 0.5);
  EXPECT_DOUBLE_EQ(a.sem, 0.5);
  EXPECT_EQ(a.n, 2u);
  EXPECT_EQ(aggregate(std::vector<double>{0.3, 0.3, 0.3}).sem, 0.0);
  EXPECT_THROW(aggregate(std::vector<double>{1}), DomainError);
}

TEST(ResponseRecordTest, Validation) {
  EXPECT_NO_THROW(listener_record({1, 0, 0}).validate());
  EXPECT_THROW(listener_record({0, 0, 0}).validate(), DomainError);
  EXPECT_THROW(listener_record({1, 0}).validate(), DomainError);
  auto bad = listener_record({1, 1, 1});
  bad.confidences = {6};
  EXPECT_THROW(bad.validate(), DomainError);
  bad.confidences = {2, 5};
  EXPECT_DOUBLE_EQ(bad.mean_confidence(), 3.5);
}

TEST(AverageSuccess, HandCases) {
  const NounPair target{0, 1};
  // speaker (0.5, 0.5) over two clues; listener correct w.p. 0.8 then 0.2
  PredictionDistribution speaker{{std::size_t{0}, std::size_t{1}}, {0.5, 0.5}};
  const Scenario s{{0, 1, 2}, {0, 1}};
  std::vector<std::optional<PredictionDistribution>> listener{
      PredictionDistribution{answer_support(Configuration::listener(s, 0)), {0.8, 0.1, 0.1}},
      PredictionDistribution{answer_support(Configuration::listener(s, 1)), {0.2, 0.4, 0.4}}};
  EXPECT_DOUBLE_EQ(average_success(speaker, listener, target), 0.5);

  PredictionDistribution sure{{std::size_t{0}, std::size_t{1}}, {0.0, 1.0}};
  listener[1]->probs = {1.0, 0.0, 0.0};
  listener[0].reset();  // unused clue may be absent
  EXPECT_DOUBLE_EQ(average_success(sure, listener, target), 1.0);
  EXPECT_THROW(average_success(speaker, listener, target), DomainError);
}

TEST(AverageSuccess, UniformListenerOverTenPairs) {
  const Scenario s{{0, 1, 2, 3, 4}, {0, 1, 2}};
  std::vector<std::optional<PredictionDistribution>> listener;
  for (const auto& c : listener_configurations(s)) listener.emplace_back(uniform_prediction(c));
  PredictionDistribution speaker{{std::size_t{0}, std::size_t{1}, std::size_t{2}}, {0.7, 0.2, 0.1}};
  EXPECT_NEAR(average_success(speaker, listener, {1, 3}), 0.1, 1e-15);
}

class GameplayFixture : public ::testing::Test {
 protected:
  void SetUp() override {
    lex = make_lexicon(4, 3);
    set = AssociationSet(lex);
    set.add("bigram", make_table(lex, make_matrix(4, 3, {0.9, 0.1, 0.3, 0.2, 0.8, 0.5, 0.6, 0.6,
                                                        0.1, 0.3, 0.2, 0.9})));
  }
  std::shared_ptr<const Lexicon> lex;
  AssociationSet set;
};

TEST_F(GameplayFixture, UniformAgentsHitChance) {
  const std::vector<Scenario> scenarios{{{0, 1, 2}, {0, 1}}, {{1, 2, 3}, {0, 1, 2}}};
  const auto r = simulate_gameplay(set, scenarios, parse_model_spec("uniform:literal", Role::speaker),
                                   parse_model_spec("uniform:literal", Role::listener));
  EXPECT_EQ(r.per_configuration.size(), 6u);
  for (double v : r.per_configuration) EXPECT_NEAR(v, 1.0 / 3.0, 1e-15);
  EXPECT_NEAR(r.summary.mean, 1.0 / 3.0, 1e-15);
  EXPECT_NEAR(r.summary.sem, 0.0, 1e-15);
}

TEST_F(GameplayFixture, MatchesHandChain) {
  const Scenario s{{0, 1, 2}, {0, 1}};
  const auto speaker = parse_model_spec("bigram:literal", Role::speaker);
  const auto listener = parse_model_spec("bigram:literal", Role::listener);
  const auto r = simulate_gameplay(set, std::vector<Scenario>{s}, speaker, listener);
  // pair products for adjectives 0 and 1: (0,1) 0.18, 0.08; (0,2) 0.54, 0.06; (1,2) 0.12, 0.48
  const double s01 = 0.18 / 0.26, l01_a0 = 0.18 / 0.84, l01_a1 = 0.08 / 0.62;
  EXPECT_NEAR(r.per_configuration[0], s01 * l01_a0 + (1 - s01) * l01_a1, 1e-15);
  EXPECT_EQ(r.per_scenario.size(), 1u);
}

TEST_F(GameplayFixture, RoleChecks) {
  const std::vector<Scenario> scenarios{{{0, 1, 2}, {0, 1}}};
  const auto lit = parse_model_spec("bigram:literal", Role::listener);
  EXPECT_THROW(simulate_gameplay(set, scenarios, lit, lit), DomainError);
  EXPECT_THROW(simulate_gameplay(set, std::vector<Scenario>{},
                                 parse_model_spec("bigram:literal", Role::speaker), lit),
               DomainError);
}

TEST_F(GameplayFixture, EmpiricalPoolsByScenario) {
  const Scenario s{{0, 1, 2}, {0, 1}};
  const std::vector<ResponseRecord> responses{
      {Configuration::speaker(s, {0, 1}), {3, 1}, {3}},
      {Configuration::listener(s, 0), {4, 0, 0}, {4}},
      {Configuration::listener(s, 0), {2, 2, 0}, {4}},
      {Configuration::listener(s, 1), {1, 1, 2}, {2}},
  };
  const auto r = empirical_gameplay(responses);
  ASSERT_EQ(r.per_configuration.size(), 1u);
  // clue 0 pooled to (6, 2, 0)
  EXPECT_DOUBLE_EQ(r.per_configuration[0], 0.75 * 0.75 + 0.25 * 0.25);
}

TEST_F(GameplayFixture, MetricCorrelation) {
  const auto& t = set.at("bigram");
  EXPECT_DOUBLE_EQ(metric_rank_correlation(t, t), 1.0);
  auto negated = t;
  for (auto& v : negated.values.values()) v = 1.0 - v;
  EXPECT_DOUBLE_EQ(metric_rank_correlation(t, negated), -1.0);
}

TEST_F(GameplayFixture, ModelAgreement) {
  const std::vector<Configuration> configs{Configuration::listener({{0, 1, 2}, {0, 1}}, 0),
                                           Configuration::listener({{1, 2, 3}, {1, 2}}, 1)};
  const auto lit = parse_model_spec("bigram:literal", Role::listener);
  const auto self = model_agreement(lit, lit, set, configs);
  EXPECT_EQ(self.top_answer, 1.0);
  EXPECT_DOUBLE_EQ(self.rank_correlation, 1.0);
  const auto u = parse_model_spec("uniform:literal", Role::listener);
  EXPECT_EQ(model_agreement(lit, u, set, configs).rank_correlation, 0.0);
  EXPECT_THROW(model_agreement(lit, parse_model_spec("bigram:literal", Role::speaker), set, configs),
               DomainError);
}

TEST(ScoreModel, ReportsPerRecordAndSummary) {
  const auto lex = make_lexicon(3, 3);
  AssociationSet set(lex);
  set.add("bigram", make_table(lex, make_matrix(3, 3, {0.9, 0.2, 0.5, 0.8, 0.3, 0.5, 0.1, 0.9, 0.5})));
  const std::vector<ResponseRecord> responses{listener_record({5, 1, 0}, 0),
                                              listener_record({0, 1, 5}, 0)};
  const auto report = score_model(set, parse_model_spec("bigram:literal", Role::speaker), responses);
  // literal listener for clue 0: products 0.72, 0.09, 0.08
  EXPECT_EQ(report.top_answer, (std::vector<int>{1, 0}));
  EXPECT_DOUBLE_EQ(report.top_answer_summary.mean, 0.5);
  EXPECT_DOUBLE_EQ(report.rank_correlation[0], 1.0);
  EXPECT_DOUBLE_EQ(report.rank_correlation[1], -1.0);
}

TEST(Welch, HandArithmetic) {
  const std::vector<double> a{2, 3, 4}, b{4, 5, 6};
  const auto r = confidence_ttest(a, b);
  // means 3 and 5, variances 1 and 1: t = -2 / sqrt(2/3), df = 4
  EXPECT_NEAR(r.t, -2.0 / std::sqrt(2.0 / 3.0), 1e-12);
  EXPECT_NEAR(r.degrees_of_freedom, 4.0, 1e-12);
  EXPECT_NEAR(r.p, 0.07048399691021993, 1e-10);
}

TEST(Welch, UnequalVariances) {
  const std::vector<double> a{3, 4, 5, 2, 4.5}, b{1, 2, 2, 3};
  const auto r = confidence_ttest(a, b);
  EXPECT_NEAR(r.t, 2.51564448070165, 1e-12);
  EXPECT_NEAR(r.degrees_of_freedom, 6.88623230501116, 1e-10);
  EXPECT_NEAR(r.p, 0.04060225907308147, 1e-10);
}

TEST(Welch, Degenerate) {
  const std::vector<double> same{3, 3, 3};
  const auto r = confidence_ttest(same, same);
  EXPECT_EQ(r.t, 0.0);
  EXPECT_EQ(r.p, 1.0);
  const std::vector<double> lo{1, 1, 1, 1}, hi{5, 5, 5, 5};
  const auto sep = confidence_ttest(lo, hi);
  EXPECT_LT(sep.t, 0.0);
  EXPECT_LT(sep.p, 1e-3);
  EXPECT_THROW(confidence_ttest(std::vector<double>{1}, hi), DomainError);
}

}  // namespace
}  // namespace refgame
