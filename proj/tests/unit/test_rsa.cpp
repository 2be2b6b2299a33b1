#include <gtest/gtest.h>

#include <cmath>
#include <numeric>
#include <random>
#include <stdexcept>

#include "refgame/error.hpp"
#include "refgame/rsa.hpp"
#include "synthetic.hpp"

namespace refgame {
namespace {

using refgame::testing::make_lexicon;
using refgame::testing::make_matrix;
using refgame::testing::make_table;

const Matrix<double> kWorked = make_matrix(2, 2, {0.9, 0.5, 0.1, 0.5});

TEST(ModelSpecParse, Forms) {
  const auto lit = parse_model_spec("bigram:literal", Role::speaker);
  EXPECT_EQ(lit.metric, "bigram");
  EXPECT_EQ(lit.depth, Depth::literal);
  EXPECT_EQ(lit.role, Role::speaker);
  EXPECT_EQ(lit.alpha, 1.0);
  EXPECT_EQ(parse_model_spec("bigram:pragmatic", Role::listener).alpha, 1.0);
  EXPECT_EQ(parse_model_spec("bigram:pragmatic:5.0", Role::listener).alpha, 5.0);
  EXPECT_EQ(parse_model_spec("embedding-cosine:pragmatic:0.1", Role::listener).alpha, 0.1);
  EXPECT_EQ(to_string(parse_model_spec("bigram:pragmatic:5.0", Role::listener)), "bigram:pragmatic:5");
  for (const char* bad : {"bigram", "bigram:deep", ":literal", "bigram:pragmatic:0",
                          "bigram:pragmatic:-1", "bigram:pragmatic:x", "a:literal:1:2"}) {
    EXPECT_THROW(parse_model_spec(bad, Role::listener), std::invalid_argument) << bad;
  }
}

TEST(Kernels, LiteralAgentsNormalizeScores) {
  const auto l0 = literal_listener(kWorked, 0);
  EXPECT_DOUBLE_EQ(l0[0], 0.9);
  EXPECT_DOUBLE_EQ(l0[1], 0.1);
  const auto s0 = literal_speaker(kWorked, 1);
  EXPECT_DOUBLE_EQ(s0[0], 1.0 / 6.0);
  EXPECT_DOUBLE_EQ(s0[1], 5.0 / 6.0);
}

TEST(Kernels, WorkedPragmaticListener) {
  // S1 rows: (9/14, 5/14) and (1/6, 5/6); L1 column 0 = (9/14, 1/6) renormalized
  const auto l1 = pragmatic_listener(kWorked, 0, 1.0);
  EXPECT_NEAR(l1[0], 27.0 / 34.0, 1e-15);
  EXPECT_NEAR(l1[1], 7.0 / 34.0, 1e-15);
  EXPECT_NEAR(l1[0], 0.79412, 1e-5);
}

TEST(Kernels, WorkedPragmaticSpeaker) {
  // L1 columns: (27/34, 7/34) and (3/10, 7/10); S1 row 0 = (27/34, 3/10) renormalized
  const auto s1 = pragmatic_speaker(kWorked, 0, 1.0);
  EXPECT_NEAR(s1[0], 45.0 / 62.0, 1e-15);
  EXPECT_NEAR(s1[1], 17.0 / 62.0, 1e-15);
}

TEST(Kernels, AlphaSharpens) {
  const auto soft = pragmatic_listener(kWorked, 0, 0.1);
  const auto sharp = pragmatic_listener(kWorked, 0, 5.0);
  EXPECT_GT(sharp[0], soft[0]);
  // alpha = 2 by hand: S1 rows (81, 25)/106 and (1, 25)/26
  const auto two = pragmatic_listener(kWorked, 0, 2.0);
  const double a = 81.0 / 106.0, b = 1.0 / 26.0;
  EXPECT_NEAR(two[0], a / (a + b), 1e-15);
}

TEST(Kernels, RangeAndAlphaChecks) {
  EXPECT_THROW(literal_listener(kWorked, 2), DomainError);
  EXPECT_THROW(literal_speaker(kWorked, 2), DomainError);
  EXPECT_THROW(pragmatic_listener(kWorked, 0, 0.0), DomainError);
  EXPECT_THROW(pragmatic_speaker(kWorked, 0, INFINITY), DomainError);
}

// Direct transcription of the recursion over a scenario, computing every
// pair score from the noun table, for comparison against the matrix kernels.
std::vector<double> oracle_pragmatic_listener(const NormalizedAssociation& t, const Scenario& s,
                                              std::size_t clue, double alpha) {
  const auto pairs = enumerate_pairs(s.nouns.size());
  auto score = [&](std::size_t p, std::size_t j) {
    return t(s.nouns[pairs[p].first], s.adjectives[j]) * t(s.nouns[pairs[p].second], s.adjectives[j]);
  };
  auto l0 = [&](std::size_t p, std::size_t j) {
    double z = 0;
    for (std::size_t q = 0; q < pairs.size(); ++q) z += score(q, j);
    return score(p, j) / z;
  };
  std::vector<double> out(pairs.size());
  for (std::size_t p = 0; p < pairs.size(); ++p) {
    double z = 0;
    for (std::size_t j = 0; j < s.adjectives.size(); ++j) z += std::pow(l0(p, j), alpha);
    out[p] = std::pow(l0(p, clue), alpha) / z;
  }
  const double total = std::accumulate(out.begin(), out.end(), 0.0);
  for (double& v : out) v /= total;
  return out;
}

TEST(Agents, ConfigurationLevelMatchesOracle) {
  const auto lex = make_lexicon(5, 5);
  std::mt19937_64 rng(11);
  const auto t = refgame::testing::random_table(lex, rng);
  const Scenario s{{4, 0, 2}, {1, 3, 0}};
  for (std::size_t clue = 0; clue < 3; ++clue) {
    for (double alpha : {0.1, 1.0, 5.0}) {
      const auto got = pragmatic_listener(t, Configuration::listener(s, clue), alpha);
      const auto want = oracle_pragmatic_listener(t, s, clue, alpha);
      ASSERT_EQ(got.probs.size(), want.size());
      for (std::size_t i = 0; i < want.size(); ++i) EXPECT_NEAR(got.probs[i], want[i], 1e-13);
    }
  }
}

TEST(Agents, SupportOrderFollowsScenario) {
  const auto lex = make_lexicon(3, 2);
  const auto t = make_table(lex, make_matrix(3, 2, {0.9, 0.1, 0.5, 0.5, 0.2, 0.8}));
  const Scenario s{{0, 1, 2}, {0, 1}};
  const auto l = literal_listener(t, Configuration::listener(s, 0));
  ASSERT_EQ(l.support.size(), 3u);
  EXPECT_EQ(std::get<NounPair>(l.support[0]), (NounPair{0, 1}));
  EXPECT_EQ(std::get<NounPair>(l.support[2]), (NounPair{1, 2}));
  // 0.45, 0.18, 0.10 over 0.73
  EXPECT_NEAR(l.probs[0], 0.45 / 0.73, 1e-15);
  const auto sp = literal_speaker(t, Configuration::speaker(s, {0, 2}));
  EXPECT_EQ(std::get<std::size_t>(sp.support[1]), 1u);
  EXPECT_NEAR(sp.probs[0], 0.18 / 0.26, 1e-15);
}

TEST(Agents, PredictDispatchAndRoleCheck) {
  const auto lex = make_lexicon(3, 2);
  AssociationSet set(lex);
  set.add("bigram", make_table(lex, make_matrix(3, 2, {0.9, 0.1, 0.5, 0.5, 0.2, 0.8})));
  const Scenario s{{0, 1, 2}, {0, 1}};
  const auto listener = Configuration::listener(s, 1);
  const auto speaker = Configuration::speaker(s, {1, 2});

  EXPECT_EQ(predict(set, listener, parse_model_spec("bigram:pragmatic:5", Role::listener)).probs,
            pragmatic_listener(set.at("bigram"), listener, 5.0).probs);
  EXPECT_EQ(predict(set, speaker, parse_model_spec("bigram:literal", Role::speaker)).probs,
            literal_speaker(set.at("bigram"), speaker).probs);
  EXPECT_THROW(predict(set, listener, parse_model_spec("bigram:literal", Role::speaker)),
               DomainError);
  EXPECT_THROW(predict(set, listener, parse_model_spec("cosine:literal", Role::listener)),
               DomainError);

  const auto u = predict(set, speaker, parse_model_spec("uniform:literal", Role::speaker));
  EXPECT_EQ(u.probs, (std::vector<double>{0.5, 0.5}));
}

TEST(Agents, FlooredCellsStayPositive) {
  const auto lex = make_lexicon(3, 2);
  auto t = make_table(lex, make_matrix(3, 2, {kZeroFloor, 1, kZeroFloor, 1, 1, kZeroFloor}));
  const Scenario s{{0, 1, 2}, {0, 1}};
  for (double alpha : {0.1, 1.0, 5.0}) {
    const auto l1 = pragmatic_listener(t, Configuration::listener(s, 0), alpha);
    for (double p : l1.probs) EXPECT_GT(p, 0.0);
    EXPECT_NEAR(std::accumulate(l1.probs.begin(), l1.probs.end(), 0.0), 1.0, 1e-12);
  }
}

}  // namespace
}  // namespace refgame
