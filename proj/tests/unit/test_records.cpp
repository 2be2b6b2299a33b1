#include <gtest/gtest.h>

#include <sstream>

#include "refgame/error.hpp"
#include "refgame/records.hpp"
#include "synthetic.hpp"

namespace refgame {
namespace {

Lexicon words() {
  return Lexicon::create({"heart", "phone", "river", "moon"}, {"empty", "loud", "cold"});
}

TEST(Records, ConfigurationRoundTrip) {
  const auto lex = words();
  const Scenario s{{3, 0, 2}, {1, 2}};
  const std::vector<Configuration> configs{Configuration::speaker(s, {0, 2}),
                                           Configuration::listener(s, 1)};
  std::ostringstream out;
  write_configurations(out, configs, lex);
  std::istringstream in(out.str());
  EXPECT_EQ(read_configurations(in, lex), configs);
  EXPECT_NE(out.str().find("\"target_pair\":[\"moon\",\"river\"]"), std::string::npos);
}

TEST(Records, TargetPairOrderDoesNotMatter) {
  const auto lex = words();
  std::istringstream in(
      "{\"role\":\"speaker\",\"scenario\":{\"nouns\":[\"heart\",\"phone\",\"river\"],"
      "\"adjectives\":[\"cold\"]},\"target_pair\":[\"river\",\"heart\"]}\n");
  const auto configs = read_configurations(in, lex);
  ASSERT_EQ(configs.size(), 1u);
  EXPECT_EQ(configs[0].target(), (NounPair{0, 2}));
}

TEST(Records, ErrorsCarryLineNumbers) {
  const auto lex = words();
  std::istringstream in(
      "# header\n"
      "{\"role\":\"listener\",\"scenario\":{\"nouns\":[\"heart\",\"phone\"],\"adjectives\":[\"cold\"]},\"clue\":\"cold\"}\n"
      "{\"role\":\"listener\",\"scenario\":{\"nouns\":[\"heart\",\"tiger\"],\"adjectives\":[\"cold\"]},\"clue\":\"cold\"}\n");
  try {
    read_configurations(in, lex);
    FAIL();
  } catch (const DomainError& e) {
    EXPECT_STREQ(e.what(), "record 3: unknown noun 'tiger'");
  }
  std::istringstream broken("{not json\n");
  EXPECT_THROW(read_configurations(broken, lex), DomainError);
  std::istringstream off_scenario(
      "{\"role\":\"listener\",\"scenario\":{\"nouns\":[\"heart\",\"phone\"],\"adjectives\":[\"cold\"]},\"clue\":\"loud\"}\n");
  EXPECT_THROW(read_configurations(off_scenario, lex), DomainError);
}

TEST(Records, ScenariosFromAnyRecordKind) {
  const auto lex = words();
  const Scenario s{{0, 1, 2}, {0, 1, 2}};
  std::ostringstream out;
  write_configurations(out, std::vector<Configuration>{Configuration::listener(s, 0)}, lex);
  write_scenarios(out, std::vector<Scenario>{s}, lex);
  std::istringstream in(out.str());
  EXPECT_EQ(read_scenarios(in, lex), (std::vector<Scenario>{s, s}));
}

TEST(Records, CandidateRoundTripIsExact) {
  const auto lex = words();
  const Scenario s{{0, 1, 2}, {0, 1}};
  const std::vector<DesignCandidate> candidates{
      {s, std::nullopt, 0.1 + 0.2},
      {s, Configuration::listener(s, 1), 1.0 / 3.0},
      {s, Configuration::speaker(s, {1, 2}), 0.0}};
  std::ostringstream out;
  write_candidates(out, candidates, lex);
  std::istringstream in(out.str());
  EXPECT_EQ(read_candidates(in, lex), candidates);
}

TEST(Records, ResponsesParseAnswerMap) {
  const auto lex = words();
  std::istringstream in(
      "{\"role\":\"listener\",\"clue\":\"empty\",\"scenario\":{\"nouns\":[\"heart\",\"phone\",\"moon\"],"
      "\"adjectives\":[\"empty\",\"cold\"]},\"answers\":{\"heart+phone\":3,\"moon+phone\":2},"
      "\"confidence\":[4,5]}\n");
  const auto responses = read_responses(in, lex);
  ASSERT_EQ(responses.size(), 1u);
  EXPECT_EQ(responses[0].counts, (std::vector<std::uint64_t>{3, 0, 2}));
  EXPECT_EQ(responses[0].confidences, (std::vector<int>{4, 5}));

  std::ostringstream out;
  write_responses(out, responses, lex);
  std::istringstream back(out.str());
  const auto again = read_responses(back, lex);
  EXPECT_EQ(again[0].counts, responses[0].counts);
  EXPECT_EQ(again[0].configuration, responses[0].configuration);
}

TEST(Records, ResponseValidation) {
  const auto lex = words();
  const std::string scenario =
      "\"scenario\":{\"nouns\":[\"heart\",\"phone\"],\"adjectives\":[\"empty\",\"cold\"]}";
  std::istringstream unknown("{\"role\":\"speaker\",\"target_pair\":[\"heart\",\"phone\"]," +
                             scenario + ",\"answers\":{\"loud\":1},\"confidence\":[3]}\n");
  EXPECT_THROW(read_responses(unknown, lex), DomainError);
  std::istringstream rating("{\"role\":\"speaker\",\"target_pair\":[\"heart\",\"phone\"]," +
                            scenario + ",\"answers\":{\"cold\":1},\"confidence\":[9]}\n");
  EXPECT_THROW(read_responses(rating, lex), DomainError);
}

TEST(Records, AnswerLabel) {
  const auto lex = words();
  const Scenario s{{2, 0}, {1}};
  EXPECT_EQ(answer_label(Answer{NounPair{0, 1}}, s, lex), "river+heart");
  EXPECT_EQ(answer_label(Answer{std::size_t{0}}, s, lex), "loud");
}

}  // namespace
}  // namespace refgame
