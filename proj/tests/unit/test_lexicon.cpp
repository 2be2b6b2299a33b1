#include <gtest/gtest.h>

#include <sstream>

#include "refgame/error.hpp"
#include "refgame/lexicon.hpp"
#include "synthetic.hpp"

namespace refgame {
namespace {

Lexicon two_by_two() { return Lexicon::create({"heart", "phone"}, {"empty", "loud"}); }

TEST(Lexicon, LowercasesAndIndexes) {
  const auto lex = Lexicon::create({"Heart", "PHONE"}, {"Empty"});
  EXPECT_EQ(lex.nouns(), (std::vector<std::string>{"heart", "phone"}));
  EXPECT_EQ(lex.noun_index("phone"), 1u);
  EXPECT_EQ(lex.adjective_index("empty"), 0u);
  EXPECT_FALSE(lex.noun_index("empty"));
  EXPECT_TRUE(lex.contains("heart"));
  EXPECT_FALSE(lex.contains("river"));
}

TEST(Lexicon, RejectsBadVocabularies) {
  EXPECT_THROW(Lexicon::create({}, {"a"}), DomainError);
  EXPECT_THROW(Lexicon::create({"n"}, {}), DomainError);
  EXPECT_THROW(Lexicon::create({"heart", "Heart"}, {"a"}), DomainError);
  EXPECT_THROW(Lexicon::create({"heart"}, {"heart"}), DomainError);
  EXPECT_THROW(Lexicon::create({"red heart"}, {"a"}), DomainError);
}

TEST(Lexicon, LoadsSectionsAndComments) {
  std::istringstream in("# comment\n[nouns]\nheart  # trailing\nphone\n\n[adjectives]\nempty\n");
  const auto lex = load_lexicon(in);
  EXPECT_EQ(lex.noun_count(), 2u);
  EXPECT_EQ(lex.adjectives(), (std::vector<std::string>{"empty"}));
}

TEST(Lexicon, EmptySectionMessage) {
  std::istringstream in("[nouns]\n[adjectives]\nempty\n");
  try {
    load_lexicon(in);
    FAIL();
  } catch (const DomainError& e) {
    EXPECT_STREQ(e.what(), "empty section: nouns");
  }
}

TEST(Lexicon, WordOutsideSection) {
  std::istringstream in("heart\n[nouns]\nphone\n[adjectives]\nempty\n");
  EXPECT_THROW(load_lexicon(in), DomainError);
}

TEST(Lexicon, RoundTrip) {
  const auto lex = two_by_two();
  std::ostringstream out;
  write_lexicon(out, lex);
  std::istringstream in(out.str());
  EXPECT_EQ(load_lexicon(in), lex);
}

TEST(Lexicon, MissingFileIsIoError) {
  try {
    load_lexicon(std::filesystem::path("/nonexistent/lexicon.txt"));
    FAIL();
  } catch (const IoError& e) {
    EXPECT_NE(std::string(e.what()).find("no such input"), std::string::npos);
  }
}

TEST(Counts, LoadsAlignedAndCountsIgnoredWords) {
  const auto lex = two_by_two();
  std::istringstream in("# source: corpus\n\tloud\tempty\textra\nphone\t4\t1\t9\nheart\t2\t3\t9\nriver\t1\t1\t1\n");
  IngestWarnings warnings;
  const auto counts = load_counts(in, lex, {}, &warnings);
  EXPECT_EQ(counts.source, "corpus");
  EXPECT_EQ(counts.z(0, 0), 3u);
  EXPECT_EQ(counts.z(0, 1), 2u);
  EXPECT_EQ(counts.z(1, 0), 1u);
  EXPECT_EQ(counts.z(1, 1), 4u);
  EXPECT_EQ(warnings.ignored_words, 2u);
}

TEST(Counts, RejectsMalformedCells) {
  const auto lex = two_by_two();
  for (const char* bad : {"-1", "1.5", "x", "99999999999999999999999"}) {
    std::istringstream in(std::string("\tempty\tloud\nheart\t") + bad + "\t1\nphone\t1\t1\n");
    EXPECT_THROW(load_counts(in, lex), DomainError) << bad;
  }
}

TEST(Counts, MissingWordIsReported) {
  const auto lex = two_by_two();
  std::istringstream in("\tempty\tloud\nheart\t1\t1\n");
  try {
    load_counts(in, lex);
    FAIL();
  } catch (const DomainError& e) {
    EXPECT_STREQ(e.what(), "noun 'phone' absent");
  }
}

TEST(Counts, RoundTrip) {
  const auto lex = two_by_two();
  CooccurrenceCounts counts{Matrix<std::uint64_t>(2, 2), "web"};
  counts.z(0, 1) = 18446744073709551615ull;
  counts.z(1, 0) = 7;
  std::ostringstream out;
  write_counts(out, counts, lex);
  std::istringstream in(out.str());
  EXPECT_EQ(load_counts(in, lex), counts);
}

TEST(Counts, SourceDefaultsToFileStem) {
  const auto lex = refgame::testing::make_lexicon(2, 2);
  refgame::testing::TempDir dir("counts");
  {
    std::ofstream out(dir / "wiki.tsv");
    out << "\ta0\ta1\nn0\t1\t2\nn1\t3\t4\n";
  }
  EXPECT_EQ(load_counts(dir / "wiki.tsv", *lex).source, "wiki");
}

TEST(Embeddings, LoadAndValidate) {
  const auto lex = two_by_two();
  std::istringstream in("heart 1 0\nphone 0 1\nempty 1 1\nloud 0.5 0.5\nriver 1 1\n");
  IngestWarnings warnings;
  const auto table = load_embeddings(in, lex, &warnings);
  EXPECT_EQ(table.dimension, 2u);
  EXPECT_EQ(warnings.ignored_words, 1u);

  std::istringstream ragged("heart 1 0\nphone 0 1 2\nempty 1 1\nloud 1 1\n");
  EXPECT_THROW(load_embeddings(ragged, lex), DomainError);
  std::istringstream zero("heart 0 0\nphone 0 1\nempty 1 1\nloud 1 1\n");
  EXPECT_THROW(load_embeddings(zero, lex), DomainError);
  std::istringstream missing("heart 1 0\nphone 0 1\nempty 1 1\n");
  EXPECT_THROW(load_embeddings(missing, lex), DomainError);
}

TEST(Topics, SumCheckAndRenormalization) {
  const auto lex = two_by_two();
  std::istringstream in("heart 0.5 0.5\nphone 1 0\nempty 0.2 0.8\nloud 0.3333333 0.6666667\n");
  const auto table = load_topics(in, lex);
  EXPECT_NEAR(table.distributions.at("loud")[0] + table.distributions.at("loud")[1], 1.0, 1e-15);

  std::istringstream bad("heart 0.5 0.4\nphone 1 0\nempty 0.2 0.8\nloud 0.5 0.5\n");
  try {
    load_topics(bad, lex);
    FAIL();
  } catch (const DomainError& e) {
    EXPECT_STREQ(e.what(), "distribution for 'heart' sums to 0.9");
  }
}

TEST(Relatedness, LoadsScores) {
  const auto lex = two_by_two();
  std::istringstream in("\tempty\tloud\nheart\t0.5\t0\nphone\t2\t1\n");
  const auto table = load_relatedness(in, lex);
  EXPECT_DOUBLE_EQ(table.scores(1, 0), 2.0);
  std::ostringstream out;
  write_relatedness(out, table, lex);
  std::istringstream back(out.str());
  EXPECT_EQ(load_relatedness(back, lex), table);
}

}  // namespace
}  // namespace refgame
