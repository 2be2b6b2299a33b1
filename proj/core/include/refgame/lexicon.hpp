#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "refgame/matrix.hpp"

namespace refgame {

// The ordered noun (codename) and adjective (clue) vocabularies that every
// association table indexes into. Words are lowercase, unique across both
// lists and contain no whitespace.
class Lexicon {
 public:
  // Lowercases every word and validates; throws DomainError on duplicates,
  // empty lists or words with whitespace.
  static Lexicon create(std::vector<std::string> nouns, std::vector<std::string> adjectives);

  const std::vector<std::string>& nouns() const { return nouns_; }
  const std::vector<std::string>& adjectives() const { return adjectives_; }
  std::size_t noun_count() const { return nouns_.size(); }
  std::size_t adjective_count() const { return adjectives_.size(); }

  std::optional<std::size_t> noun_index(std::string_view word) const;
  std::optional<std::size_t> adjective_index(std::string_view word) const;
  bool contains(std::string_view word) const;

  bool operator==(const Lexicon& other) const {
    return nouns_ == other.nouns_ && adjectives_ == other.adjectives_;
  }

 private:
  Lexicon() = default;

  std::vector<std::string> nouns_;
  std::vector<std::string> adjectives_;
  std::unordered_map<std::string, std::size_t> noun_lookup_;
  std::unordered_map<std::string, std::size_t> adjective_lookup_;
};

// Lowercase ASCII letters; other bytes (including UTF-8 sequences) are kept.
std::string to_lower(std::string_view word);

// Bigram co-occurrence counts z(n, a); rows follow Lexicon nouns, columns
// Lexicon adjectives.
struct CooccurrenceCounts {
  Matrix<std::uint64_t> z;
  std::string source;

  bool operator==(const CooccurrenceCounts&) const = default;
};

struct EmbeddingTable {
  std::size_t dimension = 0;
  std::map<std::string, std::vector<double>> vectors;

  bool operator==(const EmbeddingTable&) const = default;
};

// Knowledge-graph relatedness scores; higher means more related.
struct RelatednessTable {
  Matrix<double> scores;

  bool operator==(const RelatednessTable&) const = default;
};

// Per-word distributions over topics.
struct TopicTable {
  std::size_t topic_count = 0;
  std::map<std::string, std::vector<double>> distributions;

  bool operator==(const TopicTable&) const = default;
};

// Resource words that are not in the lexicon are skipped and counted here.
struct IngestWarnings {
  std::size_t ignored_words = 0;
};

Lexicon load_lexicon(std::istream& in);
Lexicon load_lexicon(const std::filesystem::path& path);

CooccurrenceCounts load_counts(std::istream& in, const Lexicon& lexicon,
                               std::string source = {}, IngestWarnings* warnings = nullptr);
CooccurrenceCounts load_counts(const std::filesystem::path& path, const Lexicon& lexicon,
                               IngestWarnings* warnings = nullptr);

EmbeddingTable load_embeddings(std::istream& in, const Lexicon& lexicon,
                               IngestWarnings* warnings = nullptr);
EmbeddingTable load_embeddings(const std::filesystem::path& path, const Lexicon& lexicon,
                               IngestWarnings* warnings = nullptr);

RelatednessTable load_relatedness(std::istream& in, const Lexicon& lexicon,
                                  IngestWarnings* warnings = nullptr);
RelatednessTable load_relatedness(const std::filesystem::path& path, const Lexicon& lexicon,
                                  IngestWarnings* warnings = nullptr);

TopicTable load_topics(std::istream& in, const Lexicon& lexicon,
                       IngestWarnings* warnings = nullptr);
TopicTable load_topics(const std::filesystem::path& path, const Lexicon& lexicon,
                       IngestWarnings* warnings = nullptr);

void write_lexicon(std::ostream& out, const Lexicon& lexicon);
void write_counts(std::ostream& out, const CooccurrenceCounts& counts, const Lexicon& lexicon);
void write_relatedness(std::ostream& out, const RelatednessTable& table, const Lexicon& lexicon);
void write_embeddings(std::ostream& out, const EmbeddingTable& table);
void write_topics(std::ostream& out, const TopicTable& table);

// Opens `path` for reading; throws IoError("no such input: ...") if absent.
std::ifstream open_input(const std::filesystem::path& path);

}  // namespace refgame
