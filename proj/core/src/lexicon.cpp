#include "refgame/lexicon.hpp"

#include <charconv>
#include <cmath>
#include <istream>
#include <ostream>
#include <unordered_set>

#include "refgame/error.hpp"
#include "refgame/format.hpp"
#include "tsv.hpp"

namespace refgame {

namespace {

bool has_whitespace(std::string_view word) {
  return word.find_first_of(" \t\r\n\v\f") != std::string_view::npos;
}

std::string cell_context(const std::string& row, const std::string& column) {
  return "row '" + row + "', column '" + column + "'";
}

std::uint64_t parse_count(const std::string& cell, const std::string& row,
                          const std::string& column) {
  if (!cell.empty() && cell.front() == '-') {
    throw DomainError("negative count '" + cell + "' at " + cell_context(row, column));
  }
  std::uint64_t value = 0;
  const char* last = cell.data() + cell.size();
  auto [ptr, ec] = std::from_chars(cell.data(), last, value);
  if (ec == std::errc::result_out_of_range) {
    throw DomainError("count '" + cell + "' overflows 64 bits at " + cell_context(row, column));
  }
  if (ec != std::errc{} || ptr != last || cell.empty()) {
    throw DomainError("non-integer count '" + cell + "' at " + cell_context(row, column));
  }
  return value;
}

}  // namespace

std::string to_lower(std::string_view word) {
  std::string out(word);
  for (auto& ch : out) {
    if (ch >= 'A' && ch <= 'Z') ch = static_cast<char>(ch - 'A' + 'a');
  }
  return out;
}

Lexicon Lexicon::create(std::vector<std::string> nouns, std::vector<std::string> adjectives) {
  if (nouns.empty()) throw DomainError("empty section: nouns");
  if (adjectives.empty()) throw DomainError("empty section: adjectives");

  Lexicon lexicon;
  auto intake = [](std::vector<std::string>& words,
                   std::unordered_map<std::string, std::size_t>& lookup) {
    for (std::size_t i = 0; i < words.size(); ++i) {
      words[i] = to_lower(words[i]);
      if (words[i].empty()) throw DomainError("empty word");
      if (has_whitespace(words[i])) {
        throw DomainError("word '" + words[i] + "' contains whitespace");
      }
      if (!lookup.emplace(words[i], i).second) {
        throw DomainError("duplicate word '" + words[i] + "'");
      }
    }
  };
  intake(nouns, lexicon.noun_lookup_);
  intake(adjectives, lexicon.adjective_lookup_);
  for (const auto& adjective : adjectives) {
    if (lexicon.noun_lookup_.contains(adjective)) {
      throw DomainError("duplicate across sections: '" + adjective + "'");
    }
  }
  lexicon.nouns_ = std::move(nouns);
  lexicon.adjectives_ = std::move(adjectives);
  return lexicon;
}

std::optional<std::size_t> Lexicon::noun_index(std::string_view word) const {
  const auto it = noun_lookup_.find(std::string(word));
  if (it == noun_lookup_.end()) return std::nullopt;
  return it->second;
}

std::optional<std::size_t> Lexicon::adjective_index(std::string_view word) const {
  const auto it = adjective_lookup_.find(std::string(word));
  if (it == adjective_lookup_.end()) return std::nullopt;
  return it->second;
}

bool Lexicon::contains(std::string_view word) const {
  return noun_index(word).has_value() || adjective_index(word).has_value();
}

std::ifstream open_input(const std::filesystem::path& path) {
  std::error_code ec;
  if (!std::filesystem::is_regular_file(path, ec)) {
    throw IoError("no such input: " + path.string());
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  return in;
}

Lexicon load_lexicon(std::istream& in) {
  enum class Section { none, nouns, adjectives };
  Section section = Section::none;
  bool saw_nouns = false;
  bool saw_adjectives = false;
  std::vector<std::string> nouns;
  std::vector<std::string> adjectives;

  std::string line;
  std::size_t line_number = 0;
  while (std::getline(in, line)) {
    ++line_number;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    const auto text = detail::trim(line);
    if (text.empty()) continue;
    const auto lowered = to_lower(text);
    if (lowered == "[nouns]") {
      if (saw_nouns) throw DomainError("section [nouns] appears twice");
      section = Section::nouns;
      saw_nouns = true;
      continue;
    }
    if (lowered == "[adjectives]") {
      if (saw_adjectives) throw DomainError("section [adjectives] appears twice");
      section = Section::adjectives;
      saw_adjectives = true;
      continue;
    }
    if (lowered.front() == '[') throw DomainError("unknown section " + text);
    if (has_whitespace(text)) {
      throw DomainError("line " + std::to_string(line_number) + ": word '" + text +
                        "' contains whitespace");
    }
    switch (section) {
      case Section::nouns:
        nouns.push_back(lowered);
        break;
      case Section::adjectives:
        adjectives.push_back(lowered);
        break;
      case Section::none:
        throw DomainError("line " + std::to_string(line_number) + ": word '" + text +
                          "' outside [nouns]/[adjectives]");
    }
  }
  return Lexicon::create(std::move(nouns), std::move(adjectives));
}

Lexicon load_lexicon(const std::filesystem::path& path) {
  auto in = open_input(path);
  return load_lexicon(in);
}

CooccurrenceCounts load_counts(std::istream& in, const Lexicon& lexicon, std::string source,
                               IngestWarnings* warnings) {
  const auto tsv = detail::read_tsv_matrix(in);
  if (source.empty()) {
    for (const auto& comment : tsv.comments) {
      if (comment.rfind("source:", 0) == 0) source = detail::trim(comment.substr(7));
    }
  }
  const auto alignment = detail::align(tsv, lexicon, warnings);
  CooccurrenceCounts counts;
  counts.z = detail::aligned_values<std::uint64_t>(tsv, alignment, lexicon, parse_count);
  counts.source = std::move(source);
  return counts;
}

CooccurrenceCounts load_counts(const std::filesystem::path& path, const Lexicon& lexicon,
                               IngestWarnings* warnings) {
  auto in = open_input(path);
  auto counts = load_counts(in, lexicon, {}, warnings);
  if (counts.source.empty()) counts.source = path.stem().string();
  return counts;
}

EmbeddingTable load_embeddings(std::istream& in, const Lexicon& lexicon,
                               IngestWarnings* warnings) {
  EmbeddingTable table;
  for (auto& line : detail::read_vector_lines(in, lexicon, warnings)) {
    if (table.dimension == 0) table.dimension = line.values.size();
    if (line.values.size() != table.dimension) {
      throw DomainError("vector for '" + line.word + "' has " +
                        std::to_string(line.values.size()) + " entries, expected " +
                        std::to_string(table.dimension));
    }
    double norm2 = 0.0;
    for (double v : line.values) norm2 += v * v;
    if (norm2 == 0.0) throw DomainError("zero-norm vector for '" + line.word + "'");
    table.vectors.emplace(std::move(line.word), std::move(line.values));
  }
  for (const auto* words : {&lexicon.nouns(), &lexicon.adjectives()}) {
    for (const auto& word : *words) {
      if (!table.vectors.contains(word)) throw DomainError("word '" + word + "' absent");
    }
  }
  return table;
}

EmbeddingTable load_embeddings(const std::filesystem::path& path, const Lexicon& lexicon,
                               IngestWarnings* warnings) {
  auto in = open_input(path);
  return load_embeddings(in, lexicon, warnings);
}

RelatednessTable load_relatedness(std::istream& in, const Lexicon& lexicon,
                                  IngestWarnings* warnings) {
  const auto tsv = detail::read_tsv_matrix(in);
  const auto alignment = detail::align(tsv, lexicon, warnings);
  RelatednessTable table;
  table.scores = detail::aligned_values<double>(
      tsv, alignment, lexicon,
      [](const std::string& cell, const std::string& row, const std::string& column) {
        return parse_double(cell, cell_context(row, column));
      });
  return table;
}

RelatednessTable load_relatedness(const std::filesystem::path& path, const Lexicon& lexicon,
                                  IngestWarnings* warnings) {
  auto in = open_input(path);
  return load_relatedness(in, lexicon, warnings);
}

TopicTable load_topics(std::istream& in, const Lexicon& lexicon, IngestWarnings* warnings) {
  TopicTable table;
  for (auto& line : detail::read_vector_lines(in, lexicon, warnings)) {
    if (table.topic_count == 0) table.topic_count = line.values.size();
    if (line.values.size() != table.topic_count) {
      throw DomainError("distribution for '" + line.word + "' has " +
                        std::to_string(line.values.size()) + " topics, expected " +
                        std::to_string(table.topic_count));
    }
    double sum = 0.0;
    for (double v : line.values) {
      if (v < 0.0) throw DomainError("negative topic weight for '" + line.word + "'");
      sum += v;
    }
    if (std::abs(sum - 1.0) > 1e-6) {
      throw DomainError("distribution for '" + line.word + "' sums to " + format_double(sum, 6));
    }
    for (double& v : line.values) v /= sum;
    table.distributions.emplace(std::move(line.word), std::move(line.values));
  }
  for (const auto* words : {&lexicon.nouns(), &lexicon.adjectives()}) {
    for (const auto& word : *words) {
      if (!table.distributions.contains(word)) throw DomainError("word '" + word + "' absent");
    }
  }
  return table;
}

TopicTable load_topics(const std::filesystem::path& path, const Lexicon& lexicon,
                       IngestWarnings* warnings) {
  auto in = open_input(path);
  return load_topics(in, lexicon, warnings);
}

void write_lexicon(std::ostream& out, const Lexicon& lexicon) {
  out << "[nouns]\n";
  for (const auto& noun : lexicon.nouns()) out << noun << '\n';
  out << "[adjectives]\n";
  for (const auto& adjective : lexicon.adjectives()) out << adjective << '\n';
}

void write_counts(std::ostream& out, const CooccurrenceCounts& counts, const Lexicon& lexicon) {
  std::vector<std::string> comments;
  if (!counts.source.empty()) comments.push_back("source: " + counts.source);
  detail::write_tsv_matrix(out, comments, lexicon, [&](std::size_t n, std::size_t a) {
    return std::to_string(counts.z(n, a));
  });
}

void write_relatedness(std::ostream& out, const RelatednessTable& table, const Lexicon& lexicon) {
  detail::write_tsv_matrix(out, {}, lexicon, [&](std::size_t n, std::size_t a) {
    return format_double(table.scores(n, a));
  });
}

namespace {

void write_vectors(std::ostream& out, const std::map<std::string, std::vector<double>>& vectors) {
  for (const auto& [word, values] : vectors) {
    out << word;
    for (double v : values) out << ' ' << format_double(v);
    out << '\n';
  }
}

}  // namespace

void write_embeddings(std::ostream& out, const EmbeddingTable& table) {
  write_vectors(out, table.vectors);
}

void write_topics(std::ostream& out, const TopicTable& table) {
  write_vectors(out, table.distributions);
}

}  // namespace refgame
