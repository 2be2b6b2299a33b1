#include "tsv.hpp"

#include <istream>
#include <ostream>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

#include "refgame/error.hpp"
#include "refgame/format.hpp"

namespace refgame::detail {

std::string trim(const std::string& text) {
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first == std::string::npos) return {};
  const auto last = text.find_last_not_of(" \t\r\n");
  return text.substr(first, last - first + 1);
}

std::vector<std::string> split(const std::string& text, char delimiter) {
  std::vector<std::string> parts;
  std::string::size_type start = 0;
  while (true) {
    const auto pos = text.find(delimiter, start);
    if (pos == std::string::npos) {
      parts.push_back(text.substr(start));
      return parts;
    }
    parts.push_back(text.substr(start, pos - start));
    start = pos + 1;
  }
}

TsvMatrix read_tsv_matrix(std::istream& in) {
  TsvMatrix tsv;
  bool have_header = false;
  std::unordered_set<std::string> seen_rows;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (trim(line).empty()) continue;
    if (line.front() == '#') {
      std::string comment = line.substr(1);
      if (!comment.empty() && comment.front() == ' ') comment.erase(0, 1);
      tsv.comments.push_back(std::move(comment));
      continue;
    }
    auto fields = split(line, '\t');
    for (auto& field : fields) field = trim(field);
    if (!have_header) {
      if (!fields.front().empty()) {
        throw DomainError("matrix header must start with an empty cell, found '" +
                          fields.front() + "'");
      }
      std::unordered_set<std::string> seen;
      for (std::size_t i = 1; i < fields.size(); ++i) {
        auto label = to_lower(fields[i]);
        if (label.empty()) throw DomainError("empty column label in matrix header");
        if (!seen.insert(label).second) {
          throw DomainError("duplicate column label '" + label + "'");
        }
        tsv.column_labels.push_back(std::move(label));
      }
      have_header = true;
      continue;
    }
    auto label = to_lower(fields.front());
    if (label.empty()) throw DomainError("matrix row without a label");
    if (!seen_rows.insert(label).second) throw DomainError("duplicate row label '" + label + "'");
    if (fields.size() - 1 != tsv.column_labels.size()) {
      throw DomainError("row '" + label + "' has " + std::to_string(fields.size() - 1) +
                        " cells, expected " + std::to_string(tsv.column_labels.size()));
    }
    tsv.row_labels.push_back(std::move(label));
    tsv.cells.emplace_back(fields.begin() + 1, fields.end());
  }
  if (!have_header) throw DomainError("matrix file has no header row");
  return tsv;
}

Alignment align(const TsvMatrix& tsv, const Lexicon& lexicon, IngestWarnings* warnings) {
  Alignment alignment;
  std::size_t ignored = 0;
  std::vector<bool> noun_seen(lexicon.noun_count(), false);
  std::vector<bool> adjective_seen(lexicon.adjective_count(), false);

  for (const auto& label : tsv.row_labels) {
    const auto index = lexicon.noun_index(label);
    if (index) {
      noun_seen[*index] = true;
      alignment.row_to_noun.push_back(*index);
    } else {
      ++ignored;
      alignment.row_to_noun.push_back(kUnmapped);
    }
  }
  for (const auto& label : tsv.column_labels) {
    const auto index = lexicon.adjective_index(label);
    if (index) {
      adjective_seen[*index] = true;
      alignment.column_to_adjective.push_back(*index);
    } else {
      ++ignored;
      alignment.column_to_adjective.push_back(kUnmapped);
    }
  }
  for (std::size_t n = 0; n < noun_seen.size(); ++n) {
    if (!noun_seen[n]) throw DomainError("noun '" + lexicon.nouns()[n] + "' absent");
  }
  for (std::size_t a = 0; a < adjective_seen.size(); ++a) {
    if (!adjective_seen[a]) throw DomainError("adjective '" + lexicon.adjectives()[a] + "' absent");
  }
  if (warnings) warnings->ignored_words += ignored;
  return alignment;
}

void write_tsv_matrix(std::ostream& out, const std::vector<std::string>& comments,
                      const Lexicon& lexicon,
                      const std::function<std::string(std::size_t, std::size_t)>& cell) {
  for (const auto& comment : comments) out << "# " << comment << '\n';
  for (const auto& adjective : lexicon.adjectives()) out << '\t' << adjective;
  out << '\n';
  for (std::size_t n = 0; n < lexicon.noun_count(); ++n) {
    out << lexicon.nouns()[n];
    for (std::size_t a = 0; a < lexicon.adjective_count(); ++a) out << '\t' << cell(n, a);
    out << '\n';
  }
}

std::vector<VectorLine> read_vector_lines(std::istream& in, const Lexicon& lexicon,
                                          IngestWarnings* warnings) {
  std::vector<VectorLine> lines;
  std::unordered_set<std::string> seen;
  std::string line;
  std::size_t line_number = 0;
  while (std::getline(in, line)) {
    ++line_number;
    const auto text = trim(line);
    if (text.empty() || text.front() == '#') continue;
    std::istringstream tokens(text);
    std::string word;
    tokens >> word;
    word = to_lower(word);
    if (!lexicon.contains(word)) {
      if (warnings) ++warnings->ignored_words;
      continue;
    }
    if (!seen.insert(word).second) throw DomainError("duplicate vector for '" + word + "'");
    VectorLine parsed{word, {}};
    std::string token;
    while (tokens >> token) {
      parsed.values.push_back(
          parse_double(token, "line " + std::to_string(line_number) + " ('" + word + "')"));
    }
    if (parsed.values.empty()) throw DomainError("no values for '" + word + "'");
    lines.push_back(std::move(parsed));
  }
  return lines;
}

}  // namespace refgame::detail
