#pragma once

#include <cstddef>
#include <functional>
#include <iosfwd>
#include <limits>
#include <string>
#include <vector>

#include "refgame/lexicon.hpp"
#include "refgame/matrix.hpp"

namespace refgame::detail {

inline constexpr std::size_t kUnmapped = std::numeric_limits<std::size_t>::max();

// A labelled matrix as it appears on disk. Labels are lowercased.
struct TsvMatrix {
  std::vector<std::string> comments;  // text after "#", leading space stripped
  std::vector<std::string> column_labels;
  std::vector<std::string> row_labels;
  std::vector<std::vector<std::string>> cells;
};

TsvMatrix read_tsv_matrix(std::istream& in);

// File row/column position -> lexicon noun/adjective index (kUnmapped when
// the word is not in the lexicon).
struct Alignment {
  std::vector<std::size_t> row_to_noun;
  std::vector<std::size_t> column_to_adjective;
};

// Throws DomainError naming the first lexicon word the file does not cover;
// counts labels outside the lexicon in `warnings`.
Alignment align(const TsvMatrix& tsv, const Lexicon& lexicon, IngestWarnings* warnings);

template <typename T, typename Parse>
Matrix<T> aligned_values(const TsvMatrix& tsv, const Alignment& alignment, const Lexicon& lexicon,
                         Parse parse) {
  Matrix<T> out(lexicon.noun_count(), lexicon.adjective_count());
  for (std::size_t r = 0; r < tsv.row_labels.size(); ++r) {
    const std::size_t noun = alignment.row_to_noun[r];
    if (noun == kUnmapped) continue;
    for (std::size_t c = 0; c < tsv.column_labels.size(); ++c) {
      const std::size_t adjective = alignment.column_to_adjective[c];
      if (adjective == kUnmapped) continue;
      out(noun, adjective) = parse(tsv.cells[r][c], tsv.row_labels[r], tsv.column_labels[c]);
    }
  }
  return out;
}

// Writes comment lines, the header row and one row per noun.
void write_tsv_matrix(std::ostream& out, const std::vector<std::string>& comments,
                      const Lexicon& lexicon,
                      const std::function<std::string(std::size_t, std::size_t)>& cell);

// Whitespace-separated "word v1 v2 ..." lines for lexicon words only.
struct VectorLine {
  std::string word;
  std::vector<double> values;
};
std::vector<VectorLine> read_vector_lines(std::istream& in, const Lexicon& lexicon,
                                          IngestWarnings* warnings);

std::string trim(const std::string& text);
std::vector<std::string> split(const std::string& text, char delimiter);

}  // namespace refgame::detail
