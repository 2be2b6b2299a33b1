#include "refgame/association.hpp"

#include <charconv>
#include <cmath>
#include <istream>
#include <limits>
#include <ostream>
#include <string>

#include "refgame/error.hpp"
#include "refgame/format.hpp"
#include "refgame/ranks.hpp"
#include "tsv.hpp"

namespace refgame {

std::string_view to_string(Metric metric) {
  switch (metric) {
    case Metric::bigram:
      return "bigram";
    case Metric::embedding_cosine:
      return "embedding-cosine";
    case Metric::graph_relatedness:
      return "graph-relatedness";
    case Metric::topic_distance:
      return "topic-distance";
  }
  return "unknown";
}

Metric parse_metric(std::string_view text) {
  for (auto metric : {Metric::bigram, Metric::embedding_cosine, Metric::graph_relatedness,
                      Metric::topic_distance}) {
    if (text == to_string(metric)) return metric;
  }
  throw DomainError("unknown metric '" + std::string(text) + "'");
}

namespace {

AssociationMatrix empty_matrix(Metric metric, std::shared_ptr<const Lexicon> lexicon) {
  if (!lexicon) throw DomainError("association matrix needs a lexicon");
  AssociationMatrix out;
  out.metric = metric;
  out.raw = Matrix<double>(lexicon->noun_count(), lexicon->adjective_count());
  out.zero_mask = Matrix<std::uint8_t>(lexicon->noun_count(), lexicon->adjective_count());
  out.lexicon = std::move(lexicon);
  return out;
}

void check_shape(std::size_t rows, std::size_t cols, const Lexicon& lexicon, const char* what) {
  if (rows != lexicon.noun_count() || cols != lexicon.adjective_count()) {
    throw DomainError(std::string(what) + " dimensions do not match the lexicon");
  }
}

std::uint64_t checked_add(std::uint64_t a, std::uint64_t b) {
  if (a > std::numeric_limits<std::uint64_t>::max() - b) {
    throw DomainError("count total overflows 64 bits");
  }
  return a + b;
}

const std::vector<double>& lookup(const std::map<std::string, std::vector<double>>& table,
                                  const std::string& word) {
  const auto it = table.find(word);
  if (it == table.end()) throw DomainError("word '" + word + "' absent");
  return it->second;
}

}  // namespace

AssociationMatrix bigram_association(const CooccurrenceCounts& counts,
                                     std::shared_ptr<const Lexicon> lexicon) {
  auto out = empty_matrix(Metric::bigram, std::move(lexicon));
  const auto& lex = *out.lexicon;
  const auto& z = counts.z;
  check_shape(z.rows(), z.cols(), lex, "count matrix");

  std::vector<std::uint64_t> row_totals(z.rows(), 0);
  std::vector<std::uint64_t> column_totals(z.cols(), 0);
  std::uint64_t total = 0;
  for (std::size_t n = 0; n < z.rows(); ++n) {
    for (std::size_t a = 0; a < z.cols(); ++a) {
      row_totals[n] = checked_add(row_totals[n], z(n, a));
      column_totals[a] = checked_add(column_totals[a], z(n, a));
    }
    total = checked_add(total, row_totals[n]);
    if (row_totals[n] == 0) {
      throw DomainError("noun '" + lex.nouns()[n] + "' has no observations");
    }
  }

  const auto total_d = static_cast<double>(total);
  for (std::size_t n = 0; n < z.rows(); ++n) {
    for (std::size_t a = 0; a < z.cols(); ++a) {
      if (z(n, a) == 0 || column_totals[a] == 0) {
        out.raw(n, a) = 0.0;
        out.zero_mask(n, a) = 1;
        continue;
      }
      const double p_a_given_n =
          static_cast<double>(z(n, a)) / static_cast<double>(row_totals[n]);
      const double p_a = static_cast<double>(column_totals[a]) / total_d;
      out.raw(n, a) = p_a_given_n / p_a;
    }
  }
  return out;
}

AssociationMatrix cosine_association(const EmbeddingTable& embeddings,
                                     std::shared_ptr<const Lexicon> lexicon) {
  auto out = empty_matrix(Metric::embedding_cosine, std::move(lexicon));
  const auto& lex = *out.lexicon;
  for (std::size_t n = 0; n < lex.noun_count(); ++n) {
    const auto& u = lookup(embeddings.vectors, lex.nouns()[n]);
    for (std::size_t a = 0; a < lex.adjective_count(); ++a) {
      const auto& v = lookup(embeddings.vectors, lex.adjectives()[a]);
      if (u.size() != v.size()) throw DomainError("embedding dimensions differ");
      double dot = 0.0, uu = 0.0, vv = 0.0;
      for (std::size_t i = 0; i < u.size(); ++i) {
        dot += u[i] * v[i];
        uu += u[i] * u[i];
        vv += v[i] * v[i];
      }
      if (uu == 0.0 || vv == 0.0) throw DomainError("zero-norm embedding vector");
      out.raw(n, a) = dot / std::sqrt(uu * vv);
    }
  }
  return out;
}

AssociationMatrix relatedness_association(const RelatednessTable& relatedness,
                                          std::shared_ptr<const Lexicon> lexicon) {
  auto out = empty_matrix(Metric::graph_relatedness, std::move(lexicon));
  check_shape(relatedness.scores.rows(), relatedness.scores.cols(), *out.lexicon,
              "relatedness table");
  out.raw = relatedness.scores;
  for (std::size_t n = 0; n < out.raw.rows(); ++n) {
    for (std::size_t a = 0; a < out.raw.cols(); ++a) {
      if (!std::isfinite(out.raw(n, a))) throw DomainError("non-finite relatedness score");
      out.zero_mask(n, a) = out.raw(n, a) == 0.0 ? 1 : 0;
    }
  }
  return out;
}

AssociationMatrix topic_association(const TopicTable& topics,
                                    std::shared_ptr<const Lexicon> lexicon) {
  auto out = empty_matrix(Metric::topic_distance, std::move(lexicon));
  const auto& lex = *out.lexicon;
  for (std::size_t n = 0; n < lex.noun_count(); ++n) {
    const auto& u = lookup(topics.distributions, lex.nouns()[n]);
    for (std::size_t a = 0; a < lex.adjective_count(); ++a) {
      const auto& v = lookup(topics.distributions, lex.adjectives()[a]);
      if (u.size() != v.size()) throw DomainError("topic counts differ");
      double d2 = 0.0;
      for (std::size_t i = 0; i < u.size(); ++i) d2 += (u[i] - v[i]) * (u[i] - v[i]);
      out.raw(n, a) = -std::sqrt(d2);
    }
  }
  return out;
}

NormalizedAssociation quantile_normalize(const AssociationMatrix& raw) {
  for (double v : raw.raw.values()) {
    if (!std::isfinite(v)) throw DomainError("association matrix has a non-finite entry");
  }
  NormalizedAssociation out;
  out.metric = raw.metric;
  out.lexicon = raw.lexicon;
  out.zero_mask = raw.zero_mask;
  out.values = Matrix<double>(raw.raw.rows(), raw.raw.cols());
  if (out.zero_mask.size() != raw.raw.size()) {
    out.zero_mask = Matrix<std::uint8_t>(raw.raw.rows(), raw.raw.cols());
  }

  const auto ranks = average_ranks(raw.raw.values());
  const auto cells = static_cast<double>(ranks.size());
  auto values = out.values.values();
  const auto mask = out.zero_mask.values();
  for (std::size_t i = 0; i < ranks.size(); ++i) {
    values[i] = mask[i] ? kZeroFloor : ranks[i] / cells;
  }
  return out;
}

double pair_association(const NormalizedAssociation& norm, std::size_t noun1, std::size_t noun2,
                        std::size_t adjective) {
  if (noun1 == noun2) throw DomainError("degenerate pair");
  if (noun1 >= norm.values.rows() || noun2 >= norm.values.rows() ||
      adjective >= norm.values.cols()) {
    throw DomainError("association index out of range");
  }
  return norm.values(noun1, adjective) * norm.values(noun2, adjective);
}

double sparsity_report(const NormalizedAssociation& norm,
                       std::span<const Configuration> configurations) {
  if (configurations.empty()) throw DomainError("sparsity report needs at least one configuration");
  std::size_t masked = 0;
  std::size_t referenced = 0;
  for (const auto& config : configurations) {
    const auto& scenario = config.scenario();
    for (auto n : scenario.nouns) {
      for (auto a : scenario.adjectives) {
        if (n >= norm.zero_mask.rows() || a >= norm.zero_mask.cols()) {
          throw DomainError("configuration references a cell outside the matrix");
        }
        masked += norm.zero_mask(n, a) ? 1 : 0;
        ++referenced;
      }
    }
  }
  return static_cast<double>(masked) / static_cast<double>(referenced);
}

namespace {

std::string mask_comment(const Matrix<std::uint8_t>& mask) {
  std::string text = "zero-mask:";
  bool first = true;
  for (std::size_t n = 0; n < mask.rows(); ++n) {
    for (std::size_t a = 0; a < mask.cols(); ++a) {
      if (!mask(n, a)) continue;
      text += first ? " " : ";";
      text += std::to_string(n) + "," + std::to_string(a);
      first = false;
    }
  }
  return text;
}

void write_any(std::ostream& out, Metric metric, const char* kind, const Lexicon& lexicon,
               const Matrix<double>& values, const Matrix<std::uint8_t>& mask) {
  const std::vector<std::string> comments = {"metric: " + std::string(to_string(metric)),
                                             std::string("kind: ") + kind, mask_comment(mask)};
  detail::write_tsv_matrix(out, comments, lexicon, [&](std::size_t n, std::size_t a) {
    return format_double(values(n, a));
  });
}

std::size_t parse_index(const std::string& text) {
  std::size_t value = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc{} || ptr != text.data() + text.size() || text.empty()) {
    throw DomainError("malformed zero-mask entry '" + text + "'");
  }
  return value;
}

}  // namespace

void write_association(std::ostream& out, const AssociationMatrix& matrix) {
  write_any(out, matrix.metric, "raw", *matrix.lexicon, matrix.raw, matrix.zero_mask);
}

void write_association(std::ostream& out, const NormalizedAssociation& matrix) {
  write_any(out, matrix.metric, "normalized", *matrix.lexicon, matrix.values, matrix.zero_mask);
}

AssociationMatrix read_association(std::istream& in, std::shared_ptr<const Lexicon> lexicon) {
  const auto tsv = detail::read_tsv_matrix(in);
  std::optional<Metric> metric;
  std::string mask_text;
  for (const auto& comment : tsv.comments) {
    if (comment.rfind("metric:", 0) == 0) metric = parse_metric(detail::trim(comment.substr(7)));
    if (comment.rfind("zero-mask:", 0) == 0) mask_text = detail::trim(comment.substr(10));
  }
  if (!metric) throw DomainError("association file lacks a '# metric:' line");
  if (!lexicon) {
    lexicon = std::make_shared<const Lexicon>(Lexicon::create(tsv.row_labels, tsv.column_labels));
  }

  auto out = empty_matrix(*metric, lexicon);
  const auto alignment = detail::align(tsv, *lexicon, nullptr);
  out.raw = detail::aligned_values<double>(
      tsv, alignment, *lexicon,
      [](const std::string& cell, const std::string& row, const std::string& column) {
        return parse_double(cell, "row '" + row + "', column '" + column + "'");
      });

  if (!mask_text.empty()) {
    for (const auto& entry : detail::split(mask_text, ';')) {
      const auto parts = detail::split(detail::trim(entry), ',');
      if (parts.size() != 2) throw DomainError("malformed zero-mask entry '" + entry + "'");
      const auto row = parse_index(parts[0]);
      const auto column = parse_index(parts[1]);
      if (row >= tsv.row_labels.size() || column >= tsv.column_labels.size()) {
        throw DomainError("zero-mask entry '" + entry + "' outside the matrix");
      }
      const auto noun = alignment.row_to_noun[row];
      const auto adjective = alignment.column_to_adjective[column];
      if (noun != detail::kUnmapped && adjective != detail::kUnmapped) {
        out.zero_mask(noun, adjective) = 1;
      }
    }
  }
  return out;
}

NormalizedAssociation read_normalized(std::istream& in, std::shared_ptr<const Lexicon> lexicon) {
  auto raw = read_association(in, std::move(lexicon));
  NormalizedAssociation out;
  out.metric = raw.metric;
  out.lexicon = raw.lexicon;
  out.values = std::move(raw.raw);
  out.zero_mask = std::move(raw.zero_mask);
  const auto values = out.values.values();
  const auto mask = out.zero_mask.values();
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (mask[i] ? values[i] != kZeroFloor : !(values[i] > 0.0 && values[i] <= 1.0)) {
      throw DomainError("value " + format_double(values[i]) +
                        " is not a normalized association; run normalize first");
    }
  }
  return out;
}

void AssociationSet::add(std::string label, NormalizedAssociation table) {
  if (!table.lexicon) throw DomainError("association table '" + label + "' has no lexicon");
  if (!lexicon_) {
    lexicon_ = table.lexicon;
  } else if (*lexicon_ != *table.lexicon) {
    throw DomainError("association table '" + label + "' uses a different lexicon");
  }
  if (tables_.contains(label)) throw DomainError("duplicate association label '" + label + "'");
  tables_.emplace(std::move(label), std::move(table));
}

const NormalizedAssociation& AssociationSet::at(std::string_view label) const {
  const auto it = tables_.find(label);
  if (it == tables_.end()) {
    throw DomainError("no association table for '" + std::string(label) + "'");
  }
  return it->second;
}

bool AssociationSet::contains(std::string_view label) const {
  return tables_.find(label) != tables_.end();
}

std::vector<std::string> AssociationSet::labels() const {
  std::vector<std::string> out;
  for (const auto& [label, table] : tables_) out.push_back(label);
  return out;
}

}  // namespace refgame
