#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <map>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "refgame/game.hpp"
#include "refgame/lexicon.hpp"
#include "refgame/matrix.hpp"

namespace refgame {

enum class Metric { bigram, embedding_cosine, graph_relatedness, topic_distance };

std::string_view to_string(Metric metric);
// Accepts "bigram", "embedding-cosine", "graph-relatedness", "topic-distance".
Metric parse_metric(std::string_view text);

// Value written into cells that held a raw zero (absent) association.
inline constexpr double kZeroFloor = 1e-7;

// Raw noun x adjective association strengths, oriented so that higher means
// stronger. zero_mask marks cells whose raw association is a zero count or an
// absent score; those are floored after normalization.
struct AssociationMatrix {
  Metric metric = Metric::bigram;
  std::shared_ptr<const Lexicon> lexicon;
  Matrix<double> raw;
  Matrix<std::uint8_t> zero_mask;
};

// Quantile-normalized association: every unmasked cell in (0, 1], every
// masked cell exactly kZeroFloor.
struct NormalizedAssociation {
  Metric metric = Metric::bigram;
  std::shared_ptr<const Lexicon> lexicon;
  Matrix<double> values;
  Matrix<std::uint8_t> zero_mask;

  double operator()(std::size_t noun, std::size_t adjective) const {
    return values(noun, adjective);
  }
};

// s(n, a) = P(a | n) / P(a) with both probabilities estimated from the count
// table itself. Cells with a zero count (or a zero adjective marginal) are
// masked and hold 0.
AssociationMatrix bigram_association(const CooccurrenceCounts& counts,
                                     std::shared_ptr<const Lexicon> lexicon);

// Cosine similarity of noun and adjective vectors.
AssociationMatrix cosine_association(const EmbeddingTable& embeddings,
                                     std::shared_ptr<const Lexicon> lexicon);

// Pass-through of graph relatedness scores; a zero score is an absent edge
// and is masked.
AssociationMatrix relatedness_association(const RelatednessTable& relatedness,
                                          std::shared_ptr<const Lexicon> lexicon);

// Negated Euclidean distance between topic distributions.
AssociationMatrix topic_association(const TopicTable& topics,
                                    std::shared_ptr<const Lexicon> lexicon);

// Pools all M cells, ranks them ascending with average ranks for ties, maps
// rank r to r / M, then overwrites masked cells with kZeroFloor.
NormalizedAssociation quantile_normalize(const AssociationMatrix& raw);

// s(p, a) = s(n1, a) * s(n2, a). Throws DomainError for n1 == n2 or indices
// out of range.
double pair_association(const NormalizedAssociation& norm, std::size_t noun1, std::size_t noun2,
                        std::size_t adjective);

// Fraction of masked cells among the noun x adjective cells that the
// configurations' scenarios reference, counted with multiplicity.
double sparsity_report(const NormalizedAssociation& norm,
                       std::span<const Configuration> configurations);

// Matrix TSV with "# metric:", "# kind:" and "# zero-mask:" comment lines.
void write_association(std::ostream& out, const AssociationMatrix& matrix);
void write_association(std::ostream& out, const NormalizedAssociation& matrix);

// Reads either kind of association file. The lexicon comes from the file's
// labels unless one is supplied, in which case the file is aligned to it.
AssociationMatrix read_association(std::istream& in,
                                   std::shared_ptr<const Lexicon> lexicon = nullptr);
// As read_association, additionally enforcing the normalized-value invariants.
NormalizedAssociation read_normalized(std::istream& in,
                                      std::shared_ptr<const Lexicon> lexicon = nullptr);

// Normalized tables keyed by label (normally the metric id). All tables share
// one lexicon.
class AssociationSet {
 public:
  AssociationSet() = default;
  explicit AssociationSet(std::shared_ptr<const Lexicon> lexicon) : lexicon_(std::move(lexicon)) {}

  // Throws DomainError on a duplicate label or a lexicon mismatch.
  void add(std::string label, NormalizedAssociation table);

  const NormalizedAssociation& at(std::string_view label) const;
  bool contains(std::string_view label) const;
  std::vector<std::string> labels() const;
  const std::shared_ptr<const Lexicon>& lexicon() const { return lexicon_; }

 private:
  std::shared_ptr<const Lexicon> lexicon_;
  std::map<std::string, NormalizedAssociation, std::less<>> tables_;
};

}  // namespace refgame
