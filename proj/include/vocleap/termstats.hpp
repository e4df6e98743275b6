#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "vocleap/index.hpp"
#include "vocleap/types.hpp"

namespace vocleap {

/// Immutable m x n term-document matrix over sparse rows of raw counts.
/// Row 0 may hold a context pseudo-document. Stored counts are >= 1; a row
/// may be empty. Construction validates and throws std::invalid_argument.
class TermDocMatrix {
 public:
  TermDocMatrix(std::vector<std::pair<std::string, TermCounts>> rows, std::size_t vocab_size);

  std::size_t row_count() const { return rows_.size(); }
  std::size_t vocab_size() const { return vocab_size_; }
  const std::string& doc_id(std::size_t row) const { return rows_[row].first; }
  const TermCounts& row(std::size_t row) const { return rows_[row].second; }
  double row_norm(std::size_t row) const { return norms_[row]; }

  /// Number of rows containing the term (0 for unseen terms).
  int doc_frequency(TermId term) const;

  std::optional<std::size_t> find_row(const std::string& doc_id) const;

 private:
  std::vector<std::pair<std::string, TermCounts>> rows_;
  std::vector<double> norms_;
  std::unordered_map<TermId, int> doc_freq_;
  std::size_t vocab_size_ = 0;
};

/// How strongly a term characterizes one document: its count over the row's
/// Euclidean norm. 0 for empty rows and absent terms.
double descriptive_power(const TermDocMatrix& m, std::size_t row, TermId term);

/// How exclusively a term points at one document: 1/sqrt(document frequency)
/// when present, 0 otherwise.
double discriminating_power(const TermDocMatrix& m, TermId term, std::size_t row);

/// Cosine of two rows' raw count vectors. 0 when either row is empty.
double cosine_similarity(const TermDocMatrix& m, std::size_t a, std::size_t b);

/// Similarity-weighted mean of squared descriptive power across the other
/// rows: how well the term describes the topic around `row`, judged by its
/// neighbors. 0 when no other row has positive similarity.
double topic_descriptive_power(const TermDocMatrix& m, std::size_t row, TermId term);

/// Sum over other rows of squared discriminating power weighted by their
/// similarity to `row`: high for terms that single out documents close to
/// `row`. 0 for terms occurring nowhere outside `row`.
double topic_discriminating_power(const TermDocMatrix& m, TermId term, std::size_t row);

struct TermScoreEntry {
  TermId term = 0;
  double score = 0.0;

  bool operator==(const TermScoreEntry&) const = default;
};

/// Scores sorted by descending score, ties by ascending term id, length <= cap,
/// zero scores excluded.
using TermScoreList = std::vector<TermScoreEntry>;

TermScoreList topic_descriptors(const TermDocMatrix& m, std::size_t focus_row, std::size_t cap);
TermScoreList topic_discriminators(const TermDocMatrix& m, std::size_t focus_row,
                                   std::size_t cap);

/// Cosine similarity of two rows after zeroing the query's terms in both,
/// renormalizing over what remains. 0 when either masked row is all-zero.
double novelty_similarity(const Query& q, const TermDocMatrix& m, std::size_t a, std::size_t b);

}  // namespace vocleap
