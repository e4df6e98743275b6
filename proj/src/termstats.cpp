#include "vocleap/termstats.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>
#include <unordered_map>

namespace vocleap {

TermDocMatrix::TermDocMatrix(std::vector<std::pair<std::string, TermCounts>> rows,
                             std::size_t vocab_size)
    : rows_(std::move(rows)), vocab_size_(vocab_size) {
  if (rows_.empty()) throw std::invalid_argument("matrix needs at least one row");
  std::set<std::string> seen;
  norms_.reserve(rows_.size());
  for (const auto& [doc_id, counts] : rows_) {
    if (!seen.insert(doc_id).second) {
      throw std::invalid_argument("duplicate doc id in matrix: " + doc_id);
    }
    double sq = 0.0;
    for (const auto& [term, count] : counts) {
      if (count < 1) throw std::invalid_argument("count below 1 in row " + doc_id);
      if (term >= vocab_size_) throw std::invalid_argument("term id out of range in " + doc_id);
      sq += static_cast<double>(count) * count;
      ++doc_freq_[term];
    }
    norms_.push_back(std::sqrt(sq));
  }
}

int TermDocMatrix::doc_frequency(TermId term) const {
  const auto it = doc_freq_.find(term);
  return it == doc_freq_.end() ? 0 : it->second;
}

std::optional<std::size_t> TermDocMatrix::find_row(const std::string& doc_id) const {
  for (std::size_t i = 0; i < rows_.size(); ++i) {
    if (rows_[i].first == doc_id) return i;
  }
  return std::nullopt;
}

double descriptive_power(const TermDocMatrix& m, std::size_t row, TermId term) {
  const double norm = m.row_norm(row);
  if (norm == 0.0) return 0.0;
  const auto& counts = m.row(row);
  const auto it = counts.find(term);
  if (it == counts.end()) return 0.0;
  return it->second / norm;
}

double discriminating_power(const TermDocMatrix& m, TermId term, std::size_t row) {
  if (!m.row(row).contains(term)) return 0.0;
  return 1.0 / std::sqrt(static_cast<double>(m.doc_frequency(term)));
}

double cosine_similarity(const TermDocMatrix& m, std::size_t a, std::size_t b) {
  const double na = m.row_norm(a), nb = m.row_norm(b);
  if (na == 0.0 || nb == 0.0) return 0.0;
  const auto& ra = m.row(a);
  const auto& rb = m.row(b);
  double dot = 0.0;
  auto ia = ra.begin();
  auto ib = rb.begin();
  while (ia != ra.end() && ib != rb.end()) {
    if (ia->first < ib->first) {
      ++ia;
    } else if (ib->first < ia->first) {
      ++ib;
    } else {
      dot += static_cast<double>(ia->second) * ib->second;
      ++ia;
      ++ib;
    }
  }
  return std::min(dot / (na * nb), 1.0);
}

double topic_descriptive_power(const TermDocMatrix& m, std::size_t row, TermId term) {
  double num = 0.0, den = 0.0;
  for (std::size_t k = 0; k < m.row_count(); ++k) {
    if (k == row) continue;
    const double s = cosine_similarity(m, row, k);
    if (s == 0.0) continue;
    const double d = descriptive_power(m, k, term);
    num += s * d * d;
    den += s;
  }
  return den == 0.0 ? 0.0 : num / den;
}

double topic_discriminating_power(const TermDocMatrix& m, TermId term, std::size_t row) {
  double sum = 0.0;
  for (std::size_t k = 0; k < m.row_count(); ++k) {
    if (k == row) continue;
    const double d = discriminating_power(m, term, k);
    if (d == 0.0) continue;
    sum += d * d * cosine_similarity(m, k, row);
  }
  return sum;
}

namespace {

TermScoreList ranked_list(std::unordered_map<TermId, double> scores, std::size_t cap) {
  TermScoreList list;
  list.reserve(scores.size());
  for (const auto& [term, score] : scores) {
    if (score > 0.0) list.push_back({term, score});
  }
  std::sort(list.begin(), list.end(), [](const TermScoreEntry& a, const TermScoreEntry& b) {
    if (a.score != b.score) return a.score > b.score;
    return a.term < b.term;
  });
  if (list.size() > cap) list.resize(cap);
  return list;
}

}  // namespace

TermScoreList topic_descriptors(const TermDocMatrix& m, std::size_t focus_row, std::size_t cap) {
  std::unordered_map<TermId, double> accum;
  double den = 0.0;
  for (std::size_t k = 0; k < m.row_count(); ++k) {
    if (k == focus_row) continue;
    const double s = cosine_similarity(m, focus_row, k);
    if (s == 0.0) continue;
    den += s;
    const double norm_sq = m.row_norm(k) * m.row_norm(k);
    for (const auto& [term, count] : m.row(k)) {
      const double c = count;
      accum[term] += s * (c * c) / norm_sq;
    }
  }
  if (den == 0.0) return {};
  for (auto& [_, v] : accum) v /= den;
  return ranked_list(std::move(accum), cap);
}

TermScoreList topic_discriminators(const TermDocMatrix& m, std::size_t focus_row,
                                   std::size_t cap) {
  std::unordered_map<TermId, double> accum;
  for (std::size_t k = 0; k < m.row_count(); ++k) {
    if (k == focus_row) continue;
    const double s = cosine_similarity(m, k, focus_row);
    if (s == 0.0) continue;
    for (const auto& [term, _] : m.row(k)) {
      accum[term] += s / m.doc_frequency(term);
    }
  }
  return ranked_list(std::move(accum), cap);
}

double novelty_similarity(const Query& q, const TermDocMatrix& m, std::size_t a, std::size_t b) {
  const std::set<TermId> masked(q.terms.begin(), q.terms.end());
  double dot = 0.0, sq_a = 0.0, sq_b = 0.0;
  for (const auto& [term, count] : m.row(a)) {
    if (masked.contains(term)) continue;
    sq_a += static_cast<double>(count) * count;
  }
  for (const auto& [term, count] : m.row(b)) {
    if (masked.contains(term)) continue;
    sq_b += static_cast<double>(count) * count;
  }
  if (sq_a == 0.0 || sq_b == 0.0) return 0.0;
  const auto& ra = m.row(a);
  const auto& rb = m.row(b);
  auto ia = ra.begin();
  auto ib = rb.begin();
  while (ia != ra.end() && ib != rb.end()) {
    if (ia->first < ib->first) {
      ++ia;
    } else if (ib->first < ia->first) {
      ++ib;
    } else {
      if (!masked.contains(ia->first)) {
        dot += static_cast<double>(ia->second) * ib->second;
      }
      ++ia;
      ++ib;
    }
  }
  return std::min(dot / (std::sqrt(sq_a) * std::sqrt(sq_b)), 1.0);
}

}  // namespace vocleap
