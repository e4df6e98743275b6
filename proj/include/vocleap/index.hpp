#pragma once

#include <cstddef>
#include <filesystem>
#include <string>
#include <unordered_map>
#include <vector>

#include "vocleap/corpus.hpp"
#include "vocleap/types.hpp"

namespace vocleap {

/// A search query: term ids, at least one. Duplicates are scored once.
struct Query {
  std::vector<TermId> terms;
};

struct RankedHit {
  std::string doc_id;
  double score = 0.0;  // always > 0; zero-score documents are never returned
};

/// Inverted index with cosine ranking between a document's raw count vector
/// and the query's binary incidence vector. Immutable once built; concurrent
/// reads are safe.
class Index {
 public:
  static Index build(const Corpus& corpus);

  /// Top-k hits, score descending, ties by ascending doc_id, score > 0 only.
  /// Query terms absent from every document simply contribute nothing.
  std::vector<RankedHit> execute_query(const Query& query, int k) const;

  /// Raw term counts of one document. Throws std::out_of_range for unknown ids.
  const TermCounts& doc_vector(const std::string& doc_id) const;

  bool contains(const std::string& doc_id) const;
  std::size_t doc_count() const { return docs_.size(); }

  /// Postings list for one term: (doc_id, count) sorted by doc_id.
  /// Empty for terms indexed in no document.
  const std::vector<std::pair<std::string, int>>& postings(TermId term) const;

  double doc_norm(const std::string& doc_id) const;

 private:
  struct DocEntry {
    std::string doc_id;
    TermCounts counts;
    double norm = 0.0;
  };

  std::vector<DocEntry> docs_;
  std::unordered_map<std::string, std::size_t> slots_;
  std::unordered_map<TermId, std::vector<std::pair<std::string, int>>> postings_;

  const DocEntry& entry(const std::string& doc_id) const;
};

/// Writes vocabulary + documents as a JSON snapshot (write-then-rename).
/// Loading rebuilds an identical corpus; the index is rebuilt from it.
void save_snapshot(const Corpus& corpus, const std::filesystem::path& file);

/// Throws std::runtime_error on unreadable, malformed, or inconsistent files.
Corpus load_snapshot(const std::filesystem::path& file);

}  // namespace vocleap
