#include "vocleap/index.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>
#include <stdexcept>

#include <json.hpp>

namespace vocleap {

Index Index::build(const Corpus& corpus) {
  Index index;
  index.docs_.reserve(corpus.documents.size());
  for (const auto& doc : corpus.documents) {
    DocEntry entry;
    entry.doc_id = doc.doc_id;
    entry.counts = doc.term_freqs;
    double sq = 0.0;
    for (const auto& [term, count] : doc.term_freqs) {
      sq += static_cast<double>(count) * count;
      index.postings_[term].emplace_back(doc.doc_id, count);
    }
    entry.norm = std::sqrt(sq);
    if (!index.slots_.emplace(entry.doc_id, index.docs_.size()).second) {
      throw std::invalid_argument("duplicate doc id: " + entry.doc_id);
    }
    index.docs_.push_back(std::move(entry));
  }
  for (auto& [_, list] : index.postings_) {
    std::sort(list.begin(), list.end());
  }
  return index;
}

std::vector<RankedHit> Index::execute_query(const Query& query, int k) const {
  if (query.terms.empty()) throw std::invalid_argument("query has no terms");
  if (k < 1) throw std::invalid_argument("k must be positive");

  const std::set<TermId> distinct(query.terms.begin(), query.terms.end());
  std::unordered_map<std::string, std::int64_t> overlap;
  for (const TermId term : distinct) {
    const auto it = postings_.find(term);
    if (it == postings_.end()) continue;
    for (const auto& [doc_id, count] : it->second) {
      overlap[doc_id] += count;
    }
  }

  const double query_norm = std::sqrt(static_cast<double>(distinct.size()));
  std::vector<RankedHit> hits;
  hits.reserve(overlap.size());
  for (const auto& [doc_id, sum] : overlap) {
    const double norm = docs_[slots_.at(doc_id)].norm;
    const double score = static_cast<double>(sum) / (norm * query_norm);
    hits.push_back({doc_id, std::min(score, 1.0)});
  }
  std::sort(hits.begin(), hits.end(), [](const RankedHit& a, const RankedHit& b) {
    if (a.score != b.score) return a.score > b.score;
    return a.doc_id < b.doc_id;
  });
  if (hits.size() > static_cast<std::size_t>(k)) hits.resize(static_cast<std::size_t>(k));
  return hits;
}

const Index::DocEntry& Index::entry(const std::string& doc_id) const {
  const auto it = slots_.find(doc_id);
  if (it == slots_.end()) throw std::out_of_range("unknown doc id: " + doc_id);
  return docs_[it->second];
}

const TermCounts& Index::doc_vector(const std::string& doc_id) const {
  return entry(doc_id).counts;
}

bool Index::contains(const std::string& doc_id) const { return slots_.contains(doc_id); }

const std::vector<std::pair<std::string, int>>& Index::postings(TermId term) const {
  static const std::vector<std::pair<std::string, int>> empty;
  const auto it = postings_.find(term);
  return it == postings_.end() ? empty : it->second;
}

double Index::doc_norm(const std::string& doc_id) const { return entry(doc_id).norm; }

void save_snapshot(const Corpus& corpus, const std::filesystem::path& file) {
  nlohmann::ordered_json root;
  root["format"] = "vocleap-index-v1";
  auto terms = nlohmann::ordered_json::array();
  for (TermId id = 0; id < corpus.vocab.size(); ++id) {
    terms.push_back(corpus.vocab.term(id));
  }
  root["terms"] = std::move(terms);
  auto docs = nlohmann::ordered_json::array();
  for (const auto& doc : corpus.documents) {
    nlohmann::ordered_json entry;
    entry["id"] = doc.doc_id;
    auto counts = nlohmann::ordered_json::array();
    for (const auto& [term, count] : doc.term_freqs) {
      counts.push_back({term, count});
    }
    entry["counts"] = std::move(counts);
    docs.push_back(std::move(entry));
  }
  root["documents"] = std::move(docs);

  const auto tmp = file.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write snapshot: " + file.string());
    out << root.dump(2) << '\n';
    if (!out.good()) throw std::runtime_error("cannot write snapshot: " + file.string());
  }
  std::filesystem::rename(tmp, file);
}

Corpus load_snapshot(const std::filesystem::path& file) {
  std::ifstream in(file, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open snapshot: " + file.string());
  nlohmann::json root;
  try {
    root = nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw std::runtime_error("snapshot " + file.string() + ": " + e.what());
  }
  const auto fail = [&](const std::string& why) -> std::runtime_error {
    return std::runtime_error("snapshot " + file.string() + ": " + why);
  };
  if (!root.is_object() || root.value("format", "") != "vocleap-index-v1") {
    throw fail("unrecognized format");
  }
  if (!root.contains("terms") || !root["terms"].is_array() || !root.contains("documents") ||
      !root["documents"].is_array()) {
    throw fail("missing terms or documents array");
  }

  Corpus corpus;
  for (const auto& term : root["terms"]) {
    if (!term.is_string()) throw fail("terms must be strings");
    corpus.vocab.intern(term.get<std::string>());
  }
  for (const auto& entry : root["documents"]) {
    if (!entry.is_object() || !entry.contains("id") || !entry["id"].is_string() ||
        !entry.contains("counts") || !entry["counts"].is_array()) {
      throw fail("malformed document entry");
    }
    Document doc;
    doc.doc_id = entry["id"].get<std::string>();
    for (const auto& pair : entry["counts"]) {
      if (!pair.is_array() || pair.size() != 2 || !pair[0].is_number_unsigned() ||
          !pair[1].is_number_integer()) {
        throw fail("malformed count pair in document " + doc.doc_id);
      }
      const auto term = pair[0].get<TermId>();
      const auto count = pair[1].get<int>();
      if (term >= corpus.vocab.size()) {
        throw fail("term id out of range in document " + doc.doc_id);
      }
      if (count < 1) throw fail("count below 1 in document " + doc.doc_id);
      if (!doc.term_freqs.emplace(term, count).second) {
        throw fail("duplicate term in document " + doc.doc_id);
      }
      doc.length += count;
    }
    corpus.documents.push_back(std::move(doc));
  }
  return corpus;
}

}  // namespace vocleap
