#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "vocleap/types.hpp"

namespace vocleap {

using Stopwords = std::unordered_set<std::string>;

/// One normalized text document: a bag of term ids with raw occurrence counts.
/// Absent terms are not stored; length is the total surviving token count and
/// always equals the sum of the stored counts.
struct Document {
  std::string doc_id;
  TermCounts term_freqs;
  std::int64_t length = 0;
};

/// Bijective term-string <-> term-id mapping. Ids are dense (0..n-1), assigned
/// in interning order and never reassigned.
class Vocabulary {
 public:
  TermId intern(const std::string& term);
  std::optional<TermId> lookup(const std::string& term) const;
  const std::string& term(TermId id) const;  // throws std::out_of_range
  std::size_t size() const { return terms_.size(); }

 private:
  std::vector<std::string> terms_;
  std::unordered_map<std::string, TermId> ids_;
};

struct Corpus {
  Vocabulary vocab;
  std::vector<Document> documents;
};

/// Warnings gathered while loading a corpus directory.
struct LoadReport {
  std::vector<std::string> warnings;
  std::vector<std::string> skipped_files;    // undecodable files, listed by name
  std::vector<std::string> empty_documents;  // docs whose text normalized to nothing
};

struct CorpusLoadResult {
  Corpus corpus;
  LoadReport report;
};

/// A topic to characterize: initial context text plus judged relevant docs.
struct TopicSpec {
  std::string topic_id;
  std::string description_text;
  std::unordered_set<std::string> relevant_doc_ids;
};

/// Splits text into lowercase tokens. Tokens are maximal runs of ASCII
/// alphanumeric characters; everything else separates. Digits-only tokens kept.
std::vector<std::string> tokenize(std::string_view text);

/// Stopword filter + Porter stem. Returns nothing for stopwords (checked on
/// both the raw token and its stem) and for stems shorter than 2 characters.
/// Stemming is iterated to a fixpoint so that normalizing an already
/// normalized term is the identity.
std::optional<std::string> normalize_term(const std::string& token, const Stopwords& stopwords);

/// Reads every .txt file under `dir` (sorted by file name) into a corpus.
/// doc_id is the file name without extension. Invalid-UTF-8 files are skipped
/// with a warning; documents that normalize to zero terms are kept and flagged.
/// Throws std::runtime_error when the directory itself is unreadable.
CorpusLoadResult load_corpus(const std::filesystem::path& dir, const Stopwords& stopwords);

/// Parses a topic JSON file: {"topic_id": ..., "description": ..., "relevant": [...]}.
/// "relevant" may be absent or empty (exploration runs). Throws std::runtime_error
/// on malformed files, naming the offending field, and on empty descriptions.
TopicSpec load_topic(const std::filesystem::path& file);

struct VectorizeResult {
  TermCounts counts;
  int dropped_terms = 0;  // normalized terms not in the vocabulary (closed-vocab mode)
};

/// Tokenize + normalize text against a vocabulary. With allow_new_terms set,
/// unseen terms are interned; otherwise they are dropped and tallied.
VectorizeResult vectorize(std::string_view text, Vocabulary& vocab, bool allow_new_terms,
                          const Stopwords& stopwords);

/// The stopword list bundled under data/stopwords_en.txt, compiled in.
const Stopwords& default_stopwords();

/// Loads a one-word-per-line stopword file.
Stopwords load_stopwords(const std::filesystem::path& file);

}  // namespace vocleap
