#pragma once

#include <cstdint>
#include <filesystem>
#include <vector>

#include "vocleap/corpus.hpp"

namespace vocleap {

/// Shape of a generated benchmark corpus: several topics with disjoint
/// topic-specific vocabularies plus one shared background vocabulary.
struct SynthConfig {
  int topics = 3;
  int docs_per_topic = 200;
  int specific_terms_per_topic = 250;
  int background_terms = 200;
  int min_doc_tokens = 120;
  int max_doc_tokens = 150;
  // every document of a topic opens with the same flat core block; the rest
  // of its tokens are sampled from the remaining ranks
  double core_share = 0.75;      // fraction of min_doc_tokens in the fixed core
  int core_ranks = 30;           // how many leading specific ranks form the core
  double specific_share = 0.9;   // chance a sampled token is topic-specific
  double zipf_exponent = 0.7;    // steepness of the non-core specific falloff
  int description_specific_terms = 12;
  int description_background_terms = 0;
  std::uint64_t seed = 1;

  void validate() const;  // throws std::invalid_argument
};

struct SyntheticCorpus {
  Corpus corpus;
  std::vector<TopicSpec> topics;
  std::vector<TermId> background_terms;
  std::vector<std::vector<TermId>> specific_terms;  // one list per topic
};

/// Deterministically generates pseudo-word documents. Every generated term
/// survives normalization unchanged, so writing the corpus out and ingesting
/// it again reproduces the same counts. Doc ids look like "t0_d017"; relevant
/// sets are each topic's own documents; descriptions take spaced ranks from
/// inside the core so every relevant document carries them at equal counts.
SyntheticCorpus generate_synthetic(const SynthConfig& config);

/// Writes one .txt file per document into corpus_dir and one topic_<id>.json
/// per topic into topics_dir. Throws std::runtime_error on IO failure.
void write_synthetic(const SyntheticCorpus& synthetic,
                     const std::filesystem::path& corpus_dir,
                     const std::filesystem::path& topics_dir);

}  // namespace vocleap
