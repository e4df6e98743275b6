#include <doctest.h>

#include <algorithm>
#include <map>
#include <set>
#include <string>

#include "support/tempdir.hpp"
#include "vocleap/synthcorpus.hpp"

using namespace vocleap;
using testsupport::TempDir;

namespace {

std::map<std::string, int> counts_by_term(const Document& doc, const Vocabulary& vocab) {
  std::map<std::string, int> out;
  for (const auto& [term, count] : doc.term_freqs) out[vocab.term(term)] = count;
  return out;
}

}  // namespace

TEST_CASE("generation is deterministic per seed and shaped as configured") {
  SynthConfig config;
  config.seed = 42;
  const auto a = generate_synthetic(config);
  const auto b = generate_synthetic(config);

  REQUIRE(a.corpus.documents.size() == 600);
  REQUIRE(a.topics.size() == 3);
  CHECK(a.background_terms.size() == 200);
  REQUIRE(a.specific_terms.size() == 3);
  CHECK(a.specific_terms[0].size() == 250);
  CHECK(a.corpus.vocab.size() == 200 + 3 * 250);

  REQUIRE(b.corpus.documents.size() == a.corpus.documents.size());
  for (std::size_t i = 0; i < a.corpus.documents.size(); ++i) {
    CHECK(a.corpus.documents[i].doc_id == b.corpus.documents[i].doc_id);
    CHECK(a.corpus.documents[i].term_freqs == b.corpus.documents[i].term_freqs);
  }
  for (std::size_t i = 0; i < a.topics.size(); ++i) {
    CHECK(a.topics[i].description_text == b.topics[i].description_text);
    CHECK(a.topics[i].relevant_doc_ids == b.topics[i].relevant_doc_ids);
  }

  SynthConfig reseeded = config;
  reseeded.seed = 43;
  const auto c = generate_synthetic(reseeded);
  bool any_difference = false;
  for (std::size_t i = 0; i < a.corpus.documents.size() && !any_difference; ++i) {
    any_difference = a.corpus.documents[i].term_freqs != c.corpus.documents[i].term_freqs;
  }
  CHECK(any_difference);
}

TEST_CASE("documents stay inside their topic's vocabulary plus the background") {
  SynthConfig config;
  config.docs_per_topic = 20;
  const auto synth = generate_synthetic(config);

  std::vector<std::set<TermId>> allowed;
  for (const auto& specific : synth.specific_terms) {
    std::set<TermId> pool(synth.background_terms.begin(), synth.background_terms.end());
    pool.insert(specific.begin(), specific.end());
    allowed.push_back(std::move(pool));
  }

  for (const auto& doc : synth.corpus.documents) {
    const int topic = doc.doc_id[1] - '0';
    CHECK(doc.length >= config.min_doc_tokens);
    CHECK(doc.length <= config.max_doc_tokens);
    for (const auto& [term, count] : doc.term_freqs) {
      CHECK(count >= 1);
      CHECK(allowed[topic].count(term) == 1);
    }
  }

  // ids sort lexicographically in generation order
  for (std::size_t i = 1; i < synth.corpus.documents.size(); ++i) {
    CHECK(synth.corpus.documents[i - 1].doc_id < synth.corpus.documents[i].doc_id);
  }
}

TEST_CASE("every generated term survives normalization unchanged") {
  SynthConfig config;
  config.docs_per_topic = 2;
  const auto synth = generate_synthetic(config);
  const auto& stopwords = default_stopwords();
  for (std::size_t id = 0; id < synth.corpus.vocab.size(); ++id) {
    const auto& word = synth.corpus.vocab.term(TermId(id));
    const auto normalized = normalize_term(word, stopwords);
    REQUIRE(normalized.has_value());
    CHECK(*normalized == word);
  }
}

TEST_CASE("descriptions vectorize onto the corpus vocabulary") {
  const auto synth = generate_synthetic(SynthConfig{});
  Vocabulary vocab = synth.corpus.vocab;
  for (const auto& topic : synth.topics) {
    const auto result = vectorize(topic.description_text, vocab, false, default_stopwords());
    CHECK(result.counts.size() == 12);  // 6 specific + 2 background
    CHECK(result.dropped_terms == 0);
    CHECK(topic.relevant_doc_ids.size() == 200);
  }
}

TEST_CASE("writing then ingesting reproduces the corpus and topics") {
  SynthConfig config;
  config.docs_per_topic = 8;
  config.seed = 7;
  const auto synth = generate_synthetic(config);

  TempDir dir;
  const auto corpus_dir = dir.path() / "corpus";
  const auto topics_dir = dir.path() / "topics";
  write_synthetic(synth, corpus_dir, topics_dir);

  const auto loaded = load_corpus(corpus_dir, default_stopwords());
  CHECK(loaded.report.warnings.empty());
  CHECK(loaded.report.skipped_files.empty());
  CHECK(loaded.report.empty_documents.empty());
  REQUIRE(loaded.corpus.documents.size() == synth.corpus.documents.size());
  for (std::size_t i = 0; i < synth.corpus.documents.size(); ++i) {
    const auto& expected = synth.corpus.documents[i];
    const auto& actual = loaded.corpus.documents[i];
    CHECK(actual.doc_id == expected.doc_id);
    CHECK(counts_by_term(actual, loaded.corpus.vocab) ==
          counts_by_term(expected, synth.corpus.vocab));
  }

  for (const auto& topic : synth.topics) {
    const auto file = topics_dir / ("topic_" + topic.topic_id + ".json");
    const auto loaded_topic = load_topic(file);
    CHECK(loaded_topic.topic_id == topic.topic_id);
    CHECK(loaded_topic.description_text == topic.description_text);
    CHECK(loaded_topic.relevant_doc_ids == topic.relevant_doc_ids);
  }
}

TEST_CASE("config invariants are enforced") {
  const auto rejects = [](auto mutate) {
    SynthConfig c;
    mutate(c);
    CHECK_THROWS_AS(c.validate(), std::invalid_argument);
  };
  rejects([](SynthConfig& c) { c.topics = 0; });
  rejects([](SynthConfig& c) { c.docs_per_topic = 0; });
  rejects([](SynthConfig& c) { c.min_doc_tokens = 0; });
  rejects([](SynthConfig& c) { c.max_doc_tokens = 10; });
  rejects([](SynthConfig& c) { c.specific_share = 1.5; });
  rejects([](SynthConfig& c) {
    c.description_specific_terms = 0;
    c.description_background_terms = 0;
  });
  CHECK_THROWS_AS(
      []() {
        SynthConfig c;
        c.specific_terms_per_topic = 2000;
        return generate_synthetic(c);
      }(),
      std::runtime_error);
}
