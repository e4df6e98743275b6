#include "vocleap/synthcorpus.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "vocleap/evolver.hpp"
#include "vocleap/trace.hpp"

namespace vocleap {
namespace {

// 1/rank^exponent weights as a cumulative array for inverse-CDF sampling
std::vector<double> zipf_cumulative(std::size_t n, double exponent) {
  std::vector<double> cum(n);
  double total = 0.0;
  for (std::size_t r = 0; r < n; ++r) {
    total += std::pow(double(r + 1), -exponent);
    cum[r] = total;
  }
  return cum;
}

std::vector<double> uniform_cumulative(std::size_t n) {
  std::vector<double> cum(n);
  for (std::size_t r = 0; r < n; ++r) cum[r] = double(r + 1);
  return cum;
}

std::size_t sample_rank(const std::vector<double>& cum, Rng& rng) {
  const double x = u01(rng) * cum.back();
  const auto it = std::upper_bound(cum.begin(), cum.end(), x);
  return std::min<std::size_t>(it - cum.begin(), cum.size() - 1);
}

// every distinct two-syllable word, in a seed-determined order
std::vector<std::string> shuffled_candidates(Rng& rng) {
  const std::string consonants = "bdfgklmnprtvz";
  const std::string vowels = "aeiou";
  std::vector<std::string> syllables;
  for (const char c : consonants) {
    for (const char v : vowels) syllables.push_back({c, v});
  }
  std::vector<std::string> words;
  words.reserve(syllables.size() * syllables.size());
  for (const auto& a : syllables) {
    for (const auto& b : syllables) words.push_back(a + b);
  }
  for (std::size_t i = words.size(); i > 1; --i) {
    std::swap(words[i - 1], words[std::size_t(u01(rng) * double(i))]);
  }
  return words;
}

}  // namespace

void SynthConfig::validate() const {
  const auto fail = [](const std::string& what) { throw std::invalid_argument(what); };
  if (topics < 1) fail("topics must be >= 1");
  if (docs_per_topic < 1) fail("docs_per_topic must be >= 1");
  if (specific_terms_per_topic < 1) fail("specific_terms_per_topic must be >= 1");
  if (background_terms < 1) fail("background_terms must be >= 1");
  if (min_doc_tokens < 1) fail("min_doc_tokens must be >= 1");
  if (max_doc_tokens < min_doc_tokens) fail("max_doc_tokens must be >= min_doc_tokens");
  if (!(specific_share >= 0.0 && specific_share <= 1.0)) {
    fail("specific_share must lie in [0,1]");
  }
  if (!(zipf_exponent >= 0.0)) fail("zipf_exponent must be >= 0");
  if (!(core_share >= 0.0 && core_share <= 1.0)) fail("core_share must lie in [0,1]");
  if (core_ranks < 0 || core_ranks > specific_terms_per_topic) {
    fail("core_ranks must lie in [0, specific_terms_per_topic]");
  }
  if (description_specific_terms < 0 || description_background_terms < 0) {
    fail("description term counts must be >= 0");
  }
  if (description_specific_terms + description_background_terms < 1) {
    fail("descriptions need at least one term");
  }
}

SyntheticCorpus generate_synthetic(const SynthConfig& config) {
  config.validate();
  Rng rng(config.seed);
  const Stopwords& stopwords = default_stopwords();

  const std::size_t needed =
      std::size_t(config.background_terms) +
      std::size_t(config.topics) * std::size_t(config.specific_terms_per_topic);
  std::vector<std::string> words;
  words.reserve(needed);
  for (const auto& candidate : shuffled_candidates(rng)) {
    if (words.size() == needed) break;
    const auto normalized = normalize_term(candidate, stopwords);
    if (normalized && *normalized == candidate) words.push_back(candidate);
  }
  if (words.size() < needed) {
    throw std::runtime_error("term pool exhausted; lower the vocabulary sizes");
  }

  SyntheticCorpus out;
  Vocabulary& vocab = out.corpus.vocab;
  std::size_t next = 0;
  for (int i = 0; i < config.background_terms; ++i) {
    out.background_terms.push_back(vocab.intern(words[next++]));
  }
  for (int t = 0; t < config.topics; ++t) {
    auto& specific = out.specific_terms.emplace_back();
    for (int i = 0; i < config.specific_terms_per_topic; ++i) {
      specific.push_back(vocab.intern(words[next++]));
    }
  }

  // non-core specific terms fall off like natural text; the background stays
  // flat so no single shared term becomes dense enough to look topical
  const std::size_t tail_ranks = out.specific_terms[0].size() - std::size_t(config.core_ranks);
  const auto cum_specific = zipf_cumulative(tail_ranks, config.zipf_exponent);
  const auto cum_background = uniform_cumulative(out.background_terms.size());

  // the same flat count for every core rank, so relevant documents agree on
  // the weight of every core term
  const int core_count =
      config.core_ranks > 0
          ? std::max(1, int(std::lround(config.core_share * double(config.min_doc_tokens) /
                                        double(config.core_ranks))))
          : 0;
  const int core_total = core_count * config.core_ranks;

  for (int t = 0; t < config.topics; ++t) {
    const auto& specific = out.specific_terms[t];
    TopicSpec topic;
    topic.topic_id = "t" + std::to_string(t);

    for (int d = 0; d < config.docs_per_topic; ++d) {
      char suffix[16];
      std::snprintf(suffix, sizeof(suffix), "_d%03d", d);
      Document doc;
      doc.doc_id = topic.topic_id + suffix;
      for (int r = 0; r < config.core_ranks; ++r) {
        doc.term_freqs[specific[r]] = core_count;
        doc.length += core_count;
      }
      const int span = config.max_doc_tokens - config.min_doc_tokens + 1;
      const int tokens = config.min_doc_tokens + int(u01(rng) * double(span));
      for (int i = core_total; i < tokens; ++i) {
        const bool from_topic = tail_ranks > 0 && u01(rng) < config.specific_share;
        const TermId term =
            from_topic
                ? specific[std::size_t(config.core_ranks) + sample_rank(cum_specific, rng)]
                : out.background_terms[sample_rank(cum_background, rng)];
        ++doc.term_freqs[term];
        ++doc.length;
      }
      topic.relevant_doc_ids.insert(doc.doc_id);
      out.corpus.documents.push_back(std::move(doc));
    }

    std::vector<TermId> chosen;
    for (int k = 0; k < config.description_specific_terms; ++k) {
      chosen.push_back(specific[std::min<std::size_t>(1 + 2 * k, specific.size() - 1)]);
    }
    for (int k = 0; k < config.description_background_terms; ++k) {
      chosen.push_back(
          out.background_terms[std::min<std::size_t>(2 + 3 * k, out.background_terms.size() - 1)]);
    }
    std::string text;
    std::set<TermId> seen;
    for (const TermId term : chosen) {
      if (!seen.insert(term).second) continue;
      if (!text.empty()) text += ' ';
      text += vocab.term(term);
    }
    topic.description_text = text;
    out.topics.push_back(std::move(topic));
  }
  return out;
}

void write_synthetic(const SyntheticCorpus& synthetic, const std::filesystem::path& corpus_dir,
                     const std::filesystem::path& topics_dir) {
  std::filesystem::create_directories(corpus_dir);
  std::filesystem::create_directories(topics_dir);
  const auto write = [](const std::filesystem::path& file, const std::string& content) {
    std::ofstream out(file, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + file.string());
    out << content;
    if (!out.good()) throw std::runtime_error("cannot write " + file.string());
  };

  for (const auto& doc : synthetic.corpus.documents) {
    std::string text;
    int on_line = 0;
    for (const auto& [term, count] : doc.term_freqs) {
      for (int i = 0; i < count; ++i) {
        text += synthetic.corpus.vocab.term(term);
        text += (++on_line % 12 == 0) ? '\n' : ' ';
      }
    }
    if (!text.empty() && text.back() == ' ') text.back() = '\n';
    write(corpus_dir / (doc.doc_id + ".txt"), text);
  }

  for (const auto& topic : synthetic.topics) {
    std::vector<std::string> relevant(topic.relevant_doc_ids.begin(),
                                      topic.relevant_doc_ids.end());
    std::sort(relevant.begin(), relevant.end());
    nlohmann::ordered_json json;
    json["topic_id"] = topic.topic_id;
    json["description"] = topic.description_text;
    json["relevant"] = relevant;
    write(topics_dir / ("topic_" + filename_component(topic.topic_id) + ".json"),
          json.dump(2) + "\n");
  }
}

}  // namespace vocleap
