#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "vocleap/corpus.hpp"
#include "vocleap/index.hpp"
#include "vocleap/termstats.hpp"
#include "vocleap/types.hpp"

namespace vocleap {

/// Knobs of the iterative characterization loop. Defaults follow the
/// reference configuration; validate() throws std::invalid_argument.
struct RunConfig {
  int u = 10;                      // iterations between variation checks
  int v = 100;                     // minimum iterations before convergence
  double alpha = 0.5;              // carried score weight in blends
  double beta = 0.5;               // fresh score weight in blends
  double gamma = 0.33;             // context weight kept at a leap
  double zeta = 0.33;              // descriptor weight folded in at a leap
  double xi = 0.33;                // discriminator weight folded in at a leap
  double mu = 0.2;                 // variation below this triggers a leap
  double nu = 0.1;                 // variation below this allows convergence
  int queries_per_iteration = 10;
  int results_per_query = 10;
  int query_size = 3;
  int list_cap = 100;
  int max_iterations = 300;
  std::uint64_t rng_seed = 0;

  void validate() const;
};

/// Weighted vocabulary standing in for the topic: the evolving context C.
/// Weights are positive; the maximum weight is 1 after construction and
/// after every leap.
struct ContextProfile {
  TermWeights weights;
  int phase = 0;
};

struct NsimTriple {
  double min = 0.0;
  double avg = 0.0;
  double max = 0.0;
};

/// Mutable state of one evolution chain; fully reset at every leap.
struct EvolutionState {
  TermScoreList desc_scores;
  TermScoreList disc_scores;
  int j = 0;  // iterations folded into the lists
  std::vector<NsimTriple> nsim_history;
};

struct IterationRecord {
  int iteration = 0;  // 1-based, global
  int phase = 0;
  std::vector<std::vector<std::string>> queries;             // terms in draw order
  std::vector<std::pair<std::string, double>> retrieved;     // doc_id asc, max score
  NsimTriple nsim;
  std::size_t desc_list_size = 0;
  std::size_t disc_list_size = 0;
  std::vector<std::pair<std::string, double>> top_descriptors;     // up to 10
  std::vector<std::pair<std::string, double>> top_discriminators;  // up to 10
};

struct LeapEvent {
  int iteration = 0;
  std::size_t old_terms = 0;
  std::size_t new_terms = 0;
};

struct RunTrace {
  std::string topic_id;
  RunConfig config;
  std::vector<IterationRecord> iterations;
  std::vector<LeapEvent> leaps;
  std::string termination;  // "converged", "budget", or "degenerate"
};

using Rng = std::mt19937_64;

/// Uniform double in [0,1) built from the generator's top 53 bits, identical
/// across platforms.
inline double u01(Rng& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

std::uint64_t fnv1a64(std::string_view bytes);

/// n fitness-proportional draws without replacement. When the remaining
/// fitness mass is zero the rest are drawn uniformly; when fewer than n items
/// exist, all are returned. Throws std::invalid_argument on an empty pool.
template <typename Item>
std::vector<Item> roulette_select(std::vector<std::pair<Item, double>> pool, std::size_t n,
                                  Rng& rng) {
  if (pool.empty()) throw std::invalid_argument("roulette pool is empty");
  std::vector<Item> picked;
  picked.reserve(std::min(n, pool.size()));
  while (picked.size() < n && !pool.empty()) {
    double total = 0.0;
    for (const auto& [_, fitness] : pool) total += fitness;
    std::size_t chosen = 0;
    if (total > 0.0) {
      const double x = u01(rng) * total;
      double cum = 0.0;
      for (std::size_t i = 0; i < pool.size(); ++i) {
        cum += pool[i].second;
        if (x < cum) {
          chosen = i;
          break;
        }
      }
    } else {
      chosen = static_cast<std::size_t>(u01(rng) * static_cast<double>(pool.size()));
      if (chosen >= pool.size()) chosen = pool.size() - 1;
    }
    picked.push_back(pool[chosen].first);
    pool.erase(pool.begin() + static_cast<std::ptrdiff_t>(chosen));
  }
  return picked;
}

/// One query batch. The fitness pool is the union of the state's descriptor
/// and discriminator lists (per-term fitness = the larger score); while the
/// lists are empty the context weights stand in. Throws std::invalid_argument
/// when the context has no positive weight.
std::vector<Query> build_queries(const ContextProfile& context, const EvolutionState& state,
                                 const RunConfig& config, Rng& rng);

/// Termwise alpha*prev + beta*fresh over the union of supports, re-sorted,
/// zero-filtered, truncated to cap.
TermScoreList blend_scores(const TermScoreList& prev, const TermScoreList& fresh, double alpha,
                           double beta, std::size_t cap);

/// One loop turn: query, retrieve, assemble the matrix (context pseudo-doc as
/// focus row plus deduplicated hits), refresh the blended lists, and score
/// novelty against the union of this batch's query terms. Empty retrieval is
/// recorded, not an error.
IterationRecord iteration_step(const ContextProfile& context, EvolutionState& state,
                               const Index& index, const Vocabulary& vocab,
                               const RunConfig& config, Rng& rng);

/// Relative spread (max-min)/max of the average novelty similarity over the
/// last u entries; 1 when the window's max is 0. Throws std::invalid_argument
/// on insufficient history.
double window_variation(const std::vector<NsimTriple>& history, int u);

/// Re-weights the context from the evolution's final lists: for every term in
/// any of the three supports, gamma*w + zeta*desc + xi*disc, zero weights
/// dropped, rescaled to max 1, phase incremented. Throws std::runtime_error
/// when everything cancels to zero (degenerate run).
ContextProfile vocabulary_leap(const ContextProfile& context, const TermScoreList& desc,
                               const TermScoreList& disc, const RunConfig& config);

/// Full loop for one topic. The RNG is seeded from config.rng_seed mixed with
/// the topic id, so a multi-topic run is reproducible topic by topic. The
/// vocabulary is copied: description terms unseen in the corpus get local ids.
/// Stopwords should match the set the corpus was ingested with. Throws
/// std::runtime_error when the description normalizes to nothing.
RunTrace run(const TopicSpec& topic, const Index& index, Vocabulary vocab,
             const RunConfig& config, const Stopwords& stopwords = default_stopwords());

}  // namespace vocleap
