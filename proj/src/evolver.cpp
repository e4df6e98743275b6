#include "vocleap/evolver.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <stdexcept>

namespace vocleap {

void RunConfig::validate() const {
  const auto coefficient = [](const char* name, double value) {
    if (value < 0.0 || value > 1.0) {
      throw std::invalid_argument(std::string(name) + " must be in [0,1]");
    }
  };
  coefficient("alpha", alpha);
  coefficient("beta", beta);
  coefficient("gamma", gamma);
  coefficient("zeta", zeta);
  coefficient("xi", xi);
  coefficient("mu", mu);
  coefficient("nu", nu);
  if (!(mu > nu && nu > 0.0)) throw std::invalid_argument("mu > nu > 0 must hold");
  if (u < 1) throw std::invalid_argument("u must be at least 1");
  if (v < u) throw std::invalid_argument("v must be at least u");
  if (query_size < 1) throw std::invalid_argument("query_size must be at least 1");
  if (queries_per_iteration < 1) {
    throw std::invalid_argument("queries_per_iteration must be at least 1");
  }
  if (results_per_query < 1) throw std::invalid_argument("results_per_query must be at least 1");
  if (list_cap < 1) throw std::invalid_argument("list_cap must be at least 1");
  if (max_iterations < v) throw std::invalid_argument("max_iterations must be at least v");
}

std::uint64_t fnv1a64(std::string_view bytes) {
  std::uint64_t hash = 14695981039346656037ull;
  for (const char c : bytes) {
    hash ^= static_cast<unsigned char>(c);
    hash *= 1099511628211ull;
  }
  return hash;
}

std::vector<Query> build_queries(const ContextProfile& context, const EvolutionState& state,
                                 const RunConfig& config, Rng& rng) {
  bool any_positive = false;
  for (const auto& [_, w] : context.weights) {
    if (w > 0.0) {
      any_positive = true;
      break;
    }
  }
  if (!any_positive) throw std::invalid_argument("context has no positive weight");

  std::map<TermId, double> fitness;
  for (const auto& entry : state.desc_scores) {
    fitness[entry.term] = std::max(fitness[entry.term], entry.score);
  }
  for (const auto& entry : state.disc_scores) {
    fitness[entry.term] = std::max(fitness[entry.term], entry.score);
  }
  bool pool_alive = false;
  for (const auto& [_, f] : fitness) {
    if (f > 0.0) {
      pool_alive = true;
      break;
    }
  }
  if (!pool_alive) {
    fitness.clear();
    for (const auto& [term, w] : context.weights) {
      if (w > 0.0) fitness[term] = w;
    }
  }

  const std::vector<std::pair<TermId, double>> pool(fitness.begin(), fitness.end());
  std::vector<Query> queries;
  queries.reserve(static_cast<std::size_t>(config.queries_per_iteration));
  for (int i = 0; i < config.queries_per_iteration; ++i) {
    queries.push_back({roulette_select(pool, static_cast<std::size_t>(config.query_size), rng)});
  }
  return queries;
}

namespace {

TermScoreList ranked(std::map<TermId, double> scores, std::size_t cap) {
  TermScoreList list;
  list.reserve(scores.size());
  for (const auto& [term, score] : scores) {
    if (score > 0.0) list.push_back({term, score});
  }
  std::stable_sort(list.begin(), list.end(),
                   [](const TermScoreEntry& a, const TermScoreEntry& b) {
                     if (a.score != b.score) return a.score > b.score;
                     return a.term < b.term;
                   });
  if (list.size() > cap) list.resize(cap);
  return list;
}

TermCounts context_pseudo_counts(const TermWeights& weights) {
  TermCounts counts;
  for (const auto& [term, w] : weights) {
    if (w <= 0.0) continue;
    const auto c = static_cast<int>(std::lround(w * 100.0));
    counts[term] = std::max(c, 1);
  }
  return counts;
}

std::vector<std::pair<std::string, double>> top_entries(const TermScoreList& list,
                                                        const Vocabulary& vocab,
                                                        std::size_t limit) {
  std::vector<std::pair<std::string, double>> top;
  for (std::size_t i = 0; i < list.size() && i < limit; ++i) {
    top.emplace_back(vocab.term(list[i].term), list[i].score);
  }
  return top;
}

}  // namespace

TermScoreList blend_scores(const TermScoreList& prev, const TermScoreList& fresh, double alpha,
                           double beta, std::size_t cap) {
  std::map<TermId, double> merged;
  for (const auto& entry : prev) merged[entry.term] += alpha * entry.score;
  for (const auto& entry : fresh) merged[entry.term] += beta * entry.score;
  return ranked(std::move(merged), cap);
}

IterationRecord iteration_step(const ContextProfile& context, EvolutionState& state,
                               const Index& index, const Vocabulary& vocab,
                               const RunConfig& config, Rng& rng) {
  IterationRecord record;
  record.phase = context.phase;

  const auto queries = build_queries(context, state, config, rng);
  std::set<TermId> query_union;
  for (const auto& query : queries) {
    std::vector<std::string> words;
    words.reserve(query.terms.size());
    for (const TermId term : query.terms) {
      words.push_back(vocab.term(term));
      query_union.insert(term);
    }
    record.queries.push_back(std::move(words));
  }

  std::map<std::string, double> retrieved;
  for (const auto& query : queries) {
    for (const auto& hit : index.execute_query(query, config.results_per_query)) {
      auto [it, inserted] = retrieved.emplace(hit.doc_id, hit.score);
      if (!inserted) it->second = std::max(it->second, hit.score);
    }
  }
  record.retrieved.assign(retrieved.begin(), retrieved.end());

  std::vector<std::pair<std::string, TermCounts>> rows;
  rows.reserve(retrieved.size() + 1);
  rows.emplace_back("__context__", context_pseudo_counts(context.weights));
  for (const auto& [doc_id, _] : retrieved) {
    rows.emplace_back(doc_id, index.doc_vector(doc_id));
  }
  const TermDocMatrix matrix(std::move(rows), vocab.size());

  const auto cap = static_cast<std::size_t>(config.list_cap);
  const auto fresh_desc = topic_descriptors(matrix, 0, cap);
  const auto fresh_disc = topic_discriminators(matrix, 0, cap);
  state.desc_scores = blend_scores(state.desc_scores, fresh_desc, config.alpha, config.beta, cap);
  state.disc_scores = blend_scores(state.disc_scores, fresh_disc, config.alpha, config.beta, cap);

  if (!record.retrieved.empty()) {
    const Query mask{{query_union.begin(), query_union.end()}};
    double lo = 1.0, hi = 0.0, sum = 0.0;
    for (std::size_t row = 1; row < matrix.row_count(); ++row) {
      const double s = novelty_similarity(mask, matrix, 0, row);
      lo = std::min(lo, s);
      hi = std::max(hi, s);
      sum += s;
    }
    record.nsim = {lo, sum / static_cast<double>(matrix.row_count() - 1), hi};
  }

  record.desc_list_size = state.desc_scores.size();
  record.disc_list_size = state.disc_scores.size();
  record.top_descriptors = top_entries(state.desc_scores, vocab, 10);
  record.top_discriminators = top_entries(state.disc_scores, vocab, 10);

  ++state.j;
  state.nsim_history.push_back(record.nsim);
  return record;
}

double window_variation(const std::vector<NsimTriple>& history, int u) {
  if (u < 1 || history.size() < static_cast<std::size_t>(u)) {
    throw std::invalid_argument("variation window needs at least u history entries");
  }
  double lo = history[history.size() - static_cast<std::size_t>(u)].avg;
  double hi = lo;
  for (std::size_t i = history.size() - static_cast<std::size_t>(u); i < history.size(); ++i) {
    lo = std::min(lo, history[i].avg);
    hi = std::max(hi, history[i].avg);
  }
  if (hi == 0.0) return 1.0;
  return (hi - lo) / hi;
}

ContextProfile vocabulary_leap(const ContextProfile& context, const TermScoreList& desc,
                               const TermScoreList& disc, const RunConfig& config) {
  TermWeights merged;
  for (const auto& [term, w] : context.weights) merged[term] += config.gamma * w;
  for (const auto& entry : desc) merged[entry.term] += config.zeta * entry.score;
  for (const auto& entry : disc) merged[entry.term] += config.xi * entry.score;

  ContextProfile next;
  next.phase = context.phase + 1;
  double max_weight = 0.0;
  for (const auto& [term, w] : merged) {
    if (w > 0.0) {
      next.weights[term] = w;
      max_weight = std::max(max_weight, w);
    }
  }
  if (next.weights.empty()) {
    throw std::runtime_error("vocabulary leap produced an empty context");
  }
  for (auto& [_, w] : next.weights) w /= max_weight;
  return next;
}

RunTrace run(const TopicSpec& topic, const Index& index, Vocabulary vocab,
             const RunConfig& config, const Stopwords& stopwords) {
  config.validate();

  RunTrace trace;
  trace.topic_id = topic.topic_id;
  trace.config = config;

  const auto seeded = vectorize(topic.description_text, vocab, true, stopwords);
  if (seeded.counts.empty()) {
    throw std::runtime_error("topic " + topic.topic_id + ": description normalizes to nothing");
  }
  ContextProfile context;
  int max_count = 0;
  for (const auto& [_, c] : seeded.counts) max_count = std::max(max_count, c);
  for (const auto& [term, c] : seeded.counts) {
    context.weights[term] = static_cast<double>(c) / max_count;
  }

  Rng rng(config.rng_seed ^ fnv1a64(topic.topic_id));
  EvolutionState state;
  int phase_start = 1;
  for (int it = 1; it <= config.max_iterations; ++it) {
    auto record = iteration_step(context, state, index, vocab, config, rng);
    record.iteration = it;
    trace.iterations.push_back(std::move(record));

    const int phase_iters = it - phase_start + 1;
    if (phase_iters < config.u || phase_iters % config.u != 0) continue;

    const double theta = window_variation(state.nsim_history, config.u);
    if (it >= config.v && theta < config.nu) {
      trace.termination = "converged";
      break;
    }
    if (theta < config.mu) {
      ContextProfile next;
      try {
        next = vocabulary_leap(context, state.desc_scores, state.disc_scores, config);
      } catch (const std::runtime_error&) {
        trace.termination = "degenerate";
        break;
      }
      trace.leaps.push_back({it, context.weights.size(), next.weights.size()});
      context = std::move(next);
      state = EvolutionState{};
      phase_start = it + 1;
    }
  }
  if (trace.termination.empty()) trace.termination = "budget";
  return trace;
}

}  // namespace vocleap
