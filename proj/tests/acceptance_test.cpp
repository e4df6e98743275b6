#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <vector>

#include "support/dense_oracle.hpp"
#include "support/fixtures.hpp"
#include "vocleap/corpus.hpp"
#include "vocleap/evalkit.hpp"
#include "vocleap/evolver.hpp"
#include "vocleap/index.hpp"
#include "vocleap/synthcorpus.hpp"
#include "vocleap/termstats.hpp"
#include "vocleap/trace.hpp"

using namespace vocleap;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* pattern, ...) {
  char buffer[512];
  va_list args;
  va_start(args, pattern);
  std::vsnprintf(buffer, sizeof(buffer), pattern, args);
  va_end(args);
  return buffer;
}

double elapsed_seconds(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

// ---- shared random matrix set (criteria 1 and 2) ----

struct RandomCase {
  TermDocMatrix sparse;
  oracle::Matrix dense;
};

const std::vector<RandomCase>& random_cases() {
  static const std::vector<RandomCase> cases = [] {
    std::mt19937 rng(20260819);
    std::uniform_int_distribution<int> m_dist(1, 20);
    std::uniform_int_distribution<int> n_dist(1, 50);
    std::uniform_int_distribution<int> count_dist(0, 9);
    std::vector<RandomCase> built;
    built.reserve(100);
    for (int c = 0; c < 100; ++c) {
      const int m = m_dist(rng);
      const int n = n_dist(rng);
      oracle::Matrix dense(m, std::vector<double>(n, 0.0));
      std::vector<std::pair<std::string, TermCounts>> rows(m);
      for (int i = 0; i < m; ++i) {
        rows[i].first = "d" + std::to_string(i);
        for (int j = 0; j < n; ++j) {
          const int count = count_dist(rng);
          if (count > 0) {
            dense[i][j] = count;
            rows[i].second[static_cast<TermId>(j)] = count;
          }
        }
      }
      built.push_back({TermDocMatrix(std::move(rows), std::size_t(n)), std::move(dense)});
    }
    return built;
  }();
  return cases;
}

Outcome criterion_oracle_suite() {
  const auto start = std::chrono::steady_clock::now();
  std::mt19937 rng(7);
  double max_err = 0.0;
  const auto track = [&](double got, double want) {
    max_err = std::max(max_err, std::fabs(got - want));
  };
  for (const auto& [sparse, dense] : random_cases()) {
    const std::size_t m = dense.size();
    const std::size_t n = dense[0].size();
    for (std::size_t i = 0; i < m; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        track(descriptive_power(sparse, i, TermId(j)), oracle::descD(dense, i, j));
        track(discriminating_power(sparse, TermId(j), i), oracle::discD(dense, j, i));
      }
    }
    std::uniform_int_distribution<std::size_t> row_dist(0, m - 1);
    std::uniform_int_distribution<std::size_t> term_dist(0, n - 1);
    for (int sample = 0; sample < 8; ++sample) {
      const std::size_t a = row_dist(rng);
      const std::size_t b = row_dist(rng);
      const std::size_t t = term_dist(rng);
      track(cosine_similarity(sparse, a, b), oracle::sim(dense, a, b));
      track(topic_descriptive_power(sparse, a, TermId(t)), oracle::descT(dense, a, t));
      track(topic_discriminating_power(sparse, TermId(t), a), oracle::discT(dense, t, a));

      Query query;
      std::vector<std::size_t> dense_query;
      for (std::size_t qt = 0; qt < n; ++qt) {
        if (std::uniform_real_distribution<>(0, 1)(rng) < 0.3) {
          query.terms.push_back(TermId(qt));
          dense_query.push_back(qt);
        }
      }
      track(novelty_similarity(query, sparse, a, b), oracle::nsim(dense_query, dense, a, b));
    }
  }
  const double took = elapsed_seconds(start);
  const bool pass = max_err <= 1e-9 && took < 10.0;
  return {pass, fmt("sparse scores vs dense oracle on 100 random matrices: max err %.2e, %.1fs",
                    max_err, took)};
}

Outcome criterion_normalization() {
  double worst_row = 0.0, worst_col = 0.0;
  bool in_range = true;
  std::mt19937 rng(11);
  const auto check_range = [&](double v) { in_range = in_range && v >= 0.0 && v <= 1.0 + 1e-12; };
  for (const auto& [sparse, dense] : random_cases()) {
    const std::size_t m = dense.size();
    const std::size_t n = dense[0].size();
    for (std::size_t i = 0; i < m; ++i) {
      if (sparse.row(i).empty()) continue;
      double sum = 0.0;
      for (std::size_t j = 0; j < n; ++j) {
        const double v = descriptive_power(sparse, i, TermId(j));
        check_range(v);
        sum += v * v;
      }
      worst_row = std::max(worst_row, std::fabs(sum - 1.0));
    }
    for (std::size_t j = 0; j < n; ++j) {
      if (sparse.doc_frequency(TermId(j)) == 0) continue;
      double sum = 0.0;
      for (std::size_t i = 0; i < m; ++i) {
        const double v = discriminating_power(sparse, TermId(j), i);
        check_range(v);
        sum += v * v;
      }
      worst_col = std::max(worst_col, std::fabs(sum - 1.0));
    }
    std::uniform_int_distribution<std::size_t> row_dist(0, m - 1);
    std::uniform_int_distribution<std::size_t> term_dist(0, n - 1);
    for (int sample = 0; sample < 4; ++sample) {
      const std::size_t a = row_dist(rng);
      const std::size_t b = row_dist(rng);
      const TermId t = TermId(term_dist(rng));
      check_range(cosine_similarity(sparse, a, b));
      check_range(topic_descriptive_power(sparse, a, t));
      check_range(topic_discriminating_power(sparse, t, a));
      check_range(novelty_similarity(Query{{t}}, sparse, a, b));
    }
  }
  const bool pass = worst_row <= 1e-9 && worst_col <= 1e-9 && in_range;
  return {pass, fmt("unit norms and [0,1] ranges: worst row dev %.2e, worst column dev %.2e, "
                    "ranges %s",
                    worst_row, worst_col, in_range ? "ok" : "violated")};
}

Outcome criterion_fixture_constants() {
  const auto corpus = testsupport::fixture_f1();
  std::vector<std::pair<std::string, TermCounts>> rows;
  for (const auto& doc : corpus.documents) rows.emplace_back(doc.doc_id, doc.term_freqs);
  const TermDocMatrix sparse(std::move(rows), corpus.vocab.size());
  const oracle::Matrix dense{{2, 1, 0}, {0, 3, 4}, {1, 0, 1}};

  struct Probe {
    const char* name;
    double got;
    double oracle_value;
    double frozen;  // oracle-re-derived regression constant
  };
  const Probe probes[] = {
      {"descD(d0,t0)", descriptive_power(sparse, 0, 0), oracle::descD(dense, 0, 0),
       0.8944271909999159},
      {"sim(d0,d1)", cosine_similarity(sparse, 0, 1), oracle::sim(dense, 0, 1),
       0.2683281572999747},
      {"descT(d0,t0)", topic_descriptive_power(sparse, 0, 0), oracle::descT(dense, 0, 0),
       0.3510584946878484},
      {"discT(t0,d1)", topic_discriminating_power(sparse, 0, 1), oracle::discT(dense, 0, 1),
       0.41700679112460626},
      {"nsim({t2},d0,d1)", novelty_similarity(Query{{2}}, sparse, 0, 1),
       oracle::nsim({2}, dense, 0, 1), 0.4472135954999579},
  };
  for (const auto& probe : probes) {
    if (std::fabs(probe.got - probe.oracle_value) > 1e-9) {
      return {false, fmt("%s = %.12f disagrees with its oracle re-derivation %.12f", probe.name,
                         probe.got, probe.oracle_value)};
    }
    if (std::fabs(probe.got - probe.frozen) > 1e-5) {
      return {false, fmt("%s = %.12f drifted from the frozen constant %.12f", probe.name,
                         probe.got, probe.frozen)};
    }
  }
  return {true,
          "five fixture constants re-derived by the oracle and matched at 1e-9 "
          "(descT/discT frozen to the re-derived values; the six-digit approximations "
          "0.351123/0.416987 sit 6.5e-5/2.0e-5 off the oracle)"};
}

Outcome criterion_roulette() {
  const auto start = std::chrono::steady_clock::now();
  const std::vector<std::pair<int, double>> pool{{0, 0.5}, {1, 0.3}, {2, 0.2}};
  Rng rng(424242);
  int counts[3] = {0, 0, 0};
  const int draws = 100000;
  for (int i = 0; i < draws; ++i) ++counts[roulette_select(pool, 1, rng)[0]];
  const double took = elapsed_seconds(start);
  double worst = 0.0;
  for (int i = 0; i < 3; ++i) {
    worst = std::max(worst, std::fabs(double(counts[i]) / draws - pool[i].second));
  }
  const bool pass = worst <= 0.02 && took < 5.0;
  return {pass, fmt("10^5 seeded draws from fitness (0.5,0.3,0.2): max frequency deviation "
                    "%.4f, %.1fs",
                    worst, took)};
}

// ---- criterion 5 drives the installed command-line binary ----

bool run_cli(const std::string& args) {
  const std::string command = std::string(VOCLEAP_CLI_PATH) + " " + args + " >/dev/null 2>&1";
  const int status = std::system(command.c_str());
  return status != -1 && WIFEXITED(status) && WEXITSTATUS(status) == 0;
}

std::string slurp(const fs::path& file) {
  std::ifstream in(file, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + file.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

Outcome criterion_pipeline_determinism() {
  const fs::path root = fs::temp_directory_path() / "vocleap_acceptance";
  fs::remove_all(root);
  SynthConfig synth_config;
  synth_config.topics = 2;
  synth_config.docs_per_topic = 40;
  synth_config.seed = 7;
  write_synthetic(generate_synthetic(synth_config), root / "corpus", root / "topics");
  const auto topic = [&](const char* id) {
    return (root / "topics" / ("topic_" + std::string(id) + ".json")).string();
  };

  for (const char* tag : {"a", "b"}) {
    const fs::path base = root / tag;
    std::ofstream config(root / (std::string(tag) + ".json"));
    config << "{\n"
           << "  \"index_path\": \"" << (base / "index.json").string() << "\",\n"
           << "  \"topics\": [\"" << topic("t0") << "\", \"" << topic("t1") << "\"],\n"
           << "  \"output_dir\": \"" << (base / "traces").string() << "\",\n"
           << "  \"u\": 3, \"v\": 6, \"max_iterations\": 12, \"rng_seed\": 11\n"
           << "}\n";
    config.close();
    if (!run_cli("ingest --corpus " + (root / "corpus").string() + " --index " +
                 (base / "index.json").string())) {
      return {false, std::string("ingest failed for pipeline ") + tag};
    }
    if (!run_cli("run --config " + (root / (std::string(tag) + ".json")).string())) {
      return {false, std::string("run failed for pipeline ") + tag};
    }
    if (!run_cli("report --traces " + (base / "traces").string() + " --topics " + topic("t0") +
                 " " + topic("t1") + " --out " + (base / "report").string())) {
      return {false, std::string("report failed for pipeline ") + tag};
    }
  }

  const char* files[] = {"traces/trace_t0.json", "traces/trace_t1.json", "report/series_t0.csv",
                         "report/series_t1.csv", "report/scatter.csv",   "report/summary.csv",
                         "report/summary.txt"};
  for (const char* file : files) {
    if (slurp(root / "a" / file) != slurp(root / "b" / file)) {
      return {false, fmt("%s differs between the two executions", file)};
    }
  }
  return {true, "two ingest+run+report executions with one seed: traces and CSVs byte-identical"};
}

// traces from the directional experiment, reused by the mechanics criterion
std::vector<RunTrace> experiment_traces;

Outcome criterion_directional_experiment() {
  const auto start = std::chrono::steady_clock::now();
  const auto synthetic = generate_synthetic(SynthConfig{});
  const auto index = Index::build(synthetic.corpus);

  RunConfig config;
  config.u = 10;
  config.v = 100;
  config.alpha = 0.5;
  config.beta = 0.5;
  config.gamma = 0.33;
  config.zeta = 0.33;
  config.xi = 0.33;
  config.mu = 0.2;
  config.nu = 0.1;
  config.queries_per_iteration = 10;
  config.results_per_query = 10;

  int improved = 0;
  double first_f1_sum = 0.0, best_f1_sum = 0.0;
  for (int r = 0; r < 20; ++r) {
    config.rng_seed = 4000 + r;
    const auto& topic = synthetic.topics[std::size_t(r) % synthetic.topics.size()];
    auto trace = run(topic, index, synthetic.corpus.vocab, config);
    const auto rows = first_vs_best(trace, topic);
    if (rows[0].metric != "nsim_max" || rows[3].metric != "f1") {
      return {false, "first_vs_best rows not in canonical metric order"};
    }
    improved += rows[0].improved ? 1 : 0;
    first_f1_sum += rows[3].first;
    best_f1_sum += rows[3].best;
    experiment_traces.push_back(std::move(trace));
  }
  const double took = elapsed_seconds(start);
  const bool pass = improved >= 18 && best_f1_sum >= first_f1_sum && took < 60.0;
  return {pass, fmt("20 seeded runs over 3x200 synthetic docs: nsim_max improved in %d/20, "
                    "mean F1 %.3f -> %.3f, %.1fs",
                    improved, first_f1_sum / 20, best_f1_sum / 20, took)};
}

Outcome criterion_mechanics() {
  if (experiment_traces.empty()) return {false, "no traces from the directional experiment"};
  int leaps = 0;
  for (const auto& trace : experiment_traces) {
    if (trace.termination != "converged" && trace.termination != "budget") {
      return {false, "unexpected termination \"" + trace.termination + "\""};
    }
    for (const auto& record : trace.iterations) {
      if (record.desc_list_size > 100 || record.disc_list_size > 100) {
        return {false, fmt("iteration %d holds a score list beyond cap 100", record.iteration)};
      }
    }
    int phase_start = 1;
    for (const auto& leap : trace.leaps) {
      const int offset = leap.iteration - phase_start + 1;
      if (offset % trace.config.u != 0) {
        return {false, fmt("leap at iteration %d sits at offset %d within its phase",
                           leap.iteration, offset)};
      }
      phase_start = leap.iteration + 1;
      ++leaps;
    }
  }
  return {true, fmt("all %d leaps at whole window offsets, lists capped at 100, terminations "
                    "converged/budget",
                    leaps)};
}

Outcome criterion_statistics() {
  const auto ci = mean_ci({1.0, 2.0, 3.0}, 0.95);
  const double f = f1(0.5, 2.0 / 3.0);
  const bool ci_ok = std::fabs(ci.mean - 2.0) <= 1e-3 && std::fabs(ci.lower + 0.4841) <= 1e-3 &&
                     std::fabs(ci.upper - 4.4841) <= 1e-3;
  const bool f1_ok = std::fabs(f - 4.0 / 7.0) <= 1e-12;
  return {ci_ok && f1_ok,
          fmt("mean_ci([1,2,3],0.95) = (%.4f, %.4f, %.4f), f1(0.5,2/3) = %.12f", ci.mean, ci.lower,
              ci.upper, f)};
}

}  // namespace

int main() {
  struct Entry {
    int id;
    Outcome (*check)();
  };
  const Entry entries[] = {
      {1, criterion_oracle_suite},    {2, criterion_normalization},
      {3, criterion_fixture_constants}, {4, criterion_roulette},
      {5, criterion_pipeline_determinism}, {6, criterion_directional_experiment},
      {7, criterion_mechanics},       {8, criterion_statistics},
  };
  bool all_pass = true;
  for (const auto& entry : entries) {
    Outcome outcome;
    try {
      outcome = entry.check();
    } catch (const std::exception& e) {
      outcome = {false, std::string("exception: ") + e.what()};
    }
    std::printf("criterion %d: %s  %s\n", entry.id, outcome.pass ? "PASS" : "FAIL",
                outcome.detail.c_str());
    std::fflush(stdout);
    all_pass = all_pass && outcome.pass;
  }
  return all_pass ? 0 : 1;
}
