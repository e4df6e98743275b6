#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "vocleap/corpus.hpp"
#include "vocleap/evalkit.hpp"
#include "vocleap/evolver.hpp"
#include "vocleap/index.hpp"
#include "vocleap/trace.hpp"

namespace fs = std::filesystem;

namespace {

int verbosity = 1;

void info(const std::string& message) {
  if (verbosity >= 1) std::cerr << "vocleap: " << message << '\n';
}

void error(const std::string& message) { std::cerr << "vocleap: error: " << message << '\n'; }

void report_load_issues(const vocleap::LoadReport& report) {
  for (const auto& warning : report.warnings) info("warning: " + warning);
  for (const auto& file : report.skipped_files) info("warning: skipped undecodable file " + file);
  for (const auto& doc : report.empty_documents) {
    info("warning: document " + doc + " normalized to no terms");
  }
}

// everything cmd_run needs: plumbing paths plus the evolver parameters
struct RunPlan {
  fs::path corpus_dir;
  fs::path index_path;
  std::vector<fs::path> topic_files;
  fs::path output_dir = "traces";
  vocleap::RunConfig config;
};

RunPlan parse_run_plan(const fs::path& file) {
  std::ifstream in(file, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open config file " + file.string());
  nlohmann::json parsed;
  try {
    parsed = nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw std::runtime_error("config file " + file.string() + " is not valid JSON: " + e.what());
  }
  if (!parsed.is_object()) throw std::runtime_error("config file must hold a JSON object");

  RunPlan plan;
  nlohmann::json overrides = nlohmann::json::object();
  const auto& known = vocleap::run_config_keys();
  for (const auto& [key, value] : parsed.items()) {
    try {
      if (key == "corpus_dir") {
        plan.corpus_dir = value.get<std::string>();
      } else if (key == "index_path") {
        plan.index_path = value.get<std::string>();
      } else if (key == "output_dir") {
        plan.output_dir = value.get<std::string>();
      } else if (key == "verbosity") {
        verbosity = value.get<int>();
      } else if (key == "topics") {
        for (const auto& entry : value) plan.topic_files.emplace_back(entry.get<std::string>());
      } else if (std::find(known.begin(), known.end(), key) != known.end()) {
        overrides[key] = value;
      } else {
        throw std::runtime_error("unknown config key: " + key);
      }
    } catch (const nlohmann::json::exception& e) {
      throw std::runtime_error("config key \"" + key + "\": " + e.what());
    }
  }
  plan.config = vocleap::run_config_from_json(overrides);
  return plan;
}

int cmd_ingest(const fs::path& corpus_dir, const fs::path& index_path) {
  auto loaded = vocleap::load_corpus(corpus_dir, vocleap::default_stopwords());
  report_load_issues(loaded.report);
  if (index_path.has_parent_path()) fs::create_directories(index_path.parent_path());
  vocleap::save_snapshot(loaded.corpus, index_path);
  info("ingested " + std::to_string(loaded.corpus.documents.size()) + " documents, " +
       std::to_string(loaded.corpus.vocab.size()) + " terms -> " + index_path.string());
  return 0;
}

int cmd_run(const RunPlan& plan) {
  plan.config.validate();
  if (plan.topic_files.empty()) throw std::runtime_error("config lists no topics");

  vocleap::Corpus corpus;
  if (!plan.index_path.empty()) {
    corpus = vocleap::load_snapshot(plan.index_path);
    info("loaded snapshot " + plan.index_path.string() + " (" +
         std::to_string(corpus.documents.size()) + " documents)");
  } else if (!plan.corpus_dir.empty()) {
    auto loaded = vocleap::load_corpus(plan.corpus_dir, vocleap::default_stopwords());
    report_load_issues(loaded.report);
    corpus = std::move(loaded.corpus);
    info("ingested " + plan.corpus_dir.string() + " (" +
         std::to_string(corpus.documents.size()) + " documents)");
  } else {
    throw std::runtime_error("config needs corpus_dir or index_path");
  }
  const auto index = vocleap::Index::build(corpus);
  fs::create_directories(plan.output_dir);

  int failed = 0;
  for (const auto& topic_file : plan.topic_files) {
    try {
      const auto topic = vocleap::load_topic(topic_file);
      const auto trace = vocleap::run(topic, index, corpus.vocab, plan.config);
      const auto out =
          plan.output_dir / ("trace_" + vocleap::filename_component(topic.topic_id) + ".json");
      vocleap::save_trace(trace, out);
      info("topic " + topic.topic_id + ": " + std::to_string(trace.iterations.size()) +
           " iterations, " + std::to_string(trace.leaps.size()) + " leap(s), " +
           trace.termination + " -> " + out.string());
    } catch (const std::exception& e) {
      error("topic " + topic_file.string() + " failed: " + e.what());
      ++failed;
    }
  }
  return failed == 0 ? 0 : 2;
}

int cmd_report(const fs::path& traces_dir, const std::vector<fs::path>& topic_files,
               const fs::path& output_dir) {
  std::vector<fs::path> trace_files;
  for (const auto& entry : fs::directory_iterator(traces_dir)) {
    if (entry.is_regular_file() && entry.path().extension() == ".json") {
      trace_files.push_back(entry.path());
    }
  }
  std::sort(trace_files.begin(), trace_files.end());
  if (trace_files.empty()) {
    throw std::runtime_error("no trace files in " + traces_dir.string());
  }

  std::vector<vocleap::RunTrace> traces;
  traces.reserve(trace_files.size());
  for (const auto& file : trace_files) traces.push_back(vocleap::load_trace(file));
  std::vector<vocleap::TopicSpec> topics;
  topics.reserve(topic_files.size());
  for (const auto& file : topic_files) topics.push_back(vocleap::load_topic(file));

  vocleap::export_report(traces, topics, output_dir);
  info("report over " + std::to_string(traces.size()) + " trace(s) -> " + output_dir.string());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"learns improved vocabulary characterizations of topics by iterative retrieval"};
  app.require_subcommand(1);

  auto* ingest = app.add_subcommand("ingest", "build a corpus snapshot from a directory of .txt files");
  fs::path ingest_corpus, ingest_index;
  ingest->add_option("--corpus", ingest_corpus, "directory of .txt documents")->required();
  ingest->add_option("--index", ingest_index, "snapshot file to write")->required();

  auto* run = app.add_subcommand("run", "evolve every topic listed in a config file");
  fs::path run_config_file, run_out;
  std::uint64_t run_seed = 0;
  run->add_option("--config", run_config_file, "JSON config file")->required();
  auto* seed_option = run->add_option("--seed", run_seed, "overrides rng_seed from the config");
  auto* out_option = run->add_option("--out", run_out, "overrides output_dir from the config");

  auto* report = app.add_subcommand("report", "summarize traces into CSVs and a text summary");
  fs::path report_traces, report_out;
  std::vector<fs::path> report_topics;
  report->add_option("--traces", report_traces, "directory of trace JSON files")->required();
  report->add_option("--topics", report_topics, "topic JSON files")->required()->expected(-1);
  report->add_option("--out", report_out, "directory for the report files")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (ingest->parsed()) return cmd_ingest(ingest_corpus, ingest_index);
    if (run->parsed()) {
      auto plan = parse_run_plan(run_config_file);
      if (seed_option->count() > 0) plan.config.rng_seed = run_seed;
      if (out_option->count() > 0) plan.output_dir = run_out;
      return cmd_run(plan);
    }
    return cmd_report(report_traces, report_topics, report_out);
  } catch (const std::exception& e) {
    error(e.what());
    return 1;
  }
}
