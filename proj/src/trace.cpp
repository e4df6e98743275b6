#include "vocleap/trace.hpp"

#include <fstream>
#include <stdexcept>

namespace vocleap {

namespace {

constexpr const char* kFormat = "vocleap-trace-v1";

nlohmann::ordered_json pairs_to_json(const std::vector<std::pair<std::string, double>>& pairs) {
  auto array = nlohmann::ordered_json::array();
  for (const auto& [name, value] : pairs) array.push_back({name, value});
  return array;
}

std::vector<std::pair<std::string, double>> pairs_from_json(const nlohmann::json& array,
                                                            const char* what) {
  if (!array.is_array()) throw std::runtime_error(std::string(what) + " must be an array");
  std::vector<std::pair<std::string, double>> pairs;
  for (const auto& entry : array) {
    if (!entry.is_array() || entry.size() != 2 || !entry[0].is_string() ||
        !entry[1].is_number()) {
      throw std::runtime_error(std::string(what) + " entries must be [string, number] pairs");
    }
    pairs.emplace_back(entry[0].get<std::string>(), entry[1].get<double>());
  }
  return pairs;
}

}  // namespace

nlohmann::ordered_json run_config_to_json(const RunConfig& c) {
  nlohmann::ordered_json object;
  object["u"] = c.u;
  object["v"] = c.v;
  object["alpha"] = c.alpha;
  object["beta"] = c.beta;
  object["gamma"] = c.gamma;
  object["zeta"] = c.zeta;
  object["xi"] = c.xi;
  object["mu"] = c.mu;
  object["nu"] = c.nu;
  object["queries_per_iteration"] = c.queries_per_iteration;
  object["results_per_query"] = c.results_per_query;
  object["query_size"] = c.query_size;
  object["list_cap"] = c.list_cap;
  object["max_iterations"] = c.max_iterations;
  object["rng_seed"] = c.rng_seed;
  return object;
}

const std::vector<std::string>& run_config_keys() {
  static const std::vector<std::string> keys = {
      "u",  "v",  "alpha",      "beta",
      "gamma", "zeta", "xi",    "mu",
      "nu", "queries_per_iteration", "results_per_query", "query_size",
      "list_cap", "max_iterations", "rng_seed"};
  return keys;
}

RunConfig run_config_from_json(const nlohmann::json& object) {
  if (!object.is_object()) throw std::runtime_error("config must be a JSON object");
  RunConfig config;
  const auto read_int = [&](const char* key, int& out) {
    if (!object.contains(key)) return;
    if (!object[key].is_number_integer()) {
      throw std::runtime_error(std::string("config key \"") + key + "\" must be an integer");
    }
    out = object[key].get<int>();
  };
  const auto read_real = [&](const char* key, double& out) {
    if (!object.contains(key)) return;
    if (!object[key].is_number()) {
      throw std::runtime_error(std::string("config key \"") + key + "\" must be a number");
    }
    out = object[key].get<double>();
  };
  read_int("u", config.u);
  read_int("v", config.v);
  read_real("alpha", config.alpha);
  read_real("beta", config.beta);
  read_real("gamma", config.gamma);
  read_real("zeta", config.zeta);
  read_real("xi", config.xi);
  read_real("mu", config.mu);
  read_real("nu", config.nu);
  read_int("queries_per_iteration", config.queries_per_iteration);
  read_int("results_per_query", config.results_per_query);
  read_int("query_size", config.query_size);
  read_int("list_cap", config.list_cap);
  read_int("max_iterations", config.max_iterations);
  if (object.contains("rng_seed")) {
    if (!object["rng_seed"].is_number_integer() || object["rng_seed"].get<double>() < 0) {
      throw std::runtime_error("config key \"rng_seed\" must be a non-negative integer");
    }
    config.rng_seed = object["rng_seed"].get<std::uint64_t>();
  }
  return config;
}

nlohmann::ordered_json trace_to_json(const RunTrace& trace) {
  nlohmann::ordered_json root;
  root["format"] = kFormat;
  root["topic_id"] = trace.topic_id;
  root["termination"] = trace.termination;
  root["config"] = run_config_to_json(trace.config);

  auto leaps = nlohmann::ordered_json::array();
  for (const auto& leap : trace.leaps) {
    nlohmann::ordered_json entry;
    entry["iteration"] = leap.iteration;
    entry["old_terms"] = leap.old_terms;
    entry["new_terms"] = leap.new_terms;
    leaps.push_back(std::move(entry));
  }
  root["leaps"] = std::move(leaps);

  auto iterations = nlohmann::ordered_json::array();
  for (const auto& it : trace.iterations) {
    nlohmann::ordered_json entry;
    entry["iteration"] = it.iteration;
    entry["phase"] = it.phase;
    entry["queries"] = it.queries;
    entry["retrieved"] = pairs_to_json(it.retrieved);
    entry["nsim"] = {{"min", it.nsim.min}, {"avg", it.nsim.avg}, {"max", it.nsim.max}};
    entry["desc_size"] = it.desc_list_size;
    entry["disc_size"] = it.disc_list_size;
    entry["top_descriptors"] = pairs_to_json(it.top_descriptors);
    entry["top_discriminators"] = pairs_to_json(it.top_discriminators);
    iterations.push_back(std::move(entry));
  }
  root["iterations"] = std::move(iterations);
  return root;
}

RunTrace trace_from_json(const nlohmann::json& root) {
  if (!root.is_object() || root.value("format", "") != kFormat) {
    throw std::runtime_error("unrecognized trace format");
  }
  for (const char* key : {"topic_id", "termination"}) {
    if (!root.contains(key) || !root[key].is_string()) {
      throw std::runtime_error(std::string("trace key \"") + key + "\" must be a string");
    }
  }
  if (!root.contains("config")) throw std::runtime_error("trace is missing its config");
  if (!root.contains("iterations") || !root["iterations"].is_array() ||
      !root.contains("leaps") || !root["leaps"].is_array()) {
    throw std::runtime_error("trace needs iterations and leaps arrays");
  }

  RunTrace trace;
  trace.topic_id = root["topic_id"].get<std::string>();
  trace.termination = root["termination"].get<std::string>();
  trace.config = run_config_from_json(root["config"]);

  for (const auto& entry : root["leaps"]) {
    if (!entry.is_object() || !entry.contains("iteration") || !entry.contains("old_terms") ||
        !entry.contains("new_terms")) {
      throw std::runtime_error("malformed leap entry");
    }
    LeapEvent leap;
    leap.iteration = entry["iteration"].get<int>();
    leap.old_terms = entry["old_terms"].get<std::size_t>();
    leap.new_terms = entry["new_terms"].get<std::size_t>();
    trace.leaps.push_back(leap);
  }

  for (const auto& entry : root["iterations"]) {
    if (!entry.is_object()) throw std::runtime_error("malformed iteration entry");
    for (const char* key :
         {"iteration", "phase", "queries", "retrieved", "nsim", "desc_size", "disc_size",
          "top_descriptors", "top_discriminators"}) {
      if (!entry.contains(key)) {
        throw std::runtime_error(std::string("iteration entry is missing \"") + key + "\"");
      }
    }
    IterationRecord record;
    record.iteration = entry["iteration"].get<int>();
    record.phase = entry["phase"].get<int>();
    if (!entry["queries"].is_array()) throw std::runtime_error("queries must be an array");
    for (const auto& query : entry["queries"]) {
      if (!query.is_array()) throw std::runtime_error("each query must be an array");
      record.queries.push_back(query.get<std::vector<std::string>>());
    }
    record.retrieved = pairs_from_json(entry["retrieved"], "retrieved");
    const auto& nsim = entry["nsim"];
    if (!nsim.is_object() || !nsim.contains("min") || !nsim.contains("avg") ||
        !nsim.contains("max")) {
      throw std::runtime_error("nsim must hold min/avg/max");
    }
    record.nsim = {nsim["min"].get<double>(), nsim["avg"].get<double>(),
                   nsim["max"].get<double>()};
    record.desc_list_size = entry["desc_size"].get<std::size_t>();
    record.disc_list_size = entry["disc_size"].get<std::size_t>();
    record.top_descriptors = pairs_from_json(entry["top_descriptors"], "top_descriptors");
    record.top_discriminators = pairs_from_json(entry["top_discriminators"], "top_discriminators");
    trace.iterations.push_back(std::move(record));
  }
  return trace;
}

void save_trace(const RunTrace& trace, const std::filesystem::path& file) {
  const auto tmp = file.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write trace: " + file.string());
    out << trace_to_json(trace).dump(2) << '\n';
    if (!out.good()) throw std::runtime_error("cannot write trace: " + file.string());
  }
  std::filesystem::rename(tmp, file);
}

RunTrace load_trace(const std::filesystem::path& file) {
  std::ifstream in(file, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open trace: " + file.string());
  nlohmann::json root;
  try {
    root = nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw std::runtime_error("trace " + file.string() + ": " + e.what());
  }
  try {
    return trace_from_json(root);
  } catch (const std::exception& e) {
    throw std::runtime_error("trace " + file.string() + ": " + e.what());
  }
}

std::string filename_component(const std::string& id) {
  std::string out;
  out.reserve(id.size());
  for (const char c : id) {
    const bool safe = (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') ||
                      (c >= '0' && c <= '9') || c == '.' || c == '_' || c == '-';
    out.push_back(safe ? c : '_');
  }
  if (out.empty()) out = "_";
  return out;
}

}  // namespace vocleap
