#include "vocleap/evalkit.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include <boost/math/distributions/students_t.hpp>

#include "vocleap/trace.hpp"

namespace vocleap {
namespace {

const std::vector<std::string> kMetrics{"nsim_max", "precision", "recall", "f1"};

std::string fmt12(double value) {
  char buffer[64];
  std::snprintf(buffer, sizeof(buffer), "%.12g", value);
  return buffer;
}

std::string csv_cell(const std::string& raw) {
  if (raw.find_first_of(",\"\n") == std::string::npos) return raw;
  std::string quoted = "\"";
  for (const char c : raw) {
    if (c == '"') quoted += '"';
    quoted += c;
  }
  quoted += '"';
  return quoted;
}

void write_text(const std::filesystem::path& file, const std::string& content) {
  const auto tmp = file.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write report file: " + file.string());
    out << content;
    if (!out.good()) throw std::runtime_error("cannot write report file: " + file.string());
  }
  std::filesystem::rename(tmp, file);
}

std::set<std::string> retrieved_ids(const IterationRecord& record) {
  std::set<std::string> ids;
  for (const auto& [doc_id, score] : record.retrieved) ids.insert(doc_id);
  return ids;
}

double metric_value(const IterationMetrics& m, const std::string& metric) {
  if (metric == "nsim_max") return m.nsim_max;
  if (metric == "precision") return m.precision;
  if (metric == "recall") return m.recall;
  return m.f1;
}

}  // namespace

double precision(const std::set<std::string>& retrieved,
                 const std::unordered_set<std::string>& relevant) {
  if (retrieved.empty()) return 0.0;
  std::size_t hits = 0;
  for (const auto& id : retrieved) hits += relevant.count(id);
  return double(hits) / double(retrieved.size());
}

double recall(const std::set<std::string>& retrieved,
              const std::unordered_set<std::string>& relevant) {
  if (relevant.empty()) throw std::invalid_argument("recall needs a non-empty relevant set");
  std::size_t hits = 0;
  for (const auto& id : retrieved) hits += relevant.count(id);
  return double(hits) / double(relevant.size());
}

double f1(double precision, double recall) {
  const double sum = precision + recall;
  if (sum == 0.0) return 0.0;
  return 2.0 * precision * recall / sum;
}

IterationMetrics iteration_metrics(const IterationRecord& record, const TopicSpec& topic) {
  IterationMetrics m;
  m.iteration = record.iteration;
  m.nsim_min = record.nsim.min;
  m.nsim_avg = record.nsim.avg;
  m.nsim_max = record.nsim.max;
  const auto ids = retrieved_ids(record);
  m.precision = precision(ids, topic.relevant_doc_ids);
  m.recall = recall(ids, topic.relevant_doc_ids);
  m.f1 = f1(m.precision, m.recall);
  return m;
}

std::vector<ComparisonRow> first_vs_best(const RunTrace& trace, const TopicSpec& topic) {
  if (trace.iterations.empty()) {
    throw std::invalid_argument("trace " + trace.topic_id + " has no iterations");
  }
  std::vector<IterationMetrics> series;
  series.reserve(trace.iterations.size());
  for (const auto& record : trace.iterations) {
    series.push_back(iteration_metrics(record, topic));
  }
  std::vector<ComparisonRow> rows;
  for (const auto& metric : kMetrics) {
    ComparisonRow row;
    row.topic_id = trace.topic_id;
    row.metric = metric;
    row.first = metric_value(series.front(), metric);
    row.best = row.first;
    for (const auto& m : series) row.best = std::max(row.best, metric_value(m, metric));
    row.improved = row.best > row.first;
    rows.push_back(std::move(row));
  }
  return rows;
}

double improvement_fraction(const std::vector<ComparisonRow>& rows, const std::string& metric) {
  std::size_t total = 0, improved = 0;
  for (const auto& row : rows) {
    if (row.metric != metric) continue;
    ++total;
    improved += row.improved ? 1 : 0;
  }
  if (total == 0) throw std::invalid_argument("no rows for metric " + metric);
  return double(improved) / double(total);
}

MeanCi mean_ci(const std::vector<double>& values, double level) {
  if (values.size() < 2) throw std::invalid_argument("mean_ci needs at least two values");
  if (!(level > 0.0 && level < 1.0)) {
    throw std::invalid_argument("confidence level must lie in (0,1)");
  }
  const double n = double(values.size());
  const double mean = std::accumulate(values.begin(), values.end(), 0.0) / n;
  double ss = 0.0;
  for (const double v : values) ss += (v - mean) * (v - mean);
  const double sd = std::sqrt(ss / (n - 1.0));
  const boost::math::students_t dist(n - 1.0);
  const double half = boost::math::quantile(dist, 0.5 + level / 2.0) * sd / std::sqrt(n);
  return {mean, mean - half, mean + half};
}

void export_report(const std::vector<RunTrace>& traces, const std::vector<TopicSpec>& topics,
                   const std::filesystem::path& output_dir) {
  if (traces.empty()) throw std::runtime_error("no traces to report");
  std::map<std::string, const TopicSpec*> by_id;
  for (const auto& topic : topics) by_id[topic.topic_id] = &topic;

  std::filesystem::create_directories(output_dir);
  std::vector<ComparisonRow> rows;
  for (const auto& trace : traces) {
    const auto it = by_id.find(trace.topic_id);
    if (it == by_id.end()) {
      throw std::runtime_error("trace " + trace.topic_id + " has no matching topic");
    }
    const TopicSpec& topic = *it->second;

    std::ostringstream series;
    series << "iteration,nsim_min,nsim_avg,nsim_max,precision,recall,f1\n";
    for (const auto& record : trace.iterations) {
      const auto m = iteration_metrics(record, topic);
      series << m.iteration << ',' << fmt12(m.nsim_min) << ',' << fmt12(m.nsim_avg) << ','
             << fmt12(m.nsim_max) << ',' << fmt12(m.precision) << ',' << fmt12(m.recall) << ','
             << fmt12(m.f1) << '\n';
    }
    write_text(output_dir / ("series_" + filename_component(trace.topic_id) + ".csv"),
               series.str());

    const auto trace_rows = first_vs_best(trace, topic);
    rows.insert(rows.end(), trace_rows.begin(), trace_rows.end());
  }

  std::ostringstream scatter;
  scatter << "topic,metric,first,best\n";
  for (const auto& row : rows) {
    scatter << csv_cell(row.topic_id) << ',' << row.metric << ',' << fmt12(row.first) << ','
            << fmt12(row.best) << '\n';
  }
  write_text(output_dir / "scatter.csv", scatter.str());

  std::ostringstream summary;
  std::ostringstream readable;
  summary << "metric,improvement_fraction,first_mean,first_ci_lower,first_ci_upper,"
             "best_mean,best_ci_lower,best_ci_upper\n";
  readable << "run report over " << traces.size() << " topic(s)\n"
           << "best iteration picked per metric independently\n\n";
  char line[160];
  std::snprintf(line, sizeof(line), "%-10s %9s %28s %28s\n", "metric", "improved",
                "first mean [95% CI]", "best mean [95% CI]");
  readable << line;
  for (const auto& metric : kMetrics) {
    std::vector<double> firsts, bests;
    for (const auto& row : rows) {
      if (row.metric != metric) continue;
      firsts.push_back(row.first);
      bests.push_back(row.best);
    }
    const auto ci = [](const std::vector<double>& values) {
      if (values.size() >= 2) return mean_ci(values);
      return MeanCi{values.front(), values.front(), values.front()};
    };
    const auto first_ci = ci(firsts);
    const auto best_ci = ci(bests);
    const double fraction = improvement_fraction(rows, metric);
    summary << metric << ',' << fmt12(fraction) << ',' << fmt12(first_ci.mean) << ','
            << fmt12(first_ci.lower) << ',' << fmt12(first_ci.upper) << ','
            << fmt12(best_ci.mean) << ',' << fmt12(best_ci.lower) << ','
            << fmt12(best_ci.upper) << '\n';
    std::snprintf(line, sizeof(line), "%-10s %8.1f%% %10.4f [%7.4f;%7.4f] %10.4f [%7.4f;%7.4f]\n",
                  metric.c_str(), 100.0 * fraction, first_ci.mean, first_ci.lower, first_ci.upper,
                  best_ci.mean, best_ci.lower, best_ci.upper);
    readable << line;
  }
  write_text(output_dir / "summary.csv", summary.str());
  write_text(output_dir / "summary.txt", readable.str());
}

}  // namespace vocleap
