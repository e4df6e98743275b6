#pragma once

#include <filesystem>
#include <set>
#include <string>
#include <vector>

#include "vocleap/evolver.hpp"

namespace vocleap {

/// Fraction of retrieved ids that are relevant; 0 when nothing was retrieved.
double precision(const std::set<std::string>& retrieved,
                 const std::unordered_set<std::string>& relevant);

/// Fraction of relevant ids that were retrieved.
/// Throws std::invalid_argument when the relevant set is empty.
double recall(const std::set<std::string>& retrieved,
              const std::unordered_set<std::string>& relevant);

/// Harmonic mean 2pr/(p+r), 0 when both inputs are 0.
double f1(double precision, double recall);

struct IterationMetrics {
  int iteration = 0;
  double nsim_min = 0.0;
  double nsim_avg = 0.0;
  double nsim_max = 0.0;
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
};

/// Scores one iteration's deduplicated retrieval set against the topic's
/// relevant ids and copies the novelty triple from the record.
IterationMetrics iteration_metrics(const IterationRecord& record, const TopicSpec& topic);

struct ComparisonRow {
  std::string topic_id;
  std::string metric;
  double first = 0.0;
  double best = 0.0;
  bool improved = false;
};

/// One row per metric in {nsim_max, precision, recall, f1}: the value at the
/// first iteration against the maximum over all iterations (best picked per
/// metric independently). Throws std::invalid_argument on an empty trace.
std::vector<ComparisonRow> first_vs_best(const RunTrace& trace, const TopicSpec& topic);

/// Fraction of the named metric's rows with improved = true.
/// Throws std::invalid_argument when no row carries that metric.
double improvement_fraction(const std::vector<ComparisonRow>& rows, const std::string& metric);

struct MeanCi {
  double mean = 0.0;
  double lower = 0.0;
  double upper = 0.0;
};

/// Student-t confidence interval mean +- t_{(1+level)/2, n-1} * s / sqrt(n).
/// Throws std::invalid_argument on fewer than two values or level outside (0,1).
MeanCi mean_ci(const std::vector<double>& values, double level = 0.95);

/// Writes into output_dir:
///   series_<topic>.csv   per trace: iteration, novelty triple, p, r, f1
///   scatter.csv          one row per (topic, metric): first vs best value
///   summary.csv          per metric: improvement fraction, first/best mean+CI
///   summary.txt          the same figures formatted for reading
/// With a single trace the CI columns degenerate to the mean. Throws
/// std::runtime_error when no traces are given, a trace has no matching
/// topic id, or a file cannot be written.
void export_report(const std::vector<RunTrace>& traces, const std::vector<TopicSpec>& topics,
                   const std::filesystem::path& output_dir);

}  // namespace vocleap
