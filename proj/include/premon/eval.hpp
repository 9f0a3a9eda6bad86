#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "premon/metrics.hpp"
#include "premon/pipelines.hpp"

namespace premon {

struct EvalOptions {
  std::vector<std::string> approaches = {"clustering", "index"};
  std::vector<ClassifierKind> incremental = {ClassifierKind::ht, ClassifierKind::aht};
  PipelineConfig pipeline;  // shared hyperparameters; classifier set per config
  std::string formula_text;
  std::optional<std::size_t> drift_index;  // scenario 3
};

struct ConfigMetrics {
  ConfusionCounts counts;
  double accuracy = 0, f_pos = 0, f_neg = 0, avg_f = 0;
  std::int64_t fallbacks = 0;
};

struct ConfigResult {
  std::string name;  // e.g. "clustering-ht" or "index-rf@60"
  std::string approach, classifier, checkpoint;
  ConfigMetrics overall;
  std::optional<ConfigMetrics> post_drift;  // scenario 3: predictions on cases past the drift
  std::int64_t learn_one_calls = 0;
  std::int64_t drifts = 0, replacements = 0;
  double train_ms = 0, update_ms = 0;
};

struct MetricDelta {
  std::string metric;
  std::string config_a, config_b;
  double value_a = 0, value_b = 0;
  double absolute = 0;                // value_a - value_b
  std::optional<double> relative;    // (value_a - value_b) / value_b when defined
};

struct ScenarioReport {
  int scenario = 0;
  nlohmann::json meta;
  std::vector<ConfigResult> configs;
  std::vector<MetricDelta> metric_deltas;
  std::vector<MetricDelta> time_deltas;
  // Scenario 3: per-config cumulative accuracy after each replayed case.
  std::map<std::string, std::vector<std::pair<std::size_t, double>>> running_accuracy;

  const ConfigResult& config(const std::string& name) const;

  nlohmann::json metrics_json() const;  // deterministic under a fixed seed
  nlohmann::json to_json() const;
  std::string to_text() const;
};

// 80/20 split; incremental (HT/AHT) and offline (RF) pipelines train on the
// 80%, the 20% replays with predict-then-update for the incremental ones.
ScenarioReport run_scenario1(const EventLog& log, const LtlPtr& formula, const EvalOptions& opt);

// 40/20/20/20 split; RF retrains from scratch at the 60% and 80% marks while
// incremental pipelines absorb the same segments as updates; both score on the
// final 20% at each checkpoint.
ScenarioReport run_scenario2(const EventLog& log, const LtlPtr& formula, const EvalOptions& opt);

// 40/60 split over a log with a drift at drift_index; HT- and AHT-backed
// pipelines replay the 60% with predict-then-update.
ScenarioReport run_scenario3(const EventLog& log, const LtlPtr& formula, const EvalOptions& opt);

// Writes report.json, report.txt and (when present) series.csv.
void write_report(const ScenarioReport& report, const std::filesystem::path& dir);

}  // namespace premon
