#include "premon/eval.hpp"

#include <chrono>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <sstream>

#include "premon/errors.hpp"

namespace premon {

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

struct AnyPipeline {
  std::optional<ClusteringPipeline> cp;
  std::optional<IndexPipeline> ip;

  Prediction predict(const Prefix& p) const { return cp ? cp->predict(p) : ip->predict(p); }
  void update(const Case& c) {
    if (cp) cp->update(c);
    else ip->update(c);
  }
  std::int64_t learn_one_calls() const {
    return cp ? cp->learn_one_calls() : ip->learn_one_calls();
  }
  std::int64_t drifts() const { return cp ? cp->drifts_detected() : ip->drifts_detected(); }
  std::int64_t replacements() const {
    return cp ? cp->branch_replacements() : ip->branch_replacements();
  }
};

AnyPipeline train_pipeline(const std::string& approach, ClassifierKind kind,
                           const EventLog& train_log, const LtlPtr& formula, PipelineConfig cfg,
                           double& train_ms) {
  cfg.classifier = kind;
  AnyPipeline p;
  const auto start = Clock::now();
  if (approach == "clustering") {
    p.cp = ClusteringPipeline::train(train_log, formula, cfg);
  } else if (approach == "index") {
    p.ip = IndexPipeline::train(train_log, formula, cfg);
  } else {
    throw Error("unknown approach '" + approach + "' (expected clustering or index)");
  }
  train_ms = ms_since(start);
  return p;
}

struct ReplayOutcome {
  ConfusionCounts counts;
  std::int64_t fallbacks = 0;
  double update_ms = 0;
  std::vector<ConfusionCounts> per_case;  // in replay order
  std::vector<std::int64_t> per_case_fallbacks;
};

// Prequential discipline: every prefix of a case is scored before the
// completed case updates any model.
ReplayOutcome replay_cases(AnyPipeline& p, const std::vector<const Case*>& cases,
                           const std::map<std::string, OutcomeLabel>& gold, int prefix_min,
                           int prefix_max, bool update) {
  ReplayOutcome out;
  out.per_case.reserve(cases.size());
  for (const Case* c : cases) {
    const bool y = gold.at(c->case_id).value;
    ConfusionCounts cc;
    std::int64_t fb = 0;
    for (const auto& prefix : extract_prefixes(*c, prefix_min, prefix_max)) {
      const Prediction pred = p.predict(prefix);
      cc.add(pred.predicted, y);
      if (pred.fallback) ++fb;
    }
    if (update) {
      const auto start = Clock::now();
      p.update(*c);
      out.update_ms += ms_since(start);
    }
    out.counts += cc;
    out.fallbacks += fb;
    out.per_case.push_back(cc);
    out.per_case_fallbacks.push_back(fb);
  }
  return out;
}

ConfigMetrics to_metrics(const ConfusionCounts& counts, std::int64_t fallbacks) {
  ConfigMetrics m;
  m.counts = counts;
  m.accuracy = counts.total() > 0 ? accuracy(counts) : 0.0;
  m.f_pos = f_measure(counts);
  m.f_neg = f_measure(counts.swapped());
  m.avg_f = avg_f_measure(counts);
  m.fallbacks = fallbacks;
  return m;
}

std::optional<double> relative_delta(double a, double b) {
  if (b == 0) return std::nullopt;
  return (a - b) / b;
}

MetricDelta make_delta(const std::string& metric, const ConfigResult& a, const ConfigResult& b,
                       double va, double vb) {
  MetricDelta d;
  d.metric = metric;
  d.config_a = a.name;
  d.config_b = b.name;
  d.value_a = va;
  d.value_b = vb;
  d.absolute = va - vb;
  d.relative = relative_delta(va, vb);
  return d;
}

void append_metric_deltas(ScenarioReport& report, const ConfigResult& a, const ConfigResult& b) {
  report.metric_deltas.push_back(
      make_delta("avg_f", a, b, a.overall.avg_f, b.overall.avg_f));
  report.metric_deltas.push_back(
      make_delta("accuracy", a, b, a.overall.accuracy, b.overall.accuracy));
  if (a.post_drift && b.post_drift) {
    report.metric_deltas.push_back(
        make_delta("post_drift_avg_f", a, b, a.post_drift->avg_f, b.post_drift->avg_f));
    report.metric_deltas.push_back(
        make_delta("post_drift_accuracy", a, b, a.post_drift->accuracy, b.post_drift->accuracy));
  }
}

void append_time_delta(ScenarioReport& report, const ConfigResult& a, const ConfigResult& b,
                       double ta, double tb) {
  report.time_deltas.push_back(make_delta("time_ms", a, b, ta, tb));
}

nlohmann::json meta_for(int scenario, const EventLog& log, const EvalOptions& opt,
                        const std::vector<std::size_t>& split_sizes) {
  nlohmann::json approaches = opt.approaches;
  nlohmann::json classifiers = nlohmann::json::array();
  for (ClassifierKind k : opt.incremental) classifiers.push_back(classifier_kind_name(k));
  nlohmann::json meta{
      {"scenario", scenario},
      {"formula", opt.formula_text},
      {"approaches", approaches},
      {"incremental_classifiers", classifiers},
      {"cases", log.cases.size()},
      {"events", log.event_count()},
      {"split_sizes", split_sizes},
      {"seed", opt.pipeline.seed},
      {"prefix_min", opt.pipeline.prefix_min},
      {"prefix_max", opt.pipeline.prefix_max},
      {"rf_trees", opt.pipeline.rf_trees},
      {"hoeffding",
       {{"split_confidence", opt.pipeline.hoeffding.split_confidence},
        {"tie_threshold", opt.pipeline.hoeffding.tie_threshold},
        {"grace_period", opt.pipeline.hoeffding.grace_period},
        {"adwin_delta", opt.pipeline.hoeffding.adwin_delta},
        {"alternate_min_window", opt.pipeline.hoeffding.alternate_min_window}}}};
  if (opt.pipeline.t1) meta["t1"] = *opt.pipeline.t1;
  if (opt.pipeline.t2) meta["t2"] = *opt.pipeline.t2;
  if (opt.drift_index) meta["drift_index"] = *opt.drift_index;
  return meta;
}

std::vector<const Case*> case_pointers(const EventLog& log) {
  std::vector<const Case*> out;
  out.reserve(log.cases.size());
  for (const auto& c : log.cases) out.push_back(&c);
  return out;
}

void validate_options(const EvalOptions& opt) {
  if (opt.approaches.empty()) throw Error("no approaches selected");
  if (opt.incremental.empty()) throw Error("no incremental classifiers selected");
  for (ClassifierKind k : opt.incremental)
    if (k == ClassifierKind::rf)
      throw Error("rf is the offline baseline, not an incremental classifier");
}

}  // namespace

const ConfigResult& ScenarioReport::config(const std::string& name) const {
  for (const auto& c : configs)
    if (c.name == name) return c;
  throw Error("no config named '" + name + "' in report");
}

nlohmann::json ScenarioReport::metrics_json() const {
  nlohmann::json cfgs = nlohmann::json::object();
  auto metrics_to_json = [](const ConfigMetrics& m) {
    return nlohmann::json{{"counts", {{"tp", m.counts.tp}, {"fp", m.counts.fp}, {"tn", m.counts.tn}, {"fn", m.counts.fn}}},
                          {"accuracy", m.accuracy},
                          {"f_pos", m.f_pos},
                          {"f_neg", m.f_neg},
                          {"avg_f", m.avg_f},
                          {"fallbacks", m.fallbacks}};
  };
  for (const auto& c : configs) {
    nlohmann::json j{{"approach", c.approach},
                     {"classifier", c.classifier},
                     {"overall", metrics_to_json(c.overall)},
                     {"learn_one_calls", c.learn_one_calls},
                     {"drifts", c.drifts},
                     {"replacements", c.replacements}};
    if (!c.checkpoint.empty()) j["checkpoint"] = c.checkpoint;
    if (c.post_drift) j["post_drift"] = metrics_to_json(*c.post_drift);
    cfgs[c.name] = j;
  }
  nlohmann::json deltas = nlohmann::json::array();
  for (const auto& d : metric_deltas) {
    nlohmann::json j{{"metric", d.metric}, {"a", d.config_a},      {"b", d.config_b},
                     {"value_a", d.value_a}, {"value_b", d.value_b}, {"absolute", d.absolute}};
    j["relative"] = d.relative ? nlohmann::json(*d.relative) : nlohmann::json(nullptr);
    deltas.push_back(j);
  }
  return {{"configs", cfgs}, {"deltas", deltas}};
}

nlohmann::json ScenarioReport::to_json() const {
  nlohmann::json timing_cfgs = nlohmann::json::object();
  for (const auto& c : configs)
    timing_cfgs[c.name] = {{"train_ms", c.train_ms}, {"update_ms", c.update_ms}};
  nlohmann::json time_deltas_json = nlohmann::json::array();
  for (const auto& d : time_deltas) {
    nlohmann::json j{{"metric", d.metric}, {"a", d.config_a},      {"b", d.config_b},
                     {"value_a", d.value_a}, {"value_b", d.value_b}, {"absolute", d.absolute}};
    j["relative"] = d.relative ? nlohmann::json(*d.relative) : nlohmann::json(nullptr);
    time_deltas_json.push_back(j);
  }
  nlohmann::json j{{"version", 1},
                   {"scenario", scenario},
                   {"meta", meta},
                   {"metrics", metrics_json()},
                   {"timing", {{"configs", timing_cfgs}, {"deltas", time_deltas_json}}}};
  if (!running_accuracy.empty()) {
    nlohmann::json series = nlohmann::json::object();
    for (const auto& [name, points] : running_accuracy) {
      nlohmann::json arr = nlohmann::json::array();
      for (const auto& [pos, acc] : points) arr.push_back({{"case", pos}, {"accuracy", acc}});
      series[name] = arr;
    }
    j["series"] = series;
  }
  return j;
}

std::string ScenarioReport::to_text() const {
  std::ostringstream out;
  out << "scenario " << scenario << "  formula: " << meta.value("formula", std::string{}) << "\n";
  out << "seed " << meta.value("seed", 0) << ", cases " << meta.value("cases", 0) << ", events "
      << meta.value("events", 0) << "\n\n";

  out << std::left << std::setw(22) << "config" << std::right << std::setw(9) << "acc"
      << std::setw(9) << "avgF" << std::setw(9) << "Fpos" << std::setw(9) << "Fneg" << std::setw(10)
      << "postAcc" << std::setw(10) << "postAvgF" << std::setw(9) << "drifts" << std::setw(11)
      << "train_ms" << std::setw(11) << "update_ms"
      << "\n";
  out << std::string(109, '-') << "\n";
  out << std::fixed;
  for (const auto& c : configs) {
    out << std::left << std::setw(22) << c.name << std::right << std::setprecision(4)
        << std::setw(9) << c.overall.accuracy << std::setw(9) << c.overall.avg_f << std::setw(9)
        << c.overall.f_pos << std::setw(9) << c.overall.f_neg;
    if (c.post_drift)
      out << std::setw(10) << c.post_drift->accuracy << std::setw(10) << c.post_drift->avg_f;
    else
      out << std::setw(10) << "-" << std::setw(10) << "-";
    out << std::setw(9) << c.drifts << std::setprecision(1) << std::setw(11) << c.train_ms
        << std::setw(11) << c.update_ms << "\n";
  }

  auto print_delta = [&out](const MetricDelta& d) {
    out << "  " << std::left << std::setw(20) << d.metric << " " << d.config_a << " vs "
        << d.config_b << ": " << std::showpos << std::setprecision(4) << d.absolute;
    if (d.relative)
      out << "  (" << std::setprecision(3) << *d.relative << " rel)";
    out << std::noshowpos << "\n";
  };
  if (!metric_deltas.empty()) {
    out << "\ndeltas:\n";
    for (const auto& d : metric_deltas) print_delta(d);
  }
  if (!time_deltas.empty()) {
    out << "\ntime deltas:\n";
    for (const auto& d : time_deltas) print_delta(d);
  }
  return out.str();
}

ScenarioReport run_scenario1(const EventLog& log, const LtlPtr& formula, const EvalOptions& opt) {
  validate_options(opt);
  const EventLog ordered = canonicalize_case_order(log);
  const auto gold = label_log(ordered, formula);
  const auto splits = split_log(ordered, {80, 20});
  const EventLog& train = splits[0];
  const EventLog& test = splits[1];
  if (train.cases.empty() || test.cases.empty())
    throw Error("split too small to train: " + std::to_string(train.cases.size()) + "/" +
                std::to_string(test.cases.size()) + " cases");

  ScenarioReport report;
  report.scenario = 1;
  report.meta = meta_for(1, ordered, opt, {train.cases.size(), test.cases.size()});

  const auto test_ptrs = case_pointers(test);
  const int pmin = opt.pipeline.prefix_min, pmax = opt.pipeline.prefix_max;

  for (const auto& approach : opt.approaches) {
    // Offline baseline: trained once, never updated.
    ConfigResult rf;
    rf.name = approach + "-rf";
    rf.approach = approach;
    rf.classifier = "rf";
    AnyPipeline rf_pipeline =
        train_pipeline(approach, ClassifierKind::rf, train, formula, opt.pipeline, rf.train_ms);
    ReplayOutcome rf_replay = replay_cases(rf_pipeline, test_ptrs, gold, pmin, pmax, false);
    rf.overall = to_metrics(rf_replay.counts, rf_replay.fallbacks);
    rf.learn_one_calls = rf_pipeline.learn_one_calls();
    report.configs.push_back(rf);
    const std::size_t rf_pos = report.configs.size() - 1;

    for (ClassifierKind kind : opt.incremental) {
      ConfigResult cr;
      cr.name = approach + "-" + classifier_kind_name(kind);
      cr.approach = approach;
      cr.classifier = classifier_kind_name(kind);
      AnyPipeline p =
          train_pipeline(approach, kind, train, formula, opt.pipeline, cr.train_ms);
      ReplayOutcome replay = replay_cases(p, test_ptrs, gold, pmin, pmax, true);
      cr.overall = to_metrics(replay.counts, replay.fallbacks);
      cr.update_ms = replay.update_ms;
      cr.learn_one_calls = p.learn_one_calls();
      cr.drifts = p.drifts();
      cr.replacements = p.replacements();
      report.configs.push_back(cr);

      append_metric_deltas(report, report.configs.back(), report.configs[rf_pos]);
      append_time_delta(report, report.configs.back(), report.configs[rf_pos],
                        cr.train_ms + cr.update_ms, report.configs[rf_pos].train_ms);
    }
  }
  return report;
}

ScenarioReport run_scenario2(const EventLog& log, const LtlPtr& formula, const EvalOptions& opt) {
  validate_options(opt);
  const EventLog ordered = canonicalize_case_order(log);
  const auto gold = label_log(ordered, formula);
  const auto splits = split_log(ordered, {40, 20, 20, 20});
  for (const auto& s : splits)
    if (s.cases.empty()) throw Error("scenario 2 needs four non-empty segments");

  // Contiguous cumulative views for the offline retrains.
  const EventLog train60 = split_log(ordered, {60, 40})[0];
  const EventLog train80 = split_log(ordered, {80, 20})[0];

  ScenarioReport report;
  report.scenario = 2;
  report.meta = meta_for(2, ordered, opt,
                         {splits[0].cases.size(), splits[1].cases.size(), splits[2].cases.size(),
                          splits[3].cases.size()});

  const auto test_ptrs = case_pointers(splits[3]);
  const int pmin = opt.pipeline.prefix_min, pmax = opt.pipeline.prefix_max;

  for (const auto& approach : opt.approaches) {
    // Offline path: initial training plus a full retrain per checkpoint.
    double rf40_ms = 0;
    AnyPipeline rf40 =
        train_pipeline(approach, ClassifierKind::rf, splits[0], formula, opt.pipeline, rf40_ms);
    (void)rf40;

    std::array<const EventLog*, 2> rf_logs{&train60, &train80};
    std::array<std::string, 2> checkpoints{"60", "80"};
    std::array<std::size_t, 2> rf_pos{0, 0};
    std::array<double, 2> rf_cum_ms{0, 0};
    double rf_total = rf40_ms;
    for (int k = 0; k < 2; ++k) {
      ConfigResult rf;
      rf.name = approach + "-rf@" + checkpoints[(std::size_t)k];
      rf.approach = approach;
      rf.classifier = "rf";
      rf.checkpoint = checkpoints[(std::size_t)k];
      AnyPipeline p = train_pipeline(approach, ClassifierKind::rf, *rf_logs[(std::size_t)k],
                                     formula, opt.pipeline, rf.train_ms);
      ReplayOutcome replay = replay_cases(p, test_ptrs, gold, pmin, pmax, false);
      rf.overall = to_metrics(replay.counts, replay.fallbacks);
      rf.learn_one_calls = p.learn_one_calls();
      rf_total += rf.train_ms;
      rf_cum_ms[(std::size_t)k] = rf_total;
      report.configs.push_back(rf);
      rf_pos[(std::size_t)k] = report.configs.size() - 1;
    }

    for (ClassifierKind kind : opt.incremental) {
      double train_ms = 0;
      AnyPipeline p = train_pipeline(approach, kind, splits[0], formula, opt.pipeline, train_ms);
      double cum_update_ms = 0;
      for (int k = 0; k < 2; ++k) {
        // Absorb the newly available segment, then score the held-out 20%.
        const auto seg_ptrs = case_pointers(splits[(std::size_t)k + 1]);
        const auto upd_start = Clock::now();
        for (const Case* c : seg_ptrs) p.update(*c);
        cum_update_ms += ms_since(upd_start);

        ConfigResult cr;
        cr.name = approach + "-" + classifier_kind_name(kind) + "@" + checkpoints[(std::size_t)k];
        cr.approach = approach;
        cr.classifier = classifier_kind_name(kind);
        cr.checkpoint = checkpoints[(std::size_t)k];
        cr.train_ms = train_ms;
        cr.update_ms = cum_update_ms;
        ReplayOutcome replay = replay_cases(p, test_ptrs, gold, pmin, pmax, false);
        cr.overall = to_metrics(replay.counts, replay.fallbacks);
        cr.learn_one_calls = p.learn_one_calls();
        cr.drifts = p.drifts();
        cr.replacements = p.replacements();
        report.configs.push_back(cr);

        append_metric_deltas(report, report.configs.back(), report.configs[rf_pos[(std::size_t)k]]);
        append_time_delta(report, report.configs.back(), report.configs[rf_pos[(std::size_t)k]],
                          train_ms + cum_update_ms, rf_cum_ms[(std::size_t)k]);
      }
    }
  }
  return report;
}

ScenarioReport run_scenario3(const EventLog& log, const LtlPtr& formula, const EvalOptions& opt) {
  validate_options(opt);
  if (!opt.drift_index) throw Error("scenario 3 needs a drift index");
  const EventLog ordered = canonicalize_case_order(log);
  const auto gold = label_log(ordered, formula);
  const auto splits = split_log(ordered, {40, 60});
  const EventLog& train = splits[0];
  const EventLog& test = splits[1];
  const std::size_t drift = *opt.drift_index;
  if (drift <= train.cases.size() || drift >= ordered.cases.size())
    throw Error("drift index " + std::to_string(drift) + " outside the test region");

  ScenarioReport report;
  report.scenario = 3;
  report.meta = meta_for(3, ordered, opt, {train.cases.size(), test.cases.size()});

  const auto test_ptrs = case_pointers(test);
  const int pmin = opt.pipeline.prefix_min, pmax = opt.pipeline.prefix_max;
  const std::size_t first_drift_case = drift - train.cases.size();  // index into test order

  for (const auto& approach : opt.approaches) {
    std::map<std::string, std::size_t> by_classifier;
    for (ClassifierKind kind : opt.incremental) {
      ConfigResult cr;
      cr.name = approach + "-" + classifier_kind_name(kind);
      cr.approach = approach;
      cr.classifier = classifier_kind_name(kind);
      AnyPipeline p = train_pipeline(approach, kind, train, formula, opt.pipeline, cr.train_ms);
      ReplayOutcome replay = replay_cases(p, test_ptrs, gold, pmin, pmax, true);
      cr.overall = to_metrics(replay.counts, replay.fallbacks);
      cr.update_ms = replay.update_ms;
      cr.learn_one_calls = p.learn_one_calls();
      cr.drifts = p.drifts();
      cr.replacements = p.replacements();

      // Post-drift slice and running accuracy from the per-case trace.
      ConfusionCounts post;
      std::int64_t post_fallbacks = 0;
      std::vector<std::pair<std::size_t, double>> series;
      std::int64_t cum_correct = 0, cum_scored = 0;
      for (std::size_t i = 0; i < replay.per_case.size(); ++i) {
        const ConfusionCounts& cc = replay.per_case[i];
        cum_correct += cc.tp + cc.tn;
        cum_scored += cc.total();
        series.emplace_back(train.cases.size() + i,
                            cum_scored > 0 ? double(cum_correct) / double(cum_scored) : 0.0);
        if (i >= first_drift_case) {
          post += cc;
          post_fallbacks += replay.per_case_fallbacks[i];
        }
      }
      cr.post_drift = to_metrics(post, post_fallbacks);

      report.configs.push_back(cr);
      report.running_accuracy[cr.name] = std::move(series);
      by_classifier[cr.classifier] = report.configs.size() - 1;
    }

    if (by_classifier.count("aht") && by_classifier.count("ht")) {
      const auto& at = report.configs[by_classifier["aht"]];
      const auto& ht = report.configs[by_classifier["ht"]];
      append_metric_deltas(report, at, ht);
      append_time_delta(report, at, ht, at.train_ms + at.update_ms, ht.train_ms + ht.update_ms);
    }
  }
  return report;
}

void write_report(const ScenarioReport& report, const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  {
    std::ofstream json_out(dir / "report.json");
    if (!json_out) throw Error("cannot write " + (dir / "report.json").string());
    json_out << report.to_json().dump(2) << "\n";
  }
  {
    std::ofstream txt_out(dir / "report.txt");
    if (!txt_out) throw Error("cannot write " + (dir / "report.txt").string());
    txt_out << report.to_text();
  }
  if (!report.running_accuracy.empty()) {
    std::ofstream csv(dir / "series.csv");
    if (!csv) throw Error("cannot write " + (dir / "series.csv").string());
    csv << "config,case_position,running_accuracy\n";
    for (const auto& [name, points] : report.running_accuracy)
      for (const auto& [pos, acc] : points) csv << name << ',' << pos << ',' << acc << "\n";
  }
}

}  // namespace premon
