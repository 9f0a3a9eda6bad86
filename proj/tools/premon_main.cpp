#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "premon/drift_gen.hpp"
#include "premon/eval.hpp"

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw premon::Error("cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

premon::EventLog load_log(const std::string& path, const std::string& format) {
  const std::string bytes = read_file(path);
  if (format == "csv") return premon::parse_csv(bytes);
  if (format == "xes") return premon::parse_xes(bytes);
  throw premon::Error("unknown log format '" + format + "'");
}

struct EvaluateArgs {
  int scenario = 1;
  std::string log_path;
  std::string format = "csv";
  std::string outcome;
  std::vector<std::string> approaches;
  std::vector<std::string> classifiers;
  std::uint64_t seed = 1;
  double t1 = 0, t2 = 0;
  bool has_t1 = false, has_t2 = false;
  double delta = 1e-7, tau = 0.05, adwin_delta = 0.002;
  int grace = 200, rf_trees = 100;
  int prefix_min = 1, prefix_max = 20;
  std::int64_t drift_index = -1;
  std::string out_dir = "report";
};

int cmd_evaluate(const EvaluateArgs& args) {
  premon::EventLog log = load_log(args.log_path, args.format);
  premon::LtlPtr formula = premon::parse_formula(args.outcome);

  premon::EvalOptions opt;
  opt.formula_text = premon::to_string(formula);
  if (!args.approaches.empty()) opt.approaches = args.approaches;
  if (!args.classifiers.empty()) {
    opt.incremental.clear();
    for (const auto& name : args.classifiers)
      opt.incremental.push_back(premon::classifier_kind_from_name(name));
  }
  opt.pipeline.seed = args.seed;
  opt.pipeline.prefix_min = args.prefix_min;
  opt.pipeline.prefix_max = args.prefix_max;
  opt.pipeline.rf_trees = args.rf_trees;
  opt.pipeline.hoeffding.split_confidence = args.delta;
  opt.pipeline.hoeffding.tie_threshold = args.tau;
  opt.pipeline.hoeffding.grace_period = args.grace;
  opt.pipeline.hoeffding.adwin_delta = args.adwin_delta;
  if (args.has_t1) opt.pipeline.t1 = args.t1;
  if (args.has_t2) opt.pipeline.t2 = args.t2;
  if (args.scenario == 3)
    opt.drift_index = args.drift_index >= 0 ? static_cast<std::size_t>(args.drift_index)
                                            : log.cases.size() / 2;

  premon::ScenarioReport report;
  switch (args.scenario) {
    case 1: report = premon::run_scenario1(log, formula, opt); break;
    case 2: report = premon::run_scenario2(log, formula, opt); break;
    case 3: report = premon::run_scenario3(log, formula, opt); break;
    default: throw premon::Error("scenario must be 1, 2 or 3");
  }
  premon::write_report(report, args.out_dir);
  std::cout << report.to_text();
  std::cout << "\nreport written to " << args.out_dir << "/\n";
  return 0;
}

int cmd_generate(const std::string& variant, int cases, std::uint64_t seed,
                 const std::string& out_path) {
  if (cases < 2) throw premon::Error("need at least 2 cases");
  premon::ClaimProcessConfig cfg;
  cfg.n_cases_baseline = cases / 2;
  cfg.n_cases_drift = cases - cases / 2;
  cfg.seed = seed;

  premon::GeneratedLog generated;
  if (variant == "baseline") generated = premon::generate_baseline(cfg);
  else if (variant == "drift1") generated = premon::generate_drift1(cfg);
  else if (variant == "drift2") generated = premon::generate_drift2(cfg);
  else throw premon::Error("unknown variant '" + variant + "'");

  std::ofstream out(out_path, std::ios::binary);
  if (!out) throw premon::Error("cannot write '" + out_path + "'");
  out << premon::write_csv(generated.log);
  std::cout << "wrote " << generated.log.cases.size() << " cases / "
            << generated.log.event_count() << " events to " << out_path
            << " (drift at case " << generated.drift_index << ")\n";
  return 0;
}

int cmd_label(const std::string& log_path, const std::string& format, const std::string& outcome,
              const std::string& out_path) {
  premon::EventLog log = load_log(log_path, format);
  premon::LtlPtr formula = premon::parse_formula(outcome);
  const auto labels = premon::label_log(log, formula);

  std::ofstream out(out_path, std::ios::binary);
  if (!out) throw premon::Error("cannot write '" + out_path + "'");
  out << "case_id,label\n";
  for (const auto& c : log.cases)
    out << c.case_id << ',' << (labels.at(c.case_id).value ? "true" : "false") << "\n";
  std::cout << "labeled " << log.cases.size() << " cases to " << out_path << "\n";
  return 0;
}

std::string feature_to_field(const premon::FeatureValue& v) {
  if (v.is_absent()) return "";
  if (v.is_number()) {
    std::ostringstream s;
    s << v.num();
    return s.str();
  }
  return v.cat();
}

int cmd_encode(const std::string& log_path, const std::string& format,
               const std::string& encoding, int length, int prefix_min, int prefix_max,
               const std::string& outcome, const std::string& out_prefix) {
  premon::EventLog log = load_log(log_path, format);
  std::optional<std::map<std::string, premon::OutcomeLabel>> labels;
  if (!outcome.empty()) labels = premon::label_log(log, premon::parse_formula(outcome));

  premon::EncodingSchema schema;
  int lo = prefix_min, hi = prefix_max;
  if (encoding == "frequency") {
    schema = premon::EncodingSchema::frequency(log);
  } else if (encoding == "index") {
    if (length < 1) throw premon::Error("index encoding needs --length");
    schema = premon::EncodingSchema::index(log, length);
    lo = hi = length;
  } else {
    throw premon::Error("unknown encoding '" + encoding + "'");
  }

  const auto names = schema.feature_names();
  std::ofstream csv(out_prefix + ".csv", std::ios::binary);
  if (!csv) throw premon::Error("cannot write '" + out_prefix + ".csv'");
  csv << "case_id,prefix_length";
  for (const auto& n : names) csv << ',' << n;
  if (labels) csv << ",label";
  csv << "\n";

  std::size_t rows = 0;
  for (const auto& c : log.cases) {
    for (const auto& prefix : premon::extract_prefixes(c, lo, hi)) {
      premon::FeatureVector v = encoding == "frequency" ? premon::encode_frequency(prefix, schema)
                                                        : premon::encode_index(prefix, schema);
      csv << c.case_id << ',' << prefix.length;
      for (const auto& f : v.values) csv << ',' << feature_to_field(f);
      if (labels) csv << ',' << (labels->at(c.case_id).value ? "true" : "false");
      csv << "\n";
      ++rows;
    }
  }

  nlohmann::json sidecar{{"schema_id", schema.schema_id()},
                         {"encoding", encoding},
                         {"features", nlohmann::json::array()}};
  const auto kinds = schema.feature_kinds();
  for (std::size_t i = 0; i < names.size(); ++i)
    sidecar["features"].push_back(
        {{"name", names[i]},
         {"kind", kinds[i] == premon::FeatureKind::numeric ? "numeric" : "categorical"}});
  std::ofstream side(out_prefix + ".schema.json", std::ios::binary);
  if (!side) throw premon::Error("cannot write '" + out_prefix + ".schema.json'");
  side << sidecar.dump(2) << "\n";

  std::cout << "encoded " << rows << " prefixes to " << out_prefix << ".csv\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Incremental predictive process monitoring toolkit"};
  app.require_subcommand(1);

  EvaluateArgs eval_args;
  auto* evaluate = app.add_subcommand("evaluate", "Run an evaluation scenario on an event log");
  evaluate->add_option("--scenario", eval_args.scenario, "Scenario: 1, 2 or 3")
      ->required()
      ->check(CLI::Range(1, 3));
  evaluate->add_option("--log", eval_args.log_path, "Event log path")->required();
  evaluate->add_option("--format", eval_args.format, "Log format")
      ->check(CLI::IsMember({"csv", "xes"}));
  evaluate->add_option("--outcome", eval_args.outcome, "LTL outcome formula")->required();
  evaluate->add_option("--approach", eval_args.approaches, "clustering and/or index (default both)")
      ->check(CLI::IsMember({"clustering", "index"}));
  evaluate->add_option("--classifier", eval_args.classifiers,
                       "Incremental classifiers to run: ht and/or aht (default both)")
      ->check(CLI::IsMember({"ht", "aht"}));
  evaluate->add_option("--seed", eval_args.seed, "Random seed");
  evaluate->add_option("--t1", eval_args.t1, "Canopy loose threshold")
      ->each([&](const std::string&) { eval_args.has_t1 = true; });
  evaluate->add_option("--t2", eval_args.t2, "Canopy tight threshold")
      ->each([&](const std::string&) { eval_args.has_t2 = true; });
  evaluate->add_option("--delta", eval_args.delta, "Hoeffding split confidence");
  evaluate->add_option("--tau", eval_args.tau, "Hoeffding tie threshold");
  evaluate->add_option("--grace", eval_args.grace, "Split attempt grace period");
  evaluate->add_option("--adwin-delta", eval_args.adwin_delta, "ADWIN confidence");
  evaluate->add_option("--rf-trees", eval_args.rf_trees, "Random forest size");
  evaluate->add_option("--prefix-min", eval_args.prefix_min, "Minimum prefix length");
  evaluate->add_option("--prefix-max", eval_args.prefix_max, "Maximum prefix length");
  evaluate->add_option("--drift-index", eval_args.drift_index,
                       "Case position where the drift starts (scenario 3; default: half the log)");
  evaluate->add_option("--out", eval_args.out_dir, "Report directory");

  std::string gen_variant, gen_out = "generated.csv";
  int gen_cases = 2000;
  std::uint64_t gen_seed = 1;
  auto* generate = app.add_subcommand("generate-drift", "Generate a synthetic claim-handling log");
  generate->add_option("--variant", gen_variant, "baseline, drift1 or drift2")
      ->required()
      ->check(CLI::IsMember({"baseline", "drift1", "drift2"}));
  generate->add_option("--cases", gen_cases, "Total number of cases");
  generate->add_option("--seed", gen_seed, "Random seed");
  generate->add_option("--out", gen_out, "Output CSV path");

  std::string label_log_path, label_format = "csv", label_outcome, label_out = "labels.csv";
  auto* label = app.add_subcommand("label", "Label completed cases with an LTL outcome");
  label->add_option("--log", label_log_path, "Event log path")->required();
  label->add_option("--format", label_format, "Log format")->check(CLI::IsMember({"csv", "xes"}));
  label->add_option("--outcome", label_outcome, "LTL outcome formula")->required();
  label->add_option("--out", label_out, "Output CSV path");

  std::string enc_log_path, enc_format = "csv", enc_kind = "frequency", enc_outcome,
              enc_out = "encoded";
  int enc_length = 0, enc_min = 1, enc_max = 20;
  auto* encode = app.add_subcommand("encode", "Export encoded prefixes with a schema sidecar");
  encode->add_option("--log", enc_log_path, "Event log path")->required();
  encode->add_option("--format", enc_format, "Log format")->check(CLI::IsMember({"csv", "xes"}));
  encode->add_option("--encoding", enc_kind, "frequency or index")
      ->check(CLI::IsMember({"frequency", "index"}));
  encode->add_option("--length", enc_length, "Prefix length m (index encoding)");
  encode->add_option("--prefix-min", enc_min, "Minimum prefix length (frequency)");
  encode->add_option("--prefix-max", enc_max, "Maximum prefix length (frequency)");
  encode->add_option("--outcome", enc_outcome, "Optional LTL formula; adds a label column");
  encode->add_option("--out", enc_out, "Output path prefix");

  CLI11_PARSE(app, argc, argv);

  try {
    if (evaluate->parsed()) return cmd_evaluate(eval_args);
    if (generate->parsed()) return cmd_generate(gen_variant, gen_cases, gen_seed, gen_out);
    if (label->parsed()) return cmd_label(label_log_path, label_format, label_outcome, label_out);
    if (encode->parsed())
      return cmd_encode(enc_log_path, enc_format, enc_kind, enc_length, enc_min, enc_max,
                        enc_outcome, enc_out);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
