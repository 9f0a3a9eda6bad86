#include "premon/pipelines.hpp"

#include <algorithm>

#include <nlohmann/json.hpp>

#include "premon/errors.hpp"

namespace premon {

namespace {

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t salt) {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (salt + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

void check_config(const PipelineConfig& cfg) {
  if (cfg.prefix_min < 1 || cfg.prefix_min > cfg.prefix_max)
    throw Error("bad prefix length range");
  if (cfg.t1.has_value() != cfg.t2.has_value())
    throw Error("canopy thresholds must be given together");
  if (cfg.t1 && !(*cfg.t2 < *cfg.t1)) throw Error("canopy thresholds need T2 < T1");
  if (cfg.rf_trees < 1) throw Error("rf_trees must be positive");
}

std::unique_ptr<BinaryClassifier> new_classifier(ClassifierKind kind, ClassifierSchema schema,
                                                 const PipelineConfig& cfg, std::uint64_t salt) {
  switch (kind) {
    case ClassifierKind::ht:
      return std::make_unique<HoeffdingTree>(std::move(schema), cfg.hoeffding);
    case ClassifierKind::aht:
      return std::make_unique<AdaptiveHoeffdingTree>(std::move(schema), cfg.hoeffding);
    case ClassifierKind::rf:
      return std::make_unique<RandomForest>(std::move(schema), cfg.rf_trees,
                                            mix_seed(cfg.seed, salt));
  }
  throw Error("bad classifier kind");
}

nlohmann::json config_to_json(const PipelineConfig& cfg) {
  nlohmann::json j{{"classifier", classifier_kind_name(cfg.classifier)},
                   {"prefix_min", cfg.prefix_min},
                   {"prefix_max", cfg.prefix_max},
                   {"rf_trees", cfg.rf_trees},
                   {"seed", cfg.seed},
                   {"canopy_sample", cfg.canopy_sample},
                   {"hoeffding",
                    {{"split_confidence", cfg.hoeffding.split_confidence},
                     {"tie_threshold", cfg.hoeffding.tie_threshold},
                     {"grace_period", cfg.hoeffding.grace_period},
                     {"default_label", cfg.hoeffding.default_label},
                     {"adwin_delta", cfg.hoeffding.adwin_delta},
                     {"alternate_min_window", cfg.hoeffding.alternate_min_window}}}};
  if (cfg.t1) j["t1"] = *cfg.t1;
  if (cfg.t2) j["t2"] = *cfg.t2;
  return j;
}

PipelineConfig config_from_json(const nlohmann::json& j) {
  PipelineConfig cfg;
  cfg.classifier = classifier_kind_from_name(j.at("classifier").get<std::string>());
  cfg.prefix_min = j.at("prefix_min").get<int>();
  cfg.prefix_max = j.at("prefix_max").get<int>();
  cfg.rf_trees = j.at("rf_trees").get<int>();
  cfg.seed = j.at("seed").get<std::uint64_t>();
  cfg.canopy_sample = j.at("canopy_sample").get<std::size_t>();
  const auto& h = j.at("hoeffding");
  cfg.hoeffding.split_confidence = h.at("split_confidence").get<double>();
  cfg.hoeffding.tie_threshold = h.at("tie_threshold").get<double>();
  cfg.hoeffding.grace_period = h.at("grace_period").get<int>();
  cfg.hoeffding.default_label = h.at("default_label").get<bool>();
  cfg.hoeffding.adwin_delta = h.at("adwin_delta").get<double>();
  cfg.hoeffding.alternate_min_window = h.at("alternate_min_window").get<int>();
  if (j.contains("t1")) cfg.t1 = j.at("t1").get<double>();
  if (j.contains("t2")) cfg.t2 = j.at("t2").get<double>();
  return cfg;
}

nlohmann::json attr_list_to_json(const std::vector<std::pair<std::string, AttrKind>>& attrs) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& [name, kind] : attrs) out.push_back({{"name", name}, {"kind", attr_kind_name(kind)}});
  return out;
}

std::vector<std::pair<std::string, AttrKind>> attr_list_from_json(const nlohmann::json& j) {
  std::vector<std::pair<std::string, AttrKind>> out;
  for (const auto& a : j)
    out.emplace_back(a.at("name").get<std::string>(),
                     attr_kind_from_name(a.at("kind").get<std::string>()));
  return out;
}

nlohmann::json encoding_schema_to_json(const EncodingSchema& s) {
  return {{"kind", s.kind == EncodingSchema::Kind::frequency ? "frequency" : "index"},
          {"alphabet", s.activity_alphabet},
          {"statics", attr_list_to_json(s.static_attrs)},
          {"dynamics", attr_list_to_json(s.dynamic_attrs)},
          {"prefix_length", s.prefix_length}};
}

EncodingSchema encoding_schema_from_json(const nlohmann::json& j) {
  EncodingSchema s;
  s.kind = j.at("kind").get<std::string>() == "frequency" ? EncodingSchema::Kind::frequency
                                                          : EncodingSchema::Kind::index;
  s.activity_alphabet = j.at("alphabet").get<std::vector<std::string>>();
  s.static_attrs = attr_list_from_json(j.at("statics"));
  s.dynamic_attrs = attr_list_from_json(j.at("dynamics"));
  s.prefix_length = j.at("prefix_length").get<int>();
  return s;
}

std::int64_t drifts_of(const BinaryClassifier* c) {
  if (auto* aht = dynamic_cast<const AdaptiveHoeffdingTree*>(c)) return aht->drifts_detected();
  return 0;
}

std::int64_t replacements_of(const BinaryClassifier* c) {
  if (auto* aht = dynamic_cast<const AdaptiveHoeffdingTree*>(c)) return aht->branch_replacements();
  return 0;
}

}  // namespace

std::string classifier_kind_name(ClassifierKind kind) {
  switch (kind) {
    case ClassifierKind::ht: return "ht";
    case ClassifierKind::aht: return "aht";
    case ClassifierKind::rf: return "rf";
  }
  throw Error("bad classifier kind");
}

ClassifierKind classifier_kind_from_name(const std::string& name) {
  if (name == "ht") return ClassifierKind::ht;
  if (name == "aht" || name == "at") return ClassifierKind::aht;
  if (name == "rf") return ClassifierKind::rf;
  throw Error("unknown classifier '" + name + "' (expected ht, aht or rf)");
}

PayloadSchema PayloadSchema::from_log(const EventLog& log) {
  PayloadSchema s;
  for (const auto& [name, kind] : log.attr_schema.static_attrs) s.statics.emplace_back(name, kind);
  for (const auto& [name, kind] : log.attr_schema.dynamic_attrs) s.dynamics.emplace_back(name, kind);
  return s;
}

ClassifierSchema PayloadSchema::classifier_schema() const {
  ClassifierSchema cs;
  std::string id = "payload/u" + std::to_string(statics.size()) + "/r" +
                   std::to_string(dynamics.size()) + "/";
  for (const auto& [name, kind] : statics) {
    cs.kinds.push_back(kind == AttrKind::number ? FeatureKind::numeric : FeatureKind::categorical);
    id += name + ";";
  }
  for (const auto& [name, kind] : dynamics) {
    cs.kinds.push_back(kind == AttrKind::number ? FeatureKind::numeric : FeatureKind::categorical);
    id += name + ";";
  }
  cs.schema_id = std::move(id);
  return cs;
}

FeatureVector encode_payload(const Prefix& p, const PayloadSchema& schema) {
  FeatureVector v;
  v.schema_id = schema.classifier_schema().schema_id;
  v.values.reserve(schema.statics.size() + schema.dynamics.size());
  for (const auto& [name, kind] : schema.statics) {
    (void)kind;
    auto it = p.static_attrs().find(name);
    v.values.push_back(it == p.static_attrs().end() ? FeatureValue::absent()
                                                    : FeatureValue::from_attr(it->second));
  }
  const Event& last = p.last_event();
  for (const auto& [name, kind] : schema.dynamics) {
    (void)kind;
    auto it = last.dynamic_attrs.find(name);
    v.values.push_back(it == last.dynamic_attrs.end() ? FeatureValue::absent()
                                                      : FeatureValue::from_attr(it->second));
  }
  return v;
}

// --- ClusteringPipeline -------------------------------------------------------

std::unique_ptr<BinaryClassifier> ClusteringPipeline::make_classifier(std::uint64_t salt) const {
  return new_classifier(cfg_.classifier, payload_schema_.classifier_schema(), cfg_, salt);
}

ClusteringPipeline ClusteringPipeline::train(const EventLog& log, LtlPtr formula,
                                             const PipelineConfig& cfg) {
  check_config(cfg);
  if (log.cases.empty()) throw Error("cannot train on an empty log");

  ClusteringPipeline p;
  p.cfg_ = cfg;
  p.formula_ = std::move(formula);
  p.freq_schema_ = EncodingSchema::frequency(log);
  p.payload_schema_ = PayloadSchema::from_log(log);

  const auto labels = label_log(log, p.formula_);

  std::vector<Prefix> prefixes;
  for (const auto& c : log.cases) {
    const bool y = labels.at(c.case_id).value;
    for (auto& pre : extract_prefixes(c, cfg.prefix_min, cfg.prefix_max, y))
      prefixes.push_back(pre);
  }
  if (prefixes.empty()) throw Error("no prefixes in the configured length range");

  std::int64_t positives = 0;
  for (const auto& pre : prefixes) positives += *pre.label ? 1 : 0;
  p.global_majority_ = 2 * positives > static_cast<std::int64_t>(prefixes.size());
  if (positives == 0 || positives == static_cast<std::int64_t>(prefixes.size()))
    p.warnings_.push_back("training log has a single outcome class");

  std::vector<FeatureVector> freq;
  freq.reserve(prefixes.size());
  for (const auto& pre : prefixes) freq.push_back(encode_frequency(pre, p.freq_schema_));

  double t1, t2;
  if (cfg.t1) {
    t1 = *cfg.t1;
    t2 = *cfg.t2;
  } else {
    std::tie(t1, t2) = suggest_canopy_thresholds(freq, cfg.canopy_sample);
  }

  std::vector<std::vector<int>> memberships;
  p.canopies_ = CanopyModel::build(freq, t1, t2, &memberships);

  std::vector<std::vector<int>> members_of_canopy(p.canopies_.size());
  for (std::size_t i = 0; i < memberships.size(); ++i)
    for (int ci : memberships[i]) members_of_canopy[static_cast<std::size_t>(ci)].push_back((int)i);

  std::vector<FeatureVector> payloads;
  payloads.reserve(prefixes.size());
  for (const auto& pre : prefixes) payloads.push_back(encode_payload(pre, p.payload_schema_));

  for (std::size_t ci = 0; ci < members_of_canopy.size(); ++ci) {
    const auto& members = members_of_canopy[ci];
    if (members.empty()) continue;
    auto classifier = p.make_classifier(ci);
    if (classifier->incremental()) {
      for (int i : members) classifier->learn_one(payloads[(std::size_t)i], *prefixes[(std::size_t)i].label);
    } else {
      std::vector<std::pair<FeatureVector, bool>> data;
      data.reserve(members.size());
      for (int i : members) data.emplace_back(payloads[(std::size_t)i], *prefixes[(std::size_t)i].label);
      classifier->fit(data);
    }
    p.classifiers_.emplace(static_cast<int>(ci), std::move(classifier));
  }
  p.trained_ = true;
  return p;
}

Prediction ClusteringPipeline::predict(const Prefix& prefix) const {
  if (!trained_) throw Error("pipeline is not trained");
  Prediction out;
  out.case_id = prefix.case_id();
  out.prefix_length = prefix.length;

  const FeatureVector freq = encode_frequency(prefix, freq_schema_);
  const int ci = canopies_.assign(freq);
  auto it = classifiers_.find(ci);
  if (it == classifiers_.end()) {
    out.predicted = global_majority_;
    out.score = 0.5;
    out.fallback = true;
    return out;
  }
  const ScoredLabel s = it->second->predict(encode_payload(prefix, payload_schema_));
  out.score = s.score;
  out.predicted = s.score >= 0.5;
  return out;
}

void ClusteringPipeline::update(const Case& completed) {
  if (!trained_) throw Error("pipeline is not trained");
  if (cfg_.classifier == ClassifierKind::rf)
    throw NotIncrementalError(
        "rediscovery required: clustering pipeline backed by a random forest cannot update");
  if (completed.events.empty()) throw Error("cannot update with an empty case");

  const bool y = evaluate(formula_, completed.activity_sequence());
  for (const auto& prefix : extract_prefixes(completed, cfg_.prefix_min, cfg_.prefix_max, y)) {
    const FeatureVector freq = encode_frequency(prefix, freq_schema_);
    const FeatureVector payload = encode_payload(prefix, payload_schema_);
    for (int ci : canopies_.insert(freq)) {
      auto it = classifiers_.find(ci);
      if (it == classifiers_.end())
        it = classifiers_.emplace(ci, make_classifier(static_cast<std::uint64_t>(ci))).first;
      it->second->learn_one(payload, y);
    }
  }
}

std::int64_t ClusteringPipeline::learn_one_calls() const {
  std::int64_t n = 0;
  for (const auto& [ci, c] : classifiers_) {
    (void)ci;
    n += c->instances_seen();
  }
  return n;
}

std::int64_t ClusteringPipeline::drifts_detected() const {
  std::int64_t n = 0;
  for (const auto& [ci, c] : classifiers_) {
    (void)ci;
    n += drifts_of(c.get());
  }
  return n;
}

std::int64_t ClusteringPipeline::branch_replacements() const {
  std::int64_t n = 0;
  for (const auto& [ci, c] : classifiers_) {
    (void)ci;
    n += replacements_of(c.get());
  }
  return n;
}

nlohmann::json ClusteringPipeline::to_json() const {
  nlohmann::json classifiers = nlohmann::json::object();
  for (const auto& [ci, c] : classifiers_) classifiers[std::to_string(ci)] = c->to_json();
  return {{"type", "clustering"},
          {"version", 1},
          {"config", config_to_json(cfg_)},
          {"formula", to_string(formula_)},
          {"freq_schema", encoding_schema_to_json(freq_schema_)},
          {"payload_schema",
           {{"statics", attr_list_to_json(payload_schema_.statics)},
            {"dynamics", attr_list_to_json(payload_schema_.dynamics)}}},
          {"canopies", canopies_.to_json()},
          {"classifiers", classifiers},
          {"global_majority", global_majority_},
          {"warnings", warnings_}};
}

ClusteringPipeline ClusteringPipeline::from_json(const nlohmann::json& j) {
  if (j.at("type").get<std::string>() != "clustering") throw Error("not a clustering pipeline");
  if (j.at("version").get<int>() != 1) throw Error("unsupported pipeline version");
  ClusteringPipeline p;
  p.cfg_ = config_from_json(j.at("config"));
  p.formula_ = parse_formula(j.at("formula").get<std::string>());
  p.freq_schema_ = encoding_schema_from_json(j.at("freq_schema"));
  p.payload_schema_.statics = attr_list_from_json(j.at("payload_schema").at("statics"));
  p.payload_schema_.dynamics = attr_list_from_json(j.at("payload_schema").at("dynamics"));
  p.canopies_ = CanopyModel::from_json(j.at("canopies"));
  for (const auto& [key, cj] : j.at("classifiers").items())
    p.classifiers_.emplace(std::stoi(key), classifier_from_json(cj));
  p.global_majority_ = j.at("global_majority").get<bool>();
  p.warnings_ = j.at("warnings").get<std::vector<std::string>>();
  p.trained_ = true;
  return p;
}

// --- IndexPipeline -------------------------------------------------------------

std::unique_ptr<BinaryClassifier> IndexPipeline::make_classifier(int length) const {
  const auto& schema = schemas_.at(static_cast<std::size_t>(length - cfg_.prefix_min));
  ClassifierSchema cs;
  cs.schema_id = schema.schema_id();
  cs.kinds = schema.feature_kinds();
  return new_classifier(cfg_.classifier, std::move(cs), cfg_, static_cast<std::uint64_t>(length));
}

IndexPipeline IndexPipeline::train(const EventLog& log, LtlPtr formula,
                                   const PipelineConfig& cfg) {
  check_config(cfg);
  if (log.cases.empty()) throw Error("cannot train on an empty log");

  IndexPipeline p;
  p.cfg_ = cfg;
  p.formula_ = std::move(formula);
  for (int m = cfg.prefix_min; m <= cfg.prefix_max; ++m)
    p.schemas_.push_back(EncodingSchema::index(log, m));
  p.classifiers_.resize(p.schemas_.size());

  const auto labels = label_log(log, p.formula_);

  const std::size_t lengths = p.schemas_.size();
  std::vector<std::vector<std::pair<FeatureVector, bool>>> per_length(lengths);
  std::int64_t positives = 0, total = 0;
  for (const auto& c : log.cases) {
    const bool y = labels.at(c.case_id).value;
    for (const auto& prefix : extract_prefixes(c, cfg.prefix_min, cfg.prefix_max, y)) {
      const std::size_t slot = static_cast<std::size_t>(prefix.length - cfg.prefix_min);
      per_length[slot].emplace_back(encode_index(prefix, p.schemas_[slot]), y);
      positives += y ? 1 : 0;
      ++total;
    }
  }
  if (total == 0) throw Error("no prefixes in the configured length range");
  p.global_majority_ = 2 * positives > total;
  if (positives == 0 || positives == total)
    p.warnings_.push_back("training log has a single outcome class");

  for (std::size_t slot = 0; slot < lengths; ++slot) {
    if (per_length[slot].empty()) continue;  // length never reached: fallback at predict time
    auto classifier = p.make_classifier(cfg.prefix_min + static_cast<int>(slot));
    if (classifier->incremental()) {
      for (const auto& [x, y] : per_length[slot]) classifier->learn_one(x, y);
    } else {
      classifier->fit(per_length[slot]);
    }
    p.classifiers_[slot] = std::move(classifier);
  }
  p.trained_ = true;
  return p;
}

Prediction IndexPipeline::predict(const Prefix& prefix) const {
  if (!trained_) throw Error("pipeline is not trained");
  if (prefix.length < cfg_.prefix_min || prefix.length > cfg_.prefix_max)
    throw Error("prefix length " + std::to_string(prefix.length) + " outside configured range [" +
                std::to_string(cfg_.prefix_min) + ", " + std::to_string(cfg_.prefix_max) + "]");

  Prediction out;
  out.case_id = prefix.case_id();
  out.prefix_length = prefix.length;

  const std::size_t slot = static_cast<std::size_t>(prefix.length - cfg_.prefix_min);
  const auto& classifier = classifiers_[slot];
  if (!classifier) {
    out.predicted = global_majority_;
    out.score = 0.5;
    out.fallback = true;
    return out;
  }
  const ScoredLabel s = classifier->predict(encode_index(prefix, schemas_[slot]));
  out.score = s.score;
  out.predicted = s.score >= 0.5;
  return out;
}

void IndexPipeline::update(const Case& completed) {
  if (!trained_) throw Error("pipeline is not trained");
  if (cfg_.classifier == ClassifierKind::rf)
    throw NotIncrementalError(
        "rediscovery required: index pipeline backed by a random forest cannot update");
  if (completed.events.empty()) throw Error("cannot update with an empty case");

  const bool y = evaluate(formula_, completed.activity_sequence());
  for (const auto& prefix : extract_prefixes(completed, cfg_.prefix_min, cfg_.prefix_max, y)) {
    const std::size_t slot = static_cast<std::size_t>(prefix.length - cfg_.prefix_min);
    if (!classifiers_[slot]) classifiers_[slot] = make_classifier(prefix.length);
    classifiers_[slot]->learn_one(encode_index(prefix, schemas_[slot]), y);
  }
}

std::size_t IndexPipeline::classifier_count() const {
  std::size_t n = 0;
  for (const auto& c : classifiers_)
    if (c) ++n;
  return n;
}

bool IndexPipeline::has_classifier(int length) const {
  if (length < cfg_.prefix_min || length > cfg_.prefix_max) return false;
  return classifiers_[static_cast<std::size_t>(length - cfg_.prefix_min)] != nullptr;
}

std::int64_t IndexPipeline::learn_one_calls() const {
  std::int64_t n = 0;
  for (const auto& c : classifiers_)
    if (c) n += c->instances_seen();
  return n;
}

std::int64_t IndexPipeline::drifts_detected() const {
  std::int64_t n = 0;
  for (const auto& c : classifiers_)
    if (c) n += drifts_of(c.get());
  return n;
}

std::int64_t IndexPipeline::branch_replacements() const {
  std::int64_t n = 0;
  for (const auto& c : classifiers_)
    if (c) n += replacements_of(c.get());
  return n;
}

nlohmann::json IndexPipeline::to_json() const {
  nlohmann::json schemas = nlohmann::json::array();
  for (const auto& s : schemas_) schemas.push_back(encoding_schema_to_json(s));
  nlohmann::json classifiers = nlohmann::json::object();
  for (std::size_t slot = 0; slot < classifiers_.size(); ++slot)
    if (classifiers_[slot])
      classifiers[std::to_string(cfg_.prefix_min + static_cast<int>(slot))] =
          classifiers_[slot]->to_json();
  return {{"type", "index"},
          {"version", 1},
          {"config", config_to_json(cfg_)},
          {"formula", to_string(formula_)},
          {"schemas", schemas},
          {"classifiers", classifiers},
          {"global_majority", global_majority_},
          {"warnings", warnings_}};
}

IndexPipeline IndexPipeline::from_json(const nlohmann::json& j) {
  if (j.at("type").get<std::string>() != "index") throw Error("not an index pipeline");
  if (j.at("version").get<int>() != 1) throw Error("unsupported pipeline version");
  IndexPipeline p;
  p.cfg_ = config_from_json(j.at("config"));
  p.formula_ = parse_formula(j.at("formula").get<std::string>());
  for (const auto& sj : j.at("schemas")) p.schemas_.push_back(encoding_schema_from_json(sj));
  p.classifiers_.resize(p.schemas_.size());
  for (const auto& [key, cj] : j.at("classifiers").items()) {
    const int length = std::stoi(key);
    p.classifiers_[static_cast<std::size_t>(length - p.cfg_.prefix_min)] = classifier_from_json(cj);
  }
  p.global_majority_ = j.at("global_majority").get<bool>();
  p.warnings_ = j.at("warnings").get<std::vector<std::string>>();
  p.trained_ = true;
  return p;
}

}  // namespace premon
