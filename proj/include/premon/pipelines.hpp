#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "premon/canopy.hpp"
#include "premon/classifiers.hpp"
#include "premon/encoding.hpp"
#include "premon/ltl.hpp"

namespace premon {

enum class ClassifierKind { ht, aht, rf };

std::string classifier_kind_name(ClassifierKind kind);
ClassifierKind classifier_kind_from_name(const std::string& name);

struct PipelineConfig {
  ClassifierKind classifier = ClassifierKind::ht;
  int prefix_min = 1;
  int prefix_max = 20;
  HoeffdingParams hoeffding;
  int rf_trees = 100;
  std::uint64_t seed = 1;
  std::optional<double> t1, t2;  // canopy thresholds; derived from data when unset
  std::size_t canopy_sample = 200;

  bool operator==(const PipelineConfig&) const = default;
};

struct Prediction {
  std::string case_id;
  int prefix_length = 0;
  bool predicted = false;
  double score = 0.5;
  bool fallback = false;  // no trained classifier was available; global majority used
};

// Classifier payload of the clustering approach: the case's static attributes
// plus the dynamic attributes of the latest event of the prefix. Keeps the
// classifier feature space identical across prefix lengths.
struct PayloadSchema {
  std::vector<std::pair<std::string, AttrKind>> statics;
  std::vector<std::pair<std::string, AttrKind>> dynamics;

  static PayloadSchema from_log(const EventLog& log);
  ClassifierSchema classifier_schema() const;

  bool operator==(const PayloadSchema&) const = default;
};

FeatureVector encode_payload(const Prefix& p, const PayloadSchema& schema);

// Canopy clustering over frequency-encoded prefixes with one classifier per
// canopy. Completed cases insert their prefixes into the cluster model and
// update every touched canopy's classifier.
class ClusteringPipeline {
 public:
  static ClusteringPipeline train(const EventLog& log, LtlPtr formula, const PipelineConfig& cfg);

  Prediction predict(const Prefix& prefix) const;
  void update(const Case& completed);

  const CanopyModel& canopies() const { return canopies_; }
  std::size_t classifier_count() const { return classifiers_.size(); }
  std::int64_t learn_one_calls() const;
  std::int64_t drifts_detected() const;
  std::int64_t branch_replacements() const;
  bool global_majority() const { return global_majority_; }
  const std::vector<std::string>& warnings() const { return warnings_; }
  const PipelineConfig& config() const { return cfg_; }
  const LtlPtr& formula() const { return formula_; }

  nlohmann::json to_json() const;
  static ClusteringPipeline from_json(const nlohmann::json& j);

  ClusteringPipeline(ClusteringPipeline&&) noexcept = default;
  ClusteringPipeline& operator=(ClusteringPipeline&&) noexcept = default;

 private:
  ClusteringPipeline() = default;
  std::unique_ptr<BinaryClassifier> make_classifier(std::uint64_t salt) const;

  PipelineConfig cfg_;
  LtlPtr formula_;
  EncodingSchema freq_schema_;
  PayloadSchema payload_schema_;
  CanopyModel canopies_;
  std::map<int, std::unique_ptr<BinaryClassifier>> classifiers_;
  bool global_majority_ = false;
  bool trained_ = false;
  std::vector<std::string> warnings_;
};

// One index-encoded classifier per prefix length in [prefix_min, prefix_max];
// a completed case updates exactly the classifiers of its prefix lengths.
class IndexPipeline {
 public:
  static IndexPipeline train(const EventLog& log, LtlPtr formula, const PipelineConfig& cfg);

  Prediction predict(const Prefix& prefix) const;  // throws on out-of-range length
  void update(const Case& completed);

  std::size_t classifier_count() const;  // trained lengths only
  bool has_classifier(int length) const;
  std::int64_t learn_one_calls() const;
  std::int64_t drifts_detected() const;
  std::int64_t branch_replacements() const;
  bool global_majority() const { return global_majority_; }
  const std::vector<std::string>& warnings() const { return warnings_; }
  const PipelineConfig& config() const { return cfg_; }
  const LtlPtr& formula() const { return formula_; }

  nlohmann::json to_json() const;
  static IndexPipeline from_json(const nlohmann::json& j);

  IndexPipeline(IndexPipeline&&) noexcept = default;
  IndexPipeline& operator=(IndexPipeline&&) noexcept = default;

 private:
  IndexPipeline() = default;
  std::unique_ptr<BinaryClassifier> make_classifier(int length) const;

  PipelineConfig cfg_;
  LtlPtr formula_;
  std::vector<EncodingSchema> schemas_;                          // [m - prefix_min]
  std::vector<std::unique_ptr<BinaryClassifier>> classifiers_;   // nullptr = never trained
  bool global_majority_ = false;
  bool trained_ = false;
  std::vector<std::string> warnings_;
};

}  // namespace premon
