#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "premon/adwin.hpp"
#include "premon/encoding.hpp"
#include "premon/errors.hpp"

namespace premon {

struct ClassifierSchema {
  std::string schema_id;
  std::vector<FeatureKind> kinds;

  bool operator==(const ClassifierSchema&) const = default;
};

struct ScoredLabel {
  bool label = false;
  double score = 0.5;  // positive-class probability estimate in [0, 1]
};

// Binary classifier over FeatureVector instances. Incremental learners
// implement learn_one; batch learners implement fit and refuse learn_one with
// NotIncrementalError.
class BinaryClassifier {
 public:
  virtual ~BinaryClassifier() = default;

  virtual void learn_one(const FeatureVector& x, bool y) = 0;
  virtual ScoredLabel predict(const FeatureVector& x) const = 0;
  virtual void fit(const std::vector<std::pair<FeatureVector, bool>>& data) = 0;

  virtual bool incremental() const = 0;
  virtual std::int64_t instances_seen() const = 0;
  virtual const ClassifierSchema& schema() const = 0;
  virtual nlohmann::json to_json() const = 0;
};

struct HoeffdingParams {
  double split_confidence = 1e-7;  // delta of the Hoeffding bound
  double tie_threshold = 0.05;     // tau
  int grace_period = 200;          // instances between split attempts at a leaf
  bool default_label = false;      // prediction when a leaf has no majority
  double adwin_delta = 0.002;      // delta' of the branch monitors
  int alternate_min_window = 100;  // outcomes before an alternate may take over

  bool operator==(const HoeffdingParams&) const = default;
};

namespace detail {
class TreeCore;
}

// Incremental decision tree (VFDT). Leaves keep class counts, per-categorical
// value counts and 10-bin equal-width histograms (range tracked online) per
// numeric feature; a leaf splits when the best feature's information gain
// beats the runner-up by the Hoeffding bound eps = sqrt(ln(1/delta)/(2n)), or
// when eps < tau (tie).
class HoeffdingTree : public BinaryClassifier {
 public:
  HoeffdingTree(ClassifierSchema schema, HoeffdingParams params = {});
  HoeffdingTree(HoeffdingTree&&) noexcept;
  HoeffdingTree& operator=(HoeffdingTree&&) noexcept;
  ~HoeffdingTree() override;

  void learn_one(const FeatureVector& x, bool y) override;
  ScoredLabel predict(const FeatureVector& x) const override;
  void fit(const std::vector<std::pair<FeatureVector, bool>>& data) override;
  bool incremental() const override { return true; }
  std::int64_t instances_seen() const override;
  const ClassifierSchema& schema() const override;
  nlohmann::json to_json() const override;

  int node_count() const;
  int depth() const;
  std::optional<int> root_split_feature() const;

  static HoeffdingTree from_json(const nlohmann::json& j);

 private:
  explicit HoeffdingTree(std::unique_ptr<detail::TreeCore> core);
  std::unique_ptr<detail::TreeCore> core_;
};

// Hoeffding tree with one ADWIN monitor per internal node, fed with the
// correctness of the subtree's prediction for every instance routed through
// it. A monitor firing starts a background alternate subtree; the alternate
// replaces the branch once its monitored accuracy exceeds the branch's, and
// monitors of the promoted subtree start fresh.
class AdaptiveHoeffdingTree : public BinaryClassifier {
 public:
  AdaptiveHoeffdingTree(ClassifierSchema schema, HoeffdingParams params = {});
  AdaptiveHoeffdingTree(AdaptiveHoeffdingTree&&) noexcept;
  AdaptiveHoeffdingTree& operator=(AdaptiveHoeffdingTree&&) noexcept;
  ~AdaptiveHoeffdingTree() override;

  void learn_one(const FeatureVector& x, bool y) override;
  ScoredLabel predict(const FeatureVector& x) const override;
  void fit(const std::vector<std::pair<FeatureVector, bool>>& data) override;
  bool incremental() const override { return true; }
  std::int64_t instances_seen() const override;
  const ClassifierSchema& schema() const override;
  nlohmann::json to_json() const override;

  // With monitors disabled the tree is prediction-identical to a plain
  // HoeffdingTree fed the same stream.
  void set_monitors_enabled(bool enabled);
  bool monitors_enabled() const;
  std::int64_t drifts_detected() const;
  std::int64_t branch_replacements() const;

  int node_count() const;
  int depth() const;

  static AdaptiveHoeffdingTree from_json(const nlohmann::json& j);

 private:
  explicit AdaptiveHoeffdingTree(std::unique_ptr<detail::TreeCore> core);
  std::unique_ptr<detail::TreeCore> core_;
};

// Batch CART tree: binary splits picked by Gini impurity over a per-node
// random feature subset, grown until leaves are pure or no impurity-reducing
// split remains.
class DecisionTree {
 public:
  void fit(const std::vector<std::pair<FeatureVector, bool>>& data,
           const std::vector<std::size_t>& indices, const std::vector<FeatureKind>& kinds,
           std::size_t feature_subset, std::mt19937_64& rng);

  ScoredLabel predict(const FeatureVector& x) const;
  bool fitted() const { return !nodes_.empty(); }
  std::size_t node_count() const { return nodes_.size(); }

  nlohmann::json to_json() const;
  static DecisionTree from_json(const nlohmann::json& j);

 private:
  struct Node {
    double counts[2] = {0, 0};
    int feature = -1;  // -1 for leaves
    bool numeric_split = false;
    double threshold = 0;
    std::string level;  // categorical equality split
    int left = -1, right = -1;
  };

  int build(const std::vector<std::pair<FeatureVector, bool>>& data,
            std::vector<std::size_t>& indices, const std::vector<FeatureKind>& kinds,
            std::size_t feature_subset, std::mt19937_64& rng);

  std::vector<Node> nodes_;
};

// Offline bagging ensemble of CART trees: bootstrap samples of |data|, feature
// subsets of ceil(sqrt(#features)) per split, majority vote. Deterministic
// under a fixed seed.
class RandomForest : public BinaryClassifier {
 public:
  RandomForest(ClassifierSchema schema, int n_trees, std::uint64_t seed);

  void learn_one(const FeatureVector& x, bool y) override;  // throws NotIncrementalError
  ScoredLabel predict(const FeatureVector& x) const override;
  void fit(const std::vector<std::pair<FeatureVector, bool>>& data) override;
  bool incremental() const override { return false; }
  std::int64_t instances_seen() const override { return trained_on_; }
  const ClassifierSchema& schema() const override { return schema_; }
  nlohmann::json to_json() const override;

  const std::vector<DecisionTree>& trees() const { return trees_; }

  static RandomForest from_json(const nlohmann::json& j);

 private:
  ClassifierSchema schema_;
  int n_trees_;
  std::uint64_t seed_;
  std::vector<DecisionTree> trees_;
  std::int64_t trained_on_ = 0;
};

std::unique_ptr<BinaryClassifier> classifier_from_json(const nlohmann::json& j);

}  // namespace premon
