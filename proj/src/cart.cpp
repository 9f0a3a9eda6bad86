#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>

#include <nlohmann/json.hpp>

#include "premon/classifiers.hpp"

namespace premon {

namespace {

constexpr const char* kAbsentLevel = "__absent__";

double gini(double a, double b) {
  const double n = a + b;
  if (n <= 0) return 0;
  const double pa = a / n, pb = b / n;
  return 1.0 - pa * pa - pb * pb;
}

const std::string& level_of(const FeatureValue& v) {
  static const std::string absent = kAbsentLevel;
  return v.is_absent() ? absent : v.cat();
}

}  // namespace

void DecisionTree::fit(const std::vector<std::pair<FeatureVector, bool>>& data,
                       const std::vector<std::size_t>& indices,
                       const std::vector<FeatureKind>& kinds, std::size_t feature_subset,
                       std::mt19937_64& rng) {
  nodes_.clear();
  if (indices.empty()) throw Error("decision tree fit on empty index set");
  std::vector<std::size_t> work = indices;
  build(data, work, kinds, feature_subset, rng);
}

int DecisionTree::build(const std::vector<std::pair<FeatureVector, bool>>& data,
                        std::vector<std::size_t>& indices, const std::vector<FeatureKind>& kinds,
                        std::size_t feature_subset, std::mt19937_64& rng) {
  const int node_id = static_cast<int>(nodes_.size());
  nodes_.emplace_back();
  double c0 = 0, c1 = 0;
  for (std::size_t i : indices) (data[i].second ? c1 : c0) += 1;
  nodes_[node_id].counts[0] = c0;
  nodes_[node_id].counts[1] = c1;

  const double n = c0 + c1;
  if (c0 == 0 || c1 == 0 || n < 2) return node_id;

  // Per-node feature subset, evaluated in ascending feature order.
  std::vector<std::size_t> features(kinds.size());
  std::iota(features.begin(), features.end(), 0);
  if (feature_subset < features.size()) {
    for (std::size_t i = 0; i < feature_subset; ++i) {
      std::uniform_int_distribution<std::size_t> pick(i, features.size() - 1);
      std::swap(features[i], features[pick(rng)]);
    }
    features.resize(feature_subset);
    std::sort(features.begin(), features.end());
  }

  const double parent = gini(c0, c1);
  double best_score = parent - 1e-12;
  int best_feature = -1;
  bool best_numeric = false;
  double best_threshold = 0;
  std::string best_level;

  for (std::size_t f : features) {
    if (kinds[f] == FeatureKind::numeric) {
      // Absent values always go left; thresholds fall between present values.
      std::vector<std::pair<double, bool>> present;
      double a0 = 0, a1 = 0;  // absent per class
      for (std::size_t i : indices) {
        const FeatureValue& v = data[i].first.values[f];
        if (v.is_absent()) (data[i].second ? a1 : a0) += 1;
        else present.emplace_back(v.num(), data[i].second);
      }
      if (present.size() < 2) continue;
      std::sort(present.begin(), present.end());
      double l0 = a0, l1 = a1;
      for (std::size_t i = 0; i + 1 < present.size(); ++i) {
        (present[i].second ? l1 : l0) += 1;
        if (present[i].first == present[i + 1].first) continue;
        const double r0 = c0 - l0, r1 = c1 - l1;
        const double nl = l0 + l1, nr = r0 + r1;
        if (nl <= 0 || nr <= 0) continue;
        const double score = (nl / n) * gini(l0, l1) + (nr / n) * gini(r0, r1);
        if (score < best_score) {
          best_score = score;
          best_feature = static_cast<int>(f);
          best_numeric = true;
          best_threshold = present[i].first + (present[i + 1].first - present[i].first) / 2;
        }
      }
    } else {
      std::map<std::string, std::array<double, 2>> per_level;
      for (std::size_t i : indices)
        per_level[level_of(data[i].first.values[f])][data[i].second ? 1 : 0] += 1;
      if (per_level.size() < 2) continue;
      for (const auto& [level, c] : per_level) {
        const double l0 = c[0], l1 = c[1];
        const double r0 = c0 - l0, r1 = c1 - l1;
        const double nl = l0 + l1, nr = r0 + r1;
        if (nl <= 0 || nr <= 0) continue;
        const double score = (nl / n) * gini(l0, l1) + (nr / n) * gini(r0, r1);
        if (score < best_score) {
          best_score = score;
          best_feature = static_cast<int>(f);
          best_numeric = false;
          best_level = level;
        }
      }
    }
  }

  if (best_feature < 0) return node_id;

  std::vector<std::size_t> left, right;
  for (std::size_t i : indices) {
    const FeatureValue& v = data[i].first.values[static_cast<std::size_t>(best_feature)];
    bool go_left;
    if (best_numeric) go_left = v.is_absent() || v.num() <= best_threshold;
    else go_left = level_of(v) == best_level;
    (go_left ? left : right).push_back(i);
  }
  if (left.empty() || right.empty()) return node_id;

  indices.clear();
  indices.shrink_to_fit();
  const int left_id = build(data, left, kinds, feature_subset, rng);
  const int right_id = build(data, right, kinds, feature_subset, rng);
  nodes_[node_id].feature = best_feature;
  nodes_[node_id].numeric_split = best_numeric;
  nodes_[node_id].threshold = best_threshold;
  nodes_[node_id].level = best_level;
  nodes_[node_id].left = left_id;
  nodes_[node_id].right = right_id;
  return node_id;
}

ScoredLabel DecisionTree::predict(const FeatureVector& x) const {
  if (nodes_.empty()) throw Error("decision tree is not fitted");
  const Node* node = &nodes_[0];
  while (node->feature >= 0) {
    const FeatureValue& v = x.values[static_cast<std::size_t>(node->feature)];
    bool go_left;
    if (node->numeric_split) go_left = v.is_absent() || v.num() <= node->threshold;
    else go_left = level_of(v) == node->level;
    node = &nodes_[static_cast<std::size_t>(go_left ? node->left : node->right)];
  }
  const double n = node->counts[0] + node->counts[1];
  const bool label = node->counts[1] > node->counts[0];
  return {label, (node->counts[1] + 1) / (n + 2)};
}

nlohmann::json DecisionTree::to_json() const {
  nlohmann::json nodes = nlohmann::json::array();
  for (const auto& nd : nodes_) {
    nodes.push_back({{"counts", {nd.counts[0], nd.counts[1]}},
                     {"feature", nd.feature},
                     {"numeric", nd.numeric_split},
                     {"threshold", nd.threshold},
                     {"level", nd.level},
                     {"left", nd.left},
                     {"right", nd.right}});
  }
  return {{"nodes", nodes}};
}

DecisionTree DecisionTree::from_json(const nlohmann::json& j) {
  DecisionTree t;
  for (const auto& nj : j.at("nodes")) {
    Node nd;
    nd.counts[0] = nj.at("counts")[0].get<double>();
    nd.counts[1] = nj.at("counts")[1].get<double>();
    nd.feature = nj.at("feature").get<int>();
    nd.numeric_split = nj.at("numeric").get<bool>();
    nd.threshold = nj.at("threshold").get<double>();
    nd.level = nj.at("level").get<std::string>();
    nd.left = nj.at("left").get<int>();
    nd.right = nj.at("right").get<int>();
    t.nodes_.push_back(std::move(nd));
  }
  return t;
}

// --- RandomForest ------------------------------------------------------------

RandomForest::RandomForest(ClassifierSchema schema, int n_trees, std::uint64_t seed)
    : schema_(std::move(schema)), n_trees_(n_trees), seed_(seed) {
  if (n_trees < 1) throw Error("random forest needs at least one tree");
}

void RandomForest::learn_one(const FeatureVector&, bool) {
  throw NotIncrementalError("rediscovery required: a random forest cannot be updated incrementally");
}

void RandomForest::fit(const std::vector<std::pair<FeatureVector, bool>>& data) {
  if (data.empty()) throw Error("random forest fit on empty data");
  for (const auto& [x, y] : data) {
    (void)y;
    if (x.schema_id != schema_.schema_id)
      throw SchemaError("vector schema '" + x.schema_id + "' does not match forest schema");
  }
  trees_.clear();
  trees_.reserve(static_cast<std::size_t>(n_trees_));
  trained_on_ = static_cast<std::int64_t>(data.size());

  const std::size_t subset = static_cast<std::size_t>(
      std::ceil(std::sqrt(static_cast<double>(schema_.kinds.size()))));
  std::mt19937_64 master(seed_);
  for (int t = 0; t < n_trees_; ++t) {
    std::mt19937_64 tree_rng(master());
    std::vector<std::size_t> boot(data.size());
    std::uniform_int_distribution<std::size_t> pick(0, data.size() - 1);
    for (auto& idx : boot) idx = pick(tree_rng);
    DecisionTree tree;
    tree.fit(data, boot, schema_.kinds, subset, tree_rng);
    trees_.push_back(std::move(tree));
  }
}

ScoredLabel RandomForest::predict(const FeatureVector& x) const {
  if (trees_.empty()) throw Error("random forest is not fitted");
  if (x.schema_id != schema_.schema_id)
    throw SchemaError("vector schema '" + x.schema_id + "' does not match forest schema");
  int positives = 0;
  for (const auto& t : trees_)
    if (t.predict(x).label) ++positives;
  const int n = static_cast<int>(trees_.size());
  return {2 * positives > n, static_cast<double>(positives) / n};
}

nlohmann::json RandomForest::to_json() const {
  nlohmann::json kinds = nlohmann::json::array();
  for (FeatureKind k : schema_.kinds) kinds.push_back(k == FeatureKind::numeric ? "num" : "cat");
  nlohmann::json trees = nlohmann::json::array();
  for (const auto& t : trees_) trees.push_back(t.to_json());
  return {{"type", "rf"},
          {"version", 1},
          {"schema", {{"id", schema_.schema_id}, {"kinds", kinds}}},
          {"n_trees", n_trees_},
          {"seed", seed_},
          {"trained_on", trained_on_},
          {"trees", trees}};
}

RandomForest RandomForest::from_json(const nlohmann::json& j) {
  if (j.at("type").get<std::string>() != "rf") throw Error("not a random forest state");
  if (j.at("version").get<int>() != 1) throw Error("unsupported forest state version");
  ClassifierSchema schema;
  schema.schema_id = j.at("schema").at("id").get<std::string>();
  for (const auto& k : j.at("schema").at("kinds"))
    schema.kinds.push_back(k.get<std::string>() == "num" ? FeatureKind::numeric
                                                         : FeatureKind::categorical);
  RandomForest rf(std::move(schema), j.at("n_trees").get<int>(), j.at("seed").get<std::uint64_t>());
  rf.trained_on_ = j.at("trained_on").get<std::int64_t>();
  for (const auto& tj : j.at("trees")) rf.trees_.push_back(DecisionTree::from_json(tj));
  return rf;
}

std::unique_ptr<BinaryClassifier> classifier_from_json(const nlohmann::json& j) {
  const std::string type = j.at("type").get<std::string>();
  if (type == "ht") return std::make_unique<HoeffdingTree>(HoeffdingTree::from_json(j));
  if (type == "aht")
    return std::make_unique<AdaptiveHoeffdingTree>(AdaptiveHoeffdingTree::from_json(j));
  if (type == "rf") return std::make_unique<RandomForest>(RandomForest::from_json(j));
  throw Error("unknown classifier type '" + type + "'");
}

}  // namespace premon
