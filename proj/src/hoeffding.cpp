#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <map>
#include <variant>

#include <nlohmann/json.hpp>

#include "premon/classifiers.hpp"

namespace premon {
namespace detail {

namespace {

constexpr int kBins = 10;
constexpr const char* kAbsentLevel = "__absent__";

double entropy_bits(double a, double b) {
  const double n = a + b;
  if (n <= 0 || a <= 0 || b <= 0) return 0;
  const double pa = a / n, pb = b / n;
  return -(pa * std::log2(pa) + pb * std::log2(pb));
}

struct NumericStats {
  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();
  std::array<std::array<double, kBins>, 2> bins{};  // [class][bin]
  std::array<double, 2> known{};

  // The histogram is equal-width over the range seen so far; earlier values
  // keep the bin they were assigned under the narrower range.
  void add(double v, int y) {
    lo = std::min(lo, v);
    hi = std::max(hi, v);
    int bin = 0;
    if (hi > lo) {
      bin = static_cast<int>((v - lo) / (hi - lo) * kBins);
      bin = std::clamp(bin, 0, kBins - 1);
    }
    bins[y][bin] += 1;
    known[y] += 1;
  }

  double boundary(int t) const { return lo + (hi - lo) * t / kBins; }
};

struct CategoricalStats {
  std::map<std::string, std::array<double, 2>> counts;  // level -> per-class

  void add(const FeatureValue& v, int y) {
    const std::string& level = v.is_absent() ? kAbsentLevel : v.cat();
    counts[level][y] += 1;
  }
};

using FeatureStats = std::variant<NumericStats, CategoricalStats>;

struct CandidateSplit {
  double gain = -1;
  int feature = -1;
  bool numeric = false;
  double threshold = 0;
  int threshold_bin = 0;
};

}  // namespace

struct HtNode {
  // Leaf state. Counts cover instances seen at this node since its creation;
  // `prior` carries the parent's per-branch class estimate from split time and
  // is used for prediction only, never for split statistics.
  std::array<double, 2> class_counts{};
  std::array<double, 2> prior{};
  std::vector<FeatureStats> stats;
  double n_at_last_attempt = 0;

  // Split state.
  bool is_leaf = true;
  int split_feature = -1;
  bool numeric_split = false;
  double threshold = 0;
  std::map<std::string, int> child_of_level;
  int default_child = 0;
  std::vector<std::unique_ptr<HtNode>> children;

  // Drift state (adaptive trees, internal nodes only).
  std::unique_ptr<AdwinMonitor> monitor;
  std::unique_ptr<HtNode> alternate;
  std::unique_ptr<AdwinMonitor> alt_monitor;

  double n() const { return class_counts[0] + class_counts[1]; }

  int route(const FeatureValue& v) const {
    if (numeric_split) {
      // Absent numeric values take the low branch.
      if (v.is_absent()) return 0;
      return v.num() <= threshold ? 0 : 1;
    }
    const std::string& level = v.is_absent() ? kAbsentLevel : v.cat();
    auto it = child_of_level.find(level);
    return it == child_of_level.end() ? default_child : it->second;
  }
};

class TreeCore {
 public:
  TreeCore(ClassifierSchema schema, HoeffdingParams params, bool adaptive)
      : schema_(std::move(schema)), p_(params), adaptive_(adaptive) {
    root_ = make_leaf();
  }

  void learn_one(const FeatureVector& x, bool y) {
    check(x);
    ++seen_;
    if (!adaptive_ || !monitors_enabled_) {
      HtNode* leaf = route_to_leaf(root_.get(), x);
      update_leaf(leaf, x, y);
      return;
    }

    std::vector<HtNode*> path;
    HtNode* node = root_.get();
    while (!node->is_leaf) {
      path.push_back(node);
      node = node->children[static_cast<std::size_t>(node->route(x.values[node->split_feature]))].get();
    }
    const bool main_correct = leaf_label(node) == y;
    update_leaf(node, x, y);

    for (HtNode* v : path) {
      const double mean_before = v->monitor->mean();
      bool fired = v->monitor->update(main_correct ? 1 : 0);
      if (fired) {
        ++drifts_;
        // A change with a lower surviving mean is a degradation; improvement
        // detections (accuracy rising while the tree learns) spawn nothing.
        if (!v->alternate && v->monitor->mean() < mean_before) {
          v->alternate = make_leaf();
          v->alt_monitor = std::make_unique<AdwinMonitor>(p_.adwin_delta);
          fired = false;
        }
      }
      if (!v->alternate) continue;

      HtNode* alt_leaf = route_to_leaf_no_update(v->alternate.get(), x);
      const bool alt_correct = leaf_label(alt_leaf) == y;
      v->alt_monitor->update(alt_correct ? 1 : 0);
      update_leaf(route_to_leaf(v->alternate.get(), x), x, y);

      if (v->alt_monitor->window_size() < static_cast<std::size_t>(p_.alternate_min_window) ||
          v->monitor->window_size() < 2)
        continue;
      const double err_main = 1.0 - v->monitor->mean();
      const double err_alt = 1.0 - v->alt_monitor->mean();
      // A repeat detection at a branch with a live, better alternate swaps
      // immediately; otherwise swap or prune on a significant error gap
      // between the two monitored windows.
      bool swap = fired && err_alt < err_main;
      if (!swap) {
        const double inv_n = 1.0 / static_cast<double>(v->monitor->window_size()) +
                             1.0 / static_cast<double>(v->alt_monitor->window_size());
        const double bound =
            std::sqrt(2.0 * err_main * (1.0 - err_main) * std::log(2.0 / 0.02) * inv_n);
        if (err_main - err_alt > bound) {
          swap = true;
        } else if (err_alt - err_main > bound) {
          v->alternate.reset();
          v->alt_monitor.reset();
          continue;
        }
      }
      if (swap) {
        promote(v);
        ++replacements_;
        break;  // everything below v is gone
      }
    }
  }

  ScoredLabel predict(const FeatureVector& x) const {
    check(x);
    const HtNode* node = root_.get();
    while (!node->is_leaf)
      node = node->children[static_cast<std::size_t>(node->route(x.values[node->split_feature]))].get();
    return leaf_scored(node);
  }

  std::int64_t instances_seen() const { return seen_; }
  const ClassifierSchema& schema() const { return schema_; }
  bool adaptive() const { return adaptive_; }
  bool monitors_enabled() const { return monitors_enabled_; }
  void set_monitors_enabled(bool e) { monitors_enabled_ = e; }
  std::int64_t drifts() const { return drifts_; }
  std::int64_t replacements() const { return replacements_; }

  int node_count() const { return count_nodes(root_.get()); }
  int depth() const { return node_depth(root_.get()); }
  std::optional<int> root_split_feature() const {
    if (root_->is_leaf) return std::nullopt;
    return root_->split_feature;
  }

  nlohmann::json to_json() const;
  static std::unique_ptr<TreeCore> from_json(const nlohmann::json& j);

 private:
  void check(const FeatureVector& x) const {
    if (x.schema_id != schema_.schema_id)
      throw SchemaError("vector schema '" + x.schema_id + "' does not match tree schema '" +
                        schema_.schema_id + "'");
    if (x.values.size() != schema_.kinds.size())
      throw SchemaError("vector length does not match tree schema");
  }

  std::unique_ptr<HtNode> make_leaf() const {
    auto leaf = std::make_unique<HtNode>();
    leaf->stats.reserve(schema_.kinds.size());
    for (FeatureKind k : schema_.kinds) {
      if (k == FeatureKind::numeric) leaf->stats.emplace_back(NumericStats{});
      else leaf->stats.emplace_back(CategoricalStats{});
    }
    return leaf;
  }

  HtNode* route_to_leaf_no_update(HtNode* node, const FeatureVector& x) const {
    while (!node->is_leaf)
      node = node->children[static_cast<std::size_t>(node->route(x.values[node->split_feature]))].get();
    return node;
  }

  HtNode* route_to_leaf(HtNode* node, const FeatureVector& x) {
    return route_to_leaf_no_update(node, x);
  }

  bool leaf_label(const HtNode* leaf) const {
    const double neg = leaf->class_counts[0] + leaf->prior[0];
    const double pos = leaf->class_counts[1] + leaf->prior[1];
    if (pos > neg) return true;
    if (neg > pos) return false;
    return p_.default_label;
  }

  ScoredLabel leaf_scored(const HtNode* leaf) const {
    const double neg = leaf->class_counts[0] + leaf->prior[0];
    const double pos = leaf->class_counts[1] + leaf->prior[1];
    return {leaf_label(leaf), (pos + 1) / (pos + neg + 2)};  // Laplace smoothing
  }

  void update_leaf(HtNode* leaf, const FeatureVector& x, bool y) {
    const int cls = y ? 1 : 0;
    leaf->class_counts[cls] += 1;
    for (std::size_t i = 0; i < schema_.kinds.size(); ++i) {
      if (schema_.kinds[i] == FeatureKind::numeric) {
        if (!x.values[i].is_absent())
          std::get<NumericStats>(leaf->stats[i]).add(x.values[i].num(), cls);
      } else {
        std::get<CategoricalStats>(leaf->stats[i]).add(x.values[i], cls);
      }
    }
    if (leaf->n() - leaf->n_at_last_attempt >= p_.grace_period) attempt_split(leaf);
  }

  // Information gain (entropy in bits, range [0,1] for binary labels) of the
  // best split on each feature; numeric gains are scaled by the fraction of
  // instances with the value present.
  CandidateSplit best_split_for(const HtNode* leaf, std::size_t feature) const {
    CandidateSplit out;
    out.feature = static_cast<int>(feature);
    const double node_n = leaf->n();

    if (schema_.kinds[feature] == FeatureKind::numeric) {
      const auto& st = std::get<NumericStats>(leaf->stats[feature]);
      const double kn = st.known[0] + st.known[1];
      if (kn < 2 || !(st.hi > st.lo)) return out;
      const double parent = entropy_bits(st.known[0], st.known[1]);
      out.numeric = true;
      for (int t = 1; t < kBins; ++t) {
        double l0 = 0, l1 = 0;
        for (int b = 0; b < t; ++b) {
          l0 += st.bins[0][b];
          l1 += st.bins[1][b];
        }
        const double r0 = st.known[0] - l0, r1 = st.known[1] - l1;
        const double nl = l0 + l1, nr = r0 + r1;
        if (nl <= 0 || nr <= 0) continue;
        double gain = parent - (nl / kn) * entropy_bits(l0, l1) - (nr / kn) * entropy_bits(r0, r1);
        gain *= kn / node_n;
        if (gain > out.gain) {
          out.gain = gain;
          out.threshold = st.boundary(t);
          out.threshold_bin = t;
        }
      }
      return out;
    }

    const auto& st = std::get<CategoricalStats>(leaf->stats[feature]);
    if (st.counts.size() < 2) return out;
    const double parent = entropy_bits(leaf->class_counts[0], leaf->class_counts[1]);
    double weighted = 0;
    for (const auto& [level, c] : st.counts) {
      (void)level;
      weighted += ((c[0] + c[1]) / node_n) * entropy_bits(c[0], c[1]);
    }
    out.gain = parent - weighted;
    return out;
  }

  void attempt_split(HtNode* leaf) {
    leaf->n_at_last_attempt = leaf->n();
    if (leaf->class_counts[0] <= 0 || leaf->class_counts[1] <= 0) return;  // pure

    CandidateSplit best, second;
    for (std::size_t f = 0; f < schema_.kinds.size(); ++f) {
      CandidateSplit c = best_split_for(leaf, f);
      if (c.gain > best.gain) {
        second = best;
        best = c;
      } else if (c.gain > second.gain) {
        second = c;
      }
    }
    if (best.feature < 0 || best.gain <= 0) return;

    const double second_gain = std::max(second.gain, 0.0);
    const double eps = std::sqrt(std::log(1.0 / p_.split_confidence) / (2.0 * leaf->n()));
    if (best.gain - second_gain > eps || eps < p_.tie_threshold) do_split(leaf, best);
  }

  void do_split(HtNode* node, const CandidateSplit& c) {
    node->split_feature = c.feature;
    node->numeric_split = c.numeric;
    node->threshold = c.threshold;

    if (c.numeric) {
      const auto& st = std::get<NumericStats>(node->stats[static_cast<std::size_t>(c.feature)]);
      auto left = make_leaf();
      auto right = make_leaf();
      for (int cls = 0; cls < 2; ++cls) {
        double low = 0;
        for (int b = 0; b < c.threshold_bin; ++b) low += st.bins[(std::size_t)cls][(std::size_t)b];
        left->prior[(std::size_t)cls] = low;
        right->prior[(std::size_t)cls] = st.known[(std::size_t)cls] - low;
      }
      node->children.push_back(std::move(left));
      node->children.push_back(std::move(right));
    } else {
      const auto& st = std::get<CategoricalStats>(node->stats[static_cast<std::size_t>(c.feature)]);
      double best_count = -1;
      for (const auto& [level, counts] : st.counts) {
        const int idx = static_cast<int>(node->children.size());
        node->child_of_level[level] = idx;
        auto child = make_leaf();
        child->prior = counts;
        node->children.push_back(std::move(child));
        const double total = counts[0] + counts[1];
        if (total > best_count) {
          best_count = total;
          node->default_child = idx;  // unseen levels follow the heaviest one
        }
      }
    }

    node->is_leaf = false;
    node->stats.clear();
    node->stats.shrink_to_fit();
    if (adaptive_ && !node->monitor) node->monitor = std::make_unique<AdwinMonitor>(p_.adwin_delta);
  }

  // The alternate takes the node's place in the main tree; its internal nodes
  // (grown without monitors) get fresh ones.
  void promote(HtNode* v) {
    std::unique_ptr<HtNode> alt = std::move(v->alternate);
    v->alt_monitor.reset();
    *v = std::move(*alt);
    attach_monitors(v);
  }

  void attach_monitors(HtNode* node) {
    if (node->is_leaf) return;
    node->monitor = std::make_unique<AdwinMonitor>(p_.adwin_delta);
    for (auto& ch : node->children) attach_monitors(ch.get());
  }

  static int count_nodes(const HtNode* node) {
    int n = 1;
    for (const auto& ch : node->children) n += count_nodes(ch.get());
    return n;
  }

  static int node_depth(const HtNode* node) {
    int d = 0;
    for (const auto& ch : node->children) d = std::max(d, 1 + node_depth(ch.get()));
    return d;
  }

  static nlohmann::json node_to_json(const HtNode* node);
  static std::unique_ptr<HtNode> node_from_json(const nlohmann::json& j,
                                                const ClassifierSchema& schema);

  ClassifierSchema schema_;
  HoeffdingParams p_;
  bool adaptive_;
  bool monitors_enabled_ = true;
  std::unique_ptr<HtNode> root_;
  std::int64_t seen_ = 0;
  std::int64_t drifts_ = 0;
  std::int64_t replacements_ = 0;
};

// --- serialization ----------------------------------------------------------

nlohmann::json TreeCore::node_to_json(const HtNode* node) {
  nlohmann::json j;
  j["counts"] = {node->class_counts[0], node->class_counts[1]};
  j["prior"] = {node->prior[0], node->prior[1]};
  if (node->is_leaf) {
    j["leaf"] = true;
    j["n_at_last_attempt"] = node->n_at_last_attempt;
    nlohmann::json stats = nlohmann::json::array();
    for (const auto& fs : node->stats) {
      if (std::holds_alternative<NumericStats>(fs)) {
        const auto& st = std::get<NumericStats>(fs);
        stats.push_back({{"kind", "num"},
                         {"lo", st.lo},
                         {"hi", st.hi},
                         {"bins", {st.bins[0], st.bins[1]}},
                         {"known", {st.known[0], st.known[1]}}});
      } else {
        const auto& st = std::get<CategoricalStats>(fs);
        nlohmann::json counts = nlohmann::json::object();
        for (const auto& [level, c] : st.counts) counts[level] = {c[0], c[1]};
        stats.push_back({{"kind", "cat"}, {"counts", counts}});
      }
    }
    j["stats"] = stats;
    return j;
  }

  j["leaf"] = false;
  j["feature"] = node->split_feature;
  j["numeric"] = node->numeric_split;
  j["threshold"] = node->threshold;
  j["levels"] = node->child_of_level;
  j["default_child"] = node->default_child;
  nlohmann::json children = nlohmann::json::array();
  for (const auto& ch : node->children) children.push_back(node_to_json(ch.get()));
  j["children"] = children;
  if (node->monitor) j["monitor"] = node->monitor->to_json();
  if (node->alternate) {
    j["alternate"] = node_to_json(node->alternate.get());
    j["alt_monitor"] = node->alt_monitor->to_json();
  }
  return j;
}

std::unique_ptr<HtNode> TreeCore::node_from_json(const nlohmann::json& j,
                                                 const ClassifierSchema& schema) {
  auto node = std::make_unique<HtNode>();
  node->class_counts[0] = j.at("counts")[0].get<double>();
  node->class_counts[1] = j.at("counts")[1].get<double>();
  node->prior[0] = j.at("prior")[0].get<double>();
  node->prior[1] = j.at("prior")[1].get<double>();
  if (j.at("leaf").get<bool>()) {
    node->n_at_last_attempt = j.at("n_at_last_attempt").get<double>();
    const auto& stats = j.at("stats");
    for (const auto& sj : stats) {
      if (sj.at("kind").get<std::string>() == "num") {
        NumericStats st;
        st.lo = sj.at("lo").get<double>();
        st.hi = sj.at("hi").get<double>();
        for (int c = 0; c < 2; ++c)
          for (int b = 0; b < kBins; ++b) st.bins[c][b] = sj.at("bins")[c][b].get<double>();
        st.known[0] = sj.at("known")[0].get<double>();
        st.known[1] = sj.at("known")[1].get<double>();
        node->stats.emplace_back(st);
      } else {
        CategoricalStats st;
        for (const auto& [level, c] : sj.at("counts").items())
          st.counts[level] = {c[0].get<double>(), c[1].get<double>()};
        node->stats.emplace_back(std::move(st));
      }
    }
    return node;
  }

  node->is_leaf = false;
  node->split_feature = j.at("feature").get<int>();
  node->numeric_split = j.at("numeric").get<bool>();
  node->threshold = j.at("threshold").get<double>();
  node->child_of_level = j.at("levels").get<std::map<std::string, int>>();
  node->default_child = j.at("default_child").get<int>();
  for (const auto& cj : j.at("children")) node->children.push_back(node_from_json(cj, schema));
  if (j.contains("monitor"))
    node->monitor = std::make_unique<AdwinMonitor>(AdwinMonitor::from_json(j.at("monitor")));
  if (j.contains("alternate")) {
    node->alternate = node_from_json(j.at("alternate"), schema);
    node->alt_monitor =
        std::make_unique<AdwinMonitor>(AdwinMonitor::from_json(j.at("alt_monitor")));
  }
  return node;
}

nlohmann::json TreeCore::to_json() const {
  nlohmann::json kinds = nlohmann::json::array();
  for (FeatureKind k : schema_.kinds) kinds.push_back(k == FeatureKind::numeric ? "num" : "cat");
  return {{"type", adaptive_ ? "aht" : "ht"},
          {"version", 1},
          {"schema", {{"id", schema_.schema_id}, {"kinds", kinds}}},
          {"params",
           {{"split_confidence", p_.split_confidence},
            {"tie_threshold", p_.tie_threshold},
            {"grace_period", p_.grace_period},
            {"default_label", p_.default_label},
            {"adwin_delta", p_.adwin_delta},
            {"alternate_min_window", p_.alternate_min_window}}},
          {"monitors_enabled", monitors_enabled_},
          {"seen", seen_},
          {"drifts", drifts_},
          {"replacements", replacements_},
          {"root", node_to_json(root_.get())}};
}

std::unique_ptr<TreeCore> TreeCore::from_json(const nlohmann::json& j) {
  if (j.at("version").get<int>() != 1) throw Error("unsupported tree state version");
  ClassifierSchema schema;
  schema.schema_id = j.at("schema").at("id").get<std::string>();
  for (const auto& k : j.at("schema").at("kinds"))
    schema.kinds.push_back(k.get<std::string>() == "num" ? FeatureKind::numeric
                                                         : FeatureKind::categorical);
  HoeffdingParams p;
  const auto& pj = j.at("params");
  p.split_confidence = pj.at("split_confidence").get<double>();
  p.tie_threshold = pj.at("tie_threshold").get<double>();
  p.grace_period = pj.at("grace_period").get<int>();
  p.default_label = pj.at("default_label").get<bool>();
  p.adwin_delta = pj.at("adwin_delta").get<double>();
  p.alternate_min_window = pj.at("alternate_min_window").get<int>();

  auto core = std::make_unique<TreeCore>(schema, p, j.at("type").get<std::string>() == "aht");
  core->monitors_enabled_ = j.at("monitors_enabled").get<bool>();
  core->seen_ = j.at("seen").get<std::int64_t>();
  core->drifts_ = j.at("drifts").get<std::int64_t>();
  core->replacements_ = j.at("replacements").get<std::int64_t>();
  core->root_ = node_from_json(j.at("root"), core->schema_);
  return core;
}

}  // namespace detail

// --- HoeffdingTree -----------------------------------------------------------

HoeffdingTree::HoeffdingTree(ClassifierSchema schema, HoeffdingParams params)
    : core_(std::make_unique<detail::TreeCore>(std::move(schema), params, false)) {}
HoeffdingTree::HoeffdingTree(std::unique_ptr<detail::TreeCore> core) : core_(std::move(core)) {}
HoeffdingTree::HoeffdingTree(HoeffdingTree&&) noexcept = default;
HoeffdingTree& HoeffdingTree::operator=(HoeffdingTree&&) noexcept = default;
HoeffdingTree::~HoeffdingTree() = default;

void HoeffdingTree::learn_one(const FeatureVector& x, bool y) { core_->learn_one(x, y); }
ScoredLabel HoeffdingTree::predict(const FeatureVector& x) const { return core_->predict(x); }
void HoeffdingTree::fit(const std::vector<std::pair<FeatureVector, bool>>& data) {
  for (const auto& [x, y] : data) core_->learn_one(x, y);
}
std::int64_t HoeffdingTree::instances_seen() const { return core_->instances_seen(); }
const ClassifierSchema& HoeffdingTree::schema() const { return core_->schema(); }
nlohmann::json HoeffdingTree::to_json() const { return core_->to_json(); }
int HoeffdingTree::node_count() const { return core_->node_count(); }
int HoeffdingTree::depth() const { return core_->depth(); }
std::optional<int> HoeffdingTree::root_split_feature() const { return core_->root_split_feature(); }

HoeffdingTree HoeffdingTree::from_json(const nlohmann::json& j) {
  if (j.at("type").get<std::string>() != "ht") throw Error("not a Hoeffding tree state");
  return HoeffdingTree(detail::TreeCore::from_json(j));
}

// --- AdaptiveHoeffdingTree ----------------------------------------------------

AdaptiveHoeffdingTree::AdaptiveHoeffdingTree(ClassifierSchema schema, HoeffdingParams params)
    : core_(std::make_unique<detail::TreeCore>(std::move(schema), params, true)) {}
AdaptiveHoeffdingTree::AdaptiveHoeffdingTree(std::unique_ptr<detail::TreeCore> core)
    : core_(std::move(core)) {}
AdaptiveHoeffdingTree::AdaptiveHoeffdingTree(AdaptiveHoeffdingTree&&) noexcept = default;
AdaptiveHoeffdingTree& AdaptiveHoeffdingTree::operator=(AdaptiveHoeffdingTree&&) noexcept = default;
AdaptiveHoeffdingTree::~AdaptiveHoeffdingTree() = default;

void AdaptiveHoeffdingTree::learn_one(const FeatureVector& x, bool y) { core_->learn_one(x, y); }
ScoredLabel AdaptiveHoeffdingTree::predict(const FeatureVector& x) const {
  return core_->predict(x);
}
void AdaptiveHoeffdingTree::fit(const std::vector<std::pair<FeatureVector, bool>>& data) {
  for (const auto& [x, y] : data) core_->learn_one(x, y);
}
std::int64_t AdaptiveHoeffdingTree::instances_seen() const { return core_->instances_seen(); }
const ClassifierSchema& AdaptiveHoeffdingTree::schema() const { return core_->schema(); }
nlohmann::json AdaptiveHoeffdingTree::to_json() const { return core_->to_json(); }
void AdaptiveHoeffdingTree::set_monitors_enabled(bool enabled) {
  core_->set_monitors_enabled(enabled);
}
bool AdaptiveHoeffdingTree::monitors_enabled() const { return core_->monitors_enabled(); }
std::int64_t AdaptiveHoeffdingTree::drifts_detected() const { return core_->drifts(); }
std::int64_t AdaptiveHoeffdingTree::branch_replacements() const { return core_->replacements(); }
int AdaptiveHoeffdingTree::node_count() const { return core_->node_count(); }
int AdaptiveHoeffdingTree::depth() const { return core_->depth(); }

AdaptiveHoeffdingTree AdaptiveHoeffdingTree::from_json(const nlohmann::json& j) {
  if (j.at("type").get<std::string>() != "aht") throw Error("not an adaptive Hoeffding tree state");
  return AdaptiveHoeffdingTree(detail::TreeCore::from_json(j));
}

}  // namespace premon
