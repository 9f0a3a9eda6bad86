#include "premon/canopy.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include <nlohmann/json.hpp>

#include "premon/errors.hpp"

namespace premon {

double feature_distance(const FeatureVector& a, const FeatureVector& b, DistanceMetric metric) {
  if (a.values.size() != b.values.size())
    throw SchemaError("distance between vectors of different lengths");
  double acc = 0;
  for (std::size_t i = 0; i < a.values.size(); ++i) {
    if (!a.values[i].is_number() || !b.values[i].is_number())
      throw SchemaError("distance requires all-numeric vectors");
    double d = a.values[i].num() - b.values[i].num();
    acc += metric == DistanceMetric::l1 ? std::abs(d) : d * d;
  }
  return metric == DistanceMetric::l1 ? acc : std::sqrt(acc);
}

CanopyModel CanopyModel::build(const std::vector<FeatureVector>& items, double t1, double t2,
                               std::vector<std::vector<int>>* memberships,
                               std::optional<std::uint64_t> shuffle_seed) {
  if (items.empty()) throw Error("canopy build on an empty item list");
  if (!(t2 < t1)) throw Error("canopy thresholds need T2 < T1");
  if (t2 < 0) throw Error("canopy thresholds must be non-negative");

  CanopyModel model;
  model.t1_ = t1;
  model.t2_ = t2;
  model.schema_id_ = items.front().schema_id;
  for (const auto& it : items) model.check_schema(it);

  std::vector<int> pool(items.size());
  std::iota(pool.begin(), pool.end(), 0);
  if (shuffle_seed) {
    std::mt19937_64 rng(*shuffle_seed);
    std::shuffle(pool.begin(), pool.end(), rng);
  }

  std::vector<std::vector<int>> member_of(items.size());

  while (!pool.empty()) {
    const int center_idx = pool.front();
    const int canopy_idx = static_cast<int>(model.canopies_.size());
    Canopy canopy;
    canopy.center = items[center_idx];

    std::vector<int> keep;
    keep.reserve(pool.size());
    for (int idx : pool) {
      double d = feature_distance(items[idx], canopy.center, model.cheap_);
      if (d <= t1) {
        canopy.member_count++;
        member_of[idx].push_back(canopy_idx);
      }
      if (d > t2) keep.push_back(idx);
    }
    pool = std::move(keep);
    model.canopies_.push_back(std::move(canopy));
  }

  // Phase two: recheck membership against centers with the precise metric.
  // An item always keeps its last (coverage) canopy.
  for (std::size_t i = 0; i < items.size(); ++i) {
    auto& canopies = member_of[i];
    std::vector<int> refined;
    for (int ci : canopies) {
      if (feature_distance(items[i], model.canopies_[ci].center, model.precise_) <= t1) {
        refined.push_back(ci);
      } else {
        model.canopies_[ci].member_count--;
      }
    }
    if (refined.empty()) {
      // Re-admit into the cheapest canopy so coverage holds.
      int back = canopies.back();
      model.canopies_[back].member_count++;
      refined.push_back(back);
    }
    canopies = std::move(refined);
  }

  if (memberships) *memberships = std::move(member_of);
  return model;
}

std::vector<int> CanopyModel::insert(const FeatureVector& item) {
  if (canopies_.empty()) {
    schema_id_ = item.schema_id;
  } else {
    check_schema(item);
  }

  std::vector<int> touched;
  for (std::size_t i = 0; i < canopies_.size(); ++i) {
    if (feature_distance(item, canopies_[i].center, cheap_) <= t1_) {
      canopies_[i].member_count++;
      touched.push_back(static_cast<int>(i));
    }
  }
  if (touched.empty()) {
    Canopy fresh;
    fresh.center = item;
    fresh.member_count = 1;
    canopies_.push_back(std::move(fresh));
    touched.push_back(static_cast<int>(canopies_.size()) - 1);
  }
  return touched;
}

int CanopyModel::assign(const FeatureVector& item) const {
  if (canopies_.empty()) throw Error("assign on an empty canopy model");
  check_schema(item);
  int best = 0;
  double best_d = feature_distance(item, canopies_[0].center, precise_);
  for (std::size_t i = 1; i < canopies_.size(); ++i) {
    double d = feature_distance(item, canopies_[i].center, precise_);
    if (d < best_d) {
      best_d = d;
      best = static_cast<int>(i);
    }
  }
  return best;
}

void CanopyModel::check_schema(const FeatureVector& item) const {
  if (item.schema_id != schema_id_)
    throw SchemaError("feature vector schema '" + item.schema_id +
                      "' does not match canopy model schema '" + schema_id_ + "'");
}

nlohmann::json CanopyModel::to_json() const {
  nlohmann::json canopies = nlohmann::json::array();
  for (const auto& c : canopies_) {
    nlohmann::json center = nlohmann::json::array();
    for (const auto& v : c.center.values) center.push_back(v.num());
    canopies.push_back({{"center", center}, {"members", c.member_count}});
  }
  return {{"version", 1},
          {"t1", t1_},
          {"t2", t2_},
          {"cheap", cheap_ == DistanceMetric::l1 ? "l1" : "euclidean"},
          {"precise", precise_ == DistanceMetric::l1 ? "l1" : "euclidean"},
          {"schema_id", schema_id_},
          {"canopies", canopies}};
}

CanopyModel CanopyModel::from_json(const nlohmann::json& j) {
  if (j.at("version").get<int>() != 1) throw Error("unsupported canopy model version");
  CanopyModel m;
  m.t1_ = j.at("t1").get<double>();
  m.t2_ = j.at("t2").get<double>();
  m.cheap_ = j.at("cheap").get<std::string>() == "l1" ? DistanceMetric::l1 : DistanceMetric::euclidean;
  m.precise_ =
      j.at("precise").get<std::string>() == "l1" ? DistanceMetric::l1 : DistanceMetric::euclidean;
  m.schema_id_ = j.at("schema_id").get<std::string>();
  for (const auto& cj : j.at("canopies")) {
    Canopy c;
    c.center.schema_id = m.schema_id_;
    for (const auto& v : cj.at("center")) c.center.values.push_back(FeatureValue::number(v.get<double>()));
    c.member_count = cj.at("members").get<std::int64_t>();
    m.canopies_.push_back(std::move(c));
  }
  return m;
}

std::pair<double, double> suggest_canopy_thresholds(const std::vector<FeatureVector>& items,
                                                    std::size_t sample) {
  if (items.empty()) throw Error("cannot suggest thresholds for an empty item list");
  const std::size_t n = std::min(sample, items.size());
  std::vector<double> dists;
  dists.reserve(n * (n - 1) / 2);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      dists.push_back(feature_distance(items[i], items[j], DistanceMetric::l1));

  if (dists.empty()) return {1.0, 0.0};
  std::sort(dists.begin(), dists.end());
  auto percentile = [&](double q) {
    double idx = q * static_cast<double>(dists.size() - 1);
    std::size_t lo = static_cast<std::size_t>(idx);
    std::size_t hi = std::min(lo + 1, dists.size() - 1);
    double frac = idx - static_cast<double>(lo);
    return dists[lo] * (1 - frac) + dists[hi] * frac;
  };
  double t2 = percentile(0.25);
  double t1 = percentile(0.75);
  if (!(t2 < t1)) t1 = t2 + 1.0;
  return {t1, t2};
}

}  // namespace premon
