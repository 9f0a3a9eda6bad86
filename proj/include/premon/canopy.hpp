#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "premon/encoding.hpp"

namespace premon {

enum class DistanceMetric { l1, euclidean };

double feature_distance(const FeatureVector& a, const FeatureVector& b, DistanceMetric metric);

struct Canopy {
  FeatureVector center;
  std::int64_t member_count = 0;
};

// Two-threshold canopy clustering over frequency vectors. Centers are frozen
// at creation; incremental insertion only updates membership counts or adds
// new canopies.
class CanopyModel {
 public:
  CanopyModel() = default;

  // Pool-based construction: repeatedly take the next remaining item as a
  // center, put every remaining item within cheap-distance T1 into its canopy
  // and drop items within T2 from the pool. Membership is then rechecked with
  // the precise metric (same T1), never removing an item from its last canopy.
  // Pick order is input order, or seeded-random when `shuffle_seed` is given.
  // `memberships`, when non-null, receives the canopy indices of each item.
  static CanopyModel build(const std::vector<FeatureVector>& items, double t1, double t2,
                           std::vector<std::vector<int>>* memberships = nullptr,
                           std::optional<std::uint64_t> shuffle_seed = std::nullopt);

  // Adds the item to every canopy whose center is within cheap-distance T1,
  // or creates a new canopy around it; returns the touched canopy indices.
  std::vector<int> insert(const FeatureVector& item);

  // Index of the canopy whose center is precise-metric nearest; ties break to
  // the lowest index.
  int assign(const FeatureVector& item) const;

  std::size_t size() const { return canopies_.size(); }
  const Canopy& canopy(std::size_t i) const { return canopies_.at(i); }
  double t1() const { return t1_; }
  double t2() const { return t2_; }
  const std::string& schema_id() const { return schema_id_; }

  nlohmann::json to_json() const;
  static CanopyModel from_json(const nlohmann::json& j);

 private:
  void check_schema(const FeatureVector& item) const;

  std::vector<Canopy> canopies_;
  double t1_ = 0, t2_ = 0;
  DistanceMetric cheap_ = DistanceMetric::l1;
  DistanceMetric precise_ = DistanceMetric::euclidean;
  std::string schema_id_;
};

// (p75, p25) of pairwise cheap distances over the first `sample` items,
// nudged apart when degenerate so that T2 < T1 always holds.
std::pair<double, double> suggest_canopy_thresholds(const std::vector<FeatureVector>& items,
                                                    std::size_t sample = 200);

}  // namespace premon
