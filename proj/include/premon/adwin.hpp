#pragma once

#include <cstdint>
#include <vector>

#include <nlohmann/json_fwd.hpp>

namespace premon {

// Adaptive windowing change detector over a 0/1 outcome stream. The window
// holds the most recent outcomes; whenever some split of the window into an
// older and a newer part shows a mean difference above
//   eps_cut = sqrt(ln(4*W/delta) / (2*m)),  m = 1/(1/n0 + 1/n1)
// (the harmonic-mean term of the two part sizes n0, n1; W the number of
// splits examined), the older part is dropped. Every split point is examined,
// oldest first, repeating until no split fires.
class AdwinMonitor {
 public:
  explicit AdwinMonitor(double delta = 0.002);

  // Appends an outcome; returns true when a change was detected (i.e. any
  // prefix of the window was dropped).
  bool update(int outcome);

  std::size_t window_size() const { return buf_.size() - head_; }
  double mean() const;
  std::int64_t total_seen() const { return total_seen_; }
  std::int64_t drift_count() const { return drift_count_; }
  double delta() const { return delta_; }
  void clear();

  nlohmann::json to_json() const;
  static AdwinMonitor from_json(const nlohmann::json& j);

 private:
  void drop_front(std::size_t k);

  std::vector<std::uint8_t> buf_;
  std::size_t head_ = 0;
  double sum_ = 0;
  double delta_;
  std::int64_t total_seen_ = 0;
  std::int64_t drift_count_ = 0;
};

}  // namespace premon
