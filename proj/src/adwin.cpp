#include "premon/adwin.hpp"

#include <cmath>

#include <nlohmann/json.hpp>

#include "premon/errors.hpp"

namespace premon {

AdwinMonitor::AdwinMonitor(double delta) : delta_(delta) {
  if (delta <= 0 || delta >= 1) throw Error("ADWIN delta must be in (0, 1)");
}

double AdwinMonitor::mean() const {
  const std::size_t n = window_size();
  return n == 0 ? 0.0 : sum_ / static_cast<double>(n);
}

void AdwinMonitor::clear() {
  buf_.clear();
  head_ = 0;
  sum_ = 0;
}

void AdwinMonitor::drop_front(std::size_t k) {
  for (std::size_t i = 0; i < k; ++i) sum_ -= buf_[head_ + i];
  head_ += k;
  // Compact once the dead prefix dominates.
  if (head_ > 4096 && head_ * 2 > buf_.size()) {
    buf_.erase(buf_.begin(), buf_.begin() + static_cast<std::ptrdiff_t>(head_));
    head_ = 0;
  }
}

bool AdwinMonitor::update(int outcome) {
  buf_.push_back(static_cast<std::uint8_t>(outcome != 0));
  sum_ += (outcome != 0) ? 1.0 : 0.0;
  ++total_seen_;

  bool changed = false;
  for (;;) {
    const std::size_t n = window_size();
    if (n < 2) break;
    const double total = sum_;
    const double splits = static_cast<double>(n - 1);
    const double log_term = std::log(4.0 * splits / delta_);

    // eps_cut = sqrt(ln(4W/delta) / (2m)) with m = 1/(1/n0 + 1/n1); the test
    // |s0/n0 - s1/n1| > eps_cut is evaluated in the cross-multiplied form
    // 2*(s0*n1 - s1*n0)^2 > log_term*(n0+n1)*n0*n1 to avoid divisions and
    // square roots in the scan.
    double s0 = 0;
    std::size_t cut = 0;
    for (std::size_t k = 1; k < n; ++k) {
      s0 += buf_[head_ + k - 1];
      const double n0 = static_cast<double>(k);
      const double n1 = static_cast<double>(n - k);
      const double diff = s0 * n1 - (total - s0) * n0;
      if (2.0 * diff * diff > log_term * (n0 + n1) * n0 * n1) {
        cut = k;
        break;
      }
    }
    if (cut == 0) break;
    drop_front(cut);
    changed = true;
  }
  if (changed) ++drift_count_;
  return changed;
}

nlohmann::json AdwinMonitor::to_json() const {
  nlohmann::json window = nlohmann::json::array();
  for (std::size_t i = head_; i < buf_.size(); ++i) window.push_back(static_cast<int>(buf_[i]));
  return {{"version", 1},
          {"delta", delta_},
          {"window", window},
          {"total_seen", total_seen_},
          {"drift_count", drift_count_}};
}

AdwinMonitor AdwinMonitor::from_json(const nlohmann::json& j) {
  if (j.at("version").get<int>() != 1) throw Error("unsupported ADWIN state version");
  AdwinMonitor m(j.at("delta").get<double>());
  for (const auto& b : j.at("window")) {
    m.buf_.push_back(static_cast<std::uint8_t>(b.get<int>() != 0));
    m.sum_ += m.buf_.back();
  }
  m.total_seen_ = j.at("total_seen").get<std::int64_t>();
  m.drift_count_ = j.at("drift_count").get<std::int64_t>();
  return m;
}

}  // namespace premon
