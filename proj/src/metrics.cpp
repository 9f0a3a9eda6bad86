#include "premon/metrics.hpp"

#include "premon/errors.hpp"

namespace premon {

double f_measure(const ConfusionCounts& c) {
  const double denom = 2.0 * c.tp + c.fp + c.fn;
  if (denom <= 0) return 0.0;
  return 2.0 * c.tp / denom;
}

double avg_f_measure(const ConfusionCounts& c) {
  return (f_measure(c) + f_measure(c.swapped())) / 2.0;
}

double accuracy(const ConfusionCounts& c) {
  const std::int64_t n = c.total();
  if (n == 0) throw Error("accuracy of empty confusion counts");
  return static_cast<double>(c.tp + c.tn) / static_cast<double>(n);
}

}  // namespace premon
