#pragma once

#include <cstdint>

namespace premon {

struct ConfusionCounts {
  std::int64_t tp = 0, fp = 0, tn = 0, fn = 0;

  std::int64_t total() const { return tp + fp + tn + fn; }
  void add(bool predicted, bool gold) {
    if (predicted && gold) ++tp;
    else if (predicted && !gold) ++fp;
    else if (!predicted && !gold) ++tn;
    else ++fn;
  }
  ConfusionCounts swapped() const { return {tn, fn, tp, fp}; }
  ConfusionCounts& operator+=(const ConfusionCounts& o) {
    tp += o.tp;
    fp += o.fp;
    tn += o.tn;
    fn += o.fn;
    return *this;
  }

  bool operator==(const ConfusionCounts&) const = default;
};

// 2TP / (2TP + FP + FN); 0 when the denominator vanishes.
double f_measure(const ConfusionCounts& c);

// Mean of the F-measure and the F-measure with the outcome classes swapped.
double avg_f_measure(const ConfusionCounts& c);

// (TP + TN) / total; throws Error on empty counts.
double accuracy(const ConfusionCounts& c);

}  // namespace premon
