#include "premon/drift_gen.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "premon/errors.hpp"

namespace premon {

namespace {

enum class Variant { baseline, drift1, drift2 };

constexpr std::int64_t kEpochStartMs = 1704067200000;  // 2024-01-01T00:00:00Z
constexpr std::int64_t kCaseSpacingMs = 3600000;       // one case starts per hour

std::uint64_t mix(std::uint64_t seed, std::uint64_t idx) {
  std::uint64_t z = seed ^ (0x9e3779b97f4a7c15ULL * (idx + 1));
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

const char* const kStatusNames[4] = {"VIP", "Gold", "Silver", "Regular"};

struct TimedEvent {
  std::string activity;
  std::int64_t at;
};

double round1(double v) { return std::round(v * 10.0) / 10.0; }

Case generate_case(const ClaimProcessConfig& cfg, Variant variant, bool post_drift,
                   std::size_t position) {
  std::mt19937_64 rng(mix(cfg.seed, position));
  std::normal_distribution<double> std_normal(0.0, 1.0);
  std::uniform_real_distribution<double> unit(0.0, 1.0);

  // Population draws: same draw sequence in every variant so the pre-drift
  // segment reproduces bit-identically.
  const double age_mean =
      (post_drift && variant == Variant::drift2) ? cfg.drift2_age_mean : cfg.age_mean;
  const double claim_median = (post_drift && variant == Variant::drift2)
                                  ? cfg.drift2_claim_value_median
                                  : cfg.claim_value_median;
  const double age_raw = age_mean + cfg.age_stddev * std_normal(rng);
  const double age = std::clamp(std::round(age_raw), 18.0, 95.0);
  const double claim_value =
      std::round(claim_median * std::exp(cfg.claim_value_sigma * std_normal(rng)) * 100.0) / 100.0;
  const double status_draw = unit(rng);
  int status = 3;
  double acc = 0;
  for (int s = 0; s < 4; ++s) {
    acc += cfg.status_probs[(std::size_t)s];
    if (status_draw < acc) {
      status = s;
      break;
    }
  }
  std::poisson_distribution<int> prev_dist(cfg.previous_cases_mean);
  const int previous_cases = prev_dist(rng);

  // Routing and decision rules per process variant.
  const bool complex_check = (post_drift && variant == Variant::drift1)
                                 ? (age >= 50.0)
                                 : (claim_value >= cfg.claim_value_median);
  const bool contact_hospital = complex_check && !(post_drift && variant == Variant::drift2);
  const bool favored = (post_drift && variant == Variant::drift1)
                           ? (status == 0 || status == 1)
                           : (previous_cases == 0);
  const bool accepted =
      unit(rng) < (favored ? cfg.favored_accept_prob : cfg.unfavored_accept_prob);
  const bool notify_phone = unit(rng) < cfg.phone_prob;
  bool notify_post = unit(rng) < cfg.post_prob;
  if (!notify_phone && !notify_post) notify_post = true;
  const bool questionnaire_returned = unit(rng) < cfg.questionnaire_response_prob;

  const std::int64_t start =
      kEpochStartMs + static_cast<std::int64_t>(position) * kCaseSpacingMs;

  std::vector<TimedEvent> events;
  std::int64_t t = start;
  auto step = [&](const char* activity) {
    events.push_back({activity, t});
    const double gap_min = std::exp(std::log(30.0) + 0.5 * std_normal(rng));
    t += std::max<std::int64_t>(60000, static_cast<std::int64_t>(gap_min * 60000.0));
  };

  step("Register Claim");
  step("Collect Claim Data");
  if (complex_check) {
    step("Complex Check");
    if (contact_hospital) {
      step("Contact Hospital");
      step("Receive Hospital Report");
    }
  } else {
    step("Basic Check");
  }
  step("Evaluate Claim");
  step("Decide Claim");
  step(accepted ? "Accept Claim" : "Reject Claim");
  if (accepted) step("Calculate Payment");
  if (notify_phone) step(kNotifyPhone);
  if (notify_post) step(kNotifyPost);
  step("Archive Claim");

  // Parallel questionnaire branch, interleaved by sampled timestamps.
  const std::int64_t q_sent =
      start + static_cast<std::int64_t>((10.0 + 110.0 * unit(rng)) * 60000.0);
  events.push_back({"Send Questionnaire", q_sent});
  const std::int64_t q_done =
      q_sent + static_cast<std::int64_t>((1.0 + 13.0 * unit(rng)) * 86400000.0);
  events.push_back(
      {questionnaire_returned ? "Receive Questionnaire Response" : "Questionnaire Deadline Expired",
       q_done});

  std::stable_sort(events.begin(), events.end(),
                   [](const TimedEvent& a, const TimedEvent& b) { return a.at < b.at; });

  Case c;
  char id[32];
  std::snprintf(id, sizeof(id), "case_%06zu", position);
  c.case_id = id;
  c.static_attrs["age"] = AttrValue::of(age);
  c.static_attrs["claim_value"] = AttrValue::of(claim_value);
  c.static_attrs["status"] = AttrValue::of(kStatusNames[status]);
  c.static_attrs["previous_cases"] = AttrValue::of(static_cast<double>(previous_cases));

  std::uniform_int_distribution<int> clerk(1, 5);
  for (const auto& te : events) {
    Event e;
    e.activity = te.activity;
    e.timestamp = te.at;
    e.dynamic_attrs["resource"] = AttrValue::of("clerk_" + std::to_string(clerk(rng)));
    e.dynamic_attrs["duration_min"] =
        AttrValue::of(round1(std::exp(std::log(20.0) + 0.6 * std_normal(rng))));
    c.events.push_back(std::move(e));
  }
  return c;
}

GeneratedLog generate(const ClaimProcessConfig& cfg, Variant variant) {
  cfg.validate();
  const std::size_t n_total =
      static_cast<std::size_t>(cfg.n_cases_baseline) + static_cast<std::size_t>(cfg.n_cases_drift);

  std::vector<Case> cases;
  cases.reserve(n_total);
  for (std::size_t i = 0; i < n_total; ++i) {
    const bool post_drift = i >= static_cast<std::size_t>(cfg.n_cases_baseline);
    cases.push_back(generate_case(cfg, variant, post_drift, i));
  }

  AttrSchema schema;
  schema.static_attrs = {{"age", AttrKind::number},
                         {"claim_value", AttrKind::number},
                         {"status", AttrKind::string_},
                         {"previous_cases", AttrKind::number}};
  schema.dynamic_attrs = {{"resource", AttrKind::string_}, {"duration_min", AttrKind::number}};

  GeneratedLog out;
  out.log = finalize_log(std::move(cases), std::move(schema));
  out.drift_index = static_cast<std::size_t>(cfg.n_cases_baseline);
  return out;
}

}  // namespace

void ClaimProcessConfig::validate() const {
  if (n_cases_baseline < 1 || n_cases_drift < 1) throw Error("case counts must be positive");
  if (age_stddev <= 0 || claim_value_sigma <= 0) throw Error("spread parameters must be positive");
  if (claim_value_median <= 0 || drift2_claim_value_median <= 0)
    throw Error("claim value medians must be positive");
  double sum = 0;
  for (double p : status_probs) {
    if (p < 0) throw Error("status probabilities must be non-negative");
    sum += p;
  }
  if (std::abs(sum - 1.0) > 1e-9) throw Error("status probabilities must sum to 1");
  for (double p : {favored_accept_prob, unfavored_accept_prob, phone_prob, post_prob,
                   questionnaire_response_prob}) {
    if (p < 0 || p > 1) throw Error("probabilities must lie in [0, 1]");
  }
}

const std::vector<std::string>& claim_activity_vocabulary() {
  static const std::vector<std::string> vocab = {"Register Claim",
                                                 "Collect Claim Data",
                                                 "Basic Check",
                                                 "Complex Check",
                                                 "Contact Hospital",
                                                 "Receive Hospital Report",
                                                 "Evaluate Claim",
                                                 "Decide Claim",
                                                 "Accept Claim",
                                                 "Reject Claim",
                                                 "Calculate Payment",
                                                 "Send Notification by Phone",
                                                 "Send Notification by Post",
                                                 "Archive Claim",
                                                 "Send Questionnaire",
                                                 "Receive Questionnaire Response",
                                                 "Questionnaire Deadline Expired"};
  return vocab;
}

GeneratedLog generate_baseline(const ClaimProcessConfig& cfg) {
  return generate(cfg, Variant::baseline);
}

GeneratedLog generate_drift1(const ClaimProcessConfig& cfg) {
  return generate(cfg, Variant::drift1);
}

GeneratedLog generate_drift2(const ClaimProcessConfig& cfg) {
  return generate(cfg, Variant::drift2);
}

}  // namespace premon
