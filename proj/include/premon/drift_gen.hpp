#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "premon/event_log.hpp"

namespace premon {

// Synthetic insurance-claim handling logs. The baseline process routes a claim
// to a basic or complex check by claim value (complex includes contacting the
// hospital), decides it favoring claimants without previous cases, notifies by
// phone and/or post, and runs a questionnaire exchange in parallel. Drift 1
// switches the check routing to claimant age (>= 50 means complex) and the
// acceptance policy to status (VIP/Gold favored). Drift 2 drops the hospital
// contact from the complex check and shifts the population toward older
// claimants and higher claim values.
//
// Branch probabilities and population parameters below are toolkit defaults,
// not values taken from any benchmark.
struct ClaimProcessConfig {
  int n_cases_baseline = 1000;
  int n_cases_drift = 1000;
  std::uint64_t seed = 1;

  // Claimant population.
  double age_mean = 42.0;
  double age_stddev = 12.0;
  double claim_value_median = 5000.0;  // also the complex-check threshold
  double claim_value_sigma = 0.8;      // lognormal shape
  std::array<double, 4> status_probs{0.15, 0.35, 0.30, 0.20};  // VIP, Gold, Silver, Regular
  double previous_cases_mean = 0.8;                            // Poisson

  // Decisions.
  double favored_accept_prob = 0.8;
  double unfavored_accept_prob = 0.4;
  double phone_prob = 0.5;
  double post_prob = 0.75;  // post is forced when neither notification fires
  double questionnaire_response_prob = 0.7;

  // Population shift after the second drift.
  double drift2_age_mean = 58.0;
  double drift2_claim_value_median = 9000.0;

  void validate() const;  // throws Error
};

struct GeneratedLog {
  EventLog log;
  std::size_t drift_index = 0;  // case position where the drift variant begins
};

// The 17 activities of the claim handling process.
const std::vector<std::string>& claim_activity_vocabulary();

inline constexpr const char* kAcceptClaim = "Accept Claim";
inline constexpr const char* kNotifyPhone = "Send Notification by Phone";
inline constexpr const char* kNotifyPost = "Send Notification by Post";
inline constexpr const char* kContactHospital = "Contact Hospital";

// All three generators emit n_cases_baseline + n_cases_drift cases with
// drift_index = n_cases_baseline; per-case seeds derive from (seed, position),
// so the pre-drift segment is identical across variants for a given config.
GeneratedLog generate_baseline(const ClaimProcessConfig& cfg);
GeneratedLog generate_drift1(const ClaimProcessConfig& cfg);
GeneratedLog generate_drift2(const ClaimProcessConfig& cfg);

}  // namespace premon
