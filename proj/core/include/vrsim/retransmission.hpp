#pragma once

#include <functional>

namespace vrsim {

// How each ground-truth sample is delivered on the uplink.
//  Proactive: every round blasts k_re repetitions before any feedback.
//  SingleShot: one attempt, no retries.
//  Genie: assumed perfect, zero latency.
enum class Scheme { Proactive, SingleShot, Genie };

const char* scheme_name(Scheme s);

struct RetransConfig {
  Scheme scheme = Scheme::Proactive;
  int k_re = 8;            // repetitions per proactive round
  int t_th_ttis = 22;      // latency budget; 2 * (k_re + 3) by default
  int max_rounds = 1000;   // safety valve so a dead link cannot spin forever
  double tti_s = 0.000125;

  // Budget must admit at least the first repetition's feedback.
  void validate() const;
};

// Returns the config with t_th at its default for the given k_re.
RetransConfig default_retrans(Scheme scheme, int k_re = 8);

struct UplinkOutcome {
  bool success = false;
  int round = 0;        // m, 1-based; on failure, rounds exhausted
  int repetition = 0;   // l in 1..k_re, meaningful when success
  int latency_ttis = 0;

  double latency_s(const RetransConfig& cfg) const {
    return latency_ttis * cfg.tti_s;
  }
};

// Feedback delay for repetition l of round m: each earlier round occupies its
// k_re sends plus the 3-TTI feedback gap, then l more sends and the gap.
// The first repetition of the first round is acknowledged after 4 TTIs.
int proactive_latency_ttis(int round_m, int repetition_l, int k_re);

// Runs rounds of k_re repetitions, each repetition an independent call of
// `attempt`, until one is acknowledged within the latency budget. Repetitions
// whose feedback would overrun the budget are not sent; the failure latency is
// the last feedback actually awaited.
UplinkOutcome run_proactive(const std::function<bool()>& attempt,
                            const RetransConfig& cfg);

UplinkOutcome run_single_shot(const std::function<bool()>& attempt,
                              const RetransConfig& cfg);

UplinkOutcome run_genie();

UplinkOutcome run_scheme(const std::function<bool()>& attempt,
                         const RetransConfig& cfg);

}  // namespace vrsim
