#include "vrsim/retransmission.hpp"

#include <stdexcept>

#include "vrsim/errors.hpp"

namespace vrsim {

const char* scheme_name(Scheme s) {
  switch (s) {
    case Scheme::Proactive: return "proactive";
    case Scheme::SingleShot: return "single-shot";
    case Scheme::Genie: return "genie";
  }
  return "?";
}

void RetransConfig::validate() const {
  if (k_re < 1) throw ConfigError("k_re must be at least 1");
  if (max_rounds < 1) throw ConfigError("max_rounds must be at least 1");
  if (tti_s <= 0.0) throw ConfigError("tti must be positive");
  if (scheme == Scheme::Proactive && t_th_ttis < 4)
    throw ConfigError("latency budget below the minimum 4-TTI round trip");
}

RetransConfig default_retrans(Scheme scheme, int k_re) {
  RetransConfig cfg;
  cfg.scheme = scheme;
  cfg.k_re = k_re;
  cfg.t_th_ttis = 2 * (k_re + 3);
  return cfg;
}

int proactive_latency_ttis(int round_m, int repetition_l, int k_re) {
  if (round_m < 1 || repetition_l < 1 || repetition_l > k_re)
    throw std::invalid_argument("proactive_latency_ttis: bad round/repetition");
  return (round_m - 1) * (k_re + 3) + repetition_l + 3;
}

UplinkOutcome run_proactive(const std::function<bool()>& attempt,
                            const RetransConfig& cfg) {
  cfg.validate();
  UplinkOutcome out;
  int last_awaited = 0;
  for (int m = 1; m <= cfg.max_rounds; ++m) {
    if (proactive_latency_ttis(m, 1, cfg.k_re) > cfg.t_th_ttis) break;
    out.round = m;
    for (int l = 1; l <= cfg.k_re; ++l) {
      int lat = proactive_latency_ttis(m, l, cfg.k_re);
      if (lat > cfg.t_th_ttis) break;  // would miss the budget, not sent
      last_awaited = lat;
      if (attempt()) {
        out.success = true;
        out.repetition = l;
        out.latency_ttis = lat;
        return out;
      }
    }
  }
  out.success = false;
  out.repetition = 0;
  out.latency_ttis = last_awaited;
  return out;
}

UplinkOutcome run_single_shot(const std::function<bool()>& attempt,
                              const RetransConfig& cfg) {
  cfg.validate();
  UplinkOutcome out;
  out.round = 1;
  out.latency_ttis = 4;  // one send plus the feedback gap
  if (attempt()) {
    out.success = true;
    out.repetition = 1;
  }
  return out;
}

UplinkOutcome run_genie() {
  // Never transmits: round and repetition stay 0.
  UplinkOutcome out;
  out.success = true;
  return out;
}

UplinkOutcome run_scheme(const std::function<bool()>& attempt,
                         const RetransConfig& cfg) {
  switch (cfg.scheme) {
    case Scheme::Proactive: return run_proactive(attempt, cfg);
    case Scheme::SingleShot: return run_single_shot(attempt, cfg);
    case Scheme::Genie: return run_genie();
  }
  throw std::invalid_argument("run_scheme: unknown scheme");
}

}  // namespace vrsim
