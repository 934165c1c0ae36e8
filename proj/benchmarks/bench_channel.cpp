// Cost of the physical layer: one beamformed SINR evaluation under load and a
// whole proactive delivery (up to 16 repetitions with the default budget).

#include <benchmark/benchmark.h>

#include "vrsim/channel.hpp"
#include "vrsim/retransmission.hpp"

namespace {

void BM_DrawAttempt(benchmark::State& state) {
  const int k_vr = static_cast<int>(state.range(0));
  vrsim::ChannelConfig ch;
  vrsim::Rng place(7), fading(8);
  auto users = vrsim::place_users(k_vr, ch, place);
  for (auto _ : state) {
    bool ok = vrsim::draw_attempt(users, ch, fading);
    benchmark::DoNotOptimize(ok);
  }
}

void BM_ProactiveDelivery(benchmark::State& state) {
  const int k_vr = static_cast<int>(state.range(0));
  vrsim::ChannelConfig ch;
  vrsim::RetransConfig rt = vrsim::default_retrans(vrsim::Scheme::Proactive);
  vrsim::Rng place(7), fading(8);
  auto users = vrsim::place_users(k_vr, ch, place);
  auto attempt = [&] { return vrsim::draw_attempt(users, ch, fading); };
  for (auto _ : state) {
    auto out = vrsim::run_proactive(attempt, rt);
    benchmark::DoNotOptimize(out);
  }
}

}  // namespace

BENCHMARK(BM_DrawAttempt)->Arg(1)->Arg(10)->Arg(30);
BENCHMARK(BM_ProactiveDelivery)->Arg(1)->Arg(10)->Arg(30);
