// End-to-end slot rate of an adapting session: window upkeep, prediction,
// scoring and the online SGD step, with the uplink precomputed.

#include <benchmark/benchmark.h>

#include <vector>

#include "vrsim/session.hpp"
#include "vrsim/synth.hpp"

namespace {

void BM_OnlineSessionSlot(benchmark::State& state) {
  auto kind = static_cast<vrsim::PredictorKind>(state.range(0));

  vrsim::SynthConfig synth;
  synth.n_videos = 1;
  synth.users_per_video = 1;
  synth.t_tot = 300;
  vrsim::Dataset ds = vrsim::synth_traces(synth, 5);
  const vrsim::Trace& trace = ds.traces.front();

  vrsim::PredictorHyper hyper;
  hyper.kind = kind;
  hyper.input_len = 10;
  vrsim::Rng init(1);
  vrsim::PredictorModel model = vrsim::make_predictor(hyper, init);

  vrsim::SessionConfig cfg;
  cfg.window.dims = {vrsim::Axis::Y};

  vrsim::ChannelConfig ch;
  vrsim::RetransConfig rt = vrsim::default_retrans(vrsim::Scheme::Proactive);
  vrsim::Rng place(7), fading(8);
  auto outcomes =
      vrsim::simulate_uplink(trace.length(), 10, ch, rt, place, fading);

  for (auto _ : state) {
    vrsim::SessionLog log = vrsim::run_session(trace, {model}, cfg, outcomes);
    benchmark::DoNotOptimize(log);
  }
  state.SetItemsProcessed(state.iterations() * trace.length());
}

}  // namespace

BENCHMARK(BM_OnlineSessionSlot)
    ->Arg(static_cast<int>(vrsim::PredictorKind::Lr))
    ->Arg(static_cast<int>(vrsim::PredictorKind::Gru));

BENCHMARK_MAIN();
