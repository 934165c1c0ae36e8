// Throughput of the forward pass and one SGD step for each predictor on a
// default-sized window. BENCHMARK_MAIN lives in bench_session.cpp.

#include <benchmark/benchmark.h>

#include <vector>

#include "vrsim/predictor.hpp"
#include "vrsim/rng.hpp"

namespace {

vrsim::PredictorHyper hyper_for(vrsim::PredictorKind kind) {
  vrsim::PredictorHyper h;
  h.kind = kind;
  h.input_len = 10;
  return h;
}

std::vector<double> window_features(int n) {
  vrsim::Rng rng(99);
  std::vector<double> f(static_cast<std::size_t>(n));
  for (double& v : f) v = rng.uniform(0.3, 0.7);
  return f;
}

void BM_Predict(benchmark::State& state) {
  auto kind = static_cast<vrsim::PredictorKind>(state.range(0));
  vrsim::Rng init(1);
  vrsim::PredictorModel model = vrsim::make_predictor(hyper_for(kind), init);
  auto feats = window_features(10);
  for (auto _ : state) {
    double y = vrsim::predict(model, feats);
    benchmark::DoNotOptimize(y);
  }
}

void BM_SgdUpdate(benchmark::State& state) {
  auto kind = static_cast<vrsim::PredictorKind>(state.range(0));
  vrsim::Rng init(1);
  vrsim::PredictorModel model = vrsim::make_predictor(hyper_for(kind), init);
  auto feats = window_features(10);
  for (auto _ : state) {
    model = vrsim::sgd_update(model, feats, 0.61);
    benchmark::DoNotOptimize(model);
  }
}

}  // namespace

BENCHMARK(BM_Predict)
    ->Arg(static_cast<int>(vrsim::PredictorKind::Lr))
    ->Arg(static_cast<int>(vrsim::PredictorKind::Mlp))
    ->Arg(static_cast<int>(vrsim::PredictorKind::Lstm))
    ->Arg(static_cast<int>(vrsim::PredictorKind::Gru));

BENCHMARK(BM_SgdUpdate)
    ->Arg(static_cast<int>(vrsim::PredictorKind::Lr))
    ->Arg(static_cast<int>(vrsim::PredictorKind::Mlp))
    ->Arg(static_cast<int>(vrsim::PredictorKind::Lstm))
    ->Arg(static_cast<int>(vrsim::PredictorKind::Gru));
