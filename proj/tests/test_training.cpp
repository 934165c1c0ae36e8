#include <doctest.h>

#include <cmath>
#include <vector>

#include "vrsim/angles.hpp"
#include "vrsim/rng.hpp"
#include "vrsim/training.hpp"

using namespace vrsim;

namespace {

// Windows whose next value is perfectly predictable: a slow ramp.
std::vector<WindowedExample> ramp_examples(int count, int t_w) {
  std::vector<WindowedExample> out;
  for (int s = 0; s < count; ++s) {
    WindowedExample ex;
    for (int i = 0; i < t_w; ++i)
      ex.features_deg.push_back(-90.0 + (s + i) * 0.5);
    ex.target_deg = -90.0 + (s + t_w) * 0.5;
    ex.target_slot = s + t_w;
    out.push_back(std::move(ex));
  }
  return out;
}

}  // namespace

TEST_CASE("analytic gradients agree with central finite differences") {
  // The recorded worst-case over ten seeds guards every backprop path.
  // Central differences themselves carry ~1e-8 relative cancellation noise,
  // so even the exactly-quadratic regressor cannot test tighter than that.
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    CHECK(grad_check(PredictorKind::Lr, seed) < 1e-6);
    CHECK(grad_check(PredictorKind::Mlp, seed) < 1e-4);
    CHECK(grad_check(PredictorKind::Lstm, seed) < 1e-4);
    CHECK(grad_check(PredictorKind::Gru, seed) < 1e-4);
  }
}

TEST_CASE("one epoch over one example is exactly one update") {
  std::vector<WindowedExample> examples = ramp_examples(1, 4);
  Rng init(2);
  PredictorModel m{make_mlp(4, {3}, 0.01, init)};

  TrainConfig tc;
  tc.epochs = 1;
  tc.seed = 9;
  OfflineResult res = train_offline(m, examples, tc);

  PredictorModel direct =
      sgd_update(m, normalize_features(examples[0].features_deg),
                 normalize_angle(examples[0].target_deg));
  Eigen::VectorXd a = pack_params(res.model), b = pack_params(direct);
  REQUIRE(a.size() == b.size());
  for (Eigen::Index i = 0; i < a.size(); ++i) CHECK(a[i] == b[i]);
  REQUIRE(res.epoch_loss.size() == 1);
  CHECK(res.epoch_loss[0] ==
        doctest::Approx(loss(m, normalize_features(examples[0].features_deg),
                             normalize_angle(examples[0].target_deg))));
}

TEST_CASE("offline training reduces the loss on learnable data") {
  auto examples = ramp_examples(60, 6);
  TrainConfig tc;
  tc.epochs = 40;
  tc.seed = 4;

  SUBCASE("linear regressor") {
    PredictorModel m{make_lr(6, 2, 0.05)};
    auto res = train_offline(m, examples, tc);
    CHECK(res.epoch_loss.back() < res.epoch_loss.front() * 0.1);
  }
  SUBCASE("feed-forward net") {
    // All layers rectify, so an unlucky init can leave the output unit inert
    // on every example (zero gradient forever). Seed 7 starts trainable here.
    Rng init(7);
    PredictorModel m{make_mlp(6, {8}, 0.05, init)};
    auto res = train_offline(m, examples, tc);
    CHECK(res.epoch_loss.back() < res.epoch_loss.front());
    CHECK(res.epoch_loss.back() < 0.01);
  }
  SUBCASE("gru") {
    Rng init(6);
    PredictorModel m{make_rnn(CellKind::Gru, 1, 6, 0.1, 5.0, init)};
    auto res = train_offline(m, examples, tc);
    CHECK(res.epoch_loss.back() < res.epoch_loss.front());
    CHECK(res.epoch_loss.back() < 0.01);
  }
}

TEST_CASE("training is deterministic in the seed") {
  auto examples = ramp_examples(20, 5);
  // Seed 1 gives an init whose output unit is active, so SGD actually moves.
  Rng init_a(1), init_b(1);
  PredictorModel ma{make_mlp(5, {4}, 0.02, init_a)};
  PredictorModel mb{make_mlp(5, {4}, 0.02, init_b)};
  TrainConfig tc;
  tc.epochs = 5;
  tc.seed = 11;
  auto ra = train_offline(ma, examples, tc);
  auto rb = train_offline(mb, examples, tc);
  Eigen::VectorXd a = pack_params(ra.model), b = pack_params(rb.model);
  for (Eigen::Index i = 0; i < a.size(); ++i) CHECK(a[i] == b[i]);
  CHECK(ra.epoch_loss == rb.epoch_loss);

  tc.seed = 12;  // different shuffle order, different SGD path
  auto rc = train_offline(ma, examples, tc);
  CHECK((pack_params(rc.model) - a).norm() > 0.0);
}

TEST_CASE("degenerate training inputs are rejected") {
  std::vector<WindowedExample> none;
  PredictorModel m{make_lr(4, 2, 0.1)};
  TrainConfig tc;
  CHECK_THROWS_AS(train_offline(m, none, tc), std::invalid_argument);
  auto examples = ramp_examples(3, 4);
  tc.epochs = 0;
  CHECK_THROWS_AS(train_offline(m, examples, tc), std::invalid_argument);
}
