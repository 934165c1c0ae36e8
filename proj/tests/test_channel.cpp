#include <doctest.h>

#include <cmath>
#include <complex>
#include <vector>

#include "vrsim/channel.hpp"
#include "vrsim/errors.hpp"

using namespace vrsim;

namespace {

// Regularized upper incomplete gamma Q(M, x) for integer M: the tail
// probability that a sum of M unit-mean exponentials exceeds x.
double erlang_tail(int m, double x) {
  double term = std::exp(-x);
  double acc = term;
  for (int k = 1; k < m; ++k) {
    term *= x / k;
    acc += term;
  }
  return acc;
}

ChannelConfig unit_cfg() {
  ChannelConfig cfg;
  cfg.antennas = 3;
  cfg.tx_power_dbm = 30.0;  // 1 W
  cfg.noise_dbm = 0.0;      // 1 mW
  return cfg;
}

}  // namespace

TEST_CASE("dbm conversion hits the anchor points") {
  CHECK(dbm_to_watts(30.0) == doctest::Approx(1.0));
  CHECK(dbm_to_watts(0.0) == doctest::Approx(1e-3));
  CHECK(dbm_to_watts(-30.0) == doctest::Approx(1e-6));
  CHECK(dbm_to_watts(23.0) == doctest::Approx(0.19952623149688797));
  ChannelConfig cfg;
  CHECK(cfg.noise_w() == doctest::Approx(1e-14));  // -110 dBm
}

TEST_CASE("users land inside the square with a distance floor") {
  ChannelConfig cfg;
  cfg.side_m = 60.0;
  Rng rng(31);
  auto users = place_users(500, cfg, rng);
  REQUIRE(users.size() == 500);
  for (const auto& u : users) {
    CHECK(u.x_m >= -30.0);
    CHECK(u.x_m < 30.0);
    CHECK(u.y_m >= -30.0);
    CHECK(u.y_m < 30.0);
    CHECK(u.distance_m >= cfg.min_distance_m);
    if (std::hypot(u.x_m, u.y_m) > cfg.min_distance_m)
      CHECK(u.distance_m == doctest::Approx(std::hypot(u.x_m, u.y_m)));
  }
  cfg.min_distance_m = 200.0;  // larger than any point in the square
  Rng rng2(32);
  for (const auto& u : place_users(50, cfg, rng2))
    CHECK(u.distance_m == 200.0);
}

TEST_CASE("channel entries carry the path-loss power") {
  ChannelConfig cfg;
  cfg.antennas = 4;
  cfg.path_loss_exp = 3.0;
  const double d = 7.0;
  Rng rng(33);
  double acc = 0.0;
  const int n = 20000;
  for (int i = 0; i < n; ++i) {
    auto h = draw_channel(d, cfg, rng);
    REQUIRE(h.size() == 4);
    acc += h.squaredNorm() / 4.0;
  }
  CHECK(acc / n == doctest::Approx(std::pow(d, -3.0)).epsilon(0.03));
  CHECK_THROWS_AS(draw_channel(0.0, cfg, rng), std::invalid_argument);
}

TEST_CASE("combined SINR matches hand-built cases") {
  ChannelConfig cfg = unit_cfg();
  Eigen::VectorXcd e1 = Eigen::VectorXcd::Zero(3);
  e1[0] = 1.0;

  SUBCASE("no interference: P |h|^2 over noise") {
    CHECK(mrc_sinr(e1, {}, cfg) == doctest::Approx(1000.0));  // 1 W / 1 mW
  }
  SUBCASE("identical interferer leaks everything") {
    std::vector<Eigen::VectorXcd> others{e1};
    CHECK(mrc_sinr(e1, others, cfg) == doctest::Approx(1.0 / (1.0 + 1e-3)));
  }
  SUBCASE("orthogonal interferer leaks nothing") {
    Eigen::VectorXcd e2 = Eigen::VectorXcd::Zero(3);
    e2[1] = 1.0;
    std::vector<Eigen::VectorXcd> others{e2};
    CHECK(mrc_sinr(e1, others, cfg) == doctest::Approx(1000.0));
  }
  SUBCASE("interferer phase is irrelevant") {
    Rng rng(34);
    Eigen::VectorXcd h(3), g(3);
    for (int i = 0; i < 3; ++i) {
      h[i] = rng.cnormal();
      g[i] = rng.cnormal();
    }
    std::vector<Eigen::VectorXcd> others{g};
    double base = mrc_sinr(h, others, cfg);
    std::vector<Eigen::VectorXcd> rotated{
        g * std::polar(1.0, 1.234)};
    CHECK(mrc_sinr(h, rotated, cfg) == doctest::Approx(base).epsilon(1e-12));
  }
  SUBCASE("interference only hurts") {
    Rng rng(35);
    Eigen::VectorXcd h(3);
    for (int i = 0; i < 3; ++i) h[i] = rng.cnormal();
    std::vector<Eigen::VectorXcd> others;
    double prev = mrc_sinr(h, others, cfg);
    for (int k = 0; k < 5; ++k) {
      Eigen::VectorXcd g(3);
      for (int i = 0; i < 3; ++i) g[i] = rng.cnormal();
      others.push_back(g);
      double now = mrc_sinr(h, others, cfg);
      CHECK(now <= prev);
      prev = now;
    }
  }
  SUBCASE("degenerate inputs are rejected") {
    Eigen::VectorXcd zero = Eigen::VectorXcd::Zero(3);
    CHECK_THROWS_AS(mrc_sinr(zero, {}, cfg), std::invalid_argument);
    Eigen::VectorXcd wrong = Eigen::VectorXcd::Zero(2);
    wrong[0] = 1.0;
    std::vector<Eigen::VectorXcd> others{wrong};
    CHECK_THROWS_AS(mrc_sinr(e1, others, cfg), std::invalid_argument);
  }
}

TEST_CASE("rate is Shannon bandwidth scaling") {
  ChannelConfig cfg;
  cfg.bandwidth_hz = 1e7;
  CHECK(uplink_rate_bps(1.0, cfg) == doctest::Approx(1e7));
  CHECK(uplink_rate_bps(3.0, cfg) == doctest::Approx(2e7));
  CHECK(uplink_rate_bps(0.0, cfg) == 0.0);
  CHECK_THROWS_AS(uplink_rate_bps(-0.5, cfg), std::invalid_argument);
}

TEST_CASE("the rate threshold is inclusive") {
  ChannelConfig cfg = unit_cfg();
  cfg.tx_power_dbm = 0.0;  // P equals noise, so SINR is exactly |h|^2
  cfg.bandwidth_hz = 1e7;
  cfg.rate_threshold_bps = 1e7;  // needs SINR exactly 1 with |h| = 1
  Eigen::VectorXcd e1 = Eigen::VectorXcd::Zero(3);
  e1[0] = 1.0;
  double rate = uplink_rate_bps(mrc_sinr(e1, {}, cfg), cfg);
  CHECK(rate == doctest::Approx(cfg.rate_threshold_bps));
  CHECK(attempt_success(cfg.rate_threshold_bps, cfg));
  CHECK_FALSE(attempt_success(cfg.rate_threshold_bps * (1.0 - 1e-12), cfg));
}

TEST_CASE("single-user success probability matches the closed form") {
  // One user, no interference: success iff |g|^2 >= x*, where |g|^2 is a sum
  // of M unit-mean exponentials. x* folds rate threshold, noise, power and
  // path loss together.
  ChannelConfig cfg;
  cfg.antennas = 4;
  cfg.bandwidth_hz = 1e7;
  cfg.rate_threshold_bps = 1.6e7;
  cfg.tx_power_dbm = -62.0;
  cfg.noise_dbm = -90.0;
  cfg.path_loss_exp = 3.0;

  const double d = 10.0;
  const double snr_unit =
      cfg.tx_power_w() * std::pow(d, -cfg.path_loss_exp) / cfg.noise_w();
  const double x_star =
      (std::pow(2.0, cfg.rate_threshold_bps / cfg.bandwidth_hz) - 1.0) /
      snr_unit;
  const double p_expect = erlang_tail(cfg.antennas, x_star);
  REQUIRE(p_expect > 0.05);
  REQUIRE(p_expect < 0.95);

  std::vector<UserPlacement> users(1);
  users[0].distance_m = d;
  Rng fading(36);
  const int n = 40000;
  int ok = 0;
  for (int i = 0; i < n; ++i) ok += draw_attempt(users, cfg, fading) ? 1 : 0;
  double p_hat = static_cast<double>(ok) / n;
  double sigma = std::sqrt(p_expect * (1.0 - p_expect) / n);
  CHECK(std::fabs(p_hat - p_expect) < 4.0 * sigma + 1e-9);
}

TEST_CASE("channel config validation") {
  ChannelConfig cfg;
  cfg.antennas = 0;
  CHECK_THROWS_AS(cfg.validate(), ConfigError);
  cfg = ChannelConfig{};
  cfg.bandwidth_hz = 0.0;
  CHECK_THROWS_AS(cfg.validate(), ConfigError);
  cfg = ChannelConfig{};
  cfg.side_m = -5.0;
  CHECK_THROWS_AS(cfg.validate(), ConfigError);
  CHECK_NOTHROW(ChannelConfig{}.validate());
}
