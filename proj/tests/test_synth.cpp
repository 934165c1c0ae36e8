#include <doctest.h>

#include <cmath>
#include <vector>

#include "vrsim/errors.hpp"
#include "vrsim/synth.hpp"

using namespace vrsim;

namespace {

std::vector<double> y_of(const Trace& t) {
  std::vector<double> out;
  out.reserve(t.samples.size());
  for (const auto& s : t.samples) out.push_back(s.y_deg);
  return out;
}

double pearson(const std::vector<double>& a, const std::vector<double>& b) {
  REQUIRE(a.size() == b.size());
  const double n = static_cast<double>(a.size());
  double ma = 0.0, mb = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    ma += a[i];
    mb += b[i];
  }
  ma /= n;
  mb /= n;
  double num = 0.0, va = 0.0, vb = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    num += (a[i] - ma) * (b[i] - mb);
    va += (a[i] - ma) * (a[i] - ma);
    vb += (b[i] - mb) * (b[i] - mb);
  }
  return num / std::sqrt(va * vb);
}

}  // namespace

TEST_CASE("synthetic corpus has the requested shape and is a valid dataset") {
  SynthConfig cfg;
  cfg.n_videos = 4;
  cfg.users_per_video = 3;
  cfg.t_tot = 120;
  Dataset ds = synth_traces(cfg, 1);

  REQUIRE(ds.traces.size() == 12);
  CHECK_NOTHROW(validate_dataset(ds));
  CHECK(ds.video_ids() == std::vector<int>{0, 1, 2, 3});
  for (const auto& t : ds.traces) {
    CHECK(t.length() == 120);
    CHECK(t.samples.front().slot == 0);
  }
}

TEST_CASE("generation is bitwise deterministic in the seed") {
  SynthConfig cfg;
  cfg.n_videos = 3;
  cfg.users_per_video = 4;
  cfg.t_tot = 80;
  Dataset a = synth_traces(cfg, 5);
  Dataset b = synth_traces(cfg, 5);
  Dataset c = synth_traces(cfg, 6);

  REQUIRE(a.traces.size() == b.traces.size());
  bool all_same = true, any_diff_c = false;
  for (std::size_t i = 0; i < a.traces.size(); ++i)
    for (std::size_t s = 0; s < a.traces[i].samples.size(); ++s) {
      const auto& sa = a.traces[i].samples[s];
      const auto& sb = b.traces[i].samples[s];
      const auto& sc = c.traces[i].samples[s];
      if (sa.x_deg != sb.x_deg || sa.y_deg != sb.y_deg || sa.z_deg != sb.z_deg)
        all_same = false;
      if (sa.y_deg != sc.y_deg) any_diff_c = true;
    }
  CHECK(all_same);
  CHECK(any_diff_c);
}

TEST_CASE("users of one video follow a shared content path") {
  SynthConfig cfg;
  cfg.n_videos = 6;
  cfg.users_per_video = 5;
  cfg.t_tot = 300;
  Dataset ds = synth_traces(cfg, 11);

  double acc = 0.0;
  int pairs = 0;
  for (int v : ds.video_ids()) {
    auto members = ds.traces_of_video(v);
    for (std::size_t i = 0; i < members.size(); ++i)
      for (std::size_t j = i + 1; j < members.size(); ++j) {
        const Trace& a = ds.traces[static_cast<std::size_t>(members[i])];
        const Trace& b = ds.traces[static_cast<std::size_t>(members[j])];
        acc += pearson(y_of(a), y_of(b));
        ++pairs;
      }
  }
  CHECK(pairs == 6 * 10);
  CHECK(acc / pairs > 0.5);
}

TEST_CASE("different videos look different") {
  SynthConfig cfg;
  cfg.n_videos = 2;
  cfg.users_per_video = 1;
  cfg.t_tot = 200;
  Dataset ds = synth_traces(cfg, 3);
  auto a = y_of(ds.traces[0]);
  auto b = y_of(ds.traces[1]);
  bool differ = false;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] != b[i]) differ = true;
  CHECK(differ);
}

TEST_CASE("a mid-trace shift changes the future, not the past") {
  SynthConfig plain;
  plain.n_videos = 3;
  plain.users_per_video = 2;
  plain.t_tot = 200;
  SynthConfig shifted = plain;
  shifted.shift_at_slot = 120;

  Dataset a = synth_traces(plain, 21);
  Dataset b = synth_traces(shifted, 21);
  REQUIRE(a.traces.size() == b.traces.size());

  bool tail_differs = false;
  for (std::size_t i = 0; i < a.traces.size(); ++i) {
    for (int s = 0; s < 120; ++s) {
      const auto& sa = a.traces[i].samples[static_cast<std::size_t>(s)];
      const auto& sb = b.traces[i].samples[static_cast<std::size_t>(s)];
      CHECK(sa.y_deg == sb.y_deg);
      CHECK(sa.x_deg == sb.x_deg);
      CHECK(sa.z_deg == sb.z_deg);
    }
    for (int s = 120; s < 200; ++s)
      if (a.traces[i].samples[static_cast<std::size_t>(s)].y_deg !=
          b.traces[i].samples[static_cast<std::size_t>(s)].y_deg)
        tail_differs = true;
  }
  CHECK(tail_differs);
}

TEST_CASE("synthetic config validation") {
  SynthConfig cfg;
  CHECK_NOTHROW(cfg.validate());
  SynthConfig bad = cfg;
  bad.n_videos = 0;
  CHECK_THROWS_AS(bad.validate(), ConfigError);
  bad = cfg;
  bad.users_per_video = 0;
  CHECK_THROWS_AS(bad.validate(), ConfigError);
  bad = cfg;
  bad.t_tot = 0;
  CHECK_THROWS_AS(bad.validate(), ConfigError);
  bad = cfg;
  bad.shift_at_slot = -1;
  CHECK_THROWS_AS(bad.validate(), ConfigError);
  bad = cfg;
  bad.shift_at_slot = bad.t_tot;
  CHECK_THROWS_AS(bad.validate(), ConfigError);
}
