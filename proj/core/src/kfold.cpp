#include "vrsim/kfold.hpp"

#include <algorithm>
#include <string>

#include "vrsim/errors.hpp"
#include "vrsim/rng.hpp"

namespace vrsim {

const char* regime_name(Regime r) {
  return r == Regime::PerVideo ? "per-video" : "all-videos";
}

void FoldPlan::validate() const {
  if (k_cross < 2) throw ConfigError("k_cross must be at least 2");
}

namespace {

// Near-equal contiguous chunk f of n items: the first n % k chunks get one
// extra.
std::pair<int, int> chunk_bounds(int n, int k, int f) {
  int base = n / k, extra = n % k;
  int lo = f * base + std::min(f, extra);
  int hi = lo + base + (f < extra ? 1 : 0);
  return {lo, hi};
}

}  // namespace

std::vector<FoldSplit> kfold_split(const Dataset& ds, const FoldPlan& plan,
                                   std::uint64_t seed) {
  plan.validate();
  std::vector<FoldSplit> folds(static_cast<std::size_t>(plan.k_cross));

  if (plan.regime == Regime::PerVideo) {
    for (int vid : ds.video_ids()) {
      auto members = ds.traces_of_video(vid);
      if (static_cast<int>(members.size()) < plan.k_cross)
        throw ConfigError("video " + std::to_string(vid) + " has " +
                          std::to_string(members.size()) +
                          " traces, fewer than k_cross");
      Rng rng = make_stream(seed, "kfold", static_cast<std::uint64_t>(vid));
      shuffle(members, rng);
      for (int f = 0; f < plan.k_cross; ++f) {
        auto [lo, hi] = chunk_bounds(static_cast<int>(members.size()),
                                     plan.k_cross, f);
        auto& fold = folds[static_cast<std::size_t>(f)];
        for (int i = 0; i < static_cast<int>(members.size()); ++i) {
          (i >= lo && i < hi ? fold.test : fold.train)
              .push_back(members[static_cast<std::size_t>(i)]);
        }
      }
    }
  } else {
    auto vids = ds.video_ids();
    if (vids.size() % static_cast<std::size_t>(plan.k_cross) != 0)
      throw ConfigError("all-videos regime needs k_cross to divide the " +
                        std::to_string(vids.size()) + " videos");
    Rng rng = make_stream(seed, "kfold");
    shuffle(vids, rng);
    for (int f = 0; f < plan.k_cross; ++f) {
      auto [lo, hi] = chunk_bounds(static_cast<int>(vids.size()), plan.k_cross, f);
      auto& fold = folds[static_cast<std::size_t>(f)];
      for (int i = 0; i < static_cast<int>(vids.size()); ++i) {
        bool in_test = i >= lo && i < hi;
        for (int t : ds.traces_of_video(vids[static_cast<std::size_t>(i)]))
          (in_test ? fold.test : fold.train).push_back(t);
      }
    }
  }

  for (auto& f : folds) {
    std::sort(f.train.begin(), f.train.end());
    std::sort(f.test.begin(), f.test.end());
  }
  return folds;
}

}  // namespace vrsim
