#pragma once

#include <cstdint>
#include <vector>

#include "vrsim/trace.hpp"

namespace vrsim {

// How training generalizes to the test fold:
//  PerVideo: models are per video; each video's users are split into folds.
//  AllVideos: one split over videos; test videos are never seen in training.
enum class Regime { PerVideo, AllVideos };

const char* regime_name(Regime r);

struct FoldPlan {
  int k_cross = 4;
  Regime regime = Regime::PerVideo;

  void validate() const;  // throws ConfigError on k_cross < 2
};

struct FoldSplit {
  std::vector<int> train;  // indices into Dataset::traces
  std::vector<int> test;
};

// Seeded, deterministic folds. PerVideo shuffles each video's traces and
// deals near-equal contiguous chunks; AllVideos deals whole videos and
// requires k_cross to divide the video count. Every trace lands in exactly
// one test fold. Throws ConfigError when a video has fewer traces than folds
// (PerVideo) or the video count is not a multiple of k_cross (AllVideos).
std::vector<FoldSplit> kfold_split(const Dataset& ds, const FoldPlan& plan,
                                   std::uint64_t seed);

}  // namespace vrsim
