#pragma once

#include <map>
#include <utility>
#include <vector>

#include "floorloop/descriptor.hpp"
#include "floorloop/errors.hpp"
#include "floorloop/se2.hpp"

namespace floorloop {

using MatchResult = std::vector<LoopCandidate>;

struct Trajectory {
  std::vector<std::pair<int, PoseSE2>> poses;  // ids unique
};

// A match counts as a true positive iff the matched reference frame lies
// within radius of the query's true opposing counterpart: the reference
// frame whose ground-truth position is nearest to the query's.
double recall_at_radius(const MatchResult& matches,
                        const std::map<int, PoseSE2>& gt,
                        const std::vector<int>& reference_ids, double radius);

// Localization radius: trajectory arc length / 15.
double default_radius(const std::vector<PoseSE2>& gt);

// Planar alignment applied to points as p' = R(theta) p + (x, y).
PoseSE2 align_se2(const Trajectory& est, const Trajectory& gt);

double ate_rmse(const Trajectory& est, const Trajectory& gt, bool align = true);

}  // namespace floorloop
