#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "floorloop/config.hpp"
#include "floorloop/descriptor.hpp"
#include "floorloop/evalkit.hpp"
#include "floorloop/posegraph.hpp"
#include "floorloop/simworld.hpp"

namespace floorloop {

// Offline stage pipeline: simulate -> describe -> match -> correspond ->
// register -> optimize -> evaluate. Every stage reads its inputs from and
// writes its artifacts to the configured output directory, so stages are
// independently re-runnable and inspectable.

struct VariantMetrics {
  VariantTag variant = VariantTag::Raw;
  double recall = 0.0;
  double radius = 0.0;
  double median_inliers = 0.0;
  double median_total = 0.0;
  int accepted_loops = 0;
  double ate_odometry = 0.0;
  double ate_optimized = 0.0;
  double ate_optimized_unaligned = 0.0;
};

void stage_simulate(const Config& cfg);
void stage_describe(const Config& cfg, VariantTag variant);
void stage_match(const Config& cfg, VariantTag variant);
void stage_correspond(const Config& cfg, VariantTag variant);
void stage_register(const Config& cfg, VariantTag variant);
void stage_optimize(const Config& cfg, VariantTag variant);
VariantMetrics stage_evaluate(const Config& cfg, VariantTag variant);

// Dispatch by stage name; the variant comes from descriptor.variant.
void run_stage(const std::string& stage, const Config& cfg);

// All stages in order for the configured variant.
VariantMetrics run_pipeline(const Config& cfg);

// Matching, correspondence and optimization per variant plus a comparative
// report (recall, inlier counts, ATE).
std::vector<VariantMetrics> run_ablation(const Config& cfg,
                                         const std::vector<VariantTag>& variants);

// --- helpers shared with tests ---

std::filesystem::path dataset_dir(const Config& cfg);
std::filesystem::path out_dir(const Config& cfg);

// Floor homography from config anchors (fallback: manifest anchors).
Homography floor_homography(const Config& cfg, const DatasetManifest& manifest);

// Simulator spec from config (bundled sim.name plus overrides).
SimSpec sim_spec_from_config(const Config& cfg);

// Dead-reckoned trajectory from the manifest's noisy odometry.
Trajectory dead_reckoned_trajectory(const DatasetManifest& manifest);
Trajectory ground_truth_trajectory(const DatasetManifest& manifest);

}  // namespace floorloop
