// Copyright 2026 The gpas Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//   http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <iosfwd>
#include <vector>

#include "gpas/robust_estimator.h"
#include "gpas/synthetic.h"

namespace gpas {

// One fresh scene and one minimal solve per trial; the hypothesis with the
// lowest depth RMSE over its sample is reported.
struct StabilityRow {
  int trial = 0;
  bool solved = false;
  double depth_rmse = 0.0;
  double rotation_error_deg = 0.0;
  double translation_error = 0.0;
  double scale_error_rel = 0.0;
};

struct StabilityResult {
  std::vector<StabilityRow> rows;
};

StabilityResult run_stability(int trials, const SceneRecipe& recipe,
                              std::uint64_t seed,
                              const SolverVariant& variant = {});

// Per noise level and run: the full robust pipeline and one raw minimal
// solve (best hypothesis by mean reprojection error) on the same scene.
struct NoiseSweepRow {
  double noise_sigma_px = 0.0;
  int run = 0;
  bool ransac_ok = false;
  ErrorReport ransac;
  double ransac_inlier_recall = 0.0;
  bool minimal_ok = false;
  ErrorReport minimal;
};

struct NoiseSweepResult {
  std::vector<NoiseSweepRow> rows;
};

NoiseSweepResult run_noise_sweep(const std::vector<double>& noise_levels,
                                 const SceneRecipe& recipe, int runs_per_level,
                                 const RansacConfig& config = {});

// Median/mean per-problem solve time of the coplanar path against the
// general path on the same coplanar minimal problems.
struct TimingResult {
  int trials = 0;
  double coplanar_mean_us = 0.0;
  double coplanar_median_us = 0.0;
  double general_mean_us = 0.0;
  double general_median_us = 0.0;

  double median_speedup() const {
    return coplanar_median_us > 0.0 ? general_median_us / coplanar_median_us
                                    : 0.0;
  }
};

TimingResult run_timing(const SceneRecipe& recipe, int trials,
                        std::uint64_t seed = 0);

// RFC 4180 CSV emitters, one row per trial / (level, run). Numeric output
// is deterministic for a fixed seed.
void write_stability_csv(const StabilityResult& result, std::ostream& out);
void write_noise_sweep_csv(const NoiseSweepResult& result, std::ostream& out);
void write_timing_csv(const TimingResult& result, std::ostream& out);

}  // namespace gpas
