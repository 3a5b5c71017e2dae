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

#include "gpas/experiments.h"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <ostream>
#include <random>

#include "gpas/parallel.h"
#include "gpas/random.h"

namespace gpas {

namespace {

constexpr double kInfinity = std::numeric_limits<double>::infinity();

std::array<int, 4> draw_distinct_indices(std::mt19937_64& rng, int n) {
  std::uniform_int_distribution<int> dist(0, n - 1);
  std::array<int, 4> picked{};
  int num_picked = 0;
  while (num_picked < 4) {
    const int candidate = dist(rng);
    bool fresh = true;
    for (int j = 0; j < num_picked; ++j) {
      if (picked[j] == candidate) {
        fresh = false;
        break;
      }
    }
    if (fresh) {
      picked[num_picked++] = candidate;
    }
  }
  return picked;
}

std::array<Correspondence, 4> gather_sample(const SyntheticProblem& problem,
                                            const std::array<int, 4>& indices) {
  std::array<Correspondence, 4> sample;
  for (int j = 0; j < 4; ++j) {
    sample[j] = problem.correspondences[indices[j]];
  }
  return sample;
}

double sample_depth_rmse(const Hypothesis& hypothesis,
                         const SyntheticProblem& problem,
                         const std::array<int, 4>& indices) {
  double sum = 0.0;
  for (int j = 0; j < 4; ++j) {
    const double delta = hypothesis.depths(j) -
                         problem.ground_truth_depths[indices[j]];
    sum += delta * delta;
  }
  return std::sqrt(sum / 4.0);
}

void write_double(std::ostream& out, double value) {
  const auto old_precision = out.precision(17);
  out << value;
  out.precision(old_precision);
}

}  // namespace

StabilityResult run_stability(int trials, const SceneRecipe& recipe,
                              std::uint64_t seed,
                              const SolverVariant& variant) {
  StabilityResult result;
  result.rows.resize(std::max(trials, 0));
  parallel_for(trials, [&](int trial) {
    StabilityRow& row = result.rows[trial];
    row.trial = trial;
    row.depth_rmse = kInfinity;
    row.rotation_error_deg = kInfinity;
    row.translation_error = kInfinity;
    row.scale_error_rel = kInfinity;

    SceneRecipe trial_recipe = recipe;
    trial_recipe.seed = derive_seed(seed, static_cast<std::uint64_t>(trial));
    const SyntheticProblem problem = generate(trial_recipe);

    std::mt19937_64 rng(
        derive_seed(seed ^ 0x5A3B1EULL, static_cast<std::uint64_t>(trial)));
    const std::array<int, 4> indices = draw_distinct_indices(
        rng, static_cast<int>(problem.correspondences.size()));
    const std::array<Correspondence, 4> sample =
        gather_sample(problem, indices);

    const Result<std::vector<Hypothesis>> hypotheses = solve_minimal(
        sample, variant,
        derive_seed(seed ^ 0x501CEULL, static_cast<std::uint64_t>(trial)));
    if (!hypotheses.ok()) {
      return;
    }

    const Hypothesis* best = nullptr;
    double best_rmse = kInfinity;
    for (const Hypothesis& hypothesis : hypotheses.value()) {
      if (hypothesis.kind != Hypothesis::Kind::kSimilarity) {
        continue;
      }
      const double rmse = sample_depth_rmse(hypothesis, problem, indices);
      if (rmse < best_rmse) {
        best_rmse = rmse;
        best = &hypothesis;
      }
    }
    if (best == nullptr) {
      return;
    }

    row.solved = true;
    row.depth_rmse = best_rmse;
    const ErrorReport report =
        error_report(best->similarity, problem.ground_truth, problem);
    row.rotation_error_deg = report.rotation_error_deg;
    row.translation_error = report.translation_error;
    row.scale_error_rel = report.scale_error_rel;
  });
  return result;
}

NoiseSweepResult run_noise_sweep(const std::vector<double>& noise_levels,
                                 const SceneRecipe& recipe, int runs_per_level,
                                 const RansacConfig& config) {
  NoiseSweepResult result;
  const int num_levels = static_cast<int>(noise_levels.size());
  result.rows.resize(num_levels * std::max(runs_per_level, 0));
  parallel_for(num_levels * runs_per_level, [&](int job) {
    const int level_index = job / runs_per_level;
    const int run = job % runs_per_level;
    NoiseSweepRow& row = result.rows[job];
    row.noise_sigma_px = noise_levels[level_index];
    row.run = run;

    SceneRecipe run_recipe = recipe;
    run_recipe.noise_sigma_px = noise_levels[level_index];
    run_recipe.seed = derive_seed(
        derive_seed(recipe.seed, static_cast<std::uint64_t>(level_index)),
        static_cast<std::uint64_t>(run));
    const SyntheticProblem problem = generate(run_recipe);

    RansacConfig run_config = config;
    run_config.seed = derive_seed(run_recipe.seed ^ 0xBA5EBA11ULL, 1);
    const Result<RansacResult> robust =
        estimate(problem.correspondences, problem.rig, run_config);
    if (robust.ok()) {
      row.ransac_ok = true;
      row.ransac = error_report(robust->transform, problem.ground_truth,
                                problem, run_config.inlier_threshold_px);
      const int truth_count = problem.true_inlier_count();
      row.ransac_inlier_recall =
          truth_count > 0
              ? static_cast<double>(row.ransac.inlier_count) / truth_count
              : 0.0;
    }

    std::mt19937_64 rng(derive_seed(run_recipe.seed ^ 0x31337ull, 2));
    const std::array<int, 4> indices = draw_distinct_indices(
        rng, static_cast<int>(problem.correspondences.size()));
    const Result<std::vector<Hypothesis>> hypotheses =
        solve_minimal(gather_sample(problem, indices), config.variant,
                      derive_seed(run_recipe.seed ^ 0x31337ull, 3));
    if (hypotheses.ok()) {
      const SimilarityTransform* best = nullptr;
      double best_error = kInfinity;
      for (const Hypothesis& hypothesis : hypotheses.value()) {
        if (hypothesis.kind != Hypothesis::Kind::kSimilarity) {
          continue;
        }
        double error_sum = 0.0;
        for (const Correspondence& c : problem.correspondences) {
          error_sum +=
              std::min(reprojection_error(hypothesis.similarity, c,
                                          problem.rig),
                       1e6);
        }
        if (error_sum < best_error) {
          best_error = error_sum;
          best = &hypothesis.similarity;
        }
      }
      if (best != nullptr) {
        row.minimal_ok = true;
        row.minimal = error_report(*best, problem.ground_truth, problem,
                                   config.inlier_threshold_px);
      }
    }
  });
  return result;
}

TimingResult run_timing(const SceneRecipe& recipe, int trials,
                        std::uint64_t seed) {
  TimingResult result;
  result.trials = std::max(trials, 0);
  if (result.trials == 0) {
    return result;
  }

  SceneRecipe coplanar_recipe = recipe;
  coplanar_recipe.coplanar = true;
  coplanar_recipe.seed = derive_seed(seed, 0xC0);
  const SyntheticProblem problem = generate(coplanar_recipe);

  std::mt19937_64 rng(derive_seed(seed, 0xC1));
  std::vector<std::array<Correspondence, 4>> samples;
  samples.reserve(result.trials);
  for (int t = 0; t < result.trials; ++t) {
    samples.push_back(gather_sample(
        problem, draw_distinct_indices(
                     rng, static_cast<int>(problem.correspondences.size()))));
  }

  SolverVariant coplanar_variant;
  SolverVariant general_variant;
  general_variant.force_general_path = true;

  // Warm-up, untimed.
  for (int t = 0; t < std::min(result.trials, 4); ++t) {
    (void)solve_minimal(samples[t], coplanar_variant, seed);
    (void)solve_minimal(samples[t], general_variant, seed);
  }

  using Clock = std::chrono::steady_clock;
  std::vector<double> coplanar_us(result.trials);
  std::vector<double> general_us(result.trials);
  for (int t = 0; t < result.trials; ++t) {
    const auto t0 = Clock::now();
    (void)solve_minimal(samples[t], coplanar_variant, seed);
    const auto t1 = Clock::now();
    (void)solve_minimal(samples[t], general_variant, seed);
    const auto t2 = Clock::now();
    coplanar_us[t] =
        std::chrono::duration<double, std::micro>(t1 - t0).count();
    general_us[t] =
        std::chrono::duration<double, std::micro>(t2 - t1).count();
  }

  auto mean = [](const std::vector<double>& v) {
    double sum = 0.0;
    for (const double x : v) {
      sum += x;
    }
    return sum / v.size();
  };
  auto median = [](std::vector<double> v) {
    std::sort(v.begin(), v.end());
    const size_t mid = v.size() / 2;
    return v.size() % 2 == 1 ? v[mid] : 0.5 * (v[mid - 1] + v[mid]);
  };

  result.coplanar_mean_us = mean(coplanar_us);
  result.coplanar_median_us = median(coplanar_us);
  result.general_mean_us = mean(general_us);
  result.general_median_us = median(general_us);
  return result;
}

void write_stability_csv(const StabilityResult& result, std::ostream& out) {
  out << "trial,solved,depth_rmse,rotation_error_deg,translation_error,"
         "scale_error_rel\r\n";
  for (const StabilityRow& row : result.rows) {
    out << row.trial << ',' << (row.solved ? 1 : 0) << ',';
    write_double(out, row.depth_rmse);
    out << ',';
    write_double(out, row.rotation_error_deg);
    out << ',';
    write_double(out, row.translation_error);
    out << ',';
    write_double(out, row.scale_error_rel);
    out << "\r\n";
  }
}

void write_noise_sweep_csv(const NoiseSweepResult& result, std::ostream& out) {
  out << "noise_sigma_px,run,ransac_ok,ransac_rotation_error_deg,"
         "ransac_translation_error,ransac_scale_error_rel,"
         "ransac_mean_reprojection_error_px,ransac_inlier_recall,"
         "minimal_ok,minimal_rotation_error_deg,minimal_translation_error,"
         "minimal_scale_error_rel,minimal_mean_reprojection_error_px\r\n";
  for (const NoiseSweepRow& row : result.rows) {
    write_double(out, row.noise_sigma_px);
    out << ',' << row.run << ',' << (row.ransac_ok ? 1 : 0) << ',';
    write_double(out, row.ransac.rotation_error_deg);
    out << ',';
    write_double(out, row.ransac.translation_error);
    out << ',';
    write_double(out, row.ransac.scale_error_rel);
    out << ',';
    write_double(out, row.ransac.mean_reprojection_error_px);
    out << ',';
    write_double(out, row.ransac_inlier_recall);
    out << ',' << (row.minimal_ok ? 1 : 0) << ',';
    write_double(out, row.minimal.rotation_error_deg);
    out << ',';
    write_double(out, row.minimal.translation_error);
    out << ',';
    write_double(out, row.minimal.scale_error_rel);
    out << ',';
    write_double(out, row.minimal.mean_reprojection_error_px);
    out << "\r\n";
  }
}

void write_timing_csv(const TimingResult& result, std::ostream& out) {
  out << "trials,coplanar_mean_us,coplanar_median_us,general_mean_us,"
         "general_median_us,median_speedup\r\n";
  out << result.trials << ',';
  write_double(out, result.coplanar_mean_us);
  out << ',';
  write_double(out, result.coplanar_median_us);
  out << ',';
  write_double(out, result.general_mean_us);
  out << ',';
  write_double(out, result.general_median_us);
  out << ',';
  write_double(out, result.median_speedup());
  out << "\r\n";
}

}  // namespace gpas
