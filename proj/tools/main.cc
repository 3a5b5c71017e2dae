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

#include <map>
#include <string>

#include <CLI11.hpp>

#include "commands.h"

namespace {

using gpas::SceneRecipe;
using gpas::SolverVariant;

void add_variant_options(CLI::App* app, SolverVariant* variant) {
  const std::map<std::string, SolverVariant::Alignment> alignments{
      {"plus-s", SolverVariant::Alignment::kPlusS},
      {"plus-a", SolverVariant::Alignment::kPlusA}};
  app->add_option("--variant", variant->alignment,
                  "Model fitted per hypothesis: plus-s (similarity) or "
                  "plus-a (affine)")
      ->transform(CLI::CheckedTransformer(alignments, CLI::ignore_case))
      ->default_str("plus-s");

  const std::map<int, SolverVariant::Permutations> permutations{
      {1, SolverVariant::Permutations::kOneP},
      {6, SolverVariant::Permutations::kSixP}};
  app->add_option("--permutations", variant->permutations,
                  "Line pairings tried per sample: 1 or 6")
      ->transform(CLI::CheckedTransformer(permutations))
      ->default_str("1");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Similarity-transform estimation from point-to-ray "
               "correspondences of a generalized camera"};
  app.require_subcommand(1);

  gpas::cli::SolveArgs solve_args;
  CLI::App* solve = app.add_subcommand(
      "solve", "Run robust estimation on a scene file");
  solve->add_option("scene", solve_args.scene_path, "Input scene JSON")
      ->required();
  solve->add_option("-o,--out", solve_args.output_path, "Output result JSON")
      ->default_val("result.json");
  solve->add_option("--iterations", solve_args.config.iterations,
                    "Number of sampling iterations")
      ->default_val(1000);
  solve->add_option("--threshold-px", solve_args.config.inlier_threshold_px,
                    "Inlier reprojection threshold in pixels")
      ->default_val(2.5);
  solve->add_option("--seed", solve_args.config.seed, "Random seed")
      ->default_val(0);
  add_variant_options(solve, &solve_args.config.variant);

  gpas::cli::GenerateArgs generate_args;
  CLI::App* generate = app.add_subcommand(
      "generate", "Write a synthetic scene file");
  generate->add_option("out", generate_args.output_path, "Output scene JSON")
      ->required();
  generate->add_option("--points", generate_args.recipe.num_points,
                       "Number of world points")
      ->default_val(100);
  generate->add_option("--cameras", generate_args.recipe.num_cameras,
                       "Number of pinhole cameras in the rig")
      ->default_val(10);
  generate->add_option("--noise-px", generate_args.recipe.noise_sigma_px,
                       "Gaussian pixel noise sigma")
      ->default_val(0.0);
  generate->add_option("--outlier-fraction",
                       generate_args.recipe.outlier_fraction,
                       "Fraction of observations replaced by random pixels")
      ->check(CLI::Range(0.0, 1.0))
      ->default_val(0.0);
  generate->add_flag_callback(
      "--coplanar",
      [&generate_args] { generate_args.recipe.coplanar = true; },
      "Place all points on one random plane");
  generate->add_flag_callback(
      "--random-transform",
      [&generate_args] {
        generate_args.recipe.transform =
            SceneRecipe::Transform::kRandomSimilarity;
      },
      "Displace the stored world points by a random similarity");
  generate->add_option("--seed", generate_args.recipe.seed, "Random seed")
      ->default_val(0);

  gpas::cli::BenchArgs bench_args;
  CLI::App* bench = app.add_subcommand(
      "bench", "Run a benchmark suite and write CSV plus summary JSON");
  bench->require_subcommand(1);
  // Lets the shared options above appear after the suite name as well.
  bench->fallthrough();
  bench->add_option("--out-dir", bench_args.out_dir, "Output directory")
      ->default_val(".");
  bench->add_option("--seed", bench_args.seed, "Random seed")
      ->default_val(0);
  bench->add_option("--trials", bench_args.trials,
                    "Trials for stability, coplanar, and timing suites")
      ->default_val(100);
  bench->add_option("--runs-per-level", bench_args.runs_per_level,
                    "Runs per noise level or outlier fraction")
      ->default_val(20);
  bench->add_option("--iterations", bench_args.config.iterations,
                    "Sampling iterations for robust suites")
      ->default_val(1000);
  bench->add_option("--threshold-px", bench_args.config.inlier_threshold_px,
                    "Inlier reprojection threshold in pixels")
      ->default_val(2.5);
  add_variant_options(bench, &bench_args.variant);

  CLI::App* stability = bench->add_subcommand(
      "stability", "Minimal-solver accuracy on fresh random scenes");
  CLI::App* noise = bench->add_subcommand(
      "noise", "Robust and raw minimal accuracy across pixel noise levels");
  CLI::App* ransac = bench->add_subcommand(
      "ransac", "Robust accuracy across outlier fractions");
  CLI::App* coplanar = bench->add_subcommand(
      "coplanar", "Coplanar-path accuracy and speedup on planar scenes");
  CLI::App* timing = bench->add_subcommand(
      "timing", "Coplanar against general solve time on matched inputs");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? gpas::cli::kExitSuccess : gpas::cli::kExitInputError;
  }

  if (*solve) {
    return gpas::cli::cmd_solve(solve_args);
  }
  if (*generate) {
    return gpas::cli::cmd_generate(generate_args);
  }
  if (*bench) {
    bench_args.config.seed = bench_args.seed;
    bench_args.config.variant = bench_args.variant;
    if (*stability) {
      return gpas::cli::cmd_bench_stability(bench_args);
    }
    if (*noise) {
      return gpas::cli::cmd_bench_noise(bench_args);
    }
    if (*ransac) {
      return gpas::cli::cmd_bench_ransac(bench_args);
    }
    if (*coplanar) {
      return gpas::cli::cmd_bench_coplanar(bench_args);
    }
    if (*timing) {
      return gpas::cli::cmd_bench_timing(bench_args);
    }
  }
  return gpas::cli::kExitInputError;
}
