#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "engine.hpp"

namespace hga::bench {

/// NC x NR sweep with R seeded runs per cell.
struct GridSpec {
  int order = 12;
  std::int64_t pairs = 1000;
  std::int64_t max_iterations = 10000;
  std::vector<int> nc_values{1, 2, 3, 4};
  std::vector<int> nr_values{1, 2, 3, 4};
  int runs = 10;
  FitnessKind fitness = FitnessKind::F2;
  MutationStrategy mutation = MutationStrategy::Multi;
  Seed seed_base{0};
  int workers = 1;

  void validate() const;
  GAConfig cell_config(int nc, int nr) const;
  /// base + cell_index * runs + run, cells ordered NC-major.
  Seed run_seed(std::size_t cell_index, int run) const;
};

struct GridRow {
  int nc = 0;
  int nr = 0;
  int run_index = 0;
  Seed seed;
  bool success = false;
  std::int64_t iterations = 0;
  double wall_seconds = 0.0;
  std::string error;  // non-empty when the run threw
};

struct GridCell {
  int nc = 0;
  int nr = 0;
  int runs = 0;
  int successes = 0;
  // Statistics over successful runs only; absent when none succeeded.
  std::optional<double> mean_iterations;
  std::optional<std::int64_t> min_iterations;
  std::optional<std::int64_t> max_iterations;
  double mean_wall_seconds = 0.0;
};

struct GridReport {
  GridSpec spec;
  std::vector<GridRow> rows;
  std::vector<GridCell> cells;

  const GridCell& cell(int nc, int nr) const;
};

using RunCallback = std::function<void(const GridRow&)>;

GridReport run_grid(const GridSpec& spec, const RunCallback& on_run = {});

/// Rebuilds per-cell statistics from raw rows.
std::vector<GridCell> summarize(const GridSpec& spec, const std::vector<GridRow>& rows);

/// m,N,T,NC,NR,run_index,seed,success,iterations,wall_seconds
std::string grid_csv(const GridReport& report);

/// Rows NR, columns NC, each cell the mean iterations over successes with
/// the success count; '*' marks cells where most runs failed, '-' cells with
/// no success.
std::string grid_table(const GridReport& report);

struct FitnessBenchSpec {
  std::vector<int> orders{20, 40};
  std::int64_t pairs = 1000;
  std::int64_t iterations = 1000;
  int nc = 4;
  int nr = 2;
  Seed seed{1};
  int repeats = 3;
  int workers = 1;
};

struct FitnessTiming {
  int order = 0;
  double f1_seconds = 0.0;
  double f2_seconds = 0.0;
  std::int64_t f1_iterations = 0;
  std::int64_t f2_iterations = 0;

  double ratio() const noexcept { return f1_seconds > 0.0 ? f2_seconds / f1_seconds : 1.0; }
};

/// Times the full loop under F1 and F2 from the same seed. Legs alternate and
/// each reported time is the fastest of the repeats.
std::vector<FitnessTiming> bench_fitness(const FitnessBenchSpec& spec);

std::string fitness_table(const std::vector<FitnessTiming>& timings);

}  // namespace hga::bench
