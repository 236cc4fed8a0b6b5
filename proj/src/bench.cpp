#include "bench.hpp"

#include <algorithm>
#include <cstdio>
#include <limits>

#include "errors.hpp"

namespace hga::bench {

void GridSpec::validate() const {
  if (runs < 1) throw ConfigError("runs per cell must be at least 1");
  if (nc_values.empty() || nr_values.empty()) throw ConfigError("NC and NR value lists must be non-empty");
  for (int nc : nc_values) {
    for (int nr : nr_values) cell_config(nc, nr).validate();
  }
}

GAConfig GridSpec::cell_config(int nc, int nr) const {
  GAConfig config;
  config.order = order;
  config.pairs = pairs;
  config.max_iterations = max_iterations;
  config.nc = nc;
  config.nr = nr;
  config.fitness = fitness;
  config.mutation = mutation;
  return config;
}

Seed GridSpec::run_seed(std::size_t cell_index, int run) const {
  return Seed{seed_base.value + cell_index * static_cast<std::uint64_t>(runs) + static_cast<std::uint64_t>(run)};
}

const GridCell& GridReport::cell(int nc, int nr) const {
  for (const auto& c : cells) {
    if (c.nc == nc && c.nr == nr) return c;
  }
  throw ArgumentError("no grid cell NC=" + std::to_string(nc) + " NR=" + std::to_string(nr));
}

GridReport run_grid(const GridSpec& spec, const RunCallback& on_run) {
  spec.validate();
  GridReport report{spec, {}, {}};
  std::size_t cell_index = 0;
  for (int nc : spec.nc_values) {
    for (int nr : spec.nr_values) {
      for (int run = 0; run < spec.runs; ++run) {
        GridRow row;
        row.nc = nc;
        row.nr = nr;
        row.run_index = run;
        row.seed = spec.run_seed(cell_index, run);
        try {
          GAConfig config = spec.cell_config(nc, nr);
          config.seed = row.seed;
          const RunRecord record = run_search(config, RunOptions{spec.workers});
          row.success = record.success;
          row.iterations = record.iterations;
          row.wall_seconds = record.wall_seconds;
        } catch (const std::exception& e) {
          row.error = e.what();
        }
        if (on_run) on_run(row);
        report.rows.push_back(std::move(row));
      }
      ++cell_index;
    }
  }
  report.cells = summarize(spec, report.rows);
  return report;
}

std::vector<GridCell> summarize(const GridSpec& spec, const std::vector<GridRow>& rows) {
  std::vector<GridCell> cells;
  for (int nc : spec.nc_values) {
    for (int nr : spec.nr_values) {
      GridCell cell;
      cell.nc = nc;
      cell.nr = nr;
      double iteration_sum = 0.0;
      double wall_sum = 0.0;
      for (const auto& row : rows) {
        if (row.nc != nc || row.nr != nr) continue;
        ++cell.runs;
        wall_sum += row.wall_seconds;
        if (!row.success) continue;
        ++cell.successes;
        iteration_sum += static_cast<double>(row.iterations);
        cell.min_iterations = std::min(cell.min_iterations.value_or(row.iterations), row.iterations);
        cell.max_iterations = std::max(cell.max_iterations.value_or(row.iterations), row.iterations);
      }
      if (cell.successes > 0) cell.mean_iterations = iteration_sum / cell.successes;
      if (cell.runs > 0) cell.mean_wall_seconds = wall_sum / cell.runs;
      cells.push_back(cell);
    }
  }
  return cells;
}

std::string grid_csv(const GridReport& report) {
  const GridSpec& s = report.spec;
  std::string out = "m,N,T,NC,NR,run_index,seed,success,iterations,wall_seconds\n";
  char buffer[256];
  for (const auto& row : report.rows) {
    std::snprintf(buffer, sizeof buffer, "%d,%lld,%lld,%d,%d,%d,%llu,%d,%lld,%.6f\n", s.order,
                  static_cast<long long>(s.pairs), static_cast<long long>(s.max_iterations), row.nc, row.nr,
                  row.run_index, static_cast<unsigned long long>(row.seed.value), row.success ? 1 : 0,
                  static_cast<long long>(row.iterations), row.wall_seconds);
    out += buffer;
  }
  return out;
}

std::string grid_table(const GridReport& report) {
  const GridSpec& s = report.spec;
  char buffer[128];
  std::snprintf(buffer, sizeof buffer, "Average iterations, %dx%d, N=%lld, T=%lld, R=%d\n", s.order, s.order,
                static_cast<long long>(s.pairs), static_cast<long long>(s.max_iterations), s.runs);
  std::string out = buffer;
  std::snprintf(buffer, sizeof buffer, "%-6s", "NR\\NC");
  out += buffer;
  for (int nc : s.nc_values) {
    std::snprintf(buffer, sizeof buffer, " %16d", nc);
    out += buffer;
  }
  out += '\n';
  for (int nr : s.nr_values) {
    std::snprintf(buffer, sizeof buffer, "%-6d", nr);
    out += buffer;
    for (int nc : s.nc_values) {
      const GridCell& cell = report.cell(nc, nr);
      std::string text;
      if (cell.mean_iterations) {
        std::snprintf(buffer, sizeof buffer, "%.1f%s (%d/%d)", *cell.mean_iterations,
                      2 * cell.successes < cell.runs ? "*" : "", cell.successes, cell.runs);
        text = buffer;
      } else {
        std::snprintf(buffer, sizeof buffer, "- (0/%d)", cell.runs);
        text = buffer;
      }
      std::snprintf(buffer, sizeof buffer, " %16s", text.c_str());
      out += buffer;
    }
    out += '\n';
  }
  return out;
}

std::vector<FitnessTiming> bench_fitness(const FitnessBenchSpec& spec) {
  if (spec.repeats < 1) throw ConfigError("repeats must be at least 1");
  std::vector<FitnessTiming> timings;
  for (int order : spec.orders) {
    GAConfig config;
    config.order = order;
    config.pairs = spec.pairs;
    config.max_iterations = spec.iterations;
    config.nc = spec.nc;
    config.nr = spec.nr;
    config.mutation = MutationStrategy::Multi;
    config.seed = spec.seed;
    config.validate();

    FitnessTiming timing;
    timing.order = order;
    timing.f1_seconds = timing.f2_seconds = std::numeric_limits<double>::infinity();
    for (int rep = 0; rep < spec.repeats; ++rep) {
      for (FitnessKind kind : {FitnessKind::F1, FitnessKind::F2}) {
        config.fitness = kind;
        const RunRecord record = run_search(config, RunOptions{spec.workers});
        if (kind == FitnessKind::F1) {
          timing.f1_seconds = std::min(timing.f1_seconds, record.wall_seconds);
          timing.f1_iterations = record.iterations;
        } else {
          timing.f2_seconds = std::min(timing.f2_seconds, record.wall_seconds);
          timing.f2_iterations = record.iterations;
        }
      }
    }
    timings.push_back(timing);
  }
  return timings;
}

std::string fitness_table(const std::vector<FitnessTiming>& timings) {
  std::string out = "order      F1 (s)      F2 (s)   F2/F1   iters F1/F2\n";
  char buffer[160];
  for (const auto& t : timings) {
    std::snprintf(buffer, sizeof buffer, "%5d %11.4f %11.4f %7.4f   %lld/%lld\n", t.order, t.f1_seconds, t.f2_seconds,
                  t.ratio(), static_cast<long long>(t.f1_iterations), static_cast<long long>(t.f2_iterations));
    out += buffer;
  }
  return out;
}

}  // namespace hga::bench
