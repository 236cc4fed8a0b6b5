#include "hadamard_ga/hga.h"

#include <cstdlib>
#include <cstring>
#include <new>
#include <string>

#include "bench.hpp"
#include "engine.hpp"
#include "errors.hpp"
#include "io.hpp"

struct hga_matrix {
  hga::SignMatrix value;
};

struct hga_config {
  hga::GAConfig value;
  int workers = 1;
};

struct hga_run {
  hga::RunRecord value;
};

struct hga_grid {
  hga::bench::GridReport value;
};

namespace {

thread_local std::string last_error;

hga_status fail(hga_status status, const char* message) {
  last_error = message;
  return status;
}

template <typename Fn>
hga_status guarded(Fn&& fn) noexcept {
  try {
    fn();
    return HGA_OK;
  } catch (const hga::ParseError& e) {
    return fail(HGA_ERR_PARSE, e.what());
  } catch (const hga::ConfigError& e) {
    return fail(HGA_ERR_CONFIG, e.what());
  } catch (const hga::IndexError& e) {
    return fail(HGA_ERR_INDEX, e.what());
  } catch (const hga::SizeLimitError& e) {
    return fail(HGA_ERR_SIZE_LIMIT, e.what());
  } catch (const hga::IoError& e) {
    return fail(HGA_ERR_IO, e.what());
  } catch (const hga::ArgumentError& e) {
    return fail(HGA_ERR_ARGUMENT, e.what());
  } catch (const std::bad_alloc&) {
    return fail(HGA_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(HGA_ERR_INTERNAL, e.what());
  } catch (...) {
    return fail(HGA_ERR_INTERNAL, "unknown error");
  }
}

#define HGA_REQUIRE(cond) \
  if (!(cond)) return fail(HGA_ERR_ARGUMENT, "invalid argument: " #cond)

char* duplicate(const std::string& text) {
  char* out = static_cast<char*>(std::malloc(text.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, text.c_str(), text.size() + 1);
  return out;
}

std::optional<std::string> optional_string(const char* text) {
  return text ? std::optional<std::string>(text) : std::nullopt;
}

hga_run_summary summarize(const hga::RunRecord& r) {
  return {r.success ? 1 : 0, r.incomplete ? 1 : 0, r.iterations, r.best_fitness,
          r.seed.value,      r.wall_seconds,       r.restarts};
}

std::optional<hga::FitnessKind> to_kind(hga_fitness fitness) {
  if (fitness == HGA_FITNESS_F1) return hga::FitnessKind::F1;
  if (fitness == HGA_FITNESS_F2) return hga::FitnessKind::F2;
  return std::nullopt;
}

std::optional<hga::MutationStrategy> to_strategy(hga_mutation mutation) {
  switch (mutation) {
    case HGA_MUTATION_SHARED:
      return hga::MutationStrategy::Shared;
    case HGA_MUTATION_PER_MATRIX:
      return hga::MutationStrategy::PerMatrix;
    case HGA_MUTATION_MULTI:
      return hga::MutationStrategy::Multi;
  }
  return std::nullopt;
}

}  // namespace

extern "C" {

const char* hga_version(void) { return "1.0.0"; }

const char* hga_status_name(hga_status status) {
  switch (status) {
    case HGA_OK:
      return "ok";
    case HGA_ERR_ARGUMENT:
      return "argument error";
    case HGA_ERR_CONFIG:
      return "configuration error";
    case HGA_ERR_INDEX:
      return "index error";
    case HGA_ERR_PARSE:
      return "parse error";
    case HGA_ERR_SIZE_LIMIT:
      return "size limit exceeded";
    case HGA_ERR_IO:
      return "i/o error";
    case HGA_ERR_INTERNAL:
      return "internal error";
  }
  return "unknown status";
}

const char* hga_last_error(void) { return last_error.c_str(); }

void hga_string_free(char* text) { std::free(text); }

hga_status hga_matrix_from_entries(int32_t order, const int8_t* entries, hga_matrix** out) {
  HGA_REQUIRE(entries && out && order >= 1);
  return guarded([&] {
    const std::size_t count = static_cast<std::size_t>(order) * order;
    *out = new hga_matrix{hga::SignMatrix::from_entries(order, std::vector<hga::Sign>(entries, entries + count))};
  });
}

hga_status hga_matrix_sylvester(uint32_t power, hga_matrix** out) {
  HGA_REQUIRE(out);
  return guarded([&] { *out = new hga_matrix{hga::sylvester(power)}; });
}

hga_status hga_matrix_parse(const char* text, hga_matrix** out) {
  HGA_REQUIRE(text && out);
  return guarded([&] { *out = new hga_matrix{hga::io::parse_matrix(text)}; });
}

hga_status hga_matrix_read_file(const char* path, hga_matrix** out) {
  HGA_REQUIRE(path && out);
  return guarded([&] { *out = new hga_matrix{hga::io::read_matrix_file(path)}; });
}

hga_status hga_matrix_to_text(const hga_matrix* matrix, char** out_text) {
  HGA_REQUIRE(matrix && out_text);
  return guarded([&] { *out_text = duplicate(hga::io::write_matrix(matrix->value)); });
}

hga_status hga_matrix_write_file(const hga_matrix* matrix, const char* path) {
  HGA_REQUIRE(matrix && path);
  return guarded([&] { hga::io::write_matrix_file(path, matrix->value); });
}

int32_t hga_matrix_order(const hga_matrix* matrix) { return matrix ? matrix->value.order() : 0; }

hga_status hga_matrix_get_entries(const hga_matrix* matrix, int8_t* buffer, size_t capacity) {
  HGA_REQUIRE(matrix && buffer);
  const auto entries = matrix->value.entries();
  HGA_REQUIRE(capacity >= entries.size());
  std::memcpy(buffer, entries.data(), entries.size());
  return HGA_OK;
}

hga_status hga_matrix_set_entry(hga_matrix* matrix, int32_t row, int32_t col, int8_t value) {
  HGA_REQUIRE(matrix);
  const int m = matrix->value.order();
  if (row < 0 || row >= m || col < 0 || col >= m) return fail(HGA_ERR_INDEX, "entry index outside the matrix");
  HGA_REQUIRE(value == 1 || value == -1);
  matrix->value(row, col) = value;
  return HGA_OK;
}

hga_status hga_matrix_analyze(const hga_matrix* matrix, hga_matrix_report* out) {
  HGA_REQUIRE(matrix && out);
  return guarded([&] {
    const hga::SignMatrixView q = matrix->value;
    *out = {hga::fitness_f1(q), hga::fitness_f2(q), hga::max_abs_off_diagonal(q), hga::is_hadamard(q) ? 1 : 0};
  });
}

void hga_matrix_destroy(hga_matrix* matrix) { delete matrix; }

hga_status hga_config_create(hga_config** out) {
  HGA_REQUIRE(out);
  return guarded([&] { *out = new hga_config{}; });
}

hga_status hga_config_set_order(hga_config* config, int32_t order) {
  HGA_REQUIRE(config);
  config->value.order = order;
  return HGA_OK;
}

hga_status hga_config_set_pairs(hga_config* config, int64_t pairs) {
  HGA_REQUIRE(config);
  config->value.pairs = pairs;
  return HGA_OK;
}

hga_status hga_config_set_max_iterations(hga_config* config, int64_t max_iterations) {
  HGA_REQUIRE(config);
  config->value.max_iterations = max_iterations;
  return HGA_OK;
}

hga_status hga_config_set_nc(hga_config* config, int32_t nc) {
  HGA_REQUIRE(config);
  config->value.nc = nc;
  return HGA_OK;
}

hga_status hga_config_set_nr(hga_config* config, int32_t nr) {
  HGA_REQUIRE(config);
  config->value.nr = nr;
  return HGA_OK;
}

hga_status hga_config_set_fitness(hga_config* config, hga_fitness fitness) {
  HGA_REQUIRE(config);
  const auto kind = to_kind(fitness);
  HGA_REQUIRE(kind.has_value());
  config->value.fitness = *kind;
  return HGA_OK;
}

hga_status hga_config_set_mutation(hga_config* config, hga_mutation mutation) {
  HGA_REQUIRE(config);
  const auto strategy = to_strategy(mutation);
  HGA_REQUIRE(strategy.has_value());
  config->value.mutation = *strategy;
  return HGA_OK;
}

hga_status hga_config_set_seed(hga_config* config, uint64_t seed) {
  HGA_REQUIRE(config);
  config->value.seed = hga::Seed{seed};
  return HGA_OK;
}

hga_status hga_config_clear_seed(hga_config* config) {
  HGA_REQUIRE(config);
  config->value.seed.reset();
  return HGA_OK;
}

hga_status hga_config_set_stall_window(hga_config* config, int32_t window) {
  HGA_REQUIRE(config && window >= 0);
  if (window == 0) {
    config->value.stall_window.reset();
  } else {
    config->value.stall_window = window;
  }
  return HGA_OK;
}

hga_status hga_config_set_time_budget(hga_config* config, double seconds) {
  HGA_REQUIRE(config);
  if (seconds > 0.0) {
    config->value.time_budget_secs = seconds;
  } else {
    config->value.time_budget_secs.reset();
  }
  return HGA_OK;
}

hga_status hga_config_set_workers(hga_config* config, int32_t workers) {
  HGA_REQUIRE(config && workers >= 1);
  config->workers = workers;
  return HGA_OK;
}

hga_status hga_config_validate(const hga_config* config) {
  HGA_REQUIRE(config);
  return guarded([&] { config->value.validate(); });
}

hga_status hga_parse_seed(const char* text, uint64_t* out) {
  HGA_REQUIRE(text && out);
  const auto seed = hga::parse_seed(text);
  if (!seed) return fail(HGA_ERR_ARGUMENT, "seed must be a decimal or 0x-hex 64-bit integer");
  *out = seed->value;
  return HGA_OK;
}

void hga_config_destroy(hga_config* config) { delete config; }

hga_status hga_search(const hga_config* config, hga_run** out) {
  HGA_REQUIRE(config && out);
  return guarded([&] { *out = new hga_run{hga::run_search(config->value, hga::RunOptions{config->workers})}; });
}

hga_status hga_run_get_summary(const hga_run* run, hga_run_summary* out) {
  HGA_REQUIRE(run && out);
  *out = summarize(run->value);
  return HGA_OK;
}

hga_status hga_run_best_matrix(const hga_run* run, hga_matrix** out) {
  HGA_REQUIRE(run && out);
  return guarded([&] { *out = new hga_matrix{run->value.best}; });
}

hga_status hga_run_trace(const hga_run* run, int64_t* buffer, size_t capacity, size_t* length) {
  HGA_REQUIRE(run && length && (buffer || capacity == 0));
  const auto& trace = run->value.trace;
  *length = trace.size();
  const std::size_t n = std::min(capacity, trace.size());
  std::copy(trace.begin(), trace.begin() + static_cast<std::ptrdiff_t>(n), buffer);
  return HGA_OK;
}

hga_status hga_run_record_json(const hga_run* run, const char* trace_ref, char** out_json) {
  HGA_REQUIRE(run && out_json);
  return guarded([&] { *out_json = duplicate(hga::io::write_run_record(run->value, optional_string(trace_ref))); });
}

hga_status hga_run_write_record(const hga_run* run, const char* path, const char* trace_ref) {
  HGA_REQUIRE(run && path);
  return guarded([&] { hga::io::write_run_record_file(path, run->value, optional_string(trace_ref)); });
}

hga_status hga_run_write_trace(const hga_run* run, const char* path) {
  HGA_REQUIRE(run && path);
  return guarded([&] { hga::io::write_trace_file(path, run->value.trace); });
}

void hga_run_destroy(hga_run* run) { delete run; }

hga_status hga_run_record_verify_file(const char* path, hga_run_summary* out) {
  HGA_REQUIRE(path && out);
  return guarded([&] { *out = summarize(hga::io::read_run_record_file(path).record); });
}

hga_status hga_grid_run(const hga_grid_spec* spec, hga_grid_progress progress, void* user, hga_grid** out) {
  HGA_REQUIRE(spec && out && spec->nc_values && spec->nr_values);
  const auto kind = to_kind(spec->fitness);
  const auto strategy = to_strategy(spec->mutation);
  HGA_REQUIRE(kind && strategy);
  return guarded([&] {
    hga::bench::GridSpec grid;
    grid.order = spec->order;
    grid.pairs = spec->pairs;
    grid.max_iterations = spec->max_iterations;
    grid.nc_values.assign(spec->nc_values, spec->nc_values + spec->nc_count);
    grid.nr_values.assign(spec->nr_values, spec->nr_values + spec->nr_count);
    grid.runs = spec->runs;
    grid.fitness = *kind;
    grid.mutation = *strategy;
    grid.seed_base = hga::Seed{spec->seed_base};
    grid.workers = spec->workers < 1 ? 1 : spec->workers;
    hga::bench::RunCallback callback;
    if (progress) {
      callback = [&](const hga::bench::GridRow& row) {
        const hga_grid_row c_row{row.nc,         row.nr,         row.run_index,   row.seed.value,
                                 row.success ? 1 : 0, row.iterations, row.wall_seconds};
        progress(&c_row, user);
      };
    }
    *out = new hga_grid{hga::bench::run_grid(grid, callback)};
  });
}

size_t hga_grid_cell_count(const hga_grid* grid) { return grid ? grid->value.cells.size() : 0; }

hga_status hga_grid_get_cell(const hga_grid* grid, size_t index, hga_grid_cell* out) {
  HGA_REQUIRE(grid && out);
  if (index >= grid->value.cells.size()) return fail(HGA_ERR_INDEX, "grid cell index out of range");
  const auto& c = grid->value.cells[index];
  *out = {c.nc,
          c.nr,
          c.runs,
          c.successes,
          c.mean_iterations ? 1 : 0,
          c.mean_iterations.value_or(0.0),
          c.min_iterations.value_or(0),
          c.max_iterations.value_or(0),
          c.mean_wall_seconds};
  return HGA_OK;
}

size_t hga_grid_row_count(const hga_grid* grid) { return grid ? grid->value.rows.size() : 0; }

hga_status hga_grid_get_row(const hga_grid* grid, size_t index, hga_grid_row* out) {
  HGA_REQUIRE(grid && out);
  if (index >= grid->value.rows.size()) return fail(HGA_ERR_INDEX, "grid row index out of range");
  const auto& r = grid->value.rows[index];
  *out = {r.nc, r.nr, r.run_index, r.seed.value, r.success ? 1 : 0, r.iterations, r.wall_seconds};
  return HGA_OK;
}

hga_status hga_grid_csv(const hga_grid* grid, char** out_csv) {
  HGA_REQUIRE(grid && out_csv);
  return guarded([&] { *out_csv = duplicate(hga::bench::grid_csv(grid->value)); });
}

hga_status hga_grid_table(const hga_grid* grid, char** out_table) {
  HGA_REQUIRE(grid && out_table);
  return guarded([&] { *out_table = duplicate(hga::bench::grid_table(grid->value)); });
}

void hga_grid_destroy(hga_grid* grid) { delete grid; }

hga_status hga_bench_fitness(const hga_fitness_bench_spec* spec, hga_fitness_timing* out, size_t capacity) {
  HGA_REQUIRE(spec && out && spec->orders && capacity >= spec->order_count);
  return guarded([&] {
    hga::bench::FitnessBenchSpec bench;
    bench.orders.assign(spec->orders, spec->orders + spec->order_count);
    bench.pairs = spec->pairs;
    bench.iterations = spec->iterations;
    bench.nc = spec->nc;
    bench.nr = spec->nr;
    bench.seed = hga::Seed{spec->seed};
    bench.repeats = spec->repeats;
    bench.workers = spec->workers < 1 ? 1 : spec->workers;
    const auto timings = hga::bench::bench_fitness(bench);
    for (std::size_t i = 0; i < timings.size(); ++i) {
      const auto& t = timings[i];
      out[i] = {t.order, t.f1_seconds, t.f2_seconds, t.ratio(), t.f1_iterations, t.f2_iterations};
    }
  });
}

}  // extern "C"
