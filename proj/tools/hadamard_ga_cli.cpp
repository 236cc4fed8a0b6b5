// Command-line front end over the hadamard_ga C API.
//
// Exit codes:
//   0  success (Hadamard matrix found / verified / file written)
//   1  invalid flags or unparsable input
//   2  search budget exhausted without finding a Hadamard matrix
//   3  verify: the matrix is not Hadamard
//   4  file could not be read or written
//   5  internal error

#include <cstdio>
#include <iostream>
#include <iterator>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "hadamard_ga/hga.h"

namespace {

enum Exit : int {
  kOk = 0,
  kUsage = 1,
  kExhausted = 2,
  kNotHadamard = 3,
  kIo = 4,
  kInternal = 5,
};

struct MatrixDeleter {
  void operator()(hga_matrix* m) const { hga_matrix_destroy(m); }
};
struct ConfigDeleter {
  void operator()(hga_config* c) const { hga_config_destroy(c); }
};
struct RunDeleter {
  void operator()(hga_run* r) const { hga_run_destroy(r); }
};
struct GridDeleter {
  void operator()(hga_grid* g) const { hga_grid_destroy(g); }
};
struct StringDeleter {
  void operator()(char* s) const { hga_string_free(s); }
};

using MatrixPtr = std::unique_ptr<hga_matrix, MatrixDeleter>;
using ConfigPtr = std::unique_ptr<hga_config, ConfigDeleter>;
using RunPtr = std::unique_ptr<hga_run, RunDeleter>;
using GridPtr = std::unique_ptr<hga_grid, GridDeleter>;
using StringPtr = std::unique_ptr<char, StringDeleter>;

int exit_for(hga_status status) {
  switch (status) {
    case HGA_OK:
      return kOk;
    case HGA_ERR_IO:
      return kIo;
    case HGA_ERR_INTERNAL:
      return kInternal;
    default:
      return kUsage;
  }
}

int report(hga_status status, const std::string& context) {
  std::cerr << "hadamard-ga: " << context << ": " << hga_last_error() << "\n";
  return exit_for(status);
}

std::optional<hga_fitness> fitness_from(const std::string& name) {
  if (name == "f1" || name == "F1") return HGA_FITNESS_F1;
  if (name == "f2" || name == "F2") return HGA_FITNESS_F2;
  return std::nullopt;
}

std::optional<hga_mutation> mutation_from(const std::string& name) {
  if (name == "shared") return HGA_MUTATION_SHARED;
  if (name == "per-matrix") return HGA_MUTATION_PER_MATRIX;
  if (name == "multi") return HGA_MUTATION_MULTI;
  return std::nullopt;
}

// CLI11 validator accepting decimal or 0x-hex seeds.
struct SeedValidator : CLI::Validator {
  SeedValidator() {
    name_ = "SEED";
    func_ = [](const std::string& text) {
      std::uint64_t value = 0;
      return hga_parse_seed(text.c_str(), &value) == HGA_OK ? std::string() : std::string(hga_last_error());
    };
  }
};

std::uint64_t parse_seed_or_zero(const std::string& text) {
  std::uint64_t value = 0;
  hga_parse_seed(text.c_str(), &value);
  return value;
}

struct SearchFlags {
  int order = 0;
  int k = 0;
  long long population = 1000;
  long long max_iter = 100000;
  int nc = 1;
  int nr = 2;
  std::string fitness = "f2";
  std::string mutation = "multi";
  std::string seed;
  std::string out;
  std::string trace;
  int stall_window = 0;
  double time_budget = 0.0;
  int workers = 1;
};

int cmd_search(const SearchFlags& flags) {
  if (flags.order == 0 && flags.k == 0) {
    std::cerr << "hadamard-ga: search: one of --order or --k is required\n";
    return kUsage;
  }
  const int order = flags.order != 0 ? flags.order : 4 * flags.k;

  hga_config* raw = nullptr;
  if (auto s = hga_config_create(&raw); s != HGA_OK) return report(s, "search");
  ConfigPtr config(raw);
  hga_config_set_order(config.get(), order);
  hga_config_set_pairs(config.get(), flags.population);
  hga_config_set_max_iterations(config.get(), flags.max_iter);
  hga_config_set_nc(config.get(), flags.nc);
  hga_config_set_nr(config.get(), flags.nr);
  hga_config_set_fitness(config.get(), *fitness_from(flags.fitness));
  hga_config_set_mutation(config.get(), *mutation_from(flags.mutation));
  if (!flags.seed.empty()) hga_config_set_seed(config.get(), parse_seed_or_zero(flags.seed));
  hga_config_set_stall_window(config.get(), flags.stall_window);
  hga_config_set_time_budget(config.get(), flags.time_budget);
  hga_config_set_workers(config.get(), flags.workers);
  if (auto s = hga_config_validate(config.get()); s != HGA_OK) {
    std::cerr << "hadamard-ga: search: " << hga_last_error() << "\nRun with --help for usage.\n";
    return kUsage;
  }

  hga_run* run_raw = nullptr;
  if (auto s = hga_search(config.get(), &run_raw); s != HGA_OK) return report(s, "search");
  RunPtr run(run_raw);

  hga_run_summary summary{};
  hga_run_get_summary(run.get(), &summary);

  if (!flags.trace.empty()) {
    if (auto s = hga_run_write_trace(run.get(), flags.trace.c_str()); s != HGA_OK) return report(s, "trace");
  }
  if (!flags.out.empty()) {
    const char* trace_ref = flags.trace.empty() ? nullptr : flags.trace.c_str();
    if (auto s = hga_run_write_record(run.get(), flags.out.c_str(), trace_ref); s != HGA_OK) {
      return report(s, "record");
    }
  }

  std::printf("order: %d\nseed: %llu (0x%llx)\niterations: %lld\nfinal_min_fitness: %lld\nsuccess: %s\n",
              order, static_cast<unsigned long long>(summary.seed), static_cast<unsigned long long>(summary.seed),
              static_cast<long long>(summary.iterations), static_cast<long long>(summary.best_fitness),
              summary.success ? "true" : "false");
  if (summary.incomplete) std::printf("incomplete: time budget exhausted\n");
  if (summary.restarts > 0) std::printf("restarts: %lld\n", static_cast<long long>(summary.restarts));
  std::printf("wall_seconds: %.3f\n", summary.wall_seconds);
  if (summary.success) {
    hga_matrix* best_raw = nullptr;
    if (hga_run_best_matrix(run.get(), &best_raw) == HGA_OK) {
      MatrixPtr best(best_raw);
      char* text = nullptr;
      if (hga_matrix_to_text(best.get(), &text) == HGA_OK) {
        StringPtr owned(text);
        std::fputs(text, stdout);
      }
    }
  }
  return summary.success ? kOk : kExhausted;
}

int cmd_verify(const std::string& path) {
  hga_matrix* raw = nullptr;
  hga_status status;
  if (path == "-") {
    std::string text((std::istreambuf_iterator<char>(std::cin)), std::istreambuf_iterator<char>());
    status = hga_matrix_parse(text.c_str(), &raw);
  } else {
    status = hga_matrix_read_file(path.c_str(), &raw);
  }
  if (status != HGA_OK) return report(status, "verify " + path);
  MatrixPtr matrix(raw);
  hga_matrix_report result{};
  if (auto s = hga_matrix_analyze(matrix.get(), &result); s != HGA_OK) return report(s, "verify");
  std::printf("order: %d\nF1=%lld\nF2=%lld\nmax_abs_off_diagonal=%d\nhadamard: %s\n", hga_matrix_order(matrix.get()),
              static_cast<long long>(result.fitness_f1), static_cast<long long>(result.fitness_f2),
              result.max_abs_off_diagonal, result.is_hadamard ? "yes" : "no");
  return result.is_hadamard ? kOk : kNotHadamard;
}

int cmd_sylvester(unsigned power, const std::string& out) {
  hga_matrix* raw = nullptr;
  if (auto s = hga_matrix_sylvester(power, &raw); s != HGA_OK) return report(s, "sylvester");
  MatrixPtr matrix(raw);
  if (!out.empty() && out != "-") {
    if (auto s = hga_matrix_write_file(matrix.get(), out.c_str()); s != HGA_OK) return report(s, "sylvester");
    return kOk;
  }
  char* text = nullptr;
  if (auto s = hga_matrix_to_text(matrix.get(), &text); s != HGA_OK) return report(s, "sylvester");
  StringPtr owned(text);
  std::fputs(text, stdout);
  return kOk;
}

struct GridFlags {
  int order = 12;
  long long population = 1000;
  long long max_iter = 10000;
  std::vector<int> nc_values{1, 2, 3, 4};
  std::vector<int> nr_values{1, 2, 3, 4};
  int runs = 10;
  std::string fitness = "f2";
  std::string mutation = "multi";
  std::string seed_base = "0";
  std::string csv;
  int workers = 1;
  bool quiet = false;
};

void print_progress(const hga_grid_row* row, void*) {
  std::fprintf(stderr, "NC=%d NR=%d run=%d seed=%llu %s iterations=%lld (%.2fs)\n", row->nc, row->nr, row->run_index,
               static_cast<unsigned long long>(row->seed), row->success ? "found" : "failed",
               static_cast<long long>(row->iterations), row->wall_seconds);
}

int cmd_bench_grid(const GridFlags& flags) {
  const hga_grid_spec spec{flags.order,
                           flags.population,
                           flags.max_iter,
                           flags.nc_values.data(),
                           flags.nc_values.size(),
                           flags.nr_values.data(),
                           flags.nr_values.size(),
                           flags.runs,
                           *fitness_from(flags.fitness),
                           *mutation_from(flags.mutation),
                           parse_seed_or_zero(flags.seed_base),
                           flags.workers};
  hga_grid* raw = nullptr;
  if (auto s = hga_grid_run(&spec, flags.quiet ? nullptr : print_progress, nullptr, &raw); s != HGA_OK) {
    return report(s, "bench grid");
  }
  GridPtr grid(raw);
  if (!flags.csv.empty()) {
    char* csv = nullptr;
    if (auto s = hga_grid_csv(grid.get(), &csv); s != HGA_OK) return report(s, "bench grid");
    StringPtr owned(csv);
    std::FILE* f = std::fopen(flags.csv.c_str(), "wb");
    if (!f || std::fputs(csv, f) < 0) {
      if (f) std::fclose(f);
      std::cerr << "hadamard-ga: bench grid: cannot write " << flags.csv << "\n";
      return kIo;
    }
    std::fclose(f);
  }
  char* table = nullptr;
  if (auto s = hga_grid_table(grid.get(), &table); s != HGA_OK) return report(s, "bench grid");
  StringPtr owned(table);
  std::fputs(table, stdout);
  return kOk;
}

struct FitnessFlags {
  std::vector<int> orders{20, 40};
  long long population = 1000;
  long long iterations = 1000;
  int nc = 4;
  int nr = 2;
  std::string seed = "1";
  int repeats = 3;
  int workers = 1;
  bool long_mode = false;
};

int cmd_bench_fitness(FitnessFlags flags) {
  if (flags.long_mode) {
    flags.population = 10000;
    flags.iterations = 10000;
  }
  const hga_fitness_bench_spec spec{flags.orders.data(), flags.orders.size(), flags.population,
                                    flags.iterations,    flags.nc,            flags.nr,
                                    parse_seed_or_zero(flags.seed), flags.repeats, flags.workers};
  std::vector<hga_fitness_timing> timings(flags.orders.size());
  if (auto s = hga_bench_fitness(&spec, timings.data(), timings.size()); s != HGA_OK) {
    return report(s, "bench fitness");
  }
  std::printf("%lld matrices, %lld iterations, NC=%d, NR=%d, best of %d\n", 4 * flags.population, flags.iterations,
              flags.nc, flags.nr, flags.repeats);
  std::printf("order      F1 (s)      F2 (s)   F2/F1\n");
  for (const auto& t : timings) {
    std::printf("%5d %11.4f %11.4f %7.4f\n", t.order, t.f1_seconds, t.f2_seconds, t.ratio);
  }
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Genetic search for Hadamard matrices of order 4k"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(hga_version()));

  const auto fitness_check = CLI::IsMember({"f1", "f2", "F1", "F2"});
  const auto mutation_check = CLI::IsMember({"shared", "per-matrix", "multi"});
  const SeedValidator seed_check;

  SearchFlags search;
  auto* search_cmd = app.add_subcommand("search", "Run the genetic search");
  auto* order_opt = search_cmd->add_option("--order,-m", search.order, "Matrix order m (multiple of 4)");
  search_cmd->add_option("--k", search.k, "Order as k, m = 4k")->excludes(order_opt)->check(CLI::PositiveNumber);
  search_cmd->add_option("--population,-N", search.population, "N; the population holds 4N matrices")
      ->capture_default_str();
  search_cmd->add_option("--max-iter,-T", search.max_iter, "Maximum generations T")->capture_default_str();
  search_cmd->add_option("--nc", search.nc, "Columns mutated per offspring (1..m-1)")->capture_default_str();
  search_cmd->add_option("--nr", search.nr, "Row pairs per mutated column (1..m/2)")->capture_default_str();
  search_cmd->add_option("--fitness", search.fitness, "f1 or f2")->check(fitness_check)->capture_default_str();
  search_cmd->add_option("--mutation", search.mutation, "shared, per-matrix or multi")
      ->check(mutation_check)
      ->capture_default_str();
  search_cmd->add_option("--seed", search.seed, "Decimal or 0x-hex seed (default: entropy)")->check(seed_check);
  search_cmd->add_option("--out", search.out, "Write the JSON run record here");
  search_cmd->add_option("--trace", search.trace, "Write the min-fitness trace CSV here");
  search_cmd->add_option("--stall-window", search.stall_window,
                         "Reinitialize offspring after this many flat generations (0 = off)")
      ->check(CLI::NonNegativeNumber);
  search_cmd->add_option("--time-budget-secs", search.time_budget, "Wall-clock cap in seconds (0 = none)")
      ->check(CLI::NonNegativeNumber);
  search_cmd->add_option("--workers", search.workers, "Worker threads; results do not depend on it")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();

  std::string verify_path;
  auto* verify_cmd = app.add_subcommand("verify", "Check whether a matrix file is Hadamard");
  verify_cmd->add_option("path", verify_path, "Matrix file, or - for stdin")->required();

  unsigned power = 0;
  std::string sylvester_out;
  auto* sylvester_cmd = app.add_subcommand("sylvester", "Write the order-2^power Sylvester matrix");
  sylvester_cmd->add_option("power", power, "Power p; order is 2^p")->required();
  sylvester_cmd->add_option("--out,-o", sylvester_out, "Output file (default stdout)");

  auto* bench_cmd = app.add_subcommand("bench", "Benchmark harness");
  bench_cmd->require_subcommand(1);

  GridFlags grid;
  auto* grid_cmd = bench_cmd->add_subcommand("grid", "NC x NR iteration grid");
  grid_cmd->add_option("--order,-m", grid.order, "Matrix order")->capture_default_str();
  grid_cmd->add_option("--population,-N", grid.population, "N")->capture_default_str();
  grid_cmd->add_option("--max-iter,-T", grid.max_iter, "T per run")->capture_default_str();
  grid_cmd->add_option("--nc-values", grid.nc_values, "Comma-separated NC values")->delimiter(',');
  grid_cmd->add_option("--nr-values", grid.nr_values, "Comma-separated NR values")->delimiter(',');
  grid_cmd->add_option("--runs,-R", grid.runs, "Runs per cell")->check(CLI::PositiveNumber)->capture_default_str();
  grid_cmd->add_option("--fitness", grid.fitness, "f1 or f2")->check(fitness_check)->capture_default_str();
  grid_cmd->add_option("--mutation", grid.mutation, "shared, per-matrix or multi")
      ->check(mutation_check)
      ->capture_default_str();
  grid_cmd->add_option("--seed-base", grid.seed_base, "First run seed")->check(seed_check)->capture_default_str();
  grid_cmd->add_option("--csv", grid.csv, "Write per-run rows as CSV");
  grid_cmd->add_option("--workers", grid.workers, "Worker threads")->check(CLI::PositiveNumber);
  grid_cmd->add_flag("--quiet,-q", grid.quiet, "No per-run progress on stderr");

  FitnessFlags fitness;
  auto* fitness_cmd = bench_cmd->add_subcommand("fitness", "F1 vs F2 loop timing");
  fitness_cmd->add_option("--orders", fitness.orders, "Comma-separated orders")->delimiter(',');
  fitness_cmd->add_option("--population,-N", fitness.population, "N")->capture_default_str();
  fitness_cmd->add_option("--iterations", fitness.iterations, "Generations per leg")->capture_default_str();
  fitness_cmd->add_option("--nc", fitness.nc, "NC")->capture_default_str();
  fitness_cmd->add_option("--nr", fitness.nr, "NR")->capture_default_str();
  fitness_cmd->add_option("--seed", fitness.seed, "Seed shared by both legs")->check(seed_check);
  fitness_cmd->add_option("--repeats", fitness.repeats, "Repeats; the fastest is reported")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  fitness_cmd->add_option("--workers", fitness.workers, "Worker threads")->check(CLI::PositiveNumber);
  fitness_cmd->add_flag("--long", fitness.long_mode, "40000 matrices x 10000 iterations");

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  if (*search_cmd) return cmd_search(search);
  if (*verify_cmd) return cmd_verify(verify_path);
  if (*sylvester_cmd) return cmd_sylvester(power, sylvester_out);
  if (*grid_cmd) return cmd_bench_grid(grid);
  if (*fitness_cmd) return cmd_bench_fitness(fitness);
  return kUsage;
}
