#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "rng.hpp"
#include "sign_matrix.hpp"
#include "worker_pool.hpp"

namespace hga {

enum class MutationStrategy {
  Shared,     // one (column, row, row) triple applied to every offspring
  PerMatrix,  // one independent triple per offspring
  Multi,      // NC columns x NR row pairs per offspring
};

/// Search parameters. order is m = 4k; the population holds 4 * pairs
/// matrices laid out as [P_1..P_2N, O_1..O_2N].
struct GAConfig {
  int order = 12;
  std::int64_t pairs = 1000;
  std::int64_t max_iterations = 100000;
  int nc = 1;  // columns mutated per offspring, 1 <= nc <= m-1
  int nr = 2;  // row pairs tried per mutated column, 1 <= nr <= m/2
  FitnessKind fitness = FitnessKind::F2;
  MutationStrategy mutation = MutationStrategy::Multi;
  std::optional<Seed> seed;
  std::optional<int> stall_window;  // reinitialize offspring after this many flat generations
  std::optional<double> time_budget_secs;

  int k() const noexcept { return order / 4; }
  std::int64_t population_size() const noexcept { return 4 * pairs; }

  /// Throws ConfigError naming the first violated bound.
  void validate() const;
};

const char* to_string(FitnessKind kind) noexcept;
const char* to_string(MutationStrategy strategy) noexcept;
std::optional<FitnessKind> parse_fitness_kind(std::string_view text);
std::optional<MutationStrategy> parse_mutation_strategy(std::string_view text);

class Population {
 public:
  /// 4 * pairs matrices of the given order, every entry +1.
  Population(int order, std::int64_t pairs);

  int order() const noexcept { return order_; }
  std::int64_t pairs() const noexcept { return pairs_; }
  std::int64_t size() const noexcept { return 4 * pairs_; }

  SignMatrixView at(std::int64_t index) const noexcept {
    return {std::span<const Sign>(entries_).subspan(offset(index), stride()), order_};
  }
  MutableSignMatrixView at(std::int64_t index) noexcept {
    return {std::span<Sign>(entries_).subspan(offset(index), stride()), order_};
  }

  void assign(std::int64_t index, SignMatrixView matrix);

  /// Writes individuals[order[i]] into slot i for i < order.size(), reading
  /// every source before any slot is overwritten.
  void gather_front(std::span<const std::int64_t> order);

  friend bool operator==(const Population& a, const Population& b) {
    return a.order_ == b.order_ && a.pairs_ == b.pairs_ && a.entries_ == b.entries_;
  }

 private:
  std::size_t stride() const noexcept { return static_cast<std::size_t>(order_) * order_; }
  std::size_t offset(std::int64_t index) const noexcept { return stride() * static_cast<std::size_t>(index); }

  int order_;
  std::int64_t pairs_;
  std::vector<Sign> entries_;
  std::vector<Sign> staging_;
};

using FitnessVector = std::vector<Fitness>;

/// One crossover point per parent pair, each in [1, m-1].
struct CrossoverPlan {
  std::vector<int> points;
};

/// Row-major index arrays: columns is 2N x nc, rows1 and rows2 are 2N x nr.
struct MutationPlan {
  int nc = 0;
  int nr = 0;
  std::vector<int> columns;
  std::vector<int> rows1;
  std::vector<int> rows2;

  std::int64_t offspring() const noexcept { return nc == 0 ? 0 : static_cast<std::int64_t>(columns.size()) / nc; }
  int column(std::int64_t o, int jc) const noexcept { return columns[o * nc + jc]; }
  int row1(std::int64_t o, int ir) const noexcept { return rows1[o * nr + ir]; }
  int row2(std::int64_t o, int ir) const noexcept { return rows2[o * nr + ir]; }
};

struct SearchState {
  GAConfig config;
  Seed seed;
  Population population;
  FitnessVector fitness;
  std::int64_t iteration = 0;
  SignMatrix best;
  Fitness best_fitness = 0;
  std::vector<Fitness> trace;  // trace[t] = min fitness after generation t; trace[0] is the initial population
  std::int64_t last_restart = 0;
};

struct RunRecord {
  GAConfig config;
  Seed seed;
  SignMatrix best;
  Fitness best_fitness = 0;
  std::int64_t iterations = 0;
  std::vector<Fitness> trace;
  double wall_seconds = 0.0;
  bool success = false;
  bool incomplete = false;  // stopped by the wall-clock budget
  std::int64_t restarts = 0;
};

/// Fills every column j >= 1 of q with m/2 entries -1 over m/2 entries +1 and
/// shuffles it with the stream (purpose, generation, base_index * m + j).
void fill_balanced(MutableSignMatrixView q, Seed seed, StreamPurpose purpose, std::uint64_t generation,
                   std::uint64_t base_index);

Population init_population(const GAConfig& config, Seed seed, WorkerPool& pool);
Population init_population(const GAConfig& config, Seed seed);

FitnessVector evaluate(const Population& population, FitnessKind kind, WorkerPool& pool);
FitnessVector evaluate(const Population& population, FitnessKind kind);

/// Elitist truncation: the 2N lowest-fitness individuals (ties by lower index)
/// move into the parent slots in uniformly random order. Parent-slot fitness
/// values move with them; offspring-slot values become stale.
void select(Population& population, FitnessVector& fitness, RngStream& stream);

CrossoverPlan make_crossover_plan(const GAConfig& config, RngStream& stream);

/// O_p takes columns [0, c) from P_p and [c, m) from P_{N+p}; O_{N+p} the
/// other way round.
void crossover(Population& population, const CrossoverPlan& plan, WorkerPool& pool);
void crossover(Population& population, const CrossoverPlan& plan);

MutationPlan make_mutation_plan(const GAConfig& config, RngStream& stream);

/// For each offspring, columns in order and row pairs in order: flip the pair
/// when the two entries differ. Parents are never touched.
void mutate(Population& population, const MutationPlan& plan, WorkerPool& pool);
void mutate(Population& population, const MutationPlan& plan);

SearchState make_initial_state(const GAConfig& config, Seed seed, WorkerPool& pool);

/// One generation: select, crossover, mutate, evaluate offspring, then bump
/// the iteration and extend the trace.
void step(SearchState& state, WorkerPool& pool);

/// True when the last window trace values are equal and positive.
bool detect_stall(std::span<const Fitness> trace, int window);

/// Replaces every offspring slot with a fresh balanced matrix and
/// re-evaluates those slots.
void restart_offspring(SearchState& state, WorkerPool& pool);

struct RunOptions {
  int workers = 1;
};

RunRecord run_search(const GAConfig& config, const RunOptions& options = {});

}  // namespace hga
