#include "engine.hpp"

#include <algorithm>
#include <cassert>
#include <chrono>
#include <cstring>
#include <numeric>

#include "errors.hpp"

namespace hga {

namespace {

void require(bool ok, const std::string& message) {
  if (!ok) throw ConfigError(message);
}

void evaluate_range(const Population& population, FitnessKind kind, FitnessVector& out, std::int64_t begin,
                    std::int64_t end, WorkerPool& pool) {
  pool.parallel_for(end - begin, [&](std::int64_t lo, std::int64_t hi) {
    FitnessEvaluator evaluator;
    for (std::int64_t i = begin + lo; i < begin + hi; ++i) out[i] = evaluator(population.at(i), kind);
  });
}

void update_best(SearchState& state) {
  const auto it = std::min_element(state.fitness.begin(), state.fitness.end());
  const Fitness current = *it;
  if (current < state.best_fitness) {
    state.best_fitness = current;
    state.best = SignMatrix::from_view(state.population.at(it - state.fitness.begin()));
  }
  state.trace.push_back(current);
}

#ifndef NDEBUG
void assert_balanced(const Population& population) {
  for (std::int64_t i = 0; i < population.size(); ++i) assert(is_balanced(population.at(i)));
}
#endif

}  // namespace

void GAConfig::validate() const {
  require(order >= 4 && order % 4 == 0,
          "order must be a multiple of 4 (m = 4k, k >= 1), got " + std::to_string(order));
  require(pairs >= 1, "population pairs N must be at least 1");
  require(max_iterations >= 0, "max iterations T must be nonnegative");
  require(nc >= 1 && nc <= order - 1, "NC must lie in [1, m-1] = [1, " + std::to_string(order - 1) + "]");
  require(nr >= 1 && nr <= order / 2, "NR must lie in [1, m/2] = [1, " + std::to_string(order / 2) + "]");
  if (stall_window) require(*stall_window >= 1, "stall window must be at least 1");
  if (time_budget_secs) require(*time_budget_secs > 0.0, "time budget must be positive");
}

const char* to_string(FitnessKind kind) noexcept { return kind == FitnessKind::F1 ? "f1" : "f2"; }

const char* to_string(MutationStrategy strategy) noexcept {
  switch (strategy) {
    case MutationStrategy::Shared:
      return "shared";
    case MutationStrategy::PerMatrix:
      return "per-matrix";
    case MutationStrategy::Multi:
      return "multi";
  }
  return "multi";
}

std::optional<FitnessKind> parse_fitness_kind(std::string_view text) {
  if (text == "f1" || text == "F1") return FitnessKind::F1;
  if (text == "f2" || text == "F2") return FitnessKind::F2;
  return std::nullopt;
}

std::optional<MutationStrategy> parse_mutation_strategy(std::string_view text) {
  if (text == "shared") return MutationStrategy::Shared;
  if (text == "per-matrix") return MutationStrategy::PerMatrix;
  if (text == "multi") return MutationStrategy::Multi;
  return std::nullopt;
}

Population::Population(int order, std::int64_t pairs)
    : order_(order), pairs_(pairs), entries_(static_cast<std::size_t>(order) * order * 4 * pairs, 1) {}

void Population::assign(std::int64_t index, SignMatrixView matrix) {
  if (matrix.order() != order_) throw ArgumentError("matrix order does not match population order");
  std::copy(matrix.entries().begin(), matrix.entries().end(), entries_.begin() + offset(index));
}

void Population::gather_front(std::span<const std::int64_t> order) {
  staging_.resize(stride() * order.size());
  for (std::size_t i = 0; i < order.size(); ++i) {
    std::memcpy(staging_.data() + stride() * i, entries_.data() + offset(order[i]), stride());
  }
  std::memcpy(entries_.data(), staging_.data(), staging_.size());
}

void fill_balanced(MutableSignMatrixView q, Seed seed, StreamPurpose purpose, std::uint64_t generation,
                   std::uint64_t base_index) {
  const int m = q.order();
  for (int r = 0; r < m; ++r) {
    for (int c = 0; c < m; ++c) q(r, c) = (c > 0 && r < m / 2) ? Sign{-1} : Sign{1};
  }
  for (int c = 1; c < m; ++c) {
    RngStream stream(seed, stream_id(purpose, generation, base_index * m + c));
    shuffle_column(q, c, stream);
  }
}

Population init_population(const GAConfig& config, Seed seed, WorkerPool& pool) {
  config.validate();
  Population population(config.order, config.pairs);
  pool.parallel_for(population.size(), [&](std::int64_t lo, std::int64_t hi) {
    for (std::int64_t k = lo; k < hi; ++k) {
      fill_balanced(population.at(k), seed, StreamPurpose::Init, 0, static_cast<std::uint64_t>(k));
    }
  });
  return population;
}

Population init_population(const GAConfig& config, Seed seed) {
  WorkerPool inline_pool(1);
  return init_population(config, seed, inline_pool);
}

FitnessVector evaluate(const Population& population, FitnessKind kind, WorkerPool& pool) {
  FitnessVector values(population.size());
  evaluate_range(population, kind, values, 0, population.size(), pool);
  return values;
}

FitnessVector evaluate(const Population& population, FitnessKind kind) {
  WorkerPool inline_pool(1);
  return evaluate(population, kind, inline_pool);
}

void select(Population& population, FitnessVector& fitness, RngStream& stream) {
  assert(static_cast<std::int64_t>(fitness.size()) == population.size());
  const std::int64_t parents = 2 * population.pairs();
  std::vector<std::int64_t> ranked(fitness.size());
  std::iota(ranked.begin(), ranked.end(), 0);
  std::stable_sort(ranked.begin(), ranked.end(), [&](auto a, auto b) { return fitness[a] < fitness[b]; });
  ranked.resize(parents);
  for (std::int64_t i = parents - 1; i > 0; --i) {
    std::swap(ranked[i], ranked[stream.uniform_int(0, i)]);
  }
  population.gather_front(ranked);
  FitnessVector moved(parents);
  for (std::int64_t i = 0; i < parents; ++i) moved[i] = fitness[ranked[i]];
  std::copy(moved.begin(), moved.end(), fitness.begin());
}

CrossoverPlan make_crossover_plan(const GAConfig& config, RngStream& stream) {
  CrossoverPlan plan;
  plan.points.resize(config.pairs);
  for (auto& point : plan.points) point = static_cast<int>(stream.uniform_int(1, config.order - 1));
  return plan;
}

void crossover(Population& population, const CrossoverPlan& plan, WorkerPool& pool) {
  const int m = population.order();
  const std::int64_t n = population.pairs();
  if (static_cast<std::int64_t>(plan.points.size()) != n) {
    throw IndexError("crossover plan has " + std::to_string(plan.points.size()) + " points for " +
                     std::to_string(n) + " pairs");
  }
  for (int point : plan.points) {
    if (point < 1 || point > m - 1) {
      throw IndexError("crossover point " + std::to_string(point) + " outside [1, " + std::to_string(m - 1) + "]");
    }
  }
  pool.parallel_for(n, [&](std::int64_t lo, std::int64_t hi) {
    for (std::int64_t p = lo; p < hi; ++p) {
      const int c = plan.points[p];
      const SignMatrixView first = population.at(p);
      const SignMatrixView second = population.at(n + p);
      const MutableSignMatrixView child_a = population.at(2 * n + p);
      const MutableSignMatrixView child_b = population.at(3 * n + p);
      for (int r = 0; r < m; ++r) {
        const Sign* a = first.entries().data() + static_cast<std::size_t>(m) * r;
        const Sign* b = second.entries().data() + static_cast<std::size_t>(m) * r;
        std::memcpy(&child_a(r, 0), a, c);
        std::memcpy(&child_a(r, c), b + c, m - c);
        std::memcpy(&child_b(r, 0), b, c);
        std::memcpy(&child_b(r, c), a + c, m - c);
      }
    }
  });
}

void crossover(Population& population, const CrossoverPlan& plan) {
  WorkerPool inline_pool(1);
  crossover(population, plan, inline_pool);
}

MutationPlan make_mutation_plan(const GAConfig& config, RngStream& stream) {
  const int m = config.order;
  const std::int64_t offspring = 2 * config.pairs;
  MutationPlan plan;
  auto draw = [&](std::vector<int>& out, std::int64_t count, int lo, int hi) {
    out.resize(count);
    for (auto& v : out) v = static_cast<int>(stream.uniform_int(lo, hi));
  };
  switch (config.mutation) {
    case MutationStrategy::Shared: {
      plan.nc = plan.nr = 1;
      const int col = static_cast<int>(stream.uniform_int(1, m - 1));
      const int r1 = static_cast<int>(stream.uniform_int(0, m - 1));
      const int r2 = static_cast<int>(stream.uniform_int(0, m - 1));
      plan.columns.assign(offspring, col);
      plan.rows1.assign(offspring, r1);
      plan.rows2.assign(offspring, r2);
      break;
    }
    case MutationStrategy::PerMatrix:
      plan.nc = plan.nr = 1;
      draw(plan.columns, offspring, 1, m - 1);
      draw(plan.rows1, offspring, 0, m - 1);
      draw(plan.rows2, offspring, 0, m - 1);
      break;
    case MutationStrategy::Multi:
      plan.nc = config.nc;
      plan.nr = config.nr;
      draw(plan.rows1, offspring * config.nr, 0, m - 1);
      draw(plan.rows2, offspring * config.nr, 0, m - 1);
      draw(plan.columns, offspring * config.nc, 1, m - 1);
      break;
  }
  return plan;
}

void mutate(Population& population, const MutationPlan& plan, WorkerPool& pool) {
  const int m = population.order();
  const std::int64_t offspring = 2 * population.pairs();
  if (plan.nc < 1 || plan.nr < 1 || static_cast<std::int64_t>(plan.columns.size()) != offspring * plan.nc ||
      static_cast<std::int64_t>(plan.rows1.size()) != offspring * plan.nr ||
      static_cast<std::int64_t>(plan.rows2.size()) != offspring * plan.nr) {
    throw IndexError("mutation plan shape does not match 2N x NC / 2N x NR");
  }
  for (int c : plan.columns) {
    if (c < 1 || c > m - 1) throw IndexError("mutation column " + std::to_string(c) + " outside [1, m-1]");
  }
  for (const auto* rows : {&plan.rows1, &plan.rows2}) {
    for (int r : *rows) {
      if (r < 0 || r > m - 1) throw IndexError("mutation row " + std::to_string(r) + " outside [0, m-1]");
    }
  }
  pool.parallel_for(offspring, [&](std::int64_t lo, std::int64_t hi) {
    for (std::int64_t o = lo; o < hi; ++o) {
      const MutableSignMatrixView q = population.at(offspring + o);
      for (int jc = 0; jc < plan.nc; ++jc) {
        const int c = plan.column(o, jc);
        for (int ir = 0; ir < plan.nr; ++ir) {
          Sign& a = q(plan.row1(o, ir), c);
          Sign& b = q(plan.row2(o, ir), c);
          if (a != b) {
            a = static_cast<Sign>(-a);
            b = static_cast<Sign>(-b);
          }
        }
      }
    }
  });
}

void mutate(Population& population, const MutationPlan& plan) {
  WorkerPool inline_pool(1);
  mutate(population, plan, inline_pool);
}

SearchState make_initial_state(const GAConfig& config, Seed seed, WorkerPool& pool) {
  Population population = init_population(config, seed, pool);
  FitnessVector values = evaluate(population, config.fitness, pool);
  const auto best = std::min_element(values.begin(), values.end()) - values.begin();
  SearchState state{config, seed, std::move(population), std::move(values), 0, SignMatrix(config.order), 0, {}, 0};
  state.best = SignMatrix::from_view(state.population.at(best));
  state.best_fitness = state.fitness[best];
  state.trace.push_back(state.best_fitness);
  return state;
}

void step(SearchState& state, WorkerPool& pool) {
  const auto generation = static_cast<std::uint64_t>(state.iteration + 1);
  const std::int64_t n = state.config.pairs;

  RngStream select_stream(state.seed, stream_id(StreamPurpose::Select, generation, 0));
  select(state.population, state.fitness, select_stream);

  RngStream crossover_stream(state.seed, stream_id(StreamPurpose::Crossover, generation, 0));
  crossover(state.population, make_crossover_plan(state.config, crossover_stream), pool);

  RngStream mutation_stream(state.seed, stream_id(StreamPurpose::Mutation, generation, 0));
  mutate(state.population, make_mutation_plan(state.config, mutation_stream), pool);

  // Parent slots keep the fitness values moved by select.
  evaluate_range(state.population, state.config.fitness, state.fitness, 2 * n, 4 * n, pool);
#ifndef NDEBUG
  assert_balanced(state.population);
#endif
  ++state.iteration;
  update_best(state);
}

bool detect_stall(std::span<const Fitness> trace, int window) {
  if (window < 1) throw ArgumentError("stall window must be at least 1");
  if (trace.size() < static_cast<std::size_t>(window)) return false;
  const auto tail = trace.last(window);
  return tail.back() > 0 && std::all_of(tail.begin(), tail.end(), [&](Fitness f) { return f == tail.back(); });
}

void restart_offspring(SearchState& state, WorkerPool& pool) {
  const std::int64_t n = state.config.pairs;
  const auto generation = static_cast<std::uint64_t>(state.iteration);
  pool.parallel_for(2 * n, [&](std::int64_t lo, std::int64_t hi) {
    for (std::int64_t o = lo; o < hi; ++o) {
      fill_balanced(state.population.at(2 * n + o), state.seed, StreamPurpose::Restart, generation,
                    static_cast<std::uint64_t>(o));
    }
  });
  evaluate_range(state.population, state.config.fitness, state.fitness, 2 * n, 4 * n, pool);
  state.last_restart = state.iteration;
}

RunRecord run_search(const GAConfig& config, const RunOptions& options) {
  config.validate();
  const Seed seed = config.seed.value_or(entropy_seed());
  WorkerPool pool(options.workers);
  SearchState state = make_initial_state(config, seed, pool);

  using Clock = std::chrono::steady_clock;
  const auto start = Clock::now();
  auto elapsed = [&] { return std::chrono::duration<double>(Clock::now() - start).count(); };

  bool incomplete = false;
  std::int64_t restarts = 0;
  while (state.iteration < config.max_iterations && state.trace.back() > 0) {
    if (config.time_budget_secs && elapsed() > *config.time_budget_secs) {
      incomplete = true;
      break;
    }
    if (config.stall_window && state.iteration - state.last_restart >= *config.stall_window &&
        detect_stall(state.trace, *config.stall_window)) {
      restart_offspring(state, pool);
      ++restarts;
    }
    step(state, pool);
  }

  RunRecord record{config, seed, std::move(state.best), state.best_fitness, state.iteration, std::move(state.trace),
                   elapsed(), false, incomplete, restarts};
  record.config.seed = seed;
  record.success = record.best_fitness == 0 && is_hadamard(record.best);
  return record;
}

}  // namespace hga
