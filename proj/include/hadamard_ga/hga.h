/*
 * hadamard_ga C API.
 *
 * Genetic search for Hadamard matrices of order m = 4k, plus verification
 * and benchmark helpers. All objects are opaque handles owned by the caller
 * and released with the matching *_destroy function. Every fallible call
 * returns an hga_status; on failure hga_last_error() describes the problem.
 * Strings returned through char** are heap allocated and must be released
 * with hga_string_free.
 */
#ifndef HADAMARD_GA_HGA_H
#define HADAMARD_GA_HGA_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  if defined(HGA_BUILDING_LIBRARY)
#    define HGA_API __declspec(dllexport)
#  else
#    define HGA_API __declspec(dllimport)
#  endif
#else
#  define HGA_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum hga_status {
  HGA_OK = 0,
  HGA_ERR_ARGUMENT = 1,   /* null handle or out-of-range argument */
  HGA_ERR_CONFIG = 2,     /* search parameters violate their bounds */
  HGA_ERR_INDEX = 3,      /* plan or column index out of range */
  HGA_ERR_PARSE = 4,      /* malformed matrix text or run record */
  HGA_ERR_SIZE_LIMIT = 5, /* requested size above the configured cap */
  HGA_ERR_IO = 6,         /* file could not be read or written */
  HGA_ERR_INTERNAL = 7
} hga_status;

typedef enum hga_fitness { HGA_FITNESS_F1 = 1, HGA_FITNESS_F2 = 2 } hga_fitness;

typedef enum hga_mutation {
  HGA_MUTATION_SHARED = 1,
  HGA_MUTATION_PER_MATRIX = 2,
  HGA_MUTATION_MULTI = 3
} hga_mutation;

typedef struct hga_matrix hga_matrix;
typedef struct hga_config hga_config;
typedef struct hga_run hga_run;
typedef struct hga_grid hga_grid;

HGA_API const char* hga_version(void);
HGA_API const char* hga_status_name(hga_status status);
/* Message of the last failure on the calling thread; "" if none. */
HGA_API const char* hga_last_error(void);
HGA_API void hga_string_free(char* text);

/* ---- matrices ---------------------------------------------------------- */

typedef struct hga_matrix_report {
  int64_t fitness_f1;
  int64_t fitness_f2;
  int32_t max_abs_off_diagonal;
  int is_hadamard;
} hga_matrix_report;

/* entries: order*order values in row-major order, each +1 or -1. */
HGA_API hga_status hga_matrix_from_entries(int32_t order, const int8_t* entries, hga_matrix** out);
HGA_API hga_status hga_matrix_sylvester(uint32_t power, hga_matrix** out);
HGA_API hga_status hga_matrix_parse(const char* text, hga_matrix** out);
HGA_API hga_status hga_matrix_read_file(const char* path, hga_matrix** out);
HGA_API hga_status hga_matrix_to_text(const hga_matrix* matrix, char** out_text);
HGA_API hga_status hga_matrix_write_file(const hga_matrix* matrix, const char* path);
HGA_API int32_t hga_matrix_order(const hga_matrix* matrix);
HGA_API hga_status hga_matrix_get_entries(const hga_matrix* matrix, int8_t* buffer, size_t capacity);
HGA_API hga_status hga_matrix_set_entry(hga_matrix* matrix, int32_t row, int32_t col, int8_t value);
HGA_API hga_status hga_matrix_analyze(const hga_matrix* matrix, hga_matrix_report* out);
HGA_API void hga_matrix_destroy(hga_matrix* matrix);

/* ---- search configuration ---------------------------------------------- */

/* Defaults: order 12, N=1000, T=100000, NC=1, NR=2, F2, multi mutation,
 * entropy seed, no stall restart, no time budget, one worker. */
HGA_API hga_status hga_config_create(hga_config** out);
HGA_API hga_status hga_config_set_order(hga_config* config, int32_t order);
HGA_API hga_status hga_config_set_pairs(hga_config* config, int64_t pairs);
HGA_API hga_status hga_config_set_max_iterations(hga_config* config, int64_t max_iterations);
HGA_API hga_status hga_config_set_nc(hga_config* config, int32_t nc);
HGA_API hga_status hga_config_set_nr(hga_config* config, int32_t nr);
HGA_API hga_status hga_config_set_fitness(hga_config* config, hga_fitness fitness);
HGA_API hga_status hga_config_set_mutation(hga_config* config, hga_mutation mutation);
HGA_API hga_status hga_config_set_seed(hga_config* config, uint64_t seed);
HGA_API hga_status hga_config_clear_seed(hga_config* config);
/* window 0 disables stall restart. */
HGA_API hga_status hga_config_set_stall_window(hga_config* config, int32_t window);
/* seconds <= 0 disables the budget. */
HGA_API hga_status hga_config_set_time_budget(hga_config* config, double seconds);
/* Worker count never changes results. */
HGA_API hga_status hga_config_set_workers(hga_config* config, int32_t workers);
HGA_API hga_status hga_config_validate(const hga_config* config);
/* Accepts decimal or 0x-hex. */
HGA_API hga_status hga_parse_seed(const char* text, uint64_t* out);
HGA_API void hga_config_destroy(hga_config* config);

/* ---- search runs ------------------------------------------------------- */

typedef struct hga_run_summary {
  int success;
  int incomplete; /* stopped by the time budget */
  int64_t iterations;
  int64_t best_fitness;
  uint64_t seed;
  double wall_seconds;
  int64_t restarts;
} hga_run_summary;

HGA_API hga_status hga_search(const hga_config* config, hga_run** out);
HGA_API hga_status hga_run_get_summary(const hga_run* run, hga_run_summary* out);
HGA_API hga_status hga_run_best_matrix(const hga_run* run, hga_matrix** out);
/* Writes min(capacity, trace length) values; *length receives the full length. */
HGA_API hga_status hga_run_trace(const hga_run* run, int64_t* buffer, size_t capacity, size_t* length);
/* trace_ref may be NULL. */
HGA_API hga_status hga_run_record_json(const hga_run* run, const char* trace_ref, char** out_json);
HGA_API hga_status hga_run_write_record(const hga_run* run, const char* path, const char* trace_ref);
HGA_API hga_status hga_run_write_trace(const hga_run* run, const char* path);
HGA_API void hga_run_destroy(hga_run* run);

/* Loads a run record, re-verifying the embedded matrix when it claims success. */
HGA_API hga_status hga_run_record_verify_file(const char* path, hga_run_summary* out);

/* ---- benchmarks -------------------------------------------------------- */

typedef struct hga_grid_spec {
  int32_t order;
  int64_t pairs;
  int64_t max_iterations;
  const int32_t* nc_values;
  size_t nc_count;
  const int32_t* nr_values;
  size_t nr_count;
  int32_t runs;
  hga_fitness fitness;
  hga_mutation mutation;
  uint64_t seed_base;
  int32_t workers;
} hga_grid_spec;

typedef struct hga_grid_cell {
  int32_t nc;
  int32_t nr;
  int32_t runs;
  int32_t successes;
  int has_mean; /* 0 when no run in the cell succeeded */
  double mean_iterations;
  int64_t min_iterations;
  int64_t max_iterations;
  double mean_wall_seconds;
} hga_grid_cell;

typedef struct hga_grid_row {
  int32_t nc;
  int32_t nr;
  int32_t run_index;
  uint64_t seed;
  int success;
  int64_t iterations;
  double wall_seconds;
} hga_grid_row;

/* progress may be NULL; it is called after every run. */
typedef void (*hga_grid_progress)(const hga_grid_row* row, void* user);

HGA_API hga_status hga_grid_run(const hga_grid_spec* spec, hga_grid_progress progress, void* user, hga_grid** out);
HGA_API size_t hga_grid_cell_count(const hga_grid* grid);
HGA_API hga_status hga_grid_get_cell(const hga_grid* grid, size_t index, hga_grid_cell* out);
HGA_API size_t hga_grid_row_count(const hga_grid* grid);
HGA_API hga_status hga_grid_get_row(const hga_grid* grid, size_t index, hga_grid_row* out);
HGA_API hga_status hga_grid_csv(const hga_grid* grid, char** out_csv);
HGA_API hga_status hga_grid_table(const hga_grid* grid, char** out_table);
HGA_API void hga_grid_destroy(hga_grid* grid);

typedef struct hga_fitness_bench_spec {
  const int32_t* orders;
  size_t order_count;
  int64_t pairs;
  int64_t iterations;
  int32_t nc;
  int32_t nr;
  uint64_t seed;
  int32_t repeats;
  int32_t workers;
} hga_fitness_bench_spec;

typedef struct hga_fitness_timing {
  int32_t order;
  double f1_seconds;
  double f2_seconds;
  double ratio; /* f2_seconds / f1_seconds */
  int64_t f1_iterations;
  int64_t f2_iterations;
} hga_fitness_timing;

/* out must hold spec->order_count entries. */
HGA_API hga_status hga_bench_fitness(const hga_fitness_bench_spec* spec, hga_fitness_timing* out, size_t capacity);

#ifdef __cplusplus
}
#endif

#endif /* HADAMARD_GA_HGA_H */
