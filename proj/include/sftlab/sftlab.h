/* C interface to libsftlab.
 *
 * All objects are opaque handles created and destroyed through this API.
 * Every fallible call returns an sftlab_status; on failure the message of
 * the most recent error on the calling thread is available from
 * sftlab_last_error(). Strings returned by accessors are owned by the handle
 * they came from and stay valid until that handle is freed.
 */
#ifndef SFTLAB_H
#define SFTLAB_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  if defined(SFTLAB_BUILDING)
#    define SFTLAB_API __declspec(dllexport)
#  else
#    define SFTLAB_API __declspec(dllimport)
#  endif
#else
#  define SFTLAB_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum sftlab_status {
  SFTLAB_OK = 0,
  SFTLAB_INVALID_ARGUMENT = 1,
  SFTLAB_NOT_TRANSITIVE = 2,
  SFTLAB_EMPTY_SUBSHIFT = 3,
  SFTLAB_RANGE_MISMATCH = 4,
  SFTLAB_SUPPORT_VIOLATION = 5,
  SFTLAB_NOT_STOCHASTIC = 6,
  SFTLAB_SINGULAR_ENERGY = 7,
  SFTLAB_NOT_IN_STABLE_SET = 8,
  SFTLAB_NOT_IN_UNSTABLE_SET = 9,
  SFTLAB_PARABOLIC_OR_CENTRAL = 10,
  SFTLAB_RESOLUTION_TOO_COARSE = 11,
  SFTLAB_PARSE_ERROR = 12,
  SFTLAB_UNKNOWN_SUBCOMMAND = 13,
  SFTLAB_IO_ERROR = 14,
  SFTLAB_INTERNAL_ERROR = 99
} sftlab_status;

typedef struct sftlab_config sftlab_config;
typedef struct sftlab_table sftlab_table;
typedef struct sftlab_measure sftlab_measure;

typedef struct sftlab_run_options {
  int has_max_period;
  int max_period;
  int has_k;
  double k;
  int has_seed;
  uint64_t seed;
  int has_threads;
  int threads;
  int shrinkage;
} sftlab_run_options;

typedef struct sftlab_estimate {
  double k;
  double value;
  double std_error;
  int64_t n_steps;
  int n_samples;
  uint64_t seed;
} sftlab_estimate;

SFTLAB_API const char* sftlab_version(void);
SFTLAB_API const char* sftlab_last_error(void);
SFTLAB_API const char* sftlab_status_name(sftlab_status status);
/* 0 success, 1 usage, 2 config or validation error, 3 numeric failure. */
SFTLAB_API int sftlab_exit_code(sftlab_status status);

SFTLAB_API void sftlab_run_options_init(sftlab_run_options* options);

/* Configuration (JSON, see README). */
SFTLAB_API sftlab_status sftlab_config_load(const char* path, sftlab_config** out);
SFTLAB_API sftlab_status sftlab_config_parse(const char* json_text, sftlab_config** out);
SFTLAB_API void sftlab_config_free(sftlab_config* config);

/* Runs a subcommand: periodic, bands, candidates, lyapunov, zeroset,
 * kalinin, verify-graph. options may be NULL. */
SFTLAB_API sftlab_status sftlab_run(const sftlab_config* config, const char* subcommand,
                                    const sftlab_run_options* options, sftlab_table** out);

SFTLAB_API void sftlab_table_free(sftlab_table* table);
SFTLAB_API const char* sftlab_table_schema(const sftlab_table* table);
SFTLAB_API size_t sftlab_table_rows(const sftlab_table* table);
SFTLAB_API size_t sftlab_table_columns(const sftlab_table* table);
SFTLAB_API const char* sftlab_table_column_name(const sftlab_table* table, size_t column);
/* Numeric view of a cell; text cells yield SFTLAB_INVALID_ARGUMENT. */
SFTLAB_API sftlab_status sftlab_table_number(const sftlab_table* table, size_t row, size_t column, double* out);
SFTLAB_API const char* sftlab_table_csv(const sftlab_table* table);
SFTLAB_API const char* sftlab_table_json(const sftlab_table* table);

/* Direct numerics. Letters are 1-based; forbidden is a flat list of
 * n_forbidden (from, to) pairs; transition is row-major and may be NULL
 * for the uniform measure on allowed transitions. */
SFTLAB_API sftlab_status sftlab_measure_create(int alphabet_size, const int* forbidden, size_t n_forbidden,
                                               const double* transition, sftlab_measure** out);
SFTLAB_API void sftlab_measure_free(sftlab_measure* measure);
SFTLAB_API sftlab_status sftlab_measure_stationary(const sftlab_measure* measure, double* out, size_t len);

SFTLAB_API sftlab_status sftlab_lyapunov_mc(const sftlab_measure* measure, double k, int64_t n_steps, int n_samples,
                                            uint64_t seed, sftlab_estimate* out);

/* cycle must be a primitive cycle in canonical rotation for the measure's
 * subshift. */
SFTLAB_API sftlab_status sftlab_monodromy_trace(const sftlab_measure* measure, const int* cycle, size_t period,
                                                double k, double* out);
SFTLAB_API sftlab_status sftlab_lyapunov_periodic(const sftlab_measure* measure, const int* cycle, size_t period,
                                                  double k, double* out);

#ifdef __cplusplus
}
#endif

#endif /* SFTLAB_H */
