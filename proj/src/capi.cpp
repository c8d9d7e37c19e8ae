#include <exception>
#include <new>
#include <optional>
#include <string>

#include "sftlab/error.hpp"
#include "sftlab/lyapunov.hpp"
#include "sftlab/run.hpp"
#include "sftlab/sftlab.h"
#include "sftlab/spectra.hpp"

struct sftlab_config {
  sftlab::RunConfig config;
};

struct sftlab_table {
  sftlab::ResultTable table;
  mutable std::optional<std::string> csv;
  mutable std::optional<std::string> json;
};

struct sftlab_measure {
  sftlab::MarkovMeasure measure;
};

namespace {

thread_local std::string g_last_error;

sftlab_status status_for(sftlab::ErrorCode code) {
  using sftlab::ErrorCode;
  switch (code) {
    case ErrorCode::InvalidArgument: return SFTLAB_INVALID_ARGUMENT;
    case ErrorCode::NotTransitive: return SFTLAB_NOT_TRANSITIVE;
    case ErrorCode::EmptySubshift: return SFTLAB_EMPTY_SUBSHIFT;
    case ErrorCode::RangeMismatch: return SFTLAB_RANGE_MISMATCH;
    case ErrorCode::SupportViolation: return SFTLAB_SUPPORT_VIOLATION;
    case ErrorCode::NotStochastic: return SFTLAB_NOT_STOCHASTIC;
    case ErrorCode::SingularEnergy: return SFTLAB_SINGULAR_ENERGY;
    case ErrorCode::NotInStableSet: return SFTLAB_NOT_IN_STABLE_SET;
    case ErrorCode::NotInUnstableSet: return SFTLAB_NOT_IN_UNSTABLE_SET;
    case ErrorCode::ParabolicOrCentral: return SFTLAB_PARABOLIC_OR_CENTRAL;
    case ErrorCode::ResolutionTooCoarse: return SFTLAB_RESOLUTION_TOO_COARSE;
    case ErrorCode::ParseError: return SFTLAB_PARSE_ERROR;
    case ErrorCode::UnknownSubcommand: return SFTLAB_UNKNOWN_SUBCOMMAND;
    case ErrorCode::IoError: return SFTLAB_IO_ERROR;
  }
  return SFTLAB_INTERNAL_ERROR;
}

sftlab_status fail(sftlab_status s, const std::string& msg) {
  g_last_error = msg;
  return s;
}

// Runs f, translating exceptions into status codes.
template <class F>
sftlab_status guarded(F&& f) {
  try {
    f();
    g_last_error.clear();
    return SFTLAB_OK;
  } catch (const sftlab::Error& e) {
    return fail(status_for(e.code()), e.what());
  } catch (const std::bad_alloc&) {
    return fail(SFTLAB_INTERNAL_ERROR, "out of memory");
  } catch (const std::exception& e) {
    return fail(SFTLAB_INTERNAL_ERROR, e.what());
  } catch (...) {
    return fail(SFTLAB_INTERNAL_ERROR, "unknown exception");
  }
}

sftlab::PeriodicPoint make_point(const sftlab_measure* m, const int* cycle, size_t period) {
  if (!cycle || period == 0) throw sftlab::Error(sftlab::ErrorCode::InvalidArgument, "empty cycle");
  std::vector<sftlab::Letter> letters;
  for (size_t i = 0; i < period; ++i) letters.emplace_back(cycle[i]);
  return sftlab::PeriodicPoint(m->measure.spec(), std::move(letters));
}

}  // namespace

extern "C" {

const char* sftlab_version(void) { return "1.0.0"; }

const char* sftlab_last_error(void) { return g_last_error.c_str(); }

const char* sftlab_status_name(sftlab_status status) {
  switch (status) {
    case SFTLAB_OK: return "OK";
    case SFTLAB_INTERNAL_ERROR: return "InternalError";
    default: break;
  }
  for (int c = 0; c <= static_cast<int>(sftlab::ErrorCode::IoError); ++c) {
    const auto code = static_cast<sftlab::ErrorCode>(c);
    if (status_for(code) == status) return sftlab::to_string(code);
  }
  return "Unknown";
}

int sftlab_exit_code(sftlab_status status) {
  if (status == SFTLAB_OK) return 0;
  for (int c = 0; c <= static_cast<int>(sftlab::ErrorCode::IoError); ++c) {
    const auto code = static_cast<sftlab::ErrorCode>(c);
    if (status_for(code) == status) return sftlab::exit_code_for(code);
  }
  return 3;
}

void sftlab_run_options_init(sftlab_run_options* options) {
  if (options) *options = sftlab_run_options{};
}

sftlab_status sftlab_config_load(const char* path, sftlab_config** out) {
  if (!path || !out) return fail(SFTLAB_INVALID_ARGUMENT, "null argument");
  *out = nullptr;
  return guarded([&] { *out = new sftlab_config{sftlab::load_config(path)}; });
}

sftlab_status sftlab_config_parse(const char* json_text, sftlab_config** out) {
  if (!json_text || !out) return fail(SFTLAB_INVALID_ARGUMENT, "null argument");
  *out = nullptr;
  return guarded([&] { *out = new sftlab_config{sftlab::parse_config(json_text)}; });
}

void sftlab_config_free(sftlab_config* config) { delete config; }

sftlab_status sftlab_run(const sftlab_config* config, const char* subcommand, const sftlab_run_options* options,
                         sftlab_table** out) {
  if (!config || !subcommand || !out) return fail(SFTLAB_INVALID_ARGUMENT, "null argument");
  *out = nullptr;
  sftlab::RunOptions opt;
  if (options) {
    if (options->has_max_period) opt.max_period = options->max_period;
    if (options->has_k) opt.k = options->k;
    if (options->has_seed) opt.seed = options->seed;
    if (options->has_threads) opt.threads = options->threads;
    opt.shrinkage = options->shrinkage != 0;
  }
  return guarded([&] { *out = new sftlab_table{sftlab::run_subcommand(subcommand, config->config, opt), {}, {}}; });
}

void sftlab_table_free(sftlab_table* table) { delete table; }

const char* sftlab_table_schema(const sftlab_table* table) { return table ? table->table.schema.c_str() : ""; }

size_t sftlab_table_rows(const sftlab_table* table) { return table ? table->table.rows.size() : 0; }

size_t sftlab_table_columns(const sftlab_table* table) { return table ? table->table.columns.size() : 0; }

const char* sftlab_table_column_name(const sftlab_table* table, size_t column) {
  if (!table || column >= table->table.columns.size()) return nullptr;
  return table->table.columns[column].name.c_str();
}

sftlab_status sftlab_table_number(const sftlab_table* table, size_t row, size_t column, double* out) {
  if (!table || !out) return fail(SFTLAB_INVALID_ARGUMENT, "null argument");
  if (row >= table->table.rows.size() || column >= table->table.columns.size())
    return fail(SFTLAB_RANGE_MISMATCH, "cell index out of range");
  const auto& cell = table->table.rows[row][column];
  if (const auto* i = std::get_if<std::int64_t>(&cell)) {
    *out = static_cast<double>(*i);
  } else if (const auto* d = std::get_if<double>(&cell)) {
    *out = *d;
  } else {
    return fail(SFTLAB_INVALID_ARGUMENT, "cell is text");
  }
  return SFTLAB_OK;
}

const char* sftlab_table_csv(const sftlab_table* table) {
  if (!table) return "";
  if (!table->csv) table->csv = table->table.to_csv();
  return table->csv->c_str();
}

const char* sftlab_table_json(const sftlab_table* table) {
  if (!table) return "";
  if (!table->json) table->json = table->table.to_json();
  return table->json->c_str();
}

sftlab_status sftlab_measure_create(int alphabet_size, const int* forbidden, size_t n_forbidden,
                                    const double* transition, sftlab_measure** out) {
  if (!out || (n_forbidden && !forbidden)) return fail(SFTLAB_INVALID_ARGUMENT, "null argument");
  *out = nullptr;
  return guarded([&] {
    std::vector<std::pair<int, int>> pairs;
    for (size_t i = 0; i < n_forbidden; ++i) pairs.emplace_back(forbidden[2 * i], forbidden[2 * i + 1]);
    const auto spec = sftlab::SubshiftSpec::validate(alphabet_size, pairs);
    if (!transition) {
      *out = new sftlab_measure{sftlab::MarkovMeasure::uniform(spec)};
      return;
    }
    const auto n = static_cast<size_t>(alphabet_size);
    std::vector<std::vector<double>> rows(n);
    for (size_t i = 0; i < n; ++i) rows[i].assign(transition + i * n, transition + (i + 1) * n);
    *out = new sftlab_measure{sftlab::MarkovMeasure::stationary_markov(spec, rows)};
  });
}

void sftlab_measure_free(sftlab_measure* measure) { delete measure; }

sftlab_status sftlab_measure_stationary(const sftlab_measure* measure, double* out, size_t len) {
  if (!measure || !out) return fail(SFTLAB_INVALID_ARGUMENT, "null argument");
  const auto pi = measure->measure.stationary_vector();
  if (len < pi.size()) return fail(SFTLAB_RANGE_MISMATCH, "output buffer too short");
  for (size_t i = 0; i < pi.size(); ++i) out[i] = pi[i];
  return SFTLAB_OK;
}

sftlab_status sftlab_lyapunov_mc(const sftlab_measure* measure, double k, int64_t n_steps, int n_samples,
                                 uint64_t seed, sftlab_estimate* out) {
  if (!measure || !out) return fail(SFTLAB_INVALID_ARGUMENT, "null argument");
  return guarded([&] {
    const auto e = sftlab::lyapunov_mc(measure->measure, k, {n_steps, n_samples, seed, 1});
    *out = sftlab_estimate{e.k, e.value, e.std_error, e.n_steps, e.n_samples, e.seed};
  });
}

sftlab_status sftlab_monodromy_trace(const sftlab_measure* measure, const int* cycle, size_t period, double k,
                                     double* out) {
  if (!measure || !out) return fail(SFTLAB_INVALID_ARGUMENT, "null argument");
  return guarded([&] { *out = sftlab::monodromy_trace(make_point(measure, cycle, period), k); });
}

sftlab_status sftlab_lyapunov_periodic(const sftlab_measure* measure, const int* cycle, size_t period, double k,
                                       double* out) {
  if (!measure || !out) return fail(SFTLAB_INVALID_ARGUMENT, "null argument");
  return guarded([&] { *out = sftlab::lyapunov_periodic(make_point(measure, cycle, period), k); });
}

}  // extern "C"
