#pragma once

// Run configuration and tabular results shared by the C API and the CLI.
//
// Config file (JSON). Only "subshift" is required; every other section falls
// back to the defaults below.
//
//   {
//     "subshift": {"alphabet_size": 2, "forbidden": [[2, 2]]},
//     "markov":   {"transition": [[0.5, 0.5], [1.0, 0.0]]},   // default: uniform over allowed
//     "grid":     {"count": 101, "k_min": 0.05, "k_max": 3.0915926535897933},
//     "mc":       {"n_steps": 100000, "n_samples": 100, "seed": 0, "threads": 1},
//     "bands":    {"grid_points": 2001, "tol": 1e-10, "max_period": 6},
//     "graph":    {"window": 50, "k": 1.0},
//     "epsilon": 0.01,
//     "exclusion_halfwidth": 0.02
//   }

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "sftlab/error.hpp"
#include "sftlab/lyapunov.hpp"
#include "sftlab/measure.hpp"

namespace sftlab {

struct KGrid {
  int count = 101;
  double k_min = 0.05;
  double k_max = 3.0915926535897933;  // pi - 0.05

  std::vector<double> points() const;
};

struct BandParams {
  int grid_points = kDefaultGridPoints;
  double tol = kDefaultBandTol;
  int max_period = 6;
};

struct GraphParams {
  int window = 50;
  double k = 1.0;
};

struct RunConfig {
  MarkovMeasure measure;
  KGrid grid;
  McParams mc;
  BandParams bands;
  GraphParams graph;
  double epsilon = kDefaultZeroEpsilon;
  double exclusion_halfwidth = kDefaultExclusionHalfwidth;

  const SubshiftSpec& subshift() const noexcept { return measure.spec(); }
};

// Throw ParseError (malformed JSON or fields, with field path), plus the
// validation errors of the underlying modules.
RunConfig parse_config(std::string_view json_text);
RunConfig load_config(const std::string& path);

enum class ColumnType { Integer, Real, Text };

struct Column {
  std::string name;
  ColumnType type = ColumnType::Real;

  friend bool operator==(const Column&, const Column&) = default;
};

using Cell = std::variant<std::int64_t, double, std::string>;

struct ResultTable {
  std::string schema;
  std::vector<Column> columns;
  std::vector<std::vector<Cell>> rows;

  // Throws InvalidArgument if the row width or cell types do not match.
  void add_row(std::vector<Cell> row);

  // Header line, then one line per row; reals as %.17g.
  std::string to_csv() const;
  std::string to_json() const;

  // Reads CSV produced by to_csv for a table with the given schema and
  // columns. Throws ParseError on mismatch.
  static ResultTable from_csv(std::string_view csv, std::string schema, std::vector<Column> columns);

  friend bool operator==(const ResultTable&, const ResultTable&) = default;
};

// Formats a real with 17 significant digits.
std::string format_real(double x);

struct RunOptions {
  std::optional<int> max_period;
  std::optional<double> k;
  std::optional<std::uint64_t> seed;
  std::optional<int> threads;
  bool shrinkage = false;  // candidates: per-period summary instead of intervals
};

inline constexpr const char* kSubcommands[] = {"periodic", "bands",  "candidates",  "lyapunov",
                                               "zeroset",  "kalinin", "verify-graph"};

// Throws UnknownSubcommand for names outside kSubcommands.
ResultTable run_subcommand(std::string_view name, const RunConfig& config, const RunOptions& options = {});

// 0 success, 2 config or validation error, 3 numeric failure, 1 usage.
int exit_code_for(ErrorCode code) noexcept;

}  // namespace sftlab
