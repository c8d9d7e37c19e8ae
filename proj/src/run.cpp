#include "sftlab/run.hpp"

#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <json.hpp>
#include <sstream>

#include "sftlab/error.hpp"
#include "sftlab/graph_model.hpp"
#include "sftlab/spectra.hpp"

namespace sftlab {

using nlohmann::json;

std::vector<double> KGrid::points() const {
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(count));
  if (count == 1) {
    out.push_back(k_min);
    return out;
  }
  const double step = (k_max - k_min) / (count - 1);
  for (int i = 0; i < count; ++i) out.push_back(i == count - 1 ? k_max : k_min + step * i);
  return out;
}

namespace {

// Seeds are written to int64 CSV columns.
constexpr std::uint64_t kMaxSeed = static_cast<std::uint64_t>(INT64_MAX);

std::uint64_t checked_seed(std::uint64_t seed) {
  if (seed > kMaxSeed) throw Error(ErrorCode::InvalidArgument, "seed must fit in a signed 64-bit integer");
  return seed;
}

[[noreturn]] void parse_fail(const std::string& path, const std::string& msg) {
  throw Error(ErrorCode::ParseError, path + ": " + msg);
}

const json* child(const json& obj, const std::string& path, const char* key) {
  if (!obj.is_object()) parse_fail(path, "expected an object");
  auto it = obj.find(key);
  return it == obj.end() ? nullptr : &*it;
}

std::int64_t as_integer(const json& v, const std::string& path) {
  if (!v.is_number_integer()) parse_fail(path, "expected an integer");
  return v.get<std::int64_t>();
}

double as_real(const json& v, const std::string& path) {
  if (!v.is_number()) parse_fail(path, "expected a number");
  return v.get<double>();
}

template <class T>
void read_int(const json& obj, const std::string& path, const char* key, T& out) {
  if (const json* v = child(obj, path, key)) out = static_cast<T>(as_integer(*v, path + "." + key));
}

void read_real(const json& obj, const std::string& path, const char* key, double& out) {
  if (const json* v = child(obj, path, key)) out = as_real(*v, path + "." + key);
}

// Rethrows module errors with the config section they came from.
template <class F>
auto with_context(const std::string& path, F&& f) {
  try {
    return f();
  } catch (const Error& e) {
    throw Error(e.code(), path + ": " + e.what());
  }
}

void require(bool ok, const std::string& path, const std::string& msg) {
  if (!ok) throw Error(ErrorCode::InvalidArgument, path + ": " + msg);
}

}  // namespace

RunConfig parse_config(std::string_view json_text) {
  json root;
  try {
    root = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::ParseError, std::string("config: ") + e.what());
  }
  if (!root.is_object()) parse_fail("config", "top level must be an object");

  const json* sub = child(root, "config", "subshift");
  if (!sub) parse_fail("config", "missing required section 'subshift'");
  const json* size = child(*sub, "subshift", "alphabet_size");
  if (!size) parse_fail("subshift", "missing 'alphabet_size'");
  const int alphabet = static_cast<int>(as_integer(*size, "subshift.alphabet_size"));
  std::vector<std::pair<int, int>> forbidden;
  if (const json* f = child(*sub, "subshift", "forbidden")) {
    if (!f->is_array()) parse_fail("subshift.forbidden", "expected an array of pairs");
    for (std::size_t i = 0; i < f->size(); ++i) {
      const std::string p = "subshift.forbidden[" + std::to_string(i) + "]";
      const json& pair = (*f)[i];
      if (!pair.is_array() || pair.size() != 2) parse_fail(p, "expected a pair [from, to]");
      forbidden.emplace_back(static_cast<int>(as_integer(pair[0], p + "[0]")),
                             static_cast<int>(as_integer(pair[1], p + "[1]")));
    }
  }
  const SubshiftSpec spec = with_context("subshift", [&] { return SubshiftSpec::validate(alphabet, forbidden); });

  std::optional<MarkovMeasure> measure;
  if (const json* m = child(root, "config", "markov")) {
    const json* t = child(*m, "markov", "transition");
    if (!t) parse_fail("markov", "missing 'transition'");
    if (!t->is_array()) parse_fail("markov.transition", "expected an array of rows");
    std::vector<std::vector<double>> rows;
    for (std::size_t i = 0; i < t->size(); ++i) {
      const std::string p = "markov.transition[" + std::to_string(i) + "]";
      const json& row = (*t)[i];
      if (!row.is_array()) parse_fail(p, "expected an array");
      std::vector<double> r;
      for (std::size_t j = 0; j < row.size(); ++j) r.push_back(as_real(row[j], p + "[" + std::to_string(j) + "]"));
      rows.push_back(std::move(r));
    }
    measure = with_context("markov.transition", [&] { return MarkovMeasure::stationary_markov(spec, rows); });
  } else {
    measure = MarkovMeasure::uniform(spec);
  }

  RunConfig cfg{*measure, {}, {}, {}, {}};
  if (const json* g = child(root, "config", "grid")) {
    read_int(*g, "grid", "count", cfg.grid.count);
    read_real(*g, "grid", "k_min", cfg.grid.k_min);
    read_real(*g, "grid", "k_max", cfg.grid.k_max);
  }
  if (const json* mc = child(root, "config", "mc")) {
    read_int(*mc, "mc", "n_steps", cfg.mc.n_steps);
    read_int(*mc, "mc", "n_samples", cfg.mc.n_samples);
    if (const json* s = child(*mc, "mc", "seed")) {
      if (!s->is_number_unsigned() && !(s->is_number_integer() && s->get<std::int64_t>() >= 0))
        parse_fail("mc.seed", "expected a non-negative integer");
      cfg.mc.seed = s->get<std::uint64_t>();
      if (cfg.mc.seed > kMaxSeed) parse_fail("mc.seed", "must fit in a signed 64-bit integer");
    }
    read_int(*mc, "mc", "threads", cfg.mc.threads);
  }
  if (const json* b = child(root, "config", "bands")) {
    read_int(*b, "bands", "grid_points", cfg.bands.grid_points);
    read_real(*b, "bands", "tol", cfg.bands.tol);
    read_int(*b, "bands", "max_period", cfg.bands.max_period);
  }
  if (const json* g = child(root, "config", "graph")) {
    read_int(*g, "graph", "window", cfg.graph.window);
    read_real(*g, "graph", "k", cfg.graph.k);
  }
  read_real(root, "config", "epsilon", cfg.epsilon);
  read_real(root, "config", "exclusion_halfwidth", cfg.exclusion_halfwidth);

  require(cfg.grid.count >= 1, "grid.count", "must be at least 1");
  require(cfg.grid.k_min <= cfg.grid.k_max, "grid", "k_min must not exceed k_max");
  for (double k : cfg.grid.points())
    require(std::abs(std::sin(k)) > 1e-12, "grid", "grid hits an integer multiple of pi");
  require(cfg.mc.n_steps >= 1000, "mc.n_steps", "must be at least 1000");
  require(cfg.mc.n_samples >= 2, "mc.n_samples", "must be at least 2");
  require(cfg.mc.threads >= 0, "mc.threads", "must be non-negative");
  require(cfg.bands.grid_points >= 64, "bands.grid_points", "must be at least 64");
  require(cfg.bands.tol > 0.0, "bands.tol", "must be positive");
  require(cfg.bands.max_period >= 1, "bands.max_period", "must be at least 1");
  require(cfg.graph.window >= 3, "graph.window", "must be at least 3");
  require(cfg.epsilon >= 0.0, "epsilon", "must be non-negative");
  require(cfg.exclusion_halfwidth >= 0.0, "exclusion_halfwidth", "must be non-negative");
  return cfg;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::IoError, "cannot open config file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str());
}

std::string format_real(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

void ResultTable::add_row(std::vector<Cell> row) {
  if (row.size() != columns.size()) {
    throw Error(ErrorCode::InvalidArgument, "row has " + std::to_string(row.size()) + " cells, table " + schema +
                                                " has " + std::to_string(columns.size()) + " columns");
  }
  for (std::size_t i = 0; i < row.size(); ++i) {
    const bool ok = (columns[i].type == ColumnType::Integer && std::holds_alternative<std::int64_t>(row[i])) ||
                    (columns[i].type == ColumnType::Real && std::holds_alternative<double>(row[i])) ||
                    (columns[i].type == ColumnType::Text && std::holds_alternative<std::string>(row[i]));
    if (!ok) throw Error(ErrorCode::InvalidArgument, "cell type mismatch in column " + columns[i].name);
  }
  rows.push_back(std::move(row));
}

namespace {

std::string cell_text(const Cell& c) {
  if (const auto* i = std::get_if<std::int64_t>(&c)) return std::to_string(*i);
  if (const auto* d = std::get_if<double>(&c)) return format_real(*d);
  return std::get<std::string>(c);
}

}  // namespace

std::string ResultTable::to_csv() const {
  std::string out;
  for (std::size_t i = 0; i < columns.size(); ++i) {
    if (i) out += ',';
    out += columns[i].name;
  }
  out += '\n';
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out += ',';
      out += cell_text(row[i]);
    }
    out += '\n';
  }
  return out;
}

std::string ResultTable::to_json() const {
  json j;
  j["schema"] = schema;
  j["columns"] = json::array();
  for (const auto& c : columns) j["columns"].push_back(c.name);
  j["rows"] = json::array();
  for (const auto& row : rows) {
    json r = json::array();
    for (const auto& c : row) std::visit([&](const auto& v) { r.push_back(v); }, c);
    j["rows"].push_back(std::move(r));
  }
  return j.dump(2) + "\n";
}

ResultTable ResultTable::from_csv(std::string_view csv, std::string schema, std::vector<Column> columns) {
  ResultTable t{std::move(schema), std::move(columns), {}};
  std::istringstream in{std::string(csv)};
  std::string line;
  if (!std::getline(in, line)) throw Error(ErrorCode::ParseError, "empty CSV");
  std::string expected;
  for (std::size_t i = 0; i < t.columns.size(); ++i) expected += (i ? "," : "") + t.columns[i].name;
  if (line != expected) throw Error(ErrorCode::ParseError, "CSV header '" + line + "' does not match " + expected);
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    std::vector<Cell> row;
    std::size_t start = 0;
    for (std::size_t i = 0; i < t.columns.size(); ++i) {
      const std::size_t end = i + 1 == t.columns.size() ? line.size() : line.find(',', start);
      if (end == std::string::npos) throw Error(ErrorCode::ParseError, "line " + std::to_string(line_no) + ": too few cells");
      const std::string field = line.substr(start, end - start);
      char* stop = nullptr;
      switch (t.columns[i].type) {
        case ColumnType::Integer:
          row.emplace_back(static_cast<std::int64_t>(std::strtoll(field.c_str(), &stop, 10)));
          break;
        case ColumnType::Real:
          row.emplace_back(std::strtod(field.c_str(), &stop));
          break;
        case ColumnType::Text:
          row.emplace_back(field);
          stop = nullptr;
          break;
      }
      if (stop && (*stop != '\0' || field.empty()))
        throw Error(ErrorCode::ParseError, "line " + std::to_string(line_no) + ": bad cell '" + field + "'");
      start = end + 1;
    }
    t.add_row(std::move(row));
  }
  return t;
}

namespace {

ResultTable make_table(std::string schema, std::vector<Column> columns) {
  return ResultTable{std::move(schema), std::move(columns), {}};
}

McParams mc_params(const RunConfig& cfg, const RunOptions& opt) {
  McParams p = cfg.mc;
  if (opt.seed) p.seed = checked_seed(*opt.seed);
  if (opt.threads) p.threads = *opt.threads;
  return p;
}

int max_period(const RunConfig& cfg, const RunOptions& opt) {
  const int m = opt.max_period.value_or(cfg.bands.max_period);
  if (m < 1) throw Error(ErrorCode::InvalidArgument, "max-period must be at least 1");
  return m;
}

ResultTable run_periodic(const RunConfig& cfg, const RunOptions& opt) {
  auto t = make_table("periodic", {{"period", ColumnType::Integer}, {"cycle", ColumnType::Text}});
  for (const auto& p : enumerate_periodic_points(cfg.subshift(), max_period(cfg, opt)))
    t.add_row({std::int64_t{p.period()}, to_string(p)});
  return t;
}

ResultTable run_bands(const RunConfig& cfg, const RunOptions& opt) {
  auto t = make_table("bands", {{"period", ColumnType::Integer},
                                {"cycle", ColumnType::Text},
                                {"band_index", ColumnType::Integer},
                                {"k_lo", ColumnType::Real},
                                {"k_hi", ColumnType::Real}});
  for (const auto& p : enumerate_periodic_points(cfg.subshift(), max_period(cfg, opt))) {
    const BandSet b = band_set(p, cfg.bands.grid_points, cfg.bands.tol);
    for (std::size_t i = 0; i < b.size(); ++i)
      t.add_row({std::int64_t{p.period()}, to_string(p), static_cast<std::int64_t>(i), b.intervals[i].lo,
                 b.intervals[i].hi});
  }
  return t;
}

ResultTable run_candidates(const RunConfig& cfg, const RunOptions& opt) {
  const auto levels = candidate_shrinkage(cfg.subshift(), max_period(cfg, opt), cfg.bands.grid_points, cfg.bands.tol);
  if (opt.shrinkage) {
    auto t = make_table("candidates-shrinkage", {{"max_period", ColumnType::Integer},
                                                 {"interval_count", ColumnType::Integer},
                                                 {"total_length", ColumnType::Real}});
    for (std::size_t i = 0; i < levels.size(); ++i)
      t.add_row({static_cast<std::int64_t>(i + 1), static_cast<std::int64_t>(levels[i].size()),
                 levels[i].total_length()});
    return t;
  }
  auto t = make_table("candidates",
                      {{"interval_index", ColumnType::Integer}, {"k_lo", ColumnType::Real}, {"k_hi", ColumnType::Real}});
  const BandSet& c = levels.back();
  for (std::size_t i = 0; i < c.size(); ++i)
    t.add_row({static_cast<std::int64_t>(i), c.intervals[i].lo, c.intervals[i].hi});
  return t;
}

ResultTable run_lyapunov(const RunConfig& cfg, const RunOptions& opt) {
  auto t = make_table("lyapunov", {{"k", ColumnType::Real},
                                   {"value", ColumnType::Real},
                                   {"stderr", ColumnType::Real},
                                   {"n_steps", ColumnType::Integer},
                                   {"n_samples", ColumnType::Integer},
                                   {"seed", ColumnType::Integer}});
  for (const auto& e : lyapunov_scan(cfg.measure, cfg.grid.points(), mc_params(cfg, opt)))
    t.add_row({e.k, e.value, e.std_error, e.n_steps, std::int64_t{e.n_samples}, static_cast<std::int64_t>(e.seed)});
  return t;
}

ResultTable run_zeroset(const RunConfig& cfg, const RunOptions& opt) {
  auto t = make_table("zeroset", {{"k", ColumnType::Real},
                                  {"value", ColumnType::Real},
                                  {"stderr", ColumnType::Real},
                                  {"in_exclusion_window", ColumnType::Integer}});
  for (const auto& z :
       zero_set_scan(cfg.measure, cfg.grid.points(), cfg.epsilon, mc_params(cfg, opt), cfg.exclusion_halfwidth))
    t.add_row({z.estimate.k, z.estimate.value, z.estimate.std_error, std::int64_t{z.in_exclusion_window ? 1 : 0}});
  return t;
}

ResultTable run_kalinin(const RunConfig& cfg, const RunOptions& opt) {
  if (!opt.k) throw Error(ErrorCode::InvalidArgument, "kalinin needs --k");
  auto t = make_table("kalinin", {{"max_period", ColumnType::Integer}, {"gap", ColumnType::Real}});
  const auto profile = kalinin_profile(cfg.measure, *opt.k, max_period(cfg, opt), mc_params(cfg, opt));
  for (std::size_t i = 0; i < profile.size(); ++i) t.add_row({static_cast<std::int64_t>(i + 1), profile[i]});
  return t;
}

ResultTable run_verify_graph(const RunConfig& cfg, const RunOptions& opt) {
  const double k = opt.k.value_or(cfg.graph.k);
  const std::uint64_t seed = checked_seed(opt.seed.value_or(cfg.mc.seed));
  const Word word = sample_window(cfg.measure, -1, cfg.graph.window - 2, sub_seed(seed, 0));
  std::mt19937_64 engine(splitmix64(sub_seed(seed, 1)));
  const double u0 = 2.0 * uniform01(engine) - 1.0;
  const double um1 = 2.0 * uniform01(engine) - 1.0;
  const VertexData data = recursion_vertex_data(word, k, u0, um1);
  const double scale = residual_scale(data, k);
  auto t = make_table("verify-graph", {{"vertex", ColumnType::Integer}, {"residual", ColumnType::Real}});
  for (const auto& r : kirchhoff_residual(data, k))
    t.add_row({r.vertex, scale > 0.0 ? std::abs(r.residual) / scale : std::abs(r.residual)});
  return t;
}

}  // namespace

ResultTable run_subcommand(std::string_view name, const RunConfig& config, const RunOptions& options) {
  if (name == "periodic") return run_periodic(config, options);
  if (name == "bands") return run_bands(config, options);
  if (name == "candidates") return run_candidates(config, options);
  if (name == "lyapunov") return run_lyapunov(config, options);
  if (name == "zeroset") return run_zeroset(config, options);
  if (name == "kalinin") return run_kalinin(config, options);
  if (name == "verify-graph") return run_verify_graph(config, options);
  throw Error(ErrorCode::UnknownSubcommand, "unknown subcommand '" + std::string(name) + "'");
}

int exit_code_for(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::ParseError:
    case ErrorCode::SupportViolation:
    case ErrorCode::NotStochastic:
    case ErrorCode::NotTransitive:
    case ErrorCode::EmptySubshift:
    case ErrorCode::InvalidArgument:
    case ErrorCode::IoError:
      return 2;
    case ErrorCode::SingularEnergy:
    case ErrorCode::ResolutionTooCoarse:
    case ErrorCode::ParabolicOrCentral:
    case ErrorCode::RangeMismatch:
    case ErrorCode::NotInStableSet:
    case ErrorCode::NotInUnstableSet:
      return 3;
    case ErrorCode::UnknownSubcommand:
      return 1;
  }
  return 1;
}

}  // namespace sftlab
