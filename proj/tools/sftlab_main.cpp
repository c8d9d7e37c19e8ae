// sftlab command-line front end, built on the C API only.

#include <CLI11.hpp>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <string>

#include "sftlab/sftlab.h"

namespace {

struct Args {
  std::string config;
  std::optional<int> max_period;
  std::optional<double> k;
  std::optional<std::uint64_t> seed;
  std::optional<int> threads;
  bool json = false;
  bool shrinkage = false;
  std::string output;
};

struct ConfigDeleter {
  void operator()(sftlab_config* c) const { sftlab_config_free(c); }
};
struct TableDeleter {
  void operator()(sftlab_table* t) const { sftlab_table_free(t); }
};

int report(sftlab_status s) {
  std::cerr << "sftlab: " << sftlab_status_name(s) << ": " << sftlab_last_error() << "\n";
  return sftlab_exit_code(s);
}

int run(const std::string& name, const Args& args) {
  sftlab_config* raw_config = nullptr;
  if (auto s = sftlab_config_load(args.config.c_str(), &raw_config); s != SFTLAB_OK) return report(s);
  std::unique_ptr<sftlab_config, ConfigDeleter> config(raw_config);

  sftlab_run_options opt;
  sftlab_run_options_init(&opt);
  if (args.max_period) {
    opt.has_max_period = 1;
    opt.max_period = *args.max_period;
  }
  if (args.k) {
    opt.has_k = 1;
    opt.k = *args.k;
  }
  if (args.seed) {
    opt.has_seed = 1;
    opt.seed = *args.seed;
  }
  if (args.threads) {
    opt.has_threads = 1;
    opt.threads = *args.threads;
  }
  opt.shrinkage = args.shrinkage ? 1 : 0;

  sftlab_table* raw_table = nullptr;
  if (auto s = sftlab_run(config.get(), name.c_str(), &opt, &raw_table); s != SFTLAB_OK) return report(s);
  std::unique_ptr<sftlab_table, TableDeleter> table(raw_table);

  const char* text = args.json ? sftlab_table_json(table.get()) : sftlab_table_csv(table.get());
  if (args.output.empty()) {
    std::fputs(text, stdout);
  } else {
    std::ofstream out(args.output, std::ios::binary);
    if (!out) {
      std::cerr << "sftlab: cannot write '" << args.output << "'\n";
      return 2;
    }
    out << text;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Transfer-matrix toolkit for quantum graphs over subshifts of finite type"};
  app.set_version_flag("--version", std::string(sftlab_version()));
  app.require_subcommand(1);

  Args args;
  std::string chosen;

  struct Spec {
    const char* name;
    const char* help;
    bool max_period, k, seed, shrinkage;
  };
  const Spec specs[] = {
      {"periodic", "List primitive periodic points up to --max-period", true, false, false, false},
      {"bands", "Band edges of every periodic point up to the configured period", true, false, false, false},
      {"candidates", "Intersection of periodic bands (zero-exponent candidates)", true, false, false, true},
      {"lyapunov", "Monte-Carlo Lyapunov exponents on the configured k-grid", false, false, true, false},
      {"zeroset", "Grid points whose Lyapunov estimate is below epsilon", false, false, true, false},
      {"kalinin", "Distance between periodic and ergodic exponents at --k", true, true, true, false},
      {"verify-graph", "Kirchhoff residuals of recursion-generated vertex data", false, true, true, false},
  };

  for (const auto& s : specs) {
    auto* sub = app.add_subcommand(s.name, s.help);
    sub->add_option("--config,-c", args.config, "JSON run configuration")->required();
    if (s.max_period) sub->add_option("--max-period", args.max_period, "Largest period to enumerate");
    if (s.k) {
      auto* opt = sub->add_option("--k", args.k, "Wavenumber k");
      if (std::string(s.name) == "kalinin") opt->required();
    }
    if (s.seed) sub->add_option("--seed", args.seed, "Override the configured seed");
    if (s.seed) sub->add_option("--threads", args.threads, "Worker threads for Monte-Carlo samples (0 = all cores)");
    if (s.shrinkage) sub->add_flag("--shrinkage", args.shrinkage, "Summarize the candidate set for each period");
    sub->add_flag("--json", args.json, "Emit JSON instead of CSV");
    sub->add_option("--output,-o", args.output, "Write to file instead of stdout");
    sub->callback([&chosen, name = std::string(s.name)] { chosen = name; });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    // help and --version exit 0; anything else is a usage error
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }
  return run(chosen, args);
}
