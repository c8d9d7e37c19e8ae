#include "sftlab/lyapunov.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <thread>

#include "sftlab/error.hpp"

namespace sftlab {

double lyapunov_periodic(const PeriodicPoint& p, const SpectralParameter& k) {
  const double tr = monodromy_trace(p, k);
  const double half = std::abs(tr) / 2.0;
  if (half <= 1.0) return 0.0;
  // ln(|t|/2 + sqrt(t^2/4 - 1)) = acosh(|t|/2)
  return std::acosh(half) / p.period();
}

double lyapunov_periodic(const PeriodicPoint& p, double k) {
  return lyapunov_periodic(p, SpectralParameter::from_k(k));
}

double path_rate(const SpectralParameter& k, const Word& word) {
  if (word.size() < 2) throw Error(ErrorCode::InvalidArgument, "path_rate needs at least one step");
  return cocycle_product(k, word).log_norm() / static_cast<double>(word.size() - 1);
}

namespace {

// One-step matrices for every allowed (prev, cur) pair.
class StepTable {
 public:
  StepTable(const MarkovMeasure& measure, const SpectralParameter& k) : n_(measure.alphabet_size()) {
    table_.resize(static_cast<std::size_t>(n_ * n_));
    for (int i = 1; i <= n_; ++i)
      for (int j = 1; j <= n_; ++j)
        if (measure.spec().allowed(Letter(i), Letter(j)))
          table_[static_cast<std::size_t>((i - 1) * n_ + (j - 1))] = a_matrix(k, Letter(i), Letter(j));
  }

  const Mat2& operator()(Letter prev, Letter cur) const noexcept {
    return table_[static_cast<std::size_t>((prev.value - 1) * n_ + (cur.value - 1))];
  }

 private:
  int n_;
  std::vector<Mat2> table_;
};

double sample_rate(const MarkovMeasure& measure, const StepTable& steps, std::int64_t n_steps, std::uint64_t seed) {
  MarkovSampler sampler(measure, seed);
  Letter prev = sampler.next();
  ScaledMat2 acc;
  for (std::int64_t i = 0; i < n_steps; ++i) {
    const Letter cur = sampler.next();
    acc.push(steps(prev, cur));
    prev = cur;
  }
  return acc.log_norm() / static_cast<double>(n_steps);
}

}  // namespace

LyapunovEstimate lyapunov_mc(const MarkovMeasure& measure, const SpectralParameter& k, const McParams& params) {
  if (params.n_steps < 1000) throw Error(ErrorCode::InvalidArgument, "n_steps must be at least 1000");
  if (params.n_samples < 2) throw Error(ErrorCode::InvalidArgument, "n_samples must be at least 2");

  const StepTable steps(measure, k);
  std::vector<double> rates(static_cast<std::size_t>(params.n_samples));

  int workers = params.threads > 0 ? params.threads : static_cast<int>(std::thread::hardware_concurrency());
  workers = std::clamp(workers, 1, params.n_samples);
  auto run = [&](int first) {
    for (int i = first; i < params.n_samples; i += workers) {
      rates[static_cast<std::size_t>(i)] =
          sample_rate(measure, steps, params.n_steps, sub_seed(params.seed, static_cast<std::uint64_t>(i)));
    }
  };
  if (workers == 1) {
    run(0);
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(static_cast<std::size_t>(workers));
    for (int w = 0; w < workers; ++w) pool.emplace_back(run, w);
  }

  double mean = 0.0;
  for (double r : rates) mean += r;
  mean /= params.n_samples;
  double ss = 0.0;
  for (double r : rates) ss += (r - mean) * (r - mean);
  const double sd = std::sqrt(ss / (params.n_samples - 1));

  LyapunovEstimate out;
  out.k = k.k();
  out.value = mean;
  out.std_error = sd / std::sqrt(static_cast<double>(params.n_samples));
  out.n_steps = params.n_steps;
  out.n_samples = params.n_samples;
  out.seed = params.seed;
  return out;
}

LyapunovEstimate lyapunov_mc(const MarkovMeasure& measure, double k, const McParams& params) {
  return lyapunov_mc(measure, SpectralParameter::from_k(k), params);
}

bool in_exclusion_window(double k, double halfwidth) {
  constexpr double pi = std::numbers::pi;
  return std::abs(k) <= halfwidth || std::abs(k - pi / 2) <= halfwidth || std::abs(k - pi) <= halfwidth;
}

std::vector<LyapunovEstimate> lyapunov_scan(const MarkovMeasure& measure, const std::vector<double>& k_grid,
                                            const McParams& params) {
  std::vector<LyapunovEstimate> out;
  out.reserve(k_grid.size());
  for (double k : k_grid) out.push_back(lyapunov_mc(measure, k, params));
  return out;
}

std::vector<ZeroSetEntry> zero_set_scan(const MarkovMeasure& measure, const std::vector<double>& k_grid,
                                        double epsilon, const McParams& params, double exclusion_halfwidth) {
  std::vector<ZeroSetEntry> out;
  for (const auto& est : lyapunov_scan(measure, k_grid, params)) {
    if (est.value < epsilon) out.push_back({est, in_exclusion_window(est.k, exclusion_halfwidth)});
  }
  return out;
}

std::vector<double> kalinin_profile(const MarkovMeasure& measure, double k, int max_period, const McParams& params) {
  const auto kp = SpectralParameter::from_k(k);
  const double mc = lyapunov_mc(measure, kp, params).value;
  const auto points = enumerate_periodic_points(measure.spec(), max_period);
  std::vector<double> out;
  double best = std::numeric_limits<double>::infinity();
  std::size_t next = 0;
  for (int period = 1; period <= max_period; ++period) {
    for (; next < points.size() && points[next].period() == period; ++next) {
      best = std::min(best, std::abs(lyapunov_periodic(points[next], kp) - mc));
    }
    out.push_back(best);
  }
  return out;
}

double kalinin_gap(const MarkovMeasure& measure, double k, int max_period, const McParams& params) {
  return kalinin_profile(measure, k, max_period, params).back();
}

}  // namespace sftlab
