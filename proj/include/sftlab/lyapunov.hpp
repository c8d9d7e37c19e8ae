#pragma once

// Lyapunov exponents of the cocycle: exact values on periodic orbits and
// Monte-Carlo estimates for Markov measures.
//
// Sample i of an estimate with base seed s draws its path from the stream
// sub_seed(s, i) (see measure.hpp). Per-sample rates are reduced in sample
// order, so results do not depend on the thread count.

#include <cstdint>
#include <vector>

#include "sftlab/measure.hpp"
#include "sftlab/sft.hpp"
#include "sftlab/spectra.hpp"

namespace sftlab {

struct McParams {
  std::int64_t n_steps = 100000;
  int n_samples = 100;
  std::uint64_t seed = 0;
  int threads = 1;  // 0 selects std::thread::hardware_concurrency()
};

struct LyapunovEstimate {
  double k = 0.0;
  double value = 0.0;
  double std_error = 0.0;  // sample std deviation / sqrt(n_samples)
  std::int64_t n_steps = 0;
  int n_samples = 0;
  std::uint64_t seed = 0;
};

inline constexpr double kDefaultZeroEpsilon = 0.01;
inline constexpr double kDefaultExclusionHalfwidth = 0.02;

// (1/n_p) ln(spectral radius of A_{n_p}(p)); 0 inside the bands.
double lyapunov_periodic(const PeriodicPoint& p, double k);
double lyapunov_periodic(const PeriodicPoint& p, const SpectralParameter& k);

// Growth rate (1/n) ln ||A_n(w)|| of one path over -1..n-1.
double path_rate(const SpectralParameter& k, const Word& word);

// Throws InvalidArgument for n_steps < 1000 or n_samples < 2.
LyapunovEstimate lyapunov_mc(const MarkovMeasure& measure, double k, const McParams& params);
LyapunovEstimate lyapunov_mc(const MarkovMeasure& measure, const SpectralParameter& k, const McParams& params);

// Every k in {0, pi/2, pi} +- halfwidth.
bool in_exclusion_window(double k, double halfwidth = kDefaultExclusionHalfwidth);

struct ZeroSetEntry {
  LyapunovEstimate estimate;
  bool in_exclusion_window = false;
};

// Estimates at every grid point, in grid order.
std::vector<LyapunovEstimate> lyapunov_scan(const MarkovMeasure& measure, const std::vector<double>& k_grid,
                                            const McParams& params);

// Grid points whose estimate is below epsilon.
std::vector<ZeroSetEntry> zero_set_scan(const MarkovMeasure& measure, const std::vector<double>& k_grid,
                                        double epsilon, const McParams& params,
                                        double exclusion_halfwidth = kDefaultExclusionHalfwidth);

// min over primitive p with n_p <= max_period of |L(A, p) - L_mc|.
double kalinin_gap(const MarkovMeasure& measure, double k, int max_period, const McParams& params);

// kalinin_gap for max_period = 1..max_period from a single MC estimate.
// Entry i corresponds to max_period = i + 1.
std::vector<double> kalinin_profile(const MarkovMeasure& measure, double k, int max_period, const McParams& params);

}  // namespace sftlab
