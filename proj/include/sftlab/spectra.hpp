#pragma once

// Periodic spectra in the k-variable.
//
// For a periodic point p the monodromy A_{n_p}(p) has trace Delta_p(k), a
// polynomial in cos k. Bands are the closed set {k : |Delta_p(k)| <= 2},
// gaps the open remainder of [0, pi].

#include <numbers>
#include <vector>

#include "sftlab/cocycle.hpp"
#include "sftlab/sft.hpp"

namespace sftlab {

struct Interval {
  double lo = 0.0;
  double hi = 0.0;

  double length() const noexcept { return hi - lo; }
  bool contains(double x, double slack = 0.0) const noexcept { return x >= lo - slack && x <= hi + slack; }
  friend bool operator==(const Interval&, const Interval&) = default;
};

// Sorted, pairwise disjoint closed intervals inside [0, pi].
struct BandSet {
  std::vector<Interval> intervals;
  double resolution = 0.0;  // grid step of the scan that produced it
  double tol = 0.0;         // bisection tolerance on the endpoints

  static BandSet full() { return BandSet{{{0.0, std::numbers::pi}}, 0.0, 0.0}; }

  bool empty() const noexcept { return intervals.empty(); }
  std::size_t size() const noexcept { return intervals.size(); }
  bool contains(double k, double slack = 0.0) const noexcept;
  double total_length() const noexcept;
  // True iff every interval of *this lies inside some interval of outer,
  // allowing endpoint slack.
  bool subset_of(const BandSet& outer, double slack) const noexcept;
};

inline constexpr int kDefaultGridPoints = 2001;
inline constexpr double kDefaultBandTol = 1e-10;

// Lower window letter w_{-1} = p_{-1}; covers -1..n_p-1.
Word monodromy_window(const PeriodicPoint& p);
ScaledMat2 monodromy(const PeriodicPoint& p, const SpectralParameter& k);

// Trace of A_{n_p}(p). Throws SingularEnergy at k in pi*Z.
double monodromy_trace(const PeriodicPoint& p, const SpectralParameter& k);
double monodromy_trace(const PeriodicPoint& p, double k);

// Bands of p on (0, pi): |Delta_p| - 2 sampled at grid_points uniform nodes
// of [0, pi] (the singular endpoints are not evaluated), every sign change
// bisected to tol. Throws InvalidArgument for grid_points < 64 or tol <= 0,
// ResolutionTooCoarse if a grid cell still hides two crossings after
// refinement.
BandSet band_set(const PeriodicPoint& p, int grid_points = kDefaultGridPoints, double tol = kDefaultBandTol);

// Same scan over an arbitrary k range [lo, hi]; band_set is the case
// [0, pi]. Used for the spectral branches [pi (j-1), pi j].
BandSet band_set_on(const PeriodicPoint& p, double lo, double hi, int grid_points, double tol);

// Closure of [0, pi] minus the bands.
BandSet gaps(const BandSet& b);

// Interval sweep; the empty list intersects to [0, pi].
BandSet intersect(const std::vector<BandSet>& bands);

// Image of the k-bands under k -> cos k, sorted ascending in [-1, 1]:
// the spectrum of the periodic weighted operator
// (H u)(n) = p_n/(p_n + p_{n-1}) u(n+1) + p_{n-1}/(p_n + p_{n-1}) u(n-1).
std::vector<Interval> h_tilde_bands(const PeriodicPoint& p, int grid_points = kDefaultGridPoints,
                                    double tol = kDefaultBandTol);

// Intersection of band_set(p) over all primitive p with n_p <= max_period.
BandSet exceptional_candidates(const SubshiftSpec& spec, int max_period, int grid_points = kDefaultGridPoints,
                               double tol = kDefaultBandTol);

// exceptional_candidates for max_period = 1, 2, ..., max_period, computed
// incrementally. Entry i corresponds to max_period = i + 1.
std::vector<BandSet> candidate_shrinkage(const SubshiftSpec& spec, int max_period,
                                         int grid_points = kDefaultGridPoints, double tol = kDefaultBandTol);

}  // namespace sftlab
