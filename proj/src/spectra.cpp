#include "sftlab/spectra.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "sftlab/error.hpp"

namespace sftlab {

bool BandSet::contains(double k, double slack) const noexcept {
  return std::any_of(intervals.begin(), intervals.end(), [&](const Interval& i) { return i.contains(k, slack); });
}

double BandSet::total_length() const noexcept {
  double t = 0.0;
  for (const auto& i : intervals) t += i.length();
  return t;
}

bool BandSet::subset_of(const BandSet& outer, double slack) const noexcept {
  return std::all_of(intervals.begin(), intervals.end(), [&](const Interval& inner) {
    return std::any_of(outer.intervals.begin(), outer.intervals.end(), [&](const Interval& o) {
      return inner.lo >= o.lo - slack && inner.hi <= o.hi + slack;
    });
  });
}

Word monodromy_window(const PeriodicPoint& p) { return p.window(-1, p.period() - 1); }

ScaledMat2 monodromy(const PeriodicPoint& p, const SpectralParameter& k) {
  return cocycle_product(k, monodromy_window(p));
}

double monodromy_trace(const PeriodicPoint& p, const SpectralParameter& k) { return monodromy(p, k).trace(); }

double monodromy_trace(const PeriodicPoint& p, double k) {
  return monodromy_trace(p, SpectralParameter::from_k(k));
}

namespace {

constexpr int kRefineFactor = 32;

struct Sample {
  double k;
  bool inside;
};

class BandScanner {
 public:
  BandScanner(const PeriodicPoint& p, double tol) : window_(monodromy_window(p)), tol_(tol) {}

  bool singular(double k) const { return std::abs(std::sin(k)) < 1e-12; }

  bool inside(double k) const {
    const double tr = cocycle_product(SpectralParameter::from_k(k), window_).trace();
    return std::abs(tr) <= 2.0;
  }

  // Crossing between a and b, with inside(a) != inside(b).
  double bisect(double a, double b) const {
    const bool in_a = inside(a);
    while (b - a > tol_) {
      const double m = 0.5 * (a + b);
      if (m <= a || m >= b) break;
      if (inside(m) == in_a) {
        a = m;
      } else {
        b = m;
      }
    }
    return 0.5 * (a + b);
  }

 private:
  Word window_;
  double tol_;
};

}  // namespace

BandSet band_set_on(const PeriodicPoint& p, double lo, double hi, int grid_points, double tol) {
  if (grid_points < 64) throw Error(ErrorCode::InvalidArgument, "grid_points must be at least 64");
  if (!(tol > 0.0)) throw Error(ErrorCode::InvalidArgument, "tol must be positive");
  if (!(hi > lo)) throw Error(ErrorCode::InvalidArgument, "band scan needs lo < hi");

  BandScanner scan(p, tol);
  const double step = (hi - lo) / (grid_points - 1);
  auto node = [&](int i) { return i == grid_points - 1 ? hi : lo + step * i; };

  // Samples at the coarse nodes, refined where a cell hides two crossings.
  std::vector<Sample> samples;
  samples.reserve(static_cast<std::size_t>(grid_points));
  for (int i = 0; i < grid_points; ++i) {
    const double k = node(i);
    if (scan.singular(k)) continue;
    samples.push_back({k, scan.inside(k)});
  }
  if (samples.empty()) throw Error(ErrorCode::ResolutionTooCoarse, "no regular grid node in scan range");

  std::vector<Sample> refined;
  refined.reserve(samples.size());
  refined.push_back(samples.front());
  for (std::size_t i = 1; i < samples.size(); ++i) {
    const Sample a = samples[i - 1];
    const Sample b = samples[i];
    const double mid = 0.5 * (a.k + b.k);
    if (a.inside == b.inside && !scan.singular(mid) && scan.inside(mid) != a.inside) {
      const double sub = (b.k - a.k) / kRefineFactor;
      Sample prev = a;
      for (int j = 1; j < kRefineFactor; ++j) {
        const double k = a.k + sub * j;
        const Sample s{k, scan.inside(k)};
        const double m = 0.5 * (prev.k + k);
        if (prev.inside == s.inside && scan.inside(m) != s.inside) {
          throw Error(ErrorCode::ResolutionTooCoarse,
                      "two band edges within k-cell near " + std::to_string(m) + " for cycle " + to_string(p));
        }
        refined.push_back(s);
        prev = s;
      }
    }
    refined.push_back(b);
  }

  BandSet out;
  out.resolution = step;
  out.tol = tol;
  // A band touching a skipped singular endpoint extends to it.
  double start = refined.front().inside ? lo : 0.0;
  bool in_band = refined.front().inside;
  for (std::size_t i = 1; i < refined.size(); ++i) {
    const Sample a = refined[i - 1];
    const Sample b = refined[i];
    if (a.inside == b.inside) continue;
    const double edge = scan.bisect(a.k, b.k);
    if (b.inside) {
      start = edge;
      in_band = true;
    } else {
      out.intervals.push_back({start, edge});
      in_band = false;
    }
  }
  if (in_band) out.intervals.push_back({start, hi});
  return out;
}

BandSet band_set(const PeriodicPoint& p, int grid_points, double tol) {
  return band_set_on(p, 0.0, std::numbers::pi, grid_points, tol);
}

BandSet gaps(const BandSet& b) {
  BandSet out;
  out.resolution = b.resolution;
  out.tol = b.tol;
  double cursor = 0.0;
  for (const auto& i : b.intervals) {
    if (i.lo > cursor) out.intervals.push_back({cursor, i.lo});
    cursor = std::max(cursor, i.hi);
  }
  if (cursor < std::numbers::pi) out.intervals.push_back({cursor, std::numbers::pi});
  return out;
}

namespace {

BandSet intersect_pair(const BandSet& x, const BandSet& y) {
  BandSet out;
  out.resolution = std::max(x.resolution, y.resolution);
  out.tol = std::max(x.tol, y.tol);
  std::size_t i = 0, j = 0;
  while (i < x.intervals.size() && j < y.intervals.size()) {
    const Interval& a = x.intervals[i];
    const Interval& b = y.intervals[j];
    const double lo = std::max(a.lo, b.lo);
    const double hi = std::min(a.hi, b.hi);
    if (lo <= hi) out.intervals.push_back({lo, hi});
    if (a.hi < b.hi) {
      ++i;
    } else {
      ++j;
    }
  }
  return out;
}

}  // namespace

BandSet intersect(const std::vector<BandSet>& bands) {
  BandSet acc = BandSet::full();
  for (const auto& b : bands) acc = intersect_pair(acc, b);
  return acc;
}

std::vector<Interval> h_tilde_bands(const PeriodicPoint& p, int grid_points, double tol) {
  const BandSet b = band_set(p, grid_points, tol);
  std::vector<Interval> out;
  out.reserve(b.size());
  for (auto it = b.intervals.rbegin(); it != b.intervals.rend(); ++it) {
    out.push_back({std::cos(it->hi), std::cos(it->lo)});
  }
  return out;
}

std::vector<BandSet> candidate_shrinkage(const SubshiftSpec& spec, int max_period, int grid_points, double tol) {
  const auto points = enumerate_periodic_points(spec, max_period);
  std::vector<BandSet> out;
  BandSet acc = BandSet::full();
  std::size_t next = 0;
  for (int period = 1; period <= max_period; ++period) {
    for (; next < points.size() && points[next].period() == period; ++next) {
      acc = intersect({acc, band_set(points[next], grid_points, tol)});
    }
    out.push_back(acc);
  }
  return out;
}

BandSet exceptional_candidates(const SubshiftSpec& spec, int max_period, int grid_points, double tol) {
  return candidate_shrinkage(spec, max_period, grid_points, tol).back();
}

}  // namespace sftlab
