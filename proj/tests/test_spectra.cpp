#include <doctest.h>

#include <cmath>
#include <numbers>

#include "oracle.hpp"
#include "sftlab/error.hpp"
#include "sftlab/spectra.hpp"

using namespace sftlab;
using std::numbers::pi;

namespace {

SubshiftSpec golden() { return SubshiftSpec::validate(2, {{2, 2}}); }
SubshiftSpec full2() { return SubshiftSpec::full_shift(2); }

const double kEdge = std::acos(1.0 / 3.0);

std::vector<int> ints(const Word& w) {
  std::vector<int> out;
  for (auto l : w.letters) out.push_back(l.value);
  return out;
}

// Independent band scan: dense sampling of |trace| - 2 from the unscaled
// oracle product, edges by plain bisection.
std::vector<Interval> oracle_bands(const PeriodicPoint& p, int n = 20000) {
  const auto letters = ints(monodromy_window(p));
  auto f = [&](double k) {
    const auto m = oracle::product(std::cos(k), letters);
    return std::abs(m[0] + m[3]) - 2.0;
  };
  auto edge = [&](double a, double b) {
    const bool fa = f(a) <= 0;
    for (int it = 0; it < 200 && b - a > 1e-13; ++it) {
      const double mid = 0.5 * (a + b);
      ((f(mid) <= 0) == fa ? a : b) = mid;
    }
    return 0.5 * (a + b);
  };
  std::vector<Interval> out;
  const double h = pi / n;
  bool in = f(h * 0.5) <= 0;
  double lo = 0.0;
  double prev = h * 0.5;
  // midpoints only: at 0 and pi the trace touches +-2 to roundoff
  for (int i = 1; i < n; ++i) {
    const double k = h * (i + 0.5);
    const bool now = f(k) <= 0;
    if (now != in) {
      const double e = edge(prev, k);
      if (in) out.push_back({lo, e});
      lo = e;
      in = now;
    }
    prev = k;
  }
  if (in) out.push_back({lo, pi});
  return out;
}

ErrorCode code_of(auto&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an sftlab::Error");
  return ErrorCode::InvalidArgument;
}

}  // namespace

TEST_CASE("trace examples") {
  const auto fixed = PeriodicPoint::from_ints(full2(), {2});
  const auto two = PeriodicPoint::from_ints(full2(), {1, 2});
  for (double k : {0.1, 0.9, 1.7, 2.8}) {
    CHECK(monodromy_trace(fixed, k) == doctest::Approx(2 * std::cos(k)).epsilon(1e-14));
    CHECK(monodromy_trace(two, k) == doctest::Approx(oracle::delta_12(k)).epsilon(1e-13));
  }
  CHECK(std::abs(monodromy_trace(two, pi / 2) + 2.5) < 1e-12);
  CHECK(code_of([&] { monodromy_trace(two, pi); }) == ErrorCode::SingularEnergy);
  CHECK(to_string(monodromy_window(two)) == "2-1-2");
}

TEST_CASE("property: traces depend on k only through cos k") {
  for (const auto& p : enumerate_periodic_points(golden(), 6)) {
    for (double k : {0.13, 0.77, 1.9, 3.0}) {
      CHECK(std::abs(monodromy_trace(p, k) - monodromy_trace(p, std::acos(std::cos(k)))) <= 1e-12);
      CHECK(std::abs(monodromy_trace(p, k) - monodromy_trace(p, 2 * pi - k)) <= 1e-9);
    }
  }
}

TEST_CASE("band sets of the fixed point and of (1,2)") {
  const auto fixed = band_set(PeriodicPoint::from_ints(full2(), {1}));
  REQUIRE(fixed.size() == 1);
  CHECK(fixed.intervals[0] == Interval{0.0, pi});

  const auto b = band_set(PeriodicPoint::from_ints(full2(), {1, 2}));
  REQUIRE(b.size() == 2);
  CHECK(b.intervals[0].lo == 0.0);
  CHECK(std::abs(b.intervals[0].hi - kEdge) < 1e-9);
  CHECK(std::abs(b.intervals[1].lo - (pi - kEdge)) < 1e-9);
  CHECK(b.intervals[1].hi == pi);
  CHECK(b.intervals[0].hi == doctest::Approx(1.2309594).epsilon(1e-7));
  CHECK(b.resolution == doctest::Approx(pi / 2000));
  CHECK(b.contains(0.5));
  CHECK_FALSE(b.contains(pi / 2));
  CHECK(b.total_length() == doctest::Approx(2 * kEdge).epsilon(1e-9));
}

TEST_CASE("band scan agrees with an independent bisection oracle") {
  for (const auto& spec : {full2(), golden()}) {
    for (const auto& p : enumerate_periodic_points(spec, 6)) {
      const auto b = band_set(p);
      const auto ref = oracle_bands(p);
      CAPTURE(to_string(p));
      REQUIRE(b.size() == ref.size());
      for (std::size_t i = 0; i < ref.size(); ++i) {
        CHECK(std::abs(b.intervals[i].lo - ref[i].lo) < 1e-9);
        CHECK(std::abs(b.intervals[i].hi - ref[i].hi) < 1e-9);
      }
    }
  }
}

TEST_CASE("band_set argument checks") {
  const auto p = PeriodicPoint::from_ints(full2(), {1, 2});
  CHECK(code_of([&] { band_set(p, 10, 1e-10); }) == ErrorCode::InvalidArgument);
  CHECK(code_of([&] { band_set(p, 2001, 0.0); }) == ErrorCode::InvalidArgument);
  CHECK(code_of([&] { band_set_on(p, 1.0, 0.5, 2001, 1e-10); }) == ErrorCode::InvalidArgument);
  CHECK_NOTHROW(band_set(p, 64, 1e-6));
}

TEST_CASE("every primitive point of period 2..5 has an open gap") {
  for (const auto& spec : {full2(), golden()}) {
    for (const auto& p : enumerate_periodic_points(spec, 5)) {
      const auto g = gaps(band_set(p));
      if (p.period() == 1) {
        CHECK(g.empty());
        continue;
      }
      CHECK_FALSE(g.empty());
      for (const auto& iv : g.intervals) {
        CHECK(iv.lo > 0.0);
        CHECK(iv.hi < pi);
        CHECK(iv.length() > 0.0);
      }
    }
  }
}

TEST_CASE("gaps") {
  CHECK(gaps(BandSet::full()).empty());
  const auto b = band_set(PeriodicPoint::from_ints(full2(), {1, 2}));
  const auto g = gaps(b);
  REQUIRE(g.size() == 1);
  CHECK(std::abs(g.intervals[0].lo - kEdge) < 1e-9);
  CHECK(std::abs(g.intervals[0].hi - (pi - kEdge)) < 1e-9);
  const auto gg = gaps(g);
  REQUIRE(gg.size() == b.size());
  for (std::size_t i = 0; i < b.size(); ++i) CHECK(gg.intervals[i] == b.intervals[i]);
  // the empty band set has the whole range as its gap
  const auto all = gaps(BandSet{});
  REQUIRE(all.size() == 1);
  CHECK(all.intervals[0] == Interval{0.0, pi});
}

TEST_CASE("intersect") {
  const auto b = band_set(PeriodicPoint::from_ints(full2(), {1, 2}));
  const auto fixed = band_set(PeriodicPoint::from_ints(full2(), {1}));
  auto x = intersect({BandSet::full(), b});
  REQUIRE(x.size() == b.size());
  for (std::size_t i = 0; i < b.size(); ++i) CHECK(x.intervals[i] == b.intervals[i]);
  x = intersect({fixed, b});
  REQUIRE(x.size() == 2);
  CHECK(x.intervals[1] == b.intervals[1]);
  CHECK(intersect({BandSet{{{0.0, 1.0}}, 0, 0}, BandSet{{{1.5, 2.0}}, 0, 0}}).empty());
  // touching closed intervals meet in a point
  x = intersect({BandSet{{{0.0, 1.0}}, 0, 0}, BandSet{{{1.0, 2.0}}, 0, 0}});
  REQUIRE(x.size() == 1);
  CHECK(x.intervals[0] == Interval{1.0, 1.0});
  x = intersect({});
  REQUIRE(x.size() == 1);
  CHECK(x.intervals[0] == Interval{0.0, pi});
  x = intersect({BandSet{{{0.0, 1.0}, {2.0, 3.0}}, 0, 0}, BandSet{{{0.5, 2.5}}, 0, 0}});
  REQUIRE(x.size() == 2);
  CHECK(x.intervals[0] == Interval{0.5, 1.0});
  CHECK(x.intervals[1] == Interval{2.0, 2.5});
}

TEST_CASE("bands in the cos k variable") {
  const auto fixed = h_tilde_bands(PeriodicPoint::from_ints(full2(), {2}));
  REQUIRE(fixed.size() == 1);
  CHECK(fixed[0].lo == doctest::Approx(-1.0).epsilon(1e-15));
  CHECK(fixed[0].hi == doctest::Approx(1.0).epsilon(1e-15));

  const auto two = h_tilde_bands(PeriodicPoint::from_ints(full2(), {1, 2}));
  REQUIRE(two.size() == 2);
  CHECK(two[0].lo == doctest::Approx(-1.0).epsilon(1e-15));
  CHECK(std::abs(two[0].hi + 1.0 / 3.0) < 1e-9);
  CHECK(std::abs(two[1].lo - 1.0 / 3.0) < 1e-9);
  CHECK(two[1].hi == doctest::Approx(1.0).epsilon(1e-15));
  // the open gap (-1/3, 1/3) sits inside [-1, 1]
  CHECK(two[0].hi < two[1].lo);
}

TEST_CASE("exceptional candidates") {
  const auto c1 = exceptional_candidates(full2(), 1);
  REQUIRE(c1.size() == 1);
  CHECK(c1.intervals[0] == Interval{0.0, pi});

  const auto c2 = exceptional_candidates(full2(), 2);
  REQUIRE(c2.size() == 2);
  CHECK(std::abs(c2.intervals[0].hi - 1.2309594) < 1e-7);
  CHECK(std::abs(c2.intervals[1].lo - 1.9106332) < 1e-7);

  // golden mean, period 3: intersection of the three band sets
  const auto pts = enumerate_periodic_points(golden(), 3);
  std::vector<BandSet> all;
  for (const auto& p : pts) all.push_back(band_set(p));
  const auto ref = intersect(all);
  const auto c3 = exceptional_candidates(golden(), 3);
  REQUIRE(c3.size() == ref.size());
  for (std::size_t i = 0; i < ref.size(); ++i) CHECK(c3.intervals[i] == ref.intervals[i]);
}

TEST_CASE("property: candidate sets shrink with the period") {
  for (const auto& spec : {full2(), golden()}) {
    const auto levels = candidate_shrinkage(spec, 6);
    REQUIRE(levels.size() == 6);
    for (std::size_t i = 1; i < levels.size(); ++i) {
      CHECK(levels[i].subset_of(levels[i - 1], 1e-9));
      CHECK(levels[i].total_length() <= levels[i - 1].total_length() + 1e-9);
    }
    const auto direct = exceptional_candidates(spec, 4);
    REQUIRE(direct.size() == levels[3].size());
    for (std::size_t i = 0; i < direct.size(); ++i) CHECK(direct.intervals[i] == levels[3].intervals[i]);
  }
}

TEST_CASE("property: eigen-kind inside bands and gaps") {
  for (const auto& p : enumerate_periodic_points(golden(), 5)) {
    if (p.period() < 2) continue;
    const auto b = band_set(p);
    const auto g = gaps(b);
    auto sample = [&](const BandSet& set, bool band) {
      for (const auto& iv : set.intervals) {
        if (iv.length() < 1e-6) continue;
        for (int i = 1; i <= 100; ++i) {
          const double k = iv.lo + iv.length() * i / 101.0;
          if (std::sin(k) < 1e-6) continue;
          const auto kp = SpectralParameter::from_k(k);
          const double tr = monodromy_trace(p, kp);
          if (std::abs(std::abs(tr) - 2.0) < 1e-6) continue;  // too close to an edge to classify
          const auto e = eigendirections(monodromy(p, kp).reconstruct());
          if (band) {
            CHECK(std::abs(tr) < 2.0);
            CHECK(e.kind == EigenKind::Elliptic);
            CHECK(e.s.value().imag() > 0);
          } else {
            CHECK(std::abs(tr) > 2.0);
            CHECK(e.kind == EigenKind::Hyperbolic);
            CHECK(e.s.is_real());
            CHECK(e.u.is_real());
            CHECK(chordal_distance(e.s, e.u) > 0.0);
          }
        }
      }
    };
    sample(b, true);
    sample(g, false);
  }
}

TEST_CASE("property: band counts repeat on every spectral branch") {
  for (const auto& p : enumerate_periodic_points(full2(), 4)) {
    const auto base = band_set(p);
    for (int j = 2; j <= 4; ++j) {
      const auto branch = band_set_on(p, pi * (j - 1), pi * j, kDefaultGridPoints, kDefaultBandTol);
      CHECK(branch.size() == base.size());
      // lengths match too: either a translate or a reflection of [0, pi]
      CHECK(branch.total_length() == doctest::Approx(base.total_length()).epsilon(1e-7));
    }
  }
}
