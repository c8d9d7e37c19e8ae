#include <doctest.h>

#include <cmath>
#include <map>

#include "oracle.hpp"
#include "sftlab/error.hpp"
#include "sftlab/measure.hpp"

using namespace sftlab;

namespace {

SubshiftSpec golden() { return SubshiftSpec::validate(2, {{2, 2}}); }

MarkovMeasure golden_measure() { return MarkovMeasure::stationary_markov(golden(), {{0.5, 0.5}, {1.0, 0.0}}); }

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

TEST_CASE("stationary vectors") {
  const auto full = MarkovMeasure::stationary_markov(SubshiftSpec::full_shift(2), {{0.5, 0.5}, {0.5, 0.5}});
  CHECK(full.stationary(Letter(1)) == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(full.stationary(Letter(2)) == doctest::Approx(0.5).epsilon(1e-14));

  const auto g = golden_measure();
  CHECK(g.stationary(Letter(1)) == doctest::Approx(2.0 / 3.0).epsilon(1e-14));
  CHECK(g.stationary(Letter(2)) == doctest::Approx(1.0 / 3.0).epsilon(1e-14));

  // the uniform default on the golden mean shift is the same chain
  const auto u = MarkovMeasure::uniform(golden());
  CHECK(u.transition(Letter(1), Letter(2)) == 0.5);
  CHECK(u.transition(Letter(2), Letter(1)) == 1.0);
  CHECK(u.stationary(Letter(1)) == doctest::Approx(2.0 / 3.0).epsilon(1e-14));
}

TEST_CASE("stationary vector agrees with power iteration") {
  const auto spec = SubshiftSpec::validate(3, {{1, 1}, {2, 3}});
  const std::vector<std::vector<double>> P{{0.0, 0.3, 0.7}, {0.6, 0.4, 0.0}, {0.2, 0.5, 0.3}};
  const auto m = MarkovMeasure::stationary_markov(spec, P);
  const auto ref = oracle::power_stationary(P);
  double sum = 0;
  for (int j = 1; j <= 3; ++j) {
    CHECK(m.stationary(Letter(j)) == doctest::Approx(ref[j - 1]).epsilon(1e-12));
    sum += m.stationary(Letter(j));
  }
  CHECK(sum == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("measure validation errors") {
  CHECK(code_of([] { MarkovMeasure::stationary_markov(golden(), {{1.0, 0.0}, {1.0, 0.0}}); }) ==
        ErrorCode::SupportViolation);
  CHECK(code_of([] { MarkovMeasure::stationary_markov(golden(), {{0.5, 0.5}, {0.5, 0.5}}); }) ==
        ErrorCode::SupportViolation);
  CHECK(code_of([] { MarkovMeasure::stationary_markov(golden(), {{0.5, 0.6}, {1.0, 0.0}}); }) ==
        ErrorCode::NotStochastic);
  CHECK(code_of([] { MarkovMeasure::stationary_markov(golden(), {{0.5, 0.5}}); }) == ErrorCode::NotStochastic);
  CHECK(code_of([] { MarkovMeasure::stationary_markov(golden(), {{0.5, 0.5, 0.0}, {1.0, 0.0}}); }) ==
        ErrorCode::NotStochastic);
  CHECK(code_of([] { MarkovMeasure::stationary_markov(golden(), {{1.5, -0.5}, {1.0, 0.0}}); }) ==
        ErrorCode::NotStochastic);
  CHECK(code_of([] { MarkovMeasure::stationary_markov(golden(), {{std::nan(""), 0.5}, {1.0, 0.0}}); }) ==
        ErrorCode::NotStochastic);
  // within the 1e-12 row-sum tolerance
  CHECK_NOTHROW(MarkovMeasure::stationary_markov(golden(), {{0.5, 0.5 + 5e-13}, {1.0, 0.0}}));
}

TEST_CASE("sampling is deterministic and admissible") {
  const auto full = MarkovMeasure::uniform(SubshiftSpec::full_shift(2));
  const auto w = sample_window(full, -1, 10, 42);
  CHECK(w.size() == 12);
  CHECK(w.base_index == -1);
  CHECK(w == sample_window(full, -1, 10, 42));
  CHECK_FALSE(w == sample_window(full, -1, 10, 43));

  const auto g = golden_measure();
  const auto long_path = sample_window(g, 0, 99999, 9);
  CHECK(is_admissible(golden(), long_path));

  // a sampler stream and sample_window read the same letters
  MarkovSampler s(g, 9);
  for (std::size_t i = 0; i < 100; ++i) CHECK(s.next() == long_path.letters[i]);
}

TEST_CASE("documented seed-to-stream mapping") {
  // splitmix64 reference values for the standard constants
  CHECK(splitmix64(0) == 0xe220a8397b1dcdafULL);
  std::mt19937_64 e(splitmix64(123));
  std::mt19937_64 ref(splitmix64(123));
  const double u = uniform01(e);
  CHECK(u == static_cast<double>(ref() >> 11) * 0x1.0p-53);
  CHECK(sub_seed(5, 0) != sub_seed(5, 1));
  CHECK(sub_seed(5, 0) != sub_seed(6, 0));
}

TEST_CASE("letter and pair frequencies match the measure at 3 sigma") {
  const auto g = golden_measure();
  const std::int64_t n = 1000000;
  const auto w = sample_window(g, 0, n - 1, 2024);
  std::map<int, double> single;
  std::map<std::pair<int, int>, double> pairs;
  for (std::size_t i = 0; i < w.size(); ++i) {
    single[w.letters[i].value] += 1;
    if (i + 1 < w.size()) pairs[{w.letters[i].value, w.letters[i + 1].value}] += 1;
  }
  for (int j = 1; j <= 2; ++j)
    CHECK(std::abs(single[j] / n - g.stationary(Letter(j))) < 3.0 / std::sqrt(static_cast<double>(n)));
  for (auto [i, j] : {std::pair{1, 1}, {1, 2}, {2, 1}}) {
    const double p = cylinder_probability(g, Word::from_ints({i, j}));
    CHECK(std::abs(pairs[{i, j}] / (n - 1) - p) < 3.0 / std::sqrt(static_cast<double>(n)));
  }
  CHECK(pairs[{2, 2}] == 0.0);
}

TEST_CASE("cylinder probabilities") {
  const auto full = MarkovMeasure::uniform(SubshiftSpec::full_shift(2));
  CHECK(cylinder_probability(full, Word::from_ints({1, 2})) == doctest::Approx(0.25).epsilon(1e-15));
  const auto g = golden_measure();
  CHECK(cylinder_probability(g, Word::from_ints({2, 1})) == doctest::Approx(1.0 / 3.0).epsilon(1e-14));
  CHECK(cylinder_probability(g, Word::from_ints({2})) == doctest::Approx(1.0 / 3.0).epsilon(1e-14));
  CHECK(cylinder_probability(g, Word::from_ints({1})) == doctest::Approx(2.0 / 3.0).epsilon(1e-14));
  CHECK(cylinder_probability(g, Word::from_ints({2, 2})) == 0.0);
  CHECK(cylinder_probability(g, Word{}) == 1.0);
}

TEST_CASE("property: cylinder additivity and translation invariance") {
  const auto spec = SubshiftSpec::validate(3, {{1, 1}, {2, 3}});
  const auto m = MarkovMeasure::stationary_markov(spec, {{0.0, 0.3, 0.7}, {0.6, 0.4, 0.0}, {0.2, 0.5, 0.3}});
  std::mt19937_64 rng(8);
  for (int t = 0; t < 200; ++t) {
    const auto w = sample_window(m, 0, static_cast<std::int64_t>(rng() % 6), rng());
    const double p = cylinder_probability(m, w);
    double right = 0, left = 0;
    for (int j = 1; j <= 3; ++j) {
      auto r = w;
      r.letters.push_back(Letter(j));
      right += cylinder_probability(m, r);
      auto l = w;
      l.letters.insert(l.letters.begin(), Letter(j));
      l.base_index -= 1;
      left += cylinder_probability(m, l);
    }
    CHECK(std::abs(right - p) < 1e-12);
    CHECK(std::abs(left - p) < 1e-12);  // stationarity
    auto moved = w;
    moved.base_index = static_cast<std::int64_t>(rng() % 1000) - 500;
    CHECK(cylinder_probability(m, moved) == p);
  }
}
