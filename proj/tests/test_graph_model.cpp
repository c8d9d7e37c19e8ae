#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "oracle.hpp"
#include "sftlab/error.hpp"
#include "sftlab/graph_model.hpp"
#include "sftlab/measure.hpp"

using namespace sftlab;
using std::numbers::pi;

namespace {

SubshiftSpec golden() { return SubshiftSpec::validate(2, {{2, 2}}); }

ErrorCode code_of(auto&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an sftlab::Error");
  return ErrorCode::InvalidArgument;
}

double max_abs_residual(const VertexData& v, double k) {
  double m = 0.0;
  for (const auto& r : kirchhoff_residual(v, k)) m = std::max(m, std::abs(r.residual));
  return m;
}

}  // namespace

TEST_CASE("edge solutions") {
  for (double k : {0.4, 1.0, 2.7}) {
    const EdgeSolution c{k, 1.0, std::cos(k)};
    const auto dc = edge_derivatives(c);
    CHECK(std::abs(dc.at0) < 1e-14);
    CHECK(dc.at1 == doctest::Approx(-k * std::sin(k)).epsilon(1e-13));
    for (double x : {0.0, 0.3, 0.5, 1.0}) CHECK(c.value(x) == doctest::Approx(std::cos(k * x)).epsilon(1e-13));

    const EdgeSolution s{k, 0.0, std::sin(k)};
    CHECK(edge_derivatives(s).at0 == doctest::Approx(k).epsilon(1e-13));
    CHECK(s.value(0.7) == doctest::Approx(std::sin(0.7 * k)).epsilon(1e-13));
  }
  CHECK(code_of([] { edge_derivatives(EdgeSolution{pi, 1.0, 0.0}); }) == ErrorCode::SingularEnergy);
  CHECK(code_of([] { EdgeSolution{2 * pi, 1.0, 1.0}.value(0.5); }) == ErrorCode::SingularEnergy);
}

TEST_CASE("property: edge solutions solve -phi'' = k^2 phi with the given endpoints") {
  std::mt19937_64 rng(21);
  std::uniform_real_distribution<double> kd(0.1, 3.0), vd(-2, 2), xd(0.05, 0.95);
  const double h = 1e-4;
  for (int t = 0; t < 100; ++t) {
    const EdgeSolution e{kd(rng), vd(rng), vd(rng)};
    CHECK(e.value(0.0) == doctest::Approx(e.phi0).epsilon(1e-14));
    CHECK(std::abs(e.value(1.0) - e.phi1) < 1e-14);
    const double x = xd(rng);
    const double second = (e.value(x + h) - 2 * e.value(x) + e.value(x - h)) / (h * h);
    const double rhs = -e.k * e.k * e.value(x);
    CHECK(std::abs(second - rhs) <= 1e-6 * std::max(1.0, std::abs(rhs)));
    // derivatives against central differences at the endpoints
    const auto d = edge_derivatives(e);
    CHECK(std::abs((e.value(h) - e.value(-h)) / (2 * h) - d.at0) < 1e-6);
    CHECK(std::abs((e.value(1 + h) - e.value(1 - h)) / (2 * h) - d.at1) < 1e-6);
  }
}

TEST_CASE("VertexData shape checks") {
  CHECK(code_of([] { VertexData(Word::from_ints({1, 2}, -1), {0.0, 1.0}); }) == ErrorCode::InvalidArgument);
  const VertexData v(Word::from_ints({1, 2}, -1), {0.5, 1.0, 2.0});
  CHECK(v.u(-1) == 0.5);
  CHECK(v.u(1) == 2.0);
}

TEST_CASE("plane waves on a constant graph balance at every vertex") {
  for (double k : {0.3, 1.0, 2.2}) {
    std::vector<double> u;
    for (int n = -1; n <= 20; ++n) u.push_back(std::cos(n * k));
    const VertexData v(Word(std::vector<Letter>(21, Letter(2)), -1), u);
    const auto res = kirchhoff_residual(v, k);
    CHECK(res.size() == 20);
    CHECK(res.front().vertex == 0);
    CHECK(res.back().vertex == 19);
    for (const auto& r : res) CHECK(std::abs(r.residual) < 1e-10);
  }
}

TEST_CASE("residual equals (k / sin k) times the recursion defect") {
  std::mt19937_64 rng(22);
  std::uniform_real_distribution<double> vd(-1, 1), kd(0.1, pi - 0.1);
  const auto g = MarkovMeasure::uniform(golden());
  for (int t = 0; t < 200; ++t) {
    const double k = kd(rng);
    const Word w = sample_window(g, -1, 10, rng());
    std::vector<double> u(w.size() + 1);
    for (auto& x : u) x = vd(rng);
    const VertexData v(w, u);
    for (const auto& r : kirchhoff_residual(v, k)) {
      const double wn = w.at(r.vertex).value, wm = w.at(r.vertex - 1).value;
      const double defect = wn * v.u(r.vertex + 1) + wm * v.u(r.vertex - 1) - (wn + wm) * std::cos(k) * v.u(r.vertex);
      CHECK(std::abs(r.residual - k / std::sin(k) * defect) < 1e-12 * (1 + std::abs(r.residual)));
    }
  }
}

TEST_CASE("recursion data satisfies Kirchhoff, perturbed data does not") {
  const auto g = MarkovMeasure::uniform(golden());
  std::mt19937_64 rng(23);
  std::uniform_real_distribution<double> vd(-1, 1);
  const double k = 1.0;
  for (int t = 0; t < 50; ++t) {
    const Word w = sample_window(g, -1, 48, rng());
    const double u0 = vd(rng), um1 = vd(rng);
    const auto v = recursion_vertex_data(w, k, u0, um1);
    CHECK(v.values.size() == w.size() + 1);
    // the recursion oracle gives the same vertex values
    std::vector<int> ints;
    for (auto l : w.letters) ints.push_back(l.value);
    const auto ref = oracle::recursion(std::cos(k), ints, u0, um1);
    for (std::size_t i = 0; i < ref.size(); ++i) CHECK(std::abs(v.values[i] - ref[i]) < 1e-9 * (1 + std::abs(ref[i])));

    CHECK(max_abs_residual(v, k) < 1e-10 * std::max(1.0, residual_scale(v, k)));
    CHECK(satisfies_kirchhoff(v, k));

    auto bad = v;
    bad.values[1] += 1e-3;  // u(0)
    const auto res = kirchhoff_residual(bad, k);
    CHECK(std::abs(res[0].residual) > 1e-4);  // vertex 0
    CHECK(std::abs(res[1].residual) > 1e-4);  // vertex 1
    CHECK_FALSE(satisfies_kirchhoff(bad, k));
  }
}

TEST_CASE("verify_corollary") {
  const auto g = MarkovMeasure::uniform(golden());
  std::mt19937_64 rng(24);
  std::uniform_real_distribution<double> vd(-1, 1);
  for (int t = 0; t < 50; ++t) CHECK(verify_corollary(sample_window(g, -1, 30, rng()), 1.0, vd(rng), vd(rng)));
  CHECK(verify_corollary(Word::from_ints({1, 2, 1, 1, 2}, -1), 1.0, 0.0, 0.0));
  CHECK(verify_corollary(Word(std::vector<Letter>(40, Letter(1)), -1), 2.5, 0.3, -0.7));
  CHECK(residual_scale(recursion_vertex_data(Word::from_ints({1, 2, 1}, -1), 1.0, 0.0, 0.0), 1.0) == 0.0);
  CHECK(residual_scale(VertexData(Word::from_ints({1, 1}, -1), {1.0, -2.0, 0.5}), 1.0) ==
        doctest::Approx(2.0 / std::sin(1.0)));
}
