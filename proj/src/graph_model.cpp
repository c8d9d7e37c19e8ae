#include "sftlab/graph_model.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "sftlab/cocycle.hpp"
#include "sftlab/error.hpp"

namespace sftlab {

namespace {

double checked_sin(double k) {
  const double s = std::sin(k);
  if (std::abs(s) <= 1e-12) {
    throw Error(ErrorCode::SingularEnergy, "k = " + std::to_string(k) + " is an integer multiple of pi");
  }
  return s;
}

}  // namespace

double EdgeSolution::value(double x) const {
  const double s = checked_sin(k);
  return (std::sin(k * (1.0 - x)) * phi0 + std::sin(k * x) * phi1) / s;
}

EdgeDerivatives edge_derivatives(const EdgeSolution& e) {
  const double s = checked_sin(e.k);
  const double c = std::cos(e.k);
  const double f = e.k / s;
  return {f * (-c * e.phi0 + e.phi1), f * (-e.phi0 + c * e.phi1)};
}

VertexData::VertexData(Word w, std::vector<double> v) : word(std::move(w)), values(std::move(v)) {
  if (values.size() != word.size() + 1) {
    throw Error(ErrorCode::InvalidArgument, "vertex data needs one more value than edge bundles (" +
                                                std::to_string(values.size()) + " values, " +
                                                std::to_string(word.size()) + " bundles)");
  }
}

std::vector<VertexResidual> kirchhoff_residual(const VertexData& v, double k) {
  checked_sin(k);
  std::vector<VertexResidual> out;
  const std::int64_t first = v.word.first_index();
  for (std::int64_t n = first + 1; n < v.word.end_index(); ++n) {
    const EdgeSolution right{k, v.u(n), v.u(n + 1)};  // a copy of [n, n+1]
    const EdgeSolution left{k, v.u(n - 1), v.u(n)};   // a copy of [n-1, n]
    const double w_right = v.word.at(n).value;
    const double w_left = v.word.at(n - 1).value;
    const double r = w_right * edge_derivatives(right).at0 - w_left * edge_derivatives(left).at1;
    out.push_back({n, r});
  }
  return out;
}

double residual_scale(const VertexData& v, double k) {
  double m = 0.0;
  for (double x : v.values) m = std::max(m, std::abs(x));
  return k / std::abs(checked_sin(k)) * m;
}

VertexData recursion_vertex_data(const Word& word, double k, double u0, double um1) {
  return VertexData(word, solve_difference(k, word, u0, um1));
}

bool satisfies_kirchhoff(const VertexData& v, double k, double tol) {
  const double bound = tol * residual_scale(v, k);
  const auto res = kirchhoff_residual(v, k);
  return std::all_of(res.begin(), res.end(), [&](const VertexResidual& r) { return std::abs(r.residual) <= bound; });
}

bool verify_corollary(const Word& word, double k, double u0, double um1) {
  return satisfies_kirchhoff(recursion_vertex_data(word, k, u0, um1), k);
}

}  // namespace sftlab
