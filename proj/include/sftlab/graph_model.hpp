#pragma once

// Quantum graph whose edge bundle between vertices n and n+1 has w_n
// parallel unit-length copies. On each edge -phi'' = k^2 phi; at every vertex
// the derivatives summed over outgoing copies balance the incoming ones.
// All copies of a bundle carry the same boundary data, so one representative
// edge per bundle is stored together with its multiplicity.

#include <cstdint>
#include <utility>
#include <vector>

#include "sftlab/sft.hpp"

namespace sftlab {

// phi(x) = (sin(k(1-x)) phi(0) + sin(kx) phi(1)) / sin k on [0, 1].
struct EdgeSolution {
  double k = 1.0;
  double phi0 = 0.0;
  double phi1 = 0.0;

  // Throw SingularEnergy when |sin k| <= 1e-12.
  double value(double x) const;
};

struct EdgeDerivatives {
  double at0 = 0.0;
  double at1 = 0.0;
};

EdgeDerivatives edge_derivatives(const EdgeSolution& e);

// word.letters[i] = w_n for the edge bundle [n, n+1], n = base_index + i;
// values[i] = u(base_index + i), so values.size() == word.size() + 1.
struct VertexData {
  Word word;
  std::vector<double> values;

  // Throws InvalidArgument on inconsistent lengths.
  VertexData(Word w, std::vector<double> v);

  double u(std::int64_t vertex) const { return values.at(static_cast<std::size_t>(vertex - word.base_index)); }
};

struct VertexResidual {
  std::int64_t vertex = 0;
  double residual = 0.0;
};

// w_n phi'_n(0) - w_{n-1} phi'_{n-1}(1) at each interior vertex (both
// adjacent bundles inside the window).
std::vector<VertexResidual> kirchhoff_residual(const VertexData& v, double k);

// k / |sin k| * max |u|, the normalization for residual thresholds.
double residual_scale(const VertexData& v, double k);

// Vertex data from the three-term recursion for a word covering -1..n-1,
// covering vertices -1..n (edge bundle of vertex m is w_m).
VertexData recursion_vertex_data(const Word& word, double k, double u0, double um1);

inline constexpr double kCorollaryTol = 1e-9;

// Builds vertex data with solve_difference, the edges from the boundary
// values, and checks max |residual| < 1e-9 * residual_scale.
bool verify_corollary(const Word& word, double k, double u0, double um1);

// Same check on arbitrary vertex data.
bool satisfies_kirchhoff(const VertexData& v, double k, double tol = kCorollaryTol);

}  // namespace sftlab
