#pragma once

// The SL(2,R) transfer-matrix cocycle of the weighted three-term recursion
//
//   w_n u(n+1) + w_{n-1} u(n-1) - (w_n + w_{n-1}) cos(k) u(n) = 0,
//
// with one-step matrix
//
//   A(w) = sqrt(w_0 / w_{-1}) * [[(w_0 + w_{-1}) / w_0 * cos k, -w_{-1} / w_0],
//                                [1,                            0           ]]
//
// acting on (u(n), u(n-1)). Products run over words covering indices
// -1..n-1.

#include <cmath>
#include <complex>
#include <optional>
#include <utility>
#include <vector>

#include "sftlab/sft.hpp"

namespace sftlab {

// The cocycle depends on k only through cos k. The cosine is pinned to a
// fixed point of x -> cos(acos(x)) so that k and acos(cos k) give
// bit-identical matrices.
class SpectralParameter {
 public:
  static SpectralParameter from_k(double k);
  static SpectralParameter from_cos(double cos_k);

  double k() const noexcept { return k_; }
  double cos_k() const noexcept { return cos_; }
  // sqrt(1 - cos^2), in [0, 1].
  double abs_sin_k() const noexcept;

 private:
  SpectralParameter(double k, double c) : k_(k), cos_(c) {}
  double k_;
  double cos_;
};

struct Mat2 {
  double a11 = 1.0, a12 = 0.0, a21 = 0.0, a22 = 1.0;

  static constexpr Mat2 identity() { return {1.0, 0.0, 0.0, 1.0}; }

  double det() const noexcept { return a11 * a22 - a12 * a21; }
  double trace() const noexcept { return a11 + a22; }
  double max_abs() const noexcept;
  // Largest singular value, closed form.
  double norm() const noexcept;
  // Inverse for det close to 1 (adjugate divided by det).
  Mat2 inverse() const noexcept;
  Mat2 scaled(double s) const noexcept { return {a11 * s, a12 * s, a21 * s, a22 * s}; }

  friend Mat2 operator*(const Mat2& x, const Mat2& y) noexcept {
    return {x.a11 * y.a11 + x.a12 * y.a21, x.a11 * y.a12 + x.a12 * y.a22,
            x.a21 * y.a11 + x.a22 * y.a21, x.a21 * y.a12 + x.a22 * y.a22};
  }
  friend bool operator==(const Mat2&, const Mat2&) = default;
};

// exp(log_scale) * mat, with max |entry| of mat normalized to 1.
struct ScaledMat2 {
  Mat2 mat = Mat2::identity();
  double log_scale = 0.0;

  Mat2 reconstruct() const noexcept { return mat.scaled(std::exp(log_scale)); }
  double reconstructed_det() const noexcept { return std::exp(2.0 * log_scale) * mat.det(); }
  double trace() const noexcept { return std::exp(log_scale) * mat.trace(); }
  double log_norm() const noexcept { return log_scale + std::log(mat.norm()); }
  // Left-multiplies by m and renormalizes.
  void push(const Mat2& m) noexcept;
};

// A point of CP^1: the direction (xi, 1), or (1, 0) for infinity.
class ProjectivePoint {
 public:
  static ProjectivePoint infinity() { return ProjectivePoint(); }
  ProjectivePoint(std::complex<double> v) : value_(v) {}  // NOLINT(google-explicit-constructor)
  ProjectivePoint(double v) : value_(std::complex<double>(v, 0.0)) {}  // NOLINT

  bool is_infinity() const noexcept { return !value_.has_value(); }
  // Requires !is_infinity().
  std::complex<double> value() const { return *value_; }
  bool is_real(double tol = 0.0) const noexcept {
    return is_infinity() || std::abs(value_->imag()) <= tol;
  }

 private:
  ProjectivePoint() = default;
  std::optional<std::complex<double>> value_;
};

// Chordal distance on the Riemann sphere, in [0, 1].
double chordal_distance(const ProjectivePoint& x, const ProjectivePoint& y);

// Throws SingularEnergy when sin k vanishes (|sin k| < 1e-12).
Mat2 a_matrix(const SpectralParameter& k, Letter prev, Letter cur);
Mat2 a_matrix(double k, Letter prev, Letter cur);

// A(T^{n-1} w) ... A(w) for a word covering -1..n-1 (base_index must be -1,
// n = size - 1). An empty or single-letter word gives n = 0, the identity.
ScaledMat2 cocycle_product(const SpectralParameter& k, const Word& word);
ScaledMat2 cocycle_product(double k, const Word& word);

// (a11 xi + a12) / (a21 xi + a22) with the usual conventions at infinity.
ProjectivePoint mobius(const Mat2& m, const ProjectivePoint& xi);

// [A(w')]^{-1} A(w) for w' in the local stable set of w. Both windows must
// cover indices -1 and 0; they must agree wherever both cover an index >= 0.
Mat2 stable_holonomy(double k, const Word& w, const Word& w2);

// Identity for w' in the local unstable set of w (agreement on indices <= 0).
Mat2 unstable_holonomy(double k, const Word& w, const Word& w2);

enum class EigenKind {
  Hyperbolic,  // |trace| > 2, two distinct real directions
  Elliptic,    // |trace| < 2, conjugate pair, s in the upper half-plane
  Parabolic,   // |trace| = 2, a unique direction (s == u)
  Central,     // +-identity, every direction is invariant
};

// s is the '+' branch (a - d + sqrt(trace^2 - 4)) / (2c), u the '-' branch.
// In the hyperbolic case s is the direction of the eigenvalue
// (trace + sqrt(trace^2 - 4)) / 2; for c = 0 the limits of the two branches
// are used, i.e. s and u are the axes carrying eigenvalues max(a, d) and
// min(a, d). Degeneracy threshold: |trace^2 - 4| < 1e-9.
struct Eigendirections {
  ProjectivePoint s = ProjectivePoint::infinity();
  ProjectivePoint u = ProjectivePoint::infinity();
  EigenKind kind = EigenKind::Hyperbolic;

  bool degenerate() const noexcept { return kind == EigenKind::Parabolic || kind == EigenKind::Central; }
  // Throws ParabolicOrCentral for degenerate matrices.
  std::pair<ProjectivePoint, ProjectivePoint> require_distinct() const;
};

inline constexpr double kTraceDegeneracyTol = 1e-9;

Eigendirections eigendirections(const Mat2& m);

// Vertex values u(-1), u(0), ..., u(n) from the bare three-term recursion,
// for a word covering -1..n-1 (base_index must be -1).
std::vector<double> solve_difference(const SpectralParameter& k, const Word& word, double u0, double um1);
std::vector<double> solve_difference(double k, const Word& word, double u0, double um1);

}  // namespace sftlab
