#include "sftlab/cocycle.hpp"

#include <algorithm>
#include <limits>
#include <string>

#include "sftlab/error.hpp"

namespace sftlab {

namespace {

constexpr double kSingularSinTol = 1e-12;

// cos of the double nearest pi/2 is 6.1e-17, not 0. That residue couples the
// otherwise monomial products there and biases finite-n rates upward, so
// cosines this close to zero are taken as exact.
constexpr double kZeroCosineTol = 4.0 * std::numeric_limits<double>::epsilon();

// Follows x -> cos(acos(x)) to its terminal cycle and returns the cycle's
// smallest element. acos(cos k) starts one step further along the same
// orbit, hence reaches the same value.
double canonical_cosine(double c) {
  c = std::clamp(c, -1.0, 1.0);
  std::vector<double> orbit{c};
  for (int it = 0; it < 64; ++it) {
    const double next = std::cos(std::acos(orbit.back()));
    auto hit = std::find(orbit.begin(), orbit.end(), next);
    if (hit != orbit.end()) {
      const double m = *std::min_element(hit, orbit.end());
      return std::abs(m) <= kZeroCosineTol ? 0.0 : m;
    }
    orbit.push_back(next);
  }
  return orbit.back();
}

void require_base(const Word& word, const char* what) {
  if (!word.empty() && word.base_index != -1) {
    throw Error(ErrorCode::RangeMismatch,
                std::string(what) + ": word must start at index -1, got " + std::to_string(word.base_index));
  }
}

}  // namespace

SpectralParameter SpectralParameter::from_k(double k) { return SpectralParameter(k, canonical_cosine(std::cos(k))); }

SpectralParameter SpectralParameter::from_cos(double cos_k) {
  const double c = canonical_cosine(cos_k);
  return SpectralParameter(std::acos(c), c);
}

double SpectralParameter::abs_sin_k() const noexcept { return std::sqrt((1.0 - cos_) * (1.0 + cos_)); }

double Mat2::max_abs() const noexcept {
  return std::max({std::abs(a11), std::abs(a12), std::abs(a21), std::abs(a22)});
}

double Mat2::norm() const noexcept {
  const double p = std::hypot(a11 + a22, a12 - a21);
  const double q = std::hypot(a11 - a22, a12 + a21);
  return 0.5 * (p + q);
}

Mat2 Mat2::inverse() const noexcept {
  const double d = det();
  return {a22 / d, -a12 / d, -a21 / d, a11 / d};
}

void ScaledMat2::push(const Mat2& m) noexcept {
  mat = m * mat;
  const double s = mat.max_abs();
  mat = mat.scaled(1.0 / s);
  log_scale += std::log(s);
}

double chordal_distance(const ProjectivePoint& x, const ProjectivePoint& y) {
  if (x.is_infinity() && y.is_infinity()) return 0.0;
  if (x.is_infinity()) return 1.0 / std::sqrt(1.0 + std::norm(y.value()));
  if (y.is_infinity()) return 1.0 / std::sqrt(1.0 + std::norm(x.value()));
  const auto a = x.value();
  const auto b = y.value();
  return std::abs(a - b) / (std::sqrt(1.0 + std::norm(a)) * std::sqrt(1.0 + std::norm(b)));
}

Mat2 a_matrix(const SpectralParameter& k, Letter prev, Letter cur) {
  if (k.abs_sin_k() < kSingularSinTol) {
    throw Error(ErrorCode::SingularEnergy, "sin k vanishes at k = " + std::to_string(k.k()));
  }
  if (prev.value < 1 || cur.value < 1) throw Error(ErrorCode::InvalidArgument, "letters must be positive");
  const double w0 = cur.value;
  const double wm1 = prev.value;
  const double s = std::sqrt(w0 / wm1);
  return {s * ((w0 + wm1) / w0) * k.cos_k(), -s * (wm1 / w0), s, 0.0};
}

Mat2 a_matrix(double k, Letter prev, Letter cur) { return a_matrix(SpectralParameter::from_k(k), prev, cur); }

ScaledMat2 cocycle_product(const SpectralParameter& k, const Word& word) {
  require_base(word, "cocycle_product");
  ScaledMat2 out;
  for (std::size_t i = 1; i < word.size(); ++i) out.push(a_matrix(k, word.letters[i - 1], word.letters[i]));
  return out;
}

ScaledMat2 cocycle_product(double k, const Word& word) { return cocycle_product(SpectralParameter::from_k(k), word); }

ProjectivePoint mobius(const Mat2& m, const ProjectivePoint& xi) {
  if (xi.is_infinity()) {
    if (m.a21 == 0.0) return ProjectivePoint::infinity();
    return ProjectivePoint(m.a11 / m.a21);
  }
  const std::complex<double> z = xi.value();
  const std::complex<double> den = m.a21 * z + m.a22;
  if (den == std::complex<double>(0.0, 0.0)) return ProjectivePoint::infinity();
  return ProjectivePoint((m.a11 * z + m.a12) / den);
}

namespace {

void require_covers(const Word& w, std::int64_t first, std::int64_t last, const char* what) {
  if (!w.covers(first) || !w.covers(last)) {
    throw Error(ErrorCode::RangeMismatch, std::string(what) + ": window must cover indices " +
                                              std::to_string(first) + ".." + std::to_string(last));
  }
}

}  // namespace

Mat2 stable_holonomy(double k, const Word& w, const Word& w2) {
  require_covers(w, -1, 0, "stable_holonomy");
  require_covers(w2, -1, 0, "stable_holonomy");
  const std::int64_t last = std::min(w.end_index(), w2.end_index());
  for (std::int64_t n = 0; n < last; ++n) {
    if (w.at(n) != w2.at(n)) {
      throw Error(ErrorCode::NotInStableSet, "windows differ at index " + std::to_string(n));
    }
  }
  const auto kp = SpectralParameter::from_k(k);
  const Mat2 a = a_matrix(kp, w.at(-1), w.at(0));
  const Mat2 a2 = a_matrix(kp, w2.at(-1), w2.at(0));
  return a2.inverse() * a;
}

Mat2 unstable_holonomy(double k, const Word& w, const Word& w2) {
  require_covers(w, 0, 0, "unstable_holonomy");
  require_covers(w2, 0, 0, "unstable_holonomy");
  if (std::abs(std::sin(k)) < kSingularSinTol) {
    throw Error(ErrorCode::SingularEnergy, "sin k vanishes at k = " + std::to_string(k));
  }
  const std::int64_t first = std::max(w.first_index(), w2.first_index());
  for (std::int64_t n = first; n <= 0; ++n) {
    if (w.at(n) != w2.at(n)) {
      throw Error(ErrorCode::NotInUnstableSet, "windows differ at index " + std::to_string(n));
    }
  }
  return Mat2::identity();
}

std::pair<ProjectivePoint, ProjectivePoint> Eigendirections::require_distinct() const {
  if (degenerate()) {
    throw Error(ErrorCode::ParabolicOrCentral,
                kind == EigenKind::Central ? "matrix is +-identity" : "matrix is parabolic");
  }
  return {s, u};
}

Eigendirections eigendirections(const Mat2& m) {
  const double a = m.a11, b = m.a12, c = m.a21, d = m.a22;
  const double tr = m.trace();
  const double disc = tr * tr - 4.0;
  Eigendirections out;

  if (std::abs(disc) < kTraceDegeneracyTol) {
    if (std::max({std::abs(b), std::abs(c), std::abs(a - d)}) < kTraceDegeneracyTol) {
      out.kind = EigenKind::Central;
      return out;
    }
    out.kind = EigenKind::Parabolic;
    out.s = c != 0.0 ? ProjectivePoint((a - d) / (2.0 * c)) : ProjectivePoint::infinity();
    out.u = out.s;
    return out;
  }

  if (disc < 0.0) {
    // c != 0 here: c = 0 forces ad = 1 and trace^2 - 4 = (a - d)^2 >= 0.
    out.kind = EigenKind::Elliptic;
    std::complex<double> s(a - d, std::sqrt(-disc));
    s /= 2.0 * c;
    if (s.imag() < 0.0) s = std::conj(s);
    out.s = s;
    out.u = std::conj(s);
    return out;
  }

  out.kind = EigenKind::Hyperbolic;
  if (c == 0.0) {
    const ProjectivePoint finite(b / (d - a));
    if (a > d) {
      out.s = ProjectivePoint::infinity();
      out.u = finite;
    } else {
      out.s = finite;
      out.u = ProjectivePoint::infinity();
    }
    return out;
  }
  // Roots of c x^2 - (a - d) x - b = 0 without cancellation.
  const double sq = std::sqrt(disc);
  const double sign = (a - d) >= 0.0 ? 1.0 : -1.0;
  const double q = (a - d) + sign * sq;
  const double same_sign_root = q / (2.0 * c);
  const double other_root = -2.0 * b / q;
  if (sign > 0.0) {
    out.s = same_sign_root;
    out.u = other_root;
  } else {
    out.s = other_root;
    out.u = same_sign_root;
  }
  return out;
}

std::vector<double> solve_difference(const SpectralParameter& k, const Word& word, double u0, double um1) {
  require_base(word, "solve_difference");
  const std::size_t n = word.empty() ? 0 : word.size() - 1;
  std::vector<double> u(n + 2);
  u[0] = um1;
  u[1] = u0;
  const double c = k.cos_k();
  for (std::size_t m = 0; m < n; ++m) {
    // u[m + 1] holds u(m); letters[m] is w_{m-1}, letters[m + 1] is w_m.
    const double wm1 = word.letters[m].value;
    const double w0 = word.letters[m + 1].value;
    u[m + 2] = ((w0 + wm1) * c * u[m + 1] - wm1 * u[m]) / w0;
  }
  return u;
}

std::vector<double> solve_difference(double k, const Word& word, double u0, double um1) {
  return solve_difference(SpectralParameter::from_k(k), word, u0, um1);
}

}  // namespace sftlab
