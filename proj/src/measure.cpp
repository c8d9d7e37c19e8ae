#include "sftlab/measure.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <string>

#include "sftlab/error.hpp"

namespace sftlab {

std::uint64_t splitmix64(std::uint64_t x) noexcept {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

std::uint64_t sub_seed(std::uint64_t seed, std::uint64_t task_index) noexcept {
  return splitmix64(seed ^ splitmix64(task_index + 1));
}

double uniform01(std::mt19937_64& engine) {
  return static_cast<double>(engine() >> 11) * 0x1.0p-53;
}

namespace {

constexpr double kStochasticTol = 1e-12;

std::vector<double> cumulative(std::span<const double> probs) {
  std::vector<double> cdf(probs.size());
  double acc = 0.0;
  for (std::size_t i = 0; i < probs.size(); ++i) {
    acc += probs[i];
    cdf[i] = acc;
  }
  return cdf;
}

}  // namespace

MarkovMeasure::MarkovMeasure(SubshiftSpec spec, std::vector<double> transition, std::vector<double> stationary)
    : spec_(std::move(spec)), transition_(std::move(transition)), stationary_(std::move(stationary)) {
  const auto n = static_cast<std::size_t>(spec_.alphabet_size());
  row_cdf_.reserve(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    auto c = cumulative(std::span<const double>(transition_).subspan(i * n, n));
    row_cdf_.insert(row_cdf_.end(), c.begin(), c.end());
  }
  stationary_cdf_ = cumulative(stationary_);
}

MarkovMeasure MarkovMeasure::stationary_markov(const SubshiftSpec& spec,
                                               const std::vector<std::vector<double>>& rows) {
  const int n = spec.alphabet_size();
  if (static_cast<int>(rows.size()) != n) {
    throw Error(ErrorCode::NotStochastic, "transition matrix has " + std::to_string(rows.size()) +
                                              " rows, expected " + std::to_string(n));
  }
  std::vector<double> flat;
  flat.reserve(static_cast<std::size_t>(n * n));
  for (int i = 0; i < n; ++i) {
    const auto& row = rows[static_cast<std::size_t>(i)];
    if (static_cast<int>(row.size()) != n) {
      throw Error(ErrorCode::NotStochastic, "transition row " + std::to_string(i + 1) + " has " +
                                                std::to_string(row.size()) + " entries, expected " +
                                                std::to_string(n));
    }
    double sum = 0.0;
    for (int j = 0; j < n; ++j) {
      const double p = row[static_cast<std::size_t>(j)];
      if (!std::isfinite(p) || p < 0.0 || p > 1.0) {
        throw Error(ErrorCode::NotStochastic, "transition[" + std::to_string(i + 1) + "][" +
                                                  std::to_string(j + 1) + "] is not a probability");
      }
      const bool allowed = spec.allowed(Letter(i + 1), Letter(j + 1));
      if (allowed != (p > 0.0)) {
        throw Error(ErrorCode::SupportViolation,
                    "transition (" + std::to_string(i + 1) + "," + std::to_string(j + 1) + ") is " +
                        (allowed ? "allowed but has probability 0" : "forbidden but has positive probability"));
      }
      sum += p;
      flat.push_back(p);
    }
    if (std::abs(sum - 1.0) > kStochasticTol) {
      throw Error(ErrorCode::NotStochastic, "transition row " + std::to_string(i + 1) + " sums to " +
                                                std::to_string(sum));
    }
  }

  // Solve pi (P - I) = 0 together with sum(pi) = 1 in the least-squares
  // sense; strong connectivity makes the solution unique.
  Eigen::MatrixXd p(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) p(i, j) = flat[static_cast<std::size_t>(i * n + j)];
  Eigen::MatrixXd system(n + 1, n);
  system.topRows(n) = p.transpose() - Eigen::MatrixXd::Identity(n, n);
  system.row(n).setOnes();
  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(n + 1);
  rhs(n) = 1.0;
  Eigen::VectorXd pi = system.colPivHouseholderQr().solve(rhs);
  pi /= pi.sum();

  const Eigen::VectorXd residual = p.transpose() * pi - pi;
  if (residual.cwiseAbs().maxCoeff() > kStochasticTol || pi.minCoeff() <= 0.0) {
    throw Error(ErrorCode::NotStochastic, "stationary vector could not be resolved to 1e-12");
  }
  std::vector<double> stationary(pi.data(), pi.data() + n);
  return MarkovMeasure(spec, std::move(flat), std::move(stationary));
}

MarkovMeasure MarkovMeasure::uniform(const SubshiftSpec& spec) {
  const int n = spec.alphabet_size();
  std::vector<std::vector<double>> rows(static_cast<std::size_t>(n), std::vector<double>(static_cast<std::size_t>(n)));
  for (int i = 0; i < n; ++i) {
    int count = 0;
    for (int j = 0; j < n; ++j) count += spec.allowed(Letter(i + 1), Letter(j + 1));
    for (int j = 0; j < n; ++j)
      if (spec.allowed(Letter(i + 1), Letter(j + 1)))
        rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = 1.0 / count;
  }
  return stationary_markov(spec, rows);
}

MarkovSampler::MarkovSampler(const MarkovMeasure& measure, std::uint64_t seed)
    : measure_(&measure), engine_(splitmix64(seed)) {}

int MarkovSampler::draw(std::span<const double> cdf, std::span<const double> probs) {
  const double u = uniform01(engine_);
  int last_positive = 0;
  for (std::size_t j = 0; j < cdf.size(); ++j) {
    if (probs[j] <= 0.0) continue;
    last_positive = static_cast<int>(j);
    if (u < cdf[j]) return static_cast<int>(j) + 1;
  }
  // Rounding left u above the final partial sum.
  return last_positive + 1;
}

Letter MarkovSampler::next() {
  const auto n = static_cast<std::size_t>(measure_->alphabet_size());
  if (current_ == 0) {
    current_ = draw(measure_->stationary_cdf_, measure_->stationary_);
  } else {
    const std::size_t off = static_cast<std::size_t>(current_ - 1) * n;
    current_ = draw(std::span<const double>(measure_->row_cdf_).subspan(off, n),
                    std::span<const double>(measure_->transition_).subspan(off, n));
  }
  return Letter(current_);
}

Word sample_window(const MarkovMeasure& measure, std::int64_t first_index, std::int64_t last_index,
                   std::uint64_t seed) {
  if (first_index > last_index) throw Error(ErrorCode::InvalidArgument, "sample_window needs first <= last");
  MarkovSampler sampler(measure, seed);
  std::vector<Letter> letters(static_cast<std::size_t>(last_index - first_index + 1));
  for (auto& x : letters) x = sampler.next();
  return Word(std::move(letters), first_index);
}

double cylinder_probability(const MarkovMeasure& measure, const Word& word) {
  if (word.empty()) return 1.0;
  if (!is_admissible(measure.spec(), word)) return 0.0;
  double p = measure.stationary(word.letters.front());
  for (std::size_t i = 1; i < word.size(); ++i) p *= measure.transition(word.letters[i - 1], word.letters[i]);
  return p;
}

}  // namespace sftlab
