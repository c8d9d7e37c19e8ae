#pragma once

// Stationary Markov measures supported exactly on the allowed transitions.
//
// Random streams: a seed s drives std::mt19937_64 constructed from the
// single value splitmix64(s). A uniform variate is (engine() >> 11) * 2^-53.
// Letters are drawn by inverse CDF over the row (stationary vector for the
// first letter, transition rows afterwards), scanning letters in increasing
// order. Independent sub-streams use sub_seed(seed, i) below.

#include <cstdint>
#include <random>
#include <span>
#include <vector>

#include "sftlab/sft.hpp"

namespace sftlab {

std::uint64_t splitmix64(std::uint64_t x) noexcept;

// Seed of the i-th independent task derived from a base seed.
std::uint64_t sub_seed(std::uint64_t seed, std::uint64_t task_index) noexcept;

class MarkovMeasure {
 public:
  // rows[i][j] is the probability of letter j+1 following letter i+1.
  // Throws NotStochastic if a row does not sum to 1 within 1e-12 or the
  // shape is wrong, SupportViolation if positivity differs from allowed.
  static MarkovMeasure stationary_markov(const SubshiftSpec& spec, const std::vector<std::vector<double>>& rows);

  // Uniform over the allowed successors of each letter.
  static MarkovMeasure uniform(const SubshiftSpec& spec);

  const SubshiftSpec& spec() const noexcept { return spec_; }
  int alphabet_size() const noexcept { return spec_.alphabet_size(); }
  double transition(Letter from, Letter to) const noexcept {
    return transition_[static_cast<std::size_t>((from.value - 1) * alphabet_size() + (to.value - 1))];
  }
  double stationary(Letter j) const noexcept { return stationary_[static_cast<std::size_t>(j.value - 1)]; }
  std::span<const double> stationary_vector() const noexcept { return stationary_; }

 private:
  friend class MarkovSampler;
  MarkovMeasure(SubshiftSpec spec, std::vector<double> transition, std::vector<double> stationary);

  SubshiftSpec spec_;
  std::vector<double> transition_;  // row-major
  std::vector<double> stationary_;
  std::vector<double> row_cdf_;     // row-major cumulative sums
  std::vector<double> stationary_cdf_;
};

// Streams letters of one sampled path. The first call to next() returns the
// stationary draw, later calls follow the transition rows.
class MarkovSampler {
 public:
  MarkovSampler(const MarkovMeasure& measure, std::uint64_t seed);

  Letter next();

 private:
  int draw(std::span<const double> cdf, std::span<const double> probs);

  const MarkovMeasure* measure_;
  std::mt19937_64 engine_;
  int current_ = 0;  // 0 before the first draw
};

// Uniform variate in [0, 1) from the documented mapping.
double uniform01(std::mt19937_64& engine);

// Path over [first_index, last_index], deterministic in seed.
Word sample_window(const MarkovMeasure& measure, std::int64_t first_index, std::int64_t last_index,
                   std::uint64_t seed);

// stationary[w1] * prod transition[w_i][w_{i+1}]; independent of base_index.
// Inadmissible words get probability 0. The empty word has probability 1.
double cylinder_probability(const MarkovMeasure& measure, const Word& word);

}  // namespace sftlab
