#pragma once

// Subshifts of finite type with forbidden words of length two.
//
// A bi-infinite sequence is never materialized. Code that needs a point of
// the shift space works on a finite Word (letters plus the index of the
// first letter) or, for periodic points, on the repeating cycle.

#include <compare>
#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace sftlab {

// An edge-multiplicity symbol in 1..alphabet_size.
struct Letter {
  int value = 1;

  constexpr Letter() = default;
  constexpr explicit Letter(int v) : value(v) {}

  friend constexpr auto operator<=>(Letter, Letter) = default;
};

// A finite window of a sequence. letters[i] sits at index base_index + i.
struct Word {
  std::vector<Letter> letters;
  std::int64_t base_index = 0;

  Word() = default;
  Word(std::vector<Letter> l, std::int64_t base) : letters(std::move(l)), base_index(base) {}

  static Word from_ints(std::span<const int> values, std::int64_t base = 0);
  static Word from_ints(std::initializer_list<int> values, std::int64_t base = 0);

  std::size_t size() const noexcept { return letters.size(); }
  bool empty() const noexcept { return letters.empty(); }
  std::int64_t first_index() const noexcept { return base_index; }
  // One past the last covered index.
  std::int64_t end_index() const noexcept {
    return base_index + static_cast<std::int64_t>(letters.size());
  }
  bool covers(std::int64_t index) const noexcept {
    return index >= first_index() && index < end_index();
  }
  // Letter at absolute index; requires covers(index).
  Letter at(std::int64_t index) const { return letters.at(static_cast<std::size_t>(index - base_index)); }

  friend bool operator==(const Word&, const Word&) = default;
};

// Renders letters as "1-2-1".
std::string to_string(const Word& w);

class SubshiftSpec {
 public:
  // Builds the spec with allowed = complement of forbidden.
  // Throws NotTransitive, EmptySubshift or InvalidArgument.
  static SubshiftSpec validate(int alphabet_size, std::span<const std::pair<int, int>> forbidden);
  static SubshiftSpec validate(int alphabet_size, std::initializer_list<std::pair<int, int>> forbidden) {
    return validate(alphabet_size, std::span<const std::pair<int, int>>(forbidden.begin(), forbidden.size()));
  }
  static SubshiftSpec full_shift(int alphabet_size) { return validate(alphabet_size, {}); }

  int alphabet_size() const noexcept { return size_; }
  bool allowed(Letter from, Letter to) const noexcept {
    if (from.value < 1 || from.value > size_ || to.value < 1 || to.value > size_) return false;
    return allowed_[index(from, to)] != 0;
  }
  std::vector<std::pair<int, int>> forbidden_pairs() const;

  friend bool operator==(const SubshiftSpec&, const SubshiftSpec&) = default;

 private:
  SubshiftSpec(int size, std::vector<char> allowed) : size_(size), allowed_(std::move(allowed)) {}
  std::size_t index(Letter from, Letter to) const noexcept {
    return static_cast<std::size_t>((from.value - 1) * size_ + (to.value - 1));
  }

  int size_ = 0;
  std::vector<char> allowed_;
};

// True iff every letter is in range and every consecutive pair is allowed.
bool is_admissible(const SubshiftSpec& spec, const Word& word);

// A primitive cycle in canonical (lexicographically minimal) rotation.
// The bi-infinite extension reads p_n = cycle[n mod period].
class PeriodicPoint {
 public:
  // Throws InvalidArgument unless the cycle is non-empty, cyclically
  // admissible, primitive and canonical.
  PeriodicPoint(const SubshiftSpec& spec, std::vector<Letter> cycle);
  static PeriodicPoint from_ints(const SubshiftSpec& spec, std::initializer_list<int> cycle);

  const std::vector<Letter>& cycle() const noexcept { return cycle_; }
  int period() const noexcept { return static_cast<int>(cycle_.size()); }
  Letter at(std::int64_t n) const noexcept;
  // Letters of the extension over [first, last].
  Word window(std::int64_t first, std::int64_t last) const;

  friend bool operator==(const PeriodicPoint&, const PeriodicPoint&) = default;

 private:
  std::vector<Letter> cycle_;
};

std::string to_string(const PeriodicPoint& p);

// Primitive admissible cycles of length <= max_period, one per rotation
// class, sorted by (period, cycle).
std::vector<PeriodicPoint> enumerate_periodic_points(const SubshiftSpec& spec, int max_period);

struct MetricValue {
  double distance = 1.0;
  // Set when the windows agree on their whole common range, in which case
  // distance is only an upper bound.
  bool window_limited = false;
};

// d = exp(-N), N the largest n >= 0 with agreement on all |index| < n, taken
// over the largest symmetric range [-R, R] both windows cover. Throws
// RangeMismatch if neither covers index 0 in common.
MetricValue metric(const Word& w, const Word& w2);

// Relabels coordinates so new index n reads old index n + steps.
Word shift(const Word& w, std::int64_t steps);

}  // namespace sftlab
