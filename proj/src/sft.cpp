#include "sftlab/sft.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

#include "sftlab/error.hpp"

namespace sftlab {

Word Word::from_ints(std::span<const int> values, std::int64_t base) {
  std::vector<Letter> letters;
  letters.reserve(values.size());
  for (int v : values) letters.emplace_back(v);
  return Word(std::move(letters), base);
}

Word Word::from_ints(std::initializer_list<int> values, std::int64_t base) {
  return from_ints(std::span<const int>(values.begin(), values.size()), base);
}

std::string to_string(const Word& w) {
  std::string out;
  for (std::size_t i = 0; i < w.letters.size(); ++i) {
    if (i) out += '-';
    out += std::to_string(w.letters[i].value);
  }
  return out;
}

namespace {

// Nodes reachable from `start` following allowed (or reversed) transitions.
std::vector<char> reachable(int n, const std::vector<char>& allowed, int start, bool reverse) {
  std::vector<char> seen(static_cast<std::size_t>(n), 0);
  std::vector<int> stack{start};
  seen[static_cast<std::size_t>(start)] = 1;
  while (!stack.empty()) {
    int i = stack.back();
    stack.pop_back();
    for (int j = 0; j < n; ++j) {
      const char edge = reverse ? allowed[static_cast<std::size_t>(j * n + i)]
                                : allowed[static_cast<std::size_t>(i * n + j)];
      if (edge && !seen[static_cast<std::size_t>(j)]) {
        seen[static_cast<std::size_t>(j)] = 1;
        stack.push_back(j);
      }
    }
  }
  return seen;
}

}  // namespace

SubshiftSpec SubshiftSpec::validate(int alphabet_size, std::span<const std::pair<int, int>> forbidden) {
  if (alphabet_size < 2) {
    throw Error(ErrorCode::InvalidArgument,
                "alphabet_size must be at least 2, got " + std::to_string(alphabet_size));
  }
  const auto n = static_cast<std::size_t>(alphabet_size);
  std::vector<char> allowed(n * n, 1);
  for (const auto& [from, to] : forbidden) {
    if (from < 1 || from > alphabet_size || to < 1 || to > alphabet_size) {
      throw Error(ErrorCode::InvalidArgument, "forbidden pair (" + std::to_string(from) + "," +
                                                  std::to_string(to) + ") outside the alphabet");
    }
    allowed[static_cast<std::size_t>((from - 1) * alphabet_size + (to - 1))] = 0;
  }

  // A letter lies on some bi-infinite sequence iff it sits on a cycle or
  // between two cycles; the shift is empty iff the graph is acyclic.
  bool has_cycle = false;
  for (int i = 0; i < alphabet_size && !has_cycle; ++i) {
    auto fwd = reachable(alphabet_size, allowed, i, false);
    for (int j = 0; j < alphabet_size; ++j) {
      if (fwd[static_cast<std::size_t>(j)] && allowed[static_cast<std::size_t>(j * alphabet_size + i)]) {
        has_cycle = true;
        break;
      }
    }
  }
  if (!has_cycle) {
    throw Error(ErrorCode::EmptySubshift, "no bi-infinite admissible sequence exists");
  }

  auto fwd = reachable(alphabet_size, allowed, 0, false);
  auto bwd = reachable(alphabet_size, allowed, 0, true);
  for (std::size_t i = 0; i < n; ++i) {
    if (!fwd[i] || !bwd[i]) {
      throw Error(ErrorCode::NotTransitive,
                  "transition graph is not strongly connected (letter " + std::to_string(i + 1) +
                      " is not mutually reachable with letter 1)");
    }
  }
  return SubshiftSpec(alphabet_size, std::move(allowed));
}

std::vector<std::pair<int, int>> SubshiftSpec::forbidden_pairs() const {
  std::vector<std::pair<int, int>> out;
  for (int i = 1; i <= size_; ++i)
    for (int j = 1; j <= size_; ++j)
      if (!allowed(Letter(i), Letter(j))) out.emplace_back(i, j);
  return out;
}

bool is_admissible(const SubshiftSpec& spec, const Word& word) {
  const auto& l = word.letters;
  for (Letter x : l)
    if (x.value < 1 || x.value > spec.alphabet_size()) return false;
  for (std::size_t i = 1; i < l.size(); ++i)
    if (!spec.allowed(l[i - 1], l[i])) return false;
  return true;
}

namespace {

bool is_primitive(std::span<const Letter> c) {
  const std::size_t n = c.size();
  for (std::size_t d = 1; d < n; ++d) {
    if (n % d) continue;
    bool repeats = true;
    for (std::size_t i = 0; i + d < n && repeats; ++i) repeats = c[i] == c[i + d];
    if (repeats) return false;
  }
  return true;
}

bool is_minimal_rotation(std::span<const Letter> c) {
  const std::size_t n = c.size();
  for (std::size_t r = 1; r < n; ++r) {
    for (std::size_t i = 0; i < n; ++i) {
      const Letter a = c[(r + i) % n];
      if (a < c[i]) return false;
      if (c[i] < a) break;
    }
  }
  return true;
}

bool cyclically_admissible(const SubshiftSpec& spec, std::span<const Letter> c) {
  for (std::size_t i = 0; i < c.size(); ++i)
    if (!spec.allowed(c[i], c[(i + 1) % c.size()])) return false;
  return true;
}

}  // namespace

PeriodicPoint::PeriodicPoint(const SubshiftSpec& spec, std::vector<Letter> cycle) : cycle_(std::move(cycle)) {
  if (cycle_.empty()) throw Error(ErrorCode::InvalidArgument, "periodic point needs a non-empty cycle");
  for (Letter x : cycle_)
    if (x.value < 1 || x.value > spec.alphabet_size())
      throw Error(ErrorCode::InvalidArgument, "cycle letter outside the alphabet");
  if (!cyclically_admissible(spec, cycle_))
    throw Error(ErrorCode::InvalidArgument, "cycle is not cyclically admissible");
  if (!is_primitive(cycle_)) throw Error(ErrorCode::InvalidArgument, "cycle is not primitive");
  if (!is_minimal_rotation(cycle_))
    throw Error(ErrorCode::InvalidArgument, "cycle is not in canonical rotation");
}

PeriodicPoint PeriodicPoint::from_ints(const SubshiftSpec& spec, std::initializer_list<int> cycle) {
  std::vector<Letter> letters;
  for (int v : cycle) letters.emplace_back(v);
  return PeriodicPoint(spec, std::move(letters));
}

Letter PeriodicPoint::at(std::int64_t n) const noexcept {
  const auto p = static_cast<std::int64_t>(cycle_.size());
  auto r = n % p;
  if (r < 0) r += p;
  return cycle_[static_cast<std::size_t>(r)];
}

Word PeriodicPoint::window(std::int64_t first, std::int64_t last) const {
  std::vector<Letter> letters;
  if (last >= first) letters.reserve(static_cast<std::size_t>(last - first + 1));
  for (std::int64_t n = first; n <= last; ++n) letters.push_back(at(n));
  return Word(std::move(letters), first);
}

std::string to_string(const PeriodicPoint& p) { return to_string(Word(p.cycle(), 0)); }

std::vector<PeriodicPoint> enumerate_periodic_points(const SubshiftSpec& spec, int max_period) {
  if (max_period < 1) throw Error(ErrorCode::InvalidArgument, "max_period must be at least 1");
  std::vector<PeriodicPoint> out;
  std::vector<Letter> buf;
  for (int period = 1; period <= max_period; ++period) {
    buf.assign(static_cast<std::size_t>(period), Letter(1));
    // Depth-first over admissible words in lexicographic order, so the
    // output is already sorted within each period.
    std::function<void(std::size_t)> extend = [&](std::size_t pos) {
      if (pos == buf.size()) {
        if (spec.allowed(buf.back(), buf.front()) && is_primitive(buf) && is_minimal_rotation(buf))
          out.emplace_back(spec, buf);
        return;
      }
      for (int v = 1; v <= spec.alphabet_size(); ++v) {
        const Letter x(v);
        // A canonical rotation starts with its smallest letter.
        if (pos > 0 && (x < buf[0] || !spec.allowed(buf[pos - 1], x))) continue;
        buf[pos] = x;
        extend(pos + 1);
      }
    };
    extend(0);
  }
  return out;
}

MetricValue metric(const Word& w, const Word& w2) {
  // Largest R with [-R, R] inside both windows.
  const std::int64_t r = std::min({-w.first_index(), w.end_index() - 1, -w2.first_index(), w2.end_index() - 1});
  if (r < 0) throw Error(ErrorCode::RangeMismatch, "windows do not cover a common symmetric range");
  for (std::int64_t n = 0; n <= r; ++n) {
    if (w.at(n) != w2.at(n) || w.at(-n) != w2.at(-n)) {
      return {std::exp(-static_cast<double>(n)), false};
    }
  }
  return {std::exp(-static_cast<double>(r + 1)), true};
}

Word shift(const Word& w, std::int64_t steps) { return Word(w.letters, w.base_index - steps); }

}  // namespace sftlab
