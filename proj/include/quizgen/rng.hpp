#pragma once

#include <cstdint>
#include <limits>
#include <utility>
#include <vector>

namespace quizgen {

// SplitMix64. The exact step sequence is normative: any conforming
// implementation must reproduce the same tests from the same seed.
struct RngState {
  std::uint64_t state = 0;
};

inline std::pair<std::uint64_t, RngState> rng_next(RngState s) {
  s.state += 0x9E3779B97F4A7C15ull;
  std::uint64_t z = s.state;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return {z ^ (z >> 31), s};
}

// Unbiased draw in [0,n) by rejection: reject values >= 2^64 - (2^64 mod n).
inline std::pair<std::uint64_t, RngState> bounded_uniform(RngState s, std::uint64_t n) {
  const std::uint64_t rem = (std::numeric_limits<std::uint64_t>::max() % n + 1) % n;
  for (;;) {
    auto [value, next] = rng_next(s);
    s = next;
    if (rem == 0 || value < std::uint64_t(0) - rem) return {value % n, s};
  }
}

// Fisher-Yates, descending: i from n-1 down to 1, j = bounded_uniform(i+1).
template <typename T>
RngState shuffle_in_place(std::vector<T>& items, RngState s) {
  for (std::size_t i = items.size(); i-- > 1;) {
    auto [j, next] = bounded_uniform(s, i + 1);
    s = next;
    std::swap(items[i], items[j]);
  }
  return s;
}

template <typename T>
std::pair<std::vector<T>, RngState> shuffle(std::vector<T> items, RngState s) {
  s = shuffle_in_place(items, s);
  return {std::move(items), s};
}

}  // namespace quizgen
