#ifndef INEQ_RNG_HPP
#define INEQ_RNG_HPP

// Random sources. Every engine routine is templated on a RandomSource so a
// run can be driven either by RngStream or by a recorded transcript.
//
// All randomness is consumed through three primitives:
//   index(n)  uniform integer in [0, n)
//   unit()    uniform real in [0, 1)
//   normal()  standard normal deviate
// Fair coins are index(2).

#include <concepts>
#include <cstddef>
#include <cstdint>
#include <random>
#include <span>
#include <vector>

namespace ineq {

template <typename R>
concept RandomSource = requires(R r, std::size_t n) {
  { r.index(n) } -> std::convertible_to<std::size_t>;
  { r.unit() } -> std::convertible_to<double>;
  { r.normal() } -> std::convertible_to<double>;
};

/// Deterministic stream over a 64-bit Mersenne twister.
class RngStream {
 public:
  explicit RngStream(std::uint64_t seed) : engine_(seed) {}

  std::size_t index(std::size_t n) {
    return std::uniform_int_distribution<std::size_t>(0, n - 1)(engine_);
  }

  double unit() { return std::uniform_real_distribution<double>(0.0, 1.0)(engine_); }

  // The distribution object caches a spare deviate, so it is part of the
  // stream state.
  double normal() { return normal_(engine_); }

 private:
  std::mt19937_64 engine_;
  std::normal_distribution<double> normal_{0.0, 1.0};
};

/// splitmix64 finalizer.
constexpr std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Seed of run `run_index` in parameter cell `cell_index`:
///   mix64(mix64(mix64(master) ^ cell_index) ^ run_index)
constexpr std::uint64_t derive_seed(std::uint64_t master, std::uint64_t cell_index,
                                    std::uint64_t run_index) {
  return mix64(mix64(mix64(master) ^ cell_index) ^ run_index);
}

/// In-place Fisher-Yates shuffle, drawing index(k + 1) for k = n-1 .. 1.
template <typename T, RandomSource R>
void shuffle(std::span<T> items, R& rng) {
  for (std::size_t k = items.size(); k > 1; --k) {
    const std::size_t j = rng.index(k);
    std::swap(items[k - 1], items[j]);
  }
}

template <RandomSource R>
std::vector<std::size_t> random_permutation(std::size_t n, R& rng) {
  std::vector<std::size_t> order(n);
  for (std::size_t k = 0; k < n; ++k) order[k] = k;
  shuffle(std::span<std::size_t>(order), rng);
  return order;
}

/// Uniform k-subset of [0, m) by Floyd's algorithm; exactly k draws.
/// Indices are appended to `out` in selection order.
template <RandomSource R>
void sample_without_replacement(std::size_t m, std::size_t k, R& rng,
                                std::vector<std::size_t>& out) {
  out.clear();
  for (std::size_t j = m - k; j < m; ++j) {
    const std::size_t t = rng.index(j + 1);
    bool seen = false;
    for (const std::size_t x : out) {
      if (x == t) {
        seen = true;
        break;
      }
    }
    out.push_back(seen ? j : t);
  }
}

}  // namespace ineq

#endif  // INEQ_RNG_HPP
