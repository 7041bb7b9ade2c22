#ifndef XZSQ_RNG_HPP
#define XZSQ_RNG_HPP

#include <cstdint>
#include <random>

namespace xzsq {

/// Small deterministic generator; output is identical on every platform.
class SplitMix64 {
public:
  using result_type = std::uint64_t;

  explicit SplitMix64(std::uint64_t seed) noexcept : state_(seed) {}

  static constexpr result_type min() noexcept { return 0; }
  static constexpr result_type max() noexcept { return ~result_type(0); }

  result_type operator()() noexcept
  {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

  /// Uniform value in [0, n) by rejection, n > 0.
  std::uint64_t below(std::uint64_t n) noexcept
  {
    const std::uint64_t limit = max() - max() % n;
    std::uint64_t v;
    do
      v = (*this)();
    while (v >= limit);
    return v % n;
  }

private:
  std::uint64_t state_;
};

/// mt19937_64 seeded through SplitMix64, with portable bounded sampling.
class Rng {
public:
  explicit Rng(std::uint64_t seed) : engine_(SplitMix64(seed)()) {}

  std::uint64_t next() { return engine_(); }

  std::uint64_t below(std::uint64_t n)
  {
    const std::uint64_t limit = engine_.max() - engine_.max() % n;
    std::uint64_t v;
    do
      v = engine_();
    while (v >= limit);
    return v % n;
  }

private:
  std::mt19937_64 engine_;
};

} // namespace xzsq

#endif // XZSQ_RNG_HPP
