#pragma once

#include <cstdint>
#include <random>

namespace ffmoduli {

// One seeded generator per sweep keeps every randomized property check
// reproducible from the seed recorded in the output.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}

  std::uint64_t next_u64() { return eng_(); }

  // Uniform in [0, bound). bound > 0.
  std::uint64_t below(std::uint64_t bound) {
    std::uniform_int_distribution<std::uint64_t> d(0, bound - 1);
    return d(eng_);
  }

  // Derive an independent stream (for per-case generators).
  Rng fork() { return Rng(eng_() ^ 0x9e3779b97f4a7c15ull); }

 private:
  std::mt19937_64 eng_;
};

}  // namespace ffmoduli
