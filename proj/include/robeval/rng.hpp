#pragma once
// Seed derivation and the pinned PRNG used by all randomized transforms.
//
// Both are fixed repo conventions so that perturbed datasets regenerate
// byte-identically on any machine:
//   - derive_seed: FNV-1a (64-bit) over the length-prefixed tuple fields
//   - Rng: xorshift64* seeded through one splitmix64 step

#include <cstdint>
#include <string_view>
#include <vector>

namespace robeval {

// Stable 64-bit hash of (master_seed, task_id, transform_name, variant_index).
// Pure function; identical on every platform.
std::uint64_t derive_seed(std::uint64_t master_seed, std::string_view task_id,
                          std::string_view transform_name, int variant_index);

// xorshift64* generator. Small, explicit, portable.
class Rng {
 public:
  explicit Rng(std::uint64_t seed);

  std::uint64_t next_u64();

  // Uniform in [0, 1).
  double next_double();

  bool bernoulli(double p);

  // Uniform integer in [0, n). n must be > 0.
  std::size_t uniform_index(std::size_t n);

  template <typename T>
  const T& pick(const std::vector<T>& v) {
    return v[uniform_index(v.size())];
  }

 private:
  std::uint64_t state_;
};

}  // namespace robeval
