#pragma once

#include <cstdint>
#include <initializer_list>
#include <vector>

namespace mlslab::sampling {

// Deterministic stream RNG. A stream is addressed by (master_seed, tags...):
// the tags fold through a splitmix64 mixer into the state of a xoshiro256++
// generator. Distinct addresses give statistically independent streams, so
// experiment trial (experiment, n, trial) draws identical values no matter
// when or where it runs. Output is bit-stable across platforms; none of the
// implementation-defined std::<random> distributions are involved.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : Rng(seed, {}) {}
    Rng(std::uint64_t master_seed, std::initializer_list<std::uint64_t> tags);

    // Derived stream seed for (master_seed, tags...); Rng(derive(...)) is the
    // same stream as Rng(master_seed, {tags...}).
    static std::uint64_t derive(std::uint64_t master_seed,
                                std::initializer_list<std::uint64_t> tags);

    std::uint64_t next_u64();
    // Uniform on [0, 1): 53 random mantissa bits.
    double uniform();
    double uniform(double lo, double hi);
    // Standard normal via Box-Muller (pair cached).
    double normal();
    // Uniform over an axis-aligned box.
    std::vector<double> uniform_in_box(const std::vector<double>& lo,
                                       const std::vector<double>& hi);

  private:
    std::uint64_t s_[4];
    double cached_normal_ = 0.0;
    bool has_cached_normal_ = false;
};

}  // namespace mlslab::sampling
