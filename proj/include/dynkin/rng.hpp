#pragma once

// Deterministic per-path random streams. Each path owns an independent
// generator seeded by mixing the master seed with the path index, so a run's
// output is a pure function of (seed, path count) and never depends on how
// paths are distributed over threads.

#include <cstdint>
#include <span>

namespace dynkin::mc {

// SplitMix64 finalizer.
constexpr std::uint64_t mix_finalize(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ull;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

constexpr std::uint64_t stream_seed(std::uint64_t master, std::uint64_t index) {
    return mix_finalize(master ^ mix_finalize(index * 0x9e3779b97f4a7c15ull +
                                              0xd1b54a32d192ed03ull));
}

// SplitMix64 sequence with explicit samplers. The samplers are part of the
// reproducibility contract: uniform maps the top 53 bits to (0, 1), the
// exponential inverts the uniform, and normals come from a Box-Muller pair
// with the second draw cached.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64() {
        state_ += 0x9e3779b97f4a7c15ull;
        std::uint64_t z = state_;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }

    // Strictly inside (0, 1).
    double uniform() {
        return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
    }

    double exponential(double rate);
    double normal();

  private:
    std::uint64_t state_;
    double spare_ = 0.0;
    bool has_spare_ = false;
};

// Fixed-order pairwise reduction; the result is independent of any thread
// partitioning because it always runs over the full, index-ordered vector.
double pairwise_sum(std::span<const double> v);

}  // namespace dynkin::mc
