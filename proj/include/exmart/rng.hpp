#pragma once

/* Seeded random source with a bit-reproducible contract: identical seed
 * and call sequence give identical draws on every platform (mt19937_64
 * is fully specified by the standard, and so are the mappings below).
 * All randomness in the library flows through RngHandle -- there is no
 * global RNG. A handle is single-owner; to parallelize, derive children. */

#include <cmath>
#include <cstdint>
#include <random>

namespace exmart {

class RngHandle {
  public:
    explicit RngHandle(uint64_t seed) : seed_(seed), gen_(seed) {}

    uint64_t next_u64() {
        ++position_;
        return gen_();
    }

    /* Uniform draw in the open interval (0,1): 53-bit mantissa shifted
     * to the midpoint of its cell, so 0 and 1 are unreachable. */
    double next_unit_open() {
        return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
    }

    /* Uniform integer in [0, n) by rejection (no modulo bias). */
    uint64_t next_below(uint64_t n) {
        const uint64_t limit = UINT64_MAX - UINT64_MAX % n;
        uint64_t x;
        do {
            x = next_u64();
        } while (x >= limit);
        return x % n;
    }

    /* Standard normal via Box-Muller; two uniforms per draw, no caching,
     * to keep the draw count a simple function of the call sequence. */
    double next_gaussian() {
        const double u1 = next_unit_open();
        const double u2 = next_unit_open();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586477 * u2);
    }

    /* Independent child handle for stream `stream` (splitmix64 mixing). */
    RngHandle derive(uint64_t stream) const {
        uint64_t z = seed_ + 0x9e3779b97f4a7c15ULL * (stream + 1);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return RngHandle(z ^ (z >> 31));
    }

    uint64_t seed() const { return seed_; }
    uint64_t position() const { return position_; }

  private:
    uint64_t seed_;
    uint64_t position_ = 0;
    std::mt19937_64 gen_;
};

}  // namespace exmart
