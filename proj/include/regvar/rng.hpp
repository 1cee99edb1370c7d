#pragma once

// Counter-based pseudo-random streams (Philox-4x32-10, Salmon et al. 2011).
// A stream is addressed by (seed, stream, tag); draws within a stream are
// sequential. Streams with distinct addresses are statistically independent,
// so replications can run on any number of workers with identical results.

#include <cmath>
#include <cstdint>

namespace regvar {

struct PhiloxBlock {
    uint32_t v[4];
};

inline PhiloxBlock philox4x32(const uint32_t ctr[4], const uint32_t key[2]) {
    constexpr uint32_t kM0 = 0xD2511F53u, kM1 = 0xCD9E8D57u;
    constexpr uint32_t kW0 = 0x9E3779B9u, kW1 = 0xBB67AE85u;
    uint32_t c0 = ctr[0], c1 = ctr[1], c2 = ctr[2], c3 = ctr[3];
    uint32_t k0 = key[0], k1 = key[1];
    for (int round = 0; round < 10; ++round) {
        uint64_t p0 = static_cast<uint64_t>(kM0) * c0;
        uint64_t p1 = static_cast<uint64_t>(kM1) * c2;
        uint32_t hi0 = static_cast<uint32_t>(p0 >> 32), lo0 = static_cast<uint32_t>(p0);
        uint32_t hi1 = static_cast<uint32_t>(p1 >> 32), lo1 = static_cast<uint32_t>(p1);
        uint32_t n0 = hi1 ^ c1 ^ k0;
        uint32_t n1 = lo1;
        uint32_t n2 = hi0 ^ c3 ^ k1;
        uint32_t n3 = lo0;
        c0 = n0; c1 = n1; c2 = n2; c3 = n3;
        k0 += kW0; k1 += kW1;
    }
    return PhiloxBlock{{c0, c1, c2, c3}};
}

class Prng {
  public:
    Prng(uint64_t seed, uint64_t stream, uint32_t tag = 0)
        : key_{static_cast<uint32_t>(seed), static_cast<uint32_t>(seed >> 32)},
          base_{tag, static_cast<uint32_t>(stream), static_cast<uint32_t>(stream >> 32)} {}

    uint32_t next_u32() {
        if (pos_ == 4) refill();
        return buf_.v[pos_++];
    }

    uint64_t next_u64() {
        uint64_t hi = next_u32();
        return (hi << 32) | next_u32();
    }

    // Uniform on (0, 1), 53-bit resolution, never exactly 0 or 1.
    double uniform01() {
        return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1p-53;
    }

    // One fair coin flip.
    bool bit() {
        if (bits_left_ == 0) {
            bit_buf_ = next_u32();
            bits_left_ = 32;
        }
        bool b = bit_buf_ & 1u;
        bit_buf_ >>= 1;
        --bits_left_;
        return b;
    }

    // Standard normal via Box-Muller; generates pairs, caches the second.
    double normal() {
        if (have_normal_) {
            have_normal_ = false;
            return normal_cache_;
        }
        double u1 = uniform01();
        double u2 = uniform01();
        double r = std::sqrt(-2.0 * std::log(u1));
        double theta = 6.28318530717958647692 * u2;
        normal_cache_ = r * std::sin(theta);
        have_normal_ = true;
        return r * std::cos(theta);
    }

  private:
    void refill() {
        // 2^32 blocks (2^34 u32 draws) per stream before wrap; far beyond use.
        uint32_t ctr[4] = {static_cast<uint32_t>(block_), base_[0], base_[1], base_[2]};
        buf_ = philox4x32(ctr, key_);
        ++block_;
        pos_ = 0;
    }

    uint32_t key_[2];
    uint32_t base_[3];  // tag, stream lo, stream hi
    uint64_t block_ = 0;
    PhiloxBlock buf_{};
    int pos_ = 4;
    uint32_t bit_buf_ = 0;
    int bits_left_ = 0;
    double normal_cache_ = 0;
    bool have_normal_ = false;
};

// Stream tags keep independent uses of the same (seed, stream) apart.
enum : uint32_t {
    kTagPath = 1,      // per-replication sample paths
    kTagWeights = 2,   // weight rows (stream = row length n)
    kTagGeneric = 3,
};

}  // namespace regvar
