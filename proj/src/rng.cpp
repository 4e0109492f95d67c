#include "qic/rng.hpp"

#include <cmath>

namespace qic {

namespace {

constexpr std::uint32_t kMul0 = 0xD2511F53u;
constexpr std::uint32_t kMul1 = 0xCD9E8D57u;
constexpr std::uint32_t kWey0 = 0x9E3779B9u;
constexpr std::uint32_t kWey1 = 0xBB67AE85u;

inline void philox_round(std::uint32_t x[4], std::uint32_t k0, std::uint32_t k1) {
    const std::uint64_t p0 = static_cast<std::uint64_t>(kMul0) * x[0];
    const std::uint64_t p1 = static_cast<std::uint64_t>(kMul1) * x[2];
    const std::uint32_t hi0 = static_cast<std::uint32_t>(p0 >> 32);
    const std::uint32_t lo0 = static_cast<std::uint32_t>(p0);
    const std::uint32_t hi1 = static_cast<std::uint32_t>(p1 >> 32);
    const std::uint32_t lo1 = static_cast<std::uint32_t>(p1);
    const std::uint32_t y0 = hi1 ^ x[1] ^ k0;
    const std::uint32_t y1 = lo1;
    const std::uint32_t y2 = hi0 ^ x[3] ^ k1;
    const std::uint32_t y3 = lo0;
    x[0] = y0;
    x[1] = y1;
    x[2] = y2;
    x[3] = y3;
}

}  // namespace

SplitStream::SplitStream(std::uint64_t master_seed, std::uint64_t sample_index)
    : key0_(static_cast<std::uint32_t>(master_seed)),
      key1_(static_cast<std::uint32_t>(master_seed >> 32)),
      index_(sample_index) {}

void SplitStream::refill() {
    std::uint32_t x[4] = {
        static_cast<std::uint32_t>(block_),
        static_cast<std::uint32_t>(block_ >> 32),
        static_cast<std::uint32_t>(index_),
        static_cast<std::uint32_t>(index_ >> 32),
    };
    std::uint32_t k0 = key0_, k1 = key1_;
    for (int r = 0; r < 10; ++r) {
        philox_round(x, k0, k1);
        k0 += kWey0;
        k1 += kWey1;
    }
    out_[0] = x[0];
    out_[1] = x[1];
    out_[2] = x[2];
    out_[3] = x[3];
    have_ = 4;
    ++block_;
}

std::uint32_t SplitStream::next_u32() {
    if (have_ == 0) refill();
    return out_[4 - have_--];
}

double SplitStream::uniform() {
    const std::uint64_t hi = next_u32();
    const std::uint64_t lo = next_u32();
    const std::uint64_t bits = ((hi << 32) | lo) >> 11;  // 53 bits
    return static_cast<double>(bits) * 0x1.0p-53;
}

double SplitStream::gaussian() {
    if (has_spare_) {
        has_spare_ = false;
        return spare_;
    }
    const double u = 1.0 - uniform();  // (0, 1]
    const double v = uniform();
    const double r = std::sqrt(-2.0 * std::log(u));
    const double ang = 6.28318530717958647692 * v;
    spare_ = r * std::sin(ang);
    has_spare_ = true;
    return r * std::cos(ang);
}

}  // namespace qic
