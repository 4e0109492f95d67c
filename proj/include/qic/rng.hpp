#pragma once

#include <cstdint>
#include <utility>

namespace qic {

// Counter-based stream: Philox4x32-10 keyed by (master_seed, sample_index).
// Streams for distinct sample indices are independent, so serial and
// parallel sweeps produce identical values.  Gaussians use Box-Muller on
// 53-bit uniforms; no libstdc++ distributions are involved, keeping the
// byte stream stable across standard library versions.
class SplitStream {
public:
    SplitStream(std::uint64_t master_seed, std::uint64_t sample_index);

    std::uint32_t next_u32();
    double uniform();   // [0, 1)
    double gaussian();  // standard normal

private:
    void refill();

    std::uint32_t key0_, key1_;
    std::uint64_t index_;
    std::uint64_t block_ = 0;
    std::uint32_t out_[4] = {0, 0, 0, 0};
    int have_ = 0;
    double spare_ = 0.0;
    bool has_spare_ = false;
};

}  // namespace qic
