#pragma once

#include <cstdint>

namespace oscwave {

// (seed, stream_id) fully determines one random stream. Ensembles assign
// stream_id = sample index, so results do not depend on how samples are
// scheduled across workers.
struct RngSeed {
    std::uint64_t seed = 0;
    std::uint64_t stream_id = 0;
};

// xoshiro256++ seeded through splitmix64. Normal draws use explicit
// Box-Muller: std::normal_distribution's algorithm is implementation-defined,
// which would break the bit-reproducibility contract across toolchains.
class SubstreamRng {
public:
    explicit SubstreamRng(RngSeed s);

    std::uint64_t next_u64();
    // Uniform on the open interval (0, 1); never returns 0 or 1.
    double uniform01();
    double standard_normal();

private:
    std::uint64_t state_[4];
    double cached_normal_ = 0.0;
    bool has_cached_ = false;
};

}  // namespace oscwave
