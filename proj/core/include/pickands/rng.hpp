#pragma once

#include <array>
#include <cstdint>

namespace pickands {

// Philox4x32-10 counter-based generator (Salmon et al., SC'11 constants).
// Pure function of (counter, key): replication streams derived from the
// same master seed never overlap and are independent of thread scheduling.
struct Philox4x32 {
    static constexpr std::uint32_t kMul0 = 0xD2511F53u;
    static constexpr std::uint32_t kMul1 = 0xCD9E8D57u;
    static constexpr std::uint32_t kWeyl0 = 0x9E3779B9u;
    static constexpr std::uint32_t kWeyl1 = 0xBB67AE85u;

    static std::array<std::uint32_t, 4> block(std::array<std::uint32_t, 4> ctr,
                                              std::array<std::uint32_t, 2> key);
};

// Stream of standard normals for one replication: key = master seed,
// counter = (block index, replication index), Box-Muller on the two 64-bit
// lanes of each Philox block. Exact in distribution; the pair cache makes
// consumption order deterministic.
class NormalStream {
public:
    NormalStream(std::uint64_t seed, std::uint64_t replication);

    double next();

private:
    std::array<std::uint32_t, 2> key_;
    std::uint64_t replication_;
    std::uint64_t block_ = 0;
    double cached_ = 0.0;
    bool has_cached_ = false;
};

} // namespace pickands
