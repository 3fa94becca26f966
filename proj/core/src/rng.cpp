#include "pickands/rng.hpp"

#include <cmath>
#include <numbers>

namespace pickands {

namespace {

inline void round_once(std::array<std::uint32_t, 4>& x, const std::array<std::uint32_t, 2>& k) {
    const std::uint64_t p0 = std::uint64_t{Philox4x32::kMul0} * x[0];
    const std::uint64_t p1 = std::uint64_t{Philox4x32::kMul1} * x[2];
    const std::uint32_t hi0 = static_cast<std::uint32_t>(p0 >> 32);
    const std::uint32_t lo0 = static_cast<std::uint32_t>(p0);
    const std::uint32_t hi1 = static_cast<std::uint32_t>(p1 >> 32);
    const std::uint32_t lo1 = static_cast<std::uint32_t>(p1);
    x = {hi1 ^ x[1] ^ k[0], lo1, hi0 ^ x[3] ^ k[1], lo0};
}

} // namespace

std::array<std::uint32_t, 4> Philox4x32::block(std::array<std::uint32_t, 4> ctr,
                                               std::array<std::uint32_t, 2> key) {
    for (int r = 0; r < 10; ++r) {
        round_once(ctr, key);
        key[0] += kWeyl0;
        key[1] += kWeyl1;
    }
    return ctr;
}

NormalStream::NormalStream(std::uint64_t seed, std::uint64_t replication)
    : key_{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32)},
      replication_(replication) {}

double NormalStream::next() {
    if (has_cached_) {
        has_cached_ = false;
        return cached_;
    }
    const std::array<std::uint32_t, 4> ctr = {
        static_cast<std::uint32_t>(block_),
        static_cast<std::uint32_t>(block_ >> 32),
        static_cast<std::uint32_t>(replication_),
        static_cast<std::uint32_t>(replication_ >> 32),
    };
    ++block_;
    const auto x = Philox4x32::block(ctr, key_);
    const std::uint64_t lane0 = (std::uint64_t{x[0]} << 32) | x[1];
    const std::uint64_t lane1 = (std::uint64_t{x[2]} << 32) | x[3];
    // u1 in (0,1] so the log is finite; u2 in [0,1).
    const double u1 = static_cast<double>((lane0 >> 11) + 1) * 0x1.0p-53;
    const double u2 = static_cast<double>(lane1 >> 11) * 0x1.0p-53;
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double theta = 2.0 * std::numbers::pi * u2;
    cached_ = r * std::sin(theta);
    has_cached_ = true;
    return r * std::cos(theta);
}

} // namespace pickands
