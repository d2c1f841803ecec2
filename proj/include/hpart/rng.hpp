#pragma once

#include <cstdint>
#include <random>

namespace hpart {

using Rng = std::mt19937_64;

/// Independent generator for stream @p stream of master seed @p seed.
/// Streams are indexed by work item (replicate, cell, worker), never by thread.
[[nodiscard]] inline Rng make_rng(std::uint64_t seed, std::uint64_t stream = 0) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32),
                      0x68706172u};
    return Rng(seq);
}

}  // namespace hpart
