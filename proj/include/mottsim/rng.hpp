#pragma once

#include <cstdint>
#include <initializer_list>
#include <random>
#include <vector>

namespace mottsim {

using Rng = std::mt19937_64;

/// Independent stream tags; each consumer of randomness draws from its own stream.
enum class Stream : std::uint32_t {
    grid = 1,
    steps = 2,
    read = 3,
};

/// Engine seeded from (master seed, unit index, stream). Streams derived from
/// distinct tuples are statistically independent and scheduling-order free.
[[nodiscard]] inline Rng make_rng(std::uint64_t master, std::uint64_t unit, Stream stream) {
    std::seed_seq seq{static_cast<std::uint32_t>(master), static_cast<std::uint32_t>(master >> 32),
                      static_cast<std::uint32_t>(unit), static_cast<std::uint32_t>(unit >> 32),
                      static_cast<std::uint32_t>(stream)};
    return Rng(seq);
}

/// Stable 64-bit seed for a sub-unit (used when a seed, not an engine, must be handed down).
[[nodiscard]] inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t unit, Stream stream) {
    Rng rng = make_rng(master, unit, stream);
    return rng();
}

}  // namespace mottsim
