#pragma once

#include <array>
#include <cstdint>

namespace lreaudit {

/// Threefry-2x32 with 20 rounds (Salmon et al., "Parallel random numbers: as
/// easy as 1, 2, 3"). Counter-based: output depends only on (key, counter),
/// so any draw can be regenerated independently of every other.
std::array<std::uint32_t, 2> threefry2x32(std::array<std::uint32_t, 2> key,
                                          std::array<std::uint32_t, 2> counter);

/// 64 random bits for draw `index` of stream `stream` under `seed`.
std::uint64_t random_bits(std::uint64_t seed, std::uint32_t stream, std::uint32_t index);

/// Uniform integer in [0, n) by multiply-shift; bias is below n / 2^64.
std::uint64_t random_below(std::uint64_t bits, std::uint64_t n);

/// Uniform double in [0, 1) with 53 random bits.
double random_unit(std::uint64_t bits);

}  // namespace lreaudit
