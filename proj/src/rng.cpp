#include "lreaudit/rng.hpp"

namespace lreaudit {

namespace {

constexpr std::uint32_t rotl(std::uint32_t x, int r) { return (x << r) | (x >> (32 - r)); }

constexpr int kRot[8] = {13, 15, 26, 6, 17, 29, 16, 24};

}  // namespace

std::array<std::uint32_t, 2> threefry2x32(std::array<std::uint32_t, 2> key,
                                          std::array<std::uint32_t, 2> counter) {
    const std::uint32_t ks[3] = {key[0], key[1], 0x1BD11BDAu ^ key[0] ^ key[1]};
    std::uint32_t x0 = counter[0] + ks[0];
    std::uint32_t x1 = counter[1] + ks[1];
    for (int round = 0; round < 20; ++round) {
        x0 += x1;
        x1 = rotl(x1, kRot[round % 8]) ^ x0;
        if (round % 4 == 3) {
            const std::uint32_t inj = static_cast<std::uint32_t>(round / 4 + 1);
            x0 += ks[inj % 3];
            x1 += ks[(inj + 1) % 3] + inj;
        }
    }
    return {x0, x1};
}

std::uint64_t random_bits(std::uint64_t seed, std::uint32_t stream, std::uint32_t index) {
    const auto out = threefry2x32({static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32)},
                                  {index, stream});
    return (static_cast<std::uint64_t>(out[0]) << 32) | out[1];
}

std::uint64_t random_below(std::uint64_t bits, std::uint64_t n) {
    return static_cast<std::uint64_t>((static_cast<unsigned __int128>(bits) * n) >> 64);
}

double random_unit(std::uint64_t bits) { return static_cast<double>(bits >> 11) * 0x1.0p-53; }

}  // namespace lreaudit
