#pragma once

#include <array>
#include <cstdint>

namespace wittflow::sampling {

// Philox 4x32-10 counter-based generator (Salmon, Moraes, Dror, Shaw 2011).
// A pure function of (counter, key): every coordinate of every sample is
// addressable without any sequential state.
struct Philox4x32 {
    static constexpr std::uint32_t kMul0 = 0xD2511F53u;
    static constexpr std::uint32_t kMul1 = 0xCD9E8D57u;
    static constexpr std::uint32_t kWeyl0 = 0x9E3779B9u;
    static constexpr std::uint32_t kWeyl1 = 0xBB67AE85u;

    static std::array<std::uint32_t, 4> block(std::array<std::uint32_t, 4> ctr,
                                              std::array<std::uint32_t, 2> key) {
        for (int round = 0; round < 10; ++round) {
            const std::uint64_t p0 = static_cast<std::uint64_t>(kMul0) * ctr[0];
            const std::uint64_t p1 = static_cast<std::uint64_t>(kMul1) * ctr[2];
            ctr = {static_cast<std::uint32_t>(p1 >> 32) ^ ctr[1] ^ key[0],
                   static_cast<std::uint32_t>(p1),
                   static_cast<std::uint32_t>(p0 >> 32) ^ ctr[3] ^ key[1],
                   static_cast<std::uint32_t>(p0)};
            key[0] += kWeyl0;
            key[1] += kWeyl1;
        }
        return ctr;
    }
};

// Uniform draw in the open interval (0,1), keyed by the 64-bit stream seed
// and addressed by (sampleIndex, coordinate).
inline double philox_uniform(std::uint64_t seed, std::uint64_t sampleIndex, std::uint32_t coord) {
    const auto out = Philox4x32::block(
        {coord, static_cast<std::uint32_t>(sampleIndex),
         static_cast<std::uint32_t>(sampleIndex >> 32), 0u},
        {static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32)});
    const std::uint64_t bits =
        static_cast<std::uint64_t>(out[0]) | (static_cast<std::uint64_t>(out[1]) << 32);
    return (static_cast<double>(bits >> 11) + 0.5) * 0x1p-53;
}

}  // namespace wittflow::sampling
