// Seeded substreams derived from one root seed.

#pragma once

#include <cstdint>
#include <initializer_list>
#include <random>

namespace fairfedjs {

enum class Stream : std::uint64_t {
    Population = 1,
    Schedule = 2,
    OracleNoise = 3,
    OracleImprovement = 4,
};

constexpr std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

/// Hashes (root, stream, keys...) into a 64-bit seed. Distinct key tuples give
/// unrelated seeds, so draws on one stream never shift another.
inline std::uint64_t derive_seed(std::uint64_t root, Stream stream,
                                 std::initializer_list<std::uint64_t> keys = {}) {
    std::uint64_t h = splitmix64(root ^ splitmix64(static_cast<std::uint64_t>(stream)));
    for (std::uint64_t k : keys) h = splitmix64(h ^ splitmix64(k + 0x632be59bd9b4e019ULL));
    return h;
}

inline std::mt19937_64 substream(std::uint64_t root, Stream stream,
                                 std::initializer_list<std::uint64_t> keys = {}) {
    return std::mt19937_64(derive_seed(root, stream, keys));
}

/// Uniform double in [0, 1) from the top 53 bits of a derived seed.
inline double keyed_uniform(std::uint64_t root, Stream stream,
                            std::initializer_list<std::uint64_t> keys) {
    return static_cast<double>(derive_seed(root, stream, keys) >> 11) * 0x1.0p-53;
}

}  // namespace fairfedjs
