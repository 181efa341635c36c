#pragma once

#include <cstdint>
#include <initializer_list>
#include <random>

namespace rds {

using Rng = std::mt19937_64;

/// splitmix64 finaliser.
constexpr std::uint64_t mix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

/// Counter-based stream key: folds each coordinate into the running hash in
/// order, so stream_key(s, {a, b}) and stream_key(s, {b, a}) differ and adding
/// a coordinate value never shifts any other stream.
constexpr std::uint64_t stream_key(std::uint64_t master_seed, std::initializer_list<std::uint64_t> coords) {
    std::uint64_t h = mix64(master_seed);
    for (std::uint64_t c : coords) h = mix64(h ^ mix64(c + 0x632be59bd9b4e019ULL));
    return h;
}

inline Rng make_stream(std::uint64_t master_seed, std::initializer_list<std::uint64_t> coords) {
    return Rng(stream_key(master_seed, coords));
}

}  // namespace rds
