#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace geocrystal {

/// Deterministic generator. std::mt19937_64 output is fixed by the standard;
/// the range reduction below is our own so streams are identical across
/// standard libraries.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next() { return engine_(); }

    /// Uniform integer in [lo, hi].
    std::int64_t uniform(std::int64_t lo, std::int64_t hi);

    bool coin() { return (next() >> 63) != 0; }

private:
    std::mt19937_64 engine_;
};

std::uint64_t splitmix64(std::uint64_t x);

/// FNV-1a over the bytes of `tag`, mixed with `seed`. Used to give every check
/// its own stream so results do not depend on execution order.
std::uint64_t derive_seed(std::uint64_t seed, std::string_view tag);

}  // namespace geocrystal
