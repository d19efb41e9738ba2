#ifndef TAILCLUST_RNG_HPP
#define TAILCLUST_RNG_HPP

#include <array>
#include <cstdint>
#include <string_view>

namespace tailclust {

// splitmix64 finalizer; also used as the stream-derivation mixer.
constexpr std::uint64_t mix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

constexpr std::uint64_t fnv1a64(std::string_view s) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (char c : s) {
        h ^= static_cast<unsigned char>(c);
        h *= 0x100000001b3ULL;
    }
    return h;
}

/// Deterministic stream key from (seed, purpose, index).
///
/// Every random stream in the library is derived through this function, so a
/// single user seed reproduces the whole computation regardless of thread
/// schedule. Purposes used internally: "skmeans.restart", "maxlinear.row",
/// "evaluate.model", "evaluate.sim", "evaluate.fit", "simulate.model",
/// "simulate.data".
constexpr std::uint64_t derive_stream(std::uint64_t seed, std::string_view purpose,
                                      std::uint64_t index) {
    std::uint64_t x = mix64(seed);
    x = mix64(x ^ fnv1a64(purpose));
    x = mix64(x ^ index);
    return x;
}

/// xoshiro256++ with splitmix64 seeding. Small, fast, and identical output on
/// every platform, which the byte-reproducibility contract needs (the standard
/// <random> distributions are implementation-defined).
class Rng {
public:
    explicit Rng(std::uint64_t seed) {
        std::uint64_t x = seed;
        for (auto& word : state_) {
            x += 0x9e3779b97f4a7c15ULL;
            std::uint64_t z = x;
            z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
            z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
            word = z ^ (z >> 31);
        }
        if (state_[0] == 0 && state_[1] == 0 && state_[2] == 0 && state_[3] == 0)
            state_[0] = 1;
    }

    std::uint64_t next_u64() {
        const std::uint64_t result = rotl(state_[0] + state_[3], 23) + state_[0];
        const std::uint64_t t = state_[1] << 17;
        state_[2] ^= state_[0];
        state_[3] ^= state_[1];
        state_[1] ^= state_[2];
        state_[0] ^= state_[3];
        state_[2] ^= t;
        state_[3] = rotl(state_[3], 45);
        return result;
    }

    /// Uniform double on the open interval (0,1); never returns an endpoint.
    double uniform_open01() {
        return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
    }

    /// Uniform index in [0, n). n must be positive.
    std::size_t uniform_index(std::size_t n) {
        return static_cast<std::size_t>(
            (static_cast<unsigned __int128>(next_u64()) * n) >> 64);
    }

private:
    static constexpr std::uint64_t rotl(std::uint64_t x, int k) {
        return (x << k) | (x >> (64 - k));
    }

    std::array<std::uint64_t, 4> state_{};
};

}  // namespace tailclust

#endif
