#ifndef NEIGHBOR2VEC_RANDOM_HPP
#define NEIGHBOR2VEC_RANDOM_HPP

#include <cstdint>
#include <limits>
#include <span>
#include <utility>

namespace neighbor2vec {

/**
 * SplitMix64 finalizer. All sub-seeds in the library are derived through
 * mix_seed() so that one user seed fixes every random stream.
 */
constexpr std::uint64_t splitmix64(std::uint64_t x) noexcept {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

/// mix_seed(s, a, b) = splitmix64(splitmix64(splitmix64(s) ^ a) ^ b)
constexpr std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t a, std::uint64_t b = 0) noexcept {
    return splitmix64(splitmix64(splitmix64(seed) ^ a) ^ b);
}

/// Stream tags fed to mix_seed for the independent random streams of a run.
namespace streams {
inline constexpr std::uint64_t corpus = 0x636f72707573ULL;
inline constexpr std::uint64_t train = 0x747261696eULL;
inline constexpr std::uint64_t init = 0x696e6974ULL;
inline constexpr std::uint64_t mlp = 0x6d6c70ULL;
inline constexpr std::uint64_t split = 0x73706c6974ULL;
inline constexpr std::uint64_t negatives = 0x6e6567ULL;
}

/**
 * xoshiro256** generator. Satisfies UniformRandomBitGenerator; small
 * enough to construct once per sampled node.
 */
class Rng {
public:
    using result_type = std::uint64_t;

    explicit Rng(std::uint64_t seed = 0) noexcept {
        std::uint64_t s = seed;
        for (auto& word : state_) {
            s += 0x9E3779B97F4A7C15ULL;
            word = splitmix64(s);
        }
    }

    static constexpr result_type min() noexcept { return 0; }
    static constexpr result_type max() noexcept { return std::numeric_limits<result_type>::max(); }

    result_type operator()() noexcept {
        const std::uint64_t result = rotl(state_[1] * 5, 7) * 9;
        const std::uint64_t t = state_[1] << 17;
        state_[2] ^= state_[0];
        state_[3] ^= state_[1];
        state_[1] ^= state_[2];
        state_[0] ^= state_[3];
        state_[2] ^= t;
        state_[3] = rotl(state_[3], 45);
        return result;
    }

    /// Uniform integer in [0, bound). bound must be > 0.
    std::uint64_t below(std::uint64_t bound) noexcept {
        // Lemire's multiply-shift with rejection; exact and platform independent.
        __uint128_t m = static_cast<__uint128_t>((*this)()) * bound;
        auto low = static_cast<std::uint64_t>(m);
        if (low < bound) {
            const std::uint64_t threshold = (0 - bound) % bound;
            while (low < threshold) {
                m = static_cast<__uint128_t>((*this)()) * bound;
                low = static_cast<std::uint64_t>(m);
            }
        }
        return static_cast<std::uint64_t>(m >> 64);
    }

    /// Uniform double in [0, 1) with 53 random bits.
    double uniform() noexcept { return static_cast<double>((*this)() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) noexcept { return lo + (hi - lo) * uniform(); }

private:
    static constexpr std::uint64_t rotl(std::uint64_t x, int k) noexcept {
        return (x << k) | (x >> (64 - k));
    }

    std::uint64_t state_[4];
};

/// Fisher-Yates over the first `count` positions: afterwards items[0, count)
/// is a uniform ordered sample without replacement of the whole span.
template <typename T>
void partial_shuffle(std::span<T> items, std::size_t count, Rng& rng) {
    const std::size_t n = items.size();
    if (count > n) {
        count = n;
    }
    for (std::size_t i = 0; i < count && i + 1 < n; ++i) {
        const std::size_t j = i + static_cast<std::size_t>(rng.below(n - i));
        using std::swap;
        swap(items[i], items[j]);
    }
}

template <typename T>
void shuffle(std::span<T> items, Rng& rng) {
    partial_shuffle(items, items.size(), rng);
}

}

#endif
