#ifndef WNK_RNG_HPP
#define WNK_RNG_HPP

// Counter-derived random streams. Every stochastic quantity in the library is
// a pure function of (master seed, stream indices), so runs are bit-identical
// across repeats and across worker counts. The generator is SplitMix64 with
// keyed stream derivation; substreams for e.g. (replicate, cell) pairs are
// obtained by chaining derive().

#include <cmath>
#include <cstdint>
#include <numbers>

namespace wnk {

constexpr std::uint64_t kSplitMixGamma = 0x9E3779B97F4A7C15ull;

constexpr std::uint64_t mix64(std::uint64_t x) {
    x ^= x >> 30;
    x *= 0xBF58476D1CE4E5B9ull;
    x ^= x >> 27;
    x *= 0x94D049BB133111EBull;
    x ^= x >> 31;
    return x;
}

// Key for a child stream. Chaining derive(derive(seed, a), b) gives the
// stream for index pair (a, b) independent of any other pair.
constexpr std::uint64_t derive(std::uint64_t key, std::uint64_t stream) {
    return mix64(key + kSplitMixGamma * (stream + 1));
}

class CounterRng {
public:
    explicit CounterRng(std::uint64_t key) : state_(key) {}
    CounterRng(std::uint64_t seed, std::uint64_t stream) : state_(derive(seed, stream)) {}

    std::uint64_t next_u64() {
        state_ += kSplitMixGamma;
        return mix64(state_);
    }

    // Uniform on (0, 1]; never returns 0 so it is safe under log().
    double next_unit() {
        return static_cast<double>((next_u64() >> 11) + 1) * 0x1.0p-53;
    }

    double next_uniform(double a, double b) { return a + (b - a) * next_unit(); }

    // Standard normal via Box-Muller; the second draw of each pair is cached.
    double next_normal() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        const double u1 = next_unit();
        const double u2 = next_unit();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double a = 2.0 * std::numbers::pi * u2;
        spare_ = r * std::sin(a);
        have_spare_ = true;
        return r * std::cos(a);
    }

private:
    std::uint64_t state_;
    double spare_ = 0.0;
    bool have_spare_ = false;
};

}  // namespace wnk

#endif
