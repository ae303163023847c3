#pragma once

#include <cstdint>
#include <random>

namespace mhdwild {

// Stream splitting: child seed from (master, index). splitmix64 finalizer, so
// seeds 0,1,2,... do not produce correlated engine states.
inline std::uint64_t split_seed(std::uint64_t master, std::uint64_t index) {
    std::uint64_t z = master + 0x9e3779b97f4a7c15ull * (index + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

// Deterministic RNG wrapper. Distributions are implemented manually because
// std::uniform_real_distribution is not guaranteed bit-identical across
// standard libraries, and reproducibility of the seed -> output map is a
// contract here.
class DetRng {
public:
    explicit DetRng(std::uint64_t seed) : eng_(seed) {}

    std::uint64_t raw() { return eng_(); }

    // uniform in [0, 1), 53-bit mantissa
    double uniform() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }

    double uniform(double a, double b) { return a + (b - a) * uniform(); }

    // uniform integer in [0, n)
    std::uint64_t below(std::uint64_t n) {
        // multiply-shift; bias is < 2^-64 * n, irrelevant for sampling choices
        unsigned __int128 m = static_cast<unsigned __int128>(eng_()) * n;
        return static_cast<std::uint64_t>(m >> 64);
    }

private:
    std::mt19937_64 eng_;
};

}  // namespace mhdwild
