#ifndef MINDWHEEL_RNG_HPP
#define MINDWHEEL_RNG_HPP

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

namespace mindwheel {

// splitmix64 step; used to mix seeds and derive independent streams.
inline std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

// Deterministic random source. The engine is std::mt19937_64, whose output
// sequence is fixed by the C++ standard; every distribution transform is
// implemented here rather than via std:: distributions, whose outputs are
// implementation-defined. Identical seeds therefore produce identical
// streams on every platform and toolchain.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    // Derives a stream keyed by (seed, a, b); used so that e.g. every
    // (class, trial) pair gets its own independent generator.
    static Rng keyed(std::uint64_t seed, std::uint64_t a, std::uint64_t b) {
        std::uint64_t s = seed;
        std::uint64_t m = splitmix64(s);
        s ^= a * 0x9e3779b97f4a7c15ULL;
        m ^= splitmix64(s);
        s ^= b * 0xc2b2ae3d27d4eb4fULL;
        m ^= splitmix64(s);
        return Rng(m);
    }

    std::uint64_t next_u64() { return engine_(); }

    // Uniform in [0, 1), 53-bit resolution.
    double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    // Uniform in [lo, hi).
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    // Uniform integer in [0, n), bias-free via rejection sampling. n >= 1.
    std::uint64_t uniform_int(std::uint64_t n) {
        const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % n);
        std::uint64_t x;
        do {
            x = next_u64();
        } while (x >= limit);
        return x % n;
    }

    // Standard normal via Box-Muller; caches the second deviate.
    double normal() {
        if (has_spare_) {
            has_spare_ = false;
            return spare_;
        }
        double u1, u2;
        do {
            u1 = uniform();
        } while (u1 <= 0.0);
        u2 = uniform();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double theta = 2.0 * M_PI * u2;
        spare_ = r * std::sin(theta);
        has_spare_ = true;
        return r * std::cos(theta);
    }

    double normal(double mean, double stddev) { return mean + stddev * normal(); }

    bool bernoulli(double p) { return uniform() < p; }

    // In-place Fisher-Yates shuffle with this generator.
    template <typename T>
    void shuffle(std::vector<T>& v) {
        if (v.size() < 2) return;
        for (std::size_t i = v.size() - 1; i > 0; --i) {
            const std::size_t j = static_cast<std::size_t>(uniform_int(i + 1));
            using std::swap;
            swap(v[i], v[j]);
        }
    }

private:
    std::mt19937_64 engine_;
    double spare_ = 0.0;
    bool has_spare_ = false;
};

}  // namespace mindwheel

#endif
