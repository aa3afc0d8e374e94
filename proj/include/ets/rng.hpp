#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <string>

namespace ets::rng {

/// splitmix64, used to derive well-separated substream seeds.
inline std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

inline std::uint64_t fnv1a(const std::string& text) {
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (unsigned char c : text) h = (h ^ c) * 0x100000001b3ull;
    return h;
}

/// One deterministic value stream. Substreams are derived from a master seed
/// and a label (one per table), so adding a stream never perturbs the values
/// of existing ones. Distributions are implemented here rather than taken
/// from <random> because the standard does not pin their algorithms.
class Stream {
public:
    Stream(std::uint64_t master_seed, const std::string& label) {
        std::uint64_t s = master_seed ^ fnv1a(label);
        std::uint64_t seed0 = splitmix64(s);
        engine_.seed(seed0);
    }

    std::uint64_t bits() { return engine_(); }

    /// Uniform in [0, 1) with 53-bit resolution.
    double uniform01() { return static_cast<double>(bits() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

    std::int64_t uniform_int(std::int64_t lo, std::int64_t hi) { // inclusive bounds
        std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
        return lo + static_cast<std::int64_t>(bits() % span);
    }

    /// Box-Muller; one fresh pair of uniforms per call keeps the draw count
    /// per row fixed.
    double gaussian(double mean, double sd) {
        double u1 = uniform01();
        double u2 = uniform01();
        if (u1 <= 0.0) u1 = 0x1.0p-53;
        double z = std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * 3.141592653589793 * u2);
        return mean + sd * z;
    }

    /// Knuth's product method; rates above 30 split recursively so the
    /// exp(-rate) factor never underflows.
    std::int64_t poisson(double rate) {
        if (rate <= 0.0) return 0;
        if (rate > 30.0) return poisson(rate / 2.0) + poisson(rate / 2.0);
        double limit = std::exp(-rate);
        double product = 1.0;
        std::int64_t count = -1;
        do {
            product *= uniform01();
            ++count;
        } while (product > limit);
        return count;
    }

private:
    std::mt19937_64 engine_;
};

} // namespace ets::rng
