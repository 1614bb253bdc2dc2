#ifndef GRAVCORR_RANDOM_HPP
#define GRAVCORR_RANDOM_HPP

#include <cmath>
#include <cstdint>
#include <random>

namespace gravcorr {

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

// Deterministic per-trial Gaussian stream; the normal variates are produced
// by an explicit Box-Muller so the sample sequence is pinned by this code
// rather than by the standard library's distribution internals.
class GaussianStream {
public:
    GaussianStream(std::uint64_t seed, std::uint64_t trial_index)
        : eng_(splitmix64(seed ^ splitmix64(trial_index + 0x51a5c3f0ull))) {}

    double normal() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        double u1 = uniform01();
        while (u1 <= 1e-300) u1 = uniform01();
        const double u2 = uniform01();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double a = 6.283185307179586476925286766559 * u2;
        spare_ = r * std::sin(a);
        have_spare_ = true;
        return r * std::cos(a);
    }

private:
    double uniform01() {
        return (eng_() >> 11) * 0x1.0p-53;
    }

    std::mt19937_64 eng_;
    double spare_ = 0.0;
    bool have_spare_ = false;
};

} // namespace gravcorr

#endif
