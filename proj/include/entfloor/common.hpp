// common.hpp — shared scalar helpers, error types and deterministic RNG
#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>

namespace entfloor {

using complexd = std::complex<double>;

inline constexpr double kHermitianTol = 1e-12;
inline constexpr double kTraceTol = 1e-12;
inline constexpr double kPsdTol = 1e-10;       // eigenvalues >= -kPsdTol accepted
inline constexpr double kSupportTol = 1e-12;   // eigenvalue below this counts as zero

// log2 clamped at zero: 0 for arguments <= 1.
inline double log2_plus(double x) { return x > 1.0 ? std::log2(x) : 0.0; }

// Binary entropy in bits, with 0 log 0 := 0.
inline double binary_entropy(double p) {
    double h = 0.0;
    if (p > 0.0) h -= p * std::log2(p);
    if (p < 1.0) h -= (1.0 - p) * std::log2(1.0 - p);
    return h;
}

// Inverse of binary_entropy on [0, 1/2].
inline double binary_entropy_inv(double h) {
    if (h <= 0.0) return 0.0;
    if (h >= 1.0) return 0.5;
    double lo = 0.0, hi = 0.5;
    for (int it = 0; it < 200; ++it) {
        double mid = 0.5 * (lo + hi);
        if (binary_entropy(mid) < h) lo = mid; else hi = mid;
    }
    return 0.5 * (lo + hi);
}

// Thrown when the requested data admit no quantum state (CLI exit code 2).
class InfeasibleError : public std::runtime_error {
public:
    explicit InfeasibleError(const std::string& what) : std::runtime_error(what) {}
};

// Thrown when an iterative solve fails its convergence contract (CLI exit code 1).
class ConvergenceError : public std::runtime_error {
public:
    explicit ConvergenceError(const std::string& what) : std::runtime_error(what) {}
};

inline uint64_t splitmix64(uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

// Small deterministic generator; the stream depends only on the seed so
// parallel and serial sweeps produce identical samples.
class Rng {
public:
    explicit Rng(uint64_t seed) : state_(splitmix64(seed ^ 0x6a09e667f3bcc908ULL)) {}
    Rng(uint64_t seed, uint64_t stream) : Rng(splitmix64(seed) ^ splitmix64(stream * 0x9e3779b97f4a7c15ULL + 1)) {}

    uint64_t next() { return state_ = splitmix64(state_); }

    // uniform in (0, 1]
    double uniform() {
        return (static_cast<double>(next() >> 11) + 1.0) * 0x1.0p-53;
    }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    // standard normal via Box-Muller (library-independent for reproducibility)
    double gauss() {
        double u1 = uniform();
        double u2 = uniform();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
    }

    complexd cgauss() { return complexd(gauss(), gauss()); }

private:
    uint64_t state_;
};

// Formats a double with 12 significant digits (the CLI output contract).
inline std::string fmt12(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return std::string(buf);
}

inline constexpr double kInf = std::numeric_limits<double>::infinity();

}  // namespace entfloor
