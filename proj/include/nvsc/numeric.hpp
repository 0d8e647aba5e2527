#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <random>

namespace nvsc {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

// Spectral norm (largest singular value). Matrices here are tiny, SVD is fine.
double spectral_norm(const Mat& m);

// All eigenvalue real parts strictly below -tol.
bool is_hurwitz(const Mat& m, double tol = 0.0);

double min_eigenvalue_sym(const Mat& m);

// Overflow-safe sech^2.
inline double sech2(double z) {
    const double e = std::exp(-2.0 * std::abs(z));
    const double d = 1.0 + e;
    return 4.0 * e / (d * d);
}

// Portable deterministic draws on top of mt19937_64. The std distributions
// are implementation-defined, which would break byte-identical traces across
// libstdc++ versions.
inline double uniform01(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

inline double uniform_in(std::mt19937_64& rng, double lo, double hi) {
    return lo + (hi - lo) * uniform01(rng);
}

inline std::uint64_t uniform_index(std::mt19937_64& rng, std::uint64_t n) {
    // n == 0 is a caller bug; modulo bias is irrelevant at 2^-64.
    return rng() % n;
}

}  // namespace nvsc
