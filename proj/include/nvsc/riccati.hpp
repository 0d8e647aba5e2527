#pragma once

#include <stdexcept>

#include "nvsc/numeric.hpp"

namespace nvsc {

// Continuous-time ARE:  P A + A^T P - P G P + psi*I = 0,
// with G the effective neighbor-weighted input gain (symmetric PSD).
struct RiccatiProblem {
    Mat A;
    Mat G;
    double psi = 1.0;
};

struct RiccatiSolution {
    Mat P;                  // symmetric positive definite
    double residual_norm;   // Frobenius norm of the ARE defect
};

// Raised when no certified stabilizing solution exists (non-stabilizable
// pair, imaginary-axis Hamiltonian spectrum, or refinement cannot reach
// the residual contract).
struct RiccatiError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Stable Hamiltonian invariant subspace followed by Newton-Kleinman
// refinement. The returned solution is certified: residual <= 1e-9,
// P symmetric positive definite, A - G*P Hurwitz.
RiccatiSolution solve_are(const RiccatiProblem& prob);

double are_residual(const Mat& P, const RiccatiProblem& prob);

}  // namespace nvsc
