#pragma once

#include <string>

#include "nvsc/plant.hpp"

namespace nvsc {

struct ObserverState {
    Vec x_hat;    // estimated state
    Vec k_o_diag; // positive observer gain diagonal
    double xi = 2.0;  // gain-condition slack, > 1
};

struct GainConditionReport {
    bool ok = false;
    double margin = 0.0;  // min|K_o| - xi*(sigma_d* + 2 eta*)
};

// u_hat_d = -K_o tanh(P E_o), componentwise bounded by the K_o diagonal.
Vec virtual_disturbance(const Vec& k_o_diag, const Mat& P, const Vec& e_o);

// min_n |K_o,n| > xi (sigma_d* + 2 eta*); xi <= 1 is a config error.
GainConditionReport check_gain_condition(const ObserverState& st, double sigma_d_star,
                                         double eta_star);

// Right-hand side of the disturbance-observer dynamics. The two consensus
// sums are passed in precomputed (they are shared with the control law):
//   v1 = sum_j a_ij (E_i - diag(tanh(E_i^T P)) E_j)
//   v2 = sum_j a_ij K_C diag(tanh(P E_i)) Ebar_j
// fhat_at_xhat is the neural estimate at the observer state; the true
// nonlinearity is unknown at runtime, so the estimate stands in for it.
Vec observer_derivative(const SystemMatrices& m, const Mat& P, const Vec& x_hat,
                        const Vec& v1, const Vec& v2, const Vec& u_bar,
                        const Vec& u_hat_d, double fhat_at_xhat);

}  // namespace nvsc
