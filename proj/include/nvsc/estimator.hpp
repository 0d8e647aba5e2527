#pragma once

#include "nvsc/numeric.hpp"

namespace nvsc {

// tanh network over each state channel: phi(l,k) = tanh(s_k*(x_l - c_k)).
// With all centers at zero and unit scales this reduces to the plain
// tanh(x_l) form replicated over k.
struct NeuralConfig {
    int neurons = 25;
    int state_dim = 3;
    Vec centers;          // size m
    Vec scales;           // size m, positive
    Vec k_eta_diag;       // adaptive gain diagonal, size n, positive
    double k_eta_star = 0.0;  // advisory bound on ||K_eta||; 0 disables the check
};

struct NeuralState {
    Mat eta_hat;  // n x m adaptive weights
    bool frozen = false;
};

NeuralConfig make_neural_config(int neurons, int state_dim, double center_lo,
                                double center_hi, double k_eta, bool literal_activations);

NeuralState make_neural_state(const NeuralConfig& cfg);

// n x m activation matrix; every entry strictly inside (-1, 1).
Mat activations(const NeuralConfig& cfg, const Vec& x);

// f_hat = sum_l sum_k eta(l,k) * phi(l,k).
double estimate(const NeuralState& st, const Mat& phi);

// Adaptive-law rate K_eta^{-1} * phi * (E^T P B_f); zero when frozen.
Mat adapt_rate(const NeuralConfig& cfg, const NeuralState& st, const Mat& phi,
               const Vec& error, const Mat& P, const Vec& bf);

// Euler application of the rate; frozen states pass through bit-exact.
NeuralState adapt_step(const NeuralConfig& cfg, const NeuralState& st, const Mat& phi,
                       const Vec& error, const Mat& P, const Vec& bf, double dt);

// ||K_eta|| <= k_eta_star advisory; returns a warning string or empty.
std::string check_k_eta_bound(const NeuralConfig& cfg);

}  // namespace nvsc
