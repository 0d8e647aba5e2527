#pragma once

#include <optional>
#include <string>
#include <vector>

#include "nvsc/estimator.hpp"
#include "nvsc/observer.hpp"
#include "nvsc/plant.hpp"

namespace nvsc {

enum class InputMechanism { hold, zero };

struct ControllerGains {
    Vec k_c_diag;      // K_C diagonal, every entry > 1
    Mat k_u;           // K_u, ||K_u|| >= ||B_w|| w* + u_d*
    double rho = 2.0;  // sharpness of the sign-weighted error, > 1
    Vec eps_reg_diag;  // regularizer for the singular input gain, > 0
    Vec d0;            // per-state desired offsets D_0
};

// Snapshot of the last successful controller update, applied verbatim for
// the whole attack interval.
struct HeldControl {
    double t_k = 0.0;
    double u_ia_k = 0.0;
    Vec u_bar_k;
    Vec u_hat_d_k;
    Vec e_i_k;
    Vec e_o_k;
    Mat eta_hat_k;
    std::vector<double> e_j_norms_k;  // neighbor error norms at t_k (leader -> 0)
};

struct ControllerState {
    Mat P;
    NeuralState neural;
    ObserverState observer;
    std::optional<HeldControl> held;
    int attack_flag = 0;          // epsilon_i
    double last_packet_time = 0.0;
};

// Consensus sums shared by the control law and the observer dynamics:
//   v1 = sum_j a_ij (E_i - diag(tanh(P E_i)) E_j)
//   v2 = sum_j a_ij K_C diag(tanh(P E_i)) Ebar_j
// The neighbor list carries one error vector per in-neighbor; the leader's
// error is identically zero by definition.
struct ConsensusSums {
    Vec v1;
    Vec v2;
};
ConsensusSums consensus_core(const Mat& P, const ControllerGains& g, const Vec& e_i,
                             const std::vector<Vec>& e_neighbors);

// E_i = X_i - X_0 - i*D_0.
Vec error_vector(const Vec& x_i, const Vec& x_0, int index, const Vec& d0);

// Componentwise e*tanh(rho*e); nonnegative, even in E.
Vec sign_weighted(const Vec& e, double rho);

// Exogenous control vector:
//   -B_f fhat + B_f0 f0 - K_u tanh(P E) - (A_i - A_0) X_0 - i A_i D_0.
Vec exogenous_control(double fhat, double f0_val, const Mat& k_u, const Mat& P,
                      const Vec& e_i, const Mat& a_i, const Mat& a_0, const Vec& x_0,
                      int index, const Vec& d0, const Vec& bf_i, const Vec& bf_0);

// B^T [B B^T + eps]^{-1} u_bar. The rank-one gain alone is singular; the
// regularizer keeps the inverse well defined (min eig >= min eps entry).
double regularized_gain_term(const Vec& b, const Vec& eps_reg_diag, const Vec& u_bar);

// Full five-term control of the attack-free law. Throws a protocol error
// when the neighbor set does not match the topology degree.
double control_nominal(const SystemMatrices& m, const Mat& P, const ControllerGains& g,
                       const Vec& e_i, const std::vector<Vec>& e_neighbors,
                       std::size_t expected_neighbors, const Vec& u_bar,
                       const Vec& u_hat_d);

// Reliability rule: flags loss of fresh packets after a detection window
// (default 1.5 control periods). Updates last_packet_time on arrivals.
int detect_dos(ControllerState& st, double t, double expected_period, bool packet_arrived,
               double window_factor = 1.5);

// Snapshot capture on the 0 -> 1 attack transition.
HeldControl capture_hold(ControllerState& st, const HeldControl& last_good);
void release_hold(ControllerState& st);

// epsilon = 0 -> the live control value; epsilon = 1 -> held (or zero under
// the zero-input mechanism).
double control_switched(const ControllerState& st, double live_u, InputMechanism mech);

// Gain preconditions checked at scenario load; one message per violation.
std::vector<std::string> validate_gains(const ControllerGains& g, const SystemMatrices& m,
                                        double omega_star, double u_d_star);

}  // namespace nvsc
