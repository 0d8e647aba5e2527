#include "nvsc/controller.hpp"

#include <stdexcept>

namespace nvsc {

Vec error_vector(const Vec& x_i, const Vec& x_0, int index, const Vec& d0) {
    if (x_i.size() != x_0.size() || x_i.size() != d0.size())
        throw std::invalid_argument("error_vector: dimension mismatch");
    return x_i - x_0 - static_cast<double>(index) * d0;
}

Vec sign_weighted(const Vec& e, double rho) {
    if (rho <= 1.0) throw std::invalid_argument("sign_weighted: rho must exceed 1");
    return e.cwiseProduct((rho * e).array().tanh().matrix());
}

ConsensusSums consensus_core(const Mat& P, const ControllerGains& g, const Vec& e_i,
                             const std::vector<Vec>& e_neighbors) {
    const auto n = e_i.size();
    const Vec tanh_pe = (P * e_i).array().tanh();
    ConsensusSums s{Vec::Zero(n), Vec::Zero(n)};
    for (const Vec& e_j : e_neighbors) {
        s.v1 += e_i - tanh_pe.cwiseProduct(e_j);
        s.v2 += g.k_c_diag.cwiseProduct(tanh_pe.cwiseProduct(sign_weighted(e_j, g.rho)));
    }
    return s;
}

Vec exogenous_control(double fhat, double f0_val, const Mat& k_u, const Mat& P,
                      const Vec& e_i, const Mat& a_i, const Mat& a_0, const Vec& x_0,
                      int index, const Vec& d0, const Vec& bf_i, const Vec& bf_0) {
    Vec u = -bf_i * fhat + bf_0 * f0_val;
    u -= k_u * (P * e_i).array().tanh().matrix();
    u -= (a_i - a_0) * x_0;
    u -= static_cast<double>(index) * (a_i * d0);
    return u;
}

double regularized_gain_term(const Vec& b, const Vec& eps_reg_diag, const Vec& u_bar) {
    if ((eps_reg_diag.array() <= 0.0).any())
        throw std::invalid_argument("regularized_gain_term: eps must be positive definite");
    Mat M = b * b.transpose();
    M += Mat(eps_reg_diag.asDiagonal());
    return b.dot(M.ldlt().solve(u_bar));
}

double control_nominal(const SystemMatrices& m, const Mat& P, const ControllerGains& g,
                       const Vec& e_i, const std::vector<Vec>& e_neighbors,
                       std::size_t expected_neighbors, const Vec& u_bar,
                       const Vec& u_hat_d) {
    if (e_neighbors.size() != expected_neighbors)
        throw std::runtime_error("control_nominal: neighbor data missing (protocol error)");
    const ConsensusSums s = consensus_core(P, g, e_i, e_neighbors);
    double u = -0.5 * m.B.dot(P * s.v1);
    u -= 0.5 * m.B.dot(P * s.v2);
    u += m.B.dot(u_hat_d);
    u += regularized_gain_term(m.B, g.eps_reg_diag, u_bar);
    return u;
}

int detect_dos(ControllerState& st, double t, double expected_period, bool packet_arrived,
               double window_factor) {
    if (expected_period <= 0.0)
        throw std::invalid_argument("detect_dos: expected_period must be positive");
    if (packet_arrived) st.last_packet_time = t;
    return (t - st.last_packet_time > window_factor * expected_period) ? 1 : 0;
}

HeldControl capture_hold(ControllerState& st, const HeldControl& last_good) {
    if (st.held)
        throw std::logic_error("capture_hold: double capture without release");
    st.held = last_good;
    st.attack_flag = 1;
    return *st.held;
}

void release_hold(ControllerState& st) {
    st.held.reset();
    st.attack_flag = 0;
}

double control_switched(const ControllerState& st, double live_u, InputMechanism mech) {
    if (st.attack_flag == 0) return live_u;
    if (mech == InputMechanism::zero) return 0.0;
    if (!st.held) throw std::logic_error("control_switched: attack flagged without snapshot");
    return st.held->u_ia_k;
}

std::vector<std::string> validate_gains(const ControllerGains& g, const SystemMatrices& m,
                                        double omega_star, double u_d_star) {
    std::vector<std::string> v;
    if ((g.k_c_diag.array() <= 1.0).any())
        v.push_back("K_C: every diagonal element must exceed 1");
    if (g.rho <= 1.0) v.push_back("rho: must exceed 1");
    if ((g.eps_reg_diag.array() <= 0.0).any())
        v.push_back("eps: regularizer diagonals must be positive");
    const double ku_norm = spectral_norm(g.k_u);
    const double need = m.Bw.norm() * omega_star + u_d_star;
    if (ku_norm < need)
        v.push_back("K_u: ||K_u|| = " + std::to_string(ku_norm) +
                     " below ||B_w||*omega_star + u_d_star = " + std::to_string(need));
    return v;
}

}  // namespace nvsc
