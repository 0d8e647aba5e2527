#include "nvsc/observer.hpp"

#include <stdexcept>

namespace nvsc {

Vec virtual_disturbance(const Vec& k_o_diag, const Mat& P, const Vec& e_o) {
    if (e_o.size() != P.rows() || k_o_diag.size() != e_o.size())
        throw std::invalid_argument("virtual_disturbance: shape mismatch");
    return -k_o_diag.cwiseProduct((P * e_o).array().tanh().matrix());
}

GainConditionReport check_gain_condition(const ObserverState& st, double sigma_d_star,
                                         double eta_star) {
    if (st.xi <= 1.0) throw std::invalid_argument("observer: xi must exceed 1");
    if (sigma_d_star <= 0.0 || eta_star <= 0.0)
        throw std::invalid_argument("observer: bound constants must be positive");
    const double need = st.xi * (sigma_d_star + 2.0 * eta_star);
    const double have = st.k_o_diag.cwiseAbs().minCoeff();
    return {have > need, have - need};
}

Vec observer_derivative(const SystemMatrices& m, const Mat& P, const Vec& x_hat,
                        const Vec& v1, const Vec& v2, const Vec& u_bar,
                        const Vec& u_hat_d, double fhat_at_xhat) {
    const auto n = m.A.rows();
    if (x_hat.size() != n || v1.size() != n || v2.size() != n || u_bar.size() != n ||
        u_hat_d.size() != n)
        throw std::invalid_argument("observer_derivative: dimension mismatch");
    Vec d = m.A * x_hat;
    d -= 0.5 * m.B * m.B.dot(P * (v1 + v2));
    d += m.B * m.B.dot(u_hat_d);
    d += u_bar - u_hat_d;
    d += m.Bf * fhat_at_xhat;
    return d;
}

}  // namespace nvsc
