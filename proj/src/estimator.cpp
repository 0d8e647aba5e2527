#include "nvsc/estimator.hpp"

#include <stdexcept>

namespace nvsc {

NeuralConfig make_neural_config(int neurons, int state_dim, double center_lo,
                                double center_hi, double k_eta, bool literal_activations) {
    if (neurons < 1) throw std::invalid_argument("neural config: need at least one neuron");
    if (state_dim < 1) throw std::invalid_argument("neural config: bad state dimension");
    NeuralConfig cfg;
    cfg.neurons = neurons;
    cfg.state_dim = state_dim;
    cfg.scales = Vec::Ones(neurons);
    if (literal_activations || neurons == 1) {
        cfg.centers = Vec::Zero(neurons);
    } else {
        cfg.centers = Vec::LinSpaced(neurons, center_lo, center_hi);
    }
    cfg.k_eta_diag = Vec::Constant(state_dim, k_eta);
    return cfg;
}

NeuralState make_neural_state(const NeuralConfig& cfg) {
    // Zero initialization: no prior knowledge of the nonlinearity.
    return {Mat::Zero(cfg.state_dim, cfg.neurons), false};
}

Mat activations(const NeuralConfig& cfg, const Vec& x) {
    if (x.size() != cfg.state_dim)
        throw std::invalid_argument("activations: state dimension mismatch");
    Mat phi(cfg.state_dim, cfg.neurons);
    for (int k = 0; k < cfg.neurons; ++k)
        phi.col(k) = ((x.array() - cfg.centers(k)) * cfg.scales(k)).tanh();
    return phi;
}

double estimate(const NeuralState& st, const Mat& phi) {
    if (st.eta_hat.rows() != phi.rows() || st.eta_hat.cols() != phi.cols())
        throw std::invalid_argument("estimate: shape mismatch");
    return st.eta_hat.cwiseProduct(phi).sum();
}

Mat adapt_rate(const NeuralConfig& cfg, const NeuralState& st, const Mat& phi,
               const Vec& error, const Mat& P, const Vec& bf) {
    if ((cfg.k_eta_diag.array() == 0.0).any())
        throw std::invalid_argument("adapt_rate: singular K_eta");
    if (st.frozen) return Mat::Zero(phi.rows(), phi.cols());
    const double scalar = error.dot(P * bf);
    return cfg.k_eta_diag.cwiseInverse().asDiagonal() * phi * scalar;
}

NeuralState adapt_step(const NeuralConfig& cfg, const NeuralState& st, const Mat& phi,
                       const Vec& error, const Mat& P, const Vec& bf, double dt) {
    if (dt <= 0.0) throw std::invalid_argument("adapt_step: dt must be positive");
    if (st.frozen) return st;
    NeuralState out = st;
    out.eta_hat += dt * adapt_rate(cfg, st, phi, error, P, bf);
    return out;
}

std::string check_k_eta_bound(const NeuralConfig& cfg) {
    if (cfg.k_eta_star <= 0.0) return {};
    const double norm = cfg.k_eta_diag.cwiseAbs().maxCoeff();
    if (norm > cfg.k_eta_star)
        return "||K_eta|| = " + std::to_string(norm) + " exceeds K_eta* = " +
               std::to_string(cfg.k_eta_star);
    return {};
}

}  // namespace nvsc
