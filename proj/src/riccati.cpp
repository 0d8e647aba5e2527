#include "nvsc/riccati.hpp"

#include <Eigen/Eigenvalues>

#include <vector>

namespace nvsc {

namespace {

constexpr double kResidualContract = 1e-9;

void check_problem(const RiccatiProblem& prob) {
    const auto n = prob.A.rows();
    if (prob.A.cols() != n || prob.G.rows() != n || prob.G.cols() != n)
        throw std::invalid_argument("riccati: A and G must be square of the same dimension");
    if (prob.psi <= 0.0) throw std::invalid_argument("riccati: psi must be positive");
    const double scale = std::max(1.0, prob.G.cwiseAbs().maxCoeff());
    if ((prob.G - prob.G.transpose()).cwiseAbs().maxCoeff() > 1e-10 * scale)
        throw std::invalid_argument("riccati: G must be symmetric");
    if (min_eigenvalue_sym(0.5 * (prob.G + prob.G.transpose())) < -1e-10 * scale)
        throw std::invalid_argument("riccati: G must be positive semidefinite");
}

// Solve Ac^T P + P Ac = -Q via the Kronecker system
//   (I (x) Ac^T + Ac^T (x) I) vec(P) = vec(-Q).
// Dimensions are tiny (n = 3 in the platoon), dense vectorization is fine.
Mat solve_lyapunov(const Mat& Ac, const Mat& Q) {
    const auto n = Ac.rows();
    const Mat At = Ac.transpose();
    Mat K = Mat::Zero(n * n, n * n);
    for (Eigen::Index c = 0; c < n; ++c) K.block(c * n, c * n, n, n) += At;
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < n; ++j)
            for (Eigen::Index r = 0; r < n; ++r) K(i * n + r, j * n + r) += At(i, j);
    const Eigen::VectorXd rhs = -Eigen::Map<const Eigen::VectorXd>(Q.data(), n * n);
    Eigen::VectorXd vecP = K.partialPivLu().solve(rhs);
    Mat P = Eigen::Map<Mat>(vecP.data(), n, n);
    return 0.5 * (P + P.transpose());
}

}  // namespace

double are_residual(const Mat& P, const RiccatiProblem& prob) {
    const auto n = prob.A.rows();
    if (P.rows() != n || P.cols() != n)
        throw std::invalid_argument("are_residual: dimension mismatch");
    const Mat r = P * prob.A + prob.A.transpose() * P - P * prob.G * P +
                  prob.psi * Mat::Identity(n, n);
    return r.norm();
}

RiccatiSolution solve_are(const RiccatiProblem& prob) {
    check_problem(prob);
    const auto n = prob.A.rows();

    // Hamiltonian H = [A, -G; -psi*I, -A^T]; the stable invariant subspace
    // [U; V] gives P = V U^{-1}.
    Mat H(2 * n, 2 * n);
    H.topLeftCorner(n, n) = prob.A;
    H.topRightCorner(n, n) = -prob.G;
    H.bottomLeftCorner(n, n) = -prob.psi * Mat::Identity(n, n);
    H.bottomRightCorner(n, n) = -prob.A.transpose();

    Eigen::EigenSolver<Mat> es(H);
    if (es.info() != Eigen::Success)
        throw RiccatiError("riccati: Hamiltonian eigendecomposition failed");

    std::vector<Eigen::Index> stable;
    for (Eigen::Index k = 0; k < 2 * n; ++k)
        if (es.eigenvalues()(k).real() < 0.0) stable.push_back(k);
    if (static_cast<Eigen::Index>(stable.size()) != n)
        throw RiccatiError(
            "riccati: no stabilizing solution (Hamiltonian has eigenvalues on "
            "the imaginary axis; check stabilizability of (A, G))");

    Eigen::MatrixXcd U(n, n), V(n, n);
    for (Eigen::Index c = 0; c < n; ++c) {
        U.col(c) = es.eigenvectors().col(stable[c]).head(n);
        V.col(c) = es.eigenvectors().col(stable[c]).tail(n);
    }
    Eigen::PartialPivLU<Eigen::MatrixXcd> lu(U);
    Mat P = (V * lu.inverse()).real();
    P = 0.5 * (P + P.transpose());

    if (!is_hurwitz(prob.A - prob.G * P))
        throw RiccatiError("riccati: subspace solution is not stabilizing");

    // Newton-Kleinman polish: each sweep solves the closed-loop Lyapunov
    // equation, converging quadratically from a stabilizing iterate.
    Mat best = P;
    double best_res = are_residual(P, prob);
    for (int it = 0; it < 25 && best_res > 1e-14; ++it) {
        const Mat Ac = prob.A - prob.G * P;
        const Mat Q = prob.psi * Mat::Identity(n, n) + P * prob.G * P;
        const Mat Pn = solve_lyapunov(Ac, Q);
        if (!Pn.allFinite()) break;
        const double res = are_residual(Pn, prob);
        P = Pn;
        if (res < best_res) {
            best_res = res;
            best = Pn;
        } else {
            break;  // stagnated at roundoff
        }
    }

    if (best_res > kResidualContract)
        throw RiccatiError("riccati: residual " + std::to_string(best_res) +
                           " exceeds the 1e-9 contract");
    if (min_eigenvalue_sym(best) <= 0.0)
        throw RiccatiError("riccati: solution is not positive definite");
    if (!is_hurwitz(prob.A - prob.G * best))
        throw RiccatiError("riccati: refined solution is not stabilizing");
    return {best, best_res};
}

}  // namespace nvsc
