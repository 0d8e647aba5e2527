#include "nvsc/numeric.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

namespace nvsc {

double spectral_norm(const Mat& m) {
    if (m.size() == 0) return 0.0;
    Eigen::JacobiSVD<Mat> svd(m);
    return svd.singularValues()(0);
}

bool is_hurwitz(const Mat& m, double tol) {
    Eigen::EigenSolver<Mat> es(m, /*computeEigenvectors=*/false);
    return (es.eigenvalues().real().array() < -tol).all();
}

double min_eigenvalue_sym(const Mat& m) {
    Eigen::SelfAdjointEigenSolver<Mat> es(m, Eigen::EigenvaluesOnly);
    return es.eigenvalues().minCoeff();
}

}  // namespace nvsc
