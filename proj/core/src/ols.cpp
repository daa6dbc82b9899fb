#include "svarkit/ols.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "svarkit/error.hpp"

namespace svarkit {

OlsFit ols(const Eigen::MatrixXd& x, const Eigen::MatrixXd& y) {
    if (x.rows() != y.rows()) throw ModelError("regressor/response row mismatch");
    if (x.rows() < x.cols()) {
        throw ModelError("fewer observations (" + std::to_string(x.rows()) + ") than regressors (" +
                         std::to_string(x.cols()) + ")");
    }
    const Eigen::VectorXd norms = x.colwise().norm();
    for (Eigen::Index j = 0; j < norms.size(); ++j) {
        if (!(norms(j) > 0.0)) throw ModelError("singular regressor matrix: zero column " + std::to_string(j));
    }
    const Eigen::MatrixXd scaled = x * norms.cwiseInverse().asDiagonal();
    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(scaled);
    const Eigen::MatrixXd r = qr.matrixR().topLeftCorner(x.cols(), x.cols()).triangularView<Eigen::Upper>();
    const Eigen::VectorXd diag = r.diagonal().cwiseAbs();
    const double cond = diag.minCoeff() > 0.0 ? diag.maxCoeff() / diag.minCoeff()
                                              : std::numeric_limits<double>::infinity();
    if (!(cond <= kSingularCondition)) {
        throw ModelError("singular regressor matrix (condition estimate " + std::to_string(cond) + ")");
    }

    OlsFit fit;
    fit.condition = cond;
    fit.coefficients = norms.cwiseInverse().asDiagonal() * qr.solve(y);
    fit.residuals = y - x * fit.coefficients;

    const Eigen::Index k = x.cols();
    const Eigen::MatrixXd r_inv =
        r.triangularView<Eigen::Upper>().solve(Eigen::MatrixXd::Identity(k, k));
    const Eigen::MatrixXd perm = qr.colsPermutation();
    const Eigen::MatrixXd scaled_inv = perm * (r_inv * r_inv.transpose()) * perm.transpose();
    fit.xtx_inverse = norms.cwiseInverse().asDiagonal() * scaled_inv * norms.cwiseInverse().asDiagonal();
    return fit;
}

std::vector<Eigen::Index> independent_columns(const Eigen::MatrixXd& x, double tolerance) {
    std::vector<Eigen::Index> kept;
    Eigen::MatrixXd basis(x.rows(), 0);
    for (Eigen::Index j = 0; j < x.cols(); ++j) {
        Eigen::VectorXd v = x.col(j);
        const double norm = v.norm();
        if (!(norm > 0.0)) continue;
        // Two Gram-Schmidt passes.
        for (int pass = 0; pass < 2; ++pass) {
            if (basis.cols() > 0) v -= basis * (basis.transpose() * v);
        }
        const double rest = v.norm();
        if (rest <= tolerance * norm) continue;
        basis.conservativeResize(Eigen::NoChange, basis.cols() + 1);
        basis.col(basis.cols() - 1) = v / rest;
        kept.push_back(j);
    }
    return kept;
}

Eigen::MatrixXd ml_covariance(const Eigen::MatrixXd& e) {
    return (e.transpose() * e) / static_cast<double>(e.rows());
}

}  // namespace svarkit
