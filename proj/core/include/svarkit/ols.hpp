#pragma once

#include <vector>

#include <Eigen/Dense>

namespace svarkit {

/// Regressors whose relative condition estimate exceeds this are treated as singular.
inline constexpr double kSingularCondition = 1e12;

struct OlsFit {
    Eigen::MatrixXd coefficients;  // regressors x responses
    Eigen::MatrixXd residuals;     // observations x responses
    Eigen::MatrixXd xtx_inverse;   // (X'X)^-1
    double condition = 0.0;        // after unit-norm column scaling
};

/// Multi-response least squares via column-pivoted Householder QR on the
/// column-equilibrated regressor matrix. Throws ModelError when the
/// condition estimate exceeds kSingularCondition or a column is all zero.
OlsFit ols(const Eigen::MatrixXd& x, const Eigen::MatrixXd& y);

/// Greedy left-to-right selection of linearly independent columns. A column
/// is dropped when its component orthogonal to the kept columns is below
/// `tolerance` relative to its own norm.
std::vector<Eigen::Index> independent_columns(const Eigen::MatrixXd& x, double tolerance = 1e-10);

/// ML (divisor n) cross-product covariance of the columns of `e`, no demeaning.
Eigen::MatrixXd ml_covariance(const Eigen::MatrixXd& e);

}  // namespace svarkit
