#pragma once

// Reference computations that deliberately avoid the library's code paths:
// plain nested vectors, normal equations solved by Gauss-Jordan elimination,
// and direct simulation of difference equations.

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

#include <Eigen/Dense>

#include "svarkit/rng.hpp"

namespace svarkit::testing {

using Mat = std::vector<std::vector<double>>;

inline std::vector<double> solve_gauss_jordan(Mat a, std::vector<double> b) {
    const std::size_t n = b.size();
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t piv = c;
        for (std::size_t r = c + 1; r < n; ++r) {
            if (std::fabs(a[r][c]) > std::fabs(a[piv][c])) piv = r;
        }
        std::swap(a[c], a[piv]);
        std::swap(b[c], b[piv]);
        if (a[c][c] == 0.0) throw std::runtime_error("singular");
        for (std::size_t r = 0; r < n; ++r) {
            if (r == c) continue;
            const double f = a[r][c] / a[c][c];
            for (std::size_t k = c; k < n; ++k) a[r][k] -= f * a[c][k];
            b[r] -= f * b[c];
        }
    }
    for (std::size_t i = 0; i < n; ++i) b[i] /= a[i][i];
    return b;
}

struct NaiveOls {
    std::vector<double> beta;
    std::vector<double> residuals;
    double ssr = 0.0;
    Mat xtx;
};

/// Rows of `x` are observations.
inline NaiveOls naive_ols(const Mat& x, const std::vector<double>& y) {
    const std::size_t n = x.size();
    const std::size_t k = x.front().size();
    Mat xtx(k, std::vector<double>(k, 0.0));
    std::vector<double> xty(k, 0.0);
    for (std::size_t t = 0; t < n; ++t) {
        for (std::size_t i = 0; i < k; ++i) {
            xty[i] += x[t][i] * y[t];
            for (std::size_t j = 0; j < k; ++j) xtx[i][j] += x[t][i] * x[t][j];
        }
    }
    NaiveOls out;
    out.beta = solve_gauss_jordan(xtx, xty);
    out.xtx = xtx;
    for (std::size_t t = 0; t < n; ++t) {
        double fit = 0.0;
        for (std::size_t i = 0; i < k; ++i) fit += x[t][i] * out.beta[i];
        out.residuals.push_back(y[t] - fit);
        out.ssr += (y[t] - fit) * (y[t] - fit);
    }
    return out;
}

/// (X'X)^-1 column `j`, via one more elimination.
inline std::vector<double> inverse_column(const Mat& xtx, std::size_t j) {
    std::vector<double> e(xtx.size(), 0.0);
    e[j] = 1.0;
    return solve_gauss_jordan(xtx, e);
}

/// Response of y_{t+h}, h = 0..horizon-1, to y_0 = impact * e_shock with all
/// other inputs zero, by running the difference equation forward.
inline std::vector<Eigen::VectorXd> propagate_impulse(const std::vector<Eigen::MatrixXd>& lags,
                                                      const Eigen::MatrixXd& impact, int shock, int horizon) {
    const Eigen::Index k = impact.rows();
    std::vector<Eigen::VectorXd> path;
    for (int h = 0; h < horizon; ++h) {
        Eigen::VectorXd y = Eigen::VectorXd::Zero(k);
        if (h == 0) y = impact.col(shock);
        for (std::size_t i = 1; i <= lags.size(); ++i) {
            if (h - static_cast<int>(i) >= 0) y += lags[i - 1] * path[static_cast<std::size_t>(h) - i];
        }
        path.push_back(y);
    }
    return path;
}

/// Simulates y_t = c + sum A_i y_{t-i} + chol * z_t with standard normal z.
/// `scale(t)` multiplies the innovation at observation t (heteroskedasticity).
template <class Scale>
Eigen::MatrixXd simulate_var(const std::vector<Eigen::MatrixXd>& lags, const Eigen::MatrixXd& chol,
                             const Eigen::VectorXd& c, int length, std::uint64_t seed, Scale scale,
                             int burn_in = 200) {
    svarkit::Rng rng(seed);
    const Eigen::Index k = chol.rows();
    const int p = static_cast<int>(lags.size());
    const int total = burn_in + length;
    Eigen::MatrixXd y = Eigen::MatrixXd::Zero(total + p, k);
    for (int t = 0; t < total; ++t) {
        Eigen::VectorXd z(k);
        for (Eigen::Index j = 0; j < k; ++j) z(j) = rng.normal();
        const double s = t >= burn_in ? scale(t - burn_in) : 1.0;
        Eigen::VectorXd v = c + s * (chol * z);
        for (int i = 1; i <= p; ++i) v += lags[static_cast<std::size_t>(i - 1)] * y.row(t + p - i).transpose();
        y.row(t + p) = v.transpose();
    }
    return y.bottomRows(length);
}

inline Eigen::MatrixXd simulate_var(const std::vector<Eigen::MatrixXd>& lags, const Eigen::MatrixXd& chol,
                                    const Eigen::VectorXd& c, int length, std::uint64_t seed) {
    return simulate_var(lags, chol, c, length, seed, [](int) { return 1.0; });
}

inline Eigen::MatrixXd mat2(double a, double b, double c, double d) {
    Eigen::MatrixXd m(2, 2);
    m << a, b, c, d;
    return m;
}

}  // namespace svarkit::testing
