#pragma once

#include <span>
#include <vector>

#include <Eigen/Dense>

#include "svarkit/svar.hpp"
#include "svarkit/var.hpp"

namespace svarkit {

struct NormalityComponent {
    double skewness = 0.0;
    double kurtosis = 0.0;
    double statistic = 0.0;  // T (S^2/6 + (K-3)^2/24), chi-square(2)
    double p_value = 1.0;
};

struct NormalityBlock {
    std::vector<NormalityComponent> components;
    double joint_statistic = 0.0;  // sum of components, chi-square(2K)
    int joint_df = 0;
    double joint_p_value = 1.0;
};

/// Jarque-Bera on each column of already-orthogonalized residuals using ML
/// moments about the column mean.
NormalityBlock jarque_bera(const Eigen::MatrixXd& orthogonalized);

/// Jarque-Bera after structural orthogonalization v_t = B^-1 e_t.
NormalityBlock jarque_bera(const StructuralModel& sm, const VarModel& m);

struct WhiteBlock {
    /// System LM statistic T (M - tr(Omega_r^-1 Omega_u)) over the M = K(K+1)/2
    /// residual cross-products; equals T * sum(R^2) when the cross-products
    /// are uncorrelated.
    double statistic = 0.0;
    int df = 0;
    double p_value = 1.0;
    double sum_r_squared_statistic = 0.0;  // T * sum of per-equation R^2
    std::vector<double> r_squared;         // per cross-product e_i e_j, i <= j
    int auxiliary_regressors = 0;          // including the constant, after drops
    std::vector<int> dropped_columns;      // indices into [x, x^2] that were collinear
};

/// White test without cross terms. `regressors` excludes the constant; the
/// auxiliary design is [1, regressors, regressors^2].
WhiteBlock white_test(const Eigen::MatrixXd& residuals, const Eigen::MatrixXd& regressors);
WhiteBlock white_test(const VarModel& m);

struct LmEntry {
    int lag = 0;
    double statistic = 0.0;  // chi-square(K^2)
    int df = 0;
    double p_value = 1.0;
};

/// T (K - tr(Sigma_hat^-1 Sigma_tilde)).
double lm_statistic(const Eigen::MatrixXd& sigma_restricted, const Eigen::MatrixXd& sigma_augmented, int t_eff);

/// Breusch-Godfrey style test: residuals regressed on `regressors` (which
/// include the constant) plus the residuals lagged `h`, pre-sample zero.
LmEntry lm_autocorrelation(const Eigen::MatrixXd& residuals, const Eigen::MatrixXd& regressors, int h);
LmEntry lm_autocorrelation(const VarModel& m, int h);

struct DiagnosticsReport {
    NormalityBlock jb;
    WhiteBlock white;
    std::vector<LmEntry> lm;
};

DiagnosticsReport diagnose(const StructuralModel& sm, const VarModel& m, std::span<const int> lm_lags);

}  // namespace svarkit
