#pragma once

#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "svarkit/series.hpp"

namespace svarkit {

/// Reduced-form VAR(p) estimated by equation-wise OLS on [1, y_{t-1}, ..., y_{t-p}].
struct VarModel {
    int k = 0;  // variables
    int p = 0;  // lag order
    Eigen::VectorXd intercept;
    std::vector<Eigen::MatrixXd> lag_coeffs;  // A_1..A_p, each K x K
    Eigen::MatrixXd residuals;                // T_eff x K
    Eigen::MatrixXd sigma_df_adjusted;        // divisor T_eff - (K p + 1)
    Eigen::MatrixXd sigma_ml;                 // divisor T_eff
    int t_eff = 0;

    // Kept for residual diagnostics: the design matrix (T_eff x (1 + K p),
    // constant first, then y_{t-1} block, y_{t-2} block, ...), the response
    // matrix, and (X'X)^-1.
    Eigen::MatrixXd regressors;
    Eigen::MatrixXd response;
    Eigen::MatrixXd xtx_inverse;

    QuarterIndex residual_start;  // quarter of the first residual row
    std::vector<std::string> labels;

    [[nodiscard]] int params_per_equation() const { return k * p + 1; }
    /// Coefficients as a (1 + K p) x K matrix matching `regressors`.
    [[nodiscard]] Eigen::MatrixXd coefficient_matrix() const;
};

/// Fits on a T x K data matrix whose first row is quarter `start`.
VarModel fit_var(const Eigen::MatrixXd& data, int p, QuarterIndex start = {2000, 1},
                 std::vector<std::string> labels = {});

/// Fits on aligned series (same start, same length).
VarModel fit_var(std::span<const QuarterlySeries> data, int p);

/// Fits using only responses from row `first_row` on (first_row >= p), so
/// models of different order can share one estimation sample.
VarModel fit_var_window(const Eigen::MatrixXd& data, int p, int first_row, QuarterIndex start = {2000, 1},
                        std::vector<std::string> labels = {});

/// Stacks aligned series into a T x K matrix. Throws DataError on misalignment.
Eigen::MatrixXd stack_series(std::span<const QuarterlySeries> data);

struct LagExclusion {
    int lag = 0;
    std::vector<double> equation_statistic;  // chi-square(K) each
    std::vector<double> equation_p_value;
    double joint_statistic = 0.0;  // chi-square(K^2)
    double joint_p_value = 1.0;
    int equation_df = 0;
    int joint_df = 0;
};

/// Wald test that every coefficient on y_{t-lag} is zero, using the
/// df-adjusted residual covariance.
LagExclusion lag_exclusion_test(const VarModel& m, int lag);

struct LagCriteriaRow {
    int lag = 0;
    double log_det_sigma = 0.0;  // log |Sigma_ml| on the common sample
    double lr = 0.0;             // sequential modified LR vs lag - 1
    double lr_p_value = 1.0;
    bool lr_reject = false;
    double fpe = 0.0;
    double aic = 0.0;
    double sc = 0.0;
    double hq = 0.0;
};

struct LagSelectionReport {
    int max_lag = 0;
    int common_sample = 0;  // T*
    std::vector<LagCriteriaRow> rows;  // lags 1..max_lag
    int lr_choice = 1;
    int fpe_choice = 1;
    int aic_choice = 1;
    int sc_choice = 1;
    int hq_choice = 1;
    int modal_choice = 1;
    /// Exclusion tests for lags 1..modal_choice of the modal-order model
    /// fitted on the full sample.
    std::vector<LagExclusion> exclusion;
};

/// Compares lags 1..max_lag on the common sample that the max_lag model uses.
LagSelectionReport select_lag(const Eigen::MatrixXd& data, int max_lag);
LagSelectionReport select_lag(std::span<const QuarterlySeries> data, int max_lag);

struct StabilityReport {
    std::vector<double> moduli;  // companion eigenvalue moduli, descending
    bool stable = false;         // max modulus < 1
};

/// (K p) x (K p) companion matrix of the lag coefficients.
Eigen::MatrixXd companion_matrix(const std::vector<Eigen::MatrixXd>& lag_coeffs);
Eigen::MatrixXd companion_matrix(const VarModel& m);
/// Companion eigenvalue moduli, descending.
std::vector<double> companion_moduli(const std::vector<Eigen::MatrixXd>& lag_coeffs);
StabilityReport check_stability(const VarModel& m);

}  // namespace svarkit
