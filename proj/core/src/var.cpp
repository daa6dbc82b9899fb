#include "svarkit/var.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <string>

#include <Eigen/Eigenvalues>

#include "svarkit/distributions.hpp"
#include "svarkit/error.hpp"
#include "svarkit/ols.hpp"

namespace svarkit {

namespace {

constexpr int kMinSpareObs = 5;

void require_observations(long t_eff, int k, int p) {
    if (t_eff < static_cast<long>(k) * p + 1 + kMinSpareObs) {
        throw DataError("insufficient observations for VAR(" + std::to_string(p) + "): " +
                        std::to_string(t_eff) + " effective, need " +
                        std::to_string(static_cast<long>(k) * p + 1 + kMinSpareObs));
    }
}

Eigen::MatrixXd design(const Eigen::MatrixXd& data, int p, int first_row) {
    const Eigen::Index k = data.cols();
    const Eigen::Index rows = data.rows() - first_row;
    Eigen::MatrixXd x(rows, 1 + k * p);
    for (Eigen::Index r = 0; r < rows; ++r) {
        const Eigen::Index t = first_row + r;
        x(r, 0) = 1.0;
        for (int i = 1; i <= p; ++i) x.block(r, 1 + (i - 1) * k, 1, k) = data.row(t - i);
    }
    return x;
}

double log_det(const Eigen::MatrixXd& sigma) {
    Eigen::LLT<Eigen::MatrixXd> llt(sigma);
    if (llt.info() != Eigen::Success) throw ModelError("residual covariance is not positive definite");
    return 2.0 * llt.matrixL().toDenseMatrix().diagonal().array().log().sum();
}

int argmin_lag(const std::vector<LagCriteriaRow>& rows, double LagCriteriaRow::*field) {
    int best = rows.front().lag;
    double value = rows.front().*field;
    for (const auto& r : rows) {
        if (r.*field < value) {
            value = r.*field;
            best = r.lag;
        }
    }
    return best;
}

}  // namespace

Eigen::MatrixXd VarModel::coefficient_matrix() const {
    Eigen::MatrixXd c(1 + k * p, k);
    c.row(0) = intercept.transpose();
    for (int i = 0; i < p; ++i) c.block(1 + i * k, 0, k, k) = lag_coeffs[static_cast<std::size_t>(i)].transpose();
    return c;
}

VarModel fit_var_window(const Eigen::MatrixXd& data, int p, int first_row, QuarterIndex start,
                        std::vector<std::string> labels) {
    if (p < 1) throw DataError("VAR lag order must be at least 1");
    if (first_row < p) throw DataError("estimation window starts before the lags are available");
    const int k = static_cast<int>(data.cols());
    if (k < 1) throw DataError("VAR needs at least one variable");
    const long t_eff = static_cast<long>(data.rows()) - first_row;
    require_observations(t_eff, k, p);

    VarModel m;
    m.k = k;
    m.p = p;
    m.t_eff = static_cast<int>(t_eff);
    m.regressors = design(data, p, first_row);
    m.response = data.bottomRows(t_eff);
    const OlsFit fit = ols(m.regressors, m.response);
    m.xtx_inverse = fit.xtx_inverse;
    m.residuals = fit.residuals;
    m.intercept = fit.coefficients.row(0).transpose();
    for (int i = 0; i < p; ++i) m.lag_coeffs.push_back(fit.coefficients.block(1 + i * k, 0, k, k).transpose());

    const Eigen::MatrixXd cross = m.residuals.transpose() * m.residuals;
    m.sigma_ml = cross / static_cast<double>(t_eff);
    const long dof = t_eff - (static_cast<long>(k) * p + 1);
    m.sigma_df_adjusted = cross / static_cast<double>(dof);
    m.residual_start = start.advanced(first_row);
    if (labels.empty()) {
        for (int j = 0; j < k; ++j) labels.push_back("y" + std::to_string(j + 1));
    }
    m.labels = std::move(labels);
    return m;
}

VarModel fit_var(const Eigen::MatrixXd& data, int p, QuarterIndex start, std::vector<std::string> labels) {
    return fit_var_window(data, p, p, start, std::move(labels));
}

Eigen::MatrixXd stack_series(std::span<const QuarterlySeries> data) {
    if (data.empty()) throw DataError("no series supplied");
    const auto& first = data.front();
    for (const auto& s : data) {
        if (s.start() != first.start() || s.size() != first.size()) {
            throw DataError("series '" + s.label() + "' (" + s.start().label() + ", " + std::to_string(s.size()) +
                            " obs) is not aligned with '" + first.label() + "' (" + first.start().label() + ", " +
                            std::to_string(first.size()) + " obs)");
        }
    }
    Eigen::MatrixXd out(static_cast<Eigen::Index>(first.size()), static_cast<Eigen::Index>(data.size()));
    for (std::size_t j = 0; j < data.size(); ++j) {
        for (std::size_t t = 0; t < first.size(); ++t) {
            out(static_cast<Eigen::Index>(t), static_cast<Eigen::Index>(j)) = data[j][t];
        }
    }
    return out;
}

VarModel fit_var(std::span<const QuarterlySeries> data, int p) {
    std::vector<std::string> labels;
    for (const auto& s : data) labels.push_back(s.label());
    return fit_var(stack_series(data), p, data.front().start(), std::move(labels));
}

LagExclusion lag_exclusion_test(const VarModel& m, int lag) {
    if (lag < 1 || lag > m.p) {
        throw DataError("lag " + std::to_string(lag) + " outside 1.." + std::to_string(m.p));
    }
    const int k = m.k;
    const Eigen::Index offset = 1 + static_cast<Eigen::Index>(lag - 1) * k;
    // b(j, i): coefficient on variable j at this lag in equation i.
    const Eigen::MatrixXd b = m.coefficient_matrix().block(offset, 0, k, k);
    const Eigen::MatrixXd v = m.xtx_inverse.block(offset, offset, k, k);
    const Eigen::LDLT<Eigen::MatrixXd> v_ldlt(v);
    const Eigen::MatrixXd vinv_b = v_ldlt.solve(b);
    const Eigen::MatrixXd sigma_inv = m.sigma_df_adjusted.ldlt().solve(Eigen::MatrixXd::Identity(k, k));

    LagExclusion out;
    out.lag = lag;
    out.equation_df = k;
    out.joint_df = k * k;
    for (int i = 0; i < k; ++i) {
        const double w = b.col(i).dot(vinv_b.col(i)) / m.sigma_df_adjusted(i, i);
        out.equation_statistic.push_back(w);
        out.equation_p_value.push_back(chi_square_sf(w, k));
    }
    out.joint_statistic = (sigma_inv * b.transpose() * vinv_b).trace();
    out.joint_p_value = chi_square_sf(out.joint_statistic, k * k);
    return out;
}

LagSelectionReport select_lag(const Eigen::MatrixXd& data, int max_lag) {
    if (max_lag < 1) throw DataError("max lag must be at least 1");
    const int k = static_cast<int>(data.cols());
    const long t_star = static_cast<long>(data.rows()) - max_lag;
    if (t_star < static_cast<long>(k) * max_lag + 1 + kMinSpareObs) {
        throw DataError("max lag " + std::to_string(max_lag) + " too large for " + std::to_string(data.rows()) +
                        " observations");
    }
    const double n = static_cast<double>(t_star);
    const double lr_crit = chi_square_quantile(0.95, static_cast<double>(k) * k);

    LagSelectionReport rep;
    rep.max_lag = max_lag;
    rep.common_sample = static_cast<int>(t_star);

    // Lag 0 on the common sample: intercept-only, residuals are demeaned data.
    const Eigen::MatrixXd y0 = data.bottomRows(t_star);
    const Eigen::MatrixXd e0 = y0.rowwise() - y0.colwise().mean();
    double prev_log_det = log_det(ml_covariance(e0));

    for (int p = 1; p <= max_lag; ++p) {
        const VarModel m = fit_var_window(data, p, max_lag);
        LagCriteriaRow row;
        row.lag = p;
        row.log_det_sigma = log_det(m.sigma_ml);
        const double q = static_cast<double>(k) * p + 1.0;
        const double params = q * k;
        row.aic = row.log_det_sigma + 2.0 * params / n;
        row.sc = row.log_det_sigma + params * std::log(n) / n;
        row.hq = row.log_det_sigma + 2.0 * params * std::log(std::log(n)) / n;
        row.fpe = std::pow((n + q) / (n - q), k) * std::exp(row.log_det_sigma);
        row.lr = (n - q) * (prev_log_det - row.log_det_sigma);
        row.lr_p_value = chi_square_sf(row.lr, static_cast<double>(k) * k);
        row.lr_reject = row.lr > lr_crit;
        prev_log_det = row.log_det_sigma;
        rep.rows.push_back(row);
    }

    rep.lr_choice = 1;
    for (const auto& r : rep.rows) {
        if (r.lr_reject) rep.lr_choice = r.lag;
    }
    rep.fpe_choice = argmin_lag(rep.rows, &LagCriteriaRow::fpe);
    rep.aic_choice = argmin_lag(rep.rows, &LagCriteriaRow::aic);
    rep.sc_choice = argmin_lag(rep.rows, &LagCriteriaRow::sc);
    rep.hq_choice = argmin_lag(rep.rows, &LagCriteriaRow::hq);

    std::vector<int> votes(static_cast<std::size_t>(max_lag) + 1, 0);
    for (int c : {rep.lr_choice, rep.fpe_choice, rep.aic_choice, rep.sc_choice, rep.hq_choice}) {
        ++votes[static_cast<std::size_t>(c)];
    }
    // Strict comparison keeps the smaller lag on ties.
    rep.modal_choice = 1;
    for (int p = 1; p <= max_lag; ++p) {
        if (votes[static_cast<std::size_t>(p)] > votes[static_cast<std::size_t>(rep.modal_choice)]) rep.modal_choice = p;
    }

    const VarModel chosen = fit_var(data, rep.modal_choice);
    for (int l = 1; l <= rep.modal_choice; ++l) rep.exclusion.push_back(lag_exclusion_test(chosen, l));
    return rep;
}

LagSelectionReport select_lag(std::span<const QuarterlySeries> data, int max_lag) {
    return select_lag(stack_series(data), max_lag);
}

Eigen::MatrixXd companion_matrix(const std::vector<Eigen::MatrixXd>& lag_coeffs) {
    if (lag_coeffs.empty()) throw DataError("no lag coefficients");
    const auto k = lag_coeffs.front().rows();
    const auto p = static_cast<Eigen::Index>(lag_coeffs.size());
    const auto kp = k * p;
    Eigen::MatrixXd c = Eigen::MatrixXd::Zero(kp, kp);
    for (Eigen::Index i = 0; i < p; ++i) c.block(0, i * k, k, k) = lag_coeffs[static_cast<std::size_t>(i)];
    if (p > 1) c.block(k, 0, kp - k, kp - k).setIdentity();
    return c;
}

Eigen::MatrixXd companion_matrix(const VarModel& m) { return companion_matrix(m.lag_coeffs); }

std::vector<double> companion_moduli(const std::vector<Eigen::MatrixXd>& lag_coeffs) {
    Eigen::EigenSolver<Eigen::MatrixXd> solver(companion_matrix(lag_coeffs), /*computeEigenvectors=*/false);
    if (solver.info() != Eigen::Success) throw ModelError("eigenvalue computation failed");
    std::vector<double> moduli;
    for (Eigen::Index i = 0; i < solver.eigenvalues().size(); ++i) moduli.push_back(std::abs(solver.eigenvalues()(i)));
    std::sort(moduli.begin(), moduli.end(), std::greater<>());
    return moduli;
}

StabilityReport check_stability(const VarModel& m) {
    StabilityReport rep;
    rep.moduli = companion_moduli(m.lag_coeffs);
    rep.stable = rep.moduli.empty() || rep.moduli.front() < 1.0;
    return rep;
}

}  // namespace svarkit
