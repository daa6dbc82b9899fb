#include "svarkit/diagnostics.hpp"

#include <cmath>
#include <string>

#include "svarkit/distributions.hpp"
#include "svarkit/error.hpp"
#include "svarkit/ols.hpp"

namespace svarkit {

NormalityBlock jarque_bera(const Eigen::MatrixXd& v) {
    const double n = static_cast<double>(v.rows());
    NormalityBlock out;
    for (Eigen::Index j = 0; j < v.cols(); ++j) {
        const Eigen::ArrayXd c = v.col(j).array() - v.col(j).mean();
        const double m2 = c.square().sum() / n;
        if (!(m2 > 0.0)) throw ModelError("zero-variance residual component " + std::to_string(j));
        const double m3 = c.cube().sum() / n;
        const double m4 = c.square().square().sum() / n;
        NormalityComponent comp;
        comp.skewness = m3 / std::pow(m2, 1.5);
        comp.kurtosis = m4 / (m2 * m2);
        comp.statistic = n * (comp.skewness * comp.skewness / 6.0 +
                              (comp.kurtosis - 3.0) * (comp.kurtosis - 3.0) / 24.0);
        comp.p_value = chi_square_sf(comp.statistic, 2.0);
        out.joint_statistic += comp.statistic;
        out.components.push_back(comp);
    }
    out.joint_df = static_cast<int>(2 * v.cols());
    out.joint_p_value = chi_square_sf(out.joint_statistic, out.joint_df);
    return out;
}

NormalityBlock jarque_bera(const StructuralModel& sm, const VarModel& m) {
    Eigen::FullPivLU<Eigen::MatrixXd> lu(sm.impact);
    if (!lu.isInvertible()) throw ModelError("impact matrix B is singular");
    return jarque_bera(Eigen::MatrixXd(lu.solve(m.residuals.transpose()).transpose()));
}

WhiteBlock white_test(const Eigen::MatrixXd& residuals, const Eigen::MatrixXd& regressors) {
    const Eigen::Index n = residuals.rows();
    const Eigen::Index k = residuals.cols();
    const Eigen::Index r = regressors.cols();
    if (regressors.rows() != n) throw DataError("residual/regressor row mismatch");

    Eigen::MatrixXd candidates(n, 2 * r);
    candidates << regressors, regressors.array().square().matrix();
    Eigen::MatrixXd with_const(n, 1 + 2 * r);
    with_const << Eigen::VectorXd::Ones(n), candidates;
    const auto kept = independent_columns(with_const);

    WhiteBlock out;
    std::vector<bool> keep(static_cast<std::size_t>(1 + 2 * r), false);
    for (auto c : kept) keep[static_cast<std::size_t>(c)] = true;
    if (!keep[0]) throw ModelError("White auxiliary regression lost its constant");
    for (Eigen::Index c = 1; c < 1 + 2 * r; ++c) {
        if (!keep[static_cast<std::size_t>(c)]) out.dropped_columns.push_back(static_cast<int>(c - 1));
    }
    Eigen::MatrixXd z(n, static_cast<Eigen::Index>(kept.size()));
    for (std::size_t i = 0; i < kept.size(); ++i) z.col(static_cast<Eigen::Index>(i)) = with_const.col(kept[i]);
    out.auxiliary_regressors = static_cast<int>(z.cols());

    const Eigen::Index m = k * (k + 1) / 2;
    Eigen::MatrixXd psi(n, m);
    Eigen::Index col = 0;
    for (Eigen::Index i = 0; i < k; ++i) {
        for (Eigen::Index j = i; j < k; ++j) psi.col(col++) = residuals.col(i).cwiseProduct(residuals.col(j));
    }

    const OlsFit fit = ols(z, psi);
    const Eigen::MatrixXd centered = psi.rowwise() - psi.colwise().mean();
    const Eigen::MatrixXd omega_r = ml_covariance(centered);
    const Eigen::MatrixXd omega_u = ml_covariance(fit.residuals);
    for (Eigen::Index c = 0; c < m; ++c) {
        const double tss = centered.col(c).squaredNorm();
        const double r2 = tss > 0.0 ? 1.0 - fit.residuals.col(c).squaredNorm() / tss : 0.0;
        out.r_squared.push_back(r2);
        out.sum_r_squared_statistic += static_cast<double>(n) * r2;
    }
    Eigen::LDLT<Eigen::MatrixXd> ldlt(omega_r);
    if (ldlt.info() != Eigen::Success || !(ldlt.vectorD().minCoeff() > 0.0)) {
        throw ModelError("residual cross-products have a singular covariance");
    }
    out.statistic = static_cast<double>(n) * (static_cast<double>(m) - ldlt.solve(omega_u).trace());
    out.df = static_cast<int>(m * (z.cols() - 1));
    out.p_value = chi_square_sf(out.statistic, out.df);
    return out;
}

WhiteBlock white_test(const VarModel& m) {
    return white_test(m.residuals, m.regressors.rightCols(m.regressors.cols() - 1));
}

double lm_statistic(const Eigen::MatrixXd& sigma_restricted, const Eigen::MatrixXd& sigma_augmented, int t_eff) {
    Eigen::LDLT<Eigen::MatrixXd> ldlt(sigma_restricted);
    if (ldlt.info() != Eigen::Success || !(ldlt.vectorD().minCoeff() > 0.0)) {
        throw ModelError("singular residual covariance in LM test");
    }
    const double k = static_cast<double>(sigma_restricted.rows());
    return static_cast<double>(t_eff) * (k - ldlt.solve(sigma_augmented).trace());
}

LmEntry lm_autocorrelation(const Eigen::MatrixXd& residuals, const Eigen::MatrixXd& regressors, int h) {
    const Eigen::Index n = residuals.rows();
    const Eigen::Index k = residuals.cols();
    if (h < 1) throw DataError("LM test lag must be at least 1");
    if (n - h < regressors.cols() + k + 1) {
        throw DataError("sample too short for LM test at lag " + std::to_string(h));
    }
    Eigen::MatrixXd aux(n, regressors.cols() + k);
    aux.leftCols(regressors.cols()) = regressors;
    aux.rightCols(k).setZero();
    aux.bottomRightCorner(n - h, k) = residuals.topRows(n - h);
    const OlsFit fit = ols(aux, residuals);

    LmEntry out;
    out.lag = h;
    out.statistic = lm_statistic(ml_covariance(residuals), ml_covariance(fit.residuals), static_cast<int>(n));
    out.df = static_cast<int>(k * k);
    out.p_value = chi_square_sf(out.statistic, out.df);
    return out;
}

LmEntry lm_autocorrelation(const VarModel& m, int h) { return lm_autocorrelation(m.residuals, m.regressors, h); }

DiagnosticsReport diagnose(const StructuralModel& sm, const VarModel& m, std::span<const int> lm_lags) {
    DiagnosticsReport rep;
    rep.jb = jarque_bera(sm, m);
    rep.white = white_test(m);
    for (int h : lm_lags) rep.lm.push_back(lm_autocorrelation(m, h));
    return rep;
}

}  // namespace svarkit
