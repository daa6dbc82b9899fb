#include "svarkit/svar.hpp"

#include <cmath>
#include <string>

#include <Eigen/Eigenvalues>

#include "svarkit/error.hpp"

namespace svarkit {

namespace {

constexpr double kStabilityMargin = 1e-8;
constexpr double kMaxCovarianceCondition = 1e12;

void apply_flips(StructuralModel& sm, const IdentifyOptions& options) {
    if (options.flip_demand) {
        sm.impact.col(0) *= -1.0;
        sm.long_run.col(0) *= -1.0;
    }
    if (options.flip_supply) {
        sm.impact.col(1) *= -1.0;
        sm.long_run.col(1) *= -1.0;
    }
    sm.sign_convention = {options.flip_demand, options.flip_supply};
}

}  // namespace

std::string SignConvention::describe() const {
    std::string out = "cholesky-positive long run";
    if (demand_flipped) out += "; demand column flipped";
    if (supply_flipped) out += "; supply column flipped";
    return out;
}

Eigen::MatrixXd long_run_multiplier(const VarModel& m) {
    Eigen::MatrixXd lag_sum = Eigen::MatrixXd::Zero(m.k, m.k);
    for (const auto& a : m.lag_coeffs) lag_sum += a;
    const Eigen::MatrixXd base = Eigen::MatrixXd::Identity(m.k, m.k) - lag_sum;
    Eigen::FullPivLU<Eigen::MatrixXd> lu(base);
    if (!lu.isInvertible()) throw ModelError("I - sum(A_i) is singular; long-run multiplier undefined");
    return lu.inverse();
}

StructuralModel factor_long_run(const Eigen::MatrixXd& multiplier, const Eigen::MatrixXd& sigma,
                                const IdentifyOptions& options) {
    if (multiplier.rows() != 2 || multiplier.cols() != 2 || sigma.rows() != 2 || sigma.cols() != 2) {
        throw ModelError("long-run identification is implemented for bivariate models only");
    }
    Eigen::Matrix2d s = multiplier * sigma * multiplier.transpose();
    s = 0.5 * (s + s.transpose()).eval();
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> eig(s, Eigen::EigenvaluesOnly);
    const double lo = eig.eigenvalues()(0);
    const double hi = eig.eigenvalues()(1);
    if (!(lo > 0.0) || hi / lo > kMaxCovarianceCondition) {
        throw ModelError("long-run covariance C1 Sigma C1' is not positive definite");
    }
    Eigen::LLT<Eigen::Matrix2d> llt(s);
    if (llt.info() != Eigen::Success) throw ModelError("Cholesky factorization of the long-run covariance failed");
    const Eigen::Matrix2d l = llt.matrixL();

    StructuralModel sm;
    sm.multiplier = multiplier;
    sm.long_run.resize(2, 2);
    sm.long_run << 0.0, l(0, 0),
                   l(1, 1), l(1, 0);
    sm.impact = multiplier.fullPivLu().solve(sm.long_run);
    sm.restricted.setConstant(2, 2, false);
    sm.restricted(0, 0) = true;
    apply_flips(sm, options);
    return sm;
}

StructuralModel identify_long_run(const VarModel& m, const IdentifyOptions& options) {
    if (m.k != 2) throw ModelError("long-run identification needs exactly 2 variables, got " + std::to_string(m.k));
    const StabilityReport stability = check_stability(m);
    if (!stability.moduli.empty() && stability.moduli.front() >= 1.0 - kStabilityMargin) {
        throw ModelError("VAR is not stable (largest companion root modulus " +
                         std::to_string(stability.moduli.front()) + ")");
    }
    return factor_long_run(long_run_multiplier(m), m.sigma_ml, options);
}

std::vector<Eigen::MatrixXd> ma_coefficients(const std::vector<Eigen::MatrixXd>& lag_coeffs, int horizon) {
    if (horizon < 1) throw DataError("IRF horizon must be at least 1");
    if (lag_coeffs.empty()) throw DataError("no lag coefficients");
    const Eigen::Index k = lag_coeffs.front().rows();
    const int p = static_cast<int>(lag_coeffs.size());
    std::vector<Eigen::MatrixXd> psi;
    psi.reserve(static_cast<std::size_t>(horizon));
    psi.push_back(Eigen::MatrixXd::Identity(k, k));
    for (int h = 1; h < horizon; ++h) {
        Eigen::MatrixXd next = Eigen::MatrixXd::Zero(k, k);
        for (int i = 1; i <= std::min(h, p); ++i) {
            next.noalias() += lag_coeffs[static_cast<std::size_t>(i - 1)] * psi[static_cast<std::size_t>(h - i)];
        }
        psi.push_back(std::move(next));
    }
    return psi;
}

IrfResult compute_irf(const StructuralModel& sm, const VarModel& m, int horizon) {
    const auto psi = ma_coefficients(m.lag_coeffs, horizon);
    IrfResult out;
    out.horizon = horizon;
    Eigen::MatrixXd running = Eigen::MatrixXd::Zero(sm.impact.rows(), sm.impact.cols());
    for (const auto& ps : psi) {
        out.responses.push_back(ps * sm.impact);
        running += out.responses.back();
        out.cumulative.push_back(running);
    }
    return out;
}

ShockSeries recover_shocks(const StructuralModel& sm, const VarModel& m) {
    Eigen::FullPivLU<Eigen::MatrixXd> lu(sm.impact);
    if (!lu.isInvertible()) throw ModelError("impact matrix B is singular");
    // Rows of U are u_t' = e_t' B^-T.
    const Eigen::MatrixXd u = lu.solve(m.residuals.transpose()).transpose();
    ShockSeries out;
    out.start = m.residual_start;
    out.demand.resize(static_cast<std::size_t>(u.rows()));
    out.supply.resize(static_cast<std::size_t>(u.rows()));
    for (Eigen::Index t = 0; t < u.rows(); ++t) {
        out.demand[static_cast<std::size_t>(t)] = u(t, 0);
        out.supply[static_cast<std::size_t>(t)] = u(t, 1);
    }
    return out;
}

}  // namespace svarkit
