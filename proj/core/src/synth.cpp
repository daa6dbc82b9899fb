#include "svarkit/synth.hpp"

#include <cmath>
#include <string>

#include "svarkit/error.hpp"
#include "svarkit/rng.hpp"
#include "svarkit/var.hpp"

namespace svarkit {

Eigen::MatrixXd StructuralDgp::multiplier() const {
    Eigen::MatrixXd base = Eigen::MatrixXd::Identity(k(), k());
    for (const auto& a : lag_coeffs) base -= a;
    Eigen::FullPivLU<Eigen::MatrixXd> lu(base);
    if (!lu.isInvertible()) throw ModelError("dgp has a unit root");
    return lu.inverse();
}

Eigen::MatrixXd StructuralDgp::long_run() const { return multiplier() * impact; }

bool StructuralDgp::stable() const {
    if (lag_coeffs.empty()) return true;
    return companion_moduli(lag_coeffs).front() < 1.0;
}

StructuralDgp StructuralDgp::from_long_run(std::vector<Eigen::MatrixXd> lag_coeffs, const Eigen::MatrixXd& long_run,
                                           Eigen::VectorXd intercept, std::uint64_t seed) {
    if (long_run(0, 0) != 0.0) throw ModelError("long-run matrix must have F(0,0) = 0");
    StructuralDgp dgp;
    dgp.intercept = std::move(intercept);
    dgp.lag_coeffs = std::move(lag_coeffs);
    dgp.impact = Eigen::MatrixXd::Identity(long_run.rows(), long_run.cols());
    dgp.seed = seed;
    if (!dgp.stable()) throw ModelError("dgp lag coefficients are not stable");
    dgp.impact = dgp.multiplier().fullPivLu().solve(long_run);
    return dgp;
}

StructuralDgp reference_dgp(std::uint64_t seed) {
    Eigen::MatrixXd a1(2, 2);
    a1 << 0.40, 0.10,
          0.20, 0.30;
    Eigen::MatrixXd a2(2, 2);
    a2 << 0.10, 0.00,
          0.05, 0.20;
    Eigen::MatrixXd f(2, 2);
    f << 0.0, 2.0,
         2.0, 1.0;
    Eigen::VectorXd c(2);
    c << 0.5, 0.3;
    return StructuralDgp::from_long_run({a1, a2}, f, c, seed);
}

Simulation simulate(const StructuralDgp& dgp, int length, int burn_in, QuarterIndex start,
                    std::vector<std::string> labels) {
    if (length < 100) throw DataError("simulation length must be at least 100");
    if (burn_in < 100) throw DataError("burn-in must be at least 100");
    if (!dgp.stable()) throw ModelError("dgp is not stable");
    const int k = dgp.k();
    if (static_cast<int>(labels.size()) != k) throw DataError("need one label per variable");
    const int p = static_cast<int>(dgp.lag_coeffs.size());
    const int total = burn_in + length;

    Rng rng(dgp.seed);
    const Eigen::VectorXd mean = p > 0 ? Eigen::VectorXd(dgp.multiplier() * dgp.intercept) : dgp.intercept;
    // history[t + p] holds y_t; the p pre-sample slots sit at the mean.
    std::vector<Eigen::VectorXd> history(static_cast<std::size_t>(total + p), mean);
    Eigen::MatrixXd shocks(total, k);
    for (int t = 0; t < total; ++t) {
        Eigen::VectorXd u(k);
        for (int j = 0; j < k; ++j) u(j) = rng.normal();
        shocks.row(t) = u.transpose();
        Eigen::VectorXd y = dgp.intercept + dgp.impact * u;
        for (int i = 1; i <= p; ++i) {
            y.noalias() += dgp.lag_coeffs[static_cast<std::size_t>(i - 1)] * history[static_cast<std::size_t>(t + p - i)];
        }
        history[static_cast<std::size_t>(t + p)] = std::move(y);
    }

    Simulation out;
    for (int j = 0; j < k; ++j) {
        std::vector<double> v(static_cast<std::size_t>(length));
        for (int t = 0; t < length; ++t) v[static_cast<std::size_t>(t)] = history[static_cast<std::size_t>(burn_in + t + p)](j);
        out.series.emplace_back(labels[static_cast<std::size_t>(j)], start, std::move(v));
    }
    out.shocks.start = start;
    for (int t = burn_in; t < total; ++t) {
        out.shocks.demand.push_back(shocks(t, 0));
        out.shocks.supply.push_back(k > 1 ? shocks(t, 1) : 0.0);
    }
    return out;
}

}  // namespace svarkit
