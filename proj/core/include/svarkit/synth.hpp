#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "svarkit/series.hpp"
#include "svarkit/svar.hpp"

namespace svarkit {

/// Data-generating process y_t = c + sum A_i y_{t-i} + B u_t with
/// u_t ~ N(0, I) drawn in (demand, supply) order each period.
struct StructuralDgp {
    Eigen::VectorXd intercept;
    std::vector<Eigen::MatrixXd> lag_coeffs;
    Eigen::MatrixXd impact;
    std::uint64_t seed = 0;

    /// Builds B = C1^-1 F from a long-run matrix with F(0,0) = 0, so the
    /// long-run restriction holds by construction. Throws ModelError if
    /// F(0,0) != 0 or the lags are not stable.
    static StructuralDgp from_long_run(std::vector<Eigen::MatrixXd> lag_coeffs, const Eigen::MatrixXd& long_run,
                                       Eigen::VectorXd intercept, std::uint64_t seed);

    [[nodiscard]] int k() const { return static_cast<int>(impact.rows()); }
    [[nodiscard]] Eigen::MatrixXd multiplier() const;  // (I - sum A_i)^-1
    [[nodiscard]] Eigen::MatrixXd long_run() const;    // C1 B
    [[nodiscard]] bool stable() const;
};

/// Bivariate VAR(2) with F = [[0, 2], [2, 1]] used by tests, benchmarks and
/// the `simulate` command.
StructuralDgp reference_dgp(std::uint64_t seed);

struct Simulation {
    std::vector<QuarterlySeries> series;  // one per variable
    ShockSeries shocks;                   // the true structural shocks
};

inline constexpr int kDefaultBurnIn = 500;

/// Deterministic in `dgp.seed`. The process starts at its unconditional
/// mean and the first `burn_in` periods are discarded.
Simulation simulate(const StructuralDgp& dgp, int length, int burn_in = kDefaultBurnIn,
                    QuarterIndex start = {1997, 1},
                    std::vector<std::string> labels = {"output", "inflation"});

}  // namespace svarkit
