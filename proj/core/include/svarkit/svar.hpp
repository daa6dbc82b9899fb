#pragma once

#include <string>
#include <vector>

#include <Eigen/Dense>

#include "svarkit/series.hpp"
#include "svarkit/var.hpp"

namespace svarkit {

/// Column flips applied on top of the Cholesky-positive long-run convention
/// (supply raises long-run output, demand raises the long-run level of the
/// second variable).
struct SignConvention {
    bool demand_flipped = false;
    bool supply_flipped = false;

    [[nodiscard]] std::string describe() const;
};

struct IdentifyOptions {
    bool flip_demand = false;
    bool flip_supply = false;
};

/// Bivariate long-run identified structure. Shock 0 is demand, shock 1 is
/// supply; variable 0 is output growth.
struct StructuralModel {
    Eigen::MatrixXd impact;      // B: e_t = B u_t
    Eigen::MatrixXd long_run;    // F = C1 B
    Eigen::MatrixXd multiplier;  // C1 = (I - A_1 - ... - A_p)^-1
    Eigen::Array<bool, Eigen::Dynamic, Eigen::Dynamic> restricted;  // true where F is fixed at zero
    SignConvention sign_convention;
};

/// (I - sum A_i)^-1. Throws ModelError if the sum has a unit root.
Eigen::MatrixXd long_run_multiplier(const VarModel& m);

/// Factorizes C1 Sigma C1' = F F' with F(0,0) = 0 through a column-swapped
/// lower Cholesky factor, and sets B = C1^-1 F.
StructuralModel factor_long_run(const Eigen::MatrixXd& multiplier, const Eigen::MatrixXd& sigma,
                                const IdentifyOptions& options = {});

/// Long-run identification of a stable bivariate VAR using Sigma_ml.
StructuralModel identify_long_run(const VarModel& m, const IdentifyOptions& options = {});

/// Reduced-form MA matrices Psi_0..Psi_{horizon-1}.
std::vector<Eigen::MatrixXd> ma_coefficients(const std::vector<Eigen::MatrixXd>& lag_coeffs, int horizon);

struct IrfResult {
    int horizon = 0;
    /// responses[h](i, j): response of variable i, h quarters after a
    /// one-standard-deviation shock j. h = 0..horizon-1.
    std::vector<Eigen::MatrixXd> responses;
    std::vector<Eigen::MatrixXd> cumulative;
};

IrfResult compute_irf(const StructuralModel& sm, const VarModel& m, int horizon);

struct ShockSeries {
    QuarterIndex start;
    std::vector<double> demand;
    std::vector<double> supply;

    [[nodiscard]] std::size_t size() const { return demand.size(); }
    [[nodiscard]] QuarterIndex end() const { return start.advanced(static_cast<long>(demand.size()) - 1); }
};

/// u_t = B^-1 e_t for every residual row, dated from the first residual quarter.
ShockSeries recover_shocks(const StructuralModel& sm, const VarModel& m);

}  // namespace svarkit
