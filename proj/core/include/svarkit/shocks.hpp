#pragma once

#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "svarkit/series.hpp"
#include "svarkit/svar.hpp"

namespace svarkit {

enum class ShockKind { demand, supply };

struct SubPeriod {
    std::string label;
    QuarterIndex start;
    QuarterIndex end;  // inclusive
};

/// Recovered shocks for several countries plus the periods to analyse. The
/// full period is unbounded (each pair uses its common range); sub-periods
/// must be ordered, non-overlapping and intersect the data.
class ShockPanel {
public:
    ShockPanel(std::vector<std::pair<std::string, ShockSeries>> entries, std::string full_period_label,
               std::vector<SubPeriod> sub_periods);

    [[nodiscard]] const std::vector<std::pair<std::string, ShockSeries>>& entries() const { return entries_; }
    [[nodiscard]] std::vector<std::string> countries() const;
    [[nodiscard]] const std::string& full_period_label() const { return full_label_; }
    [[nodiscard]] const std::vector<SubPeriod>& sub_periods() const { return sub_periods_; }
    /// Full period first, then sub-periods.
    [[nodiscard]] std::vector<std::string> period_labels() const;
    /// Bounds of a period; the full period spans every quarter.
    [[nodiscard]] std::pair<QuarterIndex, QuarterIndex> bounds(const std::string& period) const;

private:
    std::vector<std::pair<std::string, ShockSeries>> entries_;
    std::string full_label_;
    std::vector<SubPeriod> sub_periods_;
};

/// Sample correlation with n-1 divisors throughout. Needs n >= 3 and
/// non-constant inputs.
double pearson_correlation(std::span<const double> x, std::span<const double> y);

/// Pairwise correlations over each pair's common quarters within `period`.
Eigen::MatrixXd correlation_matrix(const ShockPanel& panel, ShockKind kind, const std::string& period);

struct PeriodCorrelations {
    std::string period;
    Eigen::MatrixXd demand;
    Eigen::MatrixXd supply;
};

struct CorrelationReport {
    std::vector<std::string> countries;
    std::vector<PeriodCorrelations> periods;
};

CorrelationReport correlation_report(const ShockPanel& panel);

/// Period table with demand correlations below the diagonal and supply
/// correlations above it, as percentages.
std::string format_correlation_table(const CorrelationReport& report);

struct ShockVolatility {
    std::string country;
    int observations = 0;
    double demand_sd = 0.0;  // divisor n-1
    double supply_sd = 0.0;
};

std::vector<ShockVolatility> shock_volatility(const ShockPanel& panel, const std::string& period);

/// Sample standard deviation, divisor n-1.
double sample_sd(std::span<const double> x);

/// `quarter,u_demand,u_supply`
void write_shocks_csv(std::ostream& out, const ShockSeries& shocks);
void save_shocks_csv(const std::filesystem::path& path, const ShockSeries& shocks);
ShockSeries read_shocks_csv(std::istream& in);
ShockSeries load_shocks_csv(const std::filesystem::path& path);

}  // namespace svarkit
