#pragma once

#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "svarkit/series.hpp"

namespace svarkit {

enum class Deterministic { none, constant, trend_and_constant };

std::string_view to_string(Deterministic d);
/// Accepts "none", "constant", "trend" / "trend_and_constant".
Deterministic parse_deterministic(std::string_view text);

struct CriticalValues {
    double pct1 = 0.0;
    double pct5 = 0.0;
    double pct10 = 0.0;
};

struct AdfResult {
    double statistic = 0.0;  // t-ratio on the lagged level
    int lag_used = 0;
    Deterministic spec = Deterministic::constant;
    double p_value = 1.0;
    CriticalValues critical_values;
    bool reject_at_5pct = false;
    int nobs = 0;  // observations in the test regression
};

struct IntegrationReport {
    int order = 0;                  // 0, 1 or 2
    std::vector<AdfResult> levels;  // levels[d] tests the d-th difference
};

/// MacKinnon (1994) response-surface p-value for a single-series DF t-ratio.
double mackinnon_p_value(double statistic, Deterministic spec);

/// MacKinnon (2010) finite-sample critical values.
CriticalValues mackinnon_critical_values(Deterministic spec, int nobs);

/// Schwert rule floor(12 * (T/100)^(1/4)).
int schwert_max_lag(std::size_t length);

/// Augmented Dickey-Fuller test. Without `lag`, the augmentation order is
/// chosen by the Schwarz criterion over 0..schwert_max_lag on a common
/// sample and the chosen regression is then re-run on all usable rows.
AdfResult adf_test(std::span<const double> y, Deterministic spec, std::optional<int> lag = std::nullopt);
AdfResult adf_test(const QuarterlySeries& s, Deterministic spec, std::optional<int> lag = std::nullopt);

/// Tests the level, first and second difference in turn and stops at the
/// first 5% rejection. `spec_per_level[d]` applies to the d-th difference;
/// a short list repeats its last entry, an empty one means constant.
/// Throws ModelError if even the second difference does not reject.
IntegrationReport integration_order(const QuarterlySeries& s, std::span<const Deterministic> spec_per_level);

}  // namespace svarkit
