#include "svarkit/unit_root.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <string>

#include <Eigen/Dense>

#include "svarkit/distributions.hpp"
#include "svarkit/error.hpp"
#include "svarkit/ols.hpp"

namespace svarkit {

namespace {

// Response-surface coefficients for one I(1) series (N = 1).
//
// p-values: MacKinnon, J.G. (1994), "Approximate asymptotic distribution
// functions for unit-root and cointegration tests", JBES 12(2), 167-176.
// p = Phi(c0 + c1*t + c2*t^2 [+ c3*t^3]); the small-p polynomial applies for
// t <= tau_star, the large-p polynomial above it.
//
// Critical values: MacKinnon, J.G. (2010), "Critical values for
// cointegration tests", Queen's University WP 1227, Table 2. cv = b0 + b1/T
// + b2/T^2 + b3/T^3. The no-constant row is from the 1996 tables.
struct SurfaceRow {
    double tau_star;
    double tau_min;
    double tau_max;
    std::array<double, 3> small_p;
    std::array<double, 4> large_p;
    std::array<std::array<double, 4>, 3> crit;  // 1%, 5%, 10%
};

constexpr double kInf = std::numeric_limits<double>::infinity();

constexpr std::array<SurfaceRow, 3> kSurface{{
    // none
    {-1.04, -19.04, kInf,
     {0.6344, 1.2378, 3.2496e-2},
     {0.4797, 9.3557e-1, -0.6999e-1, 3.3066e-2},
     {{{-2.56574, -2.2358, -3.627, 0.0},
       {-1.94100, -0.2686, -3.365, 31.223},
       {-1.61682, 0.2656, -2.714, 25.364}}}},
    // constant
    {-1.61, -18.83, 2.74,
     {2.1659, 1.4412, 3.8269e-2},
     {1.7339, 9.3202e-1, -1.2745e-1, -1.0368e-2},
     {{{-3.43035, -6.5393, -16.786, -79.433},
       {-2.86154, -2.8903, -4.234, -40.040},
       {-2.56677, -1.5384, -2.809, 0.0}}}},
    // trend and constant
    {-2.89, -16.18, 0.7,
     {3.2512, 1.6047, 4.9588e-2},
     {2.5261, 6.1654e-1, -3.7956e-1, -6.0285e-2},
     {{{-3.95877, -9.0531, -28.428, -134.155},
       {-3.41049, -4.3904, -9.036, -45.374},
       {-3.12705, -2.5856, -3.925, -22.380}}}},
}};

// First stationary point of the large-p cubic above tau_star, or tau_max.
double large_p_peak(const SurfaceRow& row) {
    const auto& c = row.large_p;
    const double a = 3.0 * c[3];
    const double b = 2.0 * c[2];
    const double disc = b * b - 4.0 * a * c[1];
    double peak = row.tau_max;
    if (a != 0.0 && disc >= 0.0) {
        for (double r : {(-b - std::sqrt(disc)) / (2.0 * a), (-b + std::sqrt(disc)) / (2.0 * a)}) {
            if (r > row.tau_star && r < peak) peak = r;
        }
    }
    return peak;
}

const SurfaceRow& surface(Deterministic spec) { return kSurface[static_cast<std::size_t>(spec)]; }

int deterministic_count(Deterministic spec) {
    switch (spec) {
        case Deterministic::none: return 0;
        case Deterministic::constant: return 1;
        case Deterministic::trend_and_constant: return 2;
    }
    return 0;
}

// Rows for Delta y_t, t = first_row .. n-1 (0-based levels index).
struct AdfDesign {
    Eigen::MatrixXd x;
    Eigen::VectorXd dy;
    Eigen::Index level_col = 0;
};

AdfDesign build_design(std::span<const double> y, Deterministic spec, int lag, int first_row) {
    const auto n = static_cast<Eigen::Index>(y.size());
    const int det = deterministic_count(spec);
    const Eigen::Index rows = n - first_row;
    AdfDesign d;
    d.x.resize(rows, det + 1 + lag);
    d.dy.resize(rows);
    d.level_col = det;
    for (Eigen::Index r = 0; r < rows; ++r) {
        const Eigen::Index t = first_row + r;
        d.dy(r) = y[t] - y[t - 1];
        Eigen::Index c = 0;
        if (det >= 1) d.x(r, c++) = 1.0;
        if (det >= 2) d.x(r, c++) = static_cast<double>(t);
        d.x(r, c++) = y[t - 1];
        for (int i = 1; i <= lag; ++i) d.x(r, c++) = y[t - i] - y[t - i - 1];
    }
    return d;
}

double schwarz(const OlsFit& fit, Eigen::Index nobs, Eigen::Index k) {
    const double n = static_cast<double>(nobs);
    const double ssr = fit.residuals.squaredNorm();
    return std::log(ssr / n) + static_cast<double>(k) * std::log(n) / n;
}

// Minimum series length beyond the augmentation lag.
constexpr int kMinLength = 10;

bool lag_feasible(std::size_t length, Deterministic spec, int lag) {
    const long rows = static_cast<long>(length) - 1 - lag;
    const long k = deterministic_count(spec) + 1 + lag;
    return static_cast<long>(length) >= lag + kMinLength && rows > k;
}

AdfResult run_adf(std::span<const double> y, Deterministic spec, int lag) {
    const AdfDesign d = build_design(y, spec, lag, lag + 1);
    const OlsFit fit = ols(d.x, d.dy);
    const auto rows = d.x.rows();
    const auto k = d.x.cols();
    const double s2 = fit.residuals.squaredNorm() / static_cast<double>(rows - k);
    const double se = std::sqrt(s2 * fit.xtx_inverse(d.level_col, d.level_col));
    if (!(se > 0.0)) throw ModelError("degenerate ADF regression (zero residual variance)");

    AdfResult r;
    r.statistic = fit.coefficients(d.level_col, 0) / se;
    r.lag_used = lag;
    r.spec = spec;
    r.nobs = static_cast<int>(rows);
    r.p_value = mackinnon_p_value(r.statistic, spec);
    r.critical_values = mackinnon_critical_values(spec, r.nobs);
    r.reject_at_5pct = r.statistic < r.critical_values.pct5;
    return r;
}

}  // namespace

std::string_view to_string(Deterministic d) {
    switch (d) {
        case Deterministic::none: return "none";
        case Deterministic::constant: return "constant";
        case Deterministic::trend_and_constant: return "trend_and_constant";
    }
    return "constant";
}

Deterministic parse_deterministic(std::string_view text) {
    if (text == "none" || text == "n") return Deterministic::none;
    if (text == "constant" || text == "c") return Deterministic::constant;
    if (text == "trend" || text == "trend_and_constant" || text == "ct") {
        return Deterministic::trend_and_constant;
    }
    throw DataError("unknown deterministic specification '" + std::string(text) + "'");
}

double mackinnon_p_value(double statistic, Deterministic spec) {
    const SurfaceRow& row = surface(spec);
    if (statistic > row.tau_max) return 1.0;
    if (statistic < row.tau_min) return 0.0;
    double z = 0.0;
    if (statistic <= row.tau_star) {
        for (std::size_t i = row.small_p.size(); i-- > 0;) z = z * statistic + row.small_p[i];
    } else {
        // The cubic turns down just below tau_max for the trend row; hold it at its peak.
        const double t = std::min(statistic, large_p_peak(row));
        for (std::size_t i = row.large_p.size(); i-- > 0;) z = z * t + row.large_p[i];
    }
    return normal_cdf(z);
}

CriticalValues mackinnon_critical_values(Deterministic spec, int nobs) {
    const auto& crit = surface(spec).crit;
    const double inv = 1.0 / static_cast<double>(nobs);
    const auto eval = [inv](const std::array<double, 4>& b) {
        return b[0] + inv * (b[1] + inv * (b[2] + inv * b[3]));
    };
    return {eval(crit[0]), eval(crit[1]), eval(crit[2])};
}

int schwert_max_lag(std::size_t length) {
    return static_cast<int>(std::floor(12.0 * std::pow(static_cast<double>(length) / 100.0, 0.25)));
}

AdfResult adf_test(std::span<const double> y, Deterministic spec, std::optional<int> lag) {
    if (lag) {
        if (*lag < 0) throw DataError("ADF lag must be non-negative");
        if (!lag_feasible(y.size(), spec, *lag)) {
            throw DataError("series of length " + std::to_string(y.size()) + " too short for ADF with lag " +
                            std::to_string(*lag));
        }
        return run_adf(y, spec, *lag);
    }
    if (!lag_feasible(y.size(), spec, 0)) {
        throw DataError("series of length " + std::to_string(y.size()) + " too short for ADF");
    }
    int max_lag = schwert_max_lag(y.size());
    // Every candidate must be estimable on the common sample.
    while (max_lag > 0 && !lag_feasible(y.size(), spec, max_lag)) --max_lag;
    int best_lag = 0;
    double best = std::numeric_limits<double>::infinity();
    for (int p = 0; p <= max_lag; ++p) {
        const AdfDesign d = build_design(y, spec, p, max_lag + 1);
        const OlsFit fit = ols(d.x, d.dy);
        const double sc = schwarz(fit, d.x.rows(), d.x.cols());
        if (sc < best) {
            best = sc;
            best_lag = p;
        }
    }
    return run_adf(y, spec, best_lag);
}

AdfResult adf_test(const QuarterlySeries& s, Deterministic spec, std::optional<int> lag) {
    return adf_test(s.values(), spec, lag);
}

IntegrationReport integration_order(const QuarterlySeries& s, std::span<const Deterministic> spec_per_level) {
    const auto spec_for = [&](std::size_t d) {
        if (spec_per_level.empty()) return Deterministic::constant;
        return spec_per_level[std::min(d, spec_per_level.size() - 1)];
    };
    if (!lag_feasible(s.size() > 2 ? s.size() - 2 : 0, spec_for(2), 0)) {
        throw DataError("series '" + s.label() + "' too short to test two differencings");
    }
    IntegrationReport report;
    QuarterlySeries level = s;
    for (int d = 0; d <= 2; ++d) {
        if (d > 0) level = difference(level, 1);
        report.levels.push_back(adf_test(level, spec_for(static_cast<std::size_t>(d))));
        if (report.levels.back().reject_at_5pct) {
            report.order = d;
            return report;
        }
    }
    throw ModelError("series '" + s.label() + "': inconclusive, order of integration > 2 (ADF statistic " +
                     std::to_string(report.levels.back().statistic) + " on the second difference)");
}

}  // namespace svarkit
