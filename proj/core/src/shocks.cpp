#include "svarkit/shocks.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <limits>
#include <sstream>

#include "svarkit/error.hpp"

namespace svarkit {

namespace {

const std::vector<double>& pick(const ShockSeries& s, ShockKind kind) {
    return kind == ShockKind::demand ? s.demand : s.supply;
}

// Indices [lo, hi) of `s` that fall in [from, to].
std::pair<std::size_t, std::size_t> window(const ShockSeries& s, QuarterIndex from, QuarterIndex to) {
    const long n = static_cast<long>(s.size());
    const long lo = std::clamp(quarters_between(s.start, from), 0L, n);
    const long hi = std::clamp(quarters_between(s.start, to) + 1, lo, n);
    return {static_cast<std::size_t>(lo), static_cast<std::size_t>(hi)};
}

std::string percent(double r) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%05.2f%%", 100.0 * r);
    if (r < 0.0) std::snprintf(buf, sizeof buf, "-%05.2f%%", -100.0 * r);
    return buf;
}

}  // namespace

ShockPanel::ShockPanel(std::vector<std::pair<std::string, ShockSeries>> entries, std::string full_period_label,
                       std::vector<SubPeriod> sub_periods)
    : entries_(std::move(entries)), full_label_(std::move(full_period_label)), sub_periods_(std::move(sub_periods)) {
    for (std::size_t i = 0; i < entries_.size(); ++i) {
        const auto& [label, s] = entries_[i];
        if (s.demand.size() != s.supply.size()) throw DataError("shock series for '" + label + "' differ in length");
        for (std::size_t j = 0; j < i; ++j) {
            if (entries_[j].first == label) throw DataError("duplicate country '" + label + "'");
        }
    }
    QuarterIndex data_lo{std::numeric_limits<int>::max(), 4};
    QuarterIndex data_hi{std::numeric_limits<int>::min(), 1};
    for (const auto& [label, s] : entries_) {
        if (s.size() == 0) continue;
        data_lo = std::min(data_lo, s.start);
        data_hi = std::max(data_hi, s.end());
    }
    for (std::size_t i = 0; i < sub_periods_.size(); ++i) {
        const auto& sp = sub_periods_[i];
        if (sp.label == full_label_) throw DataError("sub-period reuses the full-period label '" + sp.label + "'");
        if (sp.end < sp.start) throw DataError("sub-period '" + sp.label + "' ends before it starts");
        if (i > 0 && !(sub_periods_[i - 1].end < sp.start)) {
            throw DataError("sub-periods '" + sub_periods_[i - 1].label + "' and '" + sp.label + "' overlap");
        }
        if (!entries_.empty() && (sp.end < data_lo || data_hi < sp.start)) {
            throw DataError("sub-period '" + sp.label + "' lies outside the sample");
        }
    }
}

std::vector<std::string> ShockPanel::countries() const {
    std::vector<std::string> out;
    for (const auto& e : entries_) out.push_back(e.first);
    return out;
}

std::vector<std::string> ShockPanel::period_labels() const {
    std::vector<std::string> out{full_label_};
    for (const auto& sp : sub_periods_) out.push_back(sp.label);
    return out;
}

std::pair<QuarterIndex, QuarterIndex> ShockPanel::bounds(const std::string& period) const {
    if (period == full_label_) {
        return {{std::numeric_limits<int>::min() / 8, 1}, {std::numeric_limits<int>::max() / 8, 4}};
    }
    for (const auto& sp : sub_periods_) {
        if (sp.label == period) return {sp.start, sp.end};
    }
    throw DataError("unknown period '" + period + "'");
}

double sample_sd(std::span<const double> x) {
    const double n = static_cast<double>(x.size());
    double mean = 0.0;
    for (double v : x) mean += v;
    mean /= n;
    double ss = 0.0;
    for (double v : x) ss += (v - mean) * (v - mean);
    return std::sqrt(ss / (n - 1.0));
}

double pearson_correlation(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size()) throw DataError("correlation inputs differ in length");
    if (x.size() < 3) throw DataError("correlation needs at least 3 observations");
    const double n = static_cast<double>(x.size());
    double mx = 0.0;
    double my = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        mx += x[i];
        my += y[i];
    }
    mx /= n;
    my /= n;
    double sxy = 0.0;
    double sxx = 0.0;
    double syy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double dx = x[i] - mx;
        const double dy = y[i] - my;
        sxy += dx * dy;
        sxx += dx * dx;
        syy += dy * dy;
    }
    if (!(sxx > 0.0) || !(syy > 0.0)) throw DataError("correlation of a constant series");
    // The (n-1) divisors of the covariance and both deviations cancel.
    return std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
}

Eigen::MatrixXd correlation_matrix(const ShockPanel& panel, ShockKind kind, const std::string& period) {
    const auto& entries = panel.entries();
    if (entries.size() < 2) throw DataError("correlation matrix needs at least two countries");
    const auto [from, to] = panel.bounds(period);
    const auto n = static_cast<Eigen::Index>(entries.size());
    Eigen::MatrixXd r = Eigen::MatrixXd::Identity(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = i + 1; j < n; ++j) {
            const auto& a = entries[static_cast<std::size_t>(i)];
            const auto& b = entries[static_cast<std::size_t>(j)];
            const QuarterIndex lo = std::max({from, a.second.start, b.second.start});
            const QuarterIndex hi = std::min({to, a.second.end(), b.second.end()});
            if (hi < lo) {
                throw DataError("no common quarters for " + a.first + " and " + b.first + " in " + period);
            }
            const auto [a0, a1] = window(a.second, lo, hi);
            const auto [b0, b1] = window(b.second, lo, hi);
            const auto& xa = pick(a.second, kind);
            const auto& xb = pick(b.second, kind);
            const double c = pearson_correlation(std::span(xa).subspan(a0, a1 - a0), std::span(xb).subspan(b0, b1 - b0));
            r(i, j) = c;
            r(j, i) = c;
        }
    }
    return r;
}

CorrelationReport correlation_report(const ShockPanel& panel) {
    CorrelationReport rep;
    rep.countries = panel.countries();
    for (const auto& label : panel.period_labels()) {
        rep.periods.push_back({label, correlation_matrix(panel, ShockKind::demand, label),
                               correlation_matrix(panel, ShockKind::supply, label)});
    }
    return rep;
}

std::string format_correlation_table(const CorrelationReport& report) {
    std::ostringstream out;
    std::size_t width = 9;
    for (const auto& c : report.countries) width = std::max(width, c.size() + 2);
    const auto pad = [&](const std::string& s) { return s + std::string(width - std::min(width, s.size()), ' '); };
    out << "Demand shocks correlation (below diagonal) and supply shocks correlation (above diagonal)\n";
    for (const auto& period : report.periods) {
        out << "\nCorrelation " << period.period << "\n" << pad("Country");
        for (const auto& c : report.countries) out << pad(c);
        out << "\n";
        for (std::size_t i = 0; i < report.countries.size(); ++i) {
            out << pad(report.countries[i]);
            for (std::size_t j = 0; j < report.countries.size(); ++j) {
                const auto ii = static_cast<Eigen::Index>(i);
                const auto jj = static_cast<Eigen::Index>(j);
                const double v = i > j ? period.demand(ii, jj) : period.supply(ii, jj);
                out << pad(i == j ? std::string("100.00%") : percent(v));
            }
            out << "\n";
        }
    }
    return out.str();
}

std::vector<ShockVolatility> shock_volatility(const ShockPanel& panel, const std::string& period) {
    const auto [from, to] = panel.bounds(period);
    std::vector<ShockVolatility> out;
    for (const auto& [label, s] : panel.entries()) {
        const auto [lo, hi] = window(s, from, to);
        if (hi - lo < 3) {
            throw DataError("period " + period + " has fewer than 3 observations for " + label);
        }
        ShockVolatility v;
        v.country = label;
        v.observations = static_cast<int>(hi - lo);
        v.demand_sd = sample_sd(std::span(s.demand).subspan(lo, hi - lo));
        v.supply_sd = sample_sd(std::span(s.supply).subspan(lo, hi - lo));
        out.push_back(v);
    }
    return out;
}

void write_shocks_csv(std::ostream& out, const ShockSeries& shocks) {
    std::ostringstream buf;
    buf << std::setprecision(std::numeric_limits<double>::max_digits10);
    buf << "quarter,u_demand,u_supply\n";
    QuarterIndex q = shocks.start;
    for (std::size_t t = 0; t < shocks.size(); ++t) {
        buf << q.label() << ',' << shocks.demand[t] << ',' << shocks.supply[t] << '\n';
        q = q.next();
    }
    out << buf.str();
}

void save_shocks_csv(const std::filesystem::path& path, const ShockSeries& shocks) {
    std::ofstream out(path);
    if (!out) throw DataError("cannot write '" + path.string() + "'");
    write_shocks_csv(out, shocks);
}

ShockSeries read_shocks_csv(std::istream& in) {
    // Two passes through the generic series reader keep the parsing rules in one place.
    std::stringstream demand_src;
    std::stringstream supply_src;
    std::string line;
    bool header = true;
    while (std::getline(in, line)) {
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        if (header) {
            std::string h = line;
            if (!h.empty() && h.back() == '\r') h.pop_back();
            if (h != "quarter,u_demand,u_supply") throw DataError("expected header 'quarter,u_demand,u_supply'");
            demand_src << "quarter,value\n";
            supply_src << "quarter,value\n";
            header = false;
            continue;
        }
        const auto c1 = line.find(',');
        const auto c2 = c1 == std::string::npos ? c1 : line.find(',', c1 + 1);
        if (c2 == std::string::npos) throw DataError("shock row needs three fields: '" + line + "'");
        demand_src << line.substr(0, c1) << ',' << line.substr(c1 + 1, c2 - c1 - 1) << '\n';
        supply_src << line.substr(0, c1) << ',' << line.substr(c2 + 1) << '\n';
    }
    if (header) throw DataError("empty file");
    const QuarterlySeries d = read_csv(demand_src, "u_demand");
    const QuarterlySeries s = read_csv(supply_src, "u_supply");
    return {d.start(), {d.values().begin(), d.values().end()}, {s.values().begin(), s.values().end()}};
}

ShockSeries load_shocks_csv(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open '" + path.string() + "'");
    try {
        return read_shocks_csv(in);
    } catch (const DataError& e) {
        throw DataError(path.string() + ": " + e.what());
    }
}

}  // namespace svarkit
