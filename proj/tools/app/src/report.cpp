#include "svarkit/app/report.hpp"

#include <string>

namespace svarkit::app {

Json to_json(const Eigen::MatrixXd& m) {
    Json rows = Json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        Json row = Json::array();
        for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
        rows.push_back(std::move(row));
    }
    return rows;
}

Json to_json(const Eigen::VectorXd& v) {
    Json out = Json::array();
    for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(v(i));
    return out;
}

Json to_json(const QuarterlySeries& s, bool with_values) {
    Json out{{"label", s.label()},
             {"start", s.start().label()},
             {"end", s.end().label()},
             {"observations", s.size()},
             {"log", s.transform_log() != 0},
             {"difference_order", s.diff_order()}};
    if (with_values) out["values"] = std::vector<double>(s.values().begin(), s.values().end());
    return out;
}

Json to_json(const AdfResult& r) {
    return {{"spec", std::string(to_string(r.spec))},
            {"statistic", r.statistic},
            {"p_value", r.p_value},
            {"lag", r.lag_used},
            {"nobs", r.nobs},
            {"critical_values", {{"1%", r.critical_values.pct1},
                                 {"5%", r.critical_values.pct5},
                                 {"10%", r.critical_values.pct10}}},
            {"reject_at_5pct", r.reject_at_5pct}};
}

Json to_json(const IntegrationReport& r) {
    Json levels = Json::array();
    for (std::size_t d = 0; d < r.levels.size(); ++d) {
        Json entry = to_json(r.levels[d]);
        entry["difference"] = d;
        levels.push_back(std::move(entry));
    }
    return {{"order", r.order}, {"tests", std::move(levels)}};
}

Json to_json(const LagExclusion& e) {
    return {{"lag", e.lag},
            {"joint_statistic", e.joint_statistic},
            {"joint_df", e.joint_df},
            {"joint_p_value", e.joint_p_value},
            {"equation_statistic", e.equation_statistic},
            {"equation_df", e.equation_df},
            {"equation_p_value", e.equation_p_value}};
}

Json to_json(const LagSelectionReport& r) {
    Json rows = Json::array();
    for (const auto& row : r.rows) {
        rows.push_back({{"lag", row.lag},
                        {"log_det_sigma", row.log_det_sigma},
                        {"lr", row.lr},
                        {"lr_p_value", row.lr_p_value},
                        {"fpe", row.fpe},
                        {"aic", row.aic},
                        {"sc", row.sc},
                        {"hq", row.hq}});
    }
    Json excl = Json::array();
    for (const auto& e : r.exclusion) excl.push_back(to_json(e));
    return {{"max_lag", r.max_lag},
            {"common_sample", r.common_sample},
            {"criteria", std::move(rows)},
            {"choices", {{"lr", r.lr_choice},
                         {"fpe", r.fpe_choice},
                         {"aic", r.aic_choice},
                         {"sc", r.sc_choice},
                         {"hq", r.hq_choice}}},
            {"modal", r.modal_choice},
            {"exclusion", std::move(excl)}};
}

Json to_json(const VarModel& m) {
    Json lags = Json::array();
    for (const auto& a : m.lag_coeffs) lags.push_back(to_json(a));
    return {{"variables", m.labels},
            {"lags", m.p},
            {"observations", m.t_eff},
            {"residual_start", m.residual_start.label()},
            {"intercept", to_json(Eigen::VectorXd(m.intercept))},
            {"lag_coefficients", std::move(lags)},
            {"sigma_ml", to_json(m.sigma_ml)},
            {"sigma_df_adjusted", to_json(m.sigma_df_adjusted)}};
}

Json to_json(const StabilityReport& r) { return {{"stable", r.stable}, {"moduli", r.moduli}}; }

namespace {

Json restriction_pattern(const StructuralModel& sm) {
    Json rows = Json::array();
    for (Eigen::Index i = 0; i < sm.restricted.rows(); ++i) {
        Json row = Json::array();
        for (Eigen::Index j = 0; j < sm.restricted.cols(); ++j) row.push_back(static_cast<bool>(sm.restricted(i, j)));
        rows.push_back(std::move(row));
    }
    return rows;
}

}  // namespace

Json to_json(const StructuralModel& sm) {
    return {{"B", to_json(sm.impact)},
            {"F", to_json(sm.long_run)},
            {"C1", to_json(sm.multiplier)},
            {"restricted", restriction_pattern(sm)},
            {"sign_convention", sm.sign_convention.describe()}};
}

Json to_json(const IrfResult& irf, const std::vector<std::string>& variables) {
    static const char* shock_names[] = {"demand", "supply"};
    const auto series = [&](const std::vector<Eigen::MatrixXd>& mats) {
        Json out = Json::object();
        for (std::size_t i = 0; i < variables.size(); ++i) {
            for (std::size_t j = 0; j < 2; ++j) {
                Json path = Json::array();
                for (const auto& m : mats) path.push_back(m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)));
                out[variables[i] + "." + shock_names[j]] = std::move(path);
            }
        }
        return out;
    };
    return {{"horizon", irf.horizon}, {"responses", series(irf.responses)}, {"cumulative", series(irf.cumulative)}};
}

Json to_json(const NormalityBlock& jb) {
    Json comps = Json::array();
    for (const auto& c : jb.components) {
        comps.push_back({{"skewness", c.skewness},
                         {"kurtosis", c.kurtosis},
                         {"statistic", c.statistic},
                         {"p_value", c.p_value}});
    }
    return {{"components", std::move(comps)},
            {"joint_statistic", jb.joint_statistic},
            {"joint_df", jb.joint_df},
            {"joint_p_value", jb.joint_p_value}};
}

Json to_json(const WhiteBlock& w) {
    return {{"statistic", w.statistic},
            {"df", w.df},
            {"p_value", w.p_value},
            {"sum_r_squared_statistic", w.sum_r_squared_statistic},
            {"r_squared", w.r_squared},
            {"auxiliary_regressors", w.auxiliary_regressors},
            {"dropped_columns", w.dropped_columns}};
}

Json to_json(const LmEntry& e) {
    return {{"lag", e.lag}, {"statistic", e.statistic}, {"df", e.df}, {"p_value", e.p_value}};
}

Json to_json(const DiagnosticsReport& d) {
    Json lm = Json::array();
    for (const auto& e : d.lm) lm.push_back(to_json(e));
    return {{"normality", to_json(d.jb)}, {"heteroskedasticity", to_json(d.white)}, {"autocorrelation", std::move(lm)}};
}

Json to_json(const CorrelationReport& r) {
    Json periods = Json::array();
    for (const auto& p : r.periods) {
        periods.push_back({{"period", p.period}, {"demand", to_json(p.demand)}, {"supply", to_json(p.supply)}});
    }
    return {{"countries", r.countries}, {"periods", std::move(periods)}};
}

Json to_json(const ShockVolatility& v) {
    return {{"country", v.country},
            {"observations", v.observations},
            {"demand_sd", v.demand_sd},
            {"supply_sd", v.supply_sd}};
}

}  // namespace svarkit::app
