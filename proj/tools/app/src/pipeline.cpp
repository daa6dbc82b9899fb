#include "svarkit/app/pipeline.hpp"

#include <algorithm>
#include <cctype>
#include <chrono>
#include <ctime>
#include <fstream>
#include <future>
#include <iomanip>
#include <set>
#include <sstream>

#include "svarkit/app/svg.hpp"
#include "svarkit/diagnostics.hpp"
#include "svarkit/var.hpp"

namespace svarkit::app {

namespace {

namespace fs = std::filesystem;

constexpr const char* kVersion = "0.1.0";

// ---- config ---------------------------------------------------------------

template <class T>
T get_or(const Json& obj, const char* key, T fallback) {
    if (!obj.contains(key)) return fallback;
    try {
        return obj.at(key).get<T>();
    } catch (const Json::exception& e) {
        throw ConfigError(std::string("config key '") + key + "': " + e.what());
    }
}

std::optional<int> int_or_auto(const Json& obj, const char* key, std::optional<int> fallback) {
    if (!obj.contains(key)) return fallback;
    const Json& v = obj.at(key);
    if (v.is_string() && v.get<std::string>() == "auto") return std::nullopt;
    if (v.is_number_integer()) return v.get<int>();
    throw ConfigError(std::string("config key '") + key + "' must be an integer or \"auto\"");
}

QuarterIndex parse_quarter(const Json& v, const char* what) {
    if (!v.is_string()) throw ConfigError(std::string(what) + " must be a quarter string like \"1997-Q1\"");
    try {
        return QuarterIndex::parse(v.get<std::string>());
    } catch (const DataError& e) {
        throw ConfigError(std::string(what) + ": " + e.what());
    }
}

VariableConfig parse_variable(const Json& v, const fs::path& base_dir, const std::string& where) {
    VariableConfig out;
    if (v.is_string()) {
        out.path = v.get<std::string>();
    } else if (v.is_object()) {
        if (!v.contains("path")) throw ConfigError(where + ": missing \"path\"");
        out.path = get_or<std::string>(v, "path", "");
        out.log = get_or(v, "log", true);
        out.deseasonalize = get_or(v, "deseasonalize", false);
        out.columns.quarter_column = get_or<std::string>(v, "quarter_column", "quarter");
        out.columns.value_column = get_or<std::string>(v, "value_column", "value");
        if (v.contains("adf")) {
            const Json& specs = v.at("adf");
            const auto add = [&](const Json& s) {
                if (!s.is_string()) throw ConfigError(where + ": adf specs must be strings");
                try {
                    out.adf.push_back(parse_deterministic(s.get<std::string>()));
                } catch (const DataError& e) {
                    throw ConfigError(where + ": " + e.what());
                }
            };
            if (specs.is_array()) {
                for (const auto& s : specs) add(s);
            } else {
                add(specs);
            }
        }
        out.difference = int_or_auto(v, "difference", std::nullopt);
        if (out.difference && (*out.difference < 0 || *out.difference > 2)) {
            throw ConfigError(where + ": difference must be 0, 1, 2 or \"auto\"");
        }
    } else {
        throw ConfigError(where + " must be a path or an object");
    }
    if (out.path.empty()) throw ConfigError(where + ": empty path");
    out.resolved = out.path.is_absolute() ? out.path : base_dir / out.path;
    return out;
}

Json variable_to_json(const VariableConfig& v) {
    Json specs = Json::array();
    for (auto d : v.adf) specs.push_back(std::string(to_string(d)));
    return {{"path", v.path.generic_string()},
            {"log", v.log},
            {"deseasonalize", v.deseasonalize},
            {"adf", std::move(specs)},
            {"difference", v.difference ? Json(*v.difference) : Json("auto")}};
}

// ---- per-country analysis -----------------------------------------------

struct PreparedVariable {
    QuarterlySeries stationary;
    Json report;
};

PreparedVariable prepare(const VariableConfig& vc, const std::string& name, const PipelineConfig& cfg,
                         std::vector<std::string>& warnings) {
    QuarterlySeries s = load_csv(vc.resolved, vc.columns);
    Json report{{"name", name}, {"source", vc.path.generic_string()}, {"raw", to_json(s, false)}};
    if (cfg.sample_start || cfg.sample_end) {
        const QuarterIndex lo = cfg.sample_start.value_or(s.start());
        const QuarterIndex hi = cfg.sample_end.value_or(s.end());
        if (hi < s.start() || s.end() < lo) {
            throw DataError(vc.path.generic_string() + ": no observations inside the configured sample");
        }
        s = s.slice(lo, hi);
    }
    s = s.relabeled(name);
    if (vc.log) s = log_transform(s);
    if (vc.deseasonalize) s = dummy_deseasonalize(s);

    const auto spec_for = [&](std::size_t d) {
        if (vc.adf.empty()) return Deterministic::constant;
        return vc.adf[std::min(d, vc.adf.size() - 1)];
    };
    IntegrationReport integ;
    if (vc.difference) {
        QuarterlySeries level = s;
        for (int d = 0; d <= *vc.difference; ++d) {
            if (d > 0) level = difference(level, 1);
            integ.levels.push_back(adf_test(level, spec_for(static_cast<std::size_t>(d))));
        }
        integ.order = *vc.difference;
        if (!integ.levels.back().reject_at_5pct) {
            warnings.push_back(name + ": ADF does not reject a unit root at 5% after " +
                               std::to_string(*vc.difference) + " difference(s)");
        }
    } else {
        integ = integration_order(s, vc.adf);
    }
    Json integ_json = to_json(integ);
    if (integ.levels.size() < 2) {
        // Level and first-difference results are both reported.
        Json extra = to_json(adf_test(difference(s, 1), spec_for(1)));
        extra["difference"] = 1;
        extra["informational"] = true;
        integ_json["tests"].push_back(std::move(extra));
    }
    report["integration"] = std::move(integ_json);
    report["difference_order"] = integ.order;
    report["difference_source"] = vc.difference ? "config" : "adf";
    QuarterlySeries stationary = integ.order > 0 ? difference(s, integ.order) : s;
    report["stationary"] = to_json(stationary, false);
    return {std::move(stationary), std::move(report)};
}

Json sample_json(const QuarterlySeries& s) {
    return {{"start", s.start().label()}, {"end", s.end().label()}, {"observations", s.size()}};
}

void analyse(const CountryConfig& c, const PipelineConfig& cfg, CountryOutcome& out, std::string& stage) {
    std::vector<std::string> warnings;
    Json& rep = out.report;

    stage = "ingest";
    PreparedVariable output = prepare(c.gdp, "output", cfg, warnings);
    PreparedVariable inflation = prepare(c.deflator, "inflation", cfg, warnings);
    rep["variables"] = Json::array({output.report, inflation.report});
    const std::vector<QuarterlySeries> both{output.stationary, inflation.stationary};
    const std::vector<QuarterlySeries> aligned = align(both);
    rep["sample"] = sample_json(aligned[0]);
    out.variables = {"output", "inflation"};

    stage = "lag_selection";
    std::optional<LagSelectionReport> selection;
    try {
        selection = select_lag(aligned, c.max_lag);
        rep["lag_selection"] = to_json(*selection);
    } catch (const DataError& e) {
        if (!c.lags) throw;
        warnings.push_back(std::string("lag selection skipped: ") + e.what());
        rep["lag_selection"] = nullptr;
    }
    const int p = c.lags ? *c.lags : selection->modal_choice;
    rep["lags"] = p;
    rep["lag_source"] = c.lags ? "config" : "modal";

    stage = "fit";
    const VarModel m = fit_var(aligned, p);
    rep["var"] = to_json(m);
    const LagExclusion top = lag_exclusion_test(m, p);
    rep["lag_exclusion"] = to_json(top);
    if (top.joint_p_value >= 0.05) {
        warnings.push_back("lag " + std::to_string(p) + " is not jointly significant (p = " +
                           std::to_string(top.joint_p_value) + ")");
    }

    stage = "stability";
    const StabilityReport stab = check_stability(m);
    rep["stability"] = to_json(stab);
    if (!stab.stable) {
        throw ModelError("VAR(" + std::to_string(p) + ") is not stable (largest root modulus " +
                         std::to_string(stab.moduli.front()) + "); impulse responses and shocks are not computed");
    }

    stage = "identification";
    const StructuralModel sm = identify_long_run(m, c.identify);
    rep["structural"] = to_json(sm);

    stage = "diagnostics";
    std::set<int> lm_set(cfg.lm_lags.begin(), cfg.lm_lags.end());
    lm_set.insert(p);
    const std::vector<int> lm_lags(lm_set.begin(), lm_set.end());
    const DiagnosticsReport diag = diagnose(sm, m, lm_lags);
    Json diag_json = to_json(diag);
    diag_json["lm_default_lag"] = p;
    rep["diagnostics"] = std::move(diag_json);
    if (diag.jb.joint_p_value < 0.05) warnings.push_back("structural residuals reject normality at 5%");
    if (diag.white.p_value < 0.05) warnings.push_back("White test rejects homoskedasticity at 5%");
    for (const auto& e : diag.lm) {
        if (e.lag == p && e.p_value < 0.05) {
            warnings.push_back("LM test rejects no autocorrelation at lag " + std::to_string(p) + " at 5%");
        }
    }

    stage = "irf";
    IrfResult irf = compute_irf(sm, m, c.horizon);
    rep["irf"] = to_json(irf, out.variables);
    out.irf = std::move(irf);

    stage = "shocks";
    ShockSeries shocks = recover_shocks(sm, m);
    rep["shocks"] = {{"file", "shocks/" + slug(c.name) + ".csv"},
                     {"start", shocks.start.label()},
                     {"end", shocks.end().label()},
                     {"observations", shocks.size()}};
    out.shocks = std::move(shocks);
    rep["warnings"] = warnings;
}

// ---- assembly ---------------------------------------------------------------

std::string iso_now() {
    const auto now = std::chrono::system_clock::now();
    const std::time_t t = std::chrono::system_clock::to_time_t(now);
    std::tm tm{};
    gmtime_r(&t, &tm);
    std::ostringstream s;
    s << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
    return s.str();
}

void write_text(const fs::path& path, const std::string& text, std::vector<fs::path>& written) {
    fs::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::binary);
    if (!out) throw DataError("cannot write '" + path.string() + "'");
    out << text;
    if (!out) throw DataError("failed writing '" + path.string() + "'");
    written.push_back(path);
}

std::string irf_svg(const std::string& country, const std::string& variable, std::size_t row, const IrfResult& irf) {
    const auto pick = [&](const std::vector<Eigen::MatrixXd>& mats, Eigen::Index col) {
        std::vector<double> v;
        for (const auto& mat : mats) v.push_back(mat(static_cast<Eigen::Index>(row), col));
        return v;
    };
    std::vector<Panel> panels;
    panels.push_back({"Response of " + variable + " to demand shock",
                      {{"response", pick(irf.responses, 0)}, {"cumulative", pick(irf.cumulative, 0)}}});
    panels.push_back({"Response of " + variable + " to supply shock",
                      {{"response", pick(irf.responses, 1)}, {"cumulative", pick(irf.cumulative, 1)}}});
    return render_line_chart(country + ": response of " + variable + " to structural innovations", panels);
}

}  // namespace

std::string slug(const std::string& name) {
    std::string out;
    for (unsigned char ch : name) out += std::isalnum(ch) ? static_cast<char>(std::tolower(ch)) : '_';
    return out.empty() ? "_" : out;
}

PipelineConfig parse_config(const Json& doc, const fs::path& base_dir) {
    if (!doc.is_object()) throw ConfigError("config must be a JSON object");
    PipelineConfig cfg;
    const int max_lag = get_or(doc, "max_lag", 8);
    const int horizon = get_or(doc, "horizon", 10);
    cfg.output_dir = get_or<std::string>(doc, "output_dir", "out");
    if (cfg.output_dir.is_relative()) cfg.output_dir = base_dir / cfg.output_dir;
    cfg.full_period = get_or<std::string>(doc, "full_period", "full");
    cfg.lm_lags = get_or(doc, "lm_lags", cfg.lm_lags);
    for (int h : cfg.lm_lags) {
        if (h < 1) throw ConfigError("lm_lags must be positive");
    }
    if (doc.contains("sample")) {
        const Json& s = doc.at("sample");
        if (s.contains("start")) cfg.sample_start = parse_quarter(s.at("start"), "sample.start");
        if (s.contains("end")) cfg.sample_end = parse_quarter(s.at("end"), "sample.end");
    }
    if (doc.contains("sub_periods")) {
        for (const auto& sp : doc.at("sub_periods")) {
            if (!sp.is_object() || !sp.contains("label") || !sp.contains("start") || !sp.contains("end")) {
                throw ConfigError("each sub-period needs label, start and end");
            }
            cfg.sub_periods.push_back({sp.at("label").get<std::string>(), parse_quarter(sp.at("start"), "sub-period start"),
                                       parse_quarter(sp.at("end"), "sub-period end")});
        }
    }
    if (!doc.contains("countries") || !doc.at("countries").is_array() || doc.at("countries").empty()) {
        throw ConfigError("config needs a non-empty \"countries\" array");
    }
    std::set<std::string> names;
    std::set<fs::path> paths;
    for (const auto& c : doc.at("countries")) {
        CountryConfig cc;
        cc.name = get_or<std::string>(c, "name", "");
        if (cc.name.empty()) throw ConfigError("every country needs a name");
        if (!names.insert(cc.name).second) throw ConfigError("duplicate country '" + cc.name + "'");
        if (!names.insert("#" + slug(cc.name)).second) {
            throw ConfigError("country names '" + cc.name + "' collide after file-name normalisation");
        }
        if (!c.contains("gdp") || !c.contains("deflator")) {
            throw ConfigError("country '" + cc.name + "' needs \"gdp\" and \"deflator\"");
        }
        cc.gdp = parse_variable(c.at("gdp"), base_dir, cc.name + ".gdp");
        cc.deflator = parse_variable(c.at("deflator"), base_dir, cc.name + ".deflator");
        for (const auto* v : {&cc.gdp, &cc.deflator}) {
            if (!paths.insert(v->resolved.lexically_normal()).second) {
                throw ConfigError("path '" + v->path.generic_string() + "' is referenced more than once");
            }
        }
        cc.lags = int_or_auto(c, "lags", std::nullopt);
        cc.max_lag = get_or(c, "max_lag", max_lag);
        cc.horizon = get_or(c, "horizon", horizon);
        cc.identify.flip_demand = get_or(c, "flip_demand", false);
        cc.identify.flip_supply = get_or(c, "flip_supply", false);
        if (cc.lags && *cc.lags < 1) throw ConfigError("country '" + cc.name + "': lags must be at least 1");
        if (cc.max_lag < 1) throw ConfigError("country '" + cc.name + "': max_lag must be at least 1");
        if (cc.horizon < 1) throw ConfigError("country '" + cc.name + "': horizon must be at least 1");
        cfg.countries.push_back(std::move(cc));
    }
    return cfg;
}

PipelineConfig load_config(const fs::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config '" + path.string() + "'");
    Json doc;
    try {
        doc = Json::parse(in, nullptr, true, true);
    } catch (const Json::parse_error& e) {
        throw ConfigError(path.string() + ": " + e.what());
    }
    return parse_config(doc, path.parent_path().empty() ? fs::path(".") : path.parent_path());
}

Json to_json(const PipelineConfig& cfg) {
    Json countries = Json::array();
    for (const auto& c : cfg.countries) {
        countries.push_back({{"name", c.name},
                             {"gdp", variable_to_json(c.gdp)},
                             {"deflator", variable_to_json(c.deflator)},
                             {"lags", c.lags ? Json(*c.lags) : Json("auto")},
                             {"max_lag", c.max_lag},
                             {"horizon", c.horizon},
                             {"flip_demand", c.identify.flip_demand},
                             {"flip_supply", c.identify.flip_supply}});
    }
    Json periods = Json::array();
    for (const auto& sp : cfg.sub_periods) {
        periods.push_back({{"label", sp.label}, {"start", sp.start.label()}, {"end", sp.end.label()}});
    }
    Json out{{"full_period", cfg.full_period}, {"sub_periods", std::move(periods)}, {"lm_lags", cfg.lm_lags}};
    if (cfg.sample_start) out["sample_start"] = cfg.sample_start->label();
    if (cfg.sample_end) out["sample_end"] = cfg.sample_end->label();
    out["countries"] = std::move(countries);
    return out;
}

CountryOutcome analyse_country(const CountryConfig& country, const PipelineConfig& cfg) {
    CountryOutcome out;
    out.name = country.name;
    out.report = Json::object();
    out.report["name"] = country.name;
    out.report["status"] = "ok";
    std::string stage;
    try {
        analyse(country, cfg, out, stage);
    } catch (const DataError& e) {
        out.status = CountryOutcome::Status::data_error;
        out.error = e.what();
    } catch (const ModelError& e) {
        out.status = CountryOutcome::Status::model_error;
        out.error = e.what();
    }
    if (out.status != CountryOutcome::Status::ok) {
        out.report["status"] = out.status == CountryOutcome::Status::data_error ? "data_error" : "model_error";
        out.report["failed_stage"] = stage;
        out.report["error"] = out.error;
        out.shocks.reset();
        out.irf.reset();
    }
    return out;
}

PipelineResult run_pipeline(const PipelineConfig& cfg, const RunOptions& options) {
    const std::size_t n = cfg.countries.size();
    std::vector<CountryOutcome> outcomes(n);
    const std::size_t batch = options.jobs == 0 ? n : options.jobs;
    for (std::size_t first = 0; first < n; first += batch) {
        std::vector<std::future<CountryOutcome>> running;
        for (std::size_t i = first; i < std::min(n, first + batch); ++i) {
            running.push_back(std::async(std::launch::async, [&cfg, i] { return analyse_country(cfg.countries[i], cfg); }));
        }
        for (std::size_t i = 0; i < running.size(); ++i) outcomes[first + i] = running[i].get();
    }

    // Single-writer assembly in configuration order.
    PipelineResult result;
    Json warnings = Json::array();
    Json countries = Json::array();
    bool data_failure = false;
    bool model_failure = false;
    std::vector<std::pair<std::string, ShockSeries>> panel_entries;
    for (auto& o : outcomes) {
        if (o.status == CountryOutcome::Status::data_error) data_failure = true;
        if (o.status == CountryOutcome::Status::model_error) model_failure = true;
        if (o.status != CountryOutcome::Status::ok) warnings.push_back(o.name + ": " + o.error);
        if (o.shocks) panel_entries.emplace_back(o.name, *o.shocks);
        countries.push_back(o.report);
    }

    Json correlations = nullptr;
    Json volatility = Json::array();
    std::string table;
    if (panel_entries.size() >= 2) {
        try {
            const ShockPanel panel(panel_entries, cfg.full_period, cfg.sub_periods);
            const CorrelationReport corr = correlation_report(panel);
            correlations = to_json(corr);
            correlations["layout"] = "table: demand below the diagonal, supply above";
            table = format_correlation_table(corr);
            for (const auto& period : panel.period_labels()) {
                Json entries = Json::array();
                for (const auto& v : shock_volatility(panel, period)) entries.push_back(to_json(v));
                volatility.push_back({{"period", period}, {"countries", std::move(entries)}});
            }
        } catch (const DataError& e) {
            data_failure = true;
            warnings.push_back(std::string("correlations: ") + e.what());
            correlations = {{"error", e.what()}};
        }
    } else {
        warnings.push_back("fewer than two countries produced shocks; correlations skipped");
    }

    result.exit_code = data_failure ? 2 : (model_failure ? 3 : 0);
    result.report = Json::object();
    result.report["schema"] = "svarkit.report/1";
    result.report["config"] = to_json(cfg);
    result.report["countries"] = std::move(countries);
    result.report["correlations"] = std::move(correlations);
    result.report["volatility"] = std::move(volatility);
    result.report["warnings"] = std::move(warnings);
    result.report["exit_code"] = result.exit_code;
    result.metadata = {{"tool", "svarkit"},
                       {"version", kVersion},
                       {"generated_at", iso_now()},
                       {"output_dir", cfg.output_dir.string()},
                       {"jobs", options.jobs == 0 ? n : options.jobs}};

    if (options.write_files) {
        const fs::path& dir = cfg.output_dir;
        fs::create_directories(dir);
        for (const auto& o : outcomes) {
            if (o.shocks) {
                std::ostringstream csv;
                write_shocks_csv(csv, *o.shocks);
                write_text(dir / "shocks" / (slug(o.name) + ".csv"), csv.str(), result.written);
            }
            if (o.irf) {
                for (std::size_t v = 0; v < o.variables.size(); ++v) {
                    write_text(dir / "figures" / (slug(o.name) + "_" + o.variables[v] + ".svg"),
                               irf_svg(o.name, o.variables[v], v, *o.irf), result.written);
                }
            }
        }
        if (!table.empty()) write_text(dir / "correlations.txt", table, result.written);
        write_text(dir / "report.json", result.report.dump(2) + "\n", result.written);
        write_text(dir / "report.meta.json", result.metadata.dump(2) + "\n", result.written);
    }
    return result;
}

}  // namespace svarkit::app
