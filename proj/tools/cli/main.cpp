#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "svarkit/app/pipeline.hpp"
#include "svarkit/app/report.hpp"
#include "svarkit/app/svg.hpp"
#include "svarkit/diagnostics.hpp"
#include "svarkit/synth.hpp"

namespace fs = std::filesystem;
using namespace svarkit;
using app::Json;

namespace {

enum class Format { json, text };

struct Transform {
    bool log = false;
    int diff = 0;
    bool deseasonalize = false;
    std::string quarter_column = "quarter";
    std::string value_column = "value";
};

void add_transform_options(CLI::App* cmd, Transform& t) {
    cmd->add_flag("--log", t.log, "take natural logs first");
    cmd->add_option("--diff", t.diff, "difference order applied after the log")->check(CLI::Range(0, 2));
    cmd->add_flag("--deseasonalize", t.deseasonalize, "remove quarterly dummy means");
    cmd->add_option("--quarter-column", t.quarter_column);
    cmd->add_option("--value-column", t.value_column);
}

QuarterlySeries prepare(const fs::path& path, const Transform& t) {
    QuarterlySeries s = load_csv(path, {t.quarter_column, t.value_column}).relabeled(path.stem().string());
    if (t.log) s = log_transform(s);
    if (t.deseasonalize) s = dummy_deseasonalize(s);
    if (t.diff > 0) s = difference(s, t.diff);
    return s;
}

std::vector<QuarterlySeries> prepare_all(const std::vector<std::string>& paths, const Transform& t) {
    std::vector<QuarterlySeries> out;
    for (const auto& p : paths) out.push_back(prepare(p, t));
    return align(out);
}

void emit(Format fmt, const Json& j, const std::string& text) {
    if (fmt == Format::json) {
        std::cout << j.dump(2) << "\n";
    } else {
        std::cout << text;
    }
}

std::string fmt_num(double v, int prec = 4) {
    std::ostringstream s;
    s << std::fixed << std::setprecision(prec) << v;
    return s.str();
}

std::string matrix_text(const Eigen::MatrixXd& m) {
    std::ostringstream s;
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        s << "  ";
        for (Eigen::Index j = 0; j < m.cols(); ++j) s << std::setw(12) << fmt_num(m(i, j), 6);
        s << "\n";
    }
    return s.str();
}

std::string adf_text(const AdfResult& r, const std::string& what) {
    std::ostringstream s;
    s << what << ": ADF(" << to_string(r.spec) << ", lag " << r.lag_used << ") t = " << fmt_num(r.statistic, 3)
      << ", p = " << fmt_num(r.p_value, 4) << ", 5% cv " << fmt_num(r.critical_values.pct5, 3)
      << (r.reject_at_5pct ? "  reject unit root\n" : "  unit root not rejected\n");
    return s.str();
}

// Shared by fit, diagnose, irf and shocks.
struct VarInputs {
    std::vector<std::string> inputs;
    Transform transform;
    int lags = 0;
    int select_max = 8;
};

void add_var_options(CLI::App* cmd, VarInputs& v) {
    cmd->add_option("-i,--input", v.inputs, "CSV per variable (output first, then inflation)")
        ->required()
        ->check(CLI::ExistingFile);
    add_transform_options(cmd, v.transform);
    cmd->add_option("--lags", v.lags, "lag order; 0 picks the modal criterion choice")->check(CLI::NonNegativeNumber);
    cmd->add_option("--select-max", v.select_max, "largest lag considered by the criteria")->check(CLI::PositiveNumber);
}

struct Fitted {
    std::vector<QuarterlySeries> data;
    std::optional<LagSelectionReport> selection;
    VarModel model;
};

Fitted fit_from(const VarInputs& v) {
    Fitted f;
    f.data = prepare_all(v.inputs, v.transform);
    int p = v.lags;
    if (p == 0) {
        f.selection = select_lag(f.data, v.select_max);
        p = f.selection->modal_choice;
    }
    f.model = fit_var(f.data, p);
    return f;
}

StructuralModel identify_checked(const VarModel& m, const IdentifyOptions& opts) {
    const StabilityReport stab = check_stability(m);
    if (!stab.stable) {
        throw ModelError("VAR(" + std::to_string(m.p) + ") is not stable (largest root modulus " +
                         fmt_num(stab.moduli.front(), 6) + ")");
    }
    return identify_long_run(m, opts);
}

void write_file(const fs::path& path, const std::string& text) {
    if (path.has_parent_path()) fs::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::binary);
    if (!out || !(out << text)) throw DataError("cannot write '" + path.string() + "'");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App cli{"svarkit: long-run restricted structural VAR toolkit"};
    cli.require_subcommand(1);
    Format format = Format::text;
    const std::map<std::string, Format> formats{{"json", Format::json}, {"text", Format::text}};
    cli.add_option("--format", format, "json or text")->transform(CLI::CheckedTransformer(formats, CLI::ignore_case));

    // ingest
    std::string ingest_input;
    std::string ingest_output;
    Transform ingest_t;
    auto* ingest = cli.add_subcommand("ingest", "load, transform and summarise a quarterly CSV");
    ingest->add_option("input", ingest_input)->required()->check(CLI::ExistingFile);
    add_transform_options(ingest, ingest_t);
    ingest->add_option("-o,--output", ingest_output, "write the transformed series as CSV");

    // adf
    std::string adf_input;
    Transform adf_t;
    std::vector<std::string> adf_specs{"constant"};
    int adf_lag = -1;
    bool adf_order = false;
    auto* adf = cli.add_subcommand("adf", "augmented Dickey-Fuller test");
    adf->add_option("input", adf_input)->required()->check(CLI::ExistingFile);
    add_transform_options(adf, adf_t);
    adf->add_option("--spec", adf_specs, "none, constant or trend; one per differencing level with --order");
    adf->add_option("--lag", adf_lag, "fixed augmentation lag (default: Schwarz criterion)");
    adf->add_flag("--order", adf_order, "test levels, then differences, until a unit root is rejected");

    // fit
    VarInputs fit_v;
    auto* fit = cli.add_subcommand("fit", "select the lag order and estimate the reduced-form VAR");
    add_var_options(fit, fit_v);

    // diagnose
    VarInputs diag_v;
    std::vector<int> diag_lm{1, 2, 3, 4};
    auto* diag = cli.add_subcommand("diagnose", "normality, White and LM tests on the identified model");
    add_var_options(diag, diag_v);
    diag->add_option("--lm-lags", diag_lm)->check(CLI::PositiveNumber);

    // irf
    VarInputs irf_v;
    int irf_horizon = 10;
    bool irf_cumulative = false;
    std::string irf_svg;
    IdentifyOptions irf_id;
    auto* irf = cli.add_subcommand("irf", "structural impulse responses");
    add_var_options(irf, irf_v);
    irf->add_option("--horizon", irf_horizon)->check(CLI::PositiveNumber);
    irf->add_flag("--cumulative", irf_cumulative, "print accumulated responses");
    irf->add_option("--svg", irf_svg, "directory for one SVG per variable");
    irf->add_flag("--flip-demand", irf_id.flip_demand);
    irf->add_flag("--flip-supply", irf_id.flip_supply);

    // shocks
    VarInputs shock_v;
    std::string shock_out;
    IdentifyOptions shock_id;
    auto* shocks = cli.add_subcommand("shocks", "recover structural demand and supply shocks");
    add_var_options(shocks, shock_v);
    shocks->add_option("-o,--output", shock_out, "write the shocks CSV here");
    shocks->add_flag("--flip-demand", shock_id.flip_demand);
    shocks->add_flag("--flip-supply", shock_id.flip_supply);

    // correlate
    std::vector<std::string> corr_inputs;
    std::vector<std::string> corr_periods;
    std::string corr_full = "full";
    auto* corr = cli.add_subcommand("correlate", "cross-country shock correlations");
    corr->add_option("shocks", corr_inputs, "NAME=shocks.csv, one per country")->required();
    corr->add_option("--period", corr_periods, "LABEL:START:END, e.g. 2007-2015:2007-Q1:2015-Q4");
    corr->add_option("--full-label", corr_full);

    // simulate
    std::uint64_t sim_seed = 1;
    int sim_length = 200;
    int sim_burn = kDefaultBurnIn;
    std::string sim_out;
    std::string sim_start = "1997-Q1";
    bool sim_levels = false;
    auto* sim = cli.add_subcommand("simulate", "draw from the reference structural DGP");
    sim->add_option("--seed", sim_seed);
    sim->add_option("--length", sim_length)->check(CLI::PositiveNumber);
    sim->add_option("--burn-in", sim_burn)->check(CLI::NonNegativeNumber);
    sim->add_option("--start", sim_start);
    sim->add_option("-o,--out", sim_out, "directory for output.csv, inflation.csv and shocks.csv")->required();
    sim->add_flag("--levels", sim_levels, "write cumulated levels; difference once to recover the draws");

    // run
    std::string run_config;
    std::string run_outdir;
    unsigned run_jobs = 0;
    auto* run = cli.add_subcommand("run", "full pipeline from a JSON config");
    run->add_option("-c,--config", run_config)->required();
    run->add_option("-o,--output-dir", run_outdir, "overrides output_dir from the config");
    run->add_option("-j,--jobs", run_jobs, "countries analysed at once (0 = all)");

    try {
        cli.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = cli.exit(e);
        return rc == 0 ? 0 : 1;
    }

    try {
        if (*ingest) {
            const QuarterlySeries s = prepare(ingest_input, ingest_t);
            if (!ingest_output.empty()) save_csv(ingest_output, s);
            std::ostringstream t;
            t << s.label() << ": " << s.size() << " quarters " << s.start().label() << " to " << s.end().label()
              << (s.transform_log() ? ", log" : "") << ", difference order " << s.diff_order() << "\n";
            emit(format, app::to_json(s, true), t.str());
        } else if (*adf) {
            const QuarterlySeries s = prepare(adf_input, adf_t);
            std::vector<Deterministic> specs;
            for (const auto& sp : adf_specs) specs.push_back(parse_deterministic(sp));
            if (adf_order) {
                const IntegrationReport rep = integration_order(s, specs);
                std::string t;
                for (std::size_t d = 0; d < rep.levels.size(); ++d) {
                    t += adf_text(rep.levels[d], s.label() + " d=" + std::to_string(d));
                }
                t += "integration order " + std::to_string(rep.order) + "\n";
                emit(format, app::to_json(rep), t);
            } else {
                const auto lag = adf_lag >= 0 ? std::optional<int>(adf_lag) : std::nullopt;
                const AdfResult r = adf_test(s, specs.front(), lag);
                emit(format, app::to_json(r), adf_text(r, s.label()));
            }
        } else if (*fit) {
            const Fitted f = fit_from(fit_v);
            Json j{{"var", app::to_json(f.model)},
                   {"stability", app::to_json(check_stability(f.model))},
                   {"lag_exclusion", app::to_json(lag_exclusion_test(f.model, f.model.p))}};
            if (f.selection) j["lag_selection"] = app::to_json(*f.selection);
            std::ostringstream t;
            if (f.selection) {
                t << "lag choices: LR " << f.selection->lr_choice << ", FPE " << f.selection->fpe_choice << ", AIC "
                  << f.selection->aic_choice << ", SC " << f.selection->sc_choice << ", HQ " << f.selection->hq_choice
                  << " -> " << f.selection->modal_choice << "\n";
            }
            t << "VAR(" << f.model.p << "), " << f.model.t_eff << " observations from "
              << f.model.residual_start.label() << "\nintercept\n"
              << matrix_text(f.model.intercept);
            for (int i = 0; i < f.model.p; ++i) {
                t << "A" << i + 1 << "\n" << matrix_text(f.model.lag_coeffs[static_cast<std::size_t>(i)]);
            }
            t << "Sigma (ML)\n" << matrix_text(f.model.sigma_ml);
            const StabilityReport stab = check_stability(f.model);
            t << (stab.stable ? "stable" : "NOT stable") << ", largest root modulus " << fmt_num(stab.moduli.front(), 6)
              << "\n";
            emit(format, j, t.str());
        } else if (*diag) {
            const Fitted f = fit_from(diag_v);
            const StructuralModel sm = identify_checked(f.model, {});
            const DiagnosticsReport d = diagnose(sm, f.model, diag_lm);
            std::ostringstream t;
            t << "Jarque-Bera joint " << fmt_num(d.jb.joint_statistic, 3) << " (df " << d.jb.joint_df << "), p = "
              << fmt_num(d.jb.joint_p_value) << "\n";
            t << "White " << fmt_num(d.white.statistic, 3) << " (df " << d.white.df << "), p = "
              << fmt_num(d.white.p_value) << "\n";
            for (const auto& e : d.lm) {
                t << "LM(" << e.lag << ") " << fmt_num(e.statistic, 3) << " (df " << e.df << "), p = "
                  << fmt_num(e.p_value) << "\n";
            }
            emit(format, app::to_json(d), t.str());
        } else if (*irf) {
            const Fitted f = fit_from(irf_v);
            const StructuralModel sm = identify_checked(f.model, irf_id);
            const IrfResult r = compute_irf(sm, f.model, irf_horizon);
            const auto& paths = irf_cumulative ? r.cumulative : r.responses;
            std::ostringstream t;
            t << "B\n" << matrix_text(sm.impact) << "F\n" << matrix_text(sm.long_run);
            t << (irf_cumulative ? "cumulative " : "") << "responses (variable.shock)\n   h";
            for (const auto& v : f.model.labels) t << std::setw(14) << v + ".d" << std::setw(14) << v + ".s";
            t << "\n";
            for (int h = 0; h < r.horizon; ++h) {
                t << std::setw(4) << h;
                const auto& m = paths[static_cast<std::size_t>(h)];
                for (Eigen::Index i = 0; i < m.rows(); ++i) {
                    t << std::setw(14) << fmt_num(m(i, 0), 6) << std::setw(14) << fmt_num(m(i, 1), 6);
                }
                t << "\n";
            }
            if (!irf_svg.empty()) {
                for (std::size_t v = 0; v < f.model.labels.size(); ++v) {
                    const auto row = static_cast<Eigen::Index>(v);
                    std::vector<app::Panel> panels;
                    for (Eigen::Index s = 0; s < 2; ++s) {
                        app::Panel p{std::string("Response of ") + f.model.labels[v] + " to " +
                                         (s == 0 ? "demand" : "supply") + " shock",
                                     {{"response", {}}, {"cumulative", {}}}};
                        for (int h = 0; h < r.horizon; ++h) {
                            p.lines[0].values.push_back(r.responses[static_cast<std::size_t>(h)](row, s));
                            p.lines[1].values.push_back(r.cumulative[static_cast<std::size_t>(h)](row, s));
                        }
                        panels.push_back(std::move(p));
                    }
                    write_file(fs::path(irf_svg) / (f.model.labels[v] + ".svg"),
                               app::render_line_chart("Impulse responses: " + f.model.labels[v], panels));
                }
            }
            Json j{{"structural", app::to_json(sm)}, {"irf", app::to_json(r, f.model.labels)}};
            emit(format, j, t.str());
        } else if (*shocks) {
            const Fitted f = fit_from(shock_v);
            const StructuralModel sm = identify_checked(f.model, shock_id);
            const ShockSeries u = recover_shocks(sm, f.model);
            std::ostringstream csv;
            write_shocks_csv(csv, u);
            if (!shock_out.empty()) write_file(shock_out, csv.str());
            Json j{{"start", u.start.label()}, {"end", u.end().label()}, {"demand", u.demand}, {"supply", u.supply}};
            emit(format, j, shock_out.empty() ? csv.str() : "wrote " + std::to_string(u.size()) + " quarters to " +
                                                                shock_out + "\n");
        } else if (*corr) {
            std::vector<std::pair<std::string, ShockSeries>> entries;
            for (const auto& item : corr_inputs) {
                const auto eq = item.find('=');
                if (eq == std::string::npos || eq == 0) throw app::ConfigError("expected NAME=path, got '" + item + "'");
                entries.emplace_back(item.substr(0, eq), load_shocks_csv(item.substr(eq + 1)));
            }
            std::vector<SubPeriod> periods;
            for (const auto& p : corr_periods) {
                const auto a = p.find(':');
                const auto b = p.rfind(':');
                if (a == std::string::npos || a == b) throw app::ConfigError("expected LABEL:START:END, got '" + p + "'");
                periods.push_back({p.substr(0, a), QuarterIndex::parse(p.substr(a + 1, b - a - 1)),
                                   QuarterIndex::parse(p.substr(b + 1))});
            }
            const ShockPanel panel(std::move(entries), corr_full, std::move(periods));
            const CorrelationReport rep = correlation_report(panel);
            emit(format, app::to_json(rep), format_correlation_table(rep));
        } else if (*sim) {
            const Simulation s =
                simulate(reference_dgp(sim_seed), sim_length, sim_burn, QuarterIndex::parse(sim_start));
            const fs::path dir(sim_out);
            fs::create_directories(dir);
            Json files = Json::array();
            for (const auto& series : s.series) {
                QuarterlySeries out = series;
                if (sim_levels) {
                    // One leading zero so differencing returns every draw.
                    std::vector<double> level{0.0};
                    for (double v : series.values()) level.push_back(level.back() + v);
                    out = QuarterlySeries(series.label(), series.start().advanced(-1), std::move(level));
                }
                const fs::path path = dir / (series.label() + ".csv");
                save_csv(path, out);
                files.push_back(path.string());
            }
            save_shocks_csv(dir / "shocks.csv", s.shocks);
            files.push_back((dir / "shocks.csv").string());
            emit(format, {{"seed", sim_seed}, {"length", sim_length}, {"levels", sim_levels}, {"files", files}},
                 "wrote " + std::to_string(files.size()) + " files to " + dir.string() + "\n");
        } else if (*run) {
            app::PipelineConfig cfg = app::load_config(run_config);
            if (!run_outdir.empty()) cfg.output_dir = run_outdir;
            const app::PipelineResult r = app::run_pipeline(cfg, {run_jobs, true});
            std::ostringstream t;
            for (const auto& c : r.report["countries"]) {
                t << c["name"].get<std::string>() << ": " << c["status"].get<std::string>();
                if (c.contains("lags")) t << ", VAR(" << c["lags"].get<int>() << ")";
                if (c.contains("error")) t << " at " << c["failed_stage"].get<std::string>() << ": "
                                           << c["error"].get<std::string>();
                t << "\n";
                if (c.contains("warnings")) {
                    for (const auto& w : c["warnings"]) t << "  warning: " << w.get<std::string>() << "\n";
                }
            }
            const fs::path table = cfg.output_dir / "correlations.txt";
            if (fs::exists(table)) {
                std::ifstream in(table);
                t << "\n" << in.rdbuf();
            }
            t << "\nreport written to " << (cfg.output_dir / "report.json").string() << "\n";
            emit(format, r.report, t.str());
            for (const auto& c : r.report["countries"]) {
                if (c.contains("error")) {
                    std::cerr << "svarkit: " << c["name"].get<std::string>() << ": " << c["error"].get<std::string>()
                              << "\n";
                }
            }
            return r.exit_code;
        }
    } catch (const app::ConfigError& e) {
        std::cerr << "svarkit: configuration error: " << e.what() << "\n";
        return 1;
    } catch (const DataError& e) {
        std::cerr << "svarkit: data error: " << e.what() << "\n";
        return 2;
    } catch (const ModelError& e) {
        std::cerr << "svarkit: model error: " << e.what() << "\n";
        return 3;
    } catch (const fs::filesystem_error& e) {
        std::cerr << "svarkit: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
