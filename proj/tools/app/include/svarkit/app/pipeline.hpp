#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "svarkit/app/report.hpp"
#include "svarkit/error.hpp"
#include "svarkit/series.hpp"
#include "svarkit/shocks.hpp"
#include "svarkit/svar.hpp"
#include "svarkit/unit_root.hpp"

namespace svarkit::app {

/// Invalid configuration (CLI exit code 1).
class ConfigError : public Error {
public:
    using Error::Error;
};

struct VariableConfig {
    std::filesystem::path path;  // as written in the config
    std::filesystem::path resolved;
    ColumnSpec columns;
    bool log = true;
    bool deseasonalize = false;
    std::vector<Deterministic> adf;  // per differencing level; empty = constant
    std::optional<int> difference;   // nullopt = determine by ADF
};

struct CountryConfig {
    std::string name;
    VariableConfig gdp;
    VariableConfig deflator;
    std::optional<int> lags;  // nullopt = modal choice of the lag criteria
    int max_lag = 8;
    int horizon = 10;
    IdentifyOptions identify;
};

struct PipelineConfig {
    std::vector<CountryConfig> countries;
    std::string full_period = "full";
    std::vector<SubPeriod> sub_periods;
    std::optional<QuarterIndex> sample_start;
    std::optional<QuarterIndex> sample_end;
    std::vector<int> lm_lags{1, 2, 3, 4};
    std::filesystem::path output_dir = "out";
};

/// Relative paths resolve against `base_dir`. Throws ConfigError.
PipelineConfig parse_config(const Json& doc, const std::filesystem::path& base_dir);
PipelineConfig load_config(const std::filesystem::path& path);
Json to_json(const PipelineConfig& cfg);

struct CountryOutcome {
    std::string name;
    enum class Status { ok, data_error, model_error } status = Status::ok;
    std::string error;
    Json report;
    std::optional<ShockSeries> shocks;
    std::vector<std::string> variables;
    std::optional<IrfResult> irf;
};

/// Every stage for one country; never throws for data or model problems,
/// which are recorded in the outcome instead.
CountryOutcome analyse_country(const CountryConfig& country, const PipelineConfig& cfg);

struct PipelineResult {
    Json report;
    Json metadata;
    int exit_code = 0;  // 0 ok, 2 data error, 3 model error
    std::vector<std::filesystem::path> written;
};

struct RunOptions {
    unsigned jobs = 0;  // 0 = one task per country
    bool write_files = true;
};

/// Runs every country (concurrently), then assembles and writes
/// report.json, report.meta.json, figures/, shocks/ and correlations.txt.
PipelineResult run_pipeline(const PipelineConfig& cfg, const RunOptions& options = {});

/// Lower-case alphanumerics, everything else '_'.
std::string slug(const std::string& name);

}  // namespace svarkit::app
