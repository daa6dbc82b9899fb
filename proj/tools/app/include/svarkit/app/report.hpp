#pragma once

#include <vector>

#include <Eigen/Dense>
#include <json.hpp>

#include "svarkit/diagnostics.hpp"
#include "svarkit/series.hpp"
#include "svarkit/shocks.hpp"
#include "svarkit/svar.hpp"
#include "svarkit/unit_root.hpp"
#include "svarkit/var.hpp"

namespace svarkit::app {

using Json = nlohmann::ordered_json;

/// Row-major nested arrays.
Json to_json(const Eigen::MatrixXd& m);
Json to_json(const Eigen::VectorXd& v);

Json to_json(const QuarterlySeries& s, bool with_values);
Json to_json(const AdfResult& r);
Json to_json(const IntegrationReport& r);
Json to_json(const LagExclusion& e);
Json to_json(const LagSelectionReport& r);
Json to_json(const VarModel& m);
Json to_json(const StabilityReport& r);
Json to_json(const StructuralModel& sm);
/// Responses keyed "<variable>.<shock>", one entry per horizon.
Json to_json(const IrfResult& irf, const std::vector<std::string>& variables);
Json to_json(const NormalityBlock& jb);
Json to_json(const WhiteBlock& w);
Json to_json(const LmEntry& e);
Json to_json(const DiagnosticsReport& d);
Json to_json(const CorrelationReport& r);
Json to_json(const ShockVolatility& v);

}  // namespace svarkit::app
