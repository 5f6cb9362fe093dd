#pragma once

#include <string>

#include <json.hpp>

#include "fredsing/classify.hpp"
#include "fredsing/config.hpp"
#include "fredsing/strata.hpp"
#include "fredsing/verify.hpp"

namespace fredsing {

inline constexpr const char* kReportSchema = "fredsing.report/1";

using Json = nlohmann::ordered_json;

Json to_json(const Eigen::VectorXd& v);
Json to_json(const Tolerances& tol);
Json to_json(const RouteEvidence& ev);
Json to_json(const Classification& c);
Json to_json(const Target& t);
Json to_json(const PropertyResult& p);
Json to_json(const StratumSample& s);
Json to_json(const StratificationRecord& r);
Json to_json(const TargetVerification& tv);

// Report skeleton: schema_version, command, config echo.
Json report_header(const std::string& command, const AnalysisConfig& config);

// Pretty (indent 2) or, with machine = true, one line. Both end in '\n' and
// print doubles in shortest round-trip form.
std::string dump_report(const Json& doc, bool machine);

}  // namespace fredsing
