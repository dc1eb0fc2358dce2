#pragma once

#include <string>
#include <string_view>

#include "json.hpp"
#include "tailix/montecarlo.hpp"

namespace tailix {

inline constexpr std::string_view kReportSchema = "tailix-report-v1";

nlohmann::json report_to_json(const ExperimentReport& report);
/// Inverse of report_to_json; Errc::parse on a schema mismatch.
ExperimentReport report_from_json(const nlohmann::json& doc);

/// Two-space indented JSON with every float printed as %.17g and non-finite
/// floats as null. Arrays of scalars stay on one line.
std::string dump_json(const nlohmann::json& doc);

std::string serialize_report(const ExperimentReport& report);
ExperimentReport parse_report(std::string_view text);

}  // namespace tailix
