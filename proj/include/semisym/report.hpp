#pragma once

#include <string>

#include "json.hpp"
#include "semisym/analysis.hpp"

namespace semisym {

nlohmann::ordered_json point_json(const AnalysisReport& report, const PointResult& point);
/// One object per point, in point-name order.
nlohmann::ordered_json report_json(const AnalysisReport& report);

std::string text_report(const AnalysisReport& report);
/// One line per point: name, Petrov type, branch.
std::string classification_summary(const AnalysisReport& report);

}  // namespace semisym
