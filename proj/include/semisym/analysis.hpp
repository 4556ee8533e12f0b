#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "semisym/classifier.hpp"
#include "semisym/metric_file.hpp"

namespace semisym {

struct AnalysisOptions {
  Tolerance tolerance;
  std::uint64_t seed = 0;
  bool cross_validate = false;
  /// Restrict to one named point.
  std::optional<std::string> point;
};

/// Spinor-level residuals of the NP data, scale max(|Psi|, |Phi|, |R|)^2.
struct SpinorCheck {
  double weyl_condition_1 = 0.0;
  double weyl_condition_2 = 0.0;
  double ricci_commutator = 0.0;
  double scale = 0.0;
};

struct PointResult {
  SamplePoint point;
  PointEvidence evidence;
  ClassificationReport classification;
  SpinorCheck spinor;
};

struct AnalysisReport {
  std::string metric;
  AnalysisOptions options;
  std::vector<PointResult> points;  // sorted by point name
};

SpinorCheck spinor_check(const NPData& np);

/// Points run concurrently; results are assembled in name order.
AnalysisReport run_analysis(const MetricFile& file, const AnalysisOptions& opt = {});

}  // namespace semisym
