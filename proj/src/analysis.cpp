#include "semisym/analysis.hpp"

#include <future>

#include "semisym/spinor.hpp"

namespace semisym {

SpinorCheck spinor_check(const NPData& np) {
  const SymSpinor psi = weyl_spinor(np.psi);
  const SymSpinor phi = ricci_spinor(np.phi);
  SpinorCheck s;
  s.weyl_condition_1 = check_weyl_condition_1(psi, np.R);
  s.weyl_condition_2 = check_weyl_condition_2(psi, phi);
  s.ricci_commutator = check_ricci_commutator(psi, phi, np.R);
  s.scale = np.scale() * np.scale();
  return s;
}

AnalysisReport run_analysis(const MetricFile& file, const AnalysisOptions& opt) {
  AnalysisReport report;
  report.metric = file.name;
  report.options = opt;

  std::vector<SamplePoint> points;
  for (const auto& p : file.field.points())
    if (!opt.point || p.name == *opt.point) points.push_back(p);
  if (opt.point && points.empty())
    throw MetricFileError("no point named '" + *opt.point + "'", 0, "points");

  ClassifyOptions copt;
  copt.tolerance = opt.tolerance;
  copt.seed = opt.seed;
  copt.cross_validate = opt.cross_validate;

  std::vector<std::future<PointResult>> jobs;
  for (const auto& p : points)
    jobs.push_back(std::async(std::launch::async, [&file, &copt, p] {
      PointResult r;
      r.point = p;
      const LocalGeometry geo(file.field, p, kMaxJetOrder);
      r.evidence = gather_evidence(geo, copt);
      r.classification = static_note(classify_evidence(r.evidence, p.name, copt.tolerance),
                                     file.declared_static);
      r.spinor = spinor_check(r.evidence.np);
      return r;
    }));
  // get() in name order so the first failing point decides the error.
  for (auto& j : jobs) report.points.push_back(j.get());
  return report;
}

}  // namespace semisym
