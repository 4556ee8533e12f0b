#include <chrono>
#include <cstdio>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "semisym/analysis.hpp"
#include "semisym/corpus.hpp"
#include "semisym/report.hpp"
#include "semisym/spinor.hpp"

using namespace semisym;

namespace {

enum ExitCode { kOk = 0, kInput = 1, kDegenerate = 2, kTetrad = 3, kTheorem = 4 };

struct AnalyzeArgs {
  std::string file;
  std::string point;
  bool all_points = false;
  double tol = 1e-9;
  bool json = false;
  std::uint64_t seed = 0;
  bool cross_validate = false;
};

AnalysisOptions options_from(const AnalyzeArgs& a) {
  AnalysisOptions o;
  o.tolerance.tol = a.tol;
  o.seed = a.seed;
  o.cross_validate = a.cross_validate;
  if (!a.point.empty()) o.point = a.point;
  return o;
}

int analyze(const AnalyzeArgs& a) {
  const MetricFile file = load_metric_file(a.file);
  const AnalysisReport report = run_analysis(file, options_from(a));
  if (a.json) {
    const auto j = report_json(report);
    std::cout << (a.point.empty() ? j : j.at(0)).dump(2) << "\n";
  } else {
    std::cout << text_report(report);
  }
  return kOk;
}

int classify(const std::string& path, double tol) {
  AnalysisOptions o;
  o.tolerance.tol = tol;
  std::cout << classification_summary(run_analysis(load_metric_file(path), o));
  return kOk;
}

int corpus_list() {
  for (const auto& e : builtin_corpus()) {
    const MetricFile f = parse_metric_file(e.text, std::string(e.name));
    std::cout << e.name << "  " << f.field.points().size() << " points  expect "
              << (f.expect.count("branch") ? f.expect.at("branch") : "-") << "\n";
  }
  return kOk;
}

/// Compares every point against the [expect] record.
int corpus_run() {
  const auto start = std::chrono::steady_clock::now();
  int mismatches = 0;
  for (const auto& e : builtin_corpus()) {
    const MetricFile f = parse_metric_file(e.text, std::string(e.name));
    const AnalysisReport r = run_analysis(f);
    int bad = 0;
    for (const auto& p : r.points) {
      auto check = [&](const std::string& key, std::string_view got) {
        const auto it = f.expect.find(key);
        if (it == f.expect.end() || it->second == got) return;
        ++bad;
        std::cout << "  " << e.name << "/" << p.point.name << ": " << key << " expected " << it->second
                  << ", got " << got << "\n";
      };
      check("branch", to_string(p.classification.branch));
      check("semi", to_string(p.evidence.semi.verdict));
      check("conformal", to_string(p.evidence.conformal.verdict));
      check("ricci", to_string(p.evidence.ricci.verdict));
      check("second_order", to_string(p.evidence.second_order.verdict));
    }
    std::cout << (bad ? "FAIL " : "ok   ") << e.name << " (" << r.points.size() << " points)\n";
    mismatches += bad;
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  std::printf("corpus run: %d mismatches, %.2f s\n", mismatches, secs);
  return mismatches ? kInput : kOk;
}

int lemmas() {
  int failures = 0;
  auto line = [&](const std::string& what, double residual, bool expect_zero) {
    const bool pass = expect_zero ? residual <= 1e-13 : residual >= 1e-3;
    if (!pass) ++failures;
    std::printf("%-4s %-58s %.3e\n", pass ? "ok" : "FAIL", what.c_str(), residual);
  };
  for (auto branch : {ConditionBranch::N, ConditionBranch::D}) {
    const ConditionData d = make_condition_data(branch, 1.0);
    const std::string tag = branch == ConditionBranch::N ? "type N data: " : "type D data: ";
    line(tag + "X_AB(C^G Psi_DEF)G = 0", check_weyl_condition_1(d.psi, d.R), true);
    line(tag + "contracted condition", check_contracted_condition(d.psi, d.R), true);
    line(tag + "Phi_A'B'(C^G Psi_DEF)G = 0", check_weyl_condition_2(d.psi, d.phi), true);
    line(tag + "Box_AB Phi_CDC'D' = 0", check_ricci_commutator(d.psi, d.phi, d.R), true);
  }
  const std::pair<const char*, WeylScalars> others[] = {
      {"type I", {1.0, 0.0, 1.0, 0.0, 1.0}},
      {"type II", {0.0, 0.0, 1.0, 1.0, 0.0}},
      {"type III", {0.0, 0.0, 0.0, 1.0, 0.0}}};
  for (const auto& [name, psi] : others)
    line(std::string(name) + " data: contracted condition at best R",
         contracted_condition_best_residual(weyl_spinor(psi)), false);
  {
    ConditionData d = make_condition_data(ConditionBranch::D, 1.0);
    line("type D data with R = 0: Box_AB Phi_CDC'D'", check_ricci_commutator(d.psi, d.phi, 0.0), false);
  }
  std::printf("%d failures\n", failures);
  return failures ? kTheorem : kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Curvature, Newman-Penrose data and semi-symmetry checks for closed-form metrics"};
  app.require_subcommand(1);

  AnalyzeArgs an;
  auto* analyze_cmd = app.add_subcommand("analyze", "Full analysis of a metric file (or corpus:NAME)");
  analyze_cmd->add_option("file", an.file, "metric file")->required();
  auto* point_opt = analyze_cmd->add_option("--point", an.point, "only this point");
  analyze_cmd->add_flag("--all-points", an.all_points, "every declared point (default)")->excludes(point_opt);
  analyze_cmd->add_option("--tol", an.tol, "relative tolerance")->check(CLI::PositiveNumber);
  analyze_cmd->add_flag("--json", an.json, "JSON report");
  analyze_cmd->add_option("--seed", an.seed, "seed for sampled checks");
  analyze_cmd->add_flag("--cross-validate", an.cross_validate, "also run the direct second-derivative route");

  std::string classify_file;
  double classify_tol = 1e-9;
  auto* classify_cmd = app.add_subcommand("classify", "Branch summary per point");
  classify_cmd->add_option("file", classify_file, "metric file")->required();
  classify_cmd->add_option("--tol", classify_tol, "relative tolerance")->check(CLI::PositiveNumber);

  auto* corpus_cmd = app.add_subcommand("corpus", "Built-in corpus");
  corpus_cmd->require_subcommand(1);
  auto* list_cmd = corpus_cmd->add_subcommand("list", "List corpus metrics");
  auto* run_cmd = corpus_cmd->add_subcommand("run", "Golden-record regression over the corpus");

  auto* lemmas_cmd = app.add_subcommand("lemmas", "Spinor identities behind the type D/N restriction");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kOk : kInput;
  }

  try {
    if (*analyze_cmd) return analyze(an);
    if (*classify_cmd) return classify(classify_file, classify_tol);
    if (*list_cmd) return corpus_list();
    if (*run_cmd) return corpus_run();
    if (*lemmas_cmd) return lemmas();
  } catch (const TheoremViolationError& e) {
    std::cerr << "theorem violation: " << e.what() << "\n";
    return kTheorem;
  } catch (const InvalidTetradError& e) {
    std::cerr << "invalid tetrad: " << e.what() << "\n";
    return kTetrad;
  } catch (const MissingTetradError& e) {
    std::cerr << "invalid tetrad: " << e.what() << "\n";
    return kTetrad;
  } catch (const DegenerateMetricError& e) {
    std::cerr << "degenerate metric: " << e.what() << "\n";
    return kDegenerate;
  } catch (const MetricFileError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInput;
  } catch (const DomainError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInput;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInput;
  }
  return kOk;
}
