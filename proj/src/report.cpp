#include "semisym/report.hpp"

#include <cstdio>
#include <sstream>

namespace semisym {

namespace {

using nlohmann::ordered_json;

// Adding 0.0 turns -0.0 into 0.0.
ordered_json complex_json(Complex z) { return ordered_json::array({z.real() + 0.0, z.imag() + 0.0}); }

ordered_json residual_json(const ResidualReport& r) {
  ordered_json j;
  j["value"] = r.residual;
  j["scale"] = r.scale;
  j["verdict"] = std::string(to_string(r.verdict));
  if (r.route_difference) j["route_difference"] = *r.route_difference;
  return j;
}

ordered_json optional_verdict(const std::optional<Verdict>& v) {
  return v ? ordered_json(std::string(to_string(*v))) : ordered_json(nullptr);
}

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", v);
  return buf;
}

}  // namespace

ordered_json point_json(const AnalysisReport& report, const PointResult& pr) {
  const PointEvidence& ev = pr.evidence;
  const ClassificationReport& c = pr.classification;
  ordered_json j;
  j["metric"] = report.metric;

  ordered_json point;
  point["name"] = pr.point.name;
  point["coords"] = ordered_json::array();
  for (double x : pr.point.coords) point["coords"].push_back(x);
  j["point"] = point;

  ordered_json res;
  res["semi"] = residual_json(ev.semi);
  res["conformal"] = residual_json(ev.conformal);
  res["ricci"] = residual_json(ev.ricci);
  res["second_order"] = residual_json(ev.second_order);
  res["nabla_riemann"] = residual_json(ev.nabla_riemann);
  j["residuals"] = res;

  j["petrov"] = std::string(to_string(ev.petrov));

  ordered_json np;
  np["psi"] = ordered_json::array();
  for (const auto& p : ev.np.psi) np["psi"].push_back(complex_json(p));
  np["phi"] = ordered_json::array();
  for (const auto& row : ev.np.phi) {
    ordered_json r = ordered_json::array();
    for (const auto& v : row) r.push_back(complex_json(v));
    np["phi"].push_back(r);
  }
  np["R"] = ev.np.R;
  j["np"] = np;

  ordered_json sc;
  const auto values = ev.spin.values();
  for (std::size_t i = 0; i < values.size(); ++i)
    sc[std::string(SpinCoefficients::kNames[i])] = complex_json(values[i]);
  j["spin_coefficients"] = sc;

  ordered_json cl;
  cl["branch"] = std::string(to_string(c.branch));
  cl["A"] = c.A;
  cl["B"] = c.B;
  ordered_json cons = ordered_json::object();
  for (const auto& [name, v] : c.constraints)
    cons[name] = {{"value", v.value}, {"scale", v.scale}, {"verdict", std::string(to_string(v.verdict))}};
  cl["constraints"] = cons;
  cl["recurrence"] = {{"k", optional_verdict(c.recurrence_k)}, {"l", optional_verdict(c.recurrence_l)}};
  cl["decomposability"] = optional_verdict(c.decomposability);
  cl["constant_null"] = optional_verdict(c.constant_null);
  cl["dec"] = c.dec ? ordered_json{{"violated", c.dec->violated}, {"samples", c.dec->samples}}
                    : ordered_json(nullptr);
  cl["purely_electric"] = c.purely_electric ? ordered_json(*c.purely_electric) : ordered_json(nullptr);
  if (c.warning) cl["warning"] = *c.warning;
  j["classification"] = cl;

  j["tolerances"] = {{"tol", report.options.tolerance.tol},
                     {"dead_band", report.options.tolerance.dead_band}};
  j["seed"] = report.options.seed;
  j["spinor_check"] = {{"weyl_condition_1", pr.spinor.weyl_condition_1},
                       {"weyl_condition_2", pr.spinor.weyl_condition_2},
                       {"ricci_commutator", pr.spinor.ricci_commutator},
                       {"scale", pr.spinor.scale}};
  return j;
}

ordered_json report_json(const AnalysisReport& report) {
  ordered_json arr = ordered_json::array();
  for (const auto& p : report.points) arr.push_back(point_json(report, p));
  return arr;
}

std::string text_report(const AnalysisReport& report) {
  std::ostringstream out;
  out << "metric " << report.metric << "\n";
  for (const auto& p : report.points) {
    const auto& ev = p.evidence;
    out << "\npoint " << p.point.name << " (";
    for (std::size_t i = 0; i < p.point.coords.size(); ++i) out << (i ? ", " : "") << p.point.coords[i];
    out << ")\n";
    for (const ResidualReport* r : {&ev.semi, &ev.conformal, &ev.ricci, &ev.second_order, &ev.nabla_riemann}) {
      out << "  " << r->condition << ": " << to_string(r->verdict) << "  residual " << fmt(r->residual)
          << " scale " << fmt(r->scale);
      if (r->route_difference) out << " route-diff " << fmt(*r->route_difference);
      out << "\n";
    }
    out << "  petrov " << to_string(ev.petrov) << "  R " << fmt(ev.np.R) << "\n";
    out << "  psi";
    for (const auto& z : ev.np.psi) out << " (" << fmt(z.real()) << "," << fmt(z.imag()) << ")";
    out << "\n  branch " << to_string(p.classification.branch);
    if (ev.petrov == PetrovType::D) out << "  A " << fmt(p.classification.A) << " B " << fmt(p.classification.B);
    out << "\n";
    if (p.classification.dec) out << "  dec " << (p.classification.dec->violated ? "violated" : "satisfied") << "\n";
    if (p.classification.warning) out << "  warning: " << *p.classification.warning << "\n";
  }
  return out.str();
}

std::string classification_summary(const AnalysisReport& report) {
  std::ostringstream out;
  for (const auto& p : report.points)
    out << report.metric << " " << p.point.name << " " << to_string(p.evidence.petrov) << " "
        << to_string(p.classification.branch) << "\n";
  return out.str();
}

}  // namespace semisym
