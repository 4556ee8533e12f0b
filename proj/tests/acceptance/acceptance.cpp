// Acceptance gate: one PASS/FAIL line per criterion, non-zero exit on any failure.
#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "semisym/analysis.hpp"
#include "semisym/corpus.hpp"
#include "semisym/spinor.hpp"

using namespace semisym;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    if (!ok && pass) detail = what;
    pass = pass && ok;
  }
};

AnalysisReport analyze(const std::string& name, std::uint64_t seed = 0, bool cross = false) {
  AnalysisOptions opt;
  opt.seed = seed;
  opt.cross_validate = cross;
  return run_analysis(load_metric_file("corpus:" + name), opt);
}

std::vector<std::string> corpus_names() {
  std::vector<std::string> out;
  for (const auto& e : builtin_corpus()) out.emplace_back(e.name);
  return out;
}

double weyl_size(const PointResult& p) {
  double s = 0;
  for (const auto& v : p.evidence.np.psi) s = std::max(s, std::abs(v));
  return s;
}

bool weyl_above_tolerance(const PointResult& p) { return weyl_size(p) > 1e-9 * std::max(1.0, p.evidence.np.scale()); }

std::string at(const std::string& metric, const PointResult& p) { return metric + "/" + p.point.name; }

Outcome spinor_conditions() {
  Outcome o;
  for (auto branch : {ConditionBranch::N, ConditionBranch::D}) {
    const ConditionData d = make_condition_data(branch, 1.0);
    o.require(check_weyl_condition_1(d.psi, d.R) <= 1e-13, "first Weyl condition on condition data");
    o.require(check_contracted_condition(d.psi, d.R) <= 1e-13, "contracted condition on condition data");
    o.require(check_weyl_condition_2(d.psi, d.phi) <= 1e-13, "second Weyl condition on condition data");
  }
  const WeylScalars others[] = {{1, 0, 1, 0, 1}, {0, 0, 1, 1, 0}, {0, 0, 0, 1, 0}};
  for (const auto& psi : others) {
    const SymSpinor s = weyl_spinor(psi);
    o.require(contracted_condition_best_residual(s) >= 1e-3 * s.max_abs() * s.max_abs(),
              "type I/II/III satisfies the contracted condition");
  }
  return o;
}

Outcome ricci_commutator() {
  Outcome o;
  for (auto branch : {ConditionBranch::N, ConditionBranch::D}) {
    const ConditionData d = make_condition_data(branch, 1.0);
    o.require(check_ricci_commutator(d.psi, d.phi, d.R) <= 1e-13, "Ricci commutator on condition data");
  }
  const ConditionData d = make_condition_data(ConditionBranch::D, 1.0);
  o.require(check_ricci_commutator(d.psi, d.phi, 0.0) >= 1e-3, "Ricci commutator vanishes for type D with R = 0");
  return o;
}

Outcome semi_equals_conformal() {
  Outcome o;
  for (const auto& name : corpus_names()) {
    const AnalysisReport r = analyze(name);
    int counted = 0;
    for (const auto& p : r.points) {
      if (!weyl_above_tolerance(p)) continue;
      ++counted;
      o.require(p.evidence.semi.verdict == p.evidence.conformal.verdict, "semi != conformal at " + at(name, p));
      const bool expect_hold = name != "schwarzschild";
      const Verdict want = expect_hold ? Verdict::Holds : Verdict::Fails;
      o.require(p.evidence.semi.verdict == want && p.evidence.conformal.verdict == want,
                "unexpected verdict at " + at(name, p));
    }
    o.require(counted == 0 || counted >= 5, name + " has fewer than 5 curved points");
  }
  return o;
}

Outcome only_d_or_n() {
  Outcome o;
  for (const auto& name : corpus_names()) {
    try {
      for (const auto& p : analyze(name).points) {
        if (p.evidence.semi.verdict != Verdict::Holds || !weyl_above_tolerance(p)) continue;
        const PetrovType t = p.classification.petrov;
        o.require(t == PetrovType::D || t == PetrovType::N, "type " + std::string(to_string(t)) + " at " + at(name, p));
      }
    } catch (const TheoremViolationError& e) {
      o.require(false, name + ": " + e.what());
    }
  }
  return o;
}

Outcome np_patterns() {
  Outcome o;
  for (const auto& p : analyze("nariai").points) {
    const NPData& np = p.evidence.np;
    const double s = np.scale();
    o.require(std::abs(np.R + 12.0 * np.psi[2]) <= 1e-9 * s, "R != -12 Psi2 at " + at("nariai", p));
    for (std::size_t i : {0, 1, 3, 4}) o.require(std::abs(np.psi[i]) <= 1e-9 * s, "Psi" + std::to_string(i) + " nonzero");
    for (std::size_t i = 0; i < 3; ++i)
      for (std::size_t j = 0; j < 3; ++j)
        if (i != 1 || j != 1) o.require(std::abs(np.phi[i][j]) <= 1e-9 * s, "extra Phi at " + at("nariai", p));
    o.require(std::abs(np.psi[2]) > 1e-9 * s, "Psi2 vanishes at " + at("nariai", p));
  }
  for (const char* name : {"ppwave_linear", "ppwave_quadratic_u"})
    for (const auto& p : analyze(name).points) {
      const NPData& np = p.evidence.np;
      const double s = np.scale();
      o.require(std::abs(np.R) <= 1e-9 * s, "R nonzero at " + at(name, p));
      for (std::size_t i : {0, 1, 2, 3}) o.require(std::abs(np.psi[i]) <= 1e-9 * s, "Psi" + std::to_string(i) + " nonzero at " + at(name, p));
      for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j)
          if (i != 2 || j != 2) o.require(std::abs(np.phi[i][j]) <= 1e-9 * s, "extra Phi at " + at(name, p));
      o.require(std::abs(np.psi[4]) > 1e-9 * s && std::abs(np.phi[2][2]) > 1e-9 * s, "Psi4 or Phi22 vanishes");
    }
  return o;
}

Outcome product_recurrence() {
  Outcome o;
  const char* products[] = {"A_sigma", "A_lambda", "A_mu", "A_rho", "B_kappa", "B_nu", "B_pi", "B_tau"};
  for (const char* name : {"nariai", "product2x2"})
    for (const auto& p : analyze(name).points) {
      const ClassificationReport& c = p.classification;
      for (const char* k : products)
        o.require(c.constraints.count(k) && c.constraints.at(k).value <= 1e-9 * c.constraints.at(k).scale,
                  std::string(k) + " at " + at(name, p));
      const auto& ev = p.evidence;
      o.require(ev.recurrence_k && ev.recurrence_k->residual <= 1e-9 * ev.recurrence_k->scale, "k not recurrent at " + at(name, p));
      o.require(ev.recurrence_l && ev.recurrence_l->residual <= 1e-9 * ev.recurrence_l->scale, "l not recurrent at " + at(name, p));
      o.require(ev.decomposability && ev.decomposability->residual <= 1e-9 * ev.decomposability->scale,
                "nabla(k l) nonzero at " + at(name, p));
    }
  return o;
}

Outcome ppwave_split() {
  Outcome o;
  for (const char* name : {"ppwave_linear", "ppwave_quadratic_u"}) {
    const bool linear = std::string(name) == "ppwave_linear";
    for (const auto& p : analyze(name).points) {
      const auto& ev = p.evidence;
      const auto& so = ev.second_order;
      if (linear) {
        o.require(so.verdict == Verdict::Holds, "second-order symmetry fails at " + at(name, p));
        o.require(ev.constant_null && ev.constant_null->verdict == Verdict::Holds, "k not constant at " + at(name, p));
      } else {
        o.require(so.residual >= 1e-3 * so.scale, "second-order symmetry holds at " + at(name, p));
        o.require(ev.semi.verdict == Verdict::Holds, "semi-symmetry fails at " + at(name, p));
      }
      const auto& c = p.classification.constraints;
      o.require(c.at("kappa").verdict == Verdict::Holds, "kappa at " + at(name, p));
      o.require(c.at("sigma_psi4_minus_rho_phi22").verdict == Verdict::Holds, "sigma Psi4 - rho Phi22 at " + at(name, p));
    }
  }
  return o;
}

Outcome routes_agree() {
  Outcome o;
  double worst = 0;
  for (const auto& name : corpus_names())
    for (const auto& p : analyze(name, 0, true).points)
      for (const ResidualReport* r : {&p.evidence.semi, &p.evidence.conformal, &p.evidence.ricci}) {
        const bool has = r->route_difference.has_value();
        o.require(has, "no route difference for " + r->condition);
        if (!has) continue;
        const double rel = *r->route_difference / std::max(r->scale, 1e-14);
        worst = std::max(worst, rel);
        o.require(rel <= 1e-7, r->condition + " routes differ at " + at(name, p));
      }
  char buf[64];
  std::snprintf(buf, sizeof buf, "worst relative difference %.1e", worst);
  if (o.pass) o.detail = buf;
  return o;
}

Complex random_complex(std::mt19937_64& rng, double spread) {
  std::uniform_real_distribution<double> u(-spread, spread);
  return {u(rng), u(rng)};
}

Outcome petrov_oracle() {
  Outcome o;
  std::mt19937_64 rng(9);
  static const std::vector<int> kPatterns[] = {{1, 1, 1, 1}, {2, 1, 1}, {2, 2}, {3, 1}, {4}};
  const PetrovType kTypes[] = {PetrovType::I, PetrovType::II, PetrovType::D, PetrovType::III, PetrovType::N};
  for (int trial = 0; trial < 1000; ++trial) {
    const std::size_t which = static_cast<std::size_t>(trial % 5);
    std::vector<Complex> distinct;
    while (distinct.size() < kPatterns[which].size()) {
      const Complex r = random_complex(rng, 2.0);
      bool far = true;
      for (Complex d : distinct) far = far && std::abs(r - d) > 0.3;
      if (far) distinct.push_back(r);
    }
    std::vector<Complex> c = {random_complex(rng, 1.0) + 1.5};
    for (std::size_t i = 0; i < distinct.size(); ++i)
      for (int m = 0; m < kPatterns[which][i]; ++m) {
        std::vector<Complex> next(c.size() + 1, 0.0);
        for (std::size_t j = 0; j < c.size(); ++j) {
          next[j + 1] += c[j];
          next[j] -= distinct[i] * c[j];
        }
        c = next;
      }
    const WeylScalars psi = {c[0], c[1] / 4.0, c[2] / 6.0, c[3] / 4.0, c[4]};
    const PetrovType fast = petrov_classify(psi), roots = petrov_classify_by_roots(psi);
    o.require(fast == roots && fast == kTypes[which], "trial " + std::to_string(trial) + ": invariants " + std::string(to_string(fast)) + ", roots " + std::string(to_string(roots)) + ", built " + std::string(to_string(kTypes[which])));
  }
  const WeylScalars canonical[] = {{1, 0, 1, 0, 1}, {0, 0, 1, 1, 0}, {0, 0, 1, 0, 0}, {0, 0, 0, 1, 0}, {0, 0, 0, 0, 1}};
  for (const auto& psi : canonical) {
    const PetrovType t = petrov_classify(psi);
    for (int trial = 0; trial < 100; ++trial) {
      WeylScalars moved = null_rotate(psi, random_complex(rng, 0.8), NullRotation::AboutK);
      moved = null_rotate(moved, random_complex(rng, 0.8), NullRotation::AboutL);
      moved = null_rotate(moved, random_complex(rng, 0.4) + 1.0, NullRotation::BoostSpin);
      o.require(petrov_classify(moved) == t, "type changed under a tetrad transform");
    }
  }
  return o;
}

Outcome dominant_energy() {
  Outcome o;
  TensorValue g = TensorValue::all_down(2);
  g.at({0, 0}) = 1;
  for (int i = 1; i < 4; ++i) g.at({i, i}) = -1;
  const double s = 1 / std::sqrt(2.0);
  const ComplexVector m_down = {0, 0, Complex(-s, 0), Complex(0, -s)};
  const ComplexVector future = {1, 0, 0, 0};
  TensorValue G = TensorValue::all_down(2);
  const double A = 1.0;
  for (int a = 0; a < kDim; ++a)
    for (int b = 0; b < kDim; ++b) {
      const auto ua = static_cast<std::size_t>(a), ub = static_cast<std::size_t>(b);
      G.at({a, b}) = -A * 0.5 * (m_down[ua] * std::conj(m_down[ub]) + std::conj(m_down[ua]) * m_down[ub]);
    }
  o.require(dec_check(G, g, future, 7).violated, "synthetic B = 0 tensor not flagged");
  for (const char* name : {"minkowski", "ppwave_linear", "ppwave_quadratic_u"})
    for (const auto& p : analyze(name, 7).points) {
      o.require(p.classification.dec && !p.classification.dec->violated, "DEC flagged at " + at(name, p));
      if (std::string(name) != "minkowski")
        o.require(p.evidence.np.phi[2][2].real() > 0, "Phi22 not positive at " + at(name, p));
    }
  return o;
}

std::string run_capture(const std::string& cmd, int& status) {
  std::string out;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) {
    status = -1;
    return out;
  }
  std::array<char, 4096> buf;
  std::size_t n;
  while ((n = std::fread(buf.data(), 1, buf.size(), pipe)) > 0) out.append(buf.data(), n);
  status = pclose(pipe);
  return out;
}

Outcome cli_determinism() {
  Outcome o;
#ifdef SEMISYM_CLI
  const std::string cli = SEMISYM_CLI;
  for (const auto& name : corpus_names()) {
    const std::string cmd = cli + " analyze corpus:" + name + " --json --seed 7";
    int s1 = 0, s2 = 0;
    const std::string a = run_capture(cmd, s1), b = run_capture(cmd, s2);
    o.require(s1 == 0 && s2 == 0 && !a.empty(), "analyze failed for " + name);
    o.require(a == b, "output differs between runs for " + name);
  }
  const auto start = std::chrono::steady_clock::now();
  int status = 0;
  run_capture(cli + " corpus run", status);
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  o.require(status == 0, "corpus run reported mismatches");
  o.require(secs < 60.0, "corpus run took " + std::to_string(secs) + " s");
  if (o.pass) o.detail = "corpus run " + std::to_string(secs).substr(0, 4) + " s";
#else
  o.require(false, "built without the command-line tool");
#endif
  return o;
}

}  // namespace

int main() {
  const std::pair<const char*, std::function<Outcome()>> criteria[] = {
      {"weyl conditions: N/D data satisfy, types I/II/III never satisfy", spinor_conditions},
      {"ricci commutator: vanishes on N/D data, not for type D with R = 0", ricci_commutator},
      {"semi-symmetry and conformal semi-symmetry agree at curved corpus points", semi_equals_conformal},
      {"semi-symmetric points with nonzero Weyl are of type D or N", only_d_or_n},
      {"Nariai and pp-wave NP patterns", np_patterns},
      {"products: spin-coefficient products, recurrent PNDs, nabla(k l) = 0", product_recurrence},
      {"pp-wave split on second-order symmetry", ppwave_split},
      {"commutator and direct routes agree", routes_agree},
      {"Petrov classifier: root oracle and tetrad invariance", petrov_oracle},
      {"dominant energy condition checks", dominant_energy},
      {"CLI determinism and corpus run time", cli_determinism},
  };
  int failures = 0;
  int index = 1;
  for (const auto& [name, check] : criteria) {
    Outcome o;
    try {
      o = check();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("exception: ") + e.what();
    }
    std::printf("%s %2d %s%s%s\n", o.pass ? "PASS" : "FAIL", index++, name, o.detail.empty() ? "" : ": ",
                o.detail.c_str());
    if (!o.pass) ++failures;
  }
  std::printf("%d of %zu criteria failed\n", failures, std::size(criteria));
  return failures ? 1 : 0;
}
