#include "semisym/classifier.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <random>

namespace semisym {

std::string_view to_string(Branch b) {
  switch (b) {
    case Branch::NotSemiSymmetric: return "not-semi-symmetric";
    case Branch::O: return "O";
    case Branch::NGeneric: return "N-generic";
    case Branch::NSecondOrderCandidate: return "N-second-order-candidate";
    case Branch::DGenericDecomposable: return "D-generic-decomposable";
    case Branch::DSpecialA0: return "D-special-A0";
    case Branch::DSpecialB0: return "D-special-B0";
    case Branch::Indeterminate: return "indeterminate";
  }
  return "indeterminate";
}

namespace {

ComplexVector lower(const TensorValue& g, const ComplexVector& v) {
  ComplexVector out{};
  for (int a = 0; a < kDim; ++a)
    for (int b = 0; b < kDim; ++b)
      out[static_cast<std::size_t>(a)] += g.at({a, b}) * v[static_cast<std::size_t>(b)];
  return out;
}

}  // namespace

ABFit extract_AB(const TensorValue& ricci, const TensorValue& metric, const NullTetradValue& t,
                 const Tolerance& tol) {
  const ComplexVector k = lower(metric, t.k), l = lower(metric, t.l), m = lower(metric, t.m);
  Eigen::Matrix<double, 16, 2> basis;
  Eigen::Matrix<double, 16, 1> rhs;
  for (int a = 0; a < kDim; ++a)
    for (int b = 0; b < kDim; ++b) {
      const auto ua = static_cast<std::size_t>(a), ub = static_cast<std::size_t>(b);
      const int row = a * kDim + b;
      basis(row, 0) = 0.5 * (k[ua] * l[ub] + l[ua] * k[ub]).real();
      basis(row, 1) = (m[ua] * std::conj(m[ub])).real();
      rhs(row) = ricci.at({a, b}).real();
    }
  const Eigen::Vector2d ab = basis.colPivHouseholderQr().solve(rhs);
  ABFit fit;
  fit.A = ab(0);
  fit.B = ab(1);
  fit.residual = (basis * ab - rhs).cwiseAbs().maxCoeff();
  fit.scale = tol.effective_scale(rhs.cwiseAbs().maxCoeff());
  fit.verdict = tol.judge(fit.residual, fit.scale);
  return fit;
}

DecResult dec_check(const TensorValue& einstein, const TensorValue& metric,
                    const ComplexVector& future, std::uint64_t seed, int samples,
                    const Tolerance& tol, double reference_scale) {
  using Vec = Eigen::Vector4d;
  Eigen::Matrix4d g, G;
  for (int a = 0; a < kDim; ++a)
    for (int b = 0; b < kDim; ++b) {
      g(a, b) = metric.at({a, b}).real();
      G(a, b) = einstein.at({a, b}).real();
    }
  auto dot = [&](const Vec& u, const Vec& v) { return u.dot(g * v); };

  // Orthonormal frame with e0 along `future`.
  std::array<Vec, 4> e;
  Vec t;
  for (int a = 0; a < kDim; ++a) t(a) = future[static_cast<std::size_t>(a)].real();
  e[0] = t / std::sqrt(dot(t, t));
  int n = 1;
  for (int c = 0; c < kDim && n < 4; ++c) {
    Vec v = Vec::Unit(c);
    v -= dot(v, e[0]) * e[0];
    for (int i = 1; i < n; ++i) v += dot(v, e[static_cast<std::size_t>(i)]) * e[static_cast<std::size_t>(i)];
    const double nn = -dot(v, v);
    if (nn <= 1e-10 * std::max(1.0, g.cwiseAbs().maxCoeff() * v.squaredNorm())) continue;
    e[static_cast<std::size_t>(n++)] = v / std::sqrt(nn);
  }

  Eigen::Matrix4d Gf;  // frame components G_(ij)
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) Gf(i, j) = e[static_cast<std::size_t>(i)].dot(G * e[static_cast<std::size_t>(j)]);
  const Eigen::Vector4d eta(1.0, -1.0, -1.0, -1.0);

  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal;
  std::uniform_real_distribution<double> rapidity(0.0, 3.0);
  DecResult r;
  r.samples = samples;
  for (int s = 0; s < samples; ++s) {
    Eigen::Vector3d dir(normal(rng), normal(rng), normal(rng));
    dir.normalize();
    const double h = rapidity(rng);
    const Eigen::Vector4d u(std::cosh(h), std::sinh(h) * dir(0), std::sinh(h) * dir(1),
                            std::sinh(h) * dir(2));
    const Eigen::Vector4d w = -(eta.asDiagonal() * (Gf * u));
    const double scale = tol.effective_scale(std::max(Gf.cwiseAbs().maxCoeff(), reference_scale) * std::cosh(h));
    const double ww = (w(0) * w(0) - w.tail<3>().squaredNorm()) / (scale * scale);
    const double w0 = w(0) / scale;
    r.worst = std::min({r.worst, ww, w0});
    if (ww < -tol.tol || w0 < -tol.tol) r.violated = true;
  }
  return r;
}

namespace {

double spin_scale(const SpinCoefficients& s) {
  double m = 0.0;
  for (const auto& v : s.values()) m = std::max(m, std::abs(v));
  return m;
}

ConstraintValue constraint(double value, double scale, const Tolerance& tol) {
  ConstraintValue c;
  c.value = value;
  c.scale = tol.effective_scale(scale);
  c.verdict = tol.judge(value, scale);
  return c;
}

/// Worst verdict of "each listed quantity vanishes".
Verdict all_vanish(std::initializer_list<double> values, double scale, const Tolerance& tol) {
  Verdict worst = Verdict::Holds;
  for (double v : values) {
    const Verdict x = tol.judge(v, scale);
    if (x == Verdict::Fails) return Verdict::Fails;
    if (x == Verdict::Indeterminate) worst = Verdict::Indeterminate;
  }
  return worst;
}

}  // namespace

ClassificationReport decide_branch(const BranchInputs& in, const Tolerance& tol) {
  ClassificationReport rep;
  rep.petrov = in.petrov;
  rep.semi = in.semi;
  rep.A = in.A;
  rep.B = in.B;
  rep.recurrence_k = in.recurrence_k;
  rep.recurrence_l = in.recurrence_l;
  rep.decomposability = in.decomposability;
  rep.constant_null = in.constant_null;

  if (in.semi == Verdict::Fails) {
    rep.branch = Branch::NotSemiSymmetric;
    return rep;
  }
  if (in.semi == Verdict::Indeterminate) {
    rep.branch = Branch::Indeterminate;
    return rep;
  }

  const auto& psi = in.np.psi;
  const auto& phi = in.np.phi;
  const double np_scale = in.np.scale();
  const double ss = spin_scale(in.spin);
  const SpinCoefficients& sc = in.spin;

  switch (in.petrov) {
    case PetrovType::O:
      rep.branch = Branch::O;
      return rep;

    case PetrovType::N: {
      const Verdict pattern =
          all_vanish({std::abs(psi[0]), std::abs(psi[1]), std::abs(psi[2]), std::abs(psi[3]),
                      std::abs(phi[0][0]), std::abs(phi[0][1]), std::abs(phi[0][2]),
                      std::abs(phi[1][0]), std::abs(phi[1][1]), std::abs(phi[1][2]),
                      std::abs(phi[2][0]), std::abs(phi[2][1]), std::abs(in.np.R)},
                     np_scale, tol);
      if (pattern == Verdict::Fails)
        throw TheoremViolationError("semi-symmetric type N point outside the Psi4/Phi22/R=0 pattern");
      const Complex s4 = sc.sigma * psi[4], rp = sc.rho * phi[2][2];
      rep.constraints["kappa"] = constraint(std::abs(sc.kappa), ss, tol);
      rep.constraints["sigma_psi4_minus_rho_phi22"] = constraint(
          std::abs(s4 - rp),
          std::max({std::abs(s4), std::abs(rp), ss * std::max(std::abs(psi[4]), std::abs(phi[2][2]))}),
          tol);
      rep.constraints["sigma"] = constraint(std::abs(sc.sigma), ss, tol);
      rep.constraints["rho"] = constraint(std::abs(sc.rho), ss, tol);
      if (pattern == Verdict::Indeterminate) {
        rep.branch = Branch::Indeterminate;
        return rep;
      }
      const bool shear_free = rep.constraints["sigma"].verdict == Verdict::Holds &&
                              rep.constraints["rho"].verdict == Verdict::Holds;
      rep.branch = shear_free && in.constant_null == Verdict::Holds ? Branch::NSecondOrderCandidate
                                                                    : Branch::NGeneric;
      return rep;
    }

    case PetrovType::D: {
      const Verdict pattern =
          all_vanish({std::abs(psi[0]), std::abs(psi[1]), std::abs(psi[3]), std::abs(psi[4]),
                      std::abs(phi[0][0]), std::abs(phi[0][1]), std::abs(phi[0][2]),
                      std::abs(phi[1][0]), std::abs(phi[1][2]), std::abs(phi[2][0]),
                      std::abs(phi[2][1]), std::abs(phi[2][2]), std::abs(in.np.R + 12.0 * psi[2])},
                     np_scale, tol);
      if (pattern == Verdict::Fails)
        throw TheoremViolationError("semi-symmetric type D point outside the Psi2/Phi11/R=-12Psi2 pattern");
      rep.purely_electric = std::abs(psi[2].imag()) <= tol.tol * std::abs(psi[2]);

      const double ab_scale = std::max({std::abs(in.A), std::abs(in.B), std::abs(in.np.R)});
      const double prod_scale = ab_scale * ss;
      const std::pair<const char*, Complex> a_terms[] = {
          {"A_sigma", sc.sigma}, {"A_lambda", sc.lambda}, {"A_mu", sc.mu}, {"A_rho", sc.rho}};
      const std::pair<const char*, Complex> b_terms[] = {
          {"B_kappa", sc.kappa}, {"B_nu", sc.nu}, {"B_pi", sc.pi}, {"B_tau", sc.tau}};
      for (const auto& [name, v] : a_terms)
        rep.constraints[name] = constraint(std::abs(in.A) * std::abs(v), prod_scale, tol);
      for (const auto& [name, v] : b_terms)
        rep.constraints[name] = constraint(std::abs(in.B) * std::abs(v), prod_scale, tol);
      if (pattern == Verdict::Indeterminate) {
        rep.branch = Branch::Indeterminate;
        return rep;
      }

      const Verdict a_zero = tol.judge(std::abs(in.A), ab_scale);
      const Verdict b_zero = tol.judge(std::abs(in.B), ab_scale);
      if (a_zero == Verdict::Fails && b_zero == Verdict::Fails) {
        rep.branch = Branch::DGenericDecomposable;
      } else if (a_zero == Verdict::Holds && b_zero == Verdict::Fails) {
        rep.branch = Branch::DSpecialA0;
        for (const auto& [name, v] : b_terms) rep.constraints[name + 2] = constraint(std::abs(v), ss, tol);
      } else if (b_zero == Verdict::Holds && a_zero == Verdict::Fails) {
        rep.branch = Branch::DSpecialB0;
        for (const auto& [name, v] : a_terms) rep.constraints[name + 2] = constraint(std::abs(v), ss, tol);
      } else {
        rep.branch = Branch::Indeterminate;
      }
      return rep;
    }

    case PetrovType::I:
    case PetrovType::II:
    case PetrovType::III:
      throw TheoremViolationError("semi-symmetry holds at a point of Petrov type " +
                                  std::string(to_string(in.petrov)));
  }
  return rep;
}

PointEvidence gather_evidence(const LocalGeometry& geo, const ClassifyOptions& opt) {
  const Tolerance& tol = opt.tolerance;
  SymmetryOptions so{tol, opt.cross_validate};
  PointEvidence ev;
  ev.semi = semi_symmetry_residual(geo, so);
  ev.conformal = conformal_semi_symmetry_residual(geo, so);
  ev.ricci = ricci_semi_symmetry_residual(geo, so);
  ev.second_order = second_order_symmetry_residual(geo, so);
  ev.nabla_riemann = locally_symmetric_residual(geo, so);

  const MetricField& mf = geo.metric_field();
  require_valid_tetrad(mf, geo.point(), tol);
  const Curvature c = curvature(geo);
  const NullTetradValue declared = tetrad_at(mf, geo.point());
  const AdaptedTetrad adapted = adapt_tetrad(np_scalars(c, declared).psi, tol);
  ev.adaptation = adapted.transform;

  // A non-trivial adaptation gets its own tetrad expressions so that every
  // derivative-based probe sees the rotated legs.
  std::optional<MetricField> rotated;
  std::optional<LocalGeometry> rotated_geo;
  if (!adapted.transform.is_identity()) {
    rotated.emplace(mf.with_tetrad(transform_tetrad(*mf.tetrad(), adapted.transform)));
    rotated_geo.emplace(*rotated, geo.point(), 2);
  }
  const LocalGeometry& tg = rotated_geo ? *rotated_geo : geo;
  const NullTetradValue t = adapted.transform.apply(declared);

  ev.np = np_scalars(c, t);
  ev.petrov = petrov_classify(ev.np.psi, tol.tol, ev.np.scale());
  ev.spin = spin_coefficients(tg);
  if (ev.petrov == PetrovType::D) {
    ev.ab = extract_AB(c.ricci, c.metric, t, tol);
    ev.recurrence_k = recurrence_check(tg, NullLeg::K, tol);
    ev.recurrence_l = recurrence_check(tg, NullLeg::L, tol);
    ev.decomposability = decomposability_check(tg, tol);
  }
  if (ev.petrov == PetrovType::N) ev.constant_null = constant_null_vector_check(tg, tol);

  TensorValue einstein = c.ricci;
  for (std::size_t i = 0; i < einstein.size(); ++i) einstein[i] -= 0.5 * c.scalar * c.metric[i];
  ComplexVector future{};
  for (std::size_t a = 0; a < kDim; ++a) future[a] = (t.k[a] + t.l[a]) / std::sqrt(2.0);
  ev.dec = dec_check(einstein, c.metric, future, opt.seed, 100, tol, c.riemann.max_abs());
  return ev;
}

ClassificationReport classify_evidence(const PointEvidence& ev, const std::string& point,
                                       const Tolerance& tol) {
  BranchInputs in;
  in.semi = ev.semi.verdict;
  in.petrov = ev.petrov;
  in.np = ev.np;
  in.spin = ev.spin;
  if (ev.ab) {
    in.A = ev.ab->A;
    in.B = ev.ab->B;
  }
  if (ev.recurrence_k) in.recurrence_k = ev.recurrence_k->verdict;
  if (ev.recurrence_l) in.recurrence_l = ev.recurrence_l->verdict;
  if (ev.decomposability) in.decomposability = ev.decomposability->verdict;
  if (ev.constant_null) in.constant_null = ev.constant_null->verdict;
  ClassificationReport rep = decide_branch(in, tol);
  rep.point = point;
  rep.dec = ev.dec;
  return rep;
}

ClassificationReport classify_point(const MetricField& m, const SamplePoint& p,
                                    const ClassifyOptions& opt) {
  const LocalGeometry geo(m, p, kMaxJetOrder);
  return classify_evidence(gather_evidence(geo, opt), p.name, opt.tolerance);
}

ClassificationReport static_note(ClassificationReport report, bool declared_static) {
  if (declared_static && report.petrov == PetrovType::N)
    report.warning = "metric declared static but the Weyl tensor is of type N; static spacetimes are of type I, D or O";
  return report;
}

}  // namespace semisym
