#include "semisym/symmetry.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace semisym {

std::string_view to_string(Verdict v) {
  switch (v) {
    case Verdict::Holds: return "holds";
    case Verdict::Fails: return "fails";
    case Verdict::Indeterminate: return "indeterminate";
  }
  return "indeterminate";
}

Verdict Tolerance::judge(double residual, double scale) const {
  const double s = effective_scale(scale);
  if (residual <= tol * s) return Verdict::Holds;
  if (residual >= dead_band * tol * s) return Verdict::Fails;
  return Verdict::Indeterminate;
}

namespace {

ResidualReport make_report(std::string condition, double residual, double scale,
                           const LocalGeometry& geo, const Tolerance& tol) {
  ResidualReport r;
  r.condition = std::move(condition);
  r.residual = residual;
  r.scale = tol.effective_scale(scale);
  r.verdict = tol.judge(residual, scale);
  r.point = geo.point().name;
  return r;
}

const TensorField& commutator_operand(const LocalGeometry& geo, const std::string& condition) {
  if (condition == "semi") return geo.riemann();
  if (condition == "conformal") return geo.weyl();
  if (condition == "ricci") return geo.ricci();
  throw std::invalid_argument("unknown commutator condition '" + condition + "'");
}

ResidualReport commutator_residual(const LocalGeometry& geo, const std::string& condition,
                                   const SymmetryOptions& opt) {
  const TensorValue riemann = geo.riemann().value();
  const TensorValue t = commutator_operand(geo, condition).value();
  const TensorValue rm = riemann_mixed(riemann, geo.inverse_metric().value());
  const TensorValue action = commutator_action(rm, t);
  // Quadratic in curvature. T may sit at roundoff (conformally flat), so it
  // never shrinks the scale below |Riemann|^2.
  const double scale = riemann.max_abs() * std::max(t.max_abs(), riemann.max_abs());
  ResidualReport r = make_report(condition, action.max_abs(), scale, geo, opt.tolerance);
  if (opt.cross_validate) {
    const TensorValue direct = antisymmetrized_second_derivative(geo, commutator_operand(geo, condition));
    r.route_difference = max_abs_difference(direct, action);
  }
  return r;
}

}  // namespace

ResidualReport semi_symmetry_residual(const LocalGeometry& geo, const SymmetryOptions& opt) {
  return commutator_residual(geo, "semi", opt);
}

ResidualReport conformal_semi_symmetry_residual(const LocalGeometry& geo,
                                                const SymmetryOptions& opt) {
  return commutator_residual(geo, "conformal", opt);
}

ResidualReport ricci_semi_symmetry_residual(const LocalGeometry& geo, const SymmetryOptions& opt) {
  return commutator_residual(geo, "ricci", opt);
}

ResidualReport second_order_symmetry_residual(const LocalGeometry& geo,
                                              const SymmetryOptions& opt) {
  if (geo.order() < 4)
    throw std::logic_error("second-order symmetry needs fourth metric derivatives");
  const TensorValue dd = geo.covariant_derivative(geo.riemann(), 2).value();
  return make_report("second_order", dd.max_abs(), geo.riemann().value().max_abs(), geo,
                     opt.tolerance);
}

ResidualReport locally_symmetric_residual(const LocalGeometry& geo, const SymmetryOptions& opt) {
  const TensorValue d = geo.covariant_derivative(geo.riemann(), 1).value();
  return make_report("locally_symmetric", d.max_abs(), geo.riemann().value().max_abs(), geo,
                     opt.tolerance);
}

double commutator_route_difference(const LocalGeometry& geo, const std::string& condition) {
  const TensorValue rm = riemann_mixed(geo.riemann().value(), geo.inverse_metric().value());
  const TensorField& t = commutator_operand(geo, condition);
  return max_abs_difference(antisymmetrized_second_derivative(geo, t),
                            commutator_action(rm, t.value()));
}

TensorField lowered_leg(const LocalGeometry& geo, int vec) {
  if (!geo.metric_field().tetrad()) throw std::invalid_argument("metric declares no tetrad");
  const TensorField up = geo.tetrad_vector(vec, 1);
  TensorField down = TensorField::all_down(1, 1);
  for (int a = 0; a < kDim; ++a)
    for (int b = 0; b < kDim; ++b)
      down[static_cast<std::size_t>(a)].add_product(
          geo.metric()[static_cast<std::size_t>(a * kDim + b)], up[static_cast<std::size_t>(b)]);
  return down;
}

namespace {

/// Magnitude of the two pieces d_a n_b and G^c_ab n_c that make up nabla_a n_b.
double connection_scale(const LocalGeometry& geo, const TensorField& n) {
  double s = 0.0;
  for (int a = 0; a < kDim; ++a)
    for (int b = 0; b < kDim; ++b) {
      s = std::max(s, std::abs(n[static_cast<std::size_t>(b)].derivative_at_point(a)));
      double g = 0.0;
      for (int c = 0; c < kDim; ++c)
        g += geo.christoffel()[static_cast<std::size_t>((c * kDim + a) * kDim + b)].value() *
             n[static_cast<std::size_t>(c)].value();
      s = std::max(s, std::abs(g));
    }
  return s;
}

}  // namespace

RecurrenceResult recurrence_check(const LocalGeometry& geo, NullLeg leg, const Tolerance& tol) {
  const int self = leg == NullLeg::K ? 0 : 1;
  const int partner = leg == NullLeg::K ? 1 : 0;
  const TensorField n = lowered_leg(geo, self);
  const TensorValue dn = geo.covariant_derivative(n).value();
  const TensorValue nv = n.value();
  const TensorValue partner_up = geo.tetrad_vector(partner, 0).value();

  RecurrenceResult r;
  for (int a = 0; a < kDim; ++a) {
    double v = 0.0;
    for (int b = 0; b < kDim; ++b) v += partner_up[static_cast<std::size_t>(b)].real() * dn.at({a, b}).real();
    r.v[static_cast<std::size_t>(a)] = v;
  }
  double residual = 0.0, vk = 0.0;
  for (int a = 0; a < kDim; ++a)
    for (int b = 0; b < kDim; ++b) {
      const double term = r.v[static_cast<std::size_t>(a)] * nv[static_cast<std::size_t>(b)].real();
      vk = std::max(vk, std::abs(term));
      residual = std::max(residual, std::abs(dn.at({a, b}).real() - term));
    }
  r.residual = residual;
  r.scale = tol.effective_scale(std::max(dn.max_abs(), vk));
  r.verdict = tol.judge(residual, r.scale);
  return r;
}

ResidualReport decomposability_check(const LocalGeometry& geo, const Tolerance& tol) {
  const TensorField k = lowered_leg(geo, 0);
  const TensorField l = lowered_leg(geo, 1);
  const TensorValue dk = geo.covariant_derivative(k).value();
  const TensorValue dl = geo.covariant_derivative(l).value();
  const TensorValue kv = k.value(), lv = l.value();
  double residual = 0.0, scale = 0.0;
  for (int c = 0; c < kDim; ++c)
    for (int a = 0; a < kDim; ++a)
      for (int b = 0; b < kDim; ++b) {
        const double t1 = dk.at({c, a}).real() * lv[static_cast<std::size_t>(b)].real();
        const double t2 = kv[static_cast<std::size_t>(a)].real() * dl.at({c, b}).real();
        residual = std::max(residual, std::abs(t1 + t2));
        scale = std::max({scale, std::abs(t1), std::abs(t2)});
      }
  return make_report("decomposability", residual, scale, geo, tol);
}

ResidualReport constant_null_vector_check(const LocalGeometry& geo, const Tolerance& tol) {
  const TensorField k = lowered_leg(geo, 0);
  const TensorValue dk = geo.covariant_derivative(k).value();
  ResidualReport r = make_report("constant_null", dk.max_abs(), connection_scale(geo, k), geo, tol);

  const TensorValue kup = geo.tetrad_vector(0, 0).value();
  const TensorValue g = geo.metric().value();
  double kk = 0.0;
  for (int a = 0; a < kDim; ++a)
    for (int b = 0; b < kDim; ++b)
      kk += g.at({a, b}).real() * kup[static_cast<std::size_t>(a)].real() *
            kup[static_cast<std::size_t>(b)].real();
  const double null_scale = g.max_abs() * kup.max_abs() * kup.max_abs();
  if (std::abs(kk) > tol.tol * tol.effective_scale(null_scale)) r.verdict = Verdict::Fails;
  return r;
}

}  // namespace semisym
