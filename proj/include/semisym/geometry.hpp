#pragma once

#include <array>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "semisym/expr.hpp"
#include "semisym/jet.hpp"
#include "semisym/tensor.hpp"

namespace semisym {

/// Overall sign applied to the textbook coordinate formula
///   R^a_{bcd} = d_c G^a_{db} - d_d G^a_{cb} + G^a_{ce} G^e_{db} - G^a_{de} G^e_{cb}
/// so that, in signature (+,-,-,-), a round 2-sphere factor contributes
/// positive scalar curvature. See docs/conventions.md.
inline constexpr double kRiemannSign = -1.0;

class DegenerateMetricError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct SamplePoint {
  std::string name;
  std::array<double, kDim> coords{};
};

/// Contravariant components of the four null-tetrad vector fields
/// k, l, Re m, Im m (m = m_re + i m_im).
struct TetradField {
  std::array<std::array<Expr, kDim>, 4> vectors;

  const std::array<Expr, kDim>& k() const { return vectors[0]; }
  const std::array<Expr, kDim>& l() const { return vectors[1]; }
  const std::array<Expr, kDim>& m_re() const { return vectors[2]; }
  const std::array<Expr, kDim>& m_im() const { return vectors[3]; }
};

/// All partial derivatives of one expression up to a fixed total order,
/// indexed like Jet coefficients.
class DerivativeTable {
 public:
  DerivativeTable() = default;
  DerivativeTable(const Expr& e, int order);

  int order() const { return order_; }
  const Expr& at(std::size_t monomial) const { return derivs_.at(monomial); }
  /// Taylor jet at the bound point, truncated to `order` (<= order()).
  Jet jet(const Bindings& b, int order) const;

 private:
  int order_ = 0;
  std::vector<Expr> derivs_;
};

/// A spacetime metric in closed form on a single chart.
class MetricField {
 public:
  MetricField(Scope scope, std::array<Expr, 10> upper_triangle, std::vector<double> param_values,
              std::optional<TetradField> tetrad = std::nullopt,
              std::vector<SamplePoint> points = {});

  const Scope& scope() const { return scope_; }
  const std::vector<double>& parameter_values() const { return params_; }
  const Expr& g(int a, int b) const;
  const DerivativeTable& g_derivatives(int a, int b) const;
  const std::optional<TetradField>& tetrad() const { return tetrad_; }
  /// Derivative tables of the tetrad vectors (vector, component), order 2.
  const DerivativeTable& tetrad_derivatives(int vec, int comp) const;
  const std::vector<SamplePoint>& points() const { return points_; }

  MetricField with_tetrad(std::optional<TetradField> tetrad) const;
  Bindings bindings(const SamplePoint& p) const;

  static int packed(int a, int b);

 private:
  Scope scope_;
  std::array<Expr, 10> g_;
  std::array<DerivativeTable, 10> dg_;
  std::vector<double> params_;
  std::optional<TetradField> tetrad_;
  std::vector<DerivativeTable> dtetrad_;
  std::vector<SamplePoint> points_;
};

/// Every curvature object of a metric expanded about one point, with jets deep
/// enough for two further covariant derivatives of the Riemann tensor when
/// built with order 4.
class LocalGeometry {
 public:
  LocalGeometry(const MetricField& m, const SamplePoint& p, int order = kMaxJetOrder);

  const MetricField& metric_field() const { return *m_; }
  const SamplePoint& point() const { return point_; }
  int order() const { return order_; }

  const TensorField& metric() const { return g_; }
  const TensorField& inverse_metric() const { return ginv_; }
  /// G^a_{bc}.
  const TensorField& christoffel() const { return gamma_; }
  /// R_abcd, all slots down.
  const TensorField& riemann() const { return riemann_; }
  const TensorField& ricci() const { return ricci_; }
  const Jet& scalar_curvature() const { return scalar_; }
  const TensorField& weyl() const { return weyl_; }

  /// Jet field from expressions given in the metric's scope, flat-indexed.
  TensorField field(const std::vector<Expr>& components, std::vector<Variance> variance,
                    int order) const;
  /// Tetrad vector `vec` (0 k, 1 l, 2 m_re, 3 m_im) as a contravariant field of
  /// the given jet order (<= 2).
  TensorField tetrad_vector(int vec, int order) const;

  /// nabla_e T, derivative slot first; jet order drops by one per application.
  TensorField covariant_derivative(const TensorField& t, int times = 1) const;

 private:
  const MetricField* m_;
  SamplePoint point_;
  Bindings bindings_;
  int order_;
  TensorField g_, ginv_, gamma_, riemann_, ricci_, weyl_;
  Jet scalar_;
};

struct Curvature {
  TensorValue riemann;  // R_abcd
  TensorValue ricci;    // R_ab
  double scalar = 0.0;  // R
  TensorValue weyl;     // C_abcd
  TensorValue metric;
  TensorValue inverse_metric;
};

/// G^a_{bc} at p.
TensorValue christoffel(const MetricField& m, const SamplePoint& p);
Curvature curvature(const MetricField& m, const SamplePoint& p);
Curvature curvature(const LocalGeometry& geo);

/// R_abc^d from all-down R_abcd.
TensorValue riemann_mixed(const TensorValue& riemann, const TensorValue& inverse_metric);

/// 2 nabla_[a nabla_b] T_{c...} expressed algebraically through the Ricci
/// identity: -sum over slots of R_{ab c_i}^d T_{..d..}. `riemann` must be
/// R_abc^d (down, down, down, up); T must have all slots down.
TensorValue commutator_action(const TensorValue& riemann, const TensorValue& t);

/// nabla_a nabla_b T - nabla_b nabla_a T from two explicit covariant derivatives.
TensorValue antisymmetrized_second_derivative(const LocalGeometry& geo, const TensorField& t);

/// Checks det g != 0 and signature (+,-,-,-) of a numeric metric.
void check_lorentzian(const TensorValue& g, const std::string& where);

}  // namespace semisym
