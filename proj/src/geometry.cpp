#include "semisym/geometry.hpp"

#include <Eigen/Dense>
#include <cmath>

namespace semisym {

namespace {

double factorial(int n) {
  double f = 1.0;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

std::size_t idx2(int a, int b) { return static_cast<std::size_t>(a * kDim + b); }
std::size_t idx3(int a, int b, int c) { return static_cast<std::size_t>((a * kDim + b) * kDim + c); }
std::size_t idx4(int a, int b, int c, int d) {
  return static_cast<std::size_t>(((a * kDim + b) * kDim + c) * kDim + d);
}

}  // namespace

// --- DerivativeTable ----------------------------------------------------------

DerivativeTable::DerivativeTable(const Expr& e, int order) : order_(order) {
  const std::size_t n = Jet::count(order);
  derivs_.reserve(n);
  derivs_.push_back(e);
  for (std::size_t i = 1; i < n; ++i) {
    MultiIndex m = Jet::monomial(i);
    int v = 0;
    while (m[v] == 0) ++v;
    --m[v];
    derivs_.push_back(differentiate(derivs_[Jet::index_of(m)], v));
  }
}

Jet DerivativeTable::jet(const Bindings& b, int order) const {
  if (order > order_) throw std::out_of_range("jet order exceeds derivative table order");
  Jet j(order);
  const std::size_t n = Jet::count(order);
  for (std::size_t i = 0; i < n; ++i) {
    if (derivs_[i].is_constant(0.0)) continue;
    const MultiIndex& m = Jet::monomial(i);
    double denom = factorial(m[0]) * factorial(m[1]) * factorial(m[2]) * factorial(m[3]);
    j[i] = eval(derivs_[i], b) / denom;
  }
  return j;
}

// --- MetricField --------------------------------------------------------------

int MetricField::packed(int a, int b) {
  if (a > b) std::swap(a, b);
  static constexpr int kOffset[4] = {0, 4, 7, 9};
  return kOffset[a] + (b - a);
}

MetricField::MetricField(Scope scope, std::array<Expr, 10> upper_triangle,
                         std::vector<double> param_values, std::optional<TetradField> tetrad,
                         std::vector<SamplePoint> points)
    : scope_(std::move(scope)),
      g_(std::move(upper_triangle)),
      params_(std::move(param_values)),
      tetrad_(std::move(tetrad)),
      points_(std::move(points)) {
  if (scope_.coordinates().size() != static_cast<std::size_t>(kDim))
    throw std::invalid_argument("a chart needs exactly 4 coordinates");
  if (params_.size() != scope_.parameters().size())
    throw std::invalid_argument("parameter values do not match declared parameters");
  for (std::size_t i = 0; i < g_.size(); ++i) dg_[i] = DerivativeTable(g_[i], kMaxJetOrder);
  if (tetrad_) {
    dtetrad_.reserve(16);
    for (const auto& v : tetrad_->vectors)
      for (const auto& c : v) dtetrad_.emplace_back(c, 2);
  }
}

const Expr& MetricField::g(int a, int b) const {
  return g_[static_cast<std::size_t>(packed(a, b))];
}

const DerivativeTable& MetricField::g_derivatives(int a, int b) const {
  return dg_[static_cast<std::size_t>(packed(a, b))];
}

const DerivativeTable& MetricField::tetrad_derivatives(int vec, int comp) const {
  if (!tetrad_) throw std::logic_error("metric has no tetrad");
  return dtetrad_.at(static_cast<std::size_t>(vec * kDim + comp));
}

MetricField MetricField::with_tetrad(std::optional<TetradField> tetrad) const {
  return MetricField(scope_, g_, params_, std::move(tetrad), points_);
}

Bindings MetricField::bindings(const SamplePoint& p) const {
  return Bindings(std::vector<double>(p.coords.begin(), p.coords.end()), params_);
}

// --- checks ---------------------------------------------------------------------

void check_lorentzian(const TensorValue& g, const std::string& where) {
  Eigen::Matrix4d mat;
  double scale = 0.0;
  for (int a = 0; a < kDim; ++a)
    for (int b = 0; b < kDim; ++b) {
      mat(a, b) = g.at({a, b}).real();
      scale = std::max(scale, std::abs(mat(a, b)));
    }
  for (int a = 0; a < kDim; ++a)
    for (int b = 0; b < kDim; ++b)
      if (!std::isfinite(mat(a, b))) throw DegenerateMetricError("non-finite metric at " + where);
  if (scale == 0.0) throw DegenerateMetricError("zero metric at " + where);
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix4d> es(mat);
  const auto& ev = es.eigenvalues();
  int pos = 0, neg = 0;
  for (int i = 0; i < kDim; ++i) {
    if (std::abs(ev[i]) <= 1e-12 * scale) throw DegenerateMetricError("degenerate metric at " + where);
    (ev[i] > 0 ? pos : neg)++;
  }
  if (pos != 1 || neg != 3)
    throw DegenerateMetricError("metric signature is not (+,-,-,-) at " + where);
}

// --- LocalGeometry --------------------------------------------------------------

LocalGeometry::LocalGeometry(const MetricField& m, const SamplePoint& p, int order)
    : m_(&m), point_(p), bindings_(m.bindings(p)), order_(order) {
  if (order < 2 || order > kMaxJetOrder) throw std::out_of_range("geometry jet order must be 2..4");
  const int n = order;

  g_ = TensorField::all_down(2, n);
  for (int a = 0; a < kDim; ++a)
    for (int b = a; b < kDim; ++b) {
      Jet j = m.g_derivatives(a, b).jet(bindings_, n);
      g_[idx2(a, b)] = j;
      g_[idx2(b, a)] = j;
    }
  check_lorentzian(g_.value(), "point '" + p.name + "'");

  // Inverse: Newton iteration X <- 2X - X g X, each step doubling the exact order.
  Eigen::Matrix4d g0;
  for (int a = 0; a < kDim; ++a)
    for (int b = 0; b < kDim; ++b) g0(a, b) = g_[idx2(a, b)].value();
  Eigen::Matrix4d inv0 = g0.inverse();
  ginv_ = TensorField({Variance::Up, Variance::Up}, n);
  for (int a = 0; a < kDim; ++a)
    for (int b = 0; b < kDim; ++b) ginv_[idx2(a, b)] = Jet::constant(inv0(a, b), n);
  for (int exact = 0; exact < n; exact = 2 * exact + 1) {
    TensorField gx = TensorField::all_down(2, n);  // g X
    for (int a = 0; a < kDim; ++a)
      for (int b = 0; b < kDim; ++b)
        for (int c = 0; c < kDim; ++c) gx[idx2(a, b)].add_product(g_[idx2(a, c)], ginv_[idx2(c, b)]);
    TensorField next({Variance::Up, Variance::Up}, n);
    for (int a = 0; a < kDim; ++a)
      for (int b = 0; b < kDim; ++b) {
        Jet& x = next[idx2(a, b)];
        x = ginv_[idx2(a, b)] * 2.0;
        for (int c = 0; c < kDim; ++c) x.add_product(ginv_[idx2(a, c)], gx[idx2(c, b)], -1.0);
      }
    ginv_ = std::move(next);
  }

  // Christoffel symbols of the second kind.
  std::vector<Jet> dg(static_cast<std::size_t>(kDim * kDim * kDim));  // d_c g_ab at [c][a][b]
  for (int c = 0; c < kDim; ++c)
    for (int a = 0; a < kDim; ++a)
      for (int b = 0; b < kDim; ++b) dg[idx3(c, a, b)] = g_[idx2(a, b)].derivative(c);
  gamma_ = TensorField({Variance::Up, Variance::Down, Variance::Down}, n - 1);
  for (int b = 0; b < kDim; ++b)
    for (int c = b; c < kDim; ++c)
      for (int d = 0; d < kDim; ++d) {
        Jet first = dg[idx3(b, d, c)] + dg[idx3(c, d, b)] - dg[idx3(d, b, c)];
        first *= 0.5;
        for (int a = 0; a < kDim; ++a) gamma_[idx3(a, b, c)].add_product(ginv_[idx2(a, d)], first);
      }
  for (int a = 0; a < kDim; ++a)
    for (int b = 0; b < kDim; ++b)
      for (int c = 0; c < b; ++c) gamma_[idx3(a, b, c)] = gamma_[idx3(a, c, b)];

  // Riemann tensor, first index up, coordinate formula.
  TensorField rm({Variance::Up, Variance::Down, Variance::Down, Variance::Down}, n - 2);
  for (int a = 0; a < kDim; ++a)
    for (int b = 0; b < kDim; ++b)
      for (int c = 0; c < kDim; ++c)
        for (int d = c + 1; d < kDim; ++d) {
          Jet r = gamma_[idx3(a, d, b)].derivative(c) - gamma_[idx3(a, c, b)].derivative(d);
          for (int e = 0; e < kDim; ++e) {
            r.add_product(gamma_[idx3(a, c, e)], gamma_[idx3(e, d, b)]);
            r.add_product(gamma_[idx3(a, d, e)], gamma_[idx3(e, c, b)], -1.0);
          }
          r *= kRiemannSign;
          rm[idx4(a, b, c, d)] = r;
          rm[idx4(a, b, d, c)] = r * -1.0;
        }

  riemann_ = TensorField::all_down(4, n - 2);
  for (int a = 0; a < kDim; ++a)
    for (int b = 0; b < kDim; ++b)
      for (int c = 0; c < kDim; ++c)
        for (int d = 0; d < kDim; ++d)
          for (int e = 0; e < kDim; ++e)
            riemann_[idx4(a, b, c, d)].add_product(g_[idx2(a, e)], rm[idx4(e, b, c, d)]);

  ricci_ = TensorField::all_down(2, n - 2);
  for (int a = 0; a < kDim; ++a)
    for (int b = 0; b < kDim; ++b)
      for (int c = 0; c < kDim; ++c) ricci_[idx2(a, b)] += rm[idx4(c, a, c, b)];

  scalar_ = Jet(n - 2);
  for (int a = 0; a < kDim; ++a)
    for (int b = 0; b < kDim; ++b) scalar_.add_product(ginv_[idx2(a, b)], ricci_[idx2(a, b)]);

  weyl_ = TensorField::all_down(4, n - 2);
  for (int a = 0; a < kDim; ++a)
    for (int b = 0; b < kDim; ++b)
      for (int c = 0; c < kDim; ++c)
        for (int d = 0; d < kDim; ++d) {
          Jet& w = weyl_[idx4(a, b, c, d)];
          w = riemann_[idx4(a, b, c, d)];
          w.add_product(g_[idx2(a, c)], ricci_[idx2(d, b)], -0.5);
          w.add_product(g_[idx2(a, d)], ricci_[idx2(c, b)], 0.5);
          w.add_product(g_[idx2(b, c)], ricci_[idx2(d, a)], 0.5);
          w.add_product(g_[idx2(b, d)], ricci_[idx2(c, a)], -0.5);
          Jet gg = g_[idx2(a, c)] * g_[idx2(d, b)] - g_[idx2(a, d)] * g_[idx2(c, b)];
          w.add_product(scalar_, gg, 1.0 / 6.0);
        }
}

TensorField LocalGeometry::field(const std::vector<Expr>& components, std::vector<Variance> variance,
                                 int order) const {
  TensorField out(std::move(variance), order);
  if (components.size() != out.size()) throw std::invalid_argument("component count mismatch");
  for (std::size_t i = 0; i < components.size(); ++i)
    out[i] = DerivativeTable(components[i], order).jet(bindings_, order);
  return out;
}

TensorField LocalGeometry::tetrad_vector(int vec, int order) const {
  TensorField out({Variance::Up}, order);
  for (int a = 0; a < kDim; ++a)
    out[static_cast<std::size_t>(a)] = m_->tetrad_derivatives(vec, a).jet(bindings_, order);
  return out;
}

TensorField LocalGeometry::covariant_derivative(const TensorField& t, int times) const {
  if (times < 1) return t;
  if (t.order() < 1) throw std::logic_error("field jet too shallow for a covariant derivative");
  if (t.rank() + 1 > kMaxRank) throw std::length_error("covariant derivative exceeds maximum rank");
  const int r = t.rank();
  std::vector<Variance> var;
  var.push_back(Variance::Down);
  var.insert(var.end(), t.variance().begin(), t.variance().end());
  TensorField out(std::move(var), t.order() - 1);
  for (std::size_t f = 0; f < out.size(); ++f) {
    auto idx = unflatten(f, r + 1);
    const int e = idx[0];
    std::span<const int> tail(idx.data() + 1, static_cast<std::size_t>(r));
    Jet acc = t[flat_index(tail)].derivative(e);
    std::array<int, kMaxRank> sub{};
    std::copy(tail.begin(), tail.end(), sub.begin());
    for (int s = 0; s < r; ++s) {
      const int orig = sub[static_cast<std::size_t>(s)];
      const bool down = t.variance()[static_cast<std::size_t>(s)] == Variance::Down;
      for (int g = 0; g < kDim; ++g) {
        sub[static_cast<std::size_t>(s)] = g;
        const Jet& tv = t[flat_index(std::span<const int>(sub.data(), static_cast<std::size_t>(r)))];
        if (down)
          acc.add_product(gamma_[idx3(g, e, orig)], tv, -1.0);
        else
          acc.add_product(gamma_[idx3(orig, e, g)], tv, 1.0);
      }
      sub[static_cast<std::size_t>(s)] = orig;
    }
    out[f] = acc;
  }
  return covariant_derivative(out, times - 1);
}

// --- free functions ---------------------------------------------------------------

TensorValue christoffel(const MetricField& m, const SamplePoint& p) {
  return LocalGeometry(m, p, 2).christoffel().value();
}

Curvature curvature(const LocalGeometry& geo) {
  Curvature c;
  c.riemann = geo.riemann().value();
  c.ricci = geo.ricci().value();
  c.scalar = geo.scalar_curvature().value();
  c.weyl = geo.weyl().value();
  c.metric = geo.metric().value();
  c.inverse_metric = geo.inverse_metric().value();
  return c;
}

Curvature curvature(const MetricField& m, const SamplePoint& p) {
  return curvature(LocalGeometry(m, p, 2));
}

TensorValue riemann_mixed(const TensorValue& riemann, const TensorValue& inverse_metric) {
  return raise_index(riemann, 3, inverse_metric);
}

TensorValue commutator_action(const TensorValue& riemann, const TensorValue& t) {
  const std::vector<Variance> mixed = {Variance::Down, Variance::Down, Variance::Down, Variance::Up};
  if (riemann.variance() != mixed)
    throw std::invalid_argument("commutator_action expects R_abc^d");
  for (Variance v : t.variance())
    if (v != Variance::Down) throw std::invalid_argument("commutator_action expects all-down T");
  const int r = t.rank();
  if (r + 2 > kMaxRank) throw std::length_error("commutator_action result rank too large");
  TensorValue out = TensorValue::all_down(r + 2);
  for (std::size_t f = 0; f < out.size(); ++f) {
    auto idx = unflatten(f, r + 2);
    const int a = idx[0], b = idx[1];
    std::array<int, kMaxRank> sub{};
    std::copy(idx.begin() + 2, idx.begin() + 2 + r, sub.begin());
    Complex acc = 0.0;
    for (int s = 0; s < r; ++s) {
      const int c = sub[static_cast<std::size_t>(s)];
      for (int d = 0; d < kDim; ++d) {
        const Complex rv = riemann[idx4(a, b, c, d)];
        if (rv == 0.0) continue;
        sub[static_cast<std::size_t>(s)] = d;
        acc -= rv * t[flat_index(std::span<const int>(sub.data(), static_cast<std::size_t>(r)))];
      }
      sub[static_cast<std::size_t>(s)] = c;
    }
    out[f] = acc;
  }
  return out;
}

TensorValue antisymmetrized_second_derivative(const LocalGeometry& geo, const TensorField& t) {
  TensorValue dd = geo.covariant_derivative(t, 2).value();
  return dd - swap_slots(dd, 0, 1);
}

}  // namespace semisym
