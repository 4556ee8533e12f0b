#include "semisym/np.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace semisym {

ComplexVector NullTetradValue::mbar() const {
  ComplexVector out;
  for (int a = 0; a < kDim; ++a) out[static_cast<std::size_t>(a)] = std::conj(m[static_cast<std::size_t>(a)]);
  return out;
}

ComplexVector NullTetradValue::leg(int i) const {
  switch (i) {
    case 0: return k;
    case 1: return l;
    case 2: return m;
    default: return mbar();
  }
}

NullTetradValue tetrad_at(const MetricField& m, const SamplePoint& p) {
  if (!m.tetrad()) throw MissingTetradError("metric declares no tetrad");
  const Bindings b = m.bindings(p);
  const TetradField& t = *m.tetrad();
  NullTetradValue out;
  for (std::size_t a = 0; a < kDim; ++a) {
    out.k[a] = eval(t.k()[a], b);
    out.l[a] = eval(t.l()[a], b);
    out.m[a] = Complex(eval(t.m_re()[a], b), eval(t.m_im()[a], b));
  }
  return out;
}

namespace {

Complex dot(const TensorValue& g, const ComplexVector& u, const ComplexVector& v) {
  Complex s = 0.0;
  for (int a = 0; a < kDim; ++a)
    for (int b = 0; b < kDim; ++b)
      s += g.at({a, b}) * u[static_cast<std::size_t>(a)] * v[static_cast<std::size_t>(b)];
  return s;
}

double dot_scale(const TensorValue& g, const ComplexVector& u, const ComplexVector& v) {
  double s = 0.0;
  for (int a = 0; a < kDim; ++a)
    for (int b = 0; b < kDim; ++b)
      s = std::max(s, std::abs(g.at({a, b})) * std::abs(u[static_cast<std::size_t>(a)]) *
                          std::abs(v[static_cast<std::size_t>(b)]));
  return s;
}

}  // namespace

TetradReport validate_tetrad(const TensorValue& g, const NullTetradValue& t, const Tolerance& tol) {
  const ComplexVector mb = t.mbar();
  struct Pair {
    const ComplexVector* u;
    const ComplexVector* v;
    double expected;
  };
  const std::array<Pair, 9> pairs = {{{&t.k, &t.k, 0.0},
                                      {&t.l, &t.l, 0.0},
                                      {&t.m, &t.m, 0.0},
                                      {&t.k, &t.l, 1.0},
                                      {&t.m, &mb, -1.0},
                                      {&t.k, &t.m, 0.0},
                                      {&t.l, &t.m, 0.0},
                                      {&t.k, &mb, 0.0},
                                      {&t.l, &mb, 0.0}}};
  TetradReport r;
  for (const auto& p : pairs) r.scale = std::max(r.scale, dot_scale(g, *p.u, *p.v));
  r.scale = std::max(tol.effective_scale(r.scale), 1.0);
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    r.residuals[i] = std::abs(dot(g, *pairs[i].u, *pairs[i].v) - pairs[i].expected);
    if (r.valid && r.residuals[i] > tol.tol * r.scale) {
      r.valid = false;
      r.failing = std::string(TetradReport::kProducts[i]);
    }
  }
  return r;
}

TetradReport validate_tetrad(const MetricField& m, const SamplePoint& p, const Tolerance& tol) {
  const NullTetradValue t = tetrad_at(m, p);
  const Bindings b = m.bindings(p);
  TensorValue g = TensorValue::all_down(2);
  for (int i = 0; i < kDim; ++i)
    for (int j = 0; j < kDim; ++j) g.at({i, j}) = eval(m.g(i, j), b);
  return validate_tetrad(g, t, tol);
}

void require_valid_tetrad(const MetricField& m, const SamplePoint& p, const Tolerance& tol) {
  const TetradReport r = validate_tetrad(m, p, tol);
  if (!r.valid) {
    const auto i = static_cast<std::size_t>(
        std::find(TetradReport::kProducts.begin(), TetradReport::kProducts.end(), r.failing) -
        TetradReport::kProducts.begin());
    throw InvalidTetradError("invalid tetrad at point '" + p.name + "': " + r.failing +
                                 " off by " + std::to_string(r.residuals[i]),
                             r.failing);
  }
}

double NPData::scale() const {
  double s = std::abs(R);
  for (const auto& p : psi) s = std::max(s, std::abs(p));
  for (const auto& row : phi)
    for (const auto& v : row) s = std::max(s, std::abs(v));
  return s;
}

namespace {

Complex contract2(const TensorValue& t, const ComplexVector& u, const ComplexVector& v) {
  Complex s = 0.0;
  for (int a = 0; a < kDim; ++a)
    for (int b = 0; b < kDim; ++b)
      s += t.at({a, b}) * u[static_cast<std::size_t>(a)] * v[static_cast<std::size_t>(b)];
  return s;
}

Complex contract4(const TensorValue& t, const ComplexVector& u, const ComplexVector& v,
                  const ComplexVector& w, const ComplexVector& x) {
  Complex s = 0.0;
  for (int a = 0; a < kDim; ++a)
    for (int b = 0; b < kDim; ++b) {
      const Complex uv = u[static_cast<std::size_t>(a)] * v[static_cast<std::size_t>(b)];
      if (uv == 0.0) continue;
      for (int c = 0; c < kDim; ++c)
        for (int d = 0; d < kDim; ++d)
          s += t.at({a, b, c, d}) * uv * w[static_cast<std::size_t>(c)] * x[static_cast<std::size_t>(d)];
    }
  return s;
}

}  // namespace

NPData np_scalars(const Curvature& c, const NullTetradValue& t) {
  const ComplexVector &k = t.k, &l = t.l, &m = t.m;
  const ComplexVector mb = t.mbar();
  NPData np;
  np.psi[0] = contract4(c.weyl, k, m, k, m);
  np.psi[1] = contract4(c.weyl, k, l, k, m);
  np.psi[2] = contract4(c.weyl, k, m, mb, l);
  np.psi[3] = contract4(c.weyl, k, l, mb, l);
  np.psi[4] = contract4(c.weyl, l, mb, l, mb);

  const TensorValue& ric = c.ricci;
  np.phi[0][0] = -0.5 * contract2(ric, k, k);
  np.phi[0][1] = -0.5 * contract2(ric, k, m);
  np.phi[0][2] = -0.5 * contract2(ric, m, m);
  np.phi[1][0] = -0.5 * contract2(ric, k, mb);
  np.phi[1][1] = -0.25 * (contract2(ric, k, l) + contract2(ric, m, mb));
  np.phi[1][2] = -0.5 * contract2(ric, l, m);
  np.phi[2][0] = -0.5 * contract2(ric, mb, mb);
  np.phi[2][1] = -0.5 * contract2(ric, l, mb);
  np.phi[2][2] = -0.5 * contract2(ric, l, l);
  np.R = c.scalar;
  return np;
}

std::array<Complex, 12> SpinCoefficients::values() const {
  return {kappa, sigma, rho, tau, epsilon, beta, alpha, gamma, pi, lambda, mu, nu};
}

namespace {

using Row = std::array<Complex, 4>;

/// Row of mbar' given the row of m'.
Row conjugate_row(const Row& m) {
  return {std::conj(m[0]), std::conj(m[1]), std::conj(m[3]), std::conj(m[2])};
}

std::array<Row, 4> full_rows(const TetradTransform& x) {
  return {x.rows[0], x.rows[1], x.rows[2], conjugate_row(x.rows[2])};
}

}  // namespace

NullTetradValue TetradTransform::apply(const NullTetradValue& t) const {
  NullTetradValue out;
  std::array<ComplexVector*, 3> dst = {&out.k, &out.l, &out.m};
  for (std::size_t r = 0; r < 3; ++r)
    for (int j = 0; j < 4; ++j) {
      const ComplexVector v = t.leg(j);
      for (std::size_t a = 0; a < kDim; ++a) (*dst[r])[a] += rows[r][static_cast<std::size_t>(j)] * v[a];
    }
  return out;
}

TetradTransform TetradTransform::then(const TetradTransform& next) const {
  const auto full = full_rows(*this);
  TetradTransform out;
  for (std::size_t r = 0; r < 3; ++r) {
    Row acc{};
    for (std::size_t j = 0; j < 4; ++j)
      for (std::size_t c = 0; c < 4; ++c) acc[c] += next.rows[r][j] * full[j][c];
    out.rows[r] = acc;
  }
  return out;
}

bool TetradTransform::is_identity() const {
  for (std::size_t r = 0; r < 3; ++r)
    for (std::size_t c = 0; c < 4; ++c)
      if (rows[r][c] != (r == c ? Complex(1.0) : Complex(0.0))) return false;
  return true;
}

TetradTransform null_rotation(Complex p, NullRotation kind) {
  TetradTransform x;
  const Complex pb = std::conj(p);
  const double n = std::norm(p);
  switch (kind) {
    case NullRotation::AboutK:
      x.rows[1] = {n, 1.0, pb, p};
      x.rows[2] = {p, 0.0, 1.0, 0.0};
      break;
    case NullRotation::AboutL:
      x.rows[0] = {1.0, n, pb, p};
      x.rows[2] = {0.0, p, 1.0, 0.0};
      break;
    case NullRotation::BoostSpin:
      x.rows[0] = {n, 0.0, 0.0, 0.0};
      x.rows[1] = {0.0, 1.0 / n, 0.0, 0.0};
      x.rows[2] = {0.0, 0.0, p / pb, 0.0};
      break;
  }
  return x;
}

NullTetradValue null_rotate(const NullTetradValue& t, Complex param, NullRotation kind) {
  return null_rotation(param, kind).apply(t);
}

WeylScalars null_rotate(const WeylScalars& psi, Complex p, NullRotation kind) {
  static constexpr double kBinom[5][5] = {
      {1, 0, 0, 0, 0}, {1, 1, 0, 0, 0}, {1, 2, 1, 0, 0}, {1, 3, 3, 1, 0}, {1, 4, 6, 4, 1}};
  WeylScalars out{};
  for (int n = 0; n < 5; ++n) {
    auto& o = out[static_cast<std::size_t>(n)];
    switch (kind) {
      case NullRotation::AboutK:
        for (int j = 0; j <= n; ++j)
          o += kBinom[n][j] * std::pow(std::conj(p), j) * psi[static_cast<std::size_t>(n - j)];
        break;
      case NullRotation::AboutL:
        for (int j = 0; j <= 4 - n; ++j)
          o += kBinom[4 - n][j] * std::pow(p, j) * psi[static_cast<std::size_t>(n + j)];
        break;
      case NullRotation::BoostSpin:
        o = std::pow(p, 4 - 2 * n) * psi[static_cast<std::size_t>(n)];
        break;
    }
  }
  return out;
}

SpinCoefficients spin_coefficients(const LocalGeometry& geo, const TetradTransform& x) {
  // nabla_b e_a for e in (k, l, m, mbar), derivative slot first.
  std::array<TensorValue, 4> grad;
  {
    std::array<TensorValue, 4> real;
    for (int v = 0; v < 4; ++v) real[static_cast<std::size_t>(v)] = geo.covariant_derivative(lowered_leg(geo, v)).value();
    grad[0] = real[0];
    grad[1] = real[1];
    grad[2] = real[2];
    grad[3] = real[2];
    for (std::size_t f = 0; f < real[3].size(); ++f) {
      grad[2][f] += Complex(0.0, 1.0) * real[3][f];
      grad[3][f] -= Complex(0.0, 1.0) * real[3][f];
    }
  }
  const NullTetradValue t = x.apply(tetrad_at(geo.metric_field(), geo.point()));
  const auto full = full_rows(x);

  // D(X; a, b) = a^a b^b nabla_b X_a for X the r-th primed leg.
  auto D = [&](std::size_t r, const ComplexVector& a, const ComplexVector& b) {
    Complex s = 0.0;
    for (std::size_t j = 0; j < 4; ++j) {
      if (full[r][j] == 0.0) continue;
      Complex part = 0.0;
      for (int i = 0; i < kDim; ++i)
        for (int e = 0; e < kDim; ++e)
          part += a[static_cast<std::size_t>(i)] * b[static_cast<std::size_t>(e)] * grad[j].at({e, i});
      s += full[r][j] * part;
    }
    return s;
  };
  const ComplexVector &k = t.k, &l = t.l, &m = t.m;
  const ComplexVector mb = t.mbar();
  SpinCoefficients sc;
  sc.kappa = D(0, m, k);
  sc.rho = D(0, m, mb);
  sc.sigma = D(0, m, m);
  sc.tau = D(0, m, l);
  sc.nu = -D(1, mb, l);
  sc.mu = -D(1, mb, m);
  sc.lambda = -D(1, mb, mb);
  sc.pi = -D(1, mb, k);
  sc.epsilon = 0.5 * (D(0, l, k) - D(2, mb, k));
  sc.beta = 0.5 * (D(0, l, m) - D(2, mb, m));
  sc.alpha = 0.5 * (D(0, l, mb) - D(2, mb, mb));
  sc.gamma = 0.5 * (D(0, l, l) - D(2, mb, l));
  return sc;
}

namespace {

Complex horner(const std::vector<Complex>& c, Complex z) {
  Complex s = 0.0;
  for (auto it = c.rbegin(); it != c.rend(); ++it) s = s * z + *it;
  return s;
}

std::vector<Complex> derivative(const std::vector<Complex>& c) {
  std::vector<Complex> out;
  for (std::size_t i = 1; i < c.size(); ++i) out.push_back(c[i] * static_cast<double>(i));
  return out;
}

/// Most repeated finite root of sum c_i z^i, polished by Newton iteration on the
/// derivative in which it becomes simple.
Complex most_repeated_root(const std::vector<Complex>& c) {
  const auto roots = polynomial_roots(c);
  std::size_t best = 0;
  int best_count = 0;
  for (std::size_t i = 0; i < roots.size(); ++i) {
    int count = 0;
    for (const auto& r : roots)
      if (std::abs(r - roots[i]) < 1e-3 * std::max(1.0, std::abs(roots[i]))) ++count;
    if (count > best_count) {
      best_count = count;
      best = i;
    }
  }
  Complex z = 0.0;
  int n = 0;
  for (const auto& r : roots)
    if (std::abs(r - roots[best]) < 1e-3 * std::max(1.0, std::abs(roots[best]))) {
      z += r;
      ++n;
    }
  z /= static_cast<double>(n);
  std::vector<Complex> f = c;
  for (int i = 1; i < best_count; ++i) f = derivative(f);
  const std::vector<Complex> df = derivative(f);
  for (int it = 0; it < 50; ++it) {
    const Complex d = horner(df, z);
    if (d == 0.0) break;
    const Complex step = horner(f, z) / d;
    z -= step;
    if (std::abs(step) <= 1e-16 * std::max(1.0, std::abs(z))) break;
  }
  return z;
}

double max_abs(const WeylScalars& p) {
  double s = 0.0;
  for (const auto& c : p) s = std::max(s, std::abs(c));
  return s;
}

}  // namespace

AdaptedTetrad adapt_tetrad(const WeylScalars& psi, const Tolerance& tol) {
  AdaptedTetrad out;
  out.psi = psi;
  out.type = petrov_classify(psi, tol.tol);
  const double s = max_abs(psi);
  auto small = [&](std::size_t i) { return std::abs(out.psi[i]) <= tol.tol * s; };
  if (out.type == PetrovType::O || out.type == PetrovType::I) return out;
  if (out.type == PetrovType::N && small(0) && small(1) && small(2) && small(3)) return out;
  if (out.type == PetrovType::D && small(0) && small(1) && small(3) && small(4)) return out;

  auto apply = [&](Complex p, NullRotation kind) {
    out.psi = null_rotate(out.psi, p, kind);
    out.transform = out.transform.then(null_rotation(p, kind));
  };
  // A vanishing Psi4 means l may itself be the repeated direction; move it off.
  for (Complex a : {Complex(1.0), Complex(0.0, 1.0), Complex(0.5, -0.3)}) {
    if (std::abs(out.psi[4]) > 1e-8 * max_abs(out.psi)) break;
    apply(a, NullRotation::AboutK);
  }
  const std::vector<Complex> quartic = {out.psi[0], 4.0 * out.psi[1], 6.0 * out.psi[2],
                                        4.0 * out.psi[3], out.psi[4]};
  apply(most_repeated_root(quartic), NullRotation::AboutL);
  if (out.type == PetrovType::D) apply(std::conj(-out.psi[3] / (3.0 * out.psi[2])), NullRotation::AboutK);
  return out;
}

TetradField transform_tetrad(const TetradField& t, const TetradTransform& x) {
  // Leg = c0 k + c1 l + (c2 + c3) m_re + i (c2 - c3) m_im.
  auto combine = [&](const Row& c, bool imaginary) {
    const std::array<Complex, 4> w = {c[0], c[1], c[2] + c[3], Complex(0.0, 1.0) * (c[2] - c[3])};
    std::array<Expr, kDim> out;
    for (std::size_t a = 0; a < kDim; ++a)
      for (std::size_t j = 0; j < 4; ++j) {
        const double f = imaginary ? w[j].imag() : w[j].real();
        if (f != 0.0) out[a] = out[a] + Expr::constant(f) * t.vectors[j][a];
      }
    return out;
  };
  TetradField out;
  out.vectors[0] = combine(x.rows[0], false);
  out.vectors[1] = combine(x.rows[1], false);
  out.vectors[2] = combine(x.rows[2], false);
  out.vectors[3] = combine(x.rows[2], true);
  return out;
}

TetradField boost_spin(const TetradField& t, Complex c) {
  const double n = std::norm(c);
  const double theta = 2.0 * std::arg(c);
  const Expr kn = Expr::constant(n), ln = Expr::constant(1.0 / n);
  const Expr cs = Expr::constant(std::cos(theta)), sn = Expr::constant(std::sin(theta));
  TetradField out;
  for (std::size_t a = 0; a < kDim; ++a) {
    out.vectors[0][a] = kn * t.k()[a];
    out.vectors[1][a] = ln * t.l()[a];
    out.vectors[2][a] = cs * t.m_re()[a] - sn * t.m_im()[a];
    out.vectors[3][a] = sn * t.m_re()[a] + cs * t.m_im()[a];
  }
  return out;
}

}  // namespace semisym
