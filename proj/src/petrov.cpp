#include "semisym/petrov.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace semisym {

std::string_view to_string(PetrovType t) {
  switch (t) {
    case PetrovType::I: return "I";
    case PetrovType::II: return "II";
    case PetrovType::D: return "D";
    case PetrovType::III: return "III";
    case PetrovType::N: return "N";
    case PetrovType::O: return "O";
  }
  return "?";
}

PetrovInvariants petrov_invariants(const WeylScalars& p) {
  PetrovInvariants inv;
  inv.I = p[0] * p[4] - 4.0 * p[1] * p[3] + 3.0 * p[2] * p[2];
  inv.J = p[0] * (p[2] * p[4] - p[3] * p[3]) - p[1] * (p[1] * p[4] - p[3] * p[2]) +
          p[2] * (p[1] * p[3] - p[2] * p[2]);
  return inv;
}

namespace {

double max_abs(const WeylScalars& p) {
  double s = 0.0;
  for (const auto& c : p) s = std::max(s, std::abs(c));
  return s;
}

/// Binary form sum_i c[i] x^(d-i) y^i of degree d = c.size()-1.
using Form = std::vector<Complex>;

Form form_mul(const Form& a, const Form& b) {
  Form out(a.size() + b.size() - 1, 0.0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  return out;
}

Form form_sub(Form a, const Form& b) {
  for (std::size_t i = 0; i < a.size(); ++i) a[i] -= b[i];
  return a;
}

Form d_dx(const Form& f) {
  const std::size_t d = f.size() - 1;
  Form out(d, 0.0);
  for (std::size_t i = 0; i < d; ++i) out[i] = f[i] * static_cast<double>(d - i);
  return out;
}

Form d_dy(const Form& f) {
  const std::size_t d = f.size() - 1;
  Form out(d, 0.0);
  for (std::size_t i = 1; i <= d; ++i) out[i - 1] = f[i] * static_cast<double>(i);
  return out;
}

double form_norm(const Form& f) {
  double s = 0.0;
  for (const auto& c : f) s = std::max(s, std::abs(c));
  return s;
}

}  // namespace

PetrovType petrov_classify(const WeylScalars& psi, double tol, double reference_scale) {
  const double s = max_abs(psi);
  if (s <= std::max(tol * reference_scale, 1e-14)) return PetrovType::O;
  WeylScalars p;
  for (int i = 0; i < 5; ++i) p[i] = psi[i] / s;

  const auto [I, J] = petrov_invariants(p);
  const double i3 = std::pow(std::abs(I), 3);
  const double j2 = 27.0 * std::norm(J);
  const bool vanishing = std::abs(I) <= tol && std::abs(J) <= tol;
  // Rounding bound of I^3 - 27 J^2 from the absolute sizes of the terms of I and J;
  // small I and J obtained by cancellation carry relative errors far above tol.
  const auto a = [&](int i) { return std::abs(p[i]); };
  const double eps = std::numeric_limits<double>::epsilon();
  const double err_I = 8 * eps * (a(0) * a(4) + 4 * a(1) * a(3) + 3 * a(2) * a(2));
  const double err_J = 16 * eps *
                       (a(0) * (a(2) * a(4) + a(3) * a(3)) + a(1) * (a(1) * a(4) + a(2) * a(3)) +
                        a(2) * (a(1) * a(3) + a(2) * a(2)));
  const double err_disc = 3 * std::norm(I) * err_I + 54 * std::abs(J) * err_J;
  const double disc = std::abs(I * I * I - 27.0 * J * J);
  if (!vanishing && disc > tol * std::max(i3, j2) && disc > 100 * err_disc) return PetrovType::I;

  static constexpr double kBinom[5] = {1, 4, 6, 4, 1};
  Form f(5);
  for (int i = 0; i < 5; ++i) f[i] = kBinom[i] * p[i];
  const Form fx = d_dx(f), fy = d_dy(f);
  const Form hessian = form_sub(form_mul(d_dx(fx), d_dy(fy)), form_mul(d_dx(fy), d_dx(fy)));
  const double fn = form_norm(f);

  if (vanishing) return form_norm(hessian) <= tol * fn * fn ? PetrovType::N : PetrovType::III;
  const Form t = form_sub(form_mul(fx, d_dy(hessian)), form_mul(fy, d_dx(hessian)));
  return form_norm(t) <= tol * fn * fn * fn ? PetrovType::D : PetrovType::II;
}

std::vector<Complex> polynomial_roots(std::span<const Complex> coeffs) {
  double big = 0.0;
  for (const auto& c : coeffs) big = std::max(big, std::abs(c));
  std::size_t deg = coeffs.size();
  while (deg > 0 && std::abs(coeffs[deg - 1]) <= 1e-13 * big) --deg;
  if (deg <= 1) return {};
  const int n = static_cast<int>(deg - 1);
  Eigen::MatrixXcd comp = Eigen::MatrixXcd::Zero(n, n);
  const Complex lead = coeffs[deg - 1];
  for (int i = 1; i < n; ++i) comp(i, i - 1) = 1.0;
  for (int i = 0; i < n; ++i) comp(i, n - 1) = -coeffs[static_cast<std::size_t>(i)] / lead;
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(comp, false);
  std::vector<Complex> roots(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) roots[static_cast<std::size_t>(i)] = es.eigenvalues()[i];
  return roots;
}

namespace {

// Fixed rotation of the Riemann sphere z = (a w + b) / (-conj(b) w + conj(a)),
// |a|^2 + |b|^2 = 1, moving the point at infinity off any canonical direction.
const Complex kRotA = Complex(std::cos(0.7), 0.0) * std::exp(Complex(0.0, 0.3));
const Complex kRotB = Complex(std::sin(0.7), 0.0) * std::exp(Complex(0.0, 1.1));

struct SpherePoint {
  bool infinite = false;
  Complex z;
};

double chordal(const SpherePoint& a, const SpherePoint& b) {
  if (a.infinite && b.infinite) return 0.0;
  if (a.infinite) return 1.0 / std::sqrt(1.0 + std::norm(b.z));
  if (b.infinite) return 1.0 / std::sqrt(1.0 + std::norm(a.z));
  return std::abs(a.z - b.z) / std::sqrt((1.0 + std::norm(a.z)) * (1.0 + std::norm(b.z)));
}

}  // namespace

std::vector<int> pnd_multiplicities(const WeylScalars& psi, double gap) {
  static constexpr double kBinom[5] = {1, 4, 6, 4, 1};
  const double s = max_abs(psi);
  // p(z) = sum_k binom(4,k) psi_k z^k; substitute z = (a w + b)/(c w + d), clear denominators.
  const std::vector<Complex> num = {kRotB, kRotA};                 // b + a w
  const std::vector<Complex> den = {std::conj(kRotA), -std::conj(kRotB)};  // conj(a) - conj(b) w
  std::vector<Complex> poly(5, 0.0);
  for (int k = 0; k < 5; ++k) {
    std::vector<Complex> term = {kBinom[k] * psi[static_cast<std::size_t>(k)] / s};
    auto mul = [&](const std::vector<Complex>& f) {
      std::vector<Complex> out(term.size() + 1, 0.0);
      for (std::size_t i = 0; i < term.size(); ++i)
        for (std::size_t j = 0; j < 2; ++j) out[i + j] += term[i] * f[j];
      term = std::move(out);
    };
    for (int i = 0; i < k; ++i) mul(num);
    for (int i = k; i < 4; ++i) mul(den);
    for (std::size_t i = 0; i < 5; ++i) poly[i] += term[i];
  }

  std::vector<SpherePoint> pts;
  for (const auto& r : polynomial_roots(poly)) pts.push_back({false, r});
  while (pts.size() < 4) pts.push_back({true, 0.0});

  // Single-linkage clustering.
  std::vector<int> parent(pts.size());
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int i) {
    while (parent[static_cast<std::size_t>(i)] != i) i = parent[static_cast<std::size_t>(i)];
    return i;
  };
  for (std::size_t i = 0; i < pts.size(); ++i)
    for (std::size_t j = i + 1; j < pts.size(); ++j)
      if (chordal(pts[i], pts[j]) < gap)
        parent[static_cast<std::size_t>(find(static_cast<int>(j)))] = find(static_cast<int>(i));
  std::vector<int> counts(pts.size(), 0);
  for (std::size_t i = 0; i < pts.size(); ++i) ++counts[static_cast<std::size_t>(find(static_cast<int>(i)))];
  std::vector<int> mult;
  for (int c : counts)
    if (c > 0) mult.push_back(c);
  std::sort(mult.rbegin(), mult.rend());
  return mult;
}

PetrovType petrov_classify_by_roots(const WeylScalars& psi, double gap, double reference_scale,
                                    double tol) {
  if (max_abs(psi) <= std::max(tol * reference_scale, 1e-14)) return PetrovType::O;
  const auto m = pnd_multiplicities(psi, gap);
  if (m == std::vector<int>{4}) return PetrovType::N;
  if (m == std::vector<int>{3, 1}) return PetrovType::III;
  if (m == std::vector<int>{2, 2}) return PetrovType::D;
  if (m == std::vector<int>{2, 1, 1}) return PetrovType::II;
  return PetrovType::I;
}

}  // namespace semisym
