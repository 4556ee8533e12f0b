#pragma once

#include <array>
#include <cstddef>

namespace semisym {

inline constexpr int kDim = 4;
inline constexpr int kMaxJetOrder = 4;

/// Exponents of one monomial x0^a0 x1^a1 x2^a2 x3^a3.
using MultiIndex = std::array<int, kDim>;

/// Truncated Taylor expansion of a scalar field about a point, in the four
/// chart coordinates, up to total degree order() <= kMaxJetOrder.
/// Coefficients are Taylor coefficients (d^alpha f / alpha!), stored in
/// graded order: all degree-0 terms, then degree 1, and so on.
class Jet {
 public:
  static constexpr std::size_t kCapacity = 70;  // binom(4 + 4, 4)

  Jet() = default;
  explicit Jet(int order) : order_(order) {}
  static Jet constant(double v, int order);

  int order() const { return order_; }
  double value() const { return c_[0]; }
  double& operator[](std::size_t i) { return c_[i]; }
  double operator[](std::size_t i) const { return c_[i]; }

  /// Number of monomials of degree <= order.
  static std::size_t count(int order);
  static const MultiIndex& monomial(std::size_t i);
  static std::size_t index_of(const MultiIndex& m);

  /// Partial derivative d/dx_var evaluated at the expansion point.
  double derivative_at_point(int var) const;
  /// Partial derivative as a jet of order order()-1.
  Jet derivative(int var) const;
  Jet truncated(int order) const;

  Jet& operator+=(const Jet& o);
  Jet& operator-=(const Jet& o);
  Jet& operator*=(double s);
  /// Adds a*b truncated to this jet's order.
  void add_product(const Jet& a, const Jet& b, double scale = 1.0);

  friend Jet operator+(Jet a, const Jet& b) { return a += b; }
  friend Jet operator-(Jet a, const Jet& b) { return a -= b; }
  friend Jet operator*(Jet a, double s) { return a *= s; }
  friend Jet operator*(double s, Jet a) { return a *= s; }
  friend Jet operator*(const Jet& a, const Jet& b);

 private:
  int order_ = 0;
  std::array<double, kCapacity> c_{};
};

}  // namespace semisym
