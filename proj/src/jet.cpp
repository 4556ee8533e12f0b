#include "semisym/jet.hpp"

#include <algorithm>
#include <stdexcept>
#include <vector>

namespace semisym {

namespace {

struct Tables {
  std::vector<MultiIndex> monomials;
  std::array<std::size_t, kMaxJetOrder + 2> count{};
  // Product table: prod[i][j] = index of monomial_i * monomial_j, or npos when
  // the degree exceeds kMaxJetOrder.
  std::vector<std::vector<std::size_t>> prod;
  // lower[v][i] = index of monomial_i / x_v (npos if exponent is 0).
  std::array<std::vector<std::size_t>, kDim> lower;

  static constexpr std::size_t npos = static_cast<std::size_t>(-1);

  Tables() {
    for (int deg = 0; deg <= kMaxJetOrder; ++deg) {
      for (int a = deg; a >= 0; --a)
        for (int b = deg - a; b >= 0; --b)
          for (int c = deg - a - b; c >= 0; --c) monomials.push_back({a, b, c, deg - a - b - c});
      count[static_cast<std::size_t>(deg)] = monomials.size();
    }
    const std::size_t n = monomials.size();
    prod.assign(n, std::vector<std::size_t>(n, npos));
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        MultiIndex m{};
        int deg = 0;
        for (int v = 0; v < kDim; ++v) {
          m[v] = monomials[i][v] + monomials[j][v];
          deg += m[v];
        }
        if (deg <= kMaxJetOrder) prod[i][j] = find(m);
      }
    }
    for (int v = 0; v < kDim; ++v) {
      lower[v].assign(n, npos);
      for (std::size_t i = 0; i < n; ++i) {
        if (monomials[i][v] == 0) continue;
        MultiIndex m = monomials[i];
        --m[v];
        lower[v][i] = find(m);
      }
    }
  }

  std::size_t find(const MultiIndex& m) const {
    auto it = std::find(monomials.begin(), monomials.end(), m);
    if (it == monomials.end()) throw std::out_of_range("monomial degree exceeds jet capacity");
    return static_cast<std::size_t>(it - monomials.begin());
  }
};

const Tables& tables() {
  static const Tables t;
  return t;
}

}  // namespace

Jet Jet::constant(double v, int order) {
  Jet j(order);
  j.c_[0] = v;
  return j;
}

std::size_t Jet::count(int order) {
  if (order < 0) return 0;
  return tables().count.at(static_cast<std::size_t>(order));
}

const MultiIndex& Jet::monomial(std::size_t i) { return tables().monomials.at(i); }

std::size_t Jet::index_of(const MultiIndex& m) { return tables().find(m); }

double Jet::derivative_at_point(int var) const {
  MultiIndex m{};
  m[var] = 1;
  return c_[index_of(m)];
}

Jet Jet::derivative(int var) const {
  if (order_ == 0) throw std::logic_error("cannot differentiate an order-0 jet");
  const auto& t = tables();
  Jet out(order_ - 1);
  const std::size_t n = count(order_);
  for (std::size_t i = 0; i < n; ++i) {
    std::size_t k = t.lower[var][i];
    if (k == Tables::npos) continue;
    out.c_[k] += c_[i] * t.monomials[i][var];
  }
  return out;
}

Jet Jet::truncated(int order) const {
  Jet out(std::min(order, order_));
  const std::size_t n = count(out.order_);
  std::copy_n(c_.begin(), n, out.c_.begin());
  return out;
}

Jet& Jet::operator+=(const Jet& o) {
  order_ = std::min(order_, o.order_);
  const std::size_t n = count(order_);
  for (std::size_t i = 0; i < n; ++i) c_[i] += o.c_[i];
  std::fill(c_.begin() + static_cast<std::ptrdiff_t>(n), c_.end(), 0.0);
  return *this;
}

Jet& Jet::operator-=(const Jet& o) {
  order_ = std::min(order_, o.order_);
  const std::size_t n = count(order_);
  for (std::size_t i = 0; i < n; ++i) c_[i] -= o.c_[i];
  std::fill(c_.begin() + static_cast<std::ptrdiff_t>(n), c_.end(), 0.0);
  return *this;
}

Jet& Jet::operator*=(double s) {
  const std::size_t n = count(order_);
  for (std::size_t i = 0; i < n; ++i) c_[i] *= s;
  return *this;
}

void Jet::add_product(const Jet& a, const Jet& b, double scale) {
  const auto& t = tables();
  const int ord = std::min({order_, a.order_, b.order_});
  if (ord < order_) {
    std::fill(c_.begin() + static_cast<std::ptrdiff_t>(count(ord)), c_.end(), 0.0);
    order_ = ord;
  }
  const std::size_t n = count(ord);
  for (std::size_t i = 0; i < n; ++i) {
    const double ai = a.c_[i];
    if (ai == 0.0) continue;
    const int di = t.monomials[i][0] + t.monomials[i][1] + t.monomials[i][2] + t.monomials[i][3];
    const std::size_t m = count(ord - di);
    for (std::size_t j = 0; j < m; ++j) {
      const double bj = b.c_[j];
      if (bj == 0.0) continue;
      c_[t.prod[i][j]] += scale * ai * bj;
    }
  }
}

Jet operator*(const Jet& a, const Jet& b) {
  Jet out(std::min(a.order(), b.order()));
  out.add_product(a, b);
  return out;
}

}  // namespace semisym
