#include "semisym/spinor.hpp"

#include <Eigen/SVD>
#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>

namespace semisym {

GeneralSpinor::GeneralSpinor(std::vector<bool> primed)
    : primed_(std::move(primed)), data_(std::size_t{1} << primed_.size(), 0.0) {}

namespace {

std::size_t flat_of(std::initializer_list<int> idx, int rank) {
  if (static_cast<int>(idx.size()) != rank) throw std::out_of_range("spinor index arity");
  std::size_t f = 0;
  for (int v : idx) f = (f << 1) | static_cast<std::size_t>(v & 1);
  return f;
}

}  // namespace

Complex& GeneralSpinor::at(std::initializer_list<int> idx) { return data_[flat_of(idx, rank())]; }
const Complex& GeneralSpinor::at(std::initializer_list<int> idx) const {
  return data_[flat_of(idx, rank())];
}

double GeneralSpinor::max_abs() const {
  double s = 0.0;
  for (const auto& c : data_) s = std::max(s, std::abs(c));
  return s;
}

GeneralSpinor& GeneralSpinor::operator+=(const GeneralSpinor& o) {
  if (o.primed_ != primed_) throw SpinorMismatchError("spinor valence mismatch");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += o.data_[i];
  return *this;
}

GeneralSpinor& GeneralSpinor::operator-=(const GeneralSpinor& o) {
  if (o.primed_ != primed_) throw SpinorMismatchError("spinor valence mismatch");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= o.data_[i];
  return *this;
}

GeneralSpinor& GeneralSpinor::operator*=(Complex s) {
  for (auto& c : data_) c *= s;
  return *this;
}

GeneralSpinor GeneralSpinor::epsilon(bool primed) {
  GeneralSpinor e({primed, primed});
  e.at({0, 1}) = 1.0;
  e.at({1, 0}) = -1.0;
  return e;
}

GeneralSpinor GeneralSpinor::dyad(int which, bool primed) {
  GeneralSpinor d({primed});
  d[static_cast<std::size_t>(which)] = 1.0;
  return d;
}

GeneralSpinor GeneralSpinor::outer(const GeneralSpinor& a, const GeneralSpinor& b) {
  std::vector<bool> p = a.primed_;
  p.insert(p.end(), b.primed_.begin(), b.primed_.end());
  GeneralSpinor out(std::move(p));
  const std::size_t nb = b.size();
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < nb; ++j) out.data_[i * nb + j] = a.data_[i] * b.data_[j];
  return out;
}

GeneralSpinor contract(const GeneralSpinor& s1, const GeneralSpinor& s2,
                       std::span<const std::pair<int, int>> pairs) {
  std::vector<bool> used1(static_cast<std::size_t>(s1.rank()), false);
  std::vector<bool> used2(static_cast<std::size_t>(s2.rank()), false);
  for (const auto& [i, j] : pairs) {
    if (i < 0 || i >= s1.rank() || j < 0 || j >= s2.rank())
      throw std::out_of_range("contraction slot out of range");
    if (s1.primed()[static_cast<std::size_t>(i)] != s2.primed()[static_cast<std::size_t>(j)])
      throw SpinorMismatchError("contraction pairs a primed with an unprimed slot");
    if (used1[static_cast<std::size_t>(i)] || used2[static_cast<std::size_t>(j)])
      throw std::invalid_argument("slot contracted twice");
    used1[static_cast<std::size_t>(i)] = used2[static_cast<std::size_t>(j)] = true;
  }
  std::vector<int> keep1, keep2;
  std::vector<bool> primed;
  for (int i = 0; i < s1.rank(); ++i)
    if (!used1[static_cast<std::size_t>(i)]) {
      keep1.push_back(i);
      primed.push_back(s1.primed()[static_cast<std::size_t>(i)]);
    }
  for (int j = 0; j < s2.rank(); ++j)
    if (!used2[static_cast<std::size_t>(j)]) {
      keep2.push_back(j);
      primed.push_back(s2.primed()[static_cast<std::size_t>(j)]);
    }
  GeneralSpinor out(std::move(primed));

  for (std::size_t f1 = 0; f1 < s1.size(); ++f1) {
    if (s1[f1] == 0.0) continue;
    for (std::size_t f2 = 0; f2 < s2.size(); ++f2) {
      if (s2[f2] == 0.0) continue;
      // eps^{GH}: G = s2 value, H = s1 value; eps^{01} = 1, eps^{10} = -1.
      double w = 1.0;
      for (const auto& [i, j] : pairs) {
        const int h = s1.slot_value(f1, i), g = s2.slot_value(f2, j);
        if (g == h) {
          w = 0.0;
          break;
        }
        w *= g == 0 ? 1.0 : -1.0;
      }
      if (w == 0.0) continue;
      std::size_t f = 0;
      for (int i : keep1) f = (f << 1) | static_cast<std::size_t>(s1.slot_value(f1, i));
      for (int j : keep2) f = (f << 1) | static_cast<std::size_t>(s2.slot_value(f2, j));
      out[f] += w * s1[f1] * s2[f2];
    }
  }
  return out;
}

GeneralSpinor contract(const GeneralSpinor& s1, const GeneralSpinor& s2,
                       std::initializer_list<std::pair<int, int>> pairs) {
  return contract(s1, s2, std::span<const std::pair<int, int>>(pairs.begin(), pairs.size()));
}

GeneralSpinor symmetrize(const GeneralSpinor& s, std::span<const int> slots) {
  for (int i : slots)
    if (s.primed()[static_cast<std::size_t>(i)] != s.primed()[static_cast<std::size_t>(slots[0])])
      throw SpinorMismatchError("symmetrizing slots of mixed primedness");
  std::vector<int> perm(slots.size());
  std::iota(perm.begin(), perm.end(), 0);
  std::vector<std::vector<int>> perms;
  do perms.push_back(perm);
  while (std::next_permutation(perm.begin(), perm.end()));

  GeneralSpinor out(s.primed());
  const int r = s.rank();
  for (std::size_t f = 0; f < s.size(); ++f) {
    Complex acc = 0.0;
    for (const auto& p : perms) {
      std::size_t g = f;
      for (std::size_t k = 0; k < slots.size(); ++k) {
        const int dst = slots[k];
        const int v = s.slot_value(f, slots[static_cast<std::size_t>(p[k])]);
        const std::size_t bit = std::size_t{1} << (r - 1 - dst);
        g = v ? (g | bit) : (g & ~bit);
      }
      acc += s[g];
    }
    out[f] = acc / static_cast<double>(perms.size());
  }
  return out;
}

GeneralSpinor symmetrize(const GeneralSpinor& s, std::initializer_list<int> slots) {
  return symmetrize(s, std::span<const int>(slots.begin(), slots.size()));
}

GeneralSpinor permute(const GeneralSpinor& s, std::span<const int> order) {
  if (static_cast<int>(order.size()) != s.rank()) throw std::invalid_argument("permutation arity");
  std::vector<bool> primed;
  for (int i : order) primed.push_back(s.primed()[static_cast<std::size_t>(i)]);
  GeneralSpinor out(std::move(primed));
  const int r = s.rank();
  for (std::size_t f = 0; f < out.size(); ++f) {
    std::size_t g = 0;
    for (int i = 0; i < r; ++i)
      if (out.slot_value(f, i)) g |= std::size_t{1} << (r - 1 - order[static_cast<std::size_t>(i)]);
    out[f] = s[g];
  }
  return out;
}

GeneralSpinor permute(const GeneralSpinor& s, std::initializer_list<int> order) {
  return permute(s, std::span<const int>(order.begin(), order.size()));
}

SymSpinor::SymSpinor(int p, int q)
    : p_(p), q_(q), c_(static_cast<std::size_t>((p + 1) * (q + 1)), 0.0) {}

double SymSpinor::max_abs() const {
  double s = 0.0;
  for (const auto& c : c_) s = std::max(s, std::abs(c));
  return s;
}

GeneralSpinor SymSpinor::to_general() const {
  std::vector<bool> primed(static_cast<std::size_t>(p_), false);
  primed.insert(primed.end(), static_cast<std::size_t>(q_), true);
  GeneralSpinor g(std::move(primed));
  const unsigned qmask = (1U << q_) - 1U;
  for (std::size_t f = 0; f < g.size(); ++f) {
    const auto bits = static_cast<unsigned>(f);
    g[f] = at(std::popcount(bits >> q_), std::popcount(bits & qmask));
  }
  return g;
}

SymSpinor SymSpinor::from_general(const GeneralSpinor& g) {
  int p = 0;
  while (p < g.rank() && !g.primed()[static_cast<std::size_t>(p)]) ++p;
  const int q = g.rank() - p;
  SymSpinor s(p, q);
  for (int i = 0; i <= p; ++i)
    for (int j = 0; j <= q; ++j) {
      // Lowest i unprimed bits and lowest j primed bits set.
      const std::size_t f = (((std::size_t{1} << i) - 1) << q) | ((std::size_t{1} << j) - 1);
      s.at(i, j) = g[f];
    }
  return s;
}

SymSpinor weyl_spinor(const WeylScalars& psi) {
  SymSpinor s(4, 0);
  for (int j = 0; j <= 4; ++j) s.at(j) = (j % 2 ? -1.0 : 1.0) * psi[static_cast<std::size_t>(4 - j)];
  return s;
}

WeylScalars weyl_scalars(const SymSpinor& s) {
  WeylScalars psi{};
  for (int n = 0; n <= 4; ++n) psi[static_cast<std::size_t>(n)] = ((4 - n) % 2 ? -1.0 : 1.0) * s.at(4 - n);
  return psi;
}

SymSpinor ricci_spinor(const PhiMatrix& phi) {
  SymSpinor s(2, 2);
  for (int a = 0; a <= 2; ++a)
    for (int b = 0; b <= 2; ++b)
      s.at(a, b) = ((a + b) % 2 ? -1.0 : 1.0) * phi[static_cast<std::size_t>(2 - a)][static_cast<std::size_t>(2 - b)];
  return s;
}

PhiMatrix ricci_scalars(const SymSpinor& s) {
  PhiMatrix phi{};
  for (int i = 0; i <= 2; ++i)
    for (int j = 0; j <= 2; ++j)
      phi[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
          ((i + j) % 2 ? -1.0 : 1.0) * s.at(2 - i, 2 - j);
  return phi;
}

GeneralSpinor curvature_spinor(const SymSpinor& psi, double R, double factor) {
  GeneralSpinor x = psi.to_general();
  const GeneralSpinor e = GeneralSpinor::epsilon();
  const GeneralSpinor ee = GeneralSpinor::outer(e, e);  // eps_AB eps_CD
  // eps_AC eps_BD + eps_AD eps_BC from eps_AB eps_CD by slot permutation.
  GeneralSpinor lam = permute(ee, {0, 2, 1, 3}) + permute(ee, {0, 2, 3, 1});
  x += Complex(factor * R) * lam;
  return x;
}

double check_weyl_condition_1(const SymSpinor& psi, double R, double factor) {
  const GeneralSpinor x = curvature_spinor(psi, R, factor);
  const GeneralSpinor t = contract(x, psi.to_general(), {{3, 3}});  // A B C D E F
  return symmetrize(t, {2, 3, 4, 5}).max_abs();
}

double check_weyl_condition_1_expanded(const SymSpinor& psi, double R) {
  const GeneralSpinor p = psi.to_general();
  GeneralSpinor lhs = Complex(24.0) * symmetrize(contract(p, p, {{3, 3}}), {2, 3, 4, 5});
  const GeneralSpinor e = GeneralSpinor::epsilon();
  // eps_AC Psi_DEFB: outer gives (A, C, D, E, F, B).
  const GeneralSpinor ep = GeneralSpinor::outer(e, p);
  GeneralSpinor rhs = permute(ep, {0, 5, 1, 2, 3, 4});  // eps_AC Psi_DEFB -> slots A B C D E F
  rhs += permute(ep, {5, 0, 1, 2, 3, 4});               // eps_BC Psi_DEFA
  lhs += Complex(R) * symmetrize(rhs, {2, 3, 4, 5});
  return lhs.max_abs();
}

namespace {

/// 12 Psi_{(AD}^{BG} Psi_{EF)BG} and Psi_ADEF.
std::pair<GeneralSpinor, GeneralSpinor> contracted_parts(const SymSpinor& psi) {
  const GeneralSpinor p = psi.to_general();
  GeneralSpinor q = Complex(12.0) * symmetrize(contract(p, p, {{2, 2}, {3, 3}}), {0, 1, 2, 3});
  return {q, p};
}

}  // namespace

double check_contracted_condition(const SymSpinor& psi, double R) {
  auto [q, p] = contracted_parts(psi);
  return (q - Complex(R) * p).max_abs();
}

double contracted_condition_best_residual(const SymSpinor& psi) {
  auto [q, p] = contracted_parts(psi);
  double num = 0.0, den = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    num += (std::conj(p[i]) * q[i]).real();
    den += std::norm(p[i]);
  }
  const double R = den > 0.0 ? num / den : 0.0;
  return (q - Complex(R) * p).max_abs();
}

double check_weyl_condition_2(const SymSpinor& psi, const SymSpinor& phi) {
  // Phi_{C G A' B'} Psi_{DEF}^{...G}: raise Phi's slot 1 and pair it with Psi's slot 3.
  const GeneralSpinor t = contract(phi.to_general(), psi.to_general(), {{1, 3}});
  // Slots: C A' B' D E F.
  return symmetrize(permute(t, {1, 2, 0, 3, 4, 5}), {2, 3, 4, 5}).max_abs();
}

double check_ricci_commutator(const SymSpinor& psi, const SymSpinor& phi, double R, double factor) {
  const GeneralSpinor x = curvature_spinor(psi, R, factor);
  const GeneralSpinor f = phi.to_general();  // A B A' B'
  // Target slot order: A B C D C' D'.
  GeneralSpinor sum = contract(x, f, {{3, 0}});                          // A B C | D C' D'
  sum += permute(contract(x, f, {{3, 1}}), {0, 1, 3, 2, 4, 5});          // A B D | C C' D'
  sum += permute(contract(f, f, {{3, 2}}), {0, 1, 3, 4, 2, 5});          // A B C' | C D D'
  sum += permute(contract(f, f, {{3, 3}}), {0, 1, 3, 4, 5, 2});          // A B D' | C D C'
  return sum.max_abs();
}

ConditionData make_condition_data(ConditionBranch branch, double amplitude) {
  ConditionData d;
  WeylScalars psi{};
  PhiMatrix phi{};
  if (branch == ConditionBranch::N) {
    psi[4] = amplitude;
    phi[2][2] = amplitude;
    d.R = 0.0;
  } else {
    psi[2] = amplitude;
    phi[1][1] = amplitude;
    d.R = -12.0 * amplitude;
  }
  d.psi = weyl_spinor(psi);
  d.phi = ricci_spinor(phi);
  return d;
}

int phi_rank(const PhiMatrix& phi, double tol) {
  Eigen::Matrix3cd m;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) m(i, j) = phi[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
  const Eigen::JacobiSVD<Eigen::Matrix3cd> svd(m);
  const auto& sv = svd.singularValues();
  if (sv(0) == 0.0) return 0;
  int r = 0;
  for (int i = 0; i < 3; ++i)
    if (sv(i) > tol * sv(0)) ++r;
  return r;
}

}  // namespace semisym
