#pragma once

#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

#include "semisym/np.hpp"
#include "semisym/tensor.hpp"

namespace semisym {

/// Spinor with components over index values {0 = o, 1 = iota} in every slot.
/// Each slot is unprimed or primed; slot i maps to bit (rank-1-i) of the flat index.
class GeneralSpinor {
 public:
  GeneralSpinor() = default;
  explicit GeneralSpinor(std::vector<bool> primed);

  int rank() const { return static_cast<int>(primed_.size()); }
  const std::vector<bool>& primed() const { return primed_; }
  std::size_t size() const { return data_.size(); }

  Complex& operator[](std::size_t flat) { return data_[flat]; }
  const Complex& operator[](std::size_t flat) const { return data_[flat]; }
  Complex& at(std::initializer_list<int> idx);
  const Complex& at(std::initializer_list<int> idx) const;
  int slot_value(std::size_t flat, int slot) const { return static_cast<int>((flat >> (rank() - 1 - slot)) & 1U); }

  double max_abs() const;
  GeneralSpinor& operator+=(const GeneralSpinor& o);
  GeneralSpinor& operator-=(const GeneralSpinor& o);
  GeneralSpinor& operator*=(Complex s);
  friend GeneralSpinor operator+(GeneralSpinor a, const GeneralSpinor& b) { return a += b; }
  friend GeneralSpinor operator-(GeneralSpinor a, const GeneralSpinor& b) { return a -= b; }
  friend GeneralSpinor operator*(Complex s, GeneralSpinor a) { return a *= s; }

  /// eps_AB with eps_01 = 1.
  static GeneralSpinor epsilon(bool primed = false);
  /// o_A = (1, 0) for which = 0, iota_A = (0, 1) for which = 1.
  static GeneralSpinor dyad(int which, bool primed = false);
  static GeneralSpinor outer(const GeneralSpinor& a, const GeneralSpinor& b);

 private:
  std::vector<bool> primed_;
  std::vector<Complex> data_;
};

class SpinorMismatchError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Contracts slot pairs (i in s1, j in s2), raising the s1 slot:
/// sum s1^G s2_G with s1^G = eps^{GH} s1_H and eps^{01} = 1. Remaining s1
/// slots come first, then remaining s2 slots, each in original order.
GeneralSpinor contract(const GeneralSpinor& s1, const GeneralSpinor& s2,
                       std::span<const std::pair<int, int>> pairs);
GeneralSpinor contract(const GeneralSpinor& s1, const GeneralSpinor& s2,
                       std::initializer_list<std::pair<int, int>> pairs);

/// Average over all permutations of the named slots.
GeneralSpinor symmetrize(const GeneralSpinor& s, std::span<const int> slots);
GeneralSpinor symmetrize(const GeneralSpinor& s, std::initializer_list<int> slots);

/// Output slot i is input slot order[i].
GeneralSpinor permute(const GeneralSpinor& s, std::span<const int> order);
GeneralSpinor permute(const GeneralSpinor& s, std::initializer_list<int> order);

/// Totally symmetric spinor with p unprimed and q primed slots, stored by
/// (number of iota-valued unprimed slots, number of iota-valued primed slots).
class SymSpinor {
 public:
  SymSpinor() = default;
  SymSpinor(int p, int q);

  int p() const { return p_; }
  int q() const { return q_; }
  Complex& at(int i, int j = 0) { return c_.at(static_cast<std::size_t>(i * (q_ + 1) + j)); }
  const Complex& at(int i, int j = 0) const { return c_.at(static_cast<std::size_t>(i * (q_ + 1) + j)); }
  std::size_t size() const { return c_.size(); }
  double max_abs() const;

  /// Unprimed slots first, then primed.
  GeneralSpinor to_general() const;
  /// Reads one representative component per class; the input is assumed symmetric.
  static SymSpinor from_general(const GeneralSpinor& g);

 private:
  int p_ = 0, q_ = 0;
  std::vector<Complex> c_;
};

/// Psi_n = Psi_ABCD o^A..o^D with (4-n) o's and n iota's, o^A = (0,-1), iota^A = (1,0).
SymSpinor weyl_spinor(const WeylScalars& psi);
WeylScalars weyl_scalars(const SymSpinor& psi);
/// Phi_ij with (2-i) o's / i iota's unprimed and (2-j) / j primed.
SymSpinor ricci_spinor(const PhiMatrix& phi);
PhiMatrix ricci_scalars(const SymSpinor& phi);

inline constexpr double kXFactor = 1.0 / 24.0;

/// X_ABCD = Psi_ABCD + factor R (eps_AC eps_BD + eps_AD eps_BC).
GeneralSpinor curvature_spinor(const SymSpinor& psi, double R, double factor = kXFactor);

/// max |X_{AB(C}^G Psi_{DEF)G}|.
double check_weyl_condition_1(const SymSpinor& psi, double R, double factor = kXFactor);
/// max |24 Psi_{AB(C}^G Psi_{DEF)G} + R (eps_{A(C} Psi_{DEF)B} + eps_{B(C} Psi_{DEF)A})|.
double check_weyl_condition_1_expanded(const SymSpinor& psi, double R);
/// max |12 Psi_{(AD}^{BG} Psi_{EF)BG} - R Psi_ADEF|.
double check_contracted_condition(const SymSpinor& psi, double R);
/// The contracted condition at the least-squares best real R.
double contracted_condition_best_residual(const SymSpinor& psi);
/// max |Phi_{A'B'(C}^G Psi_{DEF)G}|.
double check_weyl_condition_2(const SymSpinor& psi, const SymSpinor& phi);
/// max |X_ABC^E Phi_EDC'D' + X_ABD^E Phi_CEC'D' + Phi_ABC'^E' Phi_CDE'D' + Phi_ABD'^E' Phi_CDC'E'|.
double check_ricci_commutator(const SymSpinor& psi, const SymSpinor& phi, double R,
                              double factor = kXFactor);

enum class ConditionBranch { N, D };

struct ConditionData {
  SymSpinor psi;
  SymSpinor phi;
  double R = 0.0;
};

/// N: Psi4 = Phi22 = amplitude, R = 0. D: Psi2 = Phi11 = amplitude, R = -12 amplitude.
ConditionData make_condition_data(ConditionBranch branch, double amplitude);

/// Rank of the Phi matrix at relative threshold `tol`.
int phi_rank(const PhiMatrix& phi, double tol = 1e-9);

}  // namespace semisym
