#pragma once

#include <array>
#include <optional>
#include <string>

#include "semisym/geometry.hpp"

namespace semisym {

enum class Verdict { Holds, Fails, Indeterminate };

std::string_view to_string(Verdict v);

/// Relative tolerance with a dead band: holds iff residual <= tol*scale,
/// fails iff residual >= dead_band*tol*scale, indeterminate in between.
struct Tolerance {
  double tol = 1e-9;
  double dead_band = 10.0;
  double floor = 1e-14;  // absolute floor applied to every scale

  double effective_scale(double scale) const { return std::max(scale, floor); }
  Verdict judge(double residual, double scale) const;
};

struct ResidualReport {
  std::string condition;  // semi | conformal | ricci | second_order | locally_symmetric | ...
  double residual = 0.0;
  double scale = 0.0;
  Verdict verdict = Verdict::Indeterminate;
  std::string point;
  /// Set when the direct double-covariant-derivative oracle was also run:
  /// max |commutator route - direct route|.
  std::optional<double> route_difference;
};

struct RecurrenceResult {
  std::array<double, kDim> v{};  // recurrence covector v_a
  double residual = 0.0;
  double scale = 0.0;
  Verdict verdict = Verdict::Indeterminate;
};

struct SymmetryOptions {
  Tolerance tolerance;
  bool cross_validate = false;
};

/// nabla_[a nabla_b] R_cdef = 0 via the Ricci identity.
ResidualReport semi_symmetry_residual(const LocalGeometry& geo, const SymmetryOptions& opt = {});
/// nabla_[a nabla_b] C_cdef = 0.
ResidualReport conformal_semi_symmetry_residual(const LocalGeometry& geo,
                                                const SymmetryOptions& opt = {});
/// nabla_[a nabla_b] R_cd = 0.
ResidualReport ricci_semi_symmetry_residual(const LocalGeometry& geo,
                                            const SymmetryOptions& opt = {});
/// nabla_a nabla_b R_cdef = 0; needs an order-4 geometry.
ResidualReport second_order_symmetry_residual(const LocalGeometry& geo,
                                              const SymmetryOptions& opt = {});
/// nabla_b R_cdef = 0.
ResidualReport locally_symmetric_residual(const LocalGeometry& geo,
                                          const SymmetryOptions& opt = {});

/// Direct-route oracle: max |2 nabla_[a nabla_b] T - commutator_action(R, T)|
/// for T = Riemann, Weyl or Ricci ("semi", "conformal", "ricci").
double commutator_route_difference(const LocalGeometry& geo, const std::string& condition);

/// Which tetrad leg to test: k (partner l) or l (partner k).
enum class NullLeg { K, L };

/// v_a := partner^b nabla_a n_b; residual max |nabla_a n_b - v_a n_b|.
RecurrenceResult recurrence_check(const LocalGeometry& geo, NullLeg leg = NullLeg::K,
                                  const Tolerance& tol = {});
/// max |nabla_c (k_a l_b)|.
ResidualReport decomposability_check(const LocalGeometry& geo, const Tolerance& tol = {});
/// max |nabla_a k_b|; fails as well when k is not null.
ResidualReport constant_null_vector_check(const LocalGeometry& geo, const Tolerance& tol = {});

/// Lowered tetrad leg n_a = g_ab n^b as a field of jet order 1.
TensorField lowered_leg(const LocalGeometry& geo, int vec);

}  // namespace semisym
