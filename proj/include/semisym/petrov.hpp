#pragma once

#include <array>
#include <span>
#include <string_view>
#include <vector>

#include "semisym/tensor.hpp"

namespace semisym {

enum class PetrovType { I, II, D, III, N, O };

std::string_view to_string(PetrovType t);

using WeylScalars = std::array<Complex, 5>;

struct PetrovInvariants {
  Complex I;
  Complex J;
};

/// I = Psi0 Psi4 - 4 Psi1 Psi3 + 3 Psi2^2,
/// J = det [[Psi0, Psi1, Psi2], [Psi1, Psi2, Psi3], [Psi2, Psi3, Psi4]].
PetrovInvariants petrov_invariants(const WeylScalars& psi);

/// Invariant-chain classifier. Input is normalised by max|Psi_i| first.
/// Type O when max|Psi_i| <= max(tol * reference_scale, 1e-14); type I when
/// |I^3 - 27 J^2| > tol * max(|I|^3, 27 |J|^2); otherwise the Hessian H and the
/// sextic covariant T of the binary quartic separate II/D (T = 0 for D) and
/// III/N (H = 0 for N).
PetrovType petrov_classify(const WeylScalars& psi, double tol = 1e-9, double reference_scale = 0.0);

/// Roots of sum_k coeffs[k] z^k from companion-matrix eigenvalues. Leading
/// coefficients below 1e-13 of the largest are dropped.
std::vector<Complex> polynomial_roots(std::span<const Complex> coeffs);

/// Independent oracle: roots of Psi0 + 4 Psi1 z + 6 Psi2 z^2 + 4 Psi3 z^3 + Psi4 z^4
/// on the Riemann sphere, clustered by chordal distance below `gap`; the
/// multiplicity pattern gives the type.
PetrovType petrov_classify_by_roots(const WeylScalars& psi, double gap = 1e-3,
                                    double reference_scale = 0.0, double tol = 1e-9);

/// Multiplicities of the principal null directions, sorted descending.
std::vector<int> pnd_multiplicities(const WeylScalars& psi, double gap = 1e-3);

}  // namespace semisym
