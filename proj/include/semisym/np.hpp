#pragma once

#include <array>
#include <stdexcept>
#include <string>
#include <string_view>

#include "semisym/geometry.hpp"
#include "semisym/petrov.hpp"
#include "semisym/symmetry.hpp"

namespace semisym {

class InvalidTetradError : public std::runtime_error {
 public:
  InvalidTetradError(const std::string& what, std::string product)
      : std::runtime_error(what), product_(std::move(product)) {}
  /// Name of the first failing inner product, e.g. "k.l".
  const std::string& product() const { return product_; }

 private:
  std::string product_;
};

class MissingTetradError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

using ComplexVector = std::array<Complex, kDim>;

/// Contravariant components of k, l, m at a point.
struct NullTetradValue {
  ComplexVector k{}, l{}, m{};
  ComplexVector mbar() const;
  /// Leg i of (k, l, m, mbar).
  ComplexVector leg(int i) const;
};

NullTetradValue tetrad_at(const MetricField& m, const SamplePoint& p);

struct TetradReport {
  static constexpr std::array<std::string_view, 9> kProducts = {
      "k.k", "l.l", "m.m", "k.l", "m.mbar", "k.m", "l.m", "k.mbar", "l.mbar"};
  /// |product - expected| in kProducts order.
  std::array<double, 9> residuals{};
  double scale = 0.0;
  bool valid = true;
  /// First failing product name, empty when valid.
  std::string failing;
};

TetradReport validate_tetrad(const TensorValue& g, const NullTetradValue& t,
                             const Tolerance& tol = {});
/// Throws MissingTetradError when the metric declares none.
TetradReport validate_tetrad(const MetricField& m, const SamplePoint& p, const Tolerance& tol = {});
/// Throws InvalidTetradError naming the failing product.
void require_valid_tetrad(const MetricField& m, const SamplePoint& p, const Tolerance& tol = {});

using PhiMatrix = std::array<std::array<Complex, 3>, 3>;

struct NPData {
  WeylScalars psi{};
  PhiMatrix phi{};
  double R = 0.0;

  /// max over |Psi_i|, |Phi_ij|, |R|.
  double scale() const;
};

/// Psi_n and Phi_ij of the curvature in the given tetrad. Every Phi_ij is
/// contracted independently, so Hermiticity is a real check.
NPData np_scalars(const Curvature& c, const NullTetradValue& t);

struct SpinCoefficients {
  Complex kappa, sigma, rho, tau, epsilon, beta, alpha, gamma, pi, lambda, mu, nu;

  static constexpr std::array<std::string_view, 12> kNames = {
      "kappa", "sigma", "rho", "tau", "epsilon", "beta", "alpha", "gamma", "pi", "lambda", "mu", "nu"};
  std::array<Complex, 12> values() const;
};

/// Pointwise constant change of tetrad: rows k', l', m' as combinations of (k, l, m, mbar).
struct TetradTransform {
  std::array<std::array<Complex, 4>, 3> rows{{{1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 1, 0}}};

  NullTetradValue apply(const NullTetradValue& t) const;
  /// This transform followed by `next` (next acts on the primed tetrad).
  TetradTransform then(const TetradTransform& next) const;
  bool is_identity() const;
};

enum class NullRotation { AboutK, AboutL, BoostSpin };

/// About k (a):  m' = m + a k, l' = l + conj(a) m + a mbar + |a|^2 k.
/// About l (b):  m' = m + b l, k' = k + conj(b) m + b mbar + |b|^2 l.
/// Boost-spin (c): k' = |c|^2 k, l' = l / |c|^2, m' = (c / conj(c)) m.
TetradTransform null_rotation(Complex param, NullRotation kind);
NullTetradValue null_rotate(const NullTetradValue& t, Complex param, NullRotation kind);
/// Induced transformation of the Weyl scalars.
WeylScalars null_rotate(const WeylScalars& psi, Complex param, NullRotation kind);

/// Spin coefficients of the tetrad declared on the metric, optionally changed
/// by a transform that is constant over the chart.
SpinCoefficients spin_coefficients(const LocalGeometry& geo, const TetradTransform& x = {});

struct AdaptedTetrad {
  TetradTransform transform;
  WeylScalars psi{};
  PetrovType type = PetrovType::O;
};

/// Rotates the tetrad so that k (and for type D also l) is a repeated
/// principal null direction. Identity when the tetrad is already aligned.
AdaptedTetrad adapt_tetrad(const WeylScalars& psi, const Tolerance& tol = {});

/// Tetrad expressions of the transformed tetrad (coefficients are constants).
TetradField transform_tetrad(const TetradField& t, const TetradTransform& x);

/// Constant boost-spin of the tetrad expressions.
TetradField boost_spin(const TetradField& t, Complex c);

}  // namespace semisym
