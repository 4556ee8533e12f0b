#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>

#include "semisym/np.hpp"
#include "semisym/petrov.hpp"
#include "semisym/symmetry.hpp"

namespace semisym {

enum class Branch {
  NotSemiSymmetric,
  O,
  NGeneric,
  NSecondOrderCandidate,
  DGenericDecomposable,
  DSpecialA0,
  DSpecialB0,
  Indeterminate,
};

std::string_view to_string(Branch b);

/// Semi-symmetry holds at a point whose Weyl tensor is of type I, II or III.
class TheoremViolationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct ABFit {
  double A = 0.0;
  double B = 0.0;
  double residual = 0.0;  // max |R_ab - fit|
  double scale = 0.0;     // max |R_ab|
  Verdict verdict = Verdict::Indeterminate;
};

/// Least-squares fit R_ab = A k_(a l_b) + B m_(a mbar_b).
ABFit extract_AB(const TensorValue& ricci, const TensorValue& metric, const NullTetradValue& t,
                 const Tolerance& tol = {});

struct DecResult {
  bool violated = false;
  int samples = 0;
  /// Most negative normalised W.W or W.T over the samples.
  double worst = 0.0;
};

/// Samples future-pointing unit timelike u (future fixed by `future`, a unit
/// timelike vector) and tests that W = -G^a_b u^b is causal and future-pointing.
/// `reference_scale` (e.g. max |Riemann|) keeps a roundoff-level G from counting.
DecResult dec_check(const TensorValue& einstein, const TensorValue& metric,
                    const ComplexVector& future, std::uint64_t seed, int samples = 100,
                    const Tolerance& tol = {}, double reference_scale = 0.0);

struct ConstraintValue {
  double value = 0.0;
  double scale = 0.0;
  Verdict verdict = Verdict::Indeterminate;
};

/// Everything the decision tree reads at one point.
struct BranchInputs {
  Verdict semi = Verdict::Indeterminate;
  PetrovType petrov = PetrovType::O;
  NPData np;
  SpinCoefficients spin{};
  double A = 0.0;
  double B = 0.0;
  std::optional<Verdict> recurrence_k, recurrence_l, decomposability, constant_null;
};

struct ClassificationReport {
  std::string point;
  PetrovType petrov = PetrovType::O;
  Verdict semi = Verdict::Indeterminate;
  Branch branch = Branch::Indeterminate;
  double A = 0.0;
  double B = 0.0;
  std::map<std::string, ConstraintValue> constraints;
  std::optional<Verdict> recurrence_k, recurrence_l, decomposability, constant_null;
  std::optional<DecResult> dec;
  std::optional<bool> purely_electric;
  std::optional<std::string> warning;
};

/// The decision tree proper. Deterministic in its inputs.
ClassificationReport decide_branch(const BranchInputs& in, const Tolerance& tol = {});

struct ClassifyOptions {
  Tolerance tolerance;
  std::uint64_t seed = 0;
  bool cross_validate = false;
};

/// Residuals, NP data and probes at one point, in the adapted tetrad.
struct PointEvidence {
  ResidualReport semi, conformal, ricci, second_order, nabla_riemann;
  NPData np;
  TetradTransform adaptation;
  SpinCoefficients spin{};
  PetrovType petrov = PetrovType::O;
  std::optional<ABFit> ab;
  std::optional<RecurrenceResult> recurrence_k, recurrence_l;
  std::optional<ResidualReport> decomposability, constant_null;
  std::optional<DecResult> dec;
};

/// `geo` must be built with jet order 4 and carry a tetrad.
PointEvidence gather_evidence(const LocalGeometry& geo, const ClassifyOptions& opt = {});
ClassificationReport classify_evidence(const PointEvidence& ev, const std::string& point,
                                       const Tolerance& tol = {});
ClassificationReport classify_point(const MetricField& m, const SamplePoint& p,
                                    const ClassifyOptions& opt = {});

/// Adds a warning when a metric declared static is found to be of type N.
ClassificationReport static_note(ClassificationReport report, bool declared_static);

}  // namespace semisym
