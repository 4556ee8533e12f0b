#include <gtest/gtest.h>

#include <random>

#include "semisym/np.hpp"
#include "semisym/petrov.hpp"

using namespace semisym;

namespace {

Complex random_complex(std::mt19937_64& rng, double spread = 1.0) {
  std::uniform_real_distribution<double> u(-spread, spread);
  return {u(rng), u(rng)};
}

/// Psi whose quartic Psi0 + 4 Psi1 z + 6 Psi2 z^2 + 4 Psi3 z^3 + Psi4 z^4 has
/// the given roots; fewer than four roots leaves the rest at infinity.
WeylScalars psi_from_roots(const std::vector<Complex>& roots, Complex lead) {
  std::vector<Complex> c = {lead};
  for (Complex r : roots) {
    std::vector<Complex> next(c.size() + 1, 0.0);
    for (std::size_t i = 0; i < c.size(); ++i) {
      next[i + 1] += c[i];
      next[i] -= r * c[i];
    }
    c = next;
  }
  c.resize(5, 0.0);
  return {c[0], c[1] / 4.0, c[2] / 6.0, c[3] / 4.0, c[4]};
}

struct Sample {
  PetrovType type;
  WeylScalars psi;
};

/// Random data of a known type: distinct roots with the multiplicity pattern
/// of the type, one root sent to infinity a quarter of the time.
Sample random_sample(std::mt19937_64& rng) {
  static const std::vector<std::pair<PetrovType, std::vector<int>>> kPatterns = {
      {PetrovType::I, {1, 1, 1, 1}}, {PetrovType::II, {2, 1, 1}}, {PetrovType::D, {2, 2}},
      {PetrovType::III, {3, 1}},     {PetrovType::N, {4}},        {PetrovType::O, {}}};
  const auto& pattern = kPatterns[std::uniform_int_distribution<std::size_t>(0, 5)(rng)];
  const PetrovType type = pattern.first;
  const std::vector<int>& mult = pattern.second;
  if (type == PetrovType::O) return {type, WeylScalars{}};
  std::vector<Complex> distinct;
  while (distinct.size() < mult.size()) {
    const Complex r = random_complex(rng, 2.0);
    bool far = true;
    for (Complex d : distinct) far = far && std::abs(r - d) > 0.3;
    if (far) distinct.push_back(r);
  }
  const bool at_infinity = std::uniform_int_distribution<int>(0, 3)(rng) == 0;
  std::vector<Complex> roots;
  for (std::size_t i = 0; i < mult.size(); ++i)
    for (int j = 0; j < mult[i] - (at_infinity && i == 0 ? mult[i] : 0); ++j) roots.push_back(distinct[i]);
  return {type, psi_from_roots(roots, random_complex(rng) + 1.5)};
}

WeylScalars random_transform(const WeylScalars& psi, std::mt19937_64& rng) {
  WeylScalars out = null_rotate(psi, random_complex(rng), NullRotation::AboutK);
  out = null_rotate(out, random_complex(rng), NullRotation::AboutL);
  return null_rotate(out, random_complex(rng, 0.5) + 1.0, NullRotation::BoostSpin);
}

}  // namespace

TEST(Petrov, CanonicalForms) {
  EXPECT_EQ(petrov_classify({1, 0, 1, 0, 1}), PetrovType::I);
  EXPECT_EQ(petrov_classify({0, 0, 1, 1, 0}), PetrovType::II);
  EXPECT_EQ(petrov_classify({0, 0, 1, 0, 0}), PetrovType::D);
  EXPECT_EQ(petrov_classify({0, 0, 0, 1, 0}), PetrovType::III);
  EXPECT_EQ(petrov_classify({0, 0, 0, 0, 1}), PetrovType::N);
  EXPECT_EQ(petrov_classify({0, 0, 0, 0, 0}), PetrovType::O);
  EXPECT_EQ(petrov_classify({1, 0, 0, 0, 0}), PetrovType::N);
}

TEST(Petrov, InvariantsOfTypeD) {
  const PetrovInvariants inv = petrov_invariants({0, 0, 2, 0, 0});
  EXPECT_NEAR(std::abs(inv.I - 12.0), 0, 1e-15);
  EXPECT_NEAR(std::abs(inv.J + 8.0), 0, 1e-15);
}

TEST(Petrov, RootsOfKnownPolynomial) {
  // (z - 1)(z + 2i) = z^2 + (2i - 1) z - 2i
  const std::vector<Complex> c = {Complex(0, -2), Complex(-1, 2), 1.0};
  auto roots = polynomial_roots(c);
  ASSERT_EQ(roots.size(), 2U);
  std::sort(roots.begin(), roots.end(), [](Complex a, Complex b) { return a.real() < b.real(); });
  EXPECT_LT(std::abs(roots[0] - Complex(0, -2)), 1e-12);
  EXPECT_LT(std::abs(roots[1] - 1.0), 1e-12);
}

TEST(Petrov, MultiplicitiesCountRootsAtInfinity) {
  EXPECT_EQ(pnd_multiplicities({0, 0, 0, 0, 1}), (std::vector<int>{4}));
  EXPECT_EQ(pnd_multiplicities({1, 0, 0, 0, 0}), (std::vector<int>{4}));
  EXPECT_EQ(pnd_multiplicities({0, 0, 1, 0, 0}), (std::vector<int>{2, 2}));
  EXPECT_EQ(pnd_multiplicities({0, 0, 0, 1, 0}), (std::vector<int>{3, 1}));
}

TEST(Petrov, AgreesWithRootOracleOnRandomData) {
  std::mt19937_64 rng(2024);
  for (int trial = 0; trial < 1000; ++trial) {
    const Sample s = random_sample(rng);
    EXPECT_EQ(petrov_classify(s.psi), s.type) << "trial " << trial;
    EXPECT_EQ(petrov_classify_by_roots(s.psi), s.type) << "trial " << trial;
  }
}

TEST(Petrov, InvariantUnderRandomTetradTransforms) {
  std::mt19937_64 rng(77);
  const WeylScalars canonical[] = {{1, 0, 1, 0, 1}, {0, 0, 1, 1, 0}, {0, 0, 1, 0, 0}, {0, 0, 0, 1, 0}, {0, 0, 0, 0, 1}};
  for (const auto& psi : canonical) {
    const PetrovType t = petrov_classify(psi);
    for (int trial = 0; trial < 100; ++trial) {
      const WeylScalars moved = random_transform(psi, rng);
      EXPECT_EQ(petrov_classify(moved), t) << to_string(t) << " trial " << trial;
      EXPECT_EQ(petrov_classify_by_roots(moved), t) << to_string(t) << " trial " << trial;
    }
  }
}

TEST(Petrov, ReferenceScaleSeparatesRoundoffFromCurvature) {
  const WeylScalars tiny = {1e-17, 0, 2e-17, 0, 0};
  EXPECT_EQ(petrov_classify(tiny, 1e-9, 1.0), PetrovType::O);
  EXPECT_EQ(petrov_classify_by_roots(tiny, 1e-3, 1.0), PetrovType::O);
  EXPECT_EQ(petrov_classify({0, 0, 1e-6, 0, 0}, 1e-9, 1.0), PetrovType::D);
}

// Two double roots far from the origin: I and J are small by cancellation.
TEST(Petrov, IllConditionedTypeDIsNotTypeI) {
  const Complex r1(1.84286, -1.4193), r2(1.73192, -1.81022);
  const WeylScalars psi = psi_from_roots({r1, r1, r2, r2}, Complex(1.2, -0.3));
  EXPECT_EQ(petrov_classify(psi), PetrovType::D);
  EXPECT_EQ(petrov_classify_by_roots(psi), PetrovType::D);
}
