#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <variant>

#include "biquat/roots.hpp"
#include "support/brute_force.hpp"

namespace biquat {
namespace {

using namespace biquat::testing;

const double kSqrt2 = std::sqrt(2.0);
const double kSqrt3 = std::sqrt(3.0);

void expect_direction_near(const PureUnit& got, const PureUnit& want, double tol) {
  EXPECT_NEAR(got.x(), want.x(), tol);
  EXPECT_NEAR(got.y(), want.y(), tol);
  EXPECT_NEAR(got.z(), want.z(), tol);
}

PureUnit diag_mu() { return PureUnit::normalized(1, 1, 1); }
PureUnit diag_nu() { return PureUnit::normalized(0, 1, -1); }

// ---------------------------------------------------------------------------
// make_nontrivial_root

TEST(MakeNontrivialRoot, FirstWorkedExample) {
  const Biquaternion q = make_nontrivial_root(PureUnit::from_unit(1, 0, 0),
                                              PureUnit::from_unit(0, 1, 0), std::asinh(1.0));
  EXPECT_LE(max_abs_diff(q, Biquaternion{{0, kSqrt2, 0, 0}, {0, 0, 1, 0}}), 1e-15);
}

TEST(MakeNontrivialRoot, SecondWorkedExample) {
  const double t = std::asinh(kSqrt2);
  EXPECT_NEAR(std::cosh(t), kSqrt3, 1e-15);
  const Biquaternion q = make_nontrivial_root(diag_mu(), diag_nu(), t);
  EXPECT_LE(max_abs_diff(q, Biquaternion{{0, 1, 1, 1}, {0, 0, 1, -1}}), 1e-15);
}

TEST(MakeNontrivialRoot, ZeroParameterGivesDirectionItself) {
  const PureUnit i = PureUnit::from_unit(1, 0, 0);
  const Biquaternion q = make_nontrivial_root(i, PureUnit::from_unit(0, 1, 0), 0.0);
  EXPECT_EQ(q, real(basis::i));
}

TEST(MakeNontrivialRoot, RejectsNonPerpendicularDirections) {
  const PureUnit i = PureUnit::from_unit(1, 0, 0);
  const PureUnit d = PureUnit::normalized(1, 1, 0);
  try {
    (void)make_nontrivial_root(i, d, 1.0);
    FAIL() << "expected PerpendicularityError";
  } catch (const PerpendicularityError& e) {
    EXPECT_NEAR(e.dot(), 1.0 / kSqrt2, 1e-15);
  }
  EXPECT_THROW(make_nontrivial_root(i, PureUnit::from_unit(0, 1, 0), NAN), PreconditionError);
}

TEST(MakeNontrivialRoot, GeneratorSoundness) {
  std::mt19937_64 rng(11);
  for (int n = 0; n < 10'000; ++n) {
    const PureUnit mu = random_direction(rng);
    const PureUnit nu = random_perpendicular(mu, rng);
    const double t = uniform(rng, -5.0, 5.0);
    ASSERT_LE(brute_residual(make_nontrivial_root(mu, nu, t)), 1e-9);
  }
}

TEST(MakeNontrivialRoot, StaysOnManifoldUpToTenWithRelativeError) {
  std::mt19937_64 rng(12);
  for (int n = 0; n < 1'000; ++n) {
    const PureUnit mu = random_direction(rng);
    const PureUnit nu = random_perpendicular(mu, rng);
    const double t = uniform(rng, -10.0, 10.0);
    const Biquaternion q = make_nontrivial_root(mu, nu, t);
    // q^2 is formed from terms of size cosh(t)^2, so rounding scales with it
    EXPECT_LE(brute_residual(q), 1e-15 * std::cosh(t) * std::cosh(t) + 1e-12);
  }
}

// ---------------------------------------------------------------------------
// decompose

TEST(Decompose, SecondWorkedExample) {
  const DecomposedForm f = decompose({{0, 1, 1, 1}, {0, 0, 1, -1}});
  EXPECT_EQ(f.a, 0.0);
  EXPECT_DOUBLE_EQ(f.b, kSqrt3);
  EXPECT_EQ(f.c, 0.0);
  EXPECT_DOUBLE_EQ(f.d, kSqrt2);
  ASSERT_TRUE(f.mu && f.nu);
  expect_direction_near(*f.mu, diag_mu(), 1e-15);
  expect_direction_near(*f.nu, diag_nu(), 1e-15);
}

TEST(Decompose, RealUnitHasNoDirections) {
  const DecomposedForm f = decompose(real(basis::one));
  EXPECT_EQ(f.a, 1.0);
  EXPECT_EQ(f.b, 0.0);
  EXPECT_EQ(f.c, 0.0);
  EXPECT_EQ(f.d, 0.0);
  EXPECT_FALSE(f.mu);
  EXPECT_FALSE(f.nu);
}

TEST(Decompose, SignAbsorbedIntoDirection) {
  const DecomposedForm f = decompose(imag(-2.0 * basis::j));
  EXPECT_EQ(f.a, 0.0);
  EXPECT_EQ(f.b, 0.0);
  EXPECT_EQ(f.c, 0.0);
  EXPECT_EQ(f.d, 2.0);
  ASSERT_TRUE(f.nu);
  EXPECT_EQ(*f.nu, PureUnit::from_unit(0, -1, 0));
}

TEST(Decompose, ReconstructionProperty) {
  std::mt19937_64 rng(13);
  for (int n = 0; n < 10'000; ++n) {
    Biquaternion q = random_biquaternion(rng);
    // exercise absent directions too
    if (n % 5 == 0) q.qr = {q.qr.w, 0, 0, 0};
    if (n % 7 == 0) q.qi = {q.qi.w, 0, 0, 0};
    const DecomposedForm f = decompose(q);
    EXPECT_GE(f.b, 0.0);
    EXPECT_GE(f.d, 0.0);
    EXPECT_EQ(f.mu.has_value(), f.b != 0.0);
    EXPECT_EQ(f.nu.has_value(), f.d != 0.0);
    ASSERT_LE(max_abs_diff(f.reconstruct(), q), 1e-12 * std::max(1.0, q.norm()));
  }
}

// ---------------------------------------------------------------------------
// constraint_residuals

TEST(ConstraintResiduals, WorkedRootIsZero) {
  const Residuals r = constraint_residuals({{0, kSqrt2, 0, 0}, {0, 0, 1, 0}});
  EXPECT_NEAR(r.scalar, 0.0, 1e-12);
  EXPECT_LE(r.vector.norm(), 1e-12);
  EXPECT_NEAR(r.imag_scalar, 0.0, 1e-12);
  EXPECT_LE(r.imag_vector.norm(), 1e-12);
  EXPECT_LE(r.aggregate, 1e-12);
}

TEST(ConstraintResiduals, RealUnit) {
  const Residuals r = constraint_residuals(real(basis::one));
  EXPECT_EQ(r.scalar, 2.0);
  EXPECT_EQ(r.vector, Quaternion{});
  EXPECT_EQ(r.imag_scalar, 0.0);
  EXPECT_EQ(r.imag_vector, Quaternion{});
  EXPECT_EQ(r.aggregate, 2.0);
}

TEST(ConstraintResiduals, NilpotentElement) {
  const Biquaternion q = real(basis::i) + imag(basis::j);
  const Biquaternion expected = brute_square_plus_one(q);  // == 1
  const Residuals r = constraint_residuals(q);
  EXPECT_LE(max_abs_diff(r.reassemble(), expected), 1e-15);
  EXPECT_EQ(r.scalar, 1.0);
  EXPECT_EQ(r.vector, Quaternion{});
  EXPECT_EQ(r.imag_scalar, 0.0);
  EXPECT_EQ(r.imag_vector, Quaternion{});
}

TEST(ConstraintResiduals, ClosedFormsMatchGenericSquare) {
  std::mt19937_64 rng(14);
  for (int n = 0; n < 10'000; ++n) {
    const Biquaternion q = random_biquaternion(rng);
    const Residuals r = constraint_residuals(q);
    const Biquaternion truth = brute_square_plus_one(q);
    ASSERT_LE(max_abs_diff(r.reassemble(), truth), 1e-9);
    EXPECT_NEAR(r.aggregate, truth.norm(), 1e-9);
    EXPECT_EQ(r.vector.w, 0.0);
    EXPECT_EQ(r.imag_vector.w, 0.0);
  }
}

TEST(ConstraintResiduals, AggregateZeroIffComponentsZero) {
  std::mt19937_64 rng(15);
  for (int n = 0; n < 1'000; ++n) {
    const PureUnit mu = random_direction(rng);
    const Biquaternion q = make_nontrivial_root(mu, random_perpendicular(mu, rng), uniform(rng, 0, 3));
    const Residuals r = constraint_residuals(q);
    EXPECT_LE(r.aggregate, 1e-9);
    EXPECT_LE(std::abs(r.scalar) + r.vector.norm() + std::abs(r.imag_scalar) + r.imag_vector.norm(),
              1e-9);
  }
}

// ---------------------------------------------------------------------------
// classify_root

TEST(ClassifyRoot, FirstWorkedExampleIsNontrivial) {
  const auto c = classify_root({{0, kSqrt2, 0, 0}, {0, 0, 1, 0}});
  const auto* n = std::get_if<Nontrivial>(&c);
  ASSERT_NE(n, nullptr);
  expect_direction_near(n->mu, PureUnit::from_unit(1, 0, 0), 1e-15);
  expect_direction_near(n->nu, PureUnit::from_unit(0, 1, 0), 1e-15);
  EXPECT_NEAR(n->t, 0.881373587019543, 1e-12);  // asinh(1) = ln(1 + sqrt 2)
  EXPECT_NEAR(n->t, std::log(1.0 + kSqrt2), 1e-15);
}

TEST(ClassifyRoot, UnitPureQuaternion) {
  const auto c = classify_root(real(basis::k));
  const auto* u = std::get_if<UnitPure>(&c);
  ASSERT_NE(u, nullptr);
  EXPECT_EQ(u->mu, PureUnit::from_unit(0, 0, 1));
}

TEST(ClassifyRoot, ImaginaryUnitBothSigns) {
  const auto plus = classify_root(Biquaternion::from_coefficients(
      std::array<double, 8>{0, 0, 0, 0, 1, 0, 0, 0}));
  ASSERT_TRUE(std::holds_alternative<ImaginaryUnit>(plus));
  EXPECT_EQ(std::get<ImaginaryUnit>(plus).sign, 1);

  const auto minus = classify_root(Biquaternion::from_coefficients(
      std::array<double, 8>{0, 0, 0, 0, -1, 0, 0, 0}));
  ASSERT_TRUE(std::holds_alternative<ImaginaryUnit>(minus));
  EXPECT_EQ(std::get<ImaginaryUnit>(minus).sign, -1);
}

TEST(ClassifyRoot, NotRootCarriesResidual) {
  const Biquaternion q = real(basis::one + basis::i);
  const double expected = brute_residual(q);  // (1+i)^2 + 1 = 1 + 2i
  EXPECT_DOUBLE_EQ(expected, std::sqrt(5.0));
  const auto c = classify_root(q);
  ASSERT_TRUE(std::holds_alternative<NotRoot>(c));
  EXPECT_DOUBLE_EQ(std::get<NotRoot>(c).residual, expected);
  EXPECT_FALSE(is_root(c));
}

TEST(ClassifyRoot, RejectsBadInput) {
  EXPECT_THROW(classify_root(real({NAN, 0, 0, 0})), PreconditionError);
  EXPECT_THROW(classify_root(real(basis::i), 0.0), PreconditionError);
}

TEST(ClassifyRoot, RoundTripRecoversParameters) {
  std::mt19937_64 rng(16);
  for (int n = 0; n < 1'000; ++n) {
    const PureUnit mu = random_direction(rng);
    const PureUnit nu = random_perpendicular(mu, rng);
    const double t = 5.0 - uniform(rng, 0.0, 5.0);  // (0, 5]
    const auto c = classify_root(make_nontrivial_root(mu, nu, t));
    const auto* got = std::get_if<Nontrivial>(&c);
    ASSERT_NE(got, nullptr) << "t=" << t;
    EXPECT_NEAR(got->t, t, 1e-9);
    expect_direction_near(got->mu, mu, 1e-9);
    expect_direction_near(got->nu, nu, 1e-9);
  }
}

TEST(ClassifyRoot, NegativeParameterCanonicalizesDirection) {
  const PureUnit mu = diag_mu();
  const PureUnit nu = diag_nu();
  const auto c = classify_root(make_nontrivial_root(mu, nu, -0.7));
  const auto* got = std::get_if<Nontrivial>(&c);
  ASSERT_NE(got, nullptr);
  EXPECT_NEAR(got->t, 0.7, 1e-12);
  expect_direction_near(got->mu, mu, 1e-12);
  expect_direction_near(got->nu, -nu, 1e-12);
}

TEST(ClassifyRoot, DegenerateBoundaries) {
  const PureUnit mu = diag_mu();
  const auto c = classify_root(make_nontrivial_root(mu, diag_nu(), 0.0));
  ASSERT_TRUE(std::holds_alternative<UnitPure>(c));
  expect_direction_near(std::get<UnitPure>(c).mu, mu, 0.0);
}

TEST(ClassifyRoot, SoundnessAndNegationClosure) {
  std::mt19937_64 rng(17);
  const double tol = kDefaultTolerance;
  for (int n = 0; n < 5'000; ++n) {
    Biquaternion q;
    switch (n % 4) {
      case 0: q = random_biquaternion(rng, -2, 2); break;
      case 1: q = real(random_direction(rng).quaternion()); break;
      case 2: q = basis::I; break;
      default: {
        const PureUnit mu = random_direction(rng);
        q = make_nontrivial_root(mu, random_perpendicular(mu, rng), uniform(rng, -4, 4));
      }
    }
    const auto c = classify_root(q, tol);
    const auto neg = classify_root(-q, tol);
    EXPECT_EQ(is_root(c), is_root(neg));
    EXPECT_EQ(c.index(), neg.index());
    if (is_root(c)) {
      EXPECT_LE(max_abs_diff(brute_mul(q, q), real(-basis::one)), 10 * tol);
    }
  }
}

TEST(ClassifyRoot, SmallImaginaryModulusWithSlightlyTiltedDirection) {
  // d = 1e-5 and mu . nu = 1e-5: q^2 differs from -1 by about 2e-10, below
  // tolerance, so this is a root whose nu must be re-orthogonalized.
  const PureUnit mu = PureUnit::from_unit(1, 0, 0);
  const PureUnit tilted = PureUnit::normalized(1e-5, 1, 0);
  const double b = std::sqrt(1.0 + 1e-10);
  const Biquaternion q{b * mu.quaternion(), 1e-5 * tilted.quaternion()};
  const auto c = classify_root(q);
  const auto* got = std::get_if<Nontrivial>(&c);
  ASSERT_NE(got, nullptr);
  EXPECT_LE(std::abs(got->mu.dot(got->nu)), 1e-15);
  EXPECT_NEAR(got->t, std::asinh(1e-5), 1e-15);
}

TEST(ClassifyRoot, ViolationIsUnreachableOnDenseSweep) {
  // Every point near the three families either fails the residual test or
  // lands in a family; none raises TheoremViolation.
  std::mt19937_64 rng(18);
  for (int n = 0; n < 20'000; ++n) {
    const PureUnit mu = random_direction(rng);
    Biquaternion q = make_nontrivial_root(mu, random_perpendicular(mu, rng), uniform(rng, 0, 2));
    if (n % 3 == 1) q = real(mu.quaternion());
    if (n % 3 == 2) q = (n % 2 ? 1.0 : -1.0) * basis::I;
    const double eps = std::pow(10.0, -uniform(rng, 8, 13));
    q = q + eps * random_biquaternion(rng, -1, 1);
    EXPECT_NO_THROW((void)classify_root(q));
  }
}

// ---------------------------------------------------------------------------
// recover_parameter

TEST(RecoverParameter, WorkedModuli) {
  const auto m1 = recover_parameter(Nontrivial{{}, {}, std::asinh(1.0), 0.0});
  EXPECT_NEAR(m1.b, kSqrt2, 1e-15);
  EXPECT_NEAR(m1.d, 1.0, 1e-15);

  const auto m3 = recover_parameter(Nontrivial{{}, {}, std::asinh(2.0 * kSqrt2), 0.0});
  EXPECT_NEAR(m3.b, 3.0, 1e-14);
  EXPECT_NEAR(m3.d, 2.0 * kSqrt2, 1e-14);

  const auto m0 = recover_parameter(Nontrivial{{}, {}, 0.0, 0.0});
  EXPECT_EQ(m0.b, 1.0);
  EXPECT_EQ(m0.d, 0.0);
}

TEST(RecoverParameter, HyperbolicIdentity) {
  for (double t = 0.0; t <= 3.0; t += 0.01) {
    const auto m = recover_parameter(Nontrivial{{}, {}, t, 0.0});
    EXPECT_NEAR(m.b * m.b - m.d * m.d, 1.0, 1e-12);
  }
}

TEST(RecoverParameter, RejectsWrongVariant) {
  EXPECT_THROW(recover_parameter(RootClassification{UnitPure{}}), PreconditionError);
  EXPECT_THROW(recover_parameter(RootClassification{NotRoot{2.0}}), PreconditionError);
  const RootClassification ok = Nontrivial{{}, {}, 1.0, 0.0};
  EXPECT_NEAR(recover_parameter(ok).b, std::cosh(1.0), 0.0);
}

}  // namespace
}  // namespace biquat
