#pragma once

/**
 * @file roots.hpp
 * @brief Square roots of -1 among the biquaternions.
 *
 * Every biquaternion can be written q = (a + b mu) + (c + d nu) I with real
 * a, b, c, d and unit pure quaternions mu, nu. The solutions of q^2 = -1 are
 *
 *   q = b mu + d nu I   with mu perpendicular to nu and b^2 - d^2 = 1,
 *   q = mu              (a unit pure real quaternion),
 *   q = +-I             (the complex unit).
 *
 * The first family is parameterized by b = cosh t, d = sinh t.
 */

#include <cmath>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>

#include "biquat/algebra.hpp"

namespace biquat {

/// make_nontrivial_root was given directions that are not perpendicular.
class PerpendicularityError : public PreconditionError {
 public:
  explicit PerpendicularityError(double dot)
      : PreconditionError("directions are not perpendicular (dot product " +
                          std::to_string(dot) + ")"),
        dot_(dot) {}
  double dot() const { return dot_; }

 private:
  double dot_;
};

/// A residual below tolerance was paired with coefficients outside every
/// solution family. Reaching this means the classification theory is wrong
/// for the input, so it is never folded into NotRoot.
class TheoremViolation : public std::runtime_error {
 public:
  TheoremViolation(const Biquaternion& q, const std::string& what)
      : std::runtime_error("theorem violation: " + what), q_(q) {}
  const Biquaternion& input() const { return q_; }

 private:
  Biquaternion q_;
};

/// q = (a + b mu) + (c + d nu) I with b, d >= 0. A direction is absent
/// exactly when its magnitude is zero.
struct DecomposedForm {
  double a = 0.0;
  double b = 0.0;
  std::optional<PureUnit> mu;
  double c = 0.0;
  double d = 0.0;
  std::optional<PureUnit> nu;

  Biquaternion reconstruct() const {
    Quaternion qr{a, 0.0, 0.0, 0.0};
    Quaternion qi{c, 0.0, 0.0, 0.0};
    if (mu) qr += b * mu->quaternion();
    if (nu) qi += d * nu->quaternion();
    return {qr, qi};
  }
};

inline DecomposedForm decompose(const Biquaternion& q) {
  DecomposedForm f;
  f.a = q.qr.scalar();
  f.c = q.qi.scalar();
  const Quaternion vr = q.qr.vector();
  const Quaternion vi = q.qi.vector();
  f.b = vr.norm();
  f.d = vi.norm();
  if (f.b > 0.0) f.mu = PureUnit::normalized(vr);
  if (f.d > 0.0) f.nu = PureUnit::normalized(vi);
  return f;
}

/// Components of q^2 + 1 grouped by class: real scalar, real vector,
/// I-scalar and I-vector.
struct Residuals {
  double scalar = 0.0;
  Quaternion vector;
  double imag_scalar = 0.0;
  Quaternion imag_vector;
  /// Euclidean norm of the eight coefficients of q^2 + 1, from generic multiplication.
  double aggregate = 0.0;

  Biquaternion reassemble() const {
    return {Quaternion{scalar, 0.0, 0.0, 0.0} + vector,
            Quaternion{imag_scalar, 0.0, 0.0, 0.0} + imag_vector};
  }
};

/// Aggregate residual ||q^2 + 1||.
inline double root_residual(const Biquaternion& q) {
  Biquaternion s = q * q;
  s.qr.w += 1.0;
  return s.norm();
}

/// Closed forms in the decomposed variables:
///   scalar      = a^2 - b^2 - c^2 + d^2 + 1
///   vector      = 2ab mu - 2cd nu
///   imag_scalar = 2ac - 2bd (mu . nu)
///   imag_vector = 2ad nu + 2bc mu
/// The (cI)(d nu I) cross terms carry I^2 = -1 and land in the real vector.
inline Residuals constraint_residuals(const Biquaternion& q) {
  const DecomposedForm f = decompose(q);
  const Quaternion mu = f.mu ? f.mu->quaternion() : Quaternion{};
  const Quaternion nu = f.nu ? f.nu->quaternion() : Quaternion{};
  const double mu_dot_nu = (f.mu && f.nu) ? f.mu->dot(*f.nu) : 0.0;

  Residuals r;
  r.scalar = f.a * f.a - f.b * f.b - f.c * f.c + f.d * f.d + 1.0;
  r.vector = (2.0 * f.a * f.b) * mu - (2.0 * f.c * f.d) * nu;
  r.imag_scalar = 2.0 * f.a * f.c - 2.0 * f.b * f.d * mu_dot_nu;
  r.imag_vector = (2.0 * f.a * f.d) * nu + (2.0 * f.b * f.c) * mu;
  r.aggregate = root_residual(q);
  return r;
}

/// cosh(t) mu + sinh(t) nu I. At t = 0 the result is mu.
inline Biquaternion make_nontrivial_root(const PureUnit& mu, const PureUnit& nu, double t,
                                         double perpendicular_tol = kDefaultTolerance) {
  const double dot = mu.dot(nu);
  if (!(std::abs(dot) <= perpendicular_tol)) throw PerpendicularityError(dot);
  if (!std::isfinite(t)) throw PreconditionError("make_nontrivial_root: t must be finite");
  return {std::cosh(t) * mu.quaternion(), std::sinh(t) * nu.quaternion()};
}

// ---------------------------------------------------------------------------
// Classification

struct Nontrivial {
  PureUnit mu;
  PureUnit nu;
  double t = 0.0;  // > 0
  double residual = 0.0;
};

struct UnitPure {
  PureUnit mu;
  double residual = 0.0;
};

struct ImaginaryUnit {
  int sign = 1;
  double residual = 0.0;
};

struct NotRoot {
  double residual = 0.0;
};

using RootClassification = std::variant<Nontrivial, UnitPure, ImaginaryUnit, NotRoot>;

inline bool is_root(const RootClassification& c) { return !std::holds_alternative<NotRoot>(c); }

inline double residual_of(const RootClassification& c) {
  return std::visit([](const auto& v) { return v.residual; }, c);
}

/// Assigns q to one of the solution families, or NotRoot when
/// ||q^2 + 1|| > tol. The residual decides rootness; the family checks
/// afterwards are consistency assertions and throw TheoremViolation.
///
/// Perpendicularity is judged on 2 b d |mu . nu|, the term it contributes to
/// q^2, so small-d roots are not rejected for a direction mismatch that the
/// square cannot see. The reported nu is re-orthogonalized against mu.
inline RootClassification classify_root(const Biquaternion& q, double tol = kDefaultTolerance) {
  if (!(tol > 0.0)) throw PreconditionError("classify_root: tolerance must be positive");
  if (!q.is_finite()) throw PreconditionError("classify_root: non-finite coefficient");

  const double residual = root_residual(q);
  if (!(residual <= tol)) return NotRoot{residual};

  const DecomposedForm f = decompose(q);
  auto require = [&](bool ok, const char* what) {
    if (!ok) throw TheoremViolation(q, what);
  };

  if (f.b <= tol && f.d <= tol) {
    require(std::abs(f.a) <= tol, "imaginary-unit candidate has nonzero scalar part");
    require(std::abs(std::abs(f.c) - 1.0) <= tol, "imaginary-unit candidate has |c| != 1");
    return ImaginaryUnit{f.c > 0.0 ? 1 : -1, residual};
  }
  if (f.d <= tol && std::abs(f.c) <= tol) {
    require(std::abs(f.a) <= tol, "unit-pure candidate has nonzero scalar part");
    require(std::abs(f.b - 1.0) <= tol, "unit-pure candidate has |b| != 1");
    return UnitPure{*f.mu, residual};
  }

  require(std::abs(f.a) <= tol, "nontrivial candidate has a != 0");
  require(std::abs(f.c) <= tol, "nontrivial candidate has c != 0");
  require(std::abs(f.b * f.b - f.d * f.d - 1.0) <= tol, "nontrivial candidate has b^2 - d^2 != 1");
  require(f.mu.has_value() && f.nu.has_value(), "nontrivial candidate is missing a direction");
  const double dot = f.mu->dot(*f.nu);
  require(2.0 * f.b * f.d * std::abs(dot) <= tol, "nontrivial candidate has mu not perpendicular to nu");

  const Quaternion nu_perp = f.nu->quaternion() - dot * f.mu->quaternion();
  return Nontrivial{*f.mu, PureUnit::normalized(nu_perp), std::asinh(f.d), residual};
}

/// Moduli b = cosh t, d = sinh t of a nontrivial root.
struct HyperbolicModuli {
  double b;
  double d;
  double t;
};

inline HyperbolicModuli recover_parameter(const Nontrivial& n) {
  return {std::cosh(n.t), std::sinh(n.t), n.t};
}

inline HyperbolicModuli recover_parameter(const RootClassification& c) {
  if (const auto* n = std::get_if<Nontrivial>(&c)) return recover_parameter(*n);
  throw PreconditionError("recover_parameter: classification is not a nontrivial root");
}

}  // namespace biquat
