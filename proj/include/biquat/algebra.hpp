#pragma once

/**
 * @file algebra.hpp
 * @brief Real quaternions and biquaternions (complexified quaternions).
 *
 * A biquaternion is stored as q = q_r + q_i I with q_r, q_i real
 * quaternions and I the complex unit, which commutes with i, j, k.
 * The eight reals are laid out as (w_r, x_r, y_r, z_r, w_i, x_i, y_i, z_i).
 * The complex-components view w + x i + y j + z k with w, x, y, z complex
 * is a relabeling of the same eight reals.
 */

#include <algorithm>
#include <array>
#include <cmath>
#include <span>
#include <stdexcept>
#include <string>

namespace biquat {

/// Absolute tolerance used by every comparison unless overridden.
inline constexpr double kDefaultTolerance = 1e-9;

/// Raised when an operation's input violates its documented precondition.
class PreconditionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct Quaternion {
  double w = 0.0;
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  constexpr bool operator==(const Quaternion&) const = default;

  constexpr Quaternion operator-() const { return {-w, -x, -y, -z}; }
  constexpr Quaternion operator+(const Quaternion& o) const {
    return {w + o.w, x + o.x, y + o.y, z + o.z};
  }
  constexpr Quaternion operator-(const Quaternion& o) const {
    return {w - o.w, x - o.x, y - o.y, z - o.z};
  }
  constexpr Quaternion& operator+=(const Quaternion& o) { return *this = *this + o; }

  // Hamilton product, from i^2 = j^2 = k^2 = ijk = -1.
  constexpr Quaternion operator*(const Quaternion& o) const {
    return {w * o.w - x * o.x - y * o.y - z * o.z,
            w * o.x + x * o.w + y * o.z - z * o.y,
            w * o.y - x * o.z + y * o.w + z * o.x,
            w * o.z + x * o.y - y * o.x + z * o.w};
  }

  friend constexpr Quaternion operator*(double s, const Quaternion& q) {
    return {s * q.w, s * q.x, s * q.y, s * q.z};
  }

  constexpr double scalar() const { return w; }
  constexpr Quaternion vector() const { return {0.0, x, y, z}; }
  double norm() const { return std::sqrt(w * w + x * x + y * y + z * z); }
  bool is_finite() const {
    return std::isfinite(w) && std::isfinite(x) && std::isfinite(y) && std::isfinite(z);
  }
};

namespace basis {
inline constexpr Quaternion one{1.0, 0.0, 0.0, 0.0};
inline constexpr Quaternion i{0.0, 1.0, 0.0, 0.0};
inline constexpr Quaternion j{0.0, 0.0, 1.0, 0.0};
inline constexpr Quaternion k{0.0, 0.0, 0.0, 1.0};
}  // namespace basis

/// Scalar part and pure vector part of a real quaternion; scalar + vector == q.
struct ScalarVector {
  double scalar;
  Quaternion vector;
};

constexpr ScalarVector split(const Quaternion& q) { return {q.w, q.vector()}; }

struct DotCross {
  double dot;
  Quaternion cross;  // pure
};

/// Euclidean dot and cross product of two pure quaternions viewed as
/// 3-vectors. For pure u, v the Hamilton product satisfies uv = -dot + cross.
inline DotCross dot_cross(const Quaternion& u, const Quaternion& v,
                          double tol = kDefaultTolerance) {
  if (std::abs(u.w) > tol || std::abs(v.w) > tol) {
    throw PreconditionError("dot_cross: operands must be pure quaternions (scalar parts " +
                            std::to_string(u.w) + ", " + std::to_string(v.w) + ")");
  }
  return {u.x * v.x + u.y * v.y + u.z * v.z,
          {0.0, u.y * v.z - u.z * v.y, u.z * v.x - u.x * v.z, u.x * v.y - u.y * v.x}};
}

/// Unit pure quaternion (a direction on S^2). The scalar part is zero by
/// construction; the norm is one within the tolerance it was built with.
class PureUnit {
 public:
  /// The i axis.
  constexpr PureUnit() = default;

  /// Accepts (x, y, z) only if already unit within `tol`; stored as given.
  static PureUnit from_unit(double x, double y, double z, double tol = kDefaultTolerance) {
    const double n = std::sqrt(x * x + y * y + z * z);
    if (!std::isfinite(n) || std::abs(n - 1.0) > tol) {
      throw PreconditionError("PureUnit: vector norm " + std::to_string(n) + " is not 1");
    }
    return PureUnit(x, y, z);
  }

  /// Scales (x, y, z) to unit length. Rejects the zero vector.
  static PureUnit normalized(double x, double y, double z) {
    const double n = std::sqrt(x * x + y * y + z * z);
    if (!(n > 0.0) || !std::isfinite(n)) {
      throw PreconditionError("PureUnit: cannot normalize a zero or non-finite vector");
    }
    return PureUnit(x / n, y / n, z / n);
  }

  static PureUnit normalized(const Quaternion& v) { return normalized(v.x, v.y, v.z); }

  constexpr double x() const { return x_; }
  constexpr double y() const { return y_; }
  constexpr double z() const { return z_; }
  constexpr Quaternion quaternion() const { return {0.0, x_, y_, z_}; }
  constexpr PureUnit operator-() const { return PureUnit(-x_, -y_, -z_); }
  constexpr bool operator==(const PureUnit&) const = default;

  constexpr double dot(const PureUnit& o) const { return x_ * o.x_ + y_ * o.y_ + z_ * o.z_; }

 private:
  constexpr PureUnit(double x, double y, double z) : x_(x), y_(y), z_(z) {}

  double x_ = 1.0;
  double y_ = 0.0;
  double z_ = 0.0;
};

struct Biquaternion {
  Quaternion qr;  // real part
  Quaternion qi;  // coefficient of I

  constexpr bool operator==(const Biquaternion&) const = default;

  constexpr Biquaternion operator-() const { return {-qr, -qi}; }
  constexpr Biquaternion operator+(const Biquaternion& o) const { return {qr + o.qr, qi + o.qi}; }
  constexpr Biquaternion operator-(const Biquaternion& o) const { return {qr - o.qr, qi - o.qi}; }
  constexpr Biquaternion& operator+=(const Biquaternion& o) { return *this = *this + o; }

  // (p_r + p_i I)(q_r + q_i I) = (p_r q_r - p_i q_i) + (p_r q_i + p_i q_r) I
  constexpr Biquaternion operator*(const Biquaternion& o) const {
    return {qr * o.qr - qi * o.qi, qr * o.qi + qi * o.qr};
  }

  friend constexpr Biquaternion operator*(double s, const Biquaternion& q) {
    return {s * q.qr, s * q.qi};
  }

  /// Canonical coefficient order (w_r, x_r, y_r, z_r, w_i, x_i, y_i, z_i).
  constexpr std::array<double, 8> coefficients() const {
    return {qr.w, qr.x, qr.y, qr.z, qi.w, qi.x, qi.y, qi.z};
  }

  static constexpr Biquaternion from_coefficients(std::span<const double, 8> c) {
    return {{c[0], c[1], c[2], c[3]}, {c[4], c[5], c[6], c[7]}};
  }

  /// Euclidean norm of the eight real coefficients.
  double norm() const {
    double s = 0.0;
    for (double c : coefficients()) s += c * c;
    return std::sqrt(s);
  }

  bool is_finite() const { return qr.is_finite() && qi.is_finite(); }
};

/// Embeds a real quaternion as q + 0 I.
constexpr Biquaternion real(const Quaternion& q) { return {q, {}}; }
/// q I
constexpr Biquaternion imag(const Quaternion& q) { return {{}, q}; }

namespace basis {
inline constexpr Biquaternion I{{}, one};
}  // namespace basis

constexpr Biquaternion square(const Biquaternion& q) { return q * q; }

/// Largest absolute coefficient difference.
inline double max_abs_diff(const Biquaternion& a, const Biquaternion& b) {
  const auto ca = a.coefficients();
  const auto cb = b.coefficients();
  double m = 0.0;
  for (std::size_t n = 0; n < ca.size(); ++n) m = std::max(m, std::abs(ca[n] - cb[n]));
  return m;
}

inline bool approx_equal(const Biquaternion& a, const Biquaternion& b,
                         double tol = kDefaultTolerance) {
  return max_abs_diff(a, b) <= tol;
}

// ---------------------------------------------------------------------------
// Complex-components view

struct ComplexScalar {
  double re = 0.0;
  double im = 0.0;
  constexpr bool operator==(const ComplexScalar&) const = default;
};

/// q = w + x i + y j + z k with complex w, x, y, z.
struct ComplexView {
  ComplexScalar w, x, y, z;
  constexpr bool operator==(const ComplexView&) const = default;
};

// w = S(q_r) + S(q_i) I, and likewise for x, y, z.
constexpr ComplexView to_complex_view(const Biquaternion& q) {
  return {{q.qr.w, q.qi.w}, {q.qr.x, q.qi.x}, {q.qr.y, q.qi.y}, {q.qr.z, q.qi.z}};
}

// q_r = Re(w) + Re(x) i + Re(y) j + Re(z) k, q_i from the imaginary parts.
constexpr Biquaternion from_complex_view(const ComplexView& v) {
  return {{v.w.re, v.x.re, v.y.re, v.z.re}, {v.w.im, v.x.im, v.y.im, v.z.im}};
}

}  // namespace biquat
