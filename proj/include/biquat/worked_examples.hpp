#pragma once

/**
 * @file worked_examples.hpp
 * @brief Three hand-checkable nontrivial roots of -1, each given as a list
 * of summands so that squaring can be shown term by term.
 *
 *   1. sqrt(2) i + j I
 *   2. (i + j + k) + (j - k) I, i.e. sqrt(3) mu + sqrt(2) nu I with
 *      mu = (i + j + k)/sqrt(3), nu = (j - k)/sqrt(2)
 *   3. 3 nu + 2 sqrt(2) mu I, the same directions swapped
 */

#include <array>
#include <cmath>
#include <string>
#include <vector>

#include "biquat/algebra.hpp"

namespace biquat::worked {

struct Example {
  std::string label;
  std::vector<Biquaternion> parts;

  Biquaternion q() const {
    Biquaternion s;
    for (const auto& p : parts) s += p;
    return s;
  }
};

inline PureUnit diagonal_mu() {
  const double s = 1.0 / std::sqrt(3.0);
  return PureUnit::from_unit(s, s, s);
}

inline PureUnit diagonal_nu() {
  const double s = 1.0 / std::sqrt(2.0);
  return PureUnit::from_unit(0.0, s, -s);
}

inline Example example_one() {
  return {"sqrt(2) i + j I", {real(std::sqrt(2.0) * basis::i), imag(basis::j)}};
}

inline Example example_two() {
  return {"(i + j + k) + (j - k) I",
          {real(basis::i), real(basis::j), real(basis::k), imag(basis::j), imag(-basis::k)}};
}

inline Example example_three() {
  return {"3 nu + 2 sqrt(2) mu I",
          {real(3.0 * diagonal_nu().quaternion()),
           imag(2.0 * std::sqrt(2.0) * diagonal_mu().quaternion())}};
}

/// Expected pairwise products for example_two, row-major over
/// (i, j, k, jI, -kI).
inline std::array<Biquaternion, 25> example_two_table() {
  using namespace basis;
  const Biquaternion m1 = real(-one);
  const Biquaternion p1 = real(one);
  const Biquaternion Ip = imag(one);
  const Biquaternion In = imag(-one);
  return {
      m1,          real(k),     real(-j),    imag(k),   imag(j),
      real(-k),    m1,          real(i),     In,        imag(-i),
      real(j),     real(-i),    m1,          imag(-i),  Ip,
      imag(-k),    In,          imag(i),     p1,        real(i),
      imag(-j),    imag(i),     Ip,          real(-i),  p1,
  };
}

}  // namespace biquat::worked
