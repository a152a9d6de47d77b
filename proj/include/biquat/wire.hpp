#pragma once

/**
 * @file wire.hpp
 * @brief Text and JSON forms of biquaternions.
 *
 * Text form: eight whitespace-separated decimal numbers in canonical order
 * (w_r x_r y_r z_r w_i x_i y_i z_i). Structured form: {"qr": [4], "qi": [4]}.
 * Numbers are written with 17 significant digits by default, which round
 * trips every double exactly.
 */

#include <array>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "biquat/algebra.hpp"

namespace biquat {

inline constexpr int kDefaultDigits = 17;

/// Malformed biquaternion text; `position` is the 1-based token index, or 0
/// when the problem is not tied to one token.
class ParseError : public PreconditionError {
 public:
  ParseError(const std::string& what, std::size_t position)
      : PreconditionError(what), position_(position) {}
  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

inline std::string format_number(double v, int digits = kDefaultDigits) {
  if (v == 0.0) v = 0.0;  // drop the sign of negative zero
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", digits, v);
  return buf;
}

inline std::string format_biquaternion(const Biquaternion& q, int digits = kDefaultDigits) {
  std::string out;
  for (double c : q.coefficients()) {
    if (!out.empty()) out += ' ';
    out += format_number(c, digits);
  }
  return out;
}

inline nlohmann::json to_json(const Biquaternion& q) {
  return {{"qr", {q.qr.w, q.qr.x, q.qr.y, q.qr.z}}, {"qi", {q.qi.w, q.qi.x, q.qi.y, q.qi.z}}};
}

inline nlohmann::json to_json(const PureUnit& u) { return {u.x(), u.y(), u.z()}; }

namespace detail {

inline std::vector<std::string_view> split_whitespace(std::string_view text) {
  std::vector<std::string_view> tokens;
  std::size_t pos = 0;
  while (pos < text.size()) {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
    const std::size_t start = pos;
    while (pos < text.size() && !std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
    if (pos > start) tokens.push_back(text.substr(start, pos - start));
  }
  return tokens;
}

inline double parse_number(std::string_view token, std::size_t position) {
  std::string_view body = token;
  if (!body.empty() && body.front() == '+') body.remove_prefix(1);
  double value = 0.0;
  const auto [end, ec] = std::from_chars(body.data(), body.data() + body.size(), value);
  if (ec != std::errc() || end != body.data() + body.size()) {
    throw ParseError("token " + std::to_string(position) + " ('" + std::string(token) +
                         "') is not a number",
                     position);
  }
  if (!std::isfinite(value)) {
    throw ParseError("token " + std::to_string(position) + " ('" + std::string(token) +
                         "') is not finite",
                     position);
  }
  return value;
}

inline Biquaternion parse_structured(std::string_view text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what(), 0);
  }
  if (!j.is_object() || !j.contains("qr") || !j.contains("qi")) {
    throw ParseError("structured form must be an object with \"qr\" and \"qi\"", 0);
  }
  std::array<double, 8> c{};
  std::size_t n = 0;
  for (const char* key : {"qr", "qi"}) {
    const auto& part = j.at(key);
    if (!part.is_array() || part.size() != 4) {
      throw ParseError(std::string("\"") + key + "\" must be an array of 4 numbers", 0);
    }
    for (const auto& v : part) {
      ++n;
      if (!v.is_number()) {
        throw ParseError("value " + std::to_string(n) + " is not a number", n);
      }
      c[n - 1] = v.get<double>();
      if (!std::isfinite(c[n - 1])) {
        throw ParseError("value " + std::to_string(n) + " is not finite", n);
      }
    }
  }
  return Biquaternion::from_coefficients(c);
}

}  // namespace detail

/// Reads exactly eight finite reals in canonical order. The input may also
/// be the structured JSON form.
inline Biquaternion parse_biquaternion(std::string_view text) {
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first != std::string_view::npos && text[first] == '{') return detail::parse_structured(text);

  const auto tokens = detail::split_whitespace(text);
  if (tokens.size() != 8) {
    throw ParseError("expected 8 numbers, got " + std::to_string(tokens.size()), 0);
  }
  std::array<double, 8> c{};
  for (std::size_t n = 0; n < tokens.size(); ++n) c[n] = detail::parse_number(tokens[n], n + 1);
  return Biquaternion::from_coefficients(c);
}

/// Symbolic rendering over the basis {1, i, j, k, I, iI, jI, kI}, for
/// example "-1", "1.4142135623730951kI" or "i - iI". Coefficients of
/// magnitude 1 are written as a bare sign.
inline std::string to_basis_string(const Biquaternion& q, int digits = kDefaultDigits) {
  static constexpr std::array<const char*, 8> labels{"", "i", "j", "k", "I", "iI", "jI", "kI"};
  const auto c = q.coefficients();
  std::string out;
  for (std::size_t n = 0; n < c.size(); ++n) {
    if (c[n] == 0.0) continue;
    const bool negative = c[n] < 0.0;
    const double mag = std::abs(c[n]);
    std::string term = (mag == 1.0 && n != 0) ? "" : format_number(mag, digits);
    term += labels[n];
    if (out.empty()) {
      out = (negative ? "-" : "") + term;
    } else {
      out += (negative ? " - " : " + ") + term;
    }
  }
  return out.empty() ? "0" : out;
}

}  // namespace biquat
