#pragma once

// Truncated series rings k[t]/(t^M) over k = Q(x1, ..., xr).

#include <algorithm>
#include <climits>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "milnorkit/error.hpp"
#include "milnorkit/field.hpp"

namespace milnorkit {

/// Valuation reported for a series whose stored coefficients all vanish.
inline constexpr int infinite_valuation = INT_MAX;

/// Element of k[t]/(t^M). The precision M is part of the value: operations
/// between different precisions are rejected rather than coerced.
class Series {
 public:
  Series() : Series(0, 1) {}

  Series(std::size_t nvars, std::size_t precision)
      : nvars_(nvars), coeffs_(precision, RationalFunction(nvars)) {
    require(precision >= 1, "series precision must be positive");
  }

  explicit Series(std::vector<RationalFunction> coeffs) : coeffs_(std::move(coeffs)) {
    require(!coeffs_.empty(), "series precision must be positive");
    nvars_ = coeffs_.front().nvars();
    for (const auto& c : coeffs_)
      require(c.nvars() == nvars_, "variable count mismatch inside series");
  }

  static Series constant(const RationalFunction& c, std::size_t precision) {
    Series s(c.nvars(), precision);
    s.coeffs_[0] = c;
    return s;
  }

  static Series one(std::size_t nvars, std::size_t precision) {
    return constant(RationalFunction::constant(nvars, 1), precision);
  }

  /// c * t^k, zero when k >= precision.
  static Series monomial(const RationalFunction& c, std::size_t k, std::size_t precision) {
    Series s(c.nvars(), precision);
    if (k < precision) s.coeffs_[k] = c;
    return s;
  }

  std::size_t nvars() const noexcept { return nvars_; }
  std::size_t precision() const noexcept { return coeffs_.size(); }
  const RationalFunction& coeff(std::size_t k) const { return coeffs_.at(k); }
  const std::vector<RationalFunction>& coeffs() const noexcept { return coeffs_; }

  bool is_zero() const {
    for (const auto& c : coeffs_)
      if (!c.is_zero()) return false;
    return true;
  }

  bool is_unit() const { return !coeffs_[0].is_zero(); }

  /// True when the series is a constant (all t-coefficients vanish).
  bool is_constant() const {
    for (std::size_t k = 1; k < coeffs_.size(); ++k)
      if (!coeffs_[k].is_zero()) return false;
    return true;
  }

  Series operator-() const {
    Series s = *this;
    for (auto& c : s.coeffs_) c = -c;
    return s;
  }

  friend Series operator+(const Series& a, const Series& b) {
    a.check_compatible(b);
    Series s = a;
    for (std::size_t k = 0; k < s.coeffs_.size(); ++k)
      if (!b.coeffs_[k].is_zero()) s.coeffs_[k] = s.coeffs_[k] + b.coeffs_[k];
    return s;
  }

  friend Series operator-(const Series& a, const Series& b) { return a + (-b); }

  friend Series operator*(const Series& a, const Series& b) {
    a.check_compatible(b);
    const std::size_t n = a.precision();
    Series s(a.nvars_, n);
    for (std::size_t i = 0; i < n; ++i) {
      if (a.coeffs_[i].is_zero()) continue;
      for (std::size_t j = 0; i + j < n; ++j) {
        if (b.coeffs_[j].is_zero()) continue;
        s.coeffs_[i + j] = s.coeffs_[i + j] + a.coeffs_[i] * b.coeffs_[j];
      }
    }
    return s;
  }

  friend Series operator*(const Series& a, const RationalFunction& c) {
    Series s = a;
    for (auto& x : s.coeffs_)
      if (!x.is_zero()) x = x * c;
    return s;
  }

  friend Series operator*(const Series& a, const Rational& c) {
    Series s = a;
    for (auto& x : s.coeffs_) x = x * c;
    return s;
  }

  friend bool operator==(const Series& a, const Series& b) {
    return a.nvars_ == b.nvars_ && a.coeffs_ == b.coeffs_;
  }

  Series inverse() const {
    if (!is_unit()) throw PreconditionError("series is not a unit (zero constant term)");
    const std::size_t n = precision();
    Series s(nvars_, n);
    RationalFunction inv0 = coeffs_[0].inverse();
    s.coeffs_[0] = inv0;
    for (std::size_t k = 1; k < n; ++k) {
      RationalFunction acc(nvars_);
      for (std::size_t j = 1; j <= k; ++j)
        if (!coeffs_[j].is_zero() && !s.coeffs_[k - j].is_zero())
          acc = acc + coeffs_[j] * s.coeffs_[k - j];
      s.coeffs_[k] = -(acc * inv0);
    }
    return s;
  }

  /// log of a series with constant term 1, from (log a)' = a'/a. Agrees with
  /// the Mercator expansion of log(1 + (a - 1)) term by term.
  Series log() const {
    if (!coeffs_[0].is_one()) throw PreconditionError("log requires constant term 1");
    const std::size_t n = precision();
    Series inv = inverse();
    Series s(nvars_, n);
    for (std::size_t k = 1; k < n; ++k) {
      RationalFunction acc(nvars_);
      for (std::size_t j = 1; j <= k; ++j)
        if (!coeffs_[j].is_zero() && !inv.coeffs_[k - j].is_zero())
          acc = acc + coeffs_[j] * inv.coeffs_[k - j] * Rational(j);
      s.coeffs_[k] = acc * Rational(1, k);
    }
    return s;
  }

  /// exp of a series with zero constant term, from E' = a'E.
  Series exp() const {
    if (!coeffs_[0].is_zero()) throw PreconditionError("exp requires zero constant term");
    const std::size_t n = precision();
    Series s(nvars_, n);
    s.coeffs_[0] = RationalFunction::constant(nvars_, 1);
    for (std::size_t k = 1; k < n; ++k) {
      RationalFunction acc(nvars_);
      for (std::size_t j = 1; j <= k; ++j)
        if (!coeffs_[j].is_zero() && !s.coeffs_[k - j].is_zero())
          acc = acc + coeffs_[j] * s.coeffs_[k - j] * Rational(j);
      s.coeffs_[k] = acc * Rational(1, k);
    }
    return s;
  }

  /// Reduction modulo (t).
  const RationalFunction& eval_t0() const { return coeffs_[0]; }

  /// Index of the first nonzero coefficient, or infinite_valuation.
  int valuation() const {
    for (std::size_t k = 0; k < coeffs_.size(); ++k)
      if (!coeffs_[k].is_zero()) return static_cast<int>(k);
    return infinite_valuation;
  }

  /// The t-adic norm e^{-v}, reported by its exponent v.
  int norm_exponent() const { return valuation(); }

  /// Termwise d/dt, re-padded to the same precision with a trailing zero.
  Series derivative_t() const {
    Series s(nvars_, precision());
    for (std::size_t k = 1; k < coeffs_.size(); ++k)
      s.coeffs_[k - 1] = coeffs_[k] * Rational(k);
    return s;
  }

  /// Coefficientwise d/dx_{index}.
  Series partial(std::size_t index) const {
    Series s(nvars_, precision());
    for (std::size_t k = 0; k < coeffs_.size(); ++k)
      s.coeffs_[k] = coeffs_[k].partial(index);
    return s;
  }

  /// Image in k[t]/(t^m).
  Series truncate(std::size_t m) const {
    if (m > precision())
      throw PreconditionError("cannot truncate precision " + std::to_string(precision()) +
                              " series to " + std::to_string(m));
    require(m >= 1, "series precision must be positive");
    return Series(std::vector<RationalFunction>(coeffs_.begin(), coeffs_.begin() + m));
  }

  /// Same coefficients below t^m, zero from t^m on; precision is unchanged.
  Series zero_from(std::size_t m) const {
    Series s = *this;
    for (std::size_t k = m; k < s.coeffs_.size(); ++k) s.coeffs_[k] = RationalFunction(nvars_);
    return s;
  }

  /// Pads with zeros (or truncates) to the given precision.
  Series with_precision(std::size_t precision) const {
    require(precision >= 1, "series precision must be positive");
    std::vector<RationalFunction> c(coeffs_.begin(),
                                    coeffs_.begin() + std::min(precision, coeffs_.size()));
    c.resize(precision, RationalFunction(nvars_));
    return Series(std::move(c));
  }

  /// "1+x1*t-1/2*t^2", ascending in t. Parses back to the same value.
  std::string to_string(const VariableNames& names = default_variable_name) const {
    std::string out;
    for (std::size_t k = 0; k < coeffs_.size(); ++k) {
      if (coeffs_[k].is_zero()) continue;
      std::string term = term_to_string(coeffs_[k], k, names);
      if (!out.empty() && term.front() != '-') out += '+';
      out += term;
    }
    return out.empty() ? "0" : out;
  }

  void check_compatible(const Series& other) const {
    if (nvars_ != other.nvars_)
      throw PreconditionError("variable count mismatch between series");
    if (precision() != other.precision())
      throw PreconditionError("precision mismatch: " + std::to_string(precision()) + " vs " +
                              std::to_string(other.precision()));
  }

 private:
  static std::string term_to_string(const RationalFunction& c, std::size_t k,
                                    const VariableNames& names) {
    std::string body = c.to_string(names);
    if (k == 0) return body;
    std::string power = k == 1 ? "t" : "t^" + std::to_string(k);
    if (body == "1") return power;
    if (body == "-1") return "-" + power;
    bool single_term = c.denominator().is_constant() && c.numerator().size() == 1;
    if (single_term) return body + "*" + power;
    return "(" + body + ")*" + power;
  }

  std::size_t nvars_ = 0;
  std::vector<RationalFunction> coeffs_;
};

/// True when the first m coefficients agree.
inline bool congruent_mod(const Series& a, const Series& b, std::size_t m) {
  if (m > a.precision() || m > b.precision())
    throw PreconditionError("congruence modulus exceeds series precision");
  require(a.nvars() == b.nvars(), "variable count mismatch between series");
  for (std::size_t k = 0; k < m; ++k)
    if (!(a.coeff(k) == b.coeff(k))) return false;
  return true;
}

}  // namespace milnorkit
