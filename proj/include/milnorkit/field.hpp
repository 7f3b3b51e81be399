#pragma once

// Exact arithmetic in k = Q(x1, ..., xr): sparse multivariate polynomials with
// rational coefficients and reduced fractions of them.

#include <gmpxx.h>

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "milnorkit/error.hpp"

namespace milnorkit {

using Rational = mpq_class;
using Integer = mpz_class;
using Exponents = std::vector<unsigned>;

/// Maps a zero-based variable index to its printed name.
using VariableNames = std::function<std::string(std::size_t)>;

inline std::string default_variable_name(std::size_t index) {
  return "x" + std::to_string(index + 1);
}

inline std::string rational_to_string(const Rational& q) { return q.get_str(); }

/// Sparse polynomial over Q in a fixed number of variables. Terms are kept in
/// ascending lexicographic order of exponent vectors (x1 most significant), so
/// the leading term is the last one. No stored coefficient is zero.
class Poly {
 public:
  struct Term {
    Exponents exponents;
    Rational coeff;
  };

  Poly() = default;
  explicit Poly(std::size_t nvars) : nvars_(nvars) {}

  static Poly constant(std::size_t nvars, const Rational& c) {
    return monomial(Exponents(nvars, 0), c);
  }

  static Poly variable(std::size_t nvars, std::size_t index) {
    require(index < nvars, "variable index out of range");
    Exponents e(nvars, 0);
    e[index] = 1;
    return monomial(std::move(e), 1);
  }

  static Poly monomial(Exponents exponents, const Rational& c) {
    Poly p(exponents.size());
    Rational q = c;
    q.canonicalize();
    if (q != 0) p.terms_.push_back({std::move(exponents), std::move(q)});
    return p;
  }

  std::size_t nvars() const noexcept { return nvars_; }
  const std::vector<Term>& terms() const noexcept { return terms_; }
  std::size_t size() const noexcept { return terms_.size(); }
  bool is_zero() const noexcept { return terms_.empty(); }

  bool is_constant() const {
    return terms_.empty() ||
           (terms_.size() == 1 && is_zero_exponent(terms_.front().exponents));
  }

  Rational constant_term() const {
    if (!terms_.empty() && is_zero_exponent(terms_.front().exponents))
      return terms_.front().coeff;
    return 0;
  }

  const Term& leading_term() const {
    require(!terms_.empty(), "leading term of the zero polynomial");
    return terms_.back();
  }

  unsigned degree_in(std::size_t index) const {
    unsigned d = 0;
    for (const auto& t : terms_) d = std::max(d, t.exponents[index]);
    return d;
  }

  Poly partial(std::size_t index) const {
    require(index < nvars_, "derivative index out of range");
    std::vector<Term> out;
    for (const auto& t : terms_) {
      if (t.exponents[index] == 0) continue;
      Term d{t.exponents, t.coeff * t.exponents[index]};
      --d.exponents[index];
      out.push_back(std::move(d));
    }
    // Lowering one exponent preserves the relative lex order of the survivors.
    Poly p(nvars_);
    p.terms_ = std::move(out);
    return p;
  }

  Poly operator-() const {
    Poly p = *this;
    for (auto& t : p.terms_) t.coeff = -t.coeff;
    return p;
  }

  friend Poly operator+(const Poly& a, const Poly& b) { return merge(a, b, false); }
  friend Poly operator-(const Poly& a, const Poly& b) { return merge(a, b, true); }

  friend Poly operator*(const Poly& a, const Poly& b) {
    a.check_compatible(b);
    if (a.is_zero() || b.is_zero()) return Poly(a.nvars_);
    if (b.terms_.size() == 1 && is_zero_exponent(b.terms_[0].exponents))
      return a * b.terms_[0].coeff;
    if (a.terms_.size() == 1 && is_zero_exponent(a.terms_[0].exponents))
      return b * a.terms_[0].coeff;
    std::map<Exponents, Rational> acc;
    Exponents e(a.nvars_);
    for (const auto& x : a.terms_) {
      for (const auto& y : b.terms_) {
        for (std::size_t j = 0; j < e.size(); ++j)
          e[j] = x.exponents[j] + y.exponents[j];
        auto [it, inserted] = acc.try_emplace(e, 0);
        it->second += x.coeff * y.coeff;
      }
    }
    Poly p(a.nvars_);
    p.terms_.reserve(acc.size());
    for (auto& [exps, c] : acc)
      if (c != 0) p.terms_.push_back({exps, std::move(c)});
    return p;
  }

  friend Poly operator*(const Poly& a, const Rational& c) {
    Rational q = c;
    q.canonicalize();
    if (q == 0) return Poly(a.nvars_);
    Poly p = a;
    for (auto& t : p.terms_) t.coeff *= q;
    return p;
  }

  friend bool operator==(const Poly& a, const Poly& b) {
    if (a.nvars_ != b.nvars_ || a.terms_.size() != b.terms_.size()) return false;
    for (std::size_t i = 0; i < a.terms_.size(); ++i) {
      if (a.terms_[i].exponents != b.terms_[i].exponents ||
          a.terms_[i].coeff != b.terms_[i].coeff)
        return false;
    }
    return true;
  }

  /// Terms in descending lex order, e.g. "x1^2+2*x1*x2-3". Zero prints "0".
  std::string to_string(const VariableNames& names = default_variable_name) const {
    if (terms_.empty()) return "0";
    std::string out;
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
      std::string term = term_to_string(*it, names);
      if (it != terms_.rbegin() && term.front() != '-') out += '+';
      out += term;
    }
    return out;
  }

  static std::string monomial_to_string(const Exponents& exponents,
                                        const VariableNames& names,
                                        const std::string& separator = "*") {
    std::string out;
    for (std::size_t j = 0; j < exponents.size(); ++j) {
      if (exponents[j] == 0) continue;
      if (!out.empty()) out += separator;
      out += names(j);
      if (exponents[j] > 1) out += "^" + std::to_string(exponents[j]);
    }
    return out;
  }

  void check_compatible(const Poly& other) const {
    if (nvars_ != other.nvars_)
      throw PreconditionError("variable count mismatch: " + std::to_string(nvars_) +
                              " vs " + std::to_string(other.nvars_));
  }

 private:
  static bool is_zero_exponent(const Exponents& e) {
    return std::all_of(e.begin(), e.end(), [](unsigned x) { return x == 0; });
  }

  static std::string term_to_string(const Term& t, const VariableNames& names) {
    std::string mono = monomial_to_string(t.exponents, names);
    if (mono.empty()) return rational_to_string(t.coeff);
    if (t.coeff == 1) return mono;
    if (t.coeff == -1) return "-" + mono;
    return rational_to_string(t.coeff) + "*" + mono;
  }

  static Poly merge(const Poly& a, const Poly& b, bool subtract) {
    a.check_compatible(b);
    Poly p(a.nvars_);
    p.terms_.reserve(a.terms_.size() + b.terms_.size());
    auto i = a.terms_.begin();
    auto j = b.terms_.begin();
    while (i != a.terms_.end() || j != b.terms_.end()) {
      if (j == b.terms_.end() || (i != a.terms_.end() && i->exponents < j->exponents)) {
        p.terms_.push_back(*i++);
      } else if (i == a.terms_.end() || j->exponents < i->exponents) {
        p.terms_.push_back({j->exponents, subtract ? Rational(-j->coeff) : j->coeff});
        ++j;
      } else {
        Rational c = subtract ? Rational(i->coeff - j->coeff) : Rational(i->coeff + j->coeff);
        if (c != 0) p.terms_.push_back({i->exponents, std::move(c)});
        ++i;
        ++j;
      }
    }
    return p;
  }

  std::size_t nvars_ = 0;
  std::vector<Term> terms_;
};

namespace detail {

inline bool divides(const Exponents& a, const Exponents& b) {
  for (std::size_t j = 0; j < a.size(); ++j)
    if (a[j] > b[j]) return false;
  return true;
}

/// Scales p to integer, coprime coefficients with a positive leading
/// coefficient. Returns the scale factor used.
inline Rational primitive_scale(const Poly& p) {
  if (p.is_zero()) return 1;
  Integer num_gcd = 0;
  Integer den_lcm = 1;
  for (const auto& t : p.terms()) {
    mpz_gcd(num_gcd.get_mpz_t(), num_gcd.get_mpz_t(), t.coeff.get_num_mpz_t());
    mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), t.coeff.get_den_mpz_t());
  }
  Rational scale(den_lcm, num_gcd);
  scale.canonicalize();
  if (p.leading_term().coeff < 0) scale = -scale;
  return scale;
}

inline Poly normalized(const Poly& p) { return p * primitive_scale(p); }

/// Coefficients of p viewed as a polynomial in variable v.
inline std::map<unsigned, Poly> coefficients_in(const Poly& p, std::size_t v) {
  std::map<unsigned, Poly> out;
  for (const auto& t : p.terms()) {
    Exponents e = t.exponents;
    unsigned d = e[v];
    e[v] = 0;
    auto [it, inserted] = out.try_emplace(d, Poly(p.nvars()));
    it->second = it->second + Poly::monomial(std::move(e), t.coeff);
  }
  return out;
}

inline Poly variable_power(std::size_t nvars, std::size_t v, unsigned d) {
  Exponents e(nvars, 0);
  e[v] = d;
  return Poly::monomial(std::move(e), 1);
}

}  // namespace detail

/// Exact quotient a / b, or nullopt when b does not divide a.
inline std::optional<Poly> divide_exact(const Poly& a, const Poly& b) {
  a.check_compatible(b);
  require(!b.is_zero(), "division by the zero polynomial");
  Poly quotient(a.nvars());
  Poly rem = a;
  const auto& lead_b = b.leading_term();
  while (!rem.is_zero()) {
    const auto& lead_r = rem.leading_term();
    if (!detail::divides(lead_b.exponents, lead_r.exponents)) return std::nullopt;
    Exponents e(a.nvars());
    for (std::size_t j = 0; j < e.size(); ++j)
      e[j] = lead_r.exponents[j] - lead_b.exponents[j];
    Poly step = Poly::monomial(std::move(e), lead_r.coeff / lead_b.coeff);
    quotient = quotient + step;
    rem = rem - step * b;
  }
  return quotient;
}

namespace detail {

inline Poly gcd_from(const Poly& a, const Poly& b, std::size_t v, bool fast = true);

/// gcd of the coefficients of p with respect to variable v.
inline Poly content_in(const Poly& p, std::size_t v, bool fast = true) {
  Poly g(p.nvars());
  for (const auto& [d, c] : coefficients_in(p, v)) {
    g = gcd_from(g, c, v + 1, fast);
    if (g.is_constant()) break;
  }
  return g;
}

inline Poly primitive_part_in(const Poly& p, std::size_t v) {
  Poly c = content_in(p, v);
  if (c.is_constant()) return normalized(p);
  return normalized(*divide_exact(p, c));
}

/// Pseudo-remainder of a by b with respect to variable v.
inline Poly pseudo_remainder(Poly a, const Poly& b, std::size_t v) {
  unsigned db = b.degree_in(v);
  Poly lead_b = coefficients_in(b, v).rbegin()->second;
  while (!a.is_zero()) {
    unsigned da = a.degree_in(v);
    if (da < db) break;
    Poly lead_a = coefficients_in(a, v).rbegin()->second;
    a = lead_b * a - lead_a * variable_power(a.nvars(), v, da - db) * b;
  }
  return a;
}

inline Poly monomial_gcd(const Poly::Term& mono, const Poly& p) {
  Exponents e = mono.exponents;
  for (const auto& t : p.terms())
    for (std::size_t j = 0; j < e.size(); ++j) e[j] = std::min(e[j], t.exponents[j]);
  return Poly::monomial(std::move(e), 1);
}

namespace modp {

// Arithmetic modulo the Mersenne prime 2^61 - 1.
constexpr std::uint64_t prime = (std::uint64_t{1} << 61) - 1;

inline std::uint64_t reduce(unsigned __int128 x) {
  std::uint64_t lo = static_cast<std::uint64_t>(x & prime) + static_cast<std::uint64_t>(x >> 61);
  lo = (lo & prime) + (lo >> 61);
  return lo >= prime ? lo - prime : lo;
}
inline std::uint64_t mul(std::uint64_t a, std::uint64_t b) {
  return reduce(static_cast<unsigned __int128>(a) * b);
}
inline std::uint64_t add(std::uint64_t a, std::uint64_t b) {
  std::uint64_t s = a + b;
  return s >= prime ? s - prime : s;
}
inline std::uint64_t sub(std::uint64_t a, std::uint64_t b) { return a >= b ? a - b : a + prime - b; }
inline std::uint64_t power(std::uint64_t a, std::uint64_t e) {
  std::uint64_t r = 1;
  for (; e; e >>= 1, a = mul(a, a))
    if (e & 1) r = mul(r, a);
  return r;
}
inline std::uint64_t inverse(std::uint64_t a) { return power(a, prime - 2); }

inline std::uint64_t of(const Integer& z) {
  Integer r = z % Integer(static_cast<unsigned long>(prime));
  if (r < 0) r += static_cast<unsigned long>(prime);
  return r.get_ui();
}

/// Dense coefficients (index = degree in v) of an integer polynomial with every
/// other variable set to point[j]. Returns nullopt when the leading coefficient
/// vanishes at the point.
inline std::optional<std::vector<std::uint64_t>> image(const Poly& p, std::size_t v,
                                                       const std::vector<std::uint64_t>& point) {
  std::vector<std::uint64_t> c(p.degree_in(v) + 1, 0);
  for (const auto& t : p.terms()) {
    std::uint64_t x = of(t.coeff.get_num());
    for (std::size_t j = 0; j < point.size(); ++j)
      if (j != v && t.exponents[j] != 0) x = mul(x, power(point[j], t.exponents[j]));
    c[t.exponents[v]] = add(c[t.exponents[v]], x);
  }
  if (c.back() == 0) return std::nullopt;
  return c;
}

inline void trim(std::vector<std::uint64_t>& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

inline std::size_t gcd_degree(std::vector<std::uint64_t> a, std::vector<std::uint64_t> b) {
  trim(a);
  trim(b);
  if (a.size() < b.size()) std::swap(a, b);
  while (!b.empty()) {
    std::uint64_t inv = inverse(b.back());
    while (a.size() >= b.size()) {
      std::uint64_t q = mul(a.back(), inv);
      std::size_t shift = a.size() - b.size();
      for (std::size_t k = 0; k < b.size(); ++k) a[k + shift] = sub(a[k + shift], mul(q, b[k]));
      trim(a);
      if (a.empty()) break;
    }
    std::swap(a, b);
  }
  return a.size() - 1;
}

}  // namespace modp

/// True when a and b are certainly coprime. For each variable v of positive
/// degree in both, the other variables are specialized modulo a prime; an image
/// gcd of degree 0 with both leading coefficients surviving bounds the true
/// gcd's degree in v by 0. False means "unknown".
inline bool certainly_coprime(const Poly& a, const Poly& b) {
  const std::size_t n = a.nvars();
  Poly ia = normalized(a);
  Poly ib = normalized(b);
  std::vector<std::uint64_t> point(n);
  std::uint64_t state = 0x243f6a8885a308d3ULL;
  for (std::size_t v = 0; v < n; ++v) {
    if (ia.degree_in(v) == 0 || ib.degree_in(v) == 0) continue;
    bool bounded = false;
    for (int attempt = 0; attempt < 2 && !bounded; ++attempt) {
      for (auto& x : point) {
        state = state * 6364136223846793005ULL + 1442695040888963407ULL;
        x = (state >> 3) % modp::prime;
      }
      auto fa = modp::image(ia, v, point);
      auto fb = modp::image(ib, v, point);
      if (fa && fb && modp::gcd_degree(*fa, *fb) == 0) bounded = true;
    }
    if (!bounded) return false;
  }
  return true;
}

namespace heu {

inline Integer max_norm(const Poly& p) {
  Integer m = 0;
  for (const auto& t : p.terms()) m = std::max<Integer>(m, abs(t.coeff.get_num()));
  return m;
}

inline Integer content(const Poly& p) {
  Integer g = 0;
  for (const auto& t : p.terms()) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), t.coeff.get_num_mpz_t());
  return g;
}

/// p with x_v = x, for integer x.
inline Poly substitute(const Poly& p, std::size_t v, const Integer& x) {
  std::map<Exponents, Rational> acc;
  for (const auto& t : p.terms()) {
    Exponents e = t.exponents;
    Integer power;
    mpz_pow_ui(power.get_mpz_t(), x.get_mpz_t(), e[v]);
    e[v] = 0;
    acc[e] += t.coeff * power;
  }
  Poly out(p.nvars());
  for (auto& [e, c] : acc)
    if (c != 0) out = out + Poly::monomial(e, c);
  return out;
}

/// Inverse of substitute for the unique polynomial with coefficients in
/// (-x/2, x/2]: symmetric x-adic digits of every coefficient of h.
inline Poly interpolate(Poly h, std::size_t v, const Integer& x) {
  Poly out(h.nvars());
  Integer half = x / 2;
  for (unsigned k = 0; !h.is_zero(); ++k) {
    Poly digit(h.nvars());
    for (const auto& t : h.terms()) {
      Integer c = t.coeff.get_num();
      Integer r;
      mpz_fdiv_r(r.get_mpz_t(), c.get_mpz_t(), x.get_mpz_t());
      if (r > half) r -= x;
      if (r != 0) digit = digit + Poly::monomial(t.exponents, Rational(r));
    }
    for (const auto& t : digit.terms()) {
      Exponents e = t.exponents;
      e[v] = k;
      out = out + Poly::monomial(std::move(e), t.coeff);
    }
    h = h - digit;
    Poly next(h.nvars());
    for (const auto& t : h.terms()) next = next + Poly::monomial(t.exponents, t.coeff / x);
    h = std::move(next);
  }
  return out;
}

inline Integer isqrt(const Integer& x) {
  Integer r;
  mpz_sqrt(r.get_mpz_t(), x.get_mpz_t());
  return r;
}

/// gcd of nonzero integer polynomials in the variables v, v+1, ..., with its
/// integer content. nullopt when every evaluation point was unlucky.
inline std::optional<Poly> gcd(Poly f, Poly g, std::size_t v) {
  const std::size_t n = f.nvars();
  while (v < n && f.degree_in(v) == 0 && g.degree_in(v) == 0) ++v;
  Integer cf = content(f), cg = content(g), c;
  mpz_gcd(c.get_mpz_t(), cf.get_mpz_t(), cg.get_mpz_t());
  if (v == n) return Poly::constant(n, Rational(c));
  f = f * Rational(1 / Rational(cf));
  g = g * Rational(1 / Rational(cg));
  Integer nf = max_norm(f), ng = max_norm(g);
  Integer b = 2 * std::min(nf, ng) + 29;
  Integer lf = abs(f.leading_term().coeff.get_num());
  Integer lg = abs(g.leading_term().coeff.get_num());
  Integer x = std::max<Integer>(std::min<Integer>(b, 99 * isqrt(b)),
                                2 * std::min<Integer>(nf / lf, ng / lg) + 2);
  for (int attempt = 0; attempt < 6; ++attempt) {
    Poly ff = substitute(f, v, x);
    Poly gg = substitute(g, v, x);
    if (!ff.is_zero() && !gg.is_zero()) {
      if (auto h = gcd(ff, gg, v + 1)) {
        Poly candidate = interpolate(*h, v, x);
        if (!candidate.is_zero()) {
          candidate = candidate * Rational(1 / Rational(content(candidate)));
          if (candidate.leading_term().coeff < 0) candidate = -candidate;
          if (divide_exact(f, candidate) && divide_exact(g, candidate))
            return candidate * Rational(c);
        }
      }
    }
    x = 73794 * x * isqrt(isqrt(x)) / 27011;
  }
  return std::nullopt;
}

}  // namespace heu

/// gcd of polynomials that only involve variables v, v+1, ... (primitive
/// polynomial remainder sequences, recursing on the variable index).
inline Poly gcd_from(const Poly& a, const Poly& b, std::size_t v, bool fast) {
  const std::size_t n = a.nvars();
  if (a.is_zero()) return normalized(b);
  if (b.is_zero()) return normalized(a);
  if (a.is_constant() || b.is_constant()) return Poly::constant(n, 1);
  if (a.size() == 1) return monomial_gcd(a.terms().front(), b);
  if (b.size() == 1) return monomial_gcd(b.terms().front(), a);
  if (fast) {
    if (certainly_coprime(a, b)) return Poly::constant(n, 1);
    if (auto h = heu::gcd(normalized(a), normalized(b), v)) return normalized(*h);
  }
  while (v < n && a.degree_in(v) == 0 && b.degree_in(v) == 0) ++v;
  if (v == n) return Poly::constant(n, 1);
  if (a.degree_in(v) == 0) return gcd_from(a, content_in(b, v, fast), v + 1, fast);
  if (b.degree_in(v) == 0) return gcd_from(content_in(a, v, fast), b, v + 1, fast);

  Poly ca = content_in(a, v, fast);
  Poly cb = content_in(b, v, fast);
  Poly c = gcd_from(ca, cb, v + 1, fast);
  Poly pa = ca.is_constant() ? a : *divide_exact(a, ca);
  Poly pb = cb.is_constant() ? b : *divide_exact(b, cb);
  if (pa.degree_in(v) < pb.degree_in(v)) std::swap(pa, pb);
  Poly g(n);
  while (true) {
    Poly rem = pseudo_remainder(pa, pb, v);
    if (rem.is_zero()) {
      g = primitive_part_in(pb, v);
      break;
    }
    if (rem.degree_in(v) == 0) {
      g = Poly::constant(n, 1);
      break;
    }
    pa = std::move(pb);
    pb = primitive_part_in(rem, v);
  }
  return normalized(c * g);
}

}  // namespace detail

/// Greatest common divisor, normalized to integer coprime coefficients with a
/// positive leading coefficient. gcd(0, 0) = 0.
inline Poly gcd(const Poly& a, const Poly& b) {
  a.check_compatible(b);
  return detail::gcd_from(a, b, 0);
}

/// Element of Q(x1, ..., xr). Always stored reduced: gcd(num, den) = 1 and the
/// denominator has integer coprime coefficients with positive leading
/// coefficient, so the representation is canonical.
class RationalFunction {
 public:
  RationalFunction() : num_(0), den_(Poly::constant(0, 1)) {}
  explicit RationalFunction(std::size_t nvars)
      : num_(nvars), den_(Poly::constant(nvars, 1)) {}
  explicit RationalFunction(Poly num)
      : num_(std::move(num)), den_(Poly::constant(num_.nvars(), 1)) {}
  RationalFunction(Poly num, Poly den) : num_(std::move(num)), den_(std::move(den)) {
    num_.check_compatible(den_);
    if (den_.is_zero()) throw PreconditionError("division by zero");
    canonicalize();
  }

  static RationalFunction constant(std::size_t nvars, const Rational& c) {
    return RationalFunction(Poly::constant(nvars, c));
  }
  static RationalFunction variable(std::size_t nvars, std::size_t index) {
    return RationalFunction(Poly::variable(nvars, index));
  }

  std::size_t nvars() const noexcept { return num_.nvars(); }
  const Poly& numerator() const noexcept { return num_; }
  const Poly& denominator() const noexcept { return den_; }
  bool is_zero() const noexcept { return num_.is_zero(); }
  bool is_constant() const { return num_.is_constant() && den_.is_constant(); }

  /// The rational value when this is a constant.
  std::optional<Rational> as_constant() const {
    if (!is_constant()) return std::nullopt;
    return num_.constant_term() / den_.constant_term();
  }

  bool is_one() const {
    auto c = as_constant();
    return c && *c == 1;
  }

  RationalFunction operator-() const {
    RationalFunction r = *this;
    r.num_ = -r.num_;
    return r;
  }

  friend RationalFunction operator+(const RationalFunction& a, const RationalFunction& b) {
    a.num_.check_compatible(b.num_);
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    if (a.den_ == b.den_) return RationalFunction(a.num_ + b.num_, a.den_);
    if (a.den_.is_constant() || b.den_.is_constant())
      return RationalFunction(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
    // Both inputs are reduced, so any common factor of the sum's numerator and
    // denominator divides g = gcd(den a, den b).
    Poly g = gcd(a.den_, b.den_);
    Poly ad = g.is_constant() ? a.den_ : *divide_exact(a.den_, g);
    Poly bd = g.is_constant() ? b.den_ : *divide_exact(b.den_, g);
    RationalFunction r(a.nvars());
    r.num_ = a.num_ * bd + b.num_ * ad;
    if (r.num_.is_zero()) return r;
    r.den_ = ad * b.den_;
    if (!g.is_constant()) {
      Poly h = gcd(r.num_, g);
      if (!h.is_constant()) {
        r.num_ = *divide_exact(r.num_, h);
        r.den_ = *divide_exact(r.den_, h);
      }
    }
    r.rescale();
    return r;
  }

  friend RationalFunction operator-(const RationalFunction& a, const RationalFunction& b) {
    return a + (-b);
  }

  friend RationalFunction operator*(const RationalFunction& a, const RationalFunction& b) {
    a.num_.check_compatible(b.num_);
    if (a.is_zero() || b.is_zero()) return RationalFunction(a.nvars());
    if (a.den_.is_constant() && b.den_.is_constant()) {
      RationalFunction r(a.nvars());
      r.num_ = a.num_ * b.num_;
      return r;
    }
    // Cross-cancel before multiplying to keep intermediate sizes down.
    Poly g1 = gcd(a.num_, b.den_);
    Poly g2 = gcd(b.num_, a.den_);
    Poly an = g1.is_constant() ? a.num_ : *divide_exact(a.num_, g1);
    Poly bd = g1.is_constant() ? b.den_ : *divide_exact(b.den_, g1);
    Poly bn = g2.is_constant() ? b.num_ : *divide_exact(b.num_, g2);
    Poly ad = g2.is_constant() ? a.den_ : *divide_exact(a.den_, g2);
    RationalFunction r(a.nvars());
    r.num_ = an * bn;
    r.den_ = ad * bd;
    r.rescale();
    return r;
  }

  friend RationalFunction operator*(const RationalFunction& a, const Rational& c) {
    RationalFunction r = a;
    r.num_ = r.num_ * c;
    if (r.num_.is_zero()) r.den_ = Poly::constant(r.nvars(), 1);
    return r;
  }

  RationalFunction inverse() const {
    if (is_zero()) throw PreconditionError("division by zero");
    return RationalFunction(den_, num_);
  }

  friend RationalFunction operator/(const RationalFunction& a, const RationalFunction& b) {
    return a * b.inverse();
  }

  /// d/dx_{index} (zero-based index) by the quotient rule.
  RationalFunction partial(std::size_t index) const {
    require(index < nvars(), "derivative index out of range");
    if (den_.is_constant()) return RationalFunction(num_.partial(index), den_);
    return RationalFunction(num_.partial(index) * den_ - num_ * den_.partial(index),
                            den_ * den_);
  }

  /// Equality by cross-multiplication; canonical forms make the structural
  /// comparison decisive in practice.
  friend bool operator==(const RationalFunction& a, const RationalFunction& b) {
    if (a.nvars() != b.nvars()) return false;
    if (a.num_ == b.num_ && a.den_ == b.den_) return true;
    return a.num_ * b.den_ == b.num_ * a.den_;
  }

  /// "x1", "2*x1^2-1", "x1/x2", "(x1+1)/(2*x2)". Parses back to the same value.
  std::string to_string(const VariableNames& names = default_variable_name) const {
    if (den_.is_constant()) return num_.to_string(names);
    // Clear fractions in the numerator into the printed denominator.
    Integer lcm = 1;
    for (const auto& t : num_.terms())
      mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), t.coeff.get_den_mpz_t());
    Poly num = num_ * Rational(lcm);
    Poly den = den_ * Rational(lcm);
    std::string n = num.to_string(names);
    if (num.size() > 1) n = "(" + n + ")";
    std::string d = den.to_string(names);
    const auto& lead = den.leading_term();
    bool bare = den.size() == 1 && lead.coeff == 1 &&
                std::count_if(lead.exponents.begin(), lead.exponents.end(),
                              [](unsigned e) { return e != 0; }) == 1;
    if (!bare) d = "(" + d + ")";
    return n + "/" + d;
  }

 private:
  void canonicalize() {
    if (num_.is_zero()) {
      den_ = Poly::constant(num_.nvars(), 1);
      return;
    }
    if (!den_.is_constant()) {
      Poly g = gcd(num_, den_);
      if (!g.is_constant()) {
        num_ = *divide_exact(num_, g);
        den_ = *divide_exact(den_, g);
      }
    }
    rescale();
  }

  void rescale() {
    if (den_.is_constant()) {
      num_ = num_ * (1 / den_.constant_term());
      den_ = Poly::constant(num_.nvars(), 1);
      return;
    }
    Rational s = detail::primitive_scale(den_);
    if (s != 1) {
      num_ = num_ * s;
      den_ = den_ * s;
    }
  }

  Poly num_;
  Poly den_;
};

inline RationalFunction operator*(const Rational& c, const RationalFunction& a) {
  return a * c;
}

}  // namespace milnorkit
