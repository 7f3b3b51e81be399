#pragma once

// Seeded generators of small random field elements, series and forms for the
// verification suites. Draws only use the raw mt19937_64 stream, so sequences
// are identical on every platform.

#include <cstddef>
#include <cstdint>
#include <memory>
#include <random>
#include <vector>

#include "milnorkit/expr.hpp"
#include "milnorkit/field.hpp"
#include "milnorkit/forms.hpp"
#include "milnorkit/series.hpp"

namespace milnorkit {

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Seed of trial `index` in a run seeded with `seed`.
inline std::uint64_t trial_seed(std::uint64_t seed, std::uint64_t index) {
  return splitmix64(seed ^ splitmix64(index + 1));
}

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  /// Uniform integer in [lo, hi].
  long uniform(long lo, long hi) {
    auto span = static_cast<std::uint64_t>(hi - lo) + 1;
    return lo + static_cast<long>(engine_() % span);
  }

  bool chance(long numerator, long denominator) { return uniform(1, denominator) <= numerator; }

  long nonzero(long bound) {
    long v = uniform(1, bound);
    return chance(1, 2) ? v : -v;
  }

 private:
  std::mt19937_64 engine_;
};

/// Nonzero polynomial with one or two terms, degree <= 1 in each variable and
/// small integer coefficients.
inline Poly random_poly(Rng& rng, std::size_t nvars) {
  Poly p(nvars);
  while (p.is_zero()) {
    long terms = rng.uniform(1, 2);
    for (long k = 0; k < terms; ++k) {
      Exponents e(nvars, 0);
      for (auto& x : e) x = static_cast<unsigned>(rng.uniform(0, 1));
      p = p + Poly::monomial(std::move(e), rng.nonzero(3));
    }
  }
  return p;
}

/// Nonzero element of Q(x1..xr); a true fraction about a third of the time.
inline RationalFunction random_nonzero(Rng& rng, std::size_t nvars) {
  Poly num = random_poly(rng, nvars);
  if (nvars > 0 && rng.chance(1, 3)) {
    Poly den = random_poly(rng, nvars);
    return RationalFunction(num, den);
  }
  return RationalFunction(num);
}

inline RationalFunction random_element(Rng& rng, std::size_t nvars) {
  return rng.chance(1, 4) ? RationalFunction(nvars) : random_nonzero(rng, nvars);
}

/// Zero a quarter of the time, otherwise a random_poly.
inline RationalFunction random_poly_element(Rng& rng, std::size_t nvars) {
  return rng.chance(1, 4) ? RationalFunction(nvars) : RationalFunction(random_poly(rng, nvars));
}

/// Series with the given constant term; higher coefficients are polynomials.
inline Series random_series_with(Rng& rng, std::size_t nvars, std::size_t precision,
                                 const RationalFunction& constant) {
  std::vector<RationalFunction> c{constant};
  for (std::size_t k = 1; k < precision; ++k) c.push_back(random_poly_element(rng, nvars));
  return Series(std::move(c));
}

inline Series random_series(Rng& rng, std::size_t nvars, std::size_t precision) {
  return random_series_with(rng, nvars, precision, random_element(rng, nvars));
}

inline Series random_unit(Rng& rng, std::size_t nvars, std::size_t precision) {
  return random_series_with(rng, nvars, precision, random_nonzero(rng, nvars));
}

/// Element of 1 + t k[t]/(t^M).
inline Series random_one_unit(Rng& rng, std::size_t nvars, std::size_t precision) {
  return random_series_with(rng, nvars, precision, RationalFunction::constant(nvars, 1));
}

/// Element of t k[t]/(t^M).
inline Series random_in_t(Rng& rng, std::size_t nvars, std::size_t precision) {
  return random_series_with(rng, nvars, precision, RationalFunction(nvars));
}

/// Unit a with 1 - a also a unit.
inline Series random_steinberg_unit(Rng& rng, std::size_t nvars, std::size_t precision) {
  while (true) {
    RationalFunction c = random_nonzero(rng, nvars);
    if (!c.is_one()) return random_series_with(rng, nvars, precision, c);
  }
}

/// n nonzero factors r1..rn of a monomial r1 dr2 ^ ... ^ drn over k.
inline std::vector<RationalFunction> random_monomial(Rng& rng, std::size_t nvars, std::size_t n) {
  std::vector<RationalFunction> r;
  for (std::size_t j = 0; j < n; ++j) r.push_back(random_nonzero(rng, nvars));
  return r;
}

inline std::vector<Subset> subsets_of_size(std::size_t nvars, std::size_t size) {
  std::vector<Subset> out;
  for (Subset s = 0; s < (Subset{1} << nvars); ++s)
    if (subset_size(s) == size) out.push_back(s);
  return out;
}

inline KForm random_kform(Rng& rng, std::size_t nvars, std::size_t degree) {
  KForm w(nvars, degree);
  for (Subset s : subsets_of_size(nvars, degree))
    if (rng.chance(2, 3)) w.add_term(s, random_nonzero(rng, nvars));
  return w;
}

/// Form over k_m whose restriction to t = 0 vanishes.
inline SeriesForm random_relative_form(Rng& rng, std::size_t nvars, std::size_t degree,
                                       std::size_t m) {
  SeriesForm w(nvars, degree, m, true);
  for (Subset s : subsets_of_size(nvars, degree))
    if (rng.chance(2, 3)) w.add_dx(s, random_in_t(rng, nvars, m));
  if (degree >= 1)
    for (Subset s : subsets_of_size(nvars, degree - 1))
      if (rng.chance(2, 3)) w.add_dt(s, random_series(rng, nvars, m));
  return w;
}

/// Form with random dx and dt parts; over k_m when over_km is set (then
/// precision is the modulus).
inline SeriesForm random_series_form(Rng& rng, std::size_t nvars, std::size_t degree,
                                     std::size_t precision, bool over_km = false) {
  SeriesForm w(nvars, degree, precision, over_km);
  for (Subset s : subsets_of_size(nvars, degree))
    if (rng.chance(1, 2)) w.add_dx(s, random_series(rng, nvars, precision));
  if (degree >= 1)
    for (Subset s : subsets_of_size(nvars, degree - 1))
      if (rng.chance(1, 2)) w.add_dt(s, random_series(rng, nvars, precision));
  return w;
}

inline RelClass random_rel_class(Rng& rng, std::size_t nvars, std::size_t degree, std::size_t m) {
  RelClass c(nvars, degree, m);
  for (std::size_t i = 1; i < m; ++i) c.set(i, random_kform(rng, nvars, degree));
  return c;
}

/// Random expression tree over x1..x_nvars and t; exponents at most 3.
inline ExprPtr random_expr(Rng& rng, std::size_t nvars, int depth) {
  using K = Expr::Kind;
  if (depth <= 0 || rng.chance(1, 4)) {
    long pick = rng.uniform(0, 2);
    if (pick == 0 || (pick == 1 && nvars == 0)) return Expr::literal(Integer(rng.uniform(0, 12)));
    if (pick == 1) return Expr::var(static_cast<std::size_t>(rng.uniform(1, static_cast<long>(nvars))));
    return Expr::var(0);
  }
  switch (rng.uniform(0, 8)) {
    case 0:
      return Expr::make(K::neg, {random_expr(rng, nvars, depth - 1)}, 0);
    case 1:
      return Expr::make(K::add, {random_expr(rng, nvars, depth - 1), random_expr(rng, nvars, depth - 1)}, 0);
    case 2:
      return Expr::make(K::sub, {random_expr(rng, nvars, depth - 1), random_expr(rng, nvars, depth - 1)}, 0);
    case 3:
      return Expr::make(K::mul, {random_expr(rng, nvars, depth - 1), random_expr(rng, nvars, depth - 1)}, 0);
    case 4:
      return Expr::make(K::div, {random_expr(rng, nvars, depth - 1), random_expr(rng, nvars, depth - 1)}, 0);
    case 5: {
      auto e = Expr::make(K::pow, {random_expr(rng, nvars, depth - 1)}, 0);
      std::const_pointer_cast<Expr>(e)->value = Integer(rng.uniform(0, 3));
      return e;
    }
    case 6:
      return Expr::make(K::exp, {random_expr(rng, nvars, depth - 1)}, 0);
    case 7:
      return Expr::make(K::log, {random_expr(rng, nvars, depth - 1)}, 0);
    default:
      return Expr::make(K::mul, {Expr::literal(Integer(rng.uniform(1, 9))), random_expr(rng, nvars, depth - 1)}, 0);
  }
}

}  // namespace milnorkit
