#pragma once

// Absolute Kähler differential forms over k = Q(x1..xr) (dx basis only) and
// over the truncated series rings k[t]/(t^M) (dx and dt), residues at t = 0,
// and normalization of relative forms over k_m modulo exact forms.

#include <bit>
#include <cstddef>
#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "milnorkit/error.hpp"
#include "milnorkit/field.hpp"
#include "milnorkit/series.hpp"

namespace milnorkit {

/// Set of zero-based dx indices, one bit per variable.
using Subset = std::uint32_t;

inline std::size_t subset_size(Subset s) { return static_cast<std::size_t>(std::popcount(s)); }

inline Subset subset_of(const std::vector<std::size_t>& indices) {
  Subset s = 0;
  for (auto j : indices) {
    require(j < 32, "at most 32 variables are supported in forms");
    require(!(s & (Subset{1} << j)), "repeated index in dx subset");
    s |= Subset{1} << j;
  }
  return s;
}

inline std::vector<std::size_t> subset_elements(Subset s) {
  std::vector<std::size_t> out;
  for (std::size_t j = 0; s != 0; ++j, s >>= 1)
    if (s & 1) out.push_back(j);
  return out;
}

/// Orders subsets by size, then lexicographically by their sorted elements.
struct SubsetLess {
  bool operator()(Subset a, Subset b) const {
    if (a == b) return false;
    auto pa = std::popcount(a), pb = std::popcount(b);
    if (pa != pb) return pa < pb;
    Subset diff = a ^ b;
    Subset low = diff & (~diff + 1);
    return (a & low) != 0;
  }
};

/// Sign of dx_a ^ dx_b in terms of dx_{a|b}; zero when a and b overlap.
inline int wedge_sign(Subset a, Subset b) {
  if (a & b) return 0;
  int inversions = 0;
  for (Subset rest = b; rest != 0; rest &= rest - 1) {
    Subset lowest = rest & (~rest + 1);
    // elements of a greater than this element of b
    inversions += std::popcount(a & ~(lowest | (lowest - 1)));
  }
  return inversions % 2 == 0 ? 1 : -1;
}

inline std::string subset_to_string(Subset s, const std::string& prefix = "") {
  std::string out = prefix;
  for (auto j : subset_elements(s)) {
    if (!out.empty()) out += "^";
    out += "dx" + std::to_string(j + 1);
  }
  return out;
}

namespace detail {

inline bool needs_parens(const std::string& s) {
  if (s.find('/') != std::string::npos) return true;
  return s.find_first_of("+-", 1) != std::string::npos;
}

/// Prefixes a basis element with its coefficient, e.g. "2*x1 dx2".
inline std::string scaled_basis(const std::string& coeff, const std::string& basis) {
  if (basis.empty()) return coeff;
  if (coeff == "1") return basis;
  if (coeff == "-1") return "-" + basis;
  if (coeff[0] == '-' && !needs_parens(coeff.substr(1)) && coeff.find('/') == std::string::npos)
    return coeff + " " + basis;
  if (coeff[0] == '-' && coeff.find_first_of("+-", 1) == std::string::npos)
    return "-(" + coeff.substr(1) + ") " + basis;
  return (needs_parens(coeff) ? "(" + coeff + ")" : coeff) + " " + basis;
}

inline void append_term(std::string& out, const std::string& term) {
  if (out.empty()) {
    out = term;
  } else if (term.front() == '-') {
    out += " - " + term.substr(1);
  } else {
    out += " + " + term;
  }
}

}  // namespace detail

/// Differential p-form over k: sum of f_S dx_S over p-element subsets S.
class KForm {
 public:
  using Terms = std::map<Subset, RationalFunction, SubsetLess>;

  KForm() = default;
  KForm(std::size_t nvars, std::size_t degree) : nvars_(nvars), degree_(degree) {}

  static KForm scalar(const RationalFunction& f) {
    KForm w(f.nvars(), 0);
    w.add_term(0, f);
    return w;
  }

  static KForm basis(std::size_t nvars, Subset s, const RationalFunction& coeff) {
    require(coeff.nvars() == nvars, "variable count mismatch in form coefficient");
    require(s < (Subset{1} << nvars) || nvars >= 32, "dx index out of range");
    KForm w(nvars, subset_size(s));
    w.add_term(s, coeff);
    return w;
  }

  /// df = sum_j (df/dx_j) dx_j.
  static KForm differential(const RationalFunction& f) {
    KForm w(f.nvars(), 1);
    for (std::size_t j = 0; j < f.nvars(); ++j) w.add_term(Subset{1} << j, f.partial(j));
    return w;
  }

  std::size_t nvars() const noexcept { return nvars_; }
  std::size_t degree() const noexcept { return degree_; }
  const Terms& terms() const noexcept { return terms_; }
  bool is_zero() const noexcept { return terms_.empty(); }

  RationalFunction coefficient(Subset s) const {
    auto it = terms_.find(s);
    return it == terms_.end() ? RationalFunction(nvars_) : it->second;
  }

  KForm operator-() const {
    KForm w = *this;
    for (auto& [s, c] : w.terms_) c = -c;
    return w;
  }

  friend KForm operator+(const KForm& a, const KForm& b) {
    a.check_compatible(b);
    KForm w = a;
    for (const auto& [s, c] : b.terms_) w.add_term(s, c);
    return w;
  }

  friend KForm operator-(const KForm& a, const KForm& b) { return a + (-b); }

  friend KForm operator*(const KForm& a, const RationalFunction& f) {
    KForm w(a.nvars_, a.degree_);
    if (f.is_zero()) return w;
    for (const auto& [s, c] : a.terms_) w.add_term(s, c * f);
    return w;
  }

  friend KForm operator*(const KForm& a, const Rational& q) {
    KForm w(a.nvars_, a.degree_);
    if (q == 0) return w;
    for (const auto& [s, c] : a.terms_) w.add_term(s, c * q);
    return w;
  }

  friend bool operator==(const KForm& a, const KForm& b) {
    if (a.nvars_ != b.nvars_ || a.degree_ != b.degree_ || a.terms_.size() != b.terms_.size())
      return false;
    for (auto i = a.terms_.begin(), j = b.terms_.begin(); i != a.terms_.end(); ++i, ++j)
      if (i->first != j->first || !(i->second == j->second)) return false;
    return true;
  }

  KForm wedge(const KForm& other) const {
    require(nvars_ == other.nvars_, "variable count mismatch in wedge product");
    KForm w(nvars_, degree_ + other.degree_);
    for (const auto& [s, c] : terms_) {
      for (const auto& [u, e] : other.terms_) {
        int sign = wedge_sign(s, u);
        if (sign == 0) continue;
        w.add_term(s | u, sign > 0 ? c * e : -(c * e));
      }
    }
    return w;
  }

  /// Exterior derivative: d(f dx_S) = sum_j df/dx_j dx_j ^ dx_S.
  KForm d() const {
    KForm w(nvars_, degree_ + 1);
    for (const auto& [s, c] : terms_) {
      for (std::size_t j = 0; j < nvars_; ++j) {
        Subset bit = Subset{1} << j;
        if (s & bit) continue;
        RationalFunction dc = c.partial(j);
        if (dc.is_zero()) continue;
        w.add_term(s | bit, wedge_sign(bit, s) > 0 ? dc : -dc);
      }
    }
    return w;
  }

  /// Canonical text: dx subsets in lex order, e.g. "2*x1 dx2 - (x1/x2) dx1^dx3".
  std::string to_string(const VariableNames& names = default_variable_name) const {
    std::string out;
    for (const auto& [s, c] : terms_)
      detail::append_term(out, detail::scaled_basis(c.to_string(names), subset_to_string(s)));
    return out.empty() ? "0" : out;
  }

  void add_term(Subset s, const RationalFunction& c) {
    if (c.is_zero()) return;
    require(subset_size(s) == degree_, "form term of the wrong degree");
    auto [it, inserted] = terms_.try_emplace(s, c);
    if (!inserted) {
      it->second = it->second + c;
      if (it->second.is_zero()) terms_.erase(it);
    }
  }

  void check_compatible(const KForm& other) const {
    require(nvars_ == other.nvars_, "variable count mismatch between forms");
    require(degree_ == other.degree_, "degree mismatch between forms");
  }

 private:
  std::size_t nvars_ = 0;
  std::size_t degree_ = 0;
  Terms terms_;
};

/// Differential p-form over k[t]/(t^M): a dx part sum c_S dx_S and a dt part
/// sum e_S dt^dx_S with dt always in the leftmost slot. Over k_m (over_km) the
/// relation t^{m-1} dt = 0 holds, so every dt coefficient vanishes at index
/// m - 1.
class SeriesForm {
 public:
  using Terms = std::map<Subset, Series, SubsetLess>;

  SeriesForm() = default;
  SeriesForm(std::size_t nvars, std::size_t degree, std::size_t precision, bool over_km = false)
      : nvars_(nvars), degree_(degree), precision_(precision), over_km_(over_km) {
    require(precision >= 1, "series precision must be positive");
  }

  static SeriesForm scalar(const Series& f) {
    SeriesForm w(f.nvars(), 0, f.precision());
    w.add_dx(0, f);
    return w;
  }

  static SeriesForm dx(const Series& coeff, Subset s) {
    SeriesForm w(coeff.nvars(), subset_size(s), coeff.precision());
    w.add_dx(s, coeff);
    return w;
  }

  /// coeff * dt ^ dx_s.
  static SeriesForm dt(const Series& coeff, Subset s) {
    SeriesForm w(coeff.nvars(), subset_size(s) + 1, coeff.precision());
    w.add_dt(s, coeff);
    return w;
  }

  /// Embeds a form over k as a form with t-constant coefficients.
  static SeriesForm from_kform(const KForm& w, std::size_t precision) {
    SeriesForm out(w.nvars(), w.degree(), precision);
    for (const auto& [s, c] : w.terms()) out.add_dx(s, Series::constant(c, precision));
    return out;
  }

  /// df = f' dt + sum_j (df/dx_j) dx_j.
  static SeriesForm differential(const Series& f) {
    SeriesForm w(f.nvars(), 1, f.precision());
    w.add_dt(0, f.derivative_t());
    for (std::size_t j = 0; j < f.nvars(); ++j) w.add_dx(Subset{1} << j, f.partial(j));
    return w;
  }

  std::size_t nvars() const noexcept { return nvars_; }
  std::size_t degree() const noexcept { return degree_; }
  std::size_t precision() const noexcept { return precision_; }
  bool over_km() const noexcept { return over_km_; }
  const Terms& dx_terms() const noexcept { return dx_; }
  const Terms& dt_terms() const noexcept { return dt_; }
  bool is_zero() const noexcept { return dx_.empty() && dt_.empty(); }

  SeriesForm operator-() const {
    SeriesForm w = *this;
    for (auto& [s, c] : w.dx_) c = -c;
    for (auto& [s, c] : w.dt_) c = -c;
    return w;
  }

  friend SeriesForm operator+(const SeriesForm& a, const SeriesForm& b) {
    a.check_compatible(b);
    require(a.degree_ == b.degree_, "degree mismatch between forms");
    SeriesForm w = a;
    for (const auto& [s, c] : b.dx_) w.add_dx(s, c);
    for (const auto& [s, c] : b.dt_) w.add_dt(s, c);
    return w;
  }

  friend SeriesForm operator-(const SeriesForm& a, const SeriesForm& b) { return a + (-b); }

  friend SeriesForm operator*(const SeriesForm& a, const Series& f) {
    require(f.precision() == a.precision_, "precision mismatch in scalar product");
    SeriesForm w = a.empty_like(a.degree_);
    for (const auto& [s, c] : a.dx_) w.add_dx(s, c * f);
    for (const auto& [s, c] : a.dt_) w.add_dt(s, c * f);
    return w;
  }

  friend bool operator==(const SeriesForm& a, const SeriesForm& b) {
    return a.nvars_ == b.nvars_ && a.degree_ == b.degree_ && a.precision_ == b.precision_ &&
           a.over_km_ == b.over_km_ && terms_equal(a.dx_, b.dx_) && terms_equal(a.dt_, b.dt_);
  }

  SeriesForm wedge(const SeriesForm& other) const {
    check_compatible(other);
    SeriesForm w = empty_like(degree_ + other.degree_);
    const int shift = degree_ % 2 == 0 ? 1 : -1;  // dx_S ^ dt = (-1)^|S| dt ^ dx_S
    for (const auto& [s, c] : dx_) {
      for (const auto& [u, e] : other.dx_) {
        int sign = wedge_sign(s, u);
        if (sign != 0) w.add_dx(s | u, sign > 0 ? c * e : -(c * e));
      }
      for (const auto& [u, e] : other.dt_) {
        int sign = wedge_sign(s, u) * shift;
        if (sign != 0) w.add_dt(s | u, sign > 0 ? c * e : -(c * e));
      }
    }
    for (const auto& [s, c] : dt_) {
      for (const auto& [u, e] : other.dx_) {
        int sign = wedge_sign(s, u);
        if (sign != 0) w.add_dt(s | u, sign > 0 ? c * e : -(c * e));
      }
    }
    return w;
  }

  /// Exterior derivative in both the x and t directions.
  SeriesForm d() const {
    SeriesForm w = empty_like(degree_ + 1);
    for (const auto& [s, c] : dx_) {
      w.add_dt(s, c.derivative_t());
      for (std::size_t j = 0; j < nvars_; ++j) {
        Subset bit = Subset{1} << j;
        if (s & bit) continue;
        Series dc = c.partial(j);
        w.add_dx(s | bit, wedge_sign(bit, s) > 0 ? dc : -dc);
      }
    }
    // d(e dt^dx_S) = sum_j de/dx_j dx_j ^ dt ^ dx_S = -sum_j de/dx_j dt ^ dx_j ^ dx_S
    for (const auto& [s, c] : dt_) {
      for (std::size_t j = 0; j < nvars_; ++j) {
        Subset bit = Subset{1} << j;
        if (s & bit) continue;
        Series dc = c.partial(j);
        w.add_dt(s | bit, wedge_sign(bit, s) > 0 ? -dc : dc);
      }
    }
    return w;
  }

  /// Restriction to t = 0: drops dt terms and evaluates dx coefficients.
  KForm eval_t0() const {
    KForm w(nvars_, degree_);
    for (const auto& [s, c] : dx_) w.add_term(s, c.eval_t0());
    return w;
  }

  /// Image in the forms over k_m = k[t]/(t^m).
  SeriesForm reduce_mod_km(std::size_t m) const {
    if (precision_ < m)
      throw PreconditionError("cannot reduce precision " + std::to_string(precision_) +
                              " form modulo t^" + std::to_string(m));
    SeriesForm w(nvars_, degree_, m, true);
    for (const auto& [s, c] : dx_) w.add_dx(s, c.truncate(m));
    for (const auto& [s, c] : dt_) w.add_dt(s, c.truncate(m));
    return w;
  }

  /// "(1-t) dt + t dx1", dt terms first, then dx terms in lex order.
  std::string to_string(const VariableNames& names = default_variable_name) const {
    std::string out;
    for (const auto& [s, c] : dt_)
      detail::append_term(out, detail::scaled_basis(c.to_string(names), subset_to_string(s, "dt")));
    for (const auto& [s, c] : dx_)
      detail::append_term(out, detail::scaled_basis(c.to_string(names), subset_to_string(s)));
    return out.empty() ? "0" : out;
  }

  void add_dx(Subset s, const Series& c) {
    require(subset_size(s) == degree_, "form term of the wrong degree");
    accumulate(dx_, s, c);
  }

  void add_dt(Subset s, const Series& c) {
    require(degree_ >= 1 && subset_size(s) + 1 == degree_, "form term of the wrong degree");
    accumulate(dt_, s, over_km_ ? c.zero_from(precision_ - 1) : c);
  }

 private:
  SeriesForm empty_like(std::size_t degree) const {
    return SeriesForm(nvars_, degree, precision_, over_km_);
  }

  void accumulate(Terms& terms, Subset s, const Series& c) {
    require(c.precision() == precision_, "precision mismatch in form coefficient");
    require(c.nvars() == nvars_, "variable count mismatch in form coefficient");
    if (c.is_zero()) return;
    auto [it, inserted] = terms.try_emplace(s, c);
    if (!inserted) {
      it->second = it->second + c;
      if (it->second.is_zero()) terms.erase(it);
    }
  }

  static bool terms_equal(const Terms& a, const Terms& b) {
    if (a.size() != b.size()) return false;
    for (auto i = a.begin(), j = b.begin(); i != a.end(); ++i, ++j)
      if (i->first != j->first || !(i->second == j->second)) return false;
    return true;
  }

  void check_compatible(const SeriesForm& other) const {
    require(nvars_ == other.nvars_, "variable count mismatch between forms");
    require(precision_ == other.precision_, "precision mismatch between forms");
    require(over_km_ == other.over_km_, "cannot combine forms over k_m with plain series forms");
  }

  std::size_t nvars_ = 0;
  std::size_t degree_ = 0;
  std::size_t precision_ = 1;
  bool over_km_ = false;
  Terms dx_;
  Terms dt_;
};

/// t^{-pole_order} * body.
struct LaurentForm {
  std::size_t pole_order = 0;
  SeriesForm body;
};

/// Logarithmic differential da/a of a unit.
inline SeriesForm dlog(const Series& a) {
  if (!a.is_unit()) throw PreconditionError("dlog of a non-unit series");
  Series inv = a.inverse();
  SeriesForm w(a.nvars(), 1, a.precision());
  w.add_dt(0, a.derivative_t() * inv);
  for (std::size_t j = 0; j < a.nvars(); ++j) {
    Series p = a.partial(j);
    if (!p.is_zero()) w.add_dx(Subset{1} << j, p * inv);
  }
  return w;
}

/// dlog a1 ^ ... ^ dlog an as a form over k_M (t^{M-1} dt = 0).
inline SeriesForm wedge_dlog_product(const std::vector<Series>& entries) {
  require(!entries.empty(), "dlog product needs at least one entry");
  SeriesForm w = dlog(entries.front());
  for (std::size_t j = 1; j < entries.size(); ++j) w = w.wedge(dlog(entries[j]));
  return w.reduce_mod_km(w.precision());
}

/// Coefficient of t^{-1} dt (dt leftmost) in t^{-i} * body.
inline KForm residue(const LaurentForm& w) {
  const SeriesForm& body = w.body;
  require(w.pole_order >= 1, "residue needs a pole of order at least 1");
  require(body.degree() >= 1, "residue of a 0-form");
  if (body.precision() < w.pole_order)
    throw PreconditionError("precision " + std::to_string(body.precision()) +
                            " too small for a residue at pole order " +
                            std::to_string(w.pole_order));
  KForm out(body.nvars(), body.degree() - 1);
  for (const auto& [s, c] : body.dt_terms()) out.add_term(s, c.coeff(w.pole_order - 1));
  return out;
}

/// Element of the direct sum of t^i Omega^p_k for i = 1..m-1, component i-1
/// holding the coefficient of t^i.
class RelClass {
 public:
  RelClass() = default;
  RelClass(std::size_t nvars, std::size_t degree, std::size_t modulus)
      : nvars_(nvars), degree_(degree), modulus_(modulus) {
    require(modulus >= 1, "modulus must be positive");
    components_.assign(modulus - 1, KForm(nvars, degree));
  }

  std::size_t nvars() const noexcept { return nvars_; }
  std::size_t degree() const noexcept { return degree_; }
  std::size_t modulus() const noexcept { return modulus_; }
  const std::vector<KForm>& components() const noexcept { return components_; }

  /// Component at t^i, 1 <= i <= m - 1.
  const KForm& at(std::size_t i) const {
    require(i >= 1 && i < modulus_, "relative class index out of range");
    return components_[i - 1];
  }

  void set(std::size_t i, KForm w) {
    require(i >= 1 && i < modulus_, "relative class index out of range");
    require(w.nvars() == nvars_ && w.degree() == degree_, "component shape mismatch");
    components_[i - 1] = std::move(w);
  }

  void add(std::size_t i, const KForm& w) { set(i, at(i) + w); }

  bool is_zero() const {
    for (const auto& c : components_)
      if (!c.is_zero()) return false;
    return true;
  }

  friend RelClass operator+(const RelClass& a, const RelClass& b) {
    a.check_compatible(b);
    RelClass out = a;
    for (std::size_t i = 0; i < out.components_.size(); ++i)
      out.components_[i] = out.components_[i] + b.components_[i];
    return out;
  }

  friend RelClass operator*(const RelClass& a, const Rational& q) {
    RelClass out = a;
    for (auto& c : out.components_) c = c * q;
    return out;
  }

  friend bool operator==(const RelClass& a, const RelClass& b) {
    return a.nvars_ == b.nvars_ && a.degree_ == b.degree_ && a.modulus_ == b.modulus_ &&
           a.components_ == b.components_;
  }

  /// sum_i t^i alpha_i as a form over k_m.
  SeriesForm embed() const {
    SeriesForm out(nvars_, degree_, modulus_, true);
    for (std::size_t i = 1; i < modulus_; ++i)
      for (const auto& [s, c] : components_[i - 1].terms())
        out.add_dx(s, Series::monomial(c, i, modulus_));
    return out;
  }

  /// One "[i=k] form" line per nonzero component; "0" for the zero class.
  std::string to_string(const VariableNames& names = default_variable_name) const {
    std::string out;
    for (std::size_t i = 1; i < modulus_; ++i) {
      if (components_[i - 1].is_zero()) continue;
      if (!out.empty()) out += "\n";
      out += "[i=" + std::to_string(i) + "] " + components_[i - 1].to_string(names);
    }
    return out.empty() ? "0" : out;
  }

  void check_compatible(const RelClass& other) const {
    require(nvars_ == other.nvars_ && degree_ == other.degree_ && modulus_ == other.modulus_,
            "relative class shape mismatch");
  }

 private:
  std::size_t nvars_ = 0;
  std::size_t degree_ = 0;
  std::size_t modulus_ = 1;
  std::vector<KForm> components_;
};

/// Class of a relative form over k_m modulo exact relative forms. Each dt term
/// t^j dt ^ beta (beta a form over k) is replaced by -t^{j+1}/(j+1) d(beta),
/// which differs from it by d(t^{j+1} beta / (j+1)). The replacement has no dt
/// part, so a single sweep reaches the normal form.
inline RelClass normalize_relative(const SeriesForm& w) {
  require(w.over_km(), "relative normalization needs a form over k_m");
  const std::size_t m = w.precision();
  if (!w.eval_t0().is_zero())
    throw PreconditionError("form is not relative: nonzero restriction to t = 0");
  RelClass out(w.nvars(), w.degree(), m);
  for (const auto& [s, c] : w.dx_terms())
    for (std::size_t i = 1; i < m; ++i)
      if (!c.coeff(i).is_zero()) out.add(i, KForm::basis(w.nvars(), s, c.coeff(i)));
  for (const auto& [s, c] : w.dt_terms()) {
    for (std::size_t j = 0; j + 1 < m; ++j) {
      if (c.coeff(j).is_zero()) continue;
      KForm beta = KForm::basis(w.nvars(), s, c.coeff(j));
      out.add(j + 1, beta.d() * Rational(-1, static_cast<long>(j + 1)));
    }
  }
  return out;
}

}  // namespace milnorkit
