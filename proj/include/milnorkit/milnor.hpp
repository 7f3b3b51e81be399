#pragma once

// Milnor symbols over k_m = k[t]/(t^m) and the isomorphism between the
// relative Milnor K-group and the direct sum of t^i Omega^{n-1}_k.

#include <bit>
#include <cstddef>
#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "milnorkit/error.hpp"
#include "milnorkit/field.hpp"
#include "milnorkit/forms.hpp"
#include "milnorkit/series.hpp"

namespace milnorkit {

/// {a1, ..., an} with unit entries of a common precision.
class MilnorSymbol {
 public:
  MilnorSymbol() = default;
  explicit MilnorSymbol(std::vector<Series> entries) : entries_(std::move(entries)) {
    require(!entries_.empty(), "a Milnor symbol needs at least one entry");
    for (const auto& a : entries_) {
      entries_.front().check_compatible(a);
      if (!a.is_unit()) throw PreconditionError("Milnor symbol entry " + a.to_string() +
                                                " is not a unit");
    }
  }

  std::size_t length() const noexcept { return entries_.size(); }
  std::size_t precision() const { return entries_.front().precision(); }
  std::size_t nvars() const { return entries_.front().nvars(); }
  const std::vector<Series>& entries() const noexcept { return entries_; }
  const Series& operator[](std::size_t j) const { return entries_.at(j); }

  friend bool operator==(const MilnorSymbol& a, const MilnorSymbol& b) {
    return a.entries_ == b.entries_;
  }

  /// "{1+x1*t, x2}"
  std::string to_string(const VariableNames& names = default_variable_name) const {
    std::string out = "{";
    for (std::size_t j = 0; j < entries_.size(); ++j) {
      if (j > 0) out += ", ";
      out += entries_[j].to_string(names);
    }
    return out + "}";
  }

 private:
  std::vector<Series> entries_;
};

/// Integer combination of Milnor symbols of common length n and precision m,
/// stored in the canonical order of the symbols' printed form.
class MilnorChain {
 public:
  struct Term {
    MilnorSymbol symbol;
    long multiplicity = 0;
  };

  MilnorChain() = default;
  MilnorChain(std::size_t nvars, std::size_t length, std::size_t modulus)
      : nvars_(nvars), length_(length), modulus_(modulus) {}

  static MilnorChain of(const MilnorSymbol& s, long multiplicity = 1) {
    MilnorChain c(s.nvars(), s.length(), s.precision());
    c.add(s, multiplicity);
    return c;
  }

  std::size_t nvars() const noexcept { return nvars_; }
  std::size_t length() const noexcept { return length_; }
  std::size_t modulus() const noexcept { return modulus_; }
  bool is_empty() const noexcept { return terms_.empty(); }
  std::size_t size() const noexcept { return terms_.size(); }

  std::vector<Term> terms() const {
    std::vector<Term> out;
    out.reserve(terms_.size());
    for (const auto& [key, t] : terms_) out.push_back(t);
    return out;
  }

  void add(const MilnorSymbol& s, long multiplicity) {
    require(s.nvars() == nvars_ && s.length() == length_ && s.precision() == modulus_,
            "symbol shape does not match the chain");
    if (multiplicity == 0) return;
    auto [it, inserted] = terms_.try_emplace(s.to_string(), Term{s, 0});
    it->second.multiplicity += multiplicity;
    if (it->second.multiplicity == 0) terms_.erase(it);
  }

  friend MilnorChain operator+(const MilnorChain& a, const MilnorChain& b) {
    require(a.nvars_ == b.nvars_ && a.length_ == b.length_ && a.modulus_ == b.modulus_,
            "chain shape mismatch");
    MilnorChain out = a;
    for (const auto& [key, t] : b.terms_) out.add(t.symbol, t.multiplicity);
    return out;
  }

  friend bool operator==(const MilnorChain& a, const MilnorChain& b) {
    if (a.terms_.size() != b.terms_.size()) return false;
    for (auto i = a.terms_.begin(), j = b.terms_.begin(); i != a.terms_.end(); ++i, ++j)
      if (i->first != j->first || i->second.multiplicity != j->second.multiplicity) return false;
    return true;
  }

  /// "{1+t, x2} - 2*{x1, x2}"; "0" when empty.
  std::string to_string(const VariableNames& names = default_variable_name) const {
    std::string out;
    for (const auto& [key, t] : terms_) {
      long m = t.multiplicity;
      std::string body = t.symbol.to_string(names);
      std::string mag = (m == 1 || m == -1) ? body : std::to_string(m < 0 ? -m : m) + "*" + body;
      if (out.empty()) {
        out = (m < 0 ? "-" : "") + mag;
      } else {
        out += (m < 0 ? " - " : " + ") + mag;
      }
    }
    return out.empty() ? "0" : out;
  }

 private:
  std::size_t nvars_ = 0;
  std::size_t length_ = 0;
  std::size_t modulus_ = 1;
  std::map<std::string, Term> terms_;
};

/// Entrywise evaluation at t = 0, constants re-embedded at the same precision.
inline MilnorChain ev_t0(const MilnorChain& chain) {
  MilnorChain out(chain.nvars(), chain.length(), chain.modulus());
  for (const auto& t : chain.terms()) {
    std::vector<Series> entries;
    for (const auto& a : t.symbol.entries())
      entries.push_back(Series::constant(a.eval_t0(), a.precision()));
    out.add(MilnorSymbol(std::move(entries)), t.multiplicity);
  }
  return out;
}

/// Relative part of a symbol. Each entry is factored as a = a(0) * u with
/// u = a / a(0) in 1 + t k_m; expanding by multilinearity gives 2^n symbols.
/// The all-constant one is dropped, and in every other term the first
/// 1 + t k_m entry is swapped into slot 1 (sign -1 when it moves). Terms with
/// an entry equal to 1 vanish and are skipped.
inline MilnorChain rel_expand(const MilnorSymbol& symbol) {
  const std::size_t n = symbol.length();
  const std::size_t m = symbol.precision();
  require(n < 31, "symbol too long to expand");
  std::vector<Series> constants;
  std::vector<Series> units;
  for (const auto& a : symbol.entries()) {
    const RationalFunction& c = a.eval_t0();
    constants.push_back(Series::constant(c, m));
    units.push_back(a * c.inverse());
  }
  MilnorChain out(symbol.nvars(), n, m);
  const Series one = Series::one(symbol.nvars(), m);
  for (std::uint32_t mask = 1; mask < (std::uint32_t{1} << n); ++mask) {
    std::vector<Series> entries;
    bool trivial = false;
    for (std::size_t j = 0; j < n; ++j) {
      entries.push_back((mask >> j) & 1 ? units[j] : constants[j]);
      if (entries.back() == one) trivial = true;
    }
    if (trivial) continue;
    std::size_t first = static_cast<std::size_t>(std::countr_zero(mask));
    long sign = 1;
    if (first != 0) {
      std::swap(entries[0], entries[first]);
      sign = -1;
    }
    out.add(MilnorSymbol(std::move(entries)), sign);
  }
  return out;
}

/// Form log(a1) dlog a2 ^ ... ^ dlog an over k_m for a symbol with a1 = 1 mod t.
inline SeriesForm phi_form(const MilnorSymbol& symbol) {
  const std::size_t m = symbol.precision();
  if (!symbol[0].eval_t0().is_one())
    throw PreconditionError("first entry " + symbol[0].to_string() + " is not 1 mod t");
  SeriesForm w = SeriesForm::scalar(symbol[0].log());
  for (std::size_t j = 1; j < symbol.length(); ++j) w = w.wedge(dlog(symbol[j]));
  return w.reduce_mod_km(m);
}

/// The isomorphism from relative Milnor K to sum_i t^i Omega^{n-1}_k on a chain
/// of symbols whose first entries are 1 mod t.
inline RelClass phi(const MilnorChain& chain) {
  require(chain.length() >= 1, "empty symbol length");
  RelClass out(chain.nvars(), chain.length() - 1, chain.modulus());
  for (const auto& t : chain.terms())
    out = out + normalize_relative(phi_form(t.symbol)) * Rational(t.multiplicity);
  return out;
}

/// Class of r1 dr2 ^ ... ^ drn (entries in k_m) modulo exact relative forms.
inline RelClass monomial_class(const std::vector<Series>& r) {
  require(!r.empty(), "monomial needs at least one factor");
  const std::size_t m = r.front().precision();
  SeriesForm w = SeriesForm::scalar(r.front());
  for (std::size_t j = 1; j < r.size(); ++j) w = w.wedge(SeriesForm::differential(r[j]));
  return normalize_relative(w.reduce_mod_km(m));
}

/// Form r1 dr2 ^ ... ^ drn over k for r_j in k.
inline KForm monomial_form(const std::vector<RationalFunction>& r) {
  require(!r.empty(), "monomial needs at least one factor");
  KForm w = KForm::scalar(r.front());
  for (std::size_t j = 1; j < r.size(); ++j) w = w.wedge(KForm::differential(r[j]));
  return w;
}

/// Sends r1 dr2 ^ ... ^ drn in t^i Omega^{n-1}_k to {exp(r1 r2 ... rn t^i), r2, ..., rn}
/// over k_m, summed over the given monomials.
inline MilnorChain psi_slot(std::size_t i, const std::vector<std::vector<RationalFunction>>& monomials,
                            std::size_t nvars, std::size_t length, std::size_t m) {
  if (i < 1 || i >= m)
    throw PreconditionError("slot index " + std::to_string(i) + " outside 1.." +
                            std::to_string(m - 1));
  MilnorChain out(nvars, length, m);
  for (const auto& r : monomials) {
    require(r.size() == length, "monomial length does not match the symbol length");
    for (std::size_t j = 1; j < r.size(); ++j)
      if (r[j].is_zero()) throw PreconditionError("zero factor inside a dlog slot");
    if (r.front().is_zero()) continue;
    RationalFunction product = r.front();
    for (std::size_t j = 1; j < r.size(); ++j) product = product * r[j];
    std::vector<Series> entries{Series::monomial(product, i, m).exp()};
    for (std::size_t j = 1; j < r.size(); ++j) entries.push_back(Series::constant(r[j], m));
    out.add(MilnorSymbol(std::move(entries)), 1);
  }
  return out;
}

/// For r1..rl in (t) followed by units r_{l+1}..rn, the symbol
/// {exp(r1 r_{l+1} ... rn), exp(r2), ..., exp(rl), r_{l+1}, ..., rn}.
inline MilnorSymbol psi_general(const std::vector<Series>& r) {
  require(!r.empty(), "monomial needs at least one factor");
  std::size_t ell = 0;
  while (ell < r.size() && r[ell].eval_t0().is_zero()) ++ell;
  if (ell == 0) throw PreconditionError("first factor must lie in (t)");
  for (std::size_t j = ell; j < r.size(); ++j)
    if (!r[j].is_unit())
      throw PreconditionError("factors in (t) must precede the unit factors");
  Series head = r[0];
  for (std::size_t j = ell; j < r.size(); ++j) head = head * r[j];
  std::vector<Series> entries{head.exp()};
  for (std::size_t j = 1; j < ell; ++j) entries.push_back(r[j].exp());
  for (std::size_t j = ell; j < r.size(); ++j) entries.push_back(r[j]);
  return MilnorSymbol(std::move(entries));
}

/// Complete invariant of the relative part of a chain.
inline RelClass rel_class(const MilnorChain& chain) {
  RelClass out(chain.nvars(), chain.length() - 1, chain.modulus());
  for (const auto& t : chain.terms())
    out = out + phi(rel_expand(t.symbol)) * Rational(t.multiplicity);
  return out;
}

inline bool rel_eq(const MilnorChain& a, const MilnorChain& b) {
  return rel_class(a) == rel_class(b);
}

}  // namespace milnorkit
