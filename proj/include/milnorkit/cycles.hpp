#pragma once

// Graph cycles over truncated k[[t]], their residue regulators, mod t^m
// equivalence, triangular systems, coefficient perturbation and t-adic
// polynomial approximation.

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "milnorkit/error.hpp"
#include "milnorkit/field.hpp"
#include "milnorkit/forms.hpp"
#include "milnorkit/milnor.hpp"
#include "milnorkit/series.hpp"

namespace milnorkit {

/// The graph {y1 = a1, ..., yn = an} of a tuple of units at precision M >= m.
/// Unit entries keep the graph away from every face of the cube.
class GraphCycle {
 public:
  GraphCycle() = default;
  GraphCycle(std::vector<Series> entries, std::size_t modulus)
      : entries_(std::move(entries)), modulus_(modulus) {
    require(!entries_.empty(), "a graph cycle needs at least one entry");
    require(modulus >= 1, "modulus must be positive");
    for (const auto& a : entries_) {
      entries_.front().check_compatible(a);
      if (!a.is_unit())
        throw PreconditionError("graph entry " + a.to_string() + " is not a unit");
    }
    if (precision() < modulus)
      throw PreconditionError("graph precision " + std::to_string(precision()) +
                              " is below the modulus " + std::to_string(modulus));
  }

  static GraphCycle of(const MilnorSymbol& s, std::size_t precision) {
    std::vector<Series> entries;
    for (const auto& a : s.entries()) entries.push_back(a.with_precision(precision));
    return GraphCycle(std::move(entries), s.precision());
  }

  std::size_t length() const noexcept { return entries_.size(); }
  std::size_t modulus() const noexcept { return modulus_; }
  std::size_t precision() const { return entries_.front().precision(); }
  std::size_t nvars() const { return entries_.front().nvars(); }
  const std::vector<Series>& entries() const noexcept { return entries_; }

  std::string to_string(const VariableNames& names = default_variable_name) const {
    std::string out = "(";
    for (std::size_t j = 0; j < entries_.size(); ++j) {
      if (j > 0) out += ", ";
      out += entries_[j].to_string(names);
    }
    return out + ")";
  }

 private:
  std::vector<Series> entries_;
  std::size_t modulus_ = 1;
};

/// Residue at t = 0 of t^{-i} dlog a1 ^ ... ^ dlog an; a form of degree n - 1.
inline KForm regulator(const GraphCycle& cycle, std::size_t i) {
  if (i < 1 || i >= cycle.modulus())
    throw PreconditionError("regulator index " + std::to_string(i) + " outside 1.." +
                            std::to_string(cycle.modulus() - 1));
  if (cycle.precision() < i + 1)
    throw PreconditionError("precision " + std::to_string(cycle.precision()) +
                            " too small for regulator index " + std::to_string(i));
  // The residue reads the t^{i-1} coefficient of the dt part, which only
  // depends on the entries mod t^{i+1}.
  std::vector<Series> entries;
  for (const auto& a : cycle.entries()) entries.push_back(a.truncate(i + 1));
  return residue(LaurentForm{i, wedge_dlog_product(entries)});
}

namespace detail {

inline void check_same_shape(const GraphCycle& a, const GraphCycle& b) {
  require(a.length() == b.length(), "graph cycles of different lengths");
  require(a.modulus() == b.modulus(), "graph cycles with different moduli");
  require(a.nvars() == b.nvars(), "graph cycles over different fields");
}

}  // namespace detail

/// Entrywise a_j = b_j mod t^m.
inline bool entries_congruent(const GraphCycle& a, const GraphCycle& b) {
  detail::check_same_shape(a, b);
  for (std::size_t j = 0; j < a.length(); ++j)
    if (!congruent_mod(a.entries()[j], b.entries()[j], a.modulus())) return false;
  return true;
}

/// Entrywise a_j = b_j (1 + c_j t^m), i.e. a_j / b_j - 1 has valuation >= m.
inline bool ratios_congruent(const GraphCycle& a, const GraphCycle& b) {
  detail::check_same_shape(a, b);
  const std::size_t m = a.modulus();
  for (std::size_t j = 0; j < a.length(); ++j) {
    Series x = a.entries()[j].truncate(m);
    Series y = b.entries()[j].truncate(m);
    Series ratio = x * y.inverse() - Series::one(x.nvars(), m);
    if (!ratio.is_zero()) return false;
  }
  return true;
}

/// Mod t^m equivalence of graph cycles. Both characterizations are evaluated
/// and must agree.
inline bool mod_tm_equal(const GraphCycle& a, const GraphCycle& b) {
  bool direct = entries_congruent(a, b);
  bool ratio = ratios_congruent(a, b);
  if (direct != ratio) throw std::logic_error("mod t^m characterizations disagree");
  return direct;
}

/// Regulator of the face (a, 1-a, a3, ..., an); identically zero.
inline KForm check_steinberg(const Series& a, const std::vector<Series>& tail, std::size_t i,
                             std::size_t m) {
  Series one = Series::one(a.nvars(), a.precision());
  Series b = one - a;
  if (!a.is_unit() || !b.is_unit())
    throw PreconditionError("Steinberg check needs a(0) different from 0 and 1");
  std::vector<Series> entries{a, b};
  entries.insert(entries.end(), tail.begin(), tail.end());
  return regulator(GraphCycle(std::move(entries), m), i);
}

/// Regulator defect of (ab, a2, ...) - (a, a2, ...) - (b, a2, ...); identically zero.
inline KForm check_multiplicativity(const Series& a, const Series& b,
                                    const std::vector<Series>& tail, std::size_t i,
                                    std::size_t m) {
  auto with_head = [&](const Series& head) {
    std::vector<Series> entries{head};
    entries.insert(entries.end(), tail.begin(), tail.end());
    return regulator(GraphCycle(std::move(entries), m), i);
  };
  return with_head(a * b) - with_head(a) - with_head(b);
}

/// Replaces every entry by its truncation below t^m (a polynomial in t).
/// Entries stay units and the result is mod t^m equal to the input.
inline GraphCycle graph_move(const GraphCycle& cycle) {
  std::vector<Series> entries;
  for (const auto& a : cycle.entries()) entries.push_back(a.zero_from(cycle.modulus()));
  return GraphCycle(std::move(entries), cycle.modulus());
}

/// Polynomial in y1..yn with coefficients in k[t]/(t^M).
class SeriesPoly {
 public:
  /// Descending lex order of y-exponents (y1 most significant).
  struct ExponentsGreater {
    bool operator()(const Exponents& a, const Exponents& b) const { return b < a; }
  };
  using Terms = std::map<Exponents, Series, ExponentsGreater>;

  SeriesPoly() = default;
  SeriesPoly(std::size_t yvars, std::size_t nvars, std::size_t precision)
      : yvars_(yvars), nvars_(nvars), precision_(precision) {}

  std::size_t yvars() const noexcept { return yvars_; }
  std::size_t nvars() const noexcept { return nvars_; }
  std::size_t precision() const noexcept { return precision_; }
  const Terms& terms() const noexcept { return terms_; }

  void add_term(Exponents e, const Series& c) {
    require(e.size() == yvars_, "monomial has the wrong number of y exponents");
    require(c.nvars() == nvars_ && c.precision() == precision_,
            "coefficient does not match the system");
    if (c.is_zero()) return;
    auto [it, inserted] = terms_.try_emplace(std::move(e), c);
    if (!inserted) {
      it->second = it->second + c;
      if (it->second.is_zero()) terms_.erase(it);
    }
  }

  static SeriesPoly constant(std::size_t yvars, const Series& c) {
    SeriesPoly p(yvars, c.nvars(), c.precision());
    p.add_term(Exponents(yvars, 0), c);
    return p;
  }

  /// y_{index+1}
  static SeriesPoly variable(std::size_t yvars, std::size_t index, std::size_t nvars,
                             std::size_t precision) {
    require(index < yvars, "y variable index out of range");
    SeriesPoly p(yvars, nvars, precision);
    Exponents e(yvars, 0);
    e[index] = 1;
    p.add_term(std::move(e), Series::one(nvars, precision));
    return p;
  }

  /// The coefficient of y^0 when no other monomial occurs.
  std::optional<Series> as_constant() const {
    if (terms_.empty()) return Series(nvars_, precision_);
    if (terms_.size() == 1 && std::all_of(terms_.begin()->first.begin(),
                                          terms_.begin()->first.end(),
                                          [](unsigned x) { return x == 0; }))
      return terms_.begin()->second;
    return std::nullopt;
  }

  SeriesPoly operator-() const {
    SeriesPoly out = *this;
    for (auto& [e, c] : out.terms_) c = -c;
    return out;
  }

  friend SeriesPoly operator+(const SeriesPoly& a, const SeriesPoly& b) {
    a.check_compatible(b);
    SeriesPoly out = a;
    for (const auto& [e, c] : b.terms_) out.add_term(e, c);
    return out;
  }

  friend SeriesPoly operator-(const SeriesPoly& a, const SeriesPoly& b) { return a + (-b); }

  friend SeriesPoly operator*(const SeriesPoly& a, const SeriesPoly& b) {
    a.check_compatible(b);
    SeriesPoly out(a.yvars_, a.nvars_, a.precision_);
    for (const auto& [ea, ca] : a.terms_)
      for (const auto& [eb, cb] : b.terms_) {
        Exponents e = ea;
        for (std::size_t j = 0; j < e.size(); ++j) e[j] += eb[j];
        out.add_term(std::move(e), ca * cb);
      }
    return out;
  }

  /// Division by an element free of y; the divisor must be a unit.
  friend SeriesPoly operator/(const SeriesPoly& a, const SeriesPoly& b) {
    auto c = b.as_constant();
    if (!c) throw PreconditionError("cannot divide by a polynomial involving y");
    if (!c->is_unit()) throw PreconditionError("division by a non-unit " + c->to_string());
    Series inv = c->inverse();
    SeriesPoly out(a.yvars_, a.nvars_, a.precision_);
    for (const auto& [e, x] : a.terms_) out.add_term(e, x * inv);
    return out;
  }

  friend bool operator==(const SeriesPoly& a, const SeriesPoly& b) {
    if (a.yvars_ != b.yvars_ || a.terms_.size() != b.terms_.size()) return false;
    for (auto i = a.terms_.begin(), j = b.terms_.begin(); i != a.terms_.end(); ++i, ++j)
      if (i->first != j->first || !(i->second == j->second)) return false;
    return true;
  }

  /// "3*y1*y2^2+y1+(1+t)*y2+1"
  std::string to_string(const VariableNames& names = default_variable_name) const {
    std::string out;
    auto ynames = [](std::size_t j) { return "y" + std::to_string(j + 1); };
    for (const auto& [e, c] : terms_) {
      std::string mono = Poly::monomial_to_string(e, ynames);
      std::string coeff = c.to_string(names);
      std::string term;
      if (mono.empty()) {
        term = detail::needs_parens(coeff) && !out.empty() ? "(" + coeff + ")" : coeff;
      } else if (coeff == "1") {
        term = mono;
      } else if (coeff == "-1") {
        term = "-" + mono;
      } else {
        term = (detail::needs_parens(coeff) ? "(" + coeff + ")" : coeff) + "*" + mono;
      }
      if (!out.empty() && term.front() != '-') out += "+";
      out += term;
    }
    return out.empty() ? "0" : out;
  }

  void check_compatible(const SeriesPoly& other) const {
    require(yvars_ == other.yvars_ && nvars_ == other.nvars_ && precision_ == other.precision_,
            "polynomial shape mismatch");
  }

 private:
  std::size_t yvars_ = 0;
  std::size_t nvars_ = 0;
  std::size_t precision_ = 1;
  Terms terms_;
};

/// A system of polynomial equations f1, ..., fk in y1..yn over k[t]/(t^M).
struct PolySystem {
  std::size_t yvars = 0;
  std::vector<SeriesPoly> equations;

  friend bool operator==(const PolySystem& a, const PolySystem& b) {
    return a.yvars == b.yvars && a.equations == b.equations;
  }

  std::string to_string(const VariableNames& names = default_variable_name) const {
    std::string out = "{";
    for (std::size_t j = 0; j < equations.size(); ++j) {
      if (j > 0) out += ", ";
      out += equations[j].to_string(names);
    }
    return out + "}";
  }
};

/// Outcome of the triangular-form check. condition is 0 for the variable
/// restriction (f_i only involves y1..yi) and 1, 2, 3 for the degree, leading
/// term and constant term conditions.
struct TriangularDiagnostics {
  bool valid = true;
  std::size_t equation = 0;  // one-based; 0 when valid
  int condition = 0;
  std::string message;
};

inline TriangularDiagnostics validate_triangular(const PolySystem& system) {
  auto fail = [](std::size_t eq, int cond, std::string msg) {
    return TriangularDiagnostics{false, eq, cond, std::move(msg)};
  };
  if (system.equations.size() != system.yvars)
    return fail(0, 0, "expected " + std::to_string(system.yvars) + " equations, found " +
                          std::to_string(system.equations.size()));
  for (std::size_t i = 0; i < system.equations.size(); ++i) {
    const auto& f = system.equations[i];
    const std::size_t eq = i + 1;
    const std::string name = "f" + std::to_string(eq);
    unsigned top = 0;
    for (const auto& [e, c] : f.terms()) {
      for (std::size_t j = i + 1; j < e.size(); ++j)
        if (e[j] != 0)
          return fail(eq, 0, name + " involves y" + std::to_string(j + 1));
      top = std::max(top, e[i]);
    }
    if (top == 0)
      return fail(eq, 1, name + " has degree 0 in y" + std::to_string(eq));
    for (const auto& [e, c] : f.terms()) {
      if (e[i] != top) continue;
      for (std::size_t j = 0; j < e.size(); ++j)
        if (j != i && e[j] != 0)
          return fail(eq, 2, "leading y" + std::to_string(eq) + "-term of " + name +
                                 " involves y" + std::to_string(j + 1));
    }
    Exponents zero(f.yvars(), 0);
    auto it = f.terms().find(zero);
    if (it == f.terms().end() || !(it->second == Series::one(f.nvars(), f.precision())))
      return fail(eq, 3, "constant term of " + name + " is not 1");
  }
  return {};
}

/// The graph of (a1, ..., an) as the system 1 - a_j^{-1} y_j = 0.
inline PolySystem graph_system(const GraphCycle& cycle) {
  PolySystem system{cycle.length(), {}};
  for (std::size_t j = 0; j < cycle.length(); ++j) {
    const Series& a = cycle.entries()[j];
    SeriesPoly f(cycle.length(), a.nvars(), a.precision());
    Exponents e(cycle.length(), 0);
    f.add_term(e, Series::one(a.nvars(), a.precision()));
    e[j] = 1;
    f.add_term(e, -a.inverse());
    system.equations.push_back(std::move(f));
  }
  return system;
}

/// Each nonzero monomial coefficient of a system replaced by its own slot
/// variable; slots are numbered by (equation, descending monomial order).
struct PerturbedFamily {
  struct Slot {
    std::size_t equation = 0;  // zero-based
    Exponents exponents;
  };

  std::size_t yvars = 0;
  std::size_t equations = 0;
  std::size_t nvars = 0;
  std::size_t precision = 1;
  std::vector<Slot> slots;
  std::vector<Series> alpha0;

  /// "{x_1 y_1 y_2^2 + x_2 y_1 + x_3 y_2 + x_4, x_5 y_1^2 y_2 + x_6 y_1 + x_7}"
  std::string to_string() const {
    auto ynames = [](std::size_t j) { return "y_" + std::to_string(j + 1); };
    std::string out = "{";
    for (std::size_t eq = 0; eq < equations; ++eq) {
      if (eq > 0) out += ", ";
      bool first = true;
      for (std::size_t k = 0; k < slots.size(); ++k) {
        if (slots[k].equation != eq) continue;
        if (!first) out += " + ";
        first = false;
        out += "x_" + std::to_string(k + 1);
        std::string mono = Poly::monomial_to_string(slots[k].exponents, ynames, " ");
        if (!mono.empty()) out += " " + mono;
      }
      if (first) out += "0";
    }
    return out + "}";
  }

  /// One line per slot: "x_k  f_i  monomial  value".
  std::string slot_table(const VariableNames& names = default_variable_name) const {
    auto ynames = [](std::size_t j) { return "y" + std::to_string(j + 1); };
    std::string out;
    for (std::size_t k = 0; k < slots.size(); ++k) {
      std::string mono = Poly::monomial_to_string(slots[k].exponents, ynames);
      out += "x_" + std::to_string(k + 1) + "  f" + std::to_string(slots[k].equation + 1) +
             "  " + (mono.empty() ? "1" : mono) + "  " + alpha0[k].to_string(names) + "\n";
    }
    return out;
  }
};

inline PerturbedFamily perturb(const PolySystem& system) {
  PerturbedFamily family;
  family.yvars = system.yvars;
  family.equations = system.equations.size();
  if (!system.equations.empty()) {
    family.nvars = system.equations.front().nvars();
    family.precision = system.equations.front().precision();
  }
  for (std::size_t eq = 0; eq < system.equations.size(); ++eq) {
    for (const auto& [e, c] : system.equations[eq].terms()) {
      family.slots.push_back({eq, e});
      family.alpha0.push_back(c);
    }
  }
  return family;
}

/// The member of the family at coefficient vector alpha; zero slots drop out.
inline PolySystem specialize(const PerturbedFamily& family, const std::vector<Series>& alpha) {
  if (alpha.size() != family.slots.size())
    throw PreconditionError("expected " + std::to_string(family.slots.size()) +
                            " coefficients, got " + std::to_string(alpha.size()));
  PolySystem system{family.yvars, {}};
  for (std::size_t eq = 0; eq < family.equations; ++eq)
    system.equations.emplace_back(family.yvars, family.nvars, family.precision);
  for (std::size_t k = 0; k < alpha.size(); ++k)
    system.equations[family.slots[k].equation].add_term(family.slots[k].exponents, alpha[k]);
  return system;
}

/// Every coefficient of a agrees with the matching coefficient of b mod t^m.
inline bool systems_congruent(const PolySystem& a, const PolySystem& b, std::size_t m) {
  if (a.yvars != b.yvars || a.equations.size() != b.equations.size()) return false;
  for (std::size_t eq = 0; eq < a.equations.size(); ++eq) {
    const auto& f = a.equations[eq];
    const auto& g = b.equations[eq];
    std::map<Exponents, std::pair<const Series*, const Series*>> joined;
    for (const auto& [e, c] : f.terms()) joined[e].first = &c;
    for (const auto& [e, c] : g.terms()) joined[e].second = &c;
    for (const auto& [e, pair] : joined) {
      const Series zero(f.nvars(), f.precision());
      const Series& x = pair.first ? *pair.first : zero;
      const Series& y = pair.second ? *pair.second : zero;
      if (!congruent_mod(x, y, m)) return false;
    }
  }
  return true;
}

/// Membership of alpha in the open t-adic ball of radius e^{-N} around alpha0:
/// every component difference has valuation >= N.
inline bool ball_member(const std::vector<Series>& alpha0, const std::vector<Series>& alpha,
                        std::size_t n) {
  require(alpha0.size() == alpha.size(), "coefficient vectors of different lengths");
  for (std::size_t j = 0; j < alpha.size(); ++j) {
    if (alpha0[j].precision() < n || alpha[j].precision() < n)
      throw PreconditionError("precision below the ball radius exponent " + std::to_string(n));
    int v = (alpha[j] - alpha0[j]).valuation();
    if (v != infinite_valuation && v < static_cast<int>(n)) return false;
  }
  return true;
}

/// Polynomial point of the ball of radius e^{-N}: each entry truncated below t^N.
inline std::vector<Series> approximate_polynomial(const std::vector<Series>& alpha0,
                                                  std::size_t n) {
  std::vector<Series> out;
  for (const auto& a : alpha0) {
    if (n > a.precision())
      throw PreconditionError("approximation order " + std::to_string(n) +
                              " exceeds precision " + std::to_string(a.precision()));
    out.push_back(a.zero_from(n));
  }
  return out;
}

}  // namespace milnorkit
