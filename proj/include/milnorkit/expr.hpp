#pragma once

// Expression language for field and series inputs:
//   integers, x1..xr, t, unary -, + - * /, ^ with a non-negative integer
//   exponent, exp(.) and log(.). Polynomial systems also use y1..yn.
// Precedence: ^ binds tighter than unary minus, which binds tighter than * /,
// which bind tighter than + -. Binary operators are left-associative.

#include <algorithm>
#include <cctype>
#include <cstddef>
#include <functional>
#include <memory>
#include <string>
#include <string_view>
#include <type_traits>
#include <utility>
#include <vector>

#include "milnorkit/cycles.hpp"
#include "milnorkit/error.hpp"
#include "milnorkit/field.hpp"
#include "milnorkit/series.hpp"

namespace milnorkit {

struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

struct Expr {
  enum class Kind { integer, variable, yvariable, neg, add, sub, mul, div, pow, exp, log };

  Kind kind = Kind::integer;
  Integer value;             // literal, or the exponent of pow
  std::size_t variable = 0;  // 0 is t, j >= 1 is x_j (y_j for yvariable)
  std::vector<ExprPtr> args;
  std::size_t position = 0;  // offset in the source text

  static ExprPtr make(Kind kind, std::vector<ExprPtr> args, std::size_t position) {
    auto e = std::make_shared<Expr>();
    e->kind = kind;
    e->args = std::move(args);
    e->position = position;
    return e;
  }

  static ExprPtr literal(Integer v, std::size_t position = 0) {
    auto e = std::make_shared<Expr>();
    e->value = std::move(v);
    e->position = position;
    return e;
  }

  static ExprPtr var(std::size_t index, std::size_t position = 0, Kind kind = Kind::variable) {
    auto e = std::make_shared<Expr>();
    e->kind = kind;
    e->variable = index;
    e->position = position;
    return e;
  }
};

/// Structural equality, ignoring source positions.
inline bool same_tree(const Expr& a, const Expr& b) {
  if (a.kind != b.kind || a.args.size() != b.args.size()) return false;
  if (a.kind == Expr::Kind::integer || a.kind == Expr::Kind::pow)
    if (a.value != b.value) return false;
  if ((a.kind == Expr::Kind::variable || a.kind == Expr::Kind::yvariable) &&
      a.variable != b.variable)
    return false;
  for (std::size_t j = 0; j < a.args.size(); ++j)
    if (!same_tree(*a.args[j], *b.args[j])) return false;
  return true;
}

namespace detail {

class ExprParser {
 public:
  explicit ExprParser(std::string_view text) : text_(text) {}

  ExprPtr parse() {
    ExprPtr e = sum();
    skip_space();
    if (pos_ != text_.size())
      throw ParseError("unexpected '" + std::string(1, text_[pos_]) + "'", pos_);
    return e;
  }

 private:
  ExprPtr sum() {
    ExprPtr lhs = product();
    while (true) {
      skip_space();
      if (at('+') || at('-')) {
        std::size_t p = pos_;
        auto kind = text_[pos_++] == '+' ? Expr::Kind::add : Expr::Kind::sub;
        lhs = Expr::make(kind, {lhs, product()}, p);
      } else {
        return lhs;
      }
    }
  }

  ExprPtr product() {
    ExprPtr lhs = unary();
    while (true) {
      skip_space();
      if (at('*') || at('/')) {
        std::size_t p = pos_;
        auto kind = text_[pos_++] == '*' ? Expr::Kind::mul : Expr::Kind::div;
        lhs = Expr::make(kind, {lhs, unary()}, p);
      } else {
        return lhs;
      }
    }
  }

  ExprPtr unary() {
    skip_space();
    if (at('-')) {
      std::size_t p = pos_++;
      return Expr::make(Expr::Kind::neg, {unary()}, p);
    }
    return power();
  }

  ExprPtr power() {
    ExprPtr base = primary();
    skip_space();
    if (!at('^')) return base;
    std::size_t p = pos_++;
    skip_space();
    if (pos_ >= text_.size() || !std::isdigit(static_cast<unsigned char>(text_[pos_])))
      throw ParseError("exponent must be a non-negative integer", pos_);
    auto e = Expr::make(Expr::Kind::pow, {base}, p);
    std::const_pointer_cast<Expr>(e)->value = digits();
    return e;
  }

  ExprPtr primary() {
    skip_space();
    if (pos_ >= text_.size()) throw ParseError("unexpected end of input", pos_);
    char c = text_[pos_];
    std::size_t p = pos_;
    if (std::isdigit(static_cast<unsigned char>(c))) return Expr::literal(digits(), p);
    if (c == '(') {
      ++pos_;
      ExprPtr inner = sum();
      expect(')');
      return inner;
    }
    if (std::isalpha(static_cast<unsigned char>(c))) {
      std::string word;
      while (pos_ < text_.size() && std::isalnum(static_cast<unsigned char>(text_[pos_])))
        word += text_[pos_++];
      if (word == "t") return Expr::var(0, p);
      if (word == "exp" || word == "log") {
        skip_space();
        expect('(');
        ExprPtr arg = sum();
        expect(')');
        return Expr::make(word == "exp" ? Expr::Kind::exp : Expr::Kind::log, {arg}, p);
      }
      if (word.size() >= 2 && (word[0] == 'x' || word[0] == 'y') &&
          word.find_first_not_of("0123456789", 1) == std::string::npos && word[1] != '0')
        return Expr::var(std::stoul(word.substr(1)), p,
                         word[0] == 'x' ? Expr::Kind::variable : Expr::Kind::yvariable);
      throw ParseError("unknown identifier '" + word + "'", p);
    }
    throw ParseError("unexpected '" + std::string(1, c) + "'", p);
  }

  Integer digits() {
    std::string s;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_])))
      s += text_[pos_++];
    return Integer(s);
  }

  void expect(char c) {
    skip_space();
    if (!at(c)) {
      if (pos_ >= text_.size())
        throw ParseError(std::string("expected '") + c + "' before end of input", pos_);
      throw ParseError(std::string("expected '") + c + "'", pos_);
    }
    ++pos_;
  }

  bool at(char c) const { return pos_ < text_.size() && text_[pos_] == c; }

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

inline int precedence(const Expr& e) {
  switch (e.kind) {
    case Expr::Kind::add:
    case Expr::Kind::sub:
      return 1;
    case Expr::Kind::mul:
    case Expr::Kind::div:
      return 2;
    case Expr::Kind::neg:
      return 3;
    case Expr::Kind::pow:
      return 4;
    default:
      return 5;
  }
}

}  // namespace detail

inline ExprPtr parse(std::string_view text) { return detail::ExprParser(text).parse(); }

/// Prints with the fewest parentheses that parse back to the same tree.
inline std::string to_string(const Expr& e) {
  auto wrap = [](const Expr& child, int min) {
    std::string s = to_string(child);
    return detail::precedence(child) < min ? "(" + s + ")" : s;
  };
  switch (e.kind) {
    case Expr::Kind::integer:
      return e.value.get_str();
    case Expr::Kind::variable:
      return e.variable == 0 ? "t" : "x" + std::to_string(e.variable);
    case Expr::Kind::yvariable:
      return "y" + std::to_string(e.variable);
    case Expr::Kind::neg:
      return "-" + wrap(*e.args[0], 3);
    case Expr::Kind::add:
      return wrap(*e.args[0], 1) + "+" + wrap(*e.args[1], 2);
    case Expr::Kind::sub:
      return wrap(*e.args[0], 1) + "-" + wrap(*e.args[1], 2);
    case Expr::Kind::mul:
      return wrap(*e.args[0], 2) + "*" + wrap(*e.args[1], 3);
    case Expr::Kind::div:
      return wrap(*e.args[0], 2) + "/" + wrap(*e.args[1], 3);
    case Expr::Kind::pow:
      return wrap(*e.args[0], 5) + "^" + e.value.get_str();
    case Expr::Kind::exp:
      return "exp(" + to_string(*e.args[0]) + ")";
    case Expr::Kind::log:
      return "log(" + to_string(*e.args[0]) + ")";
  }
  return {};
}

/// Largest x-variable index used (0 when none).
inline std::size_t max_variable(const Expr& e) {
  std::size_t m = e.kind == Expr::Kind::variable ? e.variable : 0;
  for (const auto& a : e.args) m = std::max(m, max_variable(*a));
  return m;
}

/// Largest y-variable index used (0 when none).
inline std::size_t max_yvariable(const Expr& e) {
  std::size_t m = e.kind == Expr::Kind::yvariable ? e.variable : 0;
  for (const auto& a : e.args) m = std::max(m, max_yvariable(*a));
  return m;
}

namespace detail {

template <typename T, typename Leaf>
T evaluate(const Expr& e, const Leaf& leaf, const T& one) {
  auto sub = [&](std::size_t j) { return evaluate<T>(*e.args[j], leaf, one); };
  switch (e.kind) {
    case Expr::Kind::integer:
    case Expr::Kind::variable:
    case Expr::Kind::yvariable:
    case Expr::Kind::exp:
    case Expr::Kind::log:
      return leaf(e);
    case Expr::Kind::neg:
      return -sub(0);
    case Expr::Kind::add:
      return sub(0) + sub(1);
    case Expr::Kind::sub:
      return sub(0) - sub(1);
    case Expr::Kind::mul:
      return sub(0) * sub(1);
    case Expr::Kind::div: {
      T num = sub(0);
      T den = sub(1);
      if constexpr (std::is_same_v<T, Series>) return num * den.inverse();
      else return num / den;
    }
    case Expr::Kind::pow: {
      T base = sub(0);
      T result = one;
      for (Integer k = e.value; k > 0; k /= 2) {
        if (k % 2 == 1) result = result * base;
        if (k > 1) base = base * base;
      }
      return result;
    }
  }
  return one;
}

inline void check_variable(const Expr& e, std::size_t nvars) {
  if (e.variable > nvars)
    throw ParseError("undeclared variable x" + std::to_string(e.variable) + " (r = " +
                         std::to_string(nvars) + ")",
                     e.position);
}

}  // namespace detail

/// Value in Q(x1..xr); rejects t, exp and log.
inline RationalFunction eval_field(const Expr& e, std::size_t nvars) {
  auto leaf = [nvars](const Expr& node) -> RationalFunction {
    switch (node.kind) {
      case Expr::Kind::integer:
        return RationalFunction::constant(nvars, Rational(node.value));
      case Expr::Kind::variable:
        if (node.variable == 0)
          throw ParseError("t is not allowed in a field element", node.position);
        detail::check_variable(node, nvars);
        return RationalFunction::variable(nvars, node.variable - 1);
      case Expr::Kind::yvariable:
        throw ParseError("y variables are only allowed in polynomial systems", node.position);
      default:
        throw ParseError("exp/log are not allowed in a field element", node.position);
    }
  };
  return detail::evaluate<RationalFunction>(e, leaf, RationalFunction::constant(nvars, 1));
}

/// Value in k[t]/(t^M).
inline Series eval_series(const Expr& e, std::size_t nvars, std::size_t precision) {
  std::function<Series(const Expr&)> leaf = [&](const Expr& node) -> Series {
    switch (node.kind) {
      case Expr::Kind::integer:
        return Series::constant(RationalFunction::constant(nvars, Rational(node.value)), precision);
      case Expr::Kind::variable:
        if (node.variable == 0)
          return Series::monomial(RationalFunction::constant(nvars, 1), 1, precision);
        detail::check_variable(node, nvars);
        return Series::constant(RationalFunction::variable(nvars, node.variable - 1), precision);
      case Expr::Kind::yvariable:
        throw ParseError("y variables are only allowed in polynomial systems", node.position);
      case Expr::Kind::exp:
        return detail::evaluate<Series>(*node.args[0], leaf, Series::one(nvars, precision)).exp();
      case Expr::Kind::log:
        return detail::evaluate<Series>(*node.args[0], leaf, Series::one(nvars, precision)).log();
      default:
        return Series(nvars, precision);
    }
  };
  return detail::evaluate<Series>(e, leaf, Series::one(nvars, precision));
}

/// Polynomial in y1..y_yvars with coefficients in k[t]/(t^M).
inline SeriesPoly eval_system_poly(const Expr& e, std::size_t yvars, std::size_t nvars,
                                   std::size_t precision) {
  auto leaf = [&](const Expr& node) -> SeriesPoly {
    if (node.kind == Expr::Kind::yvariable) {
      if (node.variable > yvars)
        throw ParseError("undeclared variable y" + std::to_string(node.variable), node.position);
      return SeriesPoly::variable(yvars, node.variable - 1, nvars, precision);
    }
    return SeriesPoly::constant(yvars, eval_series(node, nvars, precision));
  };
  return detail::evaluate<SeriesPoly>(
      e, leaf, SeriesPoly::constant(yvars, Series::one(nvars, precision)));
}

inline RationalFunction parse_field(std::string_view text, std::size_t nvars) {
  return eval_field(*parse(text), nvars);
}

inline Series parse_series(std::string_view text, std::size_t nvars, std::size_t precision) {
  return eval_series(*parse(text), nvars, precision);
}

}  // namespace milnorkit
