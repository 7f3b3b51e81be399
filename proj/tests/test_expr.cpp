#include <gtest/gtest.h>

#include "helpers.hpp"

using namespace testing_helpers;

namespace {

std::optional<std::size_t> error_position(const std::string& text, std::size_t r = 2) {
  try {
    eval_series(*parse(text), r, 3);
  } catch (const ParseError& e) {
    return e.position();
  }
  return std::nullopt;
}

}  // namespace

TEST(Expr, SeriesExamples) {
  EXPECT_EQ(S("1 + x1*t", 1, 2), coeffs({"1", "x1"}, 1, 2));
  EXPECT_EQ(S("exp(x1*x2*t)", 2, 2), coeffs({"1", "x1*x2"}, 2, 2));
  EXPECT_EQ(S("log(1+t)/(1-t)", 0, 3), coeffs({"0", "1", "1/2"}, 0, 3));
}

TEST(Expr, Precedence) {
  EXPECT_EQ(F("-x1^2", 1), -F("x1*x1", 1));
  EXPECT_EQ(F("2*3+4", 0), F("10", 0));
  EXPECT_EQ(F("2+3*4", 0), F("14", 0));
  EXPECT_EQ(F("8/4/2", 0), F("1", 0));
  EXPECT_EQ(F("8-4-2", 0), F("2", 0));
  EXPECT_THROW(F("2^3^1", 0), ParseError);
  EXPECT_EQ(F("(2^3)^2", 0), F("64", 0));
  EXPECT_EQ(F("-2^2", 0), F("-4", 0));
  EXPECT_EQ(F("(-2)^2", 0), F("4", 0));
  EXPECT_EQ(F("3/6", 0).to_string(), "1/2");
  EXPECT_EQ(F(" x1 *  x2 ", 2), F("x1*x2", 2));
}

TEST(Expr, VariablesBeyondDeclaredCountAreRejected) {
  EXPECT_THROW(F("x3", 2), ParseError);
  EXPECT_NO_THROW(F("x2", 2));
  EXPECT_THROW(F("t", 1), ParseError);
  EXPECT_THROW(F("exp(x1)", 1), ParseError);
  EXPECT_THROW(S("y1", 1, 2), ParseError);
}

TEST(Expr, SyntaxErrorsCarryPositions) {
  EXPECT_EQ(error_position("1 + * 2"), 4u);
  EXPECT_EQ(error_position("(1+t"), 4u);
  EXPECT_EQ(error_position("x1 x2"), 3u);
  EXPECT_EQ(error_position("foo(t)"), 0u);
  EXPECT_EQ(error_position("t^x1"), 2u);
  EXPECT_EQ(error_position("x0"), 0u);
  EXPECT_EQ(error_position(""), 0u);
  EXPECT_EQ(error_position("1 + x3"), 4u);
  try {
    parse("1 + * 2");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(std::string(e.what()), "unexpected '*' at column 5");
    EXPECT_EQ(e.message(), "unexpected '*'");
  }
}

TEST(Expr, SeriesPreconditions) {
  EXPECT_THROW(S("exp(1+t)", 0, 3), PreconditionError);
  EXPECT_THROW(S("log(2+t)", 0, 3), PreconditionError);
  EXPECT_THROW(S("1/t", 0, 3), PreconditionError);
  EXPECT_THROW(F("1/(x1-x1)", 1), PreconditionError);
}

TEST(Expr, PrintingUsesMinimalParentheses) {
  EXPECT_EQ(to_string(*parse("(1+x1)*(t-2)")), "(1+x1)*(t-2)");
  EXPECT_EQ(to_string(*parse("((1+x1))+((t))")), "1+x1+t");
  EXPECT_EQ(to_string(*parse("1-(2-3)")), "1-(2-3)");
  EXPECT_EQ(to_string(*parse("(1-2)-3")), "1-2-3");
  EXPECT_EQ(to_string(*parse("-(x1^2)")), "-x1^2");
  EXPECT_EQ(to_string(*parse("(-x1)^2")), "(-x1)^2");
  EXPECT_EQ(to_string(*parse("x1/(x2*t)")), "x1/(x2*t)");
  EXPECT_EQ(to_string(*parse("exp( t )*log(1+t)")), "exp(t)*log(1+t)");
}

TEST(Expr, ParsePrintRoundTripOnRandomTrees) {
  for (std::uint64_t k = 0; k < 500; ++k) {
    Rng rng(trial_seed(61, k));
    ExprPtr e = random_expr(rng, 3, 4);
    std::string text = to_string(*e);
    ExprPtr back = parse(text);
    EXPECT_TRUE(same_tree(*e, *back)) << text;
    EXPECT_EQ(to_string(*back), text);
  }
}

TEST(Expr, FieldPrintingParsesBack) {
  for (const char* text : {"(x1+1)/(2*x2)", "-2/(x1^2-1)", "x1/x2", "-x1*x2^3+7/3", "1/x1^2"}) {
    RationalFunction f = F(text, 2);
    EXPECT_EQ(F(f.to_string(), 2), f) << text;
  }
}

TEST(Expr, SystemPolynomials) {
  SeriesPoly p = eval_system_poly(*parse("(y1+t)^2 - y1*y1 + x1*y2/2"), 2, 1, 3);
  EXPECT_EQ(p.to_string(), "2*t*y1+(1/2*x1)*y2+t^2");
  EXPECT_EQ(max_yvariable(*parse("y1 + y7*x2")), 7u);
  EXPECT_EQ(max_variable(*parse("y1 + y7*x2")), 2u);
  EXPECT_THROW(eval_system_poly(*parse("y3"), 2, 0, 2), ParseError);
  EXPECT_THROW(eval_system_poly(*parse("1/y1"), 1, 0, 2), PreconditionError);
  EXPECT_EQ(eval_system_poly(*parse("y1/(1+t)"), 1, 0, 2).to_string(), "(1-t)*y1");
}
