#include <gtest/gtest.h>

#include <fstream>

#include "helpers.hpp"

using namespace testing_helpers;

namespace {

Json load(const std::string& name) {
  std::ifstream in(std::string(MILNORKIT_FIXTURES) + "/" + name);
  return Json::parse(in);
}

}  // namespace

TEST(Json, SeriesLayout) {
  Json j = to_json(S("1+x1*t", 1, 3));
  EXPECT_EQ(j.dump(), R"({"precision":3,"coeffs":["1","x1","0"]})");
  EXPECT_EQ(series_from_json(j, 1), S("1+x1*t", 1, 3));
  EXPECT_EQ(series_from_json(Json::parse(R"({"precision":3,"coeffs":["1"]})"), 0), S("1", 0, 3));
}

TEST(Json, KFormLayout) {
  KForm w = KForm::basis(3, dx({1, 3}), F("x1/x2", 3)) + KForm::basis(3, dx({2, 3}), F("2", 3));
  Json j = to_json(w);
  EXPECT_EQ(j.dump(),
            R"({"degree":2,"terms":[{"subset":[1,3],"coeff":"x1/x2"},{"subset":[2,3],"coeff":"2"}]})");
  EXPECT_EQ(kform_from_json(j, 3), w);
}

TEST(Json, SymbolChainClassAndCycleRoundTrip) {
  for (std::uint64_t k = 0; k < 30; ++k) {
    Rng rng(trial_seed(71, k));
    std::size_t r = 1 + k % 3, m = 2 + k % 3;
    MilnorSymbol s({random_unit(rng, r, m), random_unit(rng, r, m)});
    EXPECT_EQ(symbol_from_json(to_json(s), r), s);
    MilnorChain c = MilnorChain::of(s, 3);
    c.add(MilnorSymbol({random_unit(rng, r, m), random_unit(rng, r, m)}), -2);
    EXPECT_EQ(chain_from_json(to_json(c), r), c);
    RelClass rc = random_rel_class(rng, r, k % (r + 1), m);
    EXPECT_EQ(relclass_from_json(to_json(rc), r), rc);
    GraphCycle g(s.entries(), m - 1);
    GraphCycle back = cycle_from_json(to_json(g), r);
    EXPECT_EQ(back.entries(), g.entries());
    EXPECT_EQ(back.modulus(), g.modulus());
  }
}

TEST(Json, DocumentHeader) {
  Json doc = document("series", 2, to_json(S("1+t", 2, 2)));
  EXPECT_EQ(doc.dump(), R"({"schema":1,"kind":"series","r":2,"precision":2,"coeffs":["1","1"]})");
  EXPECT_NO_THROW(check_schema(doc));
  doc["schema"] = 2;
  EXPECT_THROW(check_schema(doc), ParseError);
}

TEST(Json, MalformedInputs) {
  EXPECT_THROW(series_from_json(Json::parse(R"({"coeffs":["1"]})"), 0), ParseError);
  EXPECT_THROW(series_from_json(Json::parse(R"({"precision":1,"coeffs":["1","2"]})"), 0), ParseError);
  EXPECT_THROW(series_from_json(Json::parse(R"({"precision":-1,"coeffs":[]})"), 0), ParseError);
  EXPECT_THROW(series_from_json(Json::parse(R"({"precision":2,"coeffs":[1]})"), 0), ParseError);
  EXPECT_THROW(series_from_json(Json::parse(R"({"precision":2,"coeffs":["x2"]})"), 1), ParseError);
  EXPECT_THROW(kform_from_json(Json::parse(R"({"degree":1,"terms":[{"subset":[1,2],"coeff":"1"}]})"), 2),
               ParseError);
  EXPECT_THROW(kform_from_json(Json::parse(R"({"degree":1,"terms":[{"subset":[3],"coeff":"1"}]})"), 2),
               ParseError);
}

TEST(Json, SystemFixture) {
  Json doc = load("perturb_example.json");
  check_schema(doc);
  PolySystem s = system_from_json(doc, detail::size_field(doc, "r"), 1);
  EXPECT_EQ(s.yvars, 2u);
  EXPECT_EQ(perturb(s).to_string(),
            "{x_1 y_1 y_2^2 + x_2 y_1 + x_3 y_2 + x_4, x_5 y_1^2 y_2 + x_6 y_1 + x_7}");
  Json again = to_json(s);
  EXPECT_EQ(again["yvars"], 2);
  PolySystem back = system_from_json(again, 0, 1);
  EXPECT_EQ(back, s);
}

TEST(Json, SystemDeclarations) {
  Json doc = Json::parse(R"({"equations":["y1+1"],"yvars":2,"precision":3})");
  PolySystem s = system_from_json(doc, 0, 1);
  EXPECT_EQ(s.yvars, 2u);
  EXPECT_EQ(s.equations.front().precision(), 3u);
  EXPECT_THROW(system_from_json(Json::parse(R"({"equations":["y3"],"yvars":2})"), 0, 1), ParseError);
  EXPECT_THROW(system_from_json(Json::parse(R"({"equations":["y1+"]})"), 0, 1), ParseError);
}

TEST(Json, PerturbedFamilyAndReport) {
  Json doc = load("perturb_example.json");
  PerturbedFamily f = perturb(system_from_json(doc, 0, 1));
  Json j = to_json(f);
  EXPECT_EQ(j["slots"].size(), 7u);
  EXPECT_EQ(j["slots"][4].dump(), R"({"slot":"x_5","equation":2,"y":[2,1],"value":{"precision":1,"coeffs":["-1"]}})");

  SuiteConfig c;
  c.trials = 3;
  c.seed = 9;
  Json rep = to_json(run_suite("ikw", c));
  EXPECT_EQ(rep["passed"], 3);
  EXPECT_EQ(rep["failed"], 0);
  EXPECT_FALSE(rep.contains("first_failure"));
  EXPECT_TRUE(rep["i"].is_null());
}
