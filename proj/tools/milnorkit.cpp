// milnorkit: command-line front end.
//
// Exit codes: 0 success, 1 a check failed, 2 usage or parse error,
// 3 precondition violation.

#include <CLI11.hpp>

#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "milnorkit/milnorkit.hpp"

namespace mk = milnorkit;

namespace {

struct Options {
  std::optional<std::size_t> r;
  std::size_t m = 2;
  std::size_t n = 2;
  std::optional<std::size_t> i;
  std::optional<std::size_t> precision;
  std::uint64_t seed = 0;
  std::size_t trials = 20;
  std::size_t jobs = 1;
  std::string suite = "all";
  std::optional<std::size_t> N;
  bool json = false;
  bool general = false;
  std::vector<std::string> monomials;
  std::vector<std::string> inputs;
};

std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t\n");
  if (b == std::string::npos) return {};
  return s.substr(b, s.find_last_not_of(" \t\n") - b + 1);
}

/// "a ; b ; c" -> {"a", "b", "c"}
std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream in(s);
  std::string part;
  while (std::getline(in, part, ';')) out.push_back(trim(part));
  if (out.empty()) throw mk::UsageError("empty list '" + s + "'");
  for (const auto& p : out)
    if (p.empty()) throw mk::UsageError("empty entry in list '" + s + "'");
  return out;
}

/// Re-raises a parse error with the offending input named.
template <typename F>
auto with_input(const std::string& text, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const mk::ParseError& e) {
    std::string where = "in \"" + text + "\": " + e.message();
    if (e.position()) throw mk::ParseError(where, *e.position());
    throw mk::ParseError(where);
  }
}

std::size_t infer_r(const Options& o, const std::vector<std::string>& texts) {
  if (o.r) return *o.r;
  std::size_t r = 0;
  for (const auto& t : texts) r = std::max(r, with_input(t, [&] { return mk::max_variable(*mk::parse(t)); }));
  return r;
}

std::size_t working_precision(const Options& o) { return o.precision ? *o.precision : o.m + 2; }

void validate(const Options& o) {
  if (o.m < 1) throw mk::UsageError("--m must be at least 1");
  if (o.n < 1) throw mk::UsageError("--n must be at least 1");
  if (working_precision(o) < o.m) throw mk::UsageError("--precision must be at least m");
  if (o.i && (*o.i < 1 || *o.i >= o.m))
    throw mk::UsageError("--i must lie in 1.." + std::to_string(o.m - 1));
}

std::vector<mk::Series> series_list(const std::vector<std::string>& texts, std::size_t r,
                                    std::size_t precision) {
  std::vector<mk::Series> out;
  for (const auto& t : texts)
    out.push_back(with_input(t, [&] { return mk::parse_series(t, r, precision); }));
  return out;
}

std::vector<std::string> require_inputs(const Options& o, std::size_t count_min,
                                        const std::string& what) {
  if (o.inputs.size() < count_min) throw mk::UsageError("expected " + what);
  return o.inputs;
}

std::vector<std::string> all_entries(const std::vector<std::string>& lists) {
  std::vector<std::string> out;
  for (const auto& l : lists)
    for (auto& e : split_list(l)) out.push_back(e);
  return out;
}

void print(const Options& o, const mk::Json& doc, const std::string& text) {
  if (o.json)
    std::cout << doc.dump(2) << "\n";
  else
    std::cout << text << "\n";
}

int cmd_regulator(const Options& o) {
  validate(o);
  auto texts = require_inputs(o, 1, "cycle entries");
  std::size_t r = infer_r(o, texts);
  mk::GraphCycle g(series_list(texts, r, working_precision(o)), o.m);
  std::vector<std::size_t> indices;
  if (o.i) {
    indices.push_back(*o.i);
  } else {
    for (std::size_t k = 1; k < o.m; ++k) indices.push_back(k);
  }
  mk::Json forms = mk::Json::array();
  std::string text;
  for (std::size_t k : indices) {
    mk::KForm w = mk::regulator(g, k);
    forms.push_back(mk::Json{{"i", k}, {"form", mk::to_json(w)}});
    if (!text.empty()) text += "\n";
    text += o.i ? w.to_string() : "[i=" + std::to_string(k) + "] " + w.to_string();
  }
  print(o, mk::document("regulator", r, {{"cycle", mk::to_json(g)}, {"regulators", forms}}), text);
  return 0;
}

mk::MilnorSymbol symbol_from(const Options& o, const std::vector<std::string>& texts,
                             std::size_t r) {
  return mk::MilnorSymbol(series_list(texts, r, o.m));
}

int cmd_phi(const Options& o) {
  validate(o);
  auto texts = require_inputs(o, 1, "symbol entries");
  std::size_t r = infer_r(o, texts);
  mk::MilnorChain chain = mk::MilnorChain::of(symbol_from(o, texts, r));
  mk::RelClass c = mk::phi(chain);
  print(o, mk::document("relclass", r, mk::to_json(c)), c.to_string());
  return 0;
}

int cmd_psi(const Options& o) {
  validate(o);
  if (o.general) {
    if (!o.monomials.empty()) throw mk::UsageError("--general takes positional factors, not --monomial");
    auto texts = require_inputs(o, 1, "factors r1 ... rn");
    std::size_t r = infer_r(o, texts);
    mk::MilnorSymbol s = mk::psi_general(series_list(texts, r, o.m));
    print(o, mk::document("symbol", r, mk::to_json(s)), s.to_string());
    return 0;
  }
  if (o.monomials.empty()) throw mk::UsageError("psi needs --monomial \"r1 ; r2 ; ...\" or --general");
  if (!o.i) throw mk::UsageError("psi needs --i");
  if (!o.inputs.empty()) throw mk::UsageError("unexpected positional arguments");
  std::size_t r = infer_r(o, all_entries(o.monomials));
  std::vector<std::vector<mk::RationalFunction>> monomials;
  for (const auto& spec : o.monomials) {
    std::vector<mk::RationalFunction> factors;
    for (const auto& t : split_list(spec))
      factors.push_back(with_input(t, [&] { return mk::parse_field(t, r); }));
    monomials.push_back(std::move(factors));
  }
  std::size_t length = monomials.front().size();
  mk::MilnorChain chain = mk::psi_slot(*o.i, monomials, r, length, o.m);
  print(o, mk::document("chain", r, mk::to_json(chain)), chain.to_string());
  return 0;
}

int cmd_relclass(const Options& o) {
  validate(o);
  auto texts = require_inputs(o, 1, "symbol entries");
  std::size_t r = infer_r(o, texts);
  mk::RelClass c = mk::rel_class(mk::MilnorChain::of(symbol_from(o, texts, r)));
  print(o, mk::document("relclass", r, mk::to_json(c)), c.to_string());
  return 0;
}

/// Exactly two positional ';'-separated entry lists.
std::pair<std::vector<std::string>, std::vector<std::string>> two_lists(const Options& o) {
  if (o.inputs.size() != 2)
    throw mk::UsageError("expected two entry lists, e.g. \"1+x1*t ; x2\" \"1+t ; x2\"");
  return {split_list(o.inputs[0]), split_list(o.inputs[1])};
}

int cmd_releq(const Options& o) {
  validate(o);
  auto [lhs, rhs] = two_lists(o);
  std::vector<std::string> all = lhs;
  all.insert(all.end(), rhs.begin(), rhs.end());
  std::size_t r = infer_r(o, all);
  mk::RelClass a = mk::rel_class(mk::MilnorChain::of(symbol_from(o, lhs, r)));
  mk::RelClass b = mk::rel_class(mk::MilnorChain::of(symbol_from(o, rhs, r)));
  bool equal = a == b;
  print(o,
        mk::document("releq", r, {{"equal", equal}, {"lhs", mk::to_json(a)}, {"rhs", mk::to_json(b)}}),
        equal ? "equal" : "not equal\nlhs:\n" + a.to_string() + "\nrhs:\n" + b.to_string());
  return equal ? 0 : 1;
}

int cmd_verify(const Options& o) {
  validate(o);
  mk::SuiteConfig c;
  c.r = o.r ? *o.r : 2;
  c.m = o.m;
  c.n = o.n;
  c.precision = working_precision(o);
  c.i = o.i;
  c.seed = o.seed;
  c.trials = o.trials;
  c.jobs = o.jobs;
  std::vector<std::string> suites;
  if (o.suite == "all") {
    suites = mk::suite_names();
    if (c.n < 2) suites.erase(suites.begin());  // steinberg needs two entries
  } else {
    suites.push_back(o.suite);
  }
  bool ok = true;
  mk::Json reports = mk::Json::array();
  std::string text;
  for (const auto& s : suites) {
    mk::SuiteReport rep = mk::run_suite(s, c);
    ok = ok && rep.ok();
    reports.push_back(mk::to_json(rep));
    text += mk::format_report(rep);
  }
  if (!text.empty()) text.pop_back();
  print(o, mk::document("verify", c.r, {{"ok", ok}, {"reports", reports}}), text);
  return ok ? 0 : 1;
}

int cmd_perturb(const Options& o) {
  if (o.inputs.size() != 1) throw mk::UsageError("perturb takes one system file");
  std::ifstream in(o.inputs.front());
  if (!in) throw mk::UsageError("cannot read '" + o.inputs.front() + "'");
  mk::Json doc;
  try {
    doc = mk::Json::parse(in);
  } catch (const mk::Json::parse_error& e) {
    throw mk::ParseError(std::string("invalid JSON: ") + e.what());
  }
  std::size_t r = 0;
  mk::PolySystem system;
  try {
    mk::check_schema(doc);
    r = o.r ? *o.r : (doc.contains("r") ? mk::detail::size_field(doc, "r") : 0);
    system = mk::system_from_json(doc, r, o.precision ? *o.precision : 1);
  } catch (const mk::Json::exception& e) {
    throw mk::ParseError(std::string("malformed system file: ") + e.what());
  }
  mk::PerturbedFamily family = mk::perturb(system);
  if (!(mk::specialize(family, family.alpha0) == system))
    throw std::logic_error("specializing at alpha0 does not give back the system");
  mk::TriangularDiagnostics diag = mk::validate_triangular(system);

  std::string alpha = "(";
  for (std::size_t k = 0; k < family.alpha0.size(); ++k)
    alpha += (k ? ", " : "") + family.alpha0[k].to_string();
  alpha += ")";
  std::string text = family.to_string() + "\nalpha0 = " + alpha + "\n" + family.slot_table() +
                     "triangular: " + (diag.valid ? "yes" : "no (" + diag.message + ")");
  mk::Json body = mk::to_json(family);
  body["source"] = mk::to_json(system);
  body["triangular"] = mk::Json{{"valid", diag.valid},
                                {"equation", diag.equation},
                                {"condition", diag.condition},
                                {"message", diag.message}};
  print(o, mk::document("perturbation", r, body), text);
  return 0;
}

int cmd_approx(const Options& o) {
  validate(o);
  if (!o.N) throw mk::UsageError("approx needs --N");
  auto texts = require_inputs(o, 1, "coefficient expressions");
  std::size_t r = infer_r(o, texts);
  std::size_t precision = o.precision ? *o.precision : std::max(o.m, *o.N) + 2;
  auto alpha0 = series_list(texts, r, precision);
  auto alpha = mk::approximate_polynomial(alpha0, *o.N);
  bool member = mk::ball_member(alpha0, alpha, *o.N);
  std::size_t mod = std::min(*o.N, o.m);
  bool congruent = true;
  int v = mk::infinite_valuation;
  for (std::size_t j = 0; j < alpha.size(); ++j) {
    congruent = congruent && mk::congruent_mod(alpha[j], alpha0[j], mod);
    v = std::min(v, (alpha[j] - alpha0[j]).valuation());
  }
  std::string vs = v == mk::infinite_valuation ? "inf" : std::to_string(v);
  std::string text;
  mk::Json out = mk::Json::array();
  for (const auto& a : alpha) {
    text += a.to_string() + "\n";
    out.push_back(mk::to_json(a));
  }
  text += "certificate: v(diff) = " + vs + " >= " + std::to_string(*o.N) + ": " +
          (member ? "yes" : "no") + "\ncongruent mod t^" + std::to_string(mod) + ": " +
          (congruent ? "yes" : "no");
  print(o,
        mk::document("approximation", r,
                     {{"N", *o.N},
                      {"approximation", out},
                      {"valuation", v == mk::infinite_valuation ? mk::Json(nullptr) : mk::Json(v)},
                      {"ball_member", member},
                      {"congruent_modulus", mod},
                      {"congruent", congruent}}),
        text);
  return member && congruent ? 0 : 1;
}

int cmd_modtm_check(const Options& o) {
  validate(o);
  auto [lhs, rhs] = two_lists(o);
  std::vector<std::string> all = lhs;
  all.insert(all.end(), rhs.begin(), rhs.end());
  std::size_t r = infer_r(o, all);
  mk::GraphCycle a(series_list(lhs, r, working_precision(o)), o.m);
  mk::GraphCycle b(series_list(rhs, r, working_precision(o)), o.m);
  bool equal = mk::mod_tm_equal(a, b);
  std::string label = "mod t^" + std::to_string(o.m);
  print(o, mk::document("modtm-check", r, {{"modulus", o.m}, {"equal", equal}}),
        (equal ? "equal " : "not equal ") + label);
  return equal ? 0 : 1;
}

int cmd_graph_move(const Options& o) {
  validate(o);
  auto texts = require_inputs(o, 1, "cycle entries");
  std::size_t r = infer_r(o, texts);
  mk::GraphCycle g(series_list(texts, r, working_precision(o)), o.m);
  mk::GraphCycle moved = mk::graph_move(g);
  bool equal = mk::mod_tm_equal(g, moved);
  bool preserved = true;
  for (std::size_t k = 1; k < o.m; ++k)
    preserved = preserved && mk::regulator(g, k) == mk::regulator(moved, k);
  std::string text = moved.to_string() + "\nmod t^" + std::to_string(o.m) +
                     " equal: " + (equal ? "yes" : "no") +
                     "\nregulators preserved: " + (preserved ? "yes" : "no");
  print(o,
        mk::document("graph-move", r,
                     {{"cycle", mk::to_json(moved)},
                      {"mod_tm_equal", equal},
                      {"regulators_preserved", preserved}}),
        text);
  return equal && preserved ? 0 : 1;
}

template <typename T>
void optional_flag(CLI::App* app, const std::string& name, std::optional<T>& target,
                   const std::string& help) {
  app->add_option_function<T>(name, [&target](const T& v) { target = v; }, help);
}

void add_common(CLI::App* app, Options& o) {
  optional_flag(app, "--r", o.r, "number of variables x1..xr (default: largest index used)");
  app->add_option("--m", o.m, "modulus m of k[t]/(t^m)")->capture_default_str();
  optional_flag(app, "--precision", o.precision, "working precision M (default m+2)");
  app->add_flag("--json", o.json, "machine-readable output");
}

}  // namespace

int main(int argc, char** argv) {
  Options o;
  CLI::App app{"Exact computations with relative Milnor K-groups of k[t]/(t^m) and their additive cycle regulators"};
  app.require_subcommand(1);

  auto* regulator = app.add_subcommand("regulator", "regulator Y_i of the graph cycle of unit entries");
  add_common(regulator, o);
  optional_flag(regulator, "--i", o.i, "regulator index (default: every i in 1..m-1)");
  regulator->add_option("entries", o.inputs, "entries a1 ... an as series expressions");

  auto* phi = app.add_subcommand("phi", "phi of a symbol {a1, ..., an} with a1 = 1 mod t");
  add_common(phi, o);
  phi->add_option("entries", o.inputs, "entries a1 ... an");

  auto* psi = app.add_subcommand("psi", "symbols representing r1 dr2 ^ ... ^ drn");
  add_common(psi, o);
  optional_flag(psi, "--i", o.i, "slot index i");
  psi->add_option("--monomial", o.monomials, "factors \"r1 ; r2 ; ...\" (repeatable)");
  psi->add_flag("--general", o.general, "factors are series, r1..rl in (t) then units");
  psi->add_option("factors", o.inputs, "factors for --general");

  auto* relclass = app.add_subcommand("relclass", "class of the relative part of a symbol");
  add_common(relclass, o);
  relclass->add_option("entries", o.inputs, "entries a1 ... an");

  auto* releq = app.add_subcommand("releq", "compare the relative classes of two symbols");
  add_common(releq, o);
  releq->add_option("symbols", o.inputs, "two lists \"a1 ; a2 ; ...\"");

  auto* verify = app.add_subcommand("verify", "run seeded verification suites");
  add_common(verify, o);
  verify->get_option("--r")->description("number of variables x1..xr (default: 2)");
  optional_flag(verify, "--i", o.i, "regulator index (default: all)");
  verify->add_option("--n", o.n, "symbol length")->capture_default_str();
  verify->add_option("--suite", o.suite, "suite name or 'all'")->capture_default_str();
  verify->add_option("--trials", o.trials, "trials per suite")->capture_default_str();
  verify->add_option("--jobs", o.jobs, "worker threads")->capture_default_str();
  verify->add_option("--seed", o.seed, "seed")->envname("MILNORKIT_SEED")->capture_default_str();

  auto* perturb = app.add_subcommand("perturb", "coefficient perturbation of a polynomial system file");
  add_common(perturb, o);
  perturb->add_option("file", o.inputs, "system file (JSON)");

  auto* approx = app.add_subcommand("approx", "polynomial approximation in the t-adic ball of radius e^-N");
  add_common(approx, o);
  optional_flag(approx, "--N", o.N, "ball exponent N");
  approx->add_option("coefficients", o.inputs, "coefficient series");

  auto* modtm = app.add_subcommand("modtm-check", "mod t^m equality of two graph cycles");
  add_common(modtm, o);
  modtm->add_option("cycles", o.inputs, "two lists \"a1 ; a2 ; ...\"");

  auto* move = app.add_subcommand("graph-move", "polynomial representative of a graph cycle mod t^m");
  add_common(move, o);
  move->add_option("entries", o.inputs, "entries a1 ... an");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }

  try {
    if (*regulator) return cmd_regulator(o);
    if (*phi) return cmd_phi(o);
    if (*psi) return cmd_psi(o);
    if (*relclass) return cmd_relclass(o);
    if (*releq) return cmd_releq(o);
    if (*verify) return cmd_verify(o);
    if (*perturb) return cmd_perturb(o);
    if (*approx) return cmd_approx(o);
    if (*modtm) return cmd_modtm_check(o);
    if (*move) return cmd_graph_move(o);
  } catch (const mk::PreconditionError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const mk::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
