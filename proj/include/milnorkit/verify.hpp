#pragma once

// Seeded verification suites for the identities the library relies on. Each
// trial draws from its own generator seeded by trial_seed(seed, index), so a
// report depends only on the configuration, not on scheduling.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "milnorkit/cycles.hpp"
#include "milnorkit/error.hpp"
#include "milnorkit/forms.hpp"
#include "milnorkit/milnor.hpp"
#include "milnorkit/random.hpp"

namespace milnorkit {

struct SuiteConfig {
  std::size_t r = 2;
  std::size_t m = 3;
  std::size_t n = 2;
  std::size_t precision = 0;  // 0 means m + 2
  std::optional<std::size_t> i;
  std::uint64_t seed = 0;
  std::size_t trials = 20;
  std::size_t jobs = 1;

  std::size_t working_precision() const { return precision == 0 ? m + 2 : precision; }

  /// Regulator indices under test: the requested one, or all of 1..m-1.
  std::vector<std::size_t> indices() const {
    if (i) return {*i};
    std::vector<std::size_t> out;
    for (std::size_t k = 1; k < m; ++k) out.push_back(k);
    return out;
  }

  void validate() const {
    if (m < 1) throw UsageError("m must be at least 1");
    if (n < 1) throw UsageError("n must be at least 1");
    if (working_precision() < m) throw UsageError("precision must be at least m");
    if (i && (*i < 1 || *i >= m))
      throw UsageError("i must lie in 1.." + std::to_string(m - 1));
    if (r > 8) throw UsageError("suites support at most 8 variables");
  }
};

struct SuiteReport {
  std::string suite;
  SuiteConfig config;
  std::size_t passed = 0;
  std::optional<std::size_t> failed_trial;
  std::string failure;

  bool ok() const { return passed == config.trials; }
};

namespace detail {

using Trial = std::function<std::optional<std::string>(const SuiteConfig&, Rng&)>;

inline std::string list(const std::vector<Series>& v) {
  std::string out = "(";
  for (std::size_t j = 0; j < v.size(); ++j) out += (j ? ", " : "") + v[j].to_string();
  return out + ")";
}

inline std::vector<Series> random_units(Rng& rng, std::size_t r, std::size_t count,
                                        std::size_t precision) {
  std::vector<Series> out;
  for (std::size_t j = 0; j < count; ++j) out.push_back(random_unit(rng, r, precision));
  return out;
}

inline std::optional<std::string> steinberg_trial(const SuiteConfig& c, Rng& rng) {
  const std::size_t M = c.working_precision();
  Series a = random_steinberg_unit(rng, c.r, M);
  auto tail = random_units(rng, c.r, c.n - 2, M);
  for (std::size_t i : c.indices()) {
    KForm v = check_steinberg(a, tail, i, c.m);
    if (!v.is_zero())
      return "i=" + std::to_string(i) + " a=" + a.to_string() + " tail=" + list(tail) +
             " regulator=" + v.to_string();
  }
  return std::nullopt;
}

inline std::optional<std::string> multiplicativity_trial(const SuiteConfig& c, Rng& rng) {
  const std::size_t M = c.working_precision();
  Series a = random_unit(rng, c.r, M);
  Series b = random_unit(rng, c.r, M);
  auto tail = random_units(rng, c.r, c.n - 1, M);
  for (std::size_t i : c.indices()) {
    KForm v = check_multiplicativity(a, b, tail, i, c.m);
    if (!v.is_zero())
      return "i=" + std::to_string(i) + " a=" + a.to_string() + " b=" + b.to_string() +
             " tail=" + list(tail) + " defect=" + v.to_string();
  }
  return std::nullopt;
}

inline std::optional<std::string> modtm_trial(const SuiteConfig& c, Rng& rng) {
  const std::size_t M = c.working_precision();
  auto entries = random_units(rng, c.r, c.n, M);
  std::vector<Series> shifted;
  for (const auto& a : entries) {
    Series noise = random_series(rng, c.r, M);
    shifted.push_back(a + noise * Series::monomial(RationalFunction::constant(c.r, 1), c.m, M));
  }
  GraphCycle g1(entries, c.m);
  GraphCycle g2(shifted, c.m);
  if (!mod_tm_equal(g1, g2))
    return "perturbation " + list(shifted) + " not mod t^m equal to " + list(entries);
  for (std::size_t i : c.indices()) {
    KForm v1 = regulator(g1, i);
    KForm v2 = regulator(g2, i);
    if (!(v1 == v2))
      return "i=" + std::to_string(i) + " cycle=" + list(entries) + " regulator " +
             v1.to_string() + " vs " + v2.to_string();
  }
  return std::nullopt;
}

inline std::optional<std::string> roundtrip_trial(const SuiteConfig& c, Rng& rng) {
  auto mono = random_monomial(rng, c.r, c.n);
  KForm form = monomial_form(mono);
  for (std::size_t i : c.indices()) {
    RelClass expected(c.r, c.n - 1, c.m);
    expected.set(i, form);
    RelClass got = phi(psi_slot(i, {mono}, c.r, c.n, c.m));
    if (!(got == expected))
      return "slot i=" + std::to_string(i) + " monomial " + form.to_string() + " gave " +
             got.to_string();
  }
  // Mixed presentation: r1..rl in (t), the rest units.
  std::size_t ell = static_cast<std::size_t>(rng.uniform(1, static_cast<long>(c.n)));
  std::vector<Series> r;
  for (std::size_t j = 0; j < c.n; ++j)
    r.push_back(j < ell ? random_in_t(rng, c.r, c.m) : random_unit(rng, c.r, c.m));
  RelClass got = phi(MilnorChain::of(psi_general(r)));
  RelClass expected = monomial_class(r);
  if (!(got == expected))
    return "general l=" + std::to_string(ell) + " factors " + list(r) + " gave " +
           got.to_string() + " expected " + expected.to_string();
  return std::nullopt;
}

inline std::optional<std::string> orthogonality_trial(const SuiteConfig& c, Rng& rng) {
  const std::size_t M = c.working_precision();
  auto mono = random_monomial(rng, c.r, c.n);
  KForm form = monomial_form(mono);
  for (std::size_t j = 1; j < c.m; ++j) {
    MilnorChain chain = psi_slot(j, {mono}, c.r, c.n, c.m);
    GraphCycle g = GraphCycle::of(chain.terms().front().symbol, M);
    for (std::size_t i : c.indices()) {
      KForm expected = i == j ? form * Rational(static_cast<long>(i)) : KForm(c.r, c.n - 1);
      KForm got = regulator(g, i);
      if (!(got == expected))
        return "i=" + std::to_string(i) + " j=" + std::to_string(j) + " monomial " +
               form.to_string() + " gave " + got.to_string();
    }
  }
  return std::nullopt;
}

inline std::optional<std::string> ikw_trial(const SuiteConfig& c, Rng& rng) {
  std::size_t degree = c.r == 0 ? 0 : static_cast<std::size_t>(rng.uniform(0, static_cast<long>(c.r) - 1));
  SeriesForm eta = random_relative_form(rng, c.r, degree, c.m);
  RelClass exact = normalize_relative(eta.d());
  if (!exact.is_zero())
    return "d of " + eta.to_string() + " normalizes to " + exact.to_string();
  std::size_t q = static_cast<std::size_t>(rng.uniform(0, static_cast<long>(c.r)));
  RelClass alpha = random_rel_class(rng, c.r, q, c.m);
  RelClass back = normalize_relative(alpha.embed());
  if (!(back == alpha))
    return "embedding of " + alpha.to_string() + " normalizes to " + back.to_string();
  return std::nullopt;
}

inline Trial trial_for(const std::string& suite) {
  if (suite == "steinberg") return steinberg_trial;
  if (suite == "multiplicativity") return multiplicativity_trial;
  if (suite == "modtm") return modtm_trial;
  if (suite == "roundtrip") return roundtrip_trial;
  if (suite == "orthogonality") return orthogonality_trial;
  if (suite == "ikw") return ikw_trial;
  throw UsageError("unknown suite '" + suite + "'");
}

}  // namespace detail

inline const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"steinberg", "multiplicativity", "modtm",
                                              "roundtrip", "orthogonality",    "ikw"};
  return names;
}

inline SuiteReport run_suite(const std::string& suite, const SuiteConfig& config) {
  config.validate();
  if (suite == "steinberg" && config.n < 2) throw UsageError("steinberg suite needs n >= 2");
  detail::Trial trial = detail::trial_for(suite);

  std::vector<std::optional<std::string>> outcomes(config.trials);
  auto run_range = [&](std::size_t begin, std::size_t stride) {
    for (std::size_t k = begin; k < config.trials; k += stride) {
      Rng rng(trial_seed(config.seed, k));
      try {
        outcomes[k] = trial(config, rng);
      } catch (const Error& e) {
        outcomes[k] = std::string("error: ") + e.what();
      }
    }
  };
  std::size_t jobs = std::max<std::size_t>(1, std::min(config.jobs, config.trials));
  if (jobs == 1) {
    run_range(0, 1);
  } else {
    std::vector<std::thread> workers;
    for (std::size_t w = 0; w < jobs; ++w) workers.emplace_back(run_range, w, jobs);
    for (auto& t : workers) t.join();
  }

  SuiteReport report{suite, config, 0, std::nullopt, {}};
  for (std::size_t k = 0; k < outcomes.size(); ++k) {
    if (!outcomes[k]) {
      ++report.passed;
    } else if (!report.failed_trial) {
      report.failed_trial = k;
      report.failure = *outcomes[k];
    }
  }
  return report;
}

inline std::string format_report(const SuiteReport& report) {
  const SuiteConfig& c = report.config;
  std::ostringstream out;
  out << "suite " << report.suite << ": " << report.passed << "/" << c.trials << " passed"
      << " (r=" << c.r << " m=" << c.m << " n=" << c.n << " M=" << c.working_precision()
      << " i=" << (c.i ? std::to_string(*c.i) : std::string("all")) << " seed=" << c.seed
      << ")\n";
  if (report.failed_trial)
    out << "  first failure: trial " << *report.failed_trial << ": " << report.failure << "\n";
  return out.str();
}

}  // namespace milnorkit
