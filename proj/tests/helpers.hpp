#pragma once

#include <string>
#include <vector>

#include "milnorkit/milnorkit.hpp"

namespace testing_helpers {

using namespace milnorkit;

inline RationalFunction F(const std::string& text, std::size_t r) { return parse_field(text, r); }

inline Series S(const std::string& text, std::size_t r, std::size_t M) {
  return parse_series(text, r, M);
}

inline std::vector<Series> Ss(const std::vector<std::string>& texts, std::size_t r, std::size_t M) {
  std::vector<Series> out;
  for (const auto& t : texts) out.push_back(S(t, r, M));
  return out;
}

/// Series from explicit coefficient strings, padded with zeros to precision M.
inline Series coeffs(const std::vector<std::string>& cs, std::size_t r, std::size_t M) {
  std::vector<RationalFunction> c;
  for (const auto& x : cs) c.push_back(F(x, r));
  while (c.size() < M) c.emplace_back(r);
  return Series(std::move(c));
}

inline Subset dx(std::initializer_list<std::size_t> one_based) {
  std::vector<std::size_t> idx;
  for (auto j : one_based) idx.push_back(j - 1);
  return subset_of(idx);
}

}  // namespace testing_helpers

namespace milnorkit {

inline void PrintTo(const Poly& p, std::ostream* os) { *os << p.to_string(); }
inline void PrintTo(const RationalFunction& f, std::ostream* os) { *os << f.to_string(); }
inline void PrintTo(const Series& s, std::ostream* os) { *os << s.to_string() << " [M=" << s.precision() << "]"; }
inline void PrintTo(const KForm& w, std::ostream* os) { *os << w.to_string() << " [deg " << w.degree() << "]"; }
inline void PrintTo(const SeriesForm& w, std::ostream* os) { *os << w.to_string() << " [deg " << w.degree() << "]"; }
inline void PrintTo(const RelClass& c, std::ostream* os) { *os << c.to_string(); }
inline void PrintTo(const MilnorSymbol& s, std::ostream* os) { *os << s.to_string(); }
inline void PrintTo(const MilnorChain& c, std::ostream* os) { *os << c.to_string(); }
inline void PrintTo(const GraphCycle& g, std::ostream* os) { *os << g.to_string(); }
inline void PrintTo(const PolySystem& s, std::ostream* os) { *os << s.to_string(); }

}  // namespace milnorkit
