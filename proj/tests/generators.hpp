#pragma once

// Random inputs for property checks. Deterministic: every generator is driven
// by an explicit std::mt19937_64.

#include <random>
#include <vector>

#include "sqcas/galg.hpp"
#include "sqcas/symbols.hpp"

namespace sqcas::testing {

inline std::vector<galg::Atom> atom_pool() {
  using namespace symbols;
  return {theta(),   theta_star(),          psi(),   psi_star(), psi().dotted(), psi_star().dotted(),
          epsilon(), epsilon_star(),        x(),     x().dotted(), aux(),       galg::Atom::even("β", true)};
}

inline Coefficient random_coefficient(std::mt19937_64& rng) {
  std::uniform_int_distribution<long> num(-3, 3);
  std::uniform_int_distribution<long> den(1, 3);
  mpq_class re(num(rng), den(rng));
  mpq_class im(num(rng), den(rng));
  re.canonicalize();
  im.canonicalize();
  if (sgn(re) == 0 && sgn(im) == 0) re = 1;
  return Coefficient(re, im);
}

inline galg::FactorList random_product(std::mt19937_64& rng, int max_factors = 4) {
  static const auto pool = atom_pool();
  std::uniform_int_distribution<std::size_t> pick(0, pool.size() - 1);
  std::uniform_int_distribution<int> len(0, max_factors);
  galg::FactorList f;
  f.emplace_back(random_coefficient(rng));
  int n = len(rng);
  for (int i = 0; i < n; ++i) f.emplace_back(pool[pick(rng)]);
  return f;
}

inline galg::GradedExpr random_expr(std::mt19937_64& rng, int max_terms = 4) {
  std::uniform_int_distribution<int> len(1, max_terms);
  std::vector<galg::FactorList> raw;
  int n = len(rng);
  for (int i = 0; i < n; ++i) raw.push_back(random_product(rng));
  return galg::normalize(raw);
}

/// Random expression restricted to one parity (possibly zero).
inline galg::GradedExpr random_homogeneous(std::mt19937_64& rng, galg::Parity p) {
  return random_expr(rng, 5).filter([p](const galg::Signature& s) { return s.parity() == p; });
}

/// Single monomial of odd parity.
inline galg::GradedExpr random_odd_monomial(std::mt19937_64& rng) {
  for (;;) {
    auto e = galg::normalize(random_product(rng, 5));
    if (e.size() == 1 && e.is_homogeneous(galg::Parity::odd)) return e;
  }
}

}  // namespace sqcas::testing
