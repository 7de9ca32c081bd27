#pragma once

#include <random>

#include "qtrace/torus.hpp"

namespace testutil {

inline qtrace::Exp random_exp(std::mt19937& rng, std::size_t n, int lo = -3, int hi = 3) {
  std::uniform_int_distribution<int> d(lo, hi);
  qtrace::Exp k(n);
  for (auto& v : k) v = d(rng);
  return k;
}

inline qtrace::Scalar random_scalar(std::mt19937& rng, int terms = 3) {
  std::uniform_int_distribution<int> e(-12, 12), c(-5, 5);
  qtrace::Scalar s;
  for (int i = 0; i < terms; ++i) s += qtrace::Scalar::monomial(e(rng), c(rng));
  return s;
}

inline qtrace::TorusElement random_element(std::mt19937& rng, const qtrace::SpecPtr& spec, int terms = 3) {
  qtrace::TorusElement a(spec);
  for (int i = 0; i < terms; ++i) a.add_term(random_exp(rng, spec->size(), -2, 2), random_scalar(rng, 2));
  return a;
}

}  // namespace testutil
