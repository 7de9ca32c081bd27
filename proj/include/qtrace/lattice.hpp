#pragma once

#include <vector>

#include "qtrace/matrix.hpp"

namespace qtrace {

// Row-echelon integer basis of the lattice spanned by the given vectors.
std::vector<Exp> hnf_basis(const std::vector<Exp>& vectors, std::size_t n);

// Integer coordinates of k in an echelon basis; throws if k is outside the lattice.
Exp coords_in(const std::vector<Exp>& basis, const Exp& k);

struct SkewNormalForm {
  IntMatrix form;      // U A U^T: 2x2 blocks [[0,d],[-d,0]] then zeros
  IntMatrix U;         // unimodular
  IntMatrix V;         // U^{-1}
  std::vector<long> blocks;  // d_i > 0
};

// Symplectic normal form of an antisymmetric integer matrix by unimodular congruence.
SkewNormalForm skew_normal_form(const IntMatrix& A);

}  // namespace qtrace
