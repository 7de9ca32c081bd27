#include "qtrace/lattice.hpp"

#include <algorithm>
#include <cstdlib>
#include <stdexcept>

namespace qtrace {

namespace {

long floor_div(long a, long b) {
  long q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

}  // namespace

std::vector<Exp> hnf_basis(const std::vector<Exp>& vectors, std::size_t n) {
  std::vector<Exp> rows;
  for (const auto& v : vectors) {
    if (v.size() != n) throw std::invalid_argument("lattice vector length mismatch");
    if (!is_zero(v)) rows.push_back(v);
  }
  std::vector<Exp> basis;
  for (std::size_t col = 0; col < n && !rows.empty(); ++col) {
    std::vector<Exp> nz, rest;
    for (auto& r : rows) (r[col] != 0 ? nz : rest).push_back(std::move(r));
    if (nz.empty()) {
      rows = std::move(rest);
      continue;
    }
    while (nz.size() > 1) {
      std::sort(nz.begin(), nz.end(), [col](const Exp& a, const Exp& b) {
        return std::labs(a[col]) < std::labs(b[col]) || (std::labs(a[col]) == std::labs(b[col]) && a < b);
      });
      std::vector<Exp> next{nz[0]};
      for (std::size_t i = 1; i < nz.size(); ++i) {
        long q = floor_div(nz[i][col], nz[0][col]);
        Exp r = nz[i];
        for (std::size_t j = 0; j < n; ++j) r[j] -= q * nz[0][j];
        if (r[col] != 0) next.push_back(std::move(r));
        else if (!is_zero(r)) rest.push_back(std::move(r));
      }
      nz = std::move(next);
    }
    Exp p = nz[0];
    if (p[col] < 0) p = (-1) * p;
    basis.push_back(p);
    rows = std::move(rest);
  }
  return basis;
}

Exp coords_in(const std::vector<Exp>& basis, const Exp& k) {
  Exp rem = k, c;
  for (const auto& b : basis) {
    std::size_t piv = 0;
    while (b[piv] == 0) ++piv;
    if (rem[piv] % b[piv] != 0) throw std::invalid_argument("vector outside the lattice");
    long m = rem[piv] / b[piv];
    c.push_back(m);
    for (std::size_t j = 0; j < rem.size(); ++j) rem[j] -= m * b[j];
  }
  if (!is_zero(rem)) throw std::invalid_argument("vector outside the lattice");
  return c;
}

SkewNormalForm skew_normal_form(const IntMatrix& A0) {
  if (!A0.is_antisymmetric()) throw std::invalid_argument("matrix is not antisymmetric");
  std::size_t r = A0.rows();
  IntMatrix A = A0, U = IntMatrix::identity(r), V = IntMatrix::identity(r);
  auto swap = [&](std::size_t i, std::size_t j) {
    if (i == j) return;
    for (std::size_t c = 0; c < r; ++c) std::swap(A(i, c), A(j, c));
    for (std::size_t c = 0; c < r; ++c) std::swap(A(c, i), A(c, j));
    for (std::size_t c = 0; c < r; ++c) std::swap(U(i, c), U(j, c));
    for (std::size_t c = 0; c < r; ++c) std::swap(V(c, i), V(c, j));
  };
  // basis_i += m * basis_j
  auto addm = [&](std::size_t i, std::size_t j, long m) {
    if (m == 0) return;
    for (std::size_t c = 0; c < r; ++c) A(i, c) += m * A(j, c);
    for (std::size_t c = 0; c < r; ++c) A(c, i) += m * A(c, j);
    for (std::size_t c = 0; c < r; ++c) U(i, c) += m * U(j, c);
    for (std::size_t c = 0; c < r; ++c) V(c, j) -= m * V(c, i);
  };
  std::vector<long> blocks;
  std::size_t p = 0;
  while (p + 1 < r) {
    std::size_t bi = r, bj = r;
    for (std::size_t i = p; i < r; ++i)
      for (std::size_t j = p; j < r; ++j)
        if (A(i, j) != 0 && (bi == r || std::labs(A(i, j)) < std::labs(A(bi, bj)))) {
          bi = i;
          bj = j;
        }
    if (bi == r) break;
    swap(p, bi);
    if (bj == p) bj = bi;
    swap(p + 1, bj);
    if (A(p, p + 1) < 0) swap(p, p + 1);
    long d = A(p, p + 1);
    bool done = true;
    for (std::size_t k = p + 2; k < r; ++k) {
      addm(k, p + 1, -floor_div(A(p, k), d));
      addm(k, p, floor_div(A(p + 1, k), d));
      if (A(p, k) != 0 || A(p + 1, k) != 0) done = false;
    }
    if (done) {
      blocks.push_back(A(p, p + 1));
      p += 2;
    }
  }
  return {A, U, V, blocks};
}

}  // namespace qtrace
