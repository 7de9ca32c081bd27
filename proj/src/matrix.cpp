#include "qtrace/matrix.hpp"

#include <sstream>
#include <stdexcept>

#include <gmpxx.h>

namespace qtrace {

IntMatrix IntMatrix::identity(std::size_t n) {
  IntMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

IntMatrix IntMatrix::from_rows(const std::vector<Exp>& rows, std::size_t cols) {
  IntMatrix m(rows.size(), cols);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != cols) throw std::invalid_argument("row length mismatch");
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = rows[i][j];
  }
  return m;
}

Exp IntMatrix::row(std::size_t i) const {
  return Exp(d_.begin() + static_cast<long>(i * cols_), d_.begin() + static_cast<long>((i + 1) * cols_));
}

IntMatrix IntMatrix::transpose() const {
  IntMatrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

IntMatrix IntMatrix::operator*(const IntMatrix& o) const {
  if (cols_ != o.rows_) throw std::invalid_argument("matrix dimension mismatch");
  IntMatrix r(rows_, o.cols_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t k = 0; k < cols_; ++k) {
      long a = (*this)(i, k);
      if (a == 0) continue;
      for (std::size_t j = 0; j < o.cols_; ++j) r(i, j) += a * o(k, j);
    }
  return r;
}

IntMatrix IntMatrix::operator*(long s) const {
  IntMatrix r = *this;
  for (auto& x : r.d_) x *= s;
  return r;
}

IntMatrix IntMatrix::operator+(const IntMatrix& o) const {
  if (rows_ != o.rows_ || cols_ != o.cols_) throw std::invalid_argument("matrix dimension mismatch");
  IntMatrix r = *this;
  for (std::size_t i = 0; i < d_.size(); ++i) r.d_[i] += o.d_[i];
  return r;
}

IntMatrix IntMatrix::select(const std::vector<int>& rows, const std::vector<int>& cols) const {
  IntMatrix r(rows.size(), cols.size());
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < cols.size(); ++j) r(i, j) = (*this)(rows[i], cols[j]);
  return r;
}

IntMatrix IntMatrix::select_rows(const std::vector<int>& rows) const {
  std::vector<int> all(cols_);
  for (std::size_t j = 0; j < cols_; ++j) all[j] = static_cast<int>(j);
  return select(rows, all);
}

bool IntMatrix::is_antisymmetric() const {
  if (rows_ != cols_) return false;
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j)
      if ((*this)(i, j) != -(*this)(j, i)) return false;
  return true;
}

bool IntMatrix::is_zero() const {
  for (long x : d_)
    if (x != 0) return false;
  return true;
}

std::string IntMatrix::str() const {
  std::ostringstream os;
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t j = 0; j < cols_; ++j) {
      if (j) os << ' ';
      os << (*this)(i, j);
    }
    os << '\n';
  }
  return os.str();
}

Exp row_times(const Exp& k, const IntMatrix& M) {
  if (k.size() != M.rows()) throw std::invalid_argument("vector/matrix dimension mismatch");
  Exp r(M.cols(), 0);
  for (std::size_t i = 0; i < k.size(); ++i) {
    if (k[i] == 0) continue;
    for (std::size_t j = 0; j < M.cols(); ++j) r[j] += k[i] * M(i, j);
  }
  return r;
}

Exp operator+(const Exp& a, const Exp& b) {
  if (a.size() != b.size()) throw std::invalid_argument("exponent length mismatch");
  Exp r(a);
  for (std::size_t i = 0; i < a.size(); ++i) r[i] += b[i];
  return r;
}

Exp operator-(const Exp& a, const Exp& b) {
  if (a.size() != b.size()) throw std::invalid_argument("exponent length mismatch");
  Exp r(a);
  for (std::size_t i = 0; i < a.size(); ++i) r[i] -= b[i];
  return r;
}

Exp operator*(long s, const Exp& a) {
  Exp r(a);
  for (auto& x : r) x *= s;
  return r;
}

bool is_zero(const Exp& k) {
  for (long x : k)
    if (x != 0) return false;
  return true;
}

std::size_t rank(const IntMatrix& M) {
  std::size_t n = M.rows(), m = M.cols();
  std::vector<std::vector<mpz_class>> a(n, std::vector<mpz_class>(m));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < m; ++j) a[i][j] = M(i, j);
  std::size_t r = 0;
  mpz_class prev = 1;
  for (std::size_t c = 0; c < m && r < n; ++c) {
    std::size_t p = r;
    while (p < n && a[p][c] == 0) ++p;
    if (p == n) continue;
    std::swap(a[p], a[r]);
    for (std::size_t i = r + 1; i < n; ++i) {
      for (std::size_t j = c + 1; j < m; ++j) a[i][j] = (a[r][c] * a[i][j] - a[i][c] * a[r][j]) / prev;
      a[i][c] = 0;
    }
    prev = a[r][c];
    ++r;
  }
  return r;
}

}  // namespace qtrace
