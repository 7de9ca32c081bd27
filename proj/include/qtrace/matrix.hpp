#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace qtrace {

using Exp = std::vector<long>;

class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), d_(rows * cols, 0) {}
  static IntMatrix identity(std::size_t n);
  static IntMatrix from_rows(const std::vector<Exp>& rows, std::size_t cols);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  long& operator()(std::size_t i, std::size_t j) { return d_[i * cols_ + j]; }
  long operator()(std::size_t i, std::size_t j) const { return d_[i * cols_ + j]; }

  Exp row(std::size_t i) const;
  IntMatrix transpose() const;
  IntMatrix operator*(const IntMatrix& o) const;
  IntMatrix operator*(long s) const;
  IntMatrix operator+(const IntMatrix& o) const;
  bool operator==(const IntMatrix& o) const = default;

  IntMatrix select(const std::vector<int>& rows, const std::vector<int>& cols) const;
  IntMatrix select_rows(const std::vector<int>& rows) const;
  bool is_antisymmetric() const;
  bool is_zero() const;
  std::string str() const;

 private:
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<long> d_;
};

// Row vector times matrix.
Exp row_times(const Exp& k, const IntMatrix& M);
Exp operator+(const Exp& a, const Exp& b);
Exp operator-(const Exp& a, const Exp& b);
Exp operator*(long s, const Exp& a);
bool is_zero(const Exp& k);

// Rank over the rationals (exact, fraction-free elimination).
std::size_t rank(const IntMatrix& M);

}  // namespace qtrace
