#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "pfpaths/error.hpp"
#include "pfpaths/rational.hpp"

namespace pfpaths {

// Dense row-major matrix of exact rationals.
class Matrix {
 public:
  Matrix() : rows_(0), cols_(0) {}
  Matrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), entries_(rows * cols) {}
  Matrix(std::size_t rows, std::size_t cols, std::vector<Rational> entries)
      : rows_(rows), cols_(cols), entries_(std::move(entries)) {
    if (entries_.size() != rows_ * cols_)
      raise(errc::invalid_argument, "entry count does not match shape");
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  const Rational& at(std::size_t i, std::size_t j) const {
    check(i, j);
    return entries_[i * cols_ + j];
  }
  Rational& at(std::size_t i, std::size_t j) {
    check(i, j);
    return entries_[i * cols_ + j];
  }

  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.entries_ == b.entries_;
  }

 private:
  void check(std::size_t i, std::size_t j) const {
    if (i >= rows_ || j >= cols_) raise(errc::invalid_argument, "matrix index out of range");
  }

  std::size_t rows_, cols_;
  std::vector<Rational> entries_;
};

// Exact determinant by Bareiss fraction-free elimination. Denominators are
// cleared row by row first so all intermediate divisions stay in the integers.
inline Rational determinant(const Matrix& m) {
  if (m.rows() != m.cols()) raise(errc::not_square, "determinant of non-square matrix");
  const std::size_t n = m.rows();
  if (n == 0) return Rational(1);

  std::vector<std::vector<mpz_class>> a(n, std::vector<mpz_class>(n));
  mpq_class scale(1);  // det(m) = det(a) / scale
  for (std::size_t i = 0; i < n; ++i) {
    mpz_class row_lcm(1);
    for (std::size_t j = 0; j < n; ++j)
      mpz_lcm(row_lcm.get_mpz_t(), row_lcm.get_mpz_t(), m.at(i, j).denominator().get_mpz_t());
    for (std::size_t j = 0; j < n; ++j) {
      const Rational& e = m.at(i, j);
      a[i][j] = e.numerator() * (row_lcm / e.denominator());
    }
    scale *= row_lcm;
  }

  int sign = 1;
  mpz_class prev(1);
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a[k][k] == 0) {
      std::size_t p = k + 1;
      while (p < n && a[p][k] == 0) ++p;
      if (p == n) return Rational(0);
      std::swap(a[k], a[p]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        mpz_class t = a[i][j] * a[k][k] - a[i][k] * a[k][j];
        mpz_divexact(a[i][j].get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
      }
      a[i][k] = 0;
    }
    prev = a[k][k];
  }

  mpq_class det(sign * a[n - 1][n - 1]);
  det /= scale;
  return Rational(det);
}

inline Matrix identity_matrix(std::size_t n) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m.at(i, i) = Rational(1);
  return m;
}

}  // namespace pfpaths
