#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "pfpaths/error.hpp"
#include "pfpaths/matrix.hpp"
#include "pfpaths/rational.hpp"

namespace pfpaths {

// Skew-symmetric square matrix: entries[i][j] == -entries[j][i] for all i, j.
// The constructor rejects any grid violating that (which forces a zero
// diagonal).
class SkewMatrix {
 public:
  SkewMatrix() : m_(0, 0) {}
  explicit SkewMatrix(std::size_t dim) : m_(dim, dim) {}

  explicit SkewMatrix(const Matrix& m) : m_(m) { validate(); }

  SkewMatrix(std::size_t dim, std::vector<Rational> entries)
      : m_(dim, dim, std::move(entries)) {
    validate();
  }

  std::size_t dim() const { return m_.rows(); }
  const Rational& at(std::size_t i, std::size_t j) const { return m_.at(i, j); }

  // Sets both (i, j) and (j, i); i == j only with value 0.
  void set(std::size_t i, std::size_t j, const Rational& v) {
    if (i == j) {
      if (!v.is_zero()) raise(errc::invalid_argument, "nonzero diagonal in skew matrix");
      return;
    }
    m_.at(i, j) = v;
    m_.at(j, i) = -v;
  }

  const Matrix& as_matrix() const { return m_; }

 private:
  void validate() const {
    if (m_.rows() != m_.cols()) raise(errc::not_square, "skew matrix must be square");
    for (std::size_t i = 0; i < m_.rows(); ++i)
      for (std::size_t j = i; j < m_.cols(); ++j)
        if (m_.at(i, j) != -m_.at(j, i))
          raise(errc::invalid_argument, "grid is not skew-symmetric");
  }

  Matrix m_;
};

// A perfect matching of {1..2n}, stored as pairs (i, j) with i < j, sorted by i.
struct OneFactor {
  std::vector<std::pair<std::size_t, std::size_t>> pairs;

  friend bool operator==(const OneFactor& a, const OneFactor& b) { return a.pairs == b.pairs; }
};

namespace detail {

inline void enumerate_factors_rec(std::vector<std::size_t>& free_indices,
                                  OneFactor& current,
                                  std::vector<OneFactor>& out) {
  if (free_indices.empty()) {
    out.push_back(current);
    return;
  }
  // Pair the smallest free index with each later one; this visits every
  // matching exactly once.
  std::size_t first = free_indices.front();
  std::vector<std::size_t> rest(free_indices.begin() + 1, free_indices.end());
  for (std::size_t t = 0; t < rest.size(); ++t) {
    current.pairs.emplace_back(first, rest[t]);
    std::vector<std::size_t> next;
    next.reserve(rest.size() - 1);
    for (std::size_t s = 0; s < rest.size(); ++s)
      if (s != t) next.push_back(rest[s]);
    enumerate_factors_rec(next, current, out);
    current.pairs.pop_back();
  }
}

}  // namespace detail

// All (2n-1)!! one-factors of {1..2n}. Callers keep n_pairs <= 8.
inline std::vector<OneFactor> enumerate_one_factors(std::size_t n_pairs) {
  std::vector<std::size_t> idx(2 * n_pairs);
  for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i + 1;
  std::vector<OneFactor> out;
  OneFactor current;
  detail::enumerate_factors_rec(idx, current, out);
  return out;
}

// Number of interleaved pairs {(a,b),(c,d)} with a < c < b < d: the arcs
// drawn over a line cross exactly for those. sgn(pi) = (-1)^cs.
inline std::size_t crossing_number(const OneFactor& pi) {
  std::size_t cs = 0;
  for (std::size_t p = 0; p < pi.pairs.size(); ++p) {
    for (std::size_t q = p + 1; q < pi.pairs.size(); ++q) {
      auto [a, b] = pi.pairs[p];
      auto [c, d] = pi.pairs[q];
      if (a > c) {
        std::swap(a, c);
        std::swap(b, d);
      }
      if (c < b && b < d) ++cs;
    }
  }
  return cs;
}

namespace detail {

inline void pfaffian_expand_rec(const SkewMatrix& a,
                                std::vector<std::size_t>& free_indices,
                                int sign,
                                const Rational& partial,
                                Rational& acc) {
  if (free_indices.empty()) {
    acc += (sign > 0) ? partial : -partial;
    return;
  }
  const std::size_t first = free_indices.front();
  std::vector<std::size_t> rest(free_indices.begin() + 1, free_indices.end());
  for (std::size_t t = 0; t < rest.size(); ++t) {
    const Rational& e = a.at(first, rest[t]);
    if (e.is_zero()) continue;
    std::vector<std::size_t> next;
    next.reserve(rest.size() - 1);
    for (std::size_t s = 0; s < rest.size(); ++s)
      if (s != t) next.push_back(rest[s]);
    // Pairing the lowest free index with the (t+1)-th remaining one
    // contributes (-1)^t, which matches the crossing-number sign.
    pfaffian_expand_rec(a, next, (t % 2 == 0) ? sign : -sign, partial * e, acc);
  }
}

}  // namespace detail

inline constexpr std::size_t kPfaffianExpandMaxDim = 16;

// Combinatorial Pfaffian: sum over one-factors of sgn(pi) * prod a_ij.
// Factorial-time; guarded, meant as the oracle for pfaffian_eliminate.
inline Rational pfaffian_expand(const SkewMatrix& a) {
  const std::size_t n = a.dim();
  if (n % 2 != 0) raise(errc::odd_dimension, "Pfaffian needs even dimension");
  if (n > kPfaffianExpandMaxDim)
    raise(errc::dimension_too_large, "pfaffian_expand guarded at dim 16");
  std::vector<std::size_t> idx(n);
  for (std::size_t i = 0; i < n; ++i) idx[i] = i;
  Rational acc(0);
  detail::pfaffian_expand_rec(a, idx, 1, Rational(1), acc);
  return acc;
}

// Exact skew elimination with row/column pivot pairs, O(dim^3) arithmetic.
// A zero pivot column means the Pfaffian is 0.
inline Rational pfaffian_eliminate(const SkewMatrix& a) {
  const std::size_t n = a.dim();
  if (n % 2 != 0) raise(errc::odd_dimension, "Pfaffian needs even dimension");
  if (n == 0) return Rational(1);

  std::vector<std::vector<Rational>> w(n, std::vector<Rational>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) w[i][j] = a.at(i, j);

  Rational pf(1);
  for (std::size_t k = 0; k + 1 < n; k += 2) {
    std::size_t p = k + 1;
    while (p < n && w[k][p].is_zero()) ++p;
    if (p == n) return Rational(0);
    if (p != k + 1) {
      // Swap index p with k+1 in both rows and columns; one transposition
      // flips the Pfaffian sign.
      std::swap(w[p], w[k + 1]);
      for (std::size_t i = 0; i < n; ++i) std::swap(w[i][p], w[i][k + 1]);
      pf = -pf;
    }
    const Rational pivot = w[k][k + 1];
    pf *= pivot;
    for (std::size_t i = k + 2; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) {
        Rational upd = w[i][j] - (w[k][i] * w[k + 1][j] - w[k][j] * w[k + 1][i]) / pivot;
        w[i][j] = upd;
        w[j][i] = -upd;
      }
      w[i][i] = Rational(0);
    }
  }
  return pf;
}

}  // namespace pfpaths
