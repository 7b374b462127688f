#pragma once

#include <cstddef>
#include <functional>
#include <utility>
#include <vector>

#include "pfpaths/error.hpp"
#include "pfpaths/matrix.hpp"
#include "pfpaths/pfaffian.hpp"
#include "pfpaths/rational.hpp"

namespace pfpaths {

// Finite measure with rational point masses on a strictly increasing support.
struct DiscreteMeasure {
  std::vector<Rational> support;
  std::vector<Rational> masses;

  DiscreteMeasure(std::vector<Rational> support_, std::vector<Rational> masses_)
      : support(std::move(support_)), masses(std::move(masses_)) {
    if (support.size() != masses.size())
      raise(errc::invalid_argument, "support/mass length mismatch");
    for (std::size_t i = 0; i < support.size(); ++i) {
      if (i > 0 && !(support[i - 1] < support[i]))
        raise(errc::invalid_argument, "support must be strictly increasing");
      if (!(masses[i] > Rational(0))) raise(errc::invalid_argument, "masses must be positive");
    }
  }

  std::size_t size() const { return support.size(); }

  Rational total_mass() const {
    Rational t(0);
    for (const auto& w : masses) t += w;
    return t;
  }
};

// Function values sampled on the support of an associated measure.
struct FunctionTable {
  std::vector<Rational> values;

  static FunctionTable sample(const DiscreteMeasure& mu,
                              const std::function<Rational(const Rational&)>& f) {
    FunctionTable t;
    t.values.reserve(mu.size());
    for (const auto& x : mu.support) t.values.push_back(f(x));
    return t;
  }

  // x^exponent * base(x) on the support; pass no base for a plain monomial.
  static FunctionTable monomial(const DiscreteMeasure& mu, unsigned exponent,
                                const FunctionTable* base = nullptr) {
    FunctionTable t;
    t.values.reserve(mu.size());
    for (std::size_t i = 0; i < mu.size(); ++i) {
      Rational v(1);
      for (unsigned e = 0; e < exponent; ++e) v *= mu.support[i];
      if (base) v *= base->values[i];
      t.values.push_back(v);
    }
    return t;
  }
};

inline void check_aligned(const FunctionTable& f, const DiscreteMeasure& mu) {
  if (f.values.size() != mu.size())
    raise(errc::misaligned_table, "table length does not match support");
}

// sum_k f(x_k) g(x_k) w(x_k)
inline Rational plain_inner(const FunctionTable& f, const FunctionTable& g,
                            const DiscreteMeasure& mu) {
  check_aligned(f, mu);
  check_aligned(g, mu);
  Rational s(0);
  for (std::size_t k = 0; k < mu.size(); ++k) s += f.values[k] * g.values[k] * mu.masses[k];
  return s;
}

// sum_k f(x_k) w(x_k)
inline Rational integral(const FunctionTable& f, const DiscreteMeasure& mu) {
  check_aligned(f, mu);
  Rational s(0);
  for (std::size_t k = 0; k < mu.size(); ++k) s += f.values[k] * mu.masses[k];
  return s;
}

// sum_{k,l} f(x_k) g(x_l) sgn(x_l - x_k) w(x_k) w(x_l). The support is
// strictly increasing, so sgn(x_l - x_k) = sgn(l - k) and suffix/prefix sums
// give the double sum in linear time.
inline Rational skew_inner(const FunctionTable& f, const FunctionTable& g,
                           const DiscreteMeasure& mu) {
  check_aligned(f, mu);
  check_aligned(g, mu);
  const std::size_t n = mu.size();
  std::vector<Rational> gw(n);
  for (std::size_t k = 0; k < n; ++k) gw[k] = g.values[k] * mu.masses[k];
  Rational suffix(0);
  for (std::size_t k = 0; k < n; ++k) suffix += gw[k];
  Rational prefix(0), s(0);
  for (std::size_t k = 0; k < n; ++k) {
    suffix -= gw[k];
    s += f.values[k] * mu.masses[k] * (suffix - prefix);
    prefix += gw[k];
  }
  return s;
}

// Gram matrix of a family under the skew inner product.
inline SkewMatrix skew_gram(const std::vector<FunctionTable>& family, const DiscreteMeasure& mu) {
  SkewMatrix m(family.size());
  for (std::size_t i = 0; i < family.size(); ++i)
    for (std::size_t j = i + 1; j < family.size(); ++j)
      m.set(i, j, skew_inner(family[i], family[j], mu));
  return m;
}

// Z for an even family: Pf of the skew Gram matrix.
inline Rational z_even(const SkewMatrix& q) {
  if (q.dim() % 2 != 0) raise(errc::odd_dimension, "z_even needs an even matrix");
  return pfaffian_eliminate(q);
}

// Z for an odd family: Pf of the Gram matrix bordered by the single-function
// weights.
inline Rational z_odd(const SkewMatrix& q, const std::vector<Rational>& border) {
  if (q.dim() % 2 == 0) raise(errc::odd_dimension, "z_odd needs an odd matrix");
  if (border.size() != q.dim()) raise(errc::misaligned_table, "border length mismatch");
  SkewMatrix m(q.dim() + 1);
  for (std::size_t i = 0; i < q.dim(); ++i) {
    for (std::size_t j = i + 1; j < q.dim(); ++j) m.set(i, j, q.at(i, j));
    m.set(i, q.dim(), border[i]);
  }
  return pfaffian_eliminate(m);
}

// The ordered-sum definition of Z_N: sum over strictly increasing support
// tuples x_{i_1} < ... < x_{i_N} of det(psi_j(x_{i_k})) times the masses.
// Desk-scale oracle for z_even / z_odd.
inline Rational ordered_determinant_sum(const std::vector<FunctionTable>& family,
                                        const DiscreteMeasure& mu) {
  const std::size_t N = family.size();
  for (const auto& f : family) check_aligned(f, mu);
  std::vector<std::size_t> idx(N);
  Rational total(0);
  auto rec = [&](auto&& self, std::size_t pos, std::size_t start) -> void {
    if (pos == N) {
      Matrix m(N, N);
      for (std::size_t j = 0; j < N; ++j)
        for (std::size_t k = 0; k < N; ++k) m.at(j, k) = family[j].values[idx[k]];
      Rational w = determinant(m);
      for (std::size_t k = 0; k < N; ++k) w *= mu.masses[idx[k]];
      total += w;
      return;
    }
    for (std::size_t i = start; i < mu.size(); ++i) {
      idx[pos] = i;
      self(self, pos + 1, i + 1);
    }
  };
  rec(rec, 0, 0);
  return total;
}

}  // namespace pfpaths
