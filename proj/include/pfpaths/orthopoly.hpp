#pragma once

#include <cmath>
#include <cstddef>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "pfpaths/error.hpp"
#include "pfpaths/matrix.hpp"
#include "pfpaths/measure.hpp"
#include "pfpaths/pfaffian.hpp"
#include "pfpaths/rational.hpp"

namespace pfpaths {

// ---------------------------------------------------------------------------
// Bi-orthogonal system from a bi-moment table
// ---------------------------------------------------------------------------

struct BiorthSystem {
  Matrix moments;                // m_{ij} = <psi_i, phi_j>
  std::vector<Rational> minors;  // minors[k] = det of leading k x k block, minors[0] = 1
  std::vector<FunctionTable> P;  // P[n-1] is the n-th bordered determinant
  std::vector<FunctionTable> Q;
  std::vector<Rational> H;  // H[n-1] = minors[n-1] * minors[n]
};

// P_n borders the first n-1 moment rows with the phi row; Q_n borders the
// first n-1 moment columns with the psi column. <P_n, Q_m> = H_n delta_{nm}.
inline BiorthSystem biorth_build(const std::vector<FunctionTable>& psi,
                                 const std::vector<FunctionTable>& phi,
                                 const DiscreteMeasure& mu, std::size_t n_max) {
  if (n_max > psi.size() || n_max > phi.size())
    raise(errc::arity_mismatch, "not enough weight functions");
  BiorthSystem sys;
  sys.moments = Matrix(n_max, n_max);
  for (std::size_t i = 0; i < n_max; ++i)
    for (std::size_t j = 0; j < n_max; ++j)
      sys.moments.at(i, j) = plain_inner(psi[i], phi[j], mu);

  sys.minors.push_back(Rational(1));
  for (std::size_t k = 1; k <= n_max; ++k) {
    Matrix lead(k, k);
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = 0; j < k; ++j) lead.at(i, j) = sys.moments.at(i, j);
    sys.minors.push_back(determinant(lead));
    if (sys.minors.back().is_zero())
      raise(errc::singular_leading_minor, "leading moment minor " + std::to_string(k) + " is 0");
  }

  for (std::size_t n = 1; n <= n_max; ++n) {
    FunctionTable pn, qn;
    for (std::size_t t = 0; t < mu.size(); ++t) {
      Matrix mp(n, n), mq(n, n);
      for (std::size_t i = 0; i + 1 < n; ++i)
        for (std::size_t j = 0; j < n; ++j) mp.at(i, j) = sys.moments.at(i, j);
      for (std::size_t j = 0; j < n; ++j) mp.at(n - 1, j) = phi[j].values[t];
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j + 1 < n; ++j) mq.at(i, j) = sys.moments.at(i, j);
        mq.at(i, n - 1) = psi[i].values[t];
      }
      pn.values.push_back(determinant(mp));
      qn.values.push_back(determinant(mq));
    }
    sys.P.push_back(std::move(pn));
    sys.Q.push_back(std::move(qn));
    sys.H.push_back(sys.minors[n - 1] * sys.minors[n]);
  }
  return sys;
}

// ---------------------------------------------------------------------------
// Multiple orthogonal polynomials of mixed type
// ---------------------------------------------------------------------------

struct MixedMultipleSystem {
  // Row index set: (i, p) for i < k, p < a_i; column set: (j, q) for j < l,
  // q < b_j. moments[(i,p)][(j,q)] = int x^{p+q} w1_i w2_j dmu.
  Matrix moments;
  std::vector<std::pair<std::size_t, std::size_t>> row_index;  // (family, power)
  std::vector<std::pair<std::size_t, std::size_t>> col_index;
  std::vector<FunctionTable> P;  // P[K]: type with multi-index a - e_K
  std::vector<FunctionTable> Q;  // Q[L]: multi-index b - e_L
};

inline MixedMultipleSystem mixed_multiple_build(const std::vector<FunctionTable>& w1,
                                                const std::vector<FunctionTable>& w2,
                                                const std::vector<std::size_t>& a,
                                                const std::vector<std::size_t>& b,
                                                const DiscreteMeasure& mu) {
  if (a.size() != w1.size() || b.size() != w2.size())
    raise(errc::arity_mismatch, "multiplicity/family count mismatch");
  std::size_t na = 0, nb = 0;
  for (auto x : a) na += x;
  for (auto x : b) nb += x;
  if (na != nb || na == 0) raise(errc::arity_mismatch, "sum a must equal sum b and be positive");
  const std::size_t N = na;

  MixedMultipleSystem sys;
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t p = 0; p < a[i]; ++p) sys.row_index.emplace_back(i, p);
  for (std::size_t j = 0; j < b.size(); ++j)
    for (std::size_t q = 0; q < b[j]; ++q) sys.col_index.emplace_back(j, q);

  sys.moments = Matrix(N, N);
  for (std::size_t r = 0; r < N; ++r)
    for (std::size_t c = 0; c < N; ++c) {
      auto [i, p] = sys.row_index[r];
      auto [j, q] = sys.col_index[c];
      FunctionTable xi = FunctionTable::monomial(mu, static_cast<unsigned>(p + q), &w1[i]);
      sys.moments.at(r, c) = plain_inner(xi, w2[j], mu);
    }
  if (determinant(sys.moments).is_zero())
    raise(errc::singular_leading_minor, "full mixed-moment determinant is 0");

  for (std::size_t K = 0; K < a.size(); ++K) {
    FunctionTable pt;
    if (a[K] == 0) raise(errc::arity_mismatch, "cannot lower a zero multiplicity");
    for (std::size_t t = 0; t < mu.size(); ++t) {
      Matrix m(N, N);
      std::size_t r_out = 0;
      for (std::size_t r = 0; r < N; ++r) {
        auto [i, p] = sys.row_index[r];
        if (i == K && p == a[K] - 1) continue;  // dropped row
        for (std::size_t c = 0; c < N; ++c) m.at(r_out, c) = sys.moments.at(r, c);
        ++r_out;
      }
      for (std::size_t c = 0; c < N; ++c) {
        auto [j, q] = sys.col_index[c];
        Rational v = w2[j].values[t];
        for (std::size_t e = 0; e < q; ++e) v *= mu.support[t];
        m.at(N - 1, c) = v;
      }
      pt.values.push_back(determinant(m));
    }
    sys.P.push_back(std::move(pt));
  }

  for (std::size_t L = 0; L < b.size(); ++L) {
    FunctionTable qt;
    if (b[L] == 0) raise(errc::arity_mismatch, "cannot lower a zero multiplicity");
    for (std::size_t t = 0; t < mu.size(); ++t) {
      Matrix m(N, N);
      for (std::size_t r = 0; r < N; ++r) {
        std::size_t c_out = 0;
        for (std::size_t c = 0; c < N; ++c) {
          auto [j, q] = sys.col_index[c];
          if (j == L && q == b[L] - 1) continue;
          m.at(r, c_out) = sys.moments.at(r, c);
          ++c_out;
        }
        auto [i, p] = sys.row_index[r];
        Rational v = w1[i].values[t];
        for (std::size_t e = 0; e < p; ++e) v *= mu.support[t];
        m.at(r, N - 1) = v;
      }
      qt.values.push_back(determinant(m));
    }
    sys.Q.push_back(std::move(qt));
  }
  return sys;
}

// ---------------------------------------------------------------------------
// Binomial moments, Toeplitz determinants and polynomials on the unit circle
// ---------------------------------------------------------------------------

// Finite-support Laurent polynomial over the rationals.
class LaurentPoly {
 public:
  LaurentPoly() = default;
  explicit LaurentPoly(std::map<long, Rational> coeffs) : c_(std::move(coeffs)) { trim(); }

  static LaurentPoly monomial(long exponent, const Rational& coeff) {
    return LaurentPoly({{exponent, coeff}});
  }

  // (1+z)^(2T) z^(-T)
  static LaurentPoly binomial_weight(unsigned long T) {
    std::map<long, Rational> c;
    for (unsigned long i = 0; i <= 2 * T; ++i)
      c[static_cast<long>(i) - static_cast<long>(T)] = binomial(2 * T, static_cast<long>(i));
    return LaurentPoly(std::move(c));
  }

  Rational coefficient(long k) const {
    auto it = c_.find(k);
    return it == c_.end() ? Rational(0) : it->second;
  }

  LaurentPoly substitute_inverse() const {  // z -> 1/z
    std::map<long, Rational> c;
    for (const auto& [e, v] : c_) c[-e] = v;
    return LaurentPoly(std::move(c));
  }

  friend LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b) {
    std::map<long, Rational> c;
    for (const auto& [ea, va] : a.c_)
      for (const auto& [eb, vb] : b.c_) c[ea + eb] += va * vb;
    return LaurentPoly(std::move(c));
  }

  friend LaurentPoly operator+(const LaurentPoly& a, const LaurentPoly& b) {
    std::map<long, Rational> c = a.c_;
    for (const auto& [e, v] : b.c_) c[e] += v;
    return LaurentPoly(std::move(c));
  }

  const std::map<long, Rational>& coeffs() const { return c_; }

 private:
  void trim() {
    for (auto it = c_.begin(); it != c_.end();)
      it = it->second.is_zero() ? c_.erase(it) : std::next(it);
  }

  std::map<long, Rational> c_;
};

// C(2T, T+k): the k-th moment of the binomial weight on the circle.
inline Rational binom_moment(unsigned long T, long k) { return binomial(2 * T, static_cast<long>(T) + k); }

inline Rational toeplitz_det(unsigned long T, std::size_t N) {
  Matrix m(N, N);
  for (std::size_t r = 0; r < N; ++r)
    for (std::size_t c = 0; c < N; ++c)
      m.at(r, c) = binom_moment(T, static_cast<long>(c) - static_cast<long>(r));
  return determinant(m);
}

// Bordered Toeplitz determinant with last row (1, z, ..., z^n), expanded
// symbolically along that row.
inline LaurentPoly opuc_build(unsigned long T, std::size_t n) {
  LaurentPoly p;
  for (std::size_t c = 0; c <= n; ++c) {
    Matrix minor(n, n);
    for (std::size_t r = 0; r < n; ++r) {
      std::size_t cc = 0;
      for (std::size_t col = 0; col <= n; ++col) {
        if (col == c) continue;
        minor.at(r, cc) = binom_moment(T, static_cast<long>(col) - static_cast<long>(r));
        ++cc;
      }
    }
    Rational cof = determinant(minor);
    if ((n + c) % 2 != 0) cof = -cof;
    p = p + LaurentPoly::monomial(static_cast<long>(c), cof);
  }
  return p;
}

// Circle pairing: constant Laurent coefficient of w(z) P(z) Q(1/z).
inline Rational opuc_pairing(unsigned long T, const LaurentPoly& p, const LaurentPoly& q) {
  return (LaurentPoly::binomial_weight(T) * p * q.substitute_inverse()).coefficient(0);
}

// ---------------------------------------------------------------------------
// Skew-orthogonal and partial-skew-orthogonal function families
// ---------------------------------------------------------------------------

namespace detail {

// Pf of the skew Gram matrix of the listed functions bordered by their values
// at one support point.
inline Rational bordered_gram_pf(const SkewMatrix& gram, const std::vector<std::size_t>& rows,
                                 const std::vector<FunctionTable>& family, std::size_t t) {
  const std::size_t n = rows.size();
  SkewMatrix m(n + 1);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) m.set(i, j, gram.at(rows[i], rows[j]));
    m.set(i, n, family[rows[i]].values[t]);
  }
  return pfaffian_eliminate(m);
}

}  // namespace detail

struct SopSystem {
  SkewMatrix gram;               // full skew Gram of the supplied family
  std::vector<Rational> z_even_values;  // z_even_values[n] = Z_{2n}
  std::vector<FunctionTable> P;  // P[k] is the k-th skew-orthogonal function
};

// Skew-orthogonal functions, both normalized by 1/Z_{2n}: P_{2n} is the Gram
// Pfaffian on functions 1..2n+1 bordered by their values, P_{2n+1} the same
// on functions 1..2n plus 2n+2 (skipping 2n+1). The value border always
// occupies the last slot, which is what makes the whole cross-parity
// orthogonality table close.
inline SopSystem sop_build(const std::vector<FunctionTable>& psi, const DiscreteMeasure& mu,
                           std::size_t n_max) {
  if (psi.size() < 2 * n_max + 2) raise(errc::arity_mismatch, "need 2*n_max+2 weight functions");
  SopSystem sys{skew_gram(psi, mu), {}, {}};
  for (std::size_t n = 0; n <= n_max; ++n) {
    SkewMatrix q(2 * n);
    for (std::size_t i = 0; i < 2 * n; ++i)
      for (std::size_t j = i + 1; j < 2 * n; ++j) q.set(i, j, sys.gram.at(i, j));
    sys.z_even_values.push_back(pfaffian_eliminate(q));
    if (sys.z_even_values.back().is_zero())
      raise(errc::zero_normalization, "Z_" + std::to_string(2 * n) + " = 0");
  }

  for (std::size_t n = 0; n <= n_max; ++n) {
    const Rational& zn = sys.z_even_values[n];
    FunctionTable even_fn, odd_fn;
    std::vector<std::size_t> rows_even(2 * n + 1);
    for (std::size_t i = 0; i <= 2 * n; ++i) rows_even[i] = i;
    std::vector<std::size_t> rows_odd(2 * n);
    for (std::size_t i = 0; i < 2 * n; ++i) rows_odd[i] = i;
    rows_odd.push_back(2 * n + 1);
    for (std::size_t t = 0; t < mu.size(); ++t) {
      even_fn.values.push_back(detail::bordered_gram_pf(sys.gram, rows_even, psi, t) / zn);
      odd_fn.values.push_back(detail::bordered_gram_pf(sys.gram, rows_odd, psi, t) / zn);
    }
    sys.P.push_back(std::move(even_fn));
    sys.P.push_back(std::move(odd_fn));
  }
  return sys;
}

struct PsopSystem {
  SkewMatrix gram;
  std::vector<Rational> border;          // single-function weights Q(alpha_i)
  std::vector<Rational> z_values;        // z_values[N] = Z_N, Z_0 = 1
  std::vector<FunctionTable> R;
};

// Partial-skew-orthogonal functions. R_{2n} matches the even skew-orthogonal
// function; R_{2n+1} borders the Gram matrix of the first 2n+2 functions with
// the single-function weights on one side and the values at x on the other,
// normalized by 1/Z_{2n+1}.
inline PsopSystem psop_build(const std::vector<FunctionTable>& psi,
                             const std::vector<Rational>& border, const DiscreteMeasure& mu,
                             std::size_t n_max) {
  if (psi.size() < 2 * n_max + 2) raise(errc::arity_mismatch, "need 2*n_max+2 weight functions");
  if (border.size() < 2 * n_max + 2) raise(errc::misaligned_table, "need a border per function");
  PsopSystem sys{skew_gram(psi, mu), border, {}, {}};

  for (std::size_t N = 0; N <= 2 * n_max + 1; ++N) {
    if (N == 0) {
      sys.z_values.push_back(Rational(1));
      continue;
    }
    SkewMatrix q(N);
    for (std::size_t i = 0; i < N; ++i)
      for (std::size_t j = i + 1; j < N; ++j) q.set(i, j, sys.gram.at(i, j));
    std::vector<Rational> b(border.begin(), border.begin() + static_cast<long>(N));
    sys.z_values.push_back(N % 2 == 0 ? z_even(q) : z_odd(q, b));
    if (sys.z_values.back().is_zero())
      raise(errc::zero_normalization, "Z_" + std::to_string(N) + " = 0");
  }

  for (std::size_t n = 0; n <= n_max; ++n) {
    FunctionTable even_fn, odd_fn;
    std::vector<std::size_t> rows(2 * n + 1);
    for (std::size_t i = 0; i <= 2 * n; ++i) rows[i] = i;
    for (std::size_t t = 0; t < mu.size(); ++t)
      even_fn.values.push_back(detail::bordered_gram_pf(sys.gram, rows, psi, t) /
                               sys.z_values[2 * n]);

    // Ground order (w, psi_1..psi_{2n+2}, x); w pairs with the functions via
    // the single-function weights and with x via 0.
    for (std::size_t t = 0; t < mu.size(); ++t) {
      const std::size_t k = 2 * n + 2;
      SkewMatrix m(k + 2);
      for (std::size_t i = 0; i < k; ++i) {
        m.set(0, i + 1, border[i]);
        for (std::size_t j = i + 1; j < k; ++j) m.set(i + 1, j + 1, sys.gram.at(i, j));
        m.set(i + 1, k + 1, psi[i].values[t]);
      }
      odd_fn.values.push_back(pfaffian_eliminate(m) / sys.z_values[2 * n + 1]);
    }
    sys.R.push_back(std::move(even_fn));
    sys.R.push_back(std::move(odd_fn));
  }
  return sys;
}

// ---------------------------------------------------------------------------
// Two-family (multiple) skew and partial-skew systems
// ---------------------------------------------------------------------------

namespace detail {

// Pf of the skew Gram of the concatenated selection (fam1 rows, then fam2
// rows); gram must be the Gram of fam1 ++ fam2.
inline Rational selection_pf(const SkewMatrix& gram, const std::vector<std::size_t>& sel) {
  SkewMatrix m(sel.size());
  for (std::size_t i = 0; i < sel.size(); ++i)
    for (std::size_t j = i + 1; j < sel.size(); ++j) m.set(i, j, gram.at(sel[i], sel[j]));
  return pfaffian_eliminate(m);
}

inline std::vector<std::size_t> iota_vec(std::size_t base, std::size_t count) {
  std::vector<std::size_t> v(count);
  for (std::size_t i = 0; i < count; ++i) v[i] = base + i;
  return v;
}

}  // namespace detail

struct MskewSystem {
  SkewMatrix gram;  // Gram of (psi_{1,1..n1+1}, psi_{2,1..n2+1})
  std::size_t n1 = 0, n2 = 0;
  Rational z_e1;  // Z_{n1+1, n2}
  Rational z_e2;  // Z_{n1, n2+1}
  FunctionTable R;                     // R_{n1,n2}
  std::optional<FunctionTable> R_e1;   // R_{n1+1,n2}, needs n1 >= 1
  std::optional<FunctionTable> R_e2;   // R_{n1,n2+1}, needs n2 >= 1
};

// Multiple skew-orthogonal functions for two weight families; n1 + n2 odd.
// The raised variants replace the top function of their family by the next
// one, keeping the matrix size. Not normalized: the relation values carry the
// Z factors.
inline MskewSystem mskew_build(const std::vector<FunctionTable>& fam1,
                               const std::vector<FunctionTable>& fam2, const DiscreteMeasure& mu,
                               std::size_t n1, std::size_t n2) {
  if ((n1 + n2) % 2 == 0) raise(errc::parity_mismatch, "n1 + n2 must be odd");
  if (fam1.size() < n1 + 1 || fam2.size() < n2 + 1)
    raise(errc::arity_mismatch, "need n_i + 1 functions per family");
  std::vector<FunctionTable> all;
  for (std::size_t i = 0; i <= n1; ++i) all.push_back(fam1[i]);
  for (std::size_t i = 0; i <= n2; ++i) all.push_back(fam2[i]);
  MskewSystem sys{skew_gram(all, mu), n1, n2, Rational(0), Rational(0), {}, std::nullopt,
                  std::nullopt};
  const std::size_t base2 = n1 + 1;

  auto z_of = [&](std::size_t a, std::size_t bcount) {
    auto sel = detail::iota_vec(0, a);
    auto s2 = detail::iota_vec(base2, bcount);
    sel.insert(sel.end(), s2.begin(), s2.end());
    return detail::selection_pf(sys.gram, sel);
  };
  sys.z_e1 = z_of(n1 + 1, n2);
  sys.z_e2 = z_of(n1, n2 + 1);
  if (sys.z_e1.is_zero() || sys.z_e2.is_zero())
    raise(errc::zero_normalization, "a raised Z normalization is 0");

  auto bordered = [&](const std::vector<std::size_t>& sel) {
    FunctionTable out;
    for (std::size_t t = 0; t < mu.size(); ++t)
      out.values.push_back(detail::bordered_gram_pf(sys.gram, sel, all, t));
    return out;
  };

  {
    auto sel = detail::iota_vec(0, n1);
    auto s2 = detail::iota_vec(base2, n2);
    sel.insert(sel.end(), s2.begin(), s2.end());
    sys.R = bordered(sel);
  }
  if (n1 >= 1) {
    std::vector<std::size_t> sel = detail::iota_vec(0, n1 - 1);
    sel.push_back(n1);  // skip psi_{1,n1}, take psi_{1,n1+1}
    auto s2 = detail::iota_vec(base2, n2);
    sel.insert(sel.end(), s2.begin(), s2.end());
    sys.R_e1 = bordered(sel);
  }
  if (n2 >= 1) {
    auto sel = detail::iota_vec(0, n1);
    auto s2 = detail::iota_vec(base2, n2 - 1);
    sel.insert(sel.end(), s2.begin(), s2.end());
    sel.push_back(base2 + n2);
    sys.R_e2 = bordered(sel);
  }
  return sys;
}

struct MpskewSystem {
  SkewMatrix gram;
  std::size_t n1 = 0, n2 = 0;
  Rational z_e1;
  Rational z_e2;
  FunctionTable R_e1;  // partial-skew variant of R_{n1+1,n2}
  FunctionTable R_e2;  // partial-skew variant of R_{n1,n2+1}
};

// Multiple partial-skew-orthogonal functions: instead of skipping a function,
// the raised variants border the full Gram with the single-function weights
// of their own family. n1 + n2 odd.
inline MpskewSystem mpskew_build(const std::vector<FunctionTable>& fam1,
                                 const std::vector<FunctionTable>& fam2,
                                 const std::vector<Rational>& border1,
                                 const std::vector<Rational>& border2, const DiscreteMeasure& mu,
                                 std::size_t n1, std::size_t n2) {
  if ((n1 + n2) % 2 == 0) raise(errc::parity_mismatch, "n1 + n2 must be odd");
  if (fam1.size() < n1 + 1 || fam2.size() < n2 + 1)
    raise(errc::arity_mismatch, "need n_i + 1 functions per family");
  if (border1.size() < n1 + 1 || border2.size() < n2 + 1)
    raise(errc::misaligned_table, "need a border weight per function");

  std::vector<FunctionTable> all;
  for (std::size_t i = 0; i <= n1; ++i) all.push_back(fam1[i]);
  for (std::size_t i = 0; i <= n2; ++i) all.push_back(fam2[i]);
  MpskewSystem sys{skew_gram(all, mu), n1, n2, Rational(0), Rational(0), {}, {}};
  const std::size_t base2 = n1 + 1;

  {
    auto sel = detail::iota_vec(0, n1 + 1);
    auto s2 = detail::iota_vec(base2, n2);
    sel.insert(sel.end(), s2.begin(), s2.end());
    sys.z_e1 = detail::selection_pf(sys.gram, sel);
  }
  {
    auto sel = detail::iota_vec(0, n1);
    auto s2 = detail::iota_vec(base2, n2 + 1);
    sel.insert(sel.end(), s2.begin(), s2.end());
    sys.z_e2 = detail::selection_pf(sys.gram, sel);
  }
  if (sys.z_e1.is_zero() || sys.z_e2.is_zero())
    raise(errc::zero_normalization, "a raised Z normalization is 0");

  // Ground order (w, fam1 slice, fam2 slice, x); w pairs with one family's
  // functions via its border weights and with everything else via 0.
  auto build = [&](std::size_t take1, std::size_t take2, bool border_on_first) {
    FunctionTable out;
    const std::size_t k = take1 + take2;
    for (std::size_t t = 0; t < mu.size(); ++t) {
      SkewMatrix m(k + 2);
      std::vector<std::size_t> sel = detail::iota_vec(0, take1);
      auto s2 = detail::iota_vec(base2, take2);
      sel.insert(sel.end(), s2.begin(), s2.end());
      for (std::size_t i = 0; i < k; ++i) {
        if (border_on_first && i < take1) m.set(0, i + 1, border1[i]);
        if (!border_on_first && i >= take1) m.set(0, i + 1, border2[i - take1]);
        for (std::size_t j = i + 1; j < k; ++j) m.set(i + 1, j + 1, sys.gram.at(sel[i], sel[j]));
        m.set(i + 1, k + 1, all[sel[i]].values[t]);
      }
      out.values.push_back(pfaffian_eliminate(m));
    }
    return out;
  };
  sys.R_e1 = build(n1 + 1, n2, true);
  sys.R_e2 = build(n1, n2 + 1, false);
  return sys;
}

// ---------------------------------------------------------------------------
// Catalan-Hankel Pfaffian and the Gaussian demo kernel
// ---------------------------------------------------------------------------

// Pf((j - i) mu_{i+j+k}) for i, j = 0..2n-1.
inline Rational catalan_hankel(const std::vector<Rational>& mu_seq, std::size_t n, long k) {
  if (n == 0) return Rational(1);
  const long max_index = 2 * (2 * static_cast<long>(n) - 1) + k;
  if (k < 0 || max_index >= static_cast<long>(mu_seq.size()))
    raise(errc::insufficient_moments,
          "need moments up to index " + std::to_string(max_index));
  SkewMatrix m(2 * n);
  for (std::size_t i = 0; i < 2 * n; ++i)
    for (std::size_t j = i + 1; j < 2 * n; ++j) {
      long diff = static_cast<long>(j) - static_cast<long>(i);
      m.set(i, j, Rational(diff) * mu_seq[static_cast<std::size_t>(
                      static_cast<long>(i) + static_cast<long>(j) + k)]);
    }
  return pfaffian_eliminate(m);
}

// Heat kernel for the floating demo; all identity checks run on exact tables
// sampled from it.
inline double gaussian_kernel(double x, double y, double t) {
  if (!(t > 0)) raise(errc::nonpositive_time, "kernel time must be positive");
  const double d = x - y;
  return std::exp(-d * d / (2.0 * t)) / std::sqrt(2.0 * M_PI * t);
}

}  // namespace pfpaths
