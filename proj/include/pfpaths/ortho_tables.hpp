#pragma once

#include <string>
#include <vector>

#include "pfpaths/json_io.hpp"
#include "pfpaths/measure.hpp"
#include "pfpaths/orthopoly.hpp"

// Orthogonality tables: each builder returns one JSON record per relation,
// with the expected value, the computed value and a matched flag. Shared by
// the CLI and the acceptance suite.

namespace pfpaths {

inline json relation_record(const std::string& rel, const Rational& expected,
                            const Rational& got) {
  json rec;
  rec["relation"] = rel;
  rec["expected"] = expected.str();
  rec["computed"] = got.str();
  rec["matched"] = expected == got;
  return rec;
}

inline std::vector<json> biorth_relations(const std::vector<FunctionTable>& psi,
                                          const std::vector<FunctionTable>& phi,
                                          const DiscreteMeasure& mu, std::size_t n_max) {
  BiorthSystem sys = biorth_build(psi, phi, mu, n_max);
  std::vector<json> recs;
  for (std::size_t n = 1; n <= n_max; ++n)
    for (std::size_t m = 1; m <= n_max; ++m)
      recs.push_back(relation_record("int P_" + std::to_string(n) + " Q_" + std::to_string(m),
                                     n == m ? sys.H[n - 1] : Rational(0),
                                     plain_inner(sys.P[n - 1], sys.Q[m - 1], mu)));
  return recs;
}

inline std::vector<json> mixed_multiple_relations(const std::vector<FunctionTable>& w1,
                                                  const std::vector<FunctionTable>& w2,
                                                  const std::vector<std::size_t>& a,
                                                  const std::vector<std::size_t>& b,
                                                  const DiscreteMeasure& mu) {
  MixedMultipleSystem sys = mixed_multiple_build(w1, w2, a, b, mu);
  std::vector<json> recs;
  for (std::size_t K = 0; K < w1.size(); ++K)
    for (std::size_t j = 0; j < w1.size(); ++j)
      for (std::size_t p = 0; p < a[j]; ++p) {
        if (j == K && p == a[K] - 1) continue;  // the dropped row pairs nonzero
        FunctionTable xpw = FunctionTable::monomial(mu, static_cast<unsigned>(p), &w1[j]);
        recs.push_back(relation_record("int P(-e" + std::to_string(K + 1) + ") x^" +
                                           std::to_string(p) + " w1_" + std::to_string(j + 1),
                                       Rational(0), plain_inner(sys.P[K], xpw, mu)));
      }
  for (std::size_t L = 0; L < w2.size(); ++L)
    for (std::size_t j = 0; j < w2.size(); ++j)
      for (std::size_t q = 0; q < b[j]; ++q) {
        if (j == L && q == b[L] - 1) continue;
        FunctionTable xqw = FunctionTable::monomial(mu, static_cast<unsigned>(q), &w2[j]);
        recs.push_back(relation_record("int Q(-e" + std::to_string(L + 1) + ") x^" +
                                           std::to_string(q) + " w2_" + std::to_string(j + 1),
                                       Rational(0), plain_inner(sys.Q[L], xqw, mu)));
      }
  return recs;
}

inline std::vector<json> opuc_relations(unsigned long T, std::size_t n_max) {
  std::vector<json> recs;
  std::vector<LaurentPoly> P;
  for (std::size_t n = 0; n <= n_max; ++n) P.push_back(opuc_build(T, n));
  for (std::size_t n = 0; n <= n_max; ++n)
    for (std::size_t m = 0; m <= n_max; ++m) {
      Rational expected =
          n == m ? toeplitz_det(T, n) * toeplitz_det(T, n + 1) : Rational(0);
      recs.push_back(relation_record(
          "circle<P_" + std::to_string(n) + ",P_" + std::to_string(m) + ">", expected,
          opuc_pairing(T, P[n], P[m])));
    }
  return recs;
}

inline std::vector<json> sop_relations(const std::vector<FunctionTable>& psi,
                                       const DiscreteMeasure& mu, std::size_t n_max) {
  SopSystem sys = sop_build(psi, mu, n_max);
  auto z_at = [&](std::size_t n) {  // Z_{2n}; the gram always covers 2*(n_max+1)
    if (n < sys.z_even_values.size()) return sys.z_even_values[n];
    SkewMatrix q(2 * n);
    for (std::size_t i = 0; i < 2 * n; ++i)
      for (std::size_t j = i + 1; j < 2 * n; ++j) q.set(i, j, sys.gram.at(i, j));
    return pfaffian_eliminate(q);
  };
  std::vector<json> recs;
  for (std::size_t n = 0; n <= n_max; ++n)
    for (std::size_t m = 0; m <= n_max; ++m) {
      recs.push_back(relation_record(
          "<P_" + std::to_string(2 * n) + ",P_" + std::to_string(2 * m) + ">", Rational(0),
          skew_inner(sys.P[2 * n], sys.P[2 * m], mu)));
      recs.push_back(relation_record(
          "<P_" + std::to_string(2 * n + 1) + ",P_" + std::to_string(2 * m + 1) + ">",
          Rational(0), skew_inner(sys.P[2 * n + 1], sys.P[2 * m + 1], mu)));
      Rational expected = n == m ? z_at(n + 1) / z_at(n) : Rational(0);
      recs.push_back(relation_record(
          "<P_" + std::to_string(2 * n) + ",P_" + std::to_string(2 * m + 1) + ">", expected,
          skew_inner(sys.P[2 * n], sys.P[2 * m + 1], mu)));
    }
  return recs;
}

// Index conventions adjudicated against the combinatorial expansion: the even
// function pairs to Z_{2n+2}/Z_{2n} exactly at psi_{2n+2}, and the odd one
// reproduces -(Z_{2n+2}/Z_{2n+1}) Q(alpha_m) for every m up to 2n+2.
inline std::vector<json> psop_relations(const std::vector<FunctionTable>& psi,
                                        const std::vector<Rational>& border,
                                        const DiscreteMeasure& mu, std::size_t n_max) {
  PsopSystem sys = psop_build(psi, border, mu, n_max);
  auto z_at = [&](std::size_t N) {
    if (N < sys.z_values.size()) return sys.z_values[N];
    SkewMatrix q(N);
    for (std::size_t i = 0; i < N; ++i)
      for (std::size_t j = i + 1; j < N; ++j) q.set(i, j, sys.gram.at(i, j));
    return z_even(q);
  };
  std::vector<json> recs;
  for (std::size_t n = 0; n <= n_max; ++n) {
    const Rational z_top = z_at(2 * n + 2);
    for (std::size_t m = 1; m <= 2 * n + 2; ++m) {
      Rational expected = m == 2 * n + 2 ? z_top / sys.z_values[2 * n] : Rational(0);
      recs.push_back(relation_record(
          "<R_" + std::to_string(2 * n) + ",psi_" + std::to_string(m) + ">", expected,
          skew_inner(sys.R[2 * n], psi[m - 1], mu)));
    }
    for (std::size_t m = 1; m <= 2 * n + 2; ++m) {
      Rational expected = -(z_top / sys.z_values[2 * n + 1]) * border[m - 1];
      recs.push_back(relation_record(
          "<R_" + std::to_string(2 * n + 1) + ",psi_" + std::to_string(m) + ">", expected,
          skew_inner(sys.R[2 * n + 1], psi[m - 1], mu)));
    }
  }
  return recs;
}

// Sign conventions adjudicated against the expansion: raising a family index
// flips the sign of its delta column, and the first family additionally
// carries (-1)^{n2} from commuting past the second block.
inline std::vector<json> mskew_relations(const std::vector<FunctionTable>& f1,
                                         const std::vector<FunctionTable>& f2,
                                         const DiscreteMeasure& mu, std::size_t n1,
                                         std::size_t n2) {
  MskewSystem sys = mskew_build(f1, f2, mu, n1, n2);
  const Rational s1 = n2 % 2 == 0 ? Rational(1) : Rational(-1);
  std::vector<json> recs;
  for (std::size_t j = 1; j <= n1 + 1; ++j)
    recs.push_back(relation_record("<R,psi1_" + std::to_string(j) + ">",
                                   j == n1 + 1 ? s1 * sys.z_e1 : Rational(0),
                                   skew_inner(sys.R, f1[j - 1], mu)));
  for (std::size_t j = 1; j <= n2 + 1; ++j)
    recs.push_back(relation_record("<R,psi2_" + std::to_string(j) + ">",
                                   j == n2 + 1 ? sys.z_e2 : Rational(0),
                                   skew_inner(sys.R, f2[j - 1], mu)));
  if (sys.R_e1)
    for (std::size_t j = 1; j <= n1 + 1; ++j)
      recs.push_back(relation_record("<R+e1,psi1_" + std::to_string(j) + ">",
                                     j == n1 ? -s1 * sys.z_e1 : Rational(0),
                                     skew_inner(*sys.R_e1, f1[j - 1], mu)));
  if (sys.R_e2)
    for (std::size_t j = 1; j <= n2 + 1; ++j)
      recs.push_back(relation_record("<R+e2,psi2_" + std::to_string(j) + ">",
                                     j == n2 ? -sys.z_e2 : Rational(0),
                                     skew_inner(*sys.R_e2, f2[j - 1], mu)));
  return recs;
}

inline std::vector<json> mpskew_relations(const std::vector<FunctionTable>& f1,
                                          const std::vector<FunctionTable>& f2,
                                          const std::vector<Rational>& b1,
                                          const std::vector<Rational>& b2,
                                          const DiscreteMeasure& mu, std::size_t n1,
                                          std::size_t n2) {
  MpskewSystem sys = mpskew_build(f1, f2, b1, b2, mu, n1, n2);
  std::vector<json> recs;
  for (std::size_t j = 1; j <= n1 + 1; ++j)
    recs.push_back(relation_record("<Rt+e1,psi1_" + std::to_string(j) + ">",
                                   -b1[j - 1] * sys.z_e1, skew_inner(sys.R_e1, f1[j - 1], mu)));
  for (std::size_t j = 1; j <= n2; ++j)
    recs.push_back(relation_record("<Rt+e1,psi2_" + std::to_string(j) + ">", Rational(0),
                                   skew_inner(sys.R_e1, f2[j - 1], mu)));
  for (std::size_t j = 1; j <= n2 + 1; ++j)
    recs.push_back(relation_record("<Rt+e2,psi2_" + std::to_string(j) + ">",
                                   -b2[j - 1] * sys.z_e2, skew_inner(sys.R_e2, f2[j - 1], mu)));
  for (std::size_t j = 1; j <= n1; ++j)
    recs.push_back(relation_record("<Rt+e2,psi1_" + std::to_string(j) + ">", Rational(0),
                                   skew_inner(sys.R_e2, f1[j - 1], mu)));
  return recs;
}

}  // namespace pfpaths
