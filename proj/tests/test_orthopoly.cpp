#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "pfpaths/orthopoly.hpp"

using namespace pfpaths;

namespace {

Rational rnd(std::mt19937_64& rng) {
  long n = static_cast<long>(rng() % 19) - 9;
  long d = static_cast<long>(rng() % 9) + 1;
  return Rational(n, d);
}

Rational rnd_nonzero(std::mt19937_64& rng) {
  Rational r = rnd(rng);
  return r.is_zero() ? Rational(1, 2) : r;
}

DiscreteMeasure random_measure(std::size_t points, std::mt19937_64& rng) {
  std::vector<Rational> sup, mass;
  for (std::size_t i = 0; i < points; ++i) {
    sup.push_back(Rational(2 * static_cast<long>(i) - static_cast<long>(points), 2));
    mass.push_back(Rational(static_cast<long>(rng() % 5) + 1, static_cast<long>(rng() % 3) + 1));
  }
  return DiscreteMeasure(sup, mass);
}

FunctionTable random_table(const DiscreteMeasure& mu, std::mt19937_64& rng) {
  FunctionTable t;
  for (std::size_t k = 0; k < mu.size(); ++k) t.values.push_back(rnd_nonzero(rng));
  return t;
}

}  // namespace

TEST_CASE("biorth smallest case by hand determinant") {
  std::mt19937_64 rng(3);
  DiscreteMeasure mu = random_measure(4, rng);
  FunctionTable one = FunctionTable::monomial(mu, 0);
  auto sys = biorth_build({one}, {one}, mu, 1);
  // 1x1 bordered determinants are the constant 1; the pairing is the total
  // mass, which is D_0 * D_1 with D_0 := 1.
  for (const auto& v : sys.P[0].values) CHECK(v == Rational(1));
  CHECK(plain_inner(sys.P[0], sys.Q[0], mu) == mu.total_mass());
  CHECK(sys.H[0] == mu.total_mass());
  CHECK(sys.H[0] == sys.minors[0] * sys.minors[1]);
}

TEST_CASE("biorth orthogonality table on random fixtures") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 6; ++trial) {
    DiscreteMeasure mu = random_measure(6, rng);
    std::vector<FunctionTable> psi, phi;
    for (int i = 0; i < 3; ++i) {
      psi.push_back(random_table(mu, rng));
      phi.push_back(random_table(mu, rng));
    }
    BiorthSystem sys;
    try {
      sys = biorth_build(psi, phi, mu, 3);
    } catch (const Error& e) {
      REQUIRE(e.code() == errc::singular_leading_minor);
      continue;  // degenerate draw
    }
    for (std::size_t n = 1; n <= 3; ++n)
      for (std::size_t m = 1; m <= 3; ++m) {
        Rational got = plain_inner(sys.P[n - 1], sys.Q[m - 1], mu);
        CHECK(got == (n == m ? sys.H[n - 1] : Rational(0)));
      }
  }
}

TEST_CASE("biorth reports singular leading minors") {
  DiscreteMeasure mu({Rational(0), Rational(1)}, {Rational(1), Rational(1)});
  FunctionTable zero{{Rational(0), Rational(0)}};
  FunctionTable one{{Rational(1), Rational(1)}};
  CHECK_THROWS_AS(biorth_build({zero}, {one}, mu, 1), Error);
  try {
    biorth_build({zero}, {one}, mu, 1);
  } catch (const Error& e) {
    CHECK(e.code() == errc::singular_leading_minor);
  }
}

TEST_CASE("mixed multiple with a single weight pair reduces to biorth") {
  std::mt19937_64 rng(7);
  DiscreteMeasure mu = random_measure(6, rng);
  FunctionTable w1 = random_table(mu, rng);
  FunctionTable w2 = random_table(mu, rng);
  const std::size_t n = 2;
  std::vector<FunctionTable> psi, phi;
  for (std::size_t i = 0; i < n; ++i) {
    psi.push_back(FunctionTable::monomial(mu, static_cast<unsigned>(i), &w1));
    phi.push_back(FunctionTable::monomial(mu, static_cast<unsigned>(i), &w2));
  }
  auto bi = biorth_build(psi, phi, mu, n);
  auto mm = mixed_multiple_build({w1}, {w2}, {n}, {n}, mu);
  CHECK(mm.P[0].values == bi.P[n - 1].values);
  CHECK(mm.Q[0].values == bi.Q[n - 1].values);
}

TEST_CASE("mixed multiple orthogonality via the repeated-row oracle") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 4; ++trial) {
    DiscreteMeasure mu = random_measure(6, rng);
    std::vector<FunctionTable> w1 = {random_table(mu, rng), random_table(mu, rng)};
    std::vector<FunctionTable> w2 = {random_table(mu, rng)};
    std::vector<std::size_t> a = {1, 1}, b = {2};
    MixedMultipleSystem sys;
    try {
      sys = mixed_multiple_build(w1, w2, a, b, mu);
    } catch (const Error& e) {
      REQUIRE(e.code() == errc::singular_leading_minor);
      continue;
    }

    // P was built dropping row (K=1, p=a_K-1): the pairing with every
    // retained row (j, p) must vanish; equivalently the bordered determinant
    // has a repeated row.
    for (std::size_t K : {std::size_t{0}, std::size_t{1}}) {
      const auto& P = sys.P[K];
      for (std::size_t j = 0; j < a.size(); ++j)
        for (std::size_t p = 0; p < a[j]; ++p) {
          FunctionTable xpw = FunctionTable::monomial(mu, static_cast<unsigned>(p), &w1[j]);
          Rational got = plain_inner(P, xpw, mu);
          if (j == K && p == a[K] - 1) {
            CHECK(got != Rational(0));  // the dropped row pairs to the full determinant
          } else {
            CHECK(got == Rational(0));
          }
        }
    }
    for (std::size_t L : {std::size_t{0}}) {
      const auto& Q = sys.Q[L];
      for (std::size_t j = 0; j < b.size(); ++j)
        for (std::size_t q = 0; q < b[j]; ++q) {
          FunctionTable xqw = FunctionTable::monomial(mu, static_cast<unsigned>(q), &w2[j]);
          Rational got = plain_inner(Q, xqw, mu);
          if (j == L && q == b[L] - 1) {
            CHECK(got != Rational(0));
          } else {
            CHECK(got == Rational(0));
          }
        }
    }
  }
}

TEST_CASE("mixed multiple rejects a dead weight family") {
  DiscreteMeasure mu({Rational(0), Rational(1)}, {Rational(1), Rational(1)});
  FunctionTable zero{{Rational(0), Rational(0)}};
  FunctionTable one{{Rational(1), Rational(1)}};
  CHECK_THROWS_AS(mixed_multiple_build({zero}, {one}, {1}, {1}, mu), Error);
}

TEST_CASE("binomial moments") {
  CHECK(binom_moment(1, 0) == Rational(2));
  CHECK(binom_moment(2, 2) == Rational(1));
  CHECK(binom_moment(3, 9) == Rational(0));
  CHECK(binom_moment(3, -9) == Rational(0));

  // Laurent constant-coefficient oracle for T <= 5, all k
  for (unsigned long T = 0; T <= 5; ++T) {
    LaurentPoly w = LaurentPoly::binomial_weight(T);
    for (long k = -static_cast<long>(T) - 2; k <= static_cast<long>(T) + 2; ++k) {
      // CT[w(z) z^-k] is the coefficient of z^k in w
      CHECK(binom_moment(T, k) == w.coefficient(k));
    }
  }
}

TEST_CASE("toeplitz determinant and the vicious-walker count") {
  // m0 = 2, m1 = m-1 = 1: det [[2, 1], [1, 2]] = 3
  CHECK(toeplitz_det(1, 2) == Rational(3));
  CHECK(toeplitz_det(1, 1) == Rational(2));
}

TEST_CASE("opuc pairing table matches the Toeplitz minors") {
  for (unsigned long T : {1ul, 2ul, 3ul, 4ul}) {
    std::vector<LaurentPoly> P;
    for (std::size_t n = 0; n <= 4; ++n) P.push_back(opuc_build(T, n));
    for (std::size_t n = 0; n <= 4; ++n)
      for (std::size_t m = 0; m <= 4; ++m) {
        Rational got = opuc_pairing(T, P[n], P[m]);
        if (n == m) {
          CHECK(got == toeplitz_det(T, n) * toeplitz_det(T, n + 1));
        } else {
          CHECK(got == Rational(0));
        }
      }
  }
}

TEST_CASE("opuc P0 and P1 by hand") {
  // P_0 = 1, so the self-pairing is m_0
  LaurentPoly p0 = opuc_build(2, 0);
  CHECK(p0.coefficient(0) == Rational(1));
  CHECK(opuc_pairing(2, p0, p0) == binom_moment(2, 0));
  // P_1 = m_0 z - m_1
  LaurentPoly p1 = opuc_build(2, 1);
  CHECK(p1.coefficient(1) == binom_moment(2, 0));
  CHECK(p1.coefficient(0) == -binom_moment(2, 1));
  CHECK(opuc_pairing(2, p1, p0) == Rational(0));
}

TEST_CASE("sop relations") {
  std::mt19937_64 rng(13);
  int done = 0;
  while (done < 4) {
    DiscreteMeasure mu = random_measure(6, rng);
    std::vector<FunctionTable> psi;
    for (int i = 0; i < 6; ++i) psi.push_back(random_table(mu, rng));
    SopSystem sys;
    try {
      sys = sop_build(psi, mu, 2);
    } catch (const Error& e) {
      REQUIRE(e.code() == errc::zero_normalization);
      continue;
    }
    ++done;
    for (std::size_t n = 0; n <= 2; ++n)
      for (std::size_t m = 0; m <= 2; ++m) {
        CHECK(skew_inner(sys.P[2 * n], sys.P[2 * m], mu) == Rational(0));
        CHECK(skew_inner(sys.P[2 * n + 1], sys.P[2 * m + 1], mu) == Rational(0));
        Rational cross = skew_inner(sys.P[2 * n], sys.P[2 * m + 1], mu);
        if (n == m && n < 2) {
          CHECK(cross == sys.z_even_values[n + 1] / sys.z_even_values[n]);
        } else if (n != m) {
          CHECK(cross == Rational(0));
        }
      }
  }
}

TEST_CASE("sop smallest cases") {
  std::mt19937_64 rng(17);
  DiscreteMeasure mu = random_measure(5, rng);
  std::vector<FunctionTable> psi;
  for (int i = 0; i < 4; ++i) psi.push_back(random_table(mu, rng));
  auto sys = sop_build(psi, mu, 1);
  CHECK(sys.P[0].values == psi[0].values);  // P_0 = psi_1
  CHECK(sys.P[1].values == psi[1].values);  // P_1 = psi_2
  CHECK(skew_inner(sys.P[0], sys.P[1], mu) == skew_inner(psi[0], psi[1], mu));
  CHECK(skew_inner(sys.P[0], sys.P[0], mu) == Rational(0));
}

TEST_CASE("psop relations as adjudicated by the expansion oracle") {
  // <R_2n, psi_m> = (Z_{2n+2}/Z_{2n}) delta_{m,2n+2} for m <= 2n+2
  // <R_2n+1, psi_m> = -(Z_{2n+2}/Z_{2n+1}) Q(alpha_m) for m <= 2n+2
  std::mt19937_64 rng(19);
  int done = 0;
  while (done < 4) {
    DiscreteMeasure mu = random_measure(6, rng);
    std::vector<FunctionTable> psi;
    for (int i = 0; i < 4; ++i) psi.push_back(random_table(mu, rng));
    std::vector<Rational> border;
    for (const auto& f : psi) border.push_back(integral(f, mu));
    PsopSystem sys;
    try {
      sys = psop_build(psi, border, mu, 1);
    } catch (const Error& e) {
      REQUIRE(e.code() == errc::zero_normalization);
      continue;
    }
    ++done;
    for (std::size_t n = 0; n <= 1; ++n) {
      const Rational ratio_even = sys.z_values.size() > 2 * n + 2
                                      ? sys.z_values[2 * n + 2] / sys.z_values[2 * n]
                                      : z_even(sys.gram) / sys.z_values[2 * n];
      for (std::size_t m = 1; m <= 2 * n + 2; ++m) {
        Rational got = skew_inner(sys.R[2 * n], psi[m - 1], mu);
        CHECK(got == (m == 2 * n + 2 ? ratio_even : Rational(0)));
      }
      const Rational z_top = 2 * n + 2 < sys.z_values.size()
                                 ? sys.z_values[2 * n + 2]
                                 : z_even(sys.gram);
      for (std::size_t m = 1; m <= 2 * n + 2; ++m) {
        Rational got = skew_inner(sys.R[2 * n + 1], psi[m - 1], mu);
        CHECK(got == -(z_top / sys.z_values[2 * n + 1]) * border[m - 1]);
      }
    }
    CHECK(skew_inner(sys.R[0], sys.R[0], mu) == Rational(0));
  }
}

TEST_CASE("mskew relation table") {
  // Signs adjudicated by the Pfaffian-expansion oracle:
  //   <R_n, psi1_j>  = (-1)^n2   Z_{n+e1} delta_{j, n1+1}
  //   <R_n, psi2_j>  =           Z_{n+e2} delta_{j, n2+1}
  //   <R_{n+e1}, psi1_j> = (-1)^{n2+1} Z_{n+e1} delta_{j, n1}
  //   <R_{n+e2}, psi2_j> = -Z_{n+e2} delta_{j, n2}
  std::mt19937_64 rng(23);
  for (auto [n1, n2] : std::vector<std::pair<std::size_t, std::size_t>>{
           {1, 0}, {0, 1}, {2, 1}, {1, 2}}) {
    int done = 0;
    while (done < 2) {
      DiscreteMeasure mu = random_measure(6, rng);
      FunctionTable w1 = random_table(mu, rng), w2 = random_table(mu, rng);
      std::vector<FunctionTable> f1, f2;
      for (std::size_t j = 0; j <= n1 + 1; ++j)
        f1.push_back(FunctionTable::monomial(mu, static_cast<unsigned>(j), &w1));
      for (std::size_t j = 0; j <= n2 + 1; ++j)
        f2.push_back(FunctionTable::monomial(mu, static_cast<unsigned>(j), &w2));
      MskewSystem sys;
      try {
        sys = mskew_build(f1, f2, mu, n1, n2);
      } catch (const Error& e) {
        REQUIRE(e.code() == errc::zero_normalization);
        continue;
      }
      ++done;
      const Rational s1 = n2 % 2 == 0 ? Rational(1) : Rational(-1);
      for (std::size_t j = 1; j <= n1 + 1; ++j)
        CHECK(skew_inner(sys.R, f1[j - 1], mu) ==
              (j == n1 + 1 ? s1 * sys.z_e1 : Rational(0)));
      for (std::size_t j = 1; j <= n2 + 1; ++j)
        CHECK(skew_inner(sys.R, f2[j - 1], mu) ==
              (j == n2 + 1 ? sys.z_e2 : Rational(0)));
      if (sys.R_e1) {
        for (std::size_t j = 1; j <= n1 + 1; ++j)
          CHECK(skew_inner(*sys.R_e1, f1[j - 1], mu) ==
                (j == n1 ? -s1 * sys.z_e1 : Rational(0)));
      }
      if (sys.R_e2) {
        for (std::size_t j = 1; j <= n2 + 1; ++j)
          CHECK(skew_inner(*sys.R_e2, f2[j - 1], mu) ==
                (j == n2 ? -sys.z_e2 : Rational(0)));
      }
    }
  }
}

TEST_CASE("mskew cross moment at n1=n2=1 scale") {
  std::mt19937_64 rng(29);
  DiscreteMeasure mu = random_measure(5, rng);
  FunctionTable w1 = random_table(mu, rng), w2 = random_table(mu, rng);
  std::vector<FunctionTable> f1 = {w1, FunctionTable::monomial(mu, 1, &w1)};
  std::vector<FunctionTable> f2 = {w2, FunctionTable::monomial(mu, 1, &w2)};
  // Z_{1,1} is the 2x2 Pfaffian of the cross Gram: the single cross moment.
  auto sys = mskew_build(f1, f2, mu, 1, 0);
  CHECK(sys.z_e2 == skew_inner(f1[0], f2[0], mu));
}

TEST_CASE("mpskew relations as adjudicated") {
  //   <Rt_{n+e1}, psi1_j> = -Q1(j) Z_{n+e1},  j <= n1+1
  //   <Rt_{n+e1}, psi2_j> = 0,                j <= n2
  //   <Rt_{n+e2}, psi2_j> = -Q2(j) Z_{n+e2},  j <= n2+1
  //   <Rt_{n+e2}, psi1_j> = 0,                j <= n1
  std::mt19937_64 rng(31);
  for (auto [n1, n2] : std::vector<std::pair<std::size_t, std::size_t>>{
           {1, 0}, {0, 1}, {2, 1}, {1, 2}}) {
    int done = 0;
    while (done < 2) {
      DiscreteMeasure mu = random_measure(6, rng);
      FunctionTable w1 = random_table(mu, rng), w2 = random_table(mu, rng);
      std::vector<FunctionTable> f1, f2;
      for (std::size_t j = 0; j <= n1 + 1; ++j)
        f1.push_back(FunctionTable::monomial(mu, static_cast<unsigned>(j), &w1));
      for (std::size_t j = 0; j <= n2 + 1; ++j)
        f2.push_back(FunctionTable::monomial(mu, static_cast<unsigned>(j), &w2));
      std::vector<Rational> b1, b2;
      for (const auto& f : f1) b1.push_back(integral(f, mu));
      for (const auto& f : f2) b2.push_back(integral(f, mu));
      MpskewSystem sys;
      try {
        sys = mpskew_build(f1, f2, b1, b2, mu, n1, n2);
      } catch (const Error& e) {
        REQUIRE(e.code() == errc::zero_normalization);
        continue;
      }
      ++done;
      for (std::size_t j = 1; j <= n1 + 1; ++j)
        CHECK(skew_inner(sys.R_e1, f1[j - 1], mu) == -b1[j - 1] * sys.z_e1);
      for (std::size_t j = 1; j <= n2; ++j)
        CHECK(skew_inner(sys.R_e1, f2[j - 1], mu) == Rational(0));
      for (std::size_t j = 1; j <= n2 + 1; ++j)
        CHECK(skew_inner(sys.R_e2, f2[j - 1], mu) == -b2[j - 1] * sys.z_e2);
      for (std::size_t j = 1; j <= n1; ++j)
        CHECK(skew_inner(sys.R_e2, f1[j - 1], mu) == Rational(0));
      CHECK(skew_inner(sys.R_e1, sys.R_e1, mu) == Rational(0));
    }
  }
}

TEST_CASE("mpskew smallest odd case shares the psop structure") {
  std::mt19937_64 rng(37);
  DiscreteMeasure mu = random_measure(5, rng);
  FunctionTable w1 = random_table(mu, rng), w2 = random_table(mu, rng);
  std::vector<FunctionTable> f1 = {w1, FunctionTable::monomial(mu, 1, &w1)};
  std::vector<FunctionTable> f2 = {w2};
  std::vector<Rational> b1 = {integral(f1[0], mu), integral(f1[1], mu)};
  std::vector<Rational> b2 = {integral(f2[0], mu)};
  auto mp = mpskew_build(f1, f2, b1, b2, mu, 1, 0);
  auto ps = psop_build(f1, b1, mu, 0);
  // Rt_{2,0} is the unnormalized psop R_1 on family 1 alone.
  for (std::size_t t = 0; t < mu.size(); ++t)
    CHECK(mp.R_e1.values[t] == ps.R[1].values[t] * ps.z_values[1]);
}

TEST_CASE("catalan-hankel pfaffian") {
  std::vector<Rational> mus;
  for (long m = 0; m < 12; ++m) mus.push_back(Rational(m));

  // n = 1: Pf = mu_{1+k}
  for (long k = 0; k <= 3; ++k) CHECK(catalan_hankel(mus, 1, k) == Rational(1 + k));

  // all moments equal c: value from the expansion oracle at n = 2
  std::vector<Rational> constant(12, Rational(3, 2));
  SkewMatrix m4(4);
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = i + 1; j < 4; ++j)
      m4.set(i, j, Rational(static_cast<long>(j) - static_cast<long>(i)) * Rational(3, 2));
  CHECK(catalan_hankel(constant, 2, 0) == pfaffian_expand(m4));

  // n = 2, mu_m = m: expansion vs elimination agreement
  SkewMatrix lin(4);
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = i + 1; j < 4; ++j)
      lin.set(i, j, Rational(static_cast<long>(j) - static_cast<long>(i)) *
                        Rational(static_cast<long>(i + j)));
  CHECK(catalan_hankel(mus, 2, 0) == pfaffian_expand(lin));

  CHECK_THROWS_AS(catalan_hankel(mus, 4, 0), Error);
  try {
    catalan_hankel(mus, 4, 0);
  } catch (const Error& e) {
    CHECK(e.code() == errc::insufficient_moments);
  }
}

TEST_CASE("gaussian kernel") {
  CHECK(gaussian_kernel(1.5, 1.5, 2.0) == Catch::Approx(1.0 / std::sqrt(4.0 * M_PI)));
  CHECK(gaussian_kernel(0.3, -1.2, 0.7) == Catch::Approx(gaussian_kernel(-1.2, 0.3, 0.7)));
  CHECK_THROWS_AS(gaussian_kernel(0, 0, 0), Error);
  CHECK_THROWS_AS(gaussian_kernel(0, 0, -1), Error);

  // normalization via Simpson quadrature on [-8 sqrt(t), 8 sqrt(t)]
  for (double t : {0.5, 1.0, 3.0}) {
    const double a = -8 * std::sqrt(t), b = 8 * std::sqrt(t);
    const int n = 2000;  // even
    const double h = (b - a) / n;
    double s = gaussian_kernel(a, 0, t) + gaussian_kernel(b, 0, t);
    for (int i = 1; i < n; ++i) s += gaussian_kernel(a + i * h, 0, t) * (i % 2 ? 4.0 : 2.0);
    s *= h / 3.0;
    CHECK(std::abs(s - 1.0) < 1e-8);
  }
}
