#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "pfpaths/builders.hpp"
#include "pfpaths/gf.hpp"

using namespace pfpaths;

namespace {

StepWeightFn rng_weights(std::mt19937_64& rng) {
  return [&rng](std::size_t, long, int) {
    return Rational(static_cast<long>(rng() % 4) + 1, static_cast<long>(rng() % 3) + 1);
  };
}

GridWeightFn rng_grid_weights(std::mt19937_64& rng) {
  return [&rng](std::size_t, std::size_t, bool) {
    return Rational(static_cast<long>(rng() % 4) + 1, static_cast<long>(rng() % 3) + 1);
  };
}

Rational oracle_to_interval(const Dag& d, const VertexTuple& u, const Interval& I) {
  Rational t(0);
  for (const auto& s : enumerate_to_interval(d, u, I)) t += s.weight();
  return t;
}

}  // namespace

TEST_CASE("q_single") {
  Grid g = make_grid(2, 2, Rational(1));
  Interval empty;
  CHECK(q_single(g.dag, g.at(0, 0), empty) == Rational(0));

  Dag edge(2, {0, 1}, {{0, 1, Rational(5, 2)}});
  Interval iv(edge, {1});
  CHECK(q_single(edge, 0, iv) == Rational(5, 2));

  // equals the brute-force total of single-source interval systems
  std::mt19937_64 rng(3);
  Grid gw = make_grid(3, 2, rng_grid_weights(rng));
  Interval right(gw.dag, {gw.at(3, 2), gw.at(3, 1), gw.at(3, 0)});
  VertexTuple u1(gw.dag, {gw.at(0, 0)});
  CHECK(q_single(gw.dag, gw.at(0, 0), right) == oracle_to_interval(gw.dag, u1, right));
}

TEST_CASE("q_pair skew and degenerate cases") {
  std::mt19937_64 rng(5);
  Grid g = make_grid(3, 3, rng_grid_weights(rng));
  Interval I(g.dag, {g.at(3, 3), g.at(3, 2), g.at(3, 1)});
  CHECK(q_pair(g.dag, g.at(0, 0), g.at(0, 0), I) == Rational(0));

  Interval single(g.dag, {g.at(3, 3)});
  CHECK(q_pair(g.dag, g.at(0, 1), g.at(0, 0), single) == Rational(0));

  // compatible instance: equals the non-intersecting 2-system total
  VertexTuple u2(g.dag, {g.at(0, 1), g.at(0, 0)});
  CHECK(q_pair(g.dag, g.at(0, 1), g.at(0, 0), I) == oracle_to_interval(g.dag, u2, I));
}

TEST_CASE("q_tilde mirrors q through edge reversal") {
  std::mt19937_64 rng(7);
  Grid g = make_grid(3, 2, rng_grid_weights(rng));
  Interval J(g.dag, {g.at(0, 2), g.at(0, 1), g.at(0, 0)});

  Interval emptyJ;
  CHECK(q_tilde_single(g.dag, emptyJ, g.at(3, 2)) == Rational(0));
  CHECK(q_tilde_pair(g.dag, J, g.at(3, 2), g.at(3, 2)) == Rational(0));

  Dag rev = g.dag.reversed();
  VertexId a = g.at(3, 2), b = g.at(3, 0);
  CHECK(q_tilde_single(g.dag, J, a) == q_single(rev, a, J));
  // reversal flips the pair sign: the source roles swap sides
  CHECK(q_tilde_pair(g.dag, J, a, b) == -q_pair(rev, a, b, J));
}

TEST_CASE("lgv on grids") {
  std::mt19937_64 rng(11);
  Grid g = make_grid(3, 3, rng_grid_weights(rng));

  // r = 1: determinant is just h
  VertexTuple u1(g.dag, {g.at(0, 0)});
  VertexTuple v1(g.dag, {g.at(3, 3)});
  GfReport rep1 = lgv(g.dag, u1, v1);
  CHECK(rep1.closed_form == h_weight(g.dag, g.at(0, 0), g.at(3, 3)));
  CHECK(rep1.matched);

  // 2 walkers
  VertexTuple u2(g.dag, {g.at(0, 2), g.at(0, 0)});
  VertexTuple v2(g.dag, {g.at(3, 3), g.at(3, 1)});
  GfOptions strict;
  strict.check_preconditions = true;
  CHECK(lgv(g.dag, u2, v2, strict).matched);

  // r = 3
  VertexTuple u3(g.dag, {g.at(0, 3), g.at(0, 1), g.at(0, 0)});
  VertexTuple v3(g.dag, {g.at(1, 3), g.at(3, 3), g.at(3, 0)});
  CHECK(lgv(g.dag, u3, v3, strict).matched);

  CHECK_THROWS_AS(lgv(g.dag, u2, v3), Error);
}

TEST_CASE("lgv precondition check rejects crossed components") {
  Dag crossed(4, {0, 1, 2, 3}, {{0, 3, Rational(1)}, {1, 2, Rational(1)}});
  VertexTuple u(crossed, {0, 1});
  VertexTuple v(crossed, {2, 3});
  GfOptions strict;
  strict.check_preconditions = true;
  CHECK_THROWS_AS(lgv(crossed, u, v, strict), Error);
  CHECK_FALSE(lgv(crossed, u, v).matched);  // det = -1, GF = 1
}

TEST_CASE("stembridge even") {
  std::mt19937_64 rng(13);
  Grid g = make_grid(3, 3, rng_grid_weights(rng));
  GfOptions strict;
  strict.check_preconditions = true;

  // n = 1: the Pfaffian is q_pair itself
  VertexTuple u2(g.dag, {g.at(0, 2), g.at(0, 0)});
  Interval I(g.dag, {g.at(3, 3), g.at(3, 2), g.at(3, 1)});
  GfReport rep = stembridge_even(g.dag, u2, I, strict);
  CHECK(rep.closed_form == q_pair(g.dag, g.at(0, 2), g.at(0, 0), I));
  CHECK(rep.matched);

  // 4 sources into a 5-vertex interval
  Grid g4 = make_grid(3, 3, rng_grid_weights(rng));
  VertexTuple u4(g4.dag, {g4.at(0, 3), g4.at(0, 2), g4.at(0, 1), g4.at(0, 0)});
  Interval I5(g4.dag, {g4.at(2, 3), g4.at(3, 3), g4.at(3, 2), g4.at(3, 1), g4.at(3, 0)});
  GfReport rep4 = stembridge_even(g4.dag, u4, I5, strict);
  CHECK(rep4.matched);
  CHECK(rep4.brute_force > Rational(0));

  // pigeonhole: |I| < |u| makes both sides vanish
  Interval I1(g4.dag, {g4.at(3, 3)});
  GfReport pig = stembridge_even(g4.dag, u2 = VertexTuple(g4.dag, {g4.at(0, 2), g4.at(0, 0)}), I1);
  CHECK(pig.closed_form == Rational(0));
  CHECK(pig.brute_force == Rational(0));

  CHECK_THROWS_AS(stembridge_even(g4.dag, VertexTuple(g4.dag, {g4.at(0, 0)}), I5), Error);
}

TEST_CASE("stembridge odd") {
  std::mt19937_64 rng(17);
  Grid g = make_grid(3, 3, rng_grid_weights(rng));
  GfOptions strict;
  strict.check_preconditions = true;

  // single source: Pf([[0, Q],[-Q, 0]]) = Q_I(u)
  VertexTuple u1(g.dag, {g.at(0, 0)});
  Interval I(g.dag, {g.at(3, 3), g.at(3, 2)});
  GfReport rep1 = stembridge_odd(g.dag, u1, I, strict);
  CHECK(rep1.closed_form == q_single(g.dag, g.at(0, 0), I));
  CHECK(rep1.matched);

  // 3 sources into a 4-vertex interval
  VertexTuple u3(g.dag, {g.at(0, 3), g.at(0, 1), g.at(0, 0)});
  Interval I4(g.dag, {g.at(3, 3), g.at(3, 2), g.at(3, 1), g.at(3, 0)});
  GfReport rep3 = stembridge_odd(g.dag, u3, I4, strict);
  CHECK(rep3.matched);
  CHECK(rep3.brute_force > Rational(0));

  // empty interval
  Interval none;
  GfReport rep0 = stembridge_odd(g.dag, u1, none);
  CHECK(rep0.closed_form == Rational(0));
  CHECK(rep0.brute_force == Rational(0));

  CHECK_THROWS_AS(stembridge_odd(g.dag, VertexTuple(g.dag, {g.at(0, 1), g.at(0, 0)}), I), Error);
}

TEST_CASE("mixed degenerates to stembridge and lgv") {
  std::mt19937_64 rng(19);
  Grid g = make_grid(3, 3, rng_grid_weights(rng));

  VertexTuple u2(g.dag, {g.at(0, 2), g.at(0, 0)});
  Interval I(g.dag, {g.at(3, 3), g.at(3, 2), g.at(3, 1)});
  VertexTuple vempty;
  GfReport m_rep = mixed_even(g.dag, u2, vempty, I);
  GfReport s_rep = stembridge_even(g.dag, u2, I);
  CHECK(m_rep.closed_form == s_rep.closed_form);
  CHECK(m_rep.brute_force == s_rep.brute_force);
  CHECK(m_rep.matched);

  VertexTuple v2(g.dag, {g.at(3, 3), g.at(3, 1)});
  Interval iempty;
  GfReport l_rep = lgv(g.dag, u2, v2);
  GfReport me_rep = mixed_even(g.dag, u2, v2, iempty);
  CHECK(me_rep.closed_form == l_rep.closed_form);
  CHECK(me_rep.matched);
}

TEST_CASE("mixed on the walker testbed, both parities") {
  std::mt19937_64 rng(23);
  auto wf = rng_weights(rng);
  TwoChamberSpec spec;
  spec.columns = 6;
  spec.j_size = 1;
  spec.u_size = 3;
  spec.v_size = 1;
  spec.i_size = 3;
  spec.slack = 0;
  TwoChamber tc = make_two_chamber(spec, wf);
  GfOptions strict;
  strict.check_preconditions = true;

  // r = 3, s = 1 (even total)
  GfReport even_rep = mixed_even(tc.strip.dag, tc.u, tc.v, tc.I, strict);
  CHECK(even_rep.matched);
  CHECK(even_rep.brute_force > Rational(0));

  // r = 3, s = 0 (odd total)
  VertexTuple vempty;
  GfReport odd_rep = mixed_odd(tc.strip.dag, tc.u, vempty, tc.I, strict);
  CHECK(odd_rep.matched);
  GfReport stem_rep = stembridge_odd(tc.strip.dag, tc.u, tc.I);
  CHECK(odd_rep.closed_form == stem_rep.closed_form);

  CHECK_THROWS_AS(mixed_even(tc.strip.dag, tc.u, vempty, tc.I), Error);
  // |u| < |v| rejected
  VertexTuple vbig(tc.strip.dag, {tc.v[0]});
  VertexTuple usmall;
  CHECK_THROWS_AS(mixed(tc.strip.dag, usmall, vbig, tc.I), Error);
}

TEST_CASE("block classes on the two-chamber testbed") {
  std::mt19937_64 rng(29);
  auto wf = rng_weights(rng);
  TwoChamberSpec spec;
  spec.columns = 6;
  spec.j_size = 2;
  spec.u_size = 2;
  spec.v_size = 2;
  spec.i_size = 2;
  spec.slack = 0;
  TwoChamber tc = make_two_chamber(spec, wf);
  const Dag& d = tc.strip.dag;
  GfOptions strict;
  strict.check_preconditions = true;

  GfReport ee = block_ee(d, tc.J, tc.u, tc.v, tc.I, strict);
  GfReport oo = block_oo(d, tc.J, tc.u, tc.v, tc.I, strict);
  CHECK(ee.matched);
  CHECK(oo.matched);
  CHECK(ee.brute_force > Rational(0));
  CHECK(oo.brute_force > Rational(0));

  // parity completeness: ee + oo equals the unrestricted total
  CHECK(ee.closed_form + oo.closed_form == block_total_oracle(d, tc.J, tc.u, tc.v, tc.I));

  // wrong-parity class requests are rejected
  CHECK_THROWS_AS(block_oe(d, tc.J, tc.u, tc.v, tc.I), Error);
}

TEST_CASE("block odd classes and degenerations") {
  std::mt19937_64 rng(31);
  auto wf = rng_weights(rng);
  TwoChamberSpec spec;
  spec.columns = 6;
  spec.j_size = 2;
  spec.u_size = 2;
  spec.v_size = 1;
  spec.i_size = 2;
  spec.slack = 0;
  TwoChamber tc = make_two_chamber(spec, wf);
  const Dag& d = tc.strip.dag;
  GfOptions strict;
  strict.check_preconditions = true;

  GfReport oe = block_oe(d, tc.J, tc.u, tc.v, tc.I, strict);  // even u->I, odd J->v
  GfReport eo = block_eo(d, tc.J, tc.u, tc.v, tc.I, strict);  // odd u->I, even J->v
  CHECK(oe.matched);
  CHECK(eo.matched);
  CHECK(oe.closed_form + eo.closed_form == block_total_oracle(d, tc.J, tc.u, tc.v, tc.I));

  // r=1, s=0: the eo class is one path into I
  VertexTuple u1(d, {tc.u[0]});
  VertexTuple vempty;
  GfReport eo1 = block_eo(d, tc.J, u1, vempty, tc.I);
  CHECK(eo1.closed_form == q_single(d, tc.u[0], tc.I));
  CHECK(eo1.matched);
  GfReport stem1 = stembridge_odd(d, u1, tc.I);
  CHECK(eo1.closed_form == stem1.closed_form);

  // r=0, s=1: the oe class is one path from J
  VertexTuple uempty;
  VertexTuple v1(d, {tc.v[0]});
  GfReport oe1 = block_oe(d, tc.J, uempty, v1, tc.I);
  CHECK(oe1.closed_form == q_tilde_single(d, tc.J, tc.v[0]));
  CHECK(oe1.matched);

  // s=0, r even: block_ee reduces to stembridge_even
  GfReport ee0 = block_ee(d, tc.J, tc.u, vempty, tc.I);
  GfReport stem_e = stembridge_even(d, tc.u, tc.I);
  CHECK(ee0.closed_form == stem_e.closed_form);
  CHECK(ee0.matched);
}

TEST_CASE("the 4x4 block Pfaffian expands into its three terms") {
  // prime-valued entries isolate each one-factor term of the expansion
  auto term_only = [](int which) {
    SkewMatrix m(4);
    if (which == 0) {
      m.set(0, 1, Rational(2));
      m.set(2, 3, Rational(13));
    } else if (which == 1) {
      m.set(0, 2, Rational(3));
      m.set(1, 3, Rational(11));
    } else {
      m.set(0, 3, Rational(5));
      m.set(1, 2, Rational(7));
    }
    return pfaffian_eliminate(m);
  };
  CHECK(term_only(0) == Rational(26));    // + a12 a34
  CHECK(term_only(1) == Rational(-33));   // - a13 a24
  CHECK(term_only(2) == Rational(35));    // + a14 a23

  // on a real fixture the three terms are the two path classes
  std::mt19937_64 rng(37);
  TwoChamberSpec spec;
  spec.columns = 6;
  spec.j_size = 2;
  spec.u_size = 2;
  spec.v_size = 2;
  spec.i_size = 2;
  spec.slack = 0;
  TwoChamber tc = make_two_chamber(spec, rng_weights(rng));
  const Dag& d = tc.strip.dag;
  VertexId u1 = tc.u[0], u2 = tc.u[1], v1 = tc.v[0], v2 = tc.v[1];  // tuples ascend: v1 < v2

  Rational term1 = q_pair(d, u1, u2, tc.I) * q_tilde_pair(d, tc.J, v2, v1);
  Rational term2 = h_weight(d, u1, v2) * h_weight(d, u2, v1);
  Rational term3 = h_weight(d, u1, v1) * h_weight(d, u2, v2);
  GfReport ee = block_ee(d, tc.J, tc.u, tc.v, tc.I);
  CHECK(ee.closed_form == term1 - term2 + term3);

  // first term: weight of the (both u -> I, both v <- J) class
  Rational cls_uIJv(0);
  {
    EnumBudget b;
    auto uI = enumerate_to_interval(d, tc.u, tc.I, b);
    auto Jv = enumerate_from_interval(d, tc.J, tc.v, b);
    for (const auto& s1 : uI)
      for (const auto& s2 : Jv) {
        bool disjoint = true;
        for (const auto& p : s1.paths)
          for (const auto& q : s2.paths)
            if (paths_intersect(p, q)) disjoint = false;
        if (disjoint) cls_uIJv += s1.weight() * s2.weight();
      }
  }
  CHECK(term1 == cls_uIJv);

  // remaining two terms: the direct pairing class, which is the LGV det
  Rational direct(0);
  for (const auto& s : enumerate_systems(d, tc.u, tc.v, true)) direct += s.weight();
  CHECK(term3 - term2 == direct);
  CHECK(ee.closed_form == cls_uIJv + direct);
}

TEST_CASE("multi-block reduces to block_ee at m=n=1") {
  std::mt19937_64 rng(41);
  TwoChamberSpec spec;
  spec.columns = 6;
  spec.j_size = 2;
  spec.u_size = 2;
  spec.v_size = 2;
  spec.i_size = 2;
  spec.slack = 0;
  TwoChamber tc = make_two_chamber(spec, rng_weights(rng));
  BlockSpec bs;
  bs.u_blocks = {tc.u};
  bs.sink_intervals = {tc.I};
  bs.v_blocks = {tc.v};
  bs.source_intervals = {tc.J};
  bs.tau = {0, -1};
  GfReport multi = multi_block(tc.strip.dag, bs);
  GfReport ee = block_ee(tc.strip.dag, tc.J, tc.u, tc.v, tc.I);
  CHECK(multi.closed_form == ee.closed_form);
  CHECK(multi.brute_force == ee.brute_force);
  CHECK(multi.matched);
}

TEST_CASE("multi-block with two u-blocks") {
  std::mt19937_64 rng(43);
  ThreeChamberSpec spec;
  spec.kind = ThreeChamberKind::two_u_blocks;
  spec.columns = 6;
  spec.slack = 0;
  spec.u_sizes = {2, 2};
  spec.sinkint_sizes = {2, 2};
  spec.v_sizes = {2};
  spec.srcint_sizes = {2};
  ThreeChamber t = make_three_chamber(spec, rng_weights(rng));
  BlockSpec bs;
  bs.u_blocks = t.u_blocks;
  bs.sink_intervals = t.sink_intervals;
  bs.v_blocks = t.v_blocks;
  bs.source_intervals = t.source_intervals;
  bs.tau = t.tau;
  GfOptions strict;
  strict.check_preconditions = true;
  GfReport rep = multi_block(t.strip.dag, bs, strict);
  CHECK(rep.matched);
  CHECK(rep.brute_force > Rational(0));
}

TEST_CASE("multi-block with two v-blocks") {
  std::mt19937_64 rng(47);
  ThreeChamberSpec spec;
  spec.kind = ThreeChamberKind::two_v_blocks;
  spec.columns = 6;
  spec.slack = 0;
  spec.u_sizes = {2};
  spec.sinkint_sizes = {2};
  spec.v_sizes = {2, 2};
  spec.srcint_sizes = {2, 2};
  ThreeChamber t = make_three_chamber(spec, rng_weights(rng));
  BlockSpec bs;
  bs.u_blocks = t.u_blocks;
  bs.sink_intervals = t.sink_intervals;
  bs.v_blocks = t.v_blocks;
  bs.source_intervals = t.source_intervals;
  bs.tau = t.tau;
  GfOptions strict;
  strict.check_preconditions = true;
  GfReport rep = multi_block(t.strip.dag, bs, strict);
  CHECK(rep.matched);
  CHECK(rep.brute_force > Rational(0));
}

TEST_CASE("multi-block with no u-blocks factorizes over v-blocks") {
  std::mt19937_64 rng(53);
  ThreeChamberSpec spec;
  spec.kind = ThreeChamberKind::two_v_blocks;
  spec.columns = 6;
  spec.slack = 0;
  spec.u_sizes = {2};
  spec.sinkint_sizes = {2};
  spec.v_sizes = {2, 2};
  spec.srcint_sizes = {2, 2};
  ThreeChamber t = make_three_chamber(spec, rng_weights(rng));
  BlockSpec bs;
  bs.v_blocks = t.v_blocks;
  bs.source_intervals = t.source_intervals;
  bs.tau = {-1, -2};
  GfReport rep = multi_block(t.strip.dag, bs);
  CHECK(rep.matched);

  // block-diagonal Pfaffian factorizes
  Rational prod(1);
  for (std::size_t q = 0; q < 2; ++q) {
    const auto& vb = t.v_blocks[q];
    const auto& src = t.source_intervals[q];
    SkewMatrix qm(vb.size());
    for (std::size_t i = 0; i < vb.size(); ++i)
      for (std::size_t j = i + 1; j < vb.size(); ++j)
        qm.set(i, j, q_tilde_pair(t.strip.dag, src, vb[vb.size() - 1 - i], vb[vb.size() - 1 - j]));
    prod *= pfaffian_eliminate(qm);
  }
  CHECK(rep.closed_form == prod);
}

TEST_CASE("multi-block validation errors") {
  std::mt19937_64 rng(59);
  TwoChamber tc = make_two_chamber({}, rng_weights(rng));
  BlockSpec bs;
  bs.u_blocks = {tc.u};
  bs.sink_intervals = {tc.I};
  bs.v_blocks = {tc.v};
  bs.source_intervals = {tc.J};
  bs.tau = {0};  // missing the interval entry
  CHECK_THROWS_AS(multi_block(tc.strip.dag, bs), Error);
  bs.tau = {0, 0};
  CHECK_THROWS_AS(multi_block(tc.strip.dag, bs), Error);
  bs.tau = {0, -1};
  VertexTuple odd_u(tc.strip.dag, {tc.u[0]});
  bs.u_blocks = {odd_u};
  CHECK_THROWS_AS(multi_block(tc.strip.dag, bs), Error);  // odd total
}

TEST_CASE("GFs stay exact under single-edge weight bumps") {
  // homogeneity probe: double one edge weight, the identity must still hold
  std::mt19937_64 rng(61);
  Grid g = make_grid(2, 2, rng_grid_weights(rng));
  auto edges = g.dag.edge_list();
  edges[4].weight *= Rational(2);
  Dag bumped(g.dag.vertex_count(), g.dag.order(), edges, g.dag.labels());
  VertexTuple u(bumped, {g.at(0, 2), g.at(0, 0)});
  VertexTuple v(bumped, {g.at(2, 2), g.at(2, 1)});
  CHECK(lgv(bumped, u, v).matched);
  Interval I(bumped, {g.at(2, 2), g.at(2, 1), g.at(2, 0)});
  CHECK(stembridge_even(bumped, u, I).matched);
}
