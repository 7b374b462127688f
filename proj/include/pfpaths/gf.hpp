#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "pfpaths/dag.hpp"
#include "pfpaths/error.hpp"
#include "pfpaths/matrix.hpp"
#include "pfpaths/pfaffian.hpp"
#include "pfpaths/rational.hpp"

namespace pfpaths {

struct GfOptions {
  bool check_preconditions = false;
  std::size_t budget = kDefaultEnumerationBudget;
};

// Closed form vs. brute force for one identity instance. matched is exact
// equality; there is never a tolerance.
struct GfReport {
  Rational closed_form;
  Rational brute_force;
  bool matched = false;
  std::string descriptor;
};

namespace detail {

// Caches one h(u, .) forward sweep per source.
class HCache {
 public:
  explicit HCache(const Dag& d) : d_(d) {}

  const std::vector<Rational>& from(VertexId u) {
    auto it = rows_.find(u);
    if (it == rows_.end()) it = rows_.emplace(u, h_from(d_, u)).first;
    return it->second;
  }

  const Dag& dag() const { return d_; }

 private:
  const Dag& d_;
  std::map<VertexId, std::vector<Rational>> rows_;
};

inline Rational q_single(HCache& h, VertexId u, const Interval& I) {
  Rational s(0);
  const auto& row = h.from(u);
  for (std::size_t k = 0; k < I.size(); ++k) s += row[I[k]];
  return s;
}

// sgn compares positions within the interval's order, not any geometry.
inline Rational q_pair(HCache& h, VertexId u1, VertexId u2, const Interval& I) {
  const auto& r1 = h.from(u1);
  const auto& r2 = h.from(u2);
  Rational s(0);
  for (std::size_t k = 0; k < I.size(); ++k)
    for (std::size_t l = k + 1; l < I.size(); ++l)
      s += r1[I[k]] * r2[I[l]] - r1[I[l]] * r2[I[k]];
  return s;
}

inline Rational q_tilde_single(HCache& h, const Interval& J, VertexId v) {
  Rational s(0);
  for (std::size_t k = 0; k < J.size(); ++k) s += h.from(J[k])[v];
  return s;
}

// Q~_J(a, b): the source feeding the first argument carries the + sign when
// it sits later in J's order.
inline Rational q_tilde_pair(HCache& h, const Interval& J, VertexId a, VertexId b) {
  Rational s(0);
  for (std::size_t p = 0; p < J.size(); ++p)
    for (std::size_t q = p + 1; q < J.size(); ++q)
      s += h.from(J[q])[a] * h.from(J[p])[b] - h.from(J[p])[a] * h.from(J[q])[b];
  return s;
}

inline Rational system_total(const std::vector<PathSystem>& systems) {
  Rational t(0);
  for (const auto& s : systems) t += s.weight();
  return t;
}

}  // namespace detail

inline Rational q_single(const Dag& d, VertexId u, const Interval& I) {
  detail::HCache h(d);
  return detail::q_single(h, u, I);
}

inline Rational q_pair(const Dag& d, VertexId u1, VertexId u2, const Interval& I) {
  detail::HCache h(d);
  return detail::q_pair(h, u1, u2, I);
}

inline Rational q_tilde_single(const Dag& d, const Interval& J, VertexId v) {
  detail::HCache h(d);
  return detail::q_tilde_single(h, J, v);
}

inline Rational q_tilde_pair(const Dag& d, const Interval& J, VertexId v2, VertexId v1) {
  detail::HCache h(d);
  return detail::q_tilde_pair(h, J, v2, v1);
}

// ---------------------------------------------------------------------------
// LGV: det[h(u^(i), v^(j))] vs. non-intersecting enumeration
// ---------------------------------------------------------------------------

inline Rational lgv_closed(const Dag& d, const VertexTuple& u, const VertexTuple& v) {
  if (u.size() != v.size()) raise(errc::arity_mismatch, "|u| != |v|");
  detail::HCache h(d);
  Matrix m(u.size(), v.size());
  for (std::size_t i = 0; i < u.size(); ++i) {
    const auto& row = h.from(u[i]);
    for (std::size_t j = 0; j < v.size(); ++j) m.at(i, j) = row[v[j]];
  }
  return determinant(m);
}

inline GfReport lgv(const Dag& d, const VertexTuple& u, const VertexTuple& v,
                    const GfOptions& opt = {}) {
  if (u.size() != v.size()) raise(errc::arity_mismatch, "|u| != |v|");
  if (opt.check_preconditions && !is_D_compatible(d, u.ids(), v.ids(), opt.budget))
    raise(errc::not_compatible, "u and v are not D-compatible");
  GfReport rep;
  rep.closed_form = lgv_closed(d, u, v);
  EnumBudget b{opt.budget};
  rep.brute_force = detail::system_total(enumerate_systems(d, u, v, true, b));
  rep.matched = rep.closed_form == rep.brute_force;
  rep.descriptor = "lgv r=" + std::to_string(u.size());
  return rep;
}

// ---------------------------------------------------------------------------
// Stembridge: u -> I
// ---------------------------------------------------------------------------

inline SkewMatrix stembridge_even_matrix(const Dag& d, const VertexTuple& u, const Interval& I) {
  detail::HCache h(d);
  SkewMatrix m(u.size());
  for (std::size_t i = 0; i < u.size(); ++i)
    for (std::size_t j = i + 1; j < u.size(); ++j) m.set(i, j, detail::q_pair(h, u[i], u[j], I));
  return m;
}

inline SkewMatrix stembridge_odd_matrix(const Dag& d, const VertexTuple& u, const Interval& I) {
  detail::HCache h(d);
  const std::size_t r = u.size();
  SkewMatrix m(r + 1);
  for (std::size_t i = 0; i < r; ++i) {
    for (std::size_t j = i + 1; j < r; ++j) m.set(i, j, detail::q_pair(h, u[i], u[j], I));
    m.set(i, r, detail::q_single(h, u[i], I));
  }
  return m;
}

inline GfReport stembridge_even(const Dag& d, const VertexTuple& u, const Interval& I,
                                const GfOptions& opt = {}) {
  if (u.size() % 2 != 0) raise(errc::odd_arity, "stembridge_even needs |u| even");
  if (opt.check_preconditions && !is_D_compatible(d, u.ids(), I.ids(), opt.budget))
    raise(errc::not_compatible, "u and I are not D-compatible");
  GfReport rep;
  rep.closed_form = pfaffian_eliminate(stembridge_even_matrix(d, u, I));
  EnumBudget b{opt.budget};
  rep.brute_force = detail::system_total(enumerate_to_interval(d, u, I, b));
  rep.matched = rep.closed_form == rep.brute_force;
  rep.descriptor = "stembridge_even r=" + std::to_string(u.size());
  return rep;
}

inline GfReport stembridge_odd(const Dag& d, const VertexTuple& u, const Interval& I,
                               const GfOptions& opt = {}) {
  if (u.size() % 2 == 0) raise(errc::even_arity, "stembridge_odd needs |u| odd");
  if (opt.check_preconditions && !is_D_compatible(d, u.ids(), I.ids(), opt.budget))
    raise(errc::not_compatible, "u and I are not D-compatible");
  GfReport rep;
  rep.closed_form = pfaffian_eliminate(stembridge_odd_matrix(d, u, I));
  EnumBudget b{opt.budget};
  rep.brute_force = detail::system_total(enumerate_to_interval(d, u, I, b));
  rep.matched = rep.closed_form == rep.brute_force;
  rep.descriptor = "stembridge_odd r=" + std::to_string(u.size());
  return rep;
}

// ---------------------------------------------------------------------------
// Mixed: u -> v ⊕ I
// ---------------------------------------------------------------------------

namespace detail {

inline std::vector<VertexId> concat_targets(const VertexTuple& v, const Interval& I) {
  std::vector<VertexId> t = v.ids();
  t.insert(t.end(), I.ids().begin(), I.ids().end());
  return t;
}

// Non-intersecting systems u -> v ⊕ I: the first s sources run to v pointwise,
// the remaining ones end in I.
inline Rational mixed_oracle(const Dag& d, const VertexTuple& u, const VertexTuple& v,
                             const Interval& I, EnumBudget& b) {
  const std::size_t r = u.size(), s = v.size();
  std::vector<std::vector<Path>> choices;
  for (std::size_t i = 0; i < s; ++i) choices.push_back(enumerate_paths(d, u[i], v[i], b));
  for (std::size_t i = s; i < r; ++i) {
    std::vector<Path> legs;
    for (std::size_t k = 0; k < I.size(); ++k)
      for (auto& p : enumerate_paths(d, u[i], I[k], b)) legs.push_back(std::move(p));
    choices.push_back(std::move(legs));
  }
  return system_total(systems_from_choices(d, std::move(choices), true, b));
}

}  // namespace detail

inline SkewMatrix mixed_even_matrix(const Dag& d, const VertexTuple& u, const VertexTuple& v,
                                    const Interval& I) {
  detail::HCache h(d);
  const std::size_t r = u.size(), s = v.size();
  SkewMatrix m(r + s);
  for (std::size_t i = 0; i < r; ++i) {
    for (std::size_t j = i + 1; j < r; ++j) m.set(i, j, detail::q_pair(h, u[i], u[j], I));
    // v-slot j holds v^(s-j) (0-based): the v-block is listed in reverse.
    for (std::size_t j = 0; j < s; ++j) m.set(i, r + j, h.from(u[i])[v[s - 1 - j]]);
  }
  return m;
}

inline SkewMatrix mixed_odd_matrix(const Dag& d, const VertexTuple& u, const VertexTuple& v,
                                   const Interval& I) {
  detail::HCache h(d);
  const std::size_t r = u.size(), s = v.size();
  SkewMatrix m(r + 1 + s);
  for (std::size_t i = 0; i < r; ++i) {
    for (std::size_t j = i + 1; j < r; ++j) m.set(i, j, detail::q_pair(h, u[i], u[j], I));
    m.set(i, r, detail::q_single(h, u[i], I));
    for (std::size_t j = 0; j < s; ++j) m.set(i, r + 1 + j, h.from(u[i])[v[s - 1 - j]]);
  }
  // Border row against the v-slots stays zero.
  return m;
}

inline GfReport mixed(const Dag& d, const VertexTuple& u, const VertexTuple& v, const Interval& I,
                      const GfOptions& opt = {}) {
  const std::size_t r = u.size(), s = v.size();
  if (r < s) raise(errc::arity_mismatch, "mixed needs |u| >= |v|");
  if (opt.check_preconditions &&
      !is_D_compatible(d, u.ids(), detail::concat_targets(v, I), opt.budget))
    raise(errc::not_compatible, "u and v+I are not D-compatible");
  GfReport rep;
  rep.closed_form = (r + s) % 2 == 0 ? pfaffian_eliminate(mixed_even_matrix(d, u, v, I))
                                     : pfaffian_eliminate(mixed_odd_matrix(d, u, v, I));
  EnumBudget b{opt.budget};
  rep.brute_force = detail::mixed_oracle(d, u, v, I, b);
  rep.matched = rep.closed_form == rep.brute_force;
  rep.descriptor =
      "mixed r=" + std::to_string(r) + " s=" + std::to_string(s) +
      ((r + s) % 2 == 0 ? " even" : " odd");
  return rep;
}

inline GfReport mixed_even(const Dag& d, const VertexTuple& u, const VertexTuple& v,
                           const Interval& I, const GfOptions& opt = {}) {
  if ((u.size() + v.size()) % 2 != 0) raise(errc::parity_mismatch, "r+s must be even");
  return mixed(d, u, v, I, opt);
}

inline GfReport mixed_odd(const Dag& d, const VertexTuple& u, const VertexTuple& v,
                          const Interval& I, const GfOptions& opt = {}) {
  if ((u.size() + v.size()) % 2 == 0) raise(errc::parity_mismatch, "r+s must be odd");
  return mixed(d, u, v, I, opt);
}

// ---------------------------------------------------------------------------
// Block Pfaffians: J ⊕ u -> v ⊕ I, classified by the parity of the number of
// u -> I paths and of J -> v paths
// ---------------------------------------------------------------------------

struct BlockClass {
  bool uI_even;
  bool Jv_even;
};

inline constexpr BlockClass kClassEE{true, true};
inline constexpr BlockClass kClassOO{false, false};
inline constexpr BlockClass kClassOE{true, false};  // even u->I, odd J->v
inline constexpr BlockClass kClassEO{false, true};  // odd u->I, even J->v

namespace detail {

// Ground list: u^(1)..u^(r) [, I-phantom] then v^(s)..v^(1) [, J-phantom].
// The phantom slots carry the single-vertex border weights.
inline SkewMatrix block_matrix(const Dag& d, const Interval& J, const VertexTuple& u,
                               const VertexTuple& v, const Interval& I, bool i_border,
                               bool j_border) {
  HCache h(d);
  const std::size_t r = u.size(), s = v.size();
  const std::size_t iu = r + (i_border ? 1 : 0);       // first v slot
  const std::size_t dim = iu + s + (j_border ? 1 : 0);
  SkewMatrix m(dim);
  for (std::size_t i = 0; i < r; ++i) {
    for (std::size_t j = i + 1; j < r; ++j) m.set(i, j, q_pair(h, u[i], u[j], I));
    if (i_border) m.set(i, r, q_single(h, u[i], I));
    for (std::size_t j = 0; j < s; ++j) m.set(i, iu + j, h.from(u[i])[v[s - 1 - j]]);
  }
  for (std::size_t i = 0; i < s; ++i) {
    for (std::size_t j = i + 1; j < s; ++j)
      m.set(iu + i, iu + j, q_tilde_pair(h, J, v[s - 1 - i], v[s - 1 - j]));
    if (j_border) m.set(iu + i, iu + s, q_tilde_single(h, J, v[s - 1 - i]));
  }
  return m;
}

// The l-decomposition of the consecutive-matching rule: sources u^(1..s+1-l)
// pair with sinks v^(l..s), the remaining sources go to I, and v^(1..l-1) are
// fed from J. Classes filter on the parities of those two leftover counts.
inline Rational block_oracle(const Dag& d, const Interval& J, const VertexTuple& u,
                             const VertexTuple& v, const Interval& I,
                             std::optional<BlockClass> cls, EnumBudget& b) {
  const std::size_t r = u.size(), s = v.size();
  Rational total(0);
  for (std::size_t l = 1; l <= s + 1; ++l) {
    const std::size_t direct = s + 1 - l;
    if (direct > r) continue;
    const std::size_t n_to_I = r - direct;
    const std::size_t n_from_J = l - 1;
    if (cls) {
      if ((n_to_I % 2 == 0) != cls->uI_even) continue;
      if ((n_from_J % 2 == 0) != cls->Jv_even) continue;
    }
    std::vector<std::vector<Path>> choices;
    for (std::size_t j = 0; j < direct; ++j)
      choices.push_back(enumerate_paths(d, u[j], v[j + l - 1], b));
    for (std::size_t i = direct; i < r; ++i) {
      std::vector<Path> legs;
      for (std::size_t k = 0; k < I.size(); ++k)
        for (auto& p : enumerate_paths(d, u[i], I[k], b)) legs.push_back(std::move(p));
      choices.push_back(std::move(legs));
    }
    for (std::size_t t = 0; t < n_from_J; ++t) {
      std::vector<Path> legs;
      for (std::size_t k = 0; k < J.size(); ++k)
        for (auto& p : enumerate_paths(d, J[k], v[t], b)) legs.push_back(std::move(p));
      choices.push_back(std::move(legs));
    }
    total += system_total(systems_from_choices(d, std::move(choices), true, b));
  }
  return total;
}

inline void block_preconditions(const Dag& d, const Interval& J, const VertexTuple& u,
                                const VertexTuple& v, const Interval& I, const GfOptions& opt) {
  if (!opt.check_preconditions) return;
  std::vector<VertexId> sources = J.ids();
  sources.insert(sources.end(), u.ids().begin(), u.ids().end());
  if (!is_D_compatible(d, sources, concat_targets(v, I), opt.budget))
    raise(errc::not_compatible, "J+u and v+I are not D-compatible");
  if (!is_D_separated(d, J, u, v, I))
    raise(errc::not_separated, "u->I and J->v corridors overlap");
}

}  // namespace detail

inline GfReport block_class(const Dag& d, const Interval& J, const VertexTuple& u,
                            const VertexTuple& v, const Interval& I, BlockClass cls,
                            const GfOptions& opt = {}) {
  const std::size_t r = u.size(), s = v.size();
  const bool even_total = (r + s) % 2 == 0;
  const bool class_even = cls.uI_even == cls.Jv_even;
  if (even_total != class_even)
    raise(errc::parity_mismatch, "class parity does not fit r+s");
  detail::block_preconditions(d, J, u, v, I, opt);
  GfReport rep;
  // Borders: an odd number of u -> I paths needs the Q_I border, an odd
  // number of J -> v paths the Q~_J border.
  rep.closed_form =
      pfaffian_eliminate(detail::block_matrix(d, J, u, v, I, !cls.uI_even, !cls.Jv_even));
  EnumBudget b{opt.budget};
  rep.brute_force = detail::block_oracle(d, J, u, v, I, cls, b);
  rep.matched = rep.closed_form == rep.brute_force;
  rep.descriptor = std::string("block_") + (cls.uI_even ? "e" : "o") + (cls.Jv_even ? "e" : "o") +
                   " r=" + std::to_string(r) + " s=" + std::to_string(s);
  return rep;
}

inline GfReport block_ee(const Dag& d, const Interval& J, const VertexTuple& u,
                         const VertexTuple& v, const Interval& I, const GfOptions& opt = {}) {
  return block_class(d, J, u, v, I, kClassEE, opt);
}
inline GfReport block_oo(const Dag& d, const Interval& J, const VertexTuple& u,
                         const VertexTuple& v, const Interval& I, const GfOptions& opt = {}) {
  return block_class(d, J, u, v, I, kClassOO, opt);
}
inline GfReport block_oe(const Dag& d, const Interval& J, const VertexTuple& u,
                         const VertexTuple& v, const Interval& I, const GfOptions& opt = {}) {
  return block_class(d, J, u, v, I, kClassOE, opt);
}
inline GfReport block_eo(const Dag& d, const Interval& J, const VertexTuple& u,
                         const VertexTuple& v, const Interval& I, const GfOptions& opt = {}) {
  return block_class(d, J, u, v, I, kClassEO, opt);
}

// Unrestricted-parity total over all consecutive-matching classes; the two
// admissible class GFs must add up to this.
inline Rational block_total_oracle(const Dag& d, const Interval& J, const VertexTuple& u,
                                   const VertexTuple& v, const Interval& I,
                                   std::size_t budget = kDefaultEnumerationBudget) {
  EnumBudget b{budget};
  return detail::block_oracle(d, J, u, v, I, std::nullopt, b);
}

// ---------------------------------------------------------------------------
// Multi-block: several u-blocks (each with a sink interval) and v-blocks
// (each with a source interval), interleaved by an ordering tau
// ---------------------------------------------------------------------------

// tau lists the source side: entry k >= 0 is u-block k, entry -(l+1) is the
// source interval feeding v-block l. The target side mirrors it (u-block k's
// slot holds its sink interval, source-interval l's slot holds v-block l).
struct BlockSpec {
  std::vector<VertexTuple> u_blocks;
  std::vector<Interval> sink_intervals;
  std::vector<VertexTuple> v_blocks;
  std::vector<Interval> source_intervals;
  std::vector<int> tau;
};

namespace detail {

inline void validate_block_spec(const BlockSpec& spec) {
  const std::size_t m = spec.u_blocks.size(), n = spec.v_blocks.size();
  if (spec.sink_intervals.size() != m || spec.source_intervals.size() != n)
    raise(errc::arity_mismatch, "one interval per block required");
  if (spec.tau.size() != m + n) raise(errc::bad_ordering, "tau must list every block once");
  long last_u = -1, last_v = -1;
  std::vector<bool> seen_u(m, false), seen_v(n, false);
  for (int t : spec.tau) {
    if (t >= 0) {
      auto k = static_cast<std::size_t>(t);
      if (k >= m || seen_u[k]) raise(errc::bad_ordering, "bad u-block entry in tau");
      if (static_cast<long>(k) <= last_u) raise(errc::bad_ordering, "u-blocks out of order");
      seen_u[k] = true;
      last_u = static_cast<long>(k);
    } else {
      auto l = static_cast<std::size_t>(-t - 1);
      if (l >= n || seen_v[l]) raise(errc::bad_ordering, "bad interval entry in tau");
      if (static_cast<long>(l) <= last_v) raise(errc::bad_ordering, "intervals out of order");
      seen_v[l] = true;
      last_v = static_cast<long>(l);
    }
  }
}

struct ElemRef {
  std::size_t block;
  std::size_t index;

  friend bool operator==(const ElemRef& a, const ElemRef& b) {
    return a.block == b.block && a.index == b.index;
  }
};

}  // namespace detail

inline SkewMatrix multi_block_matrix(const Dag& d, const BlockSpec& spec) {
  detail::validate_block_spec(spec);
  detail::HCache h(d);
  const std::size_t m = spec.u_blocks.size(), n = spec.v_blocks.size();

  // Ground list: u-blocks in order, each ascending; then v-blocks in reverse
  // block order, each descending.
  std::vector<std::pair<int, VertexId>> ground;  // (v-block id or -1 for u side, vertex)
  std::vector<std::size_t> u_offsets, v_slot_of_block(n);
  for (std::size_t p = 0; p < m; ++p) {
    u_offsets.push_back(ground.size());
    for (std::size_t k = 0; k < spec.u_blocks[p].size(); ++k)
      ground.emplace_back(-1, spec.u_blocks[p][k]);
  }
  const std::size_t u_total = ground.size();
  std::vector<std::size_t> v_offsets(n);
  for (std::size_t q = n; q-- > 0;) {
    v_offsets[q] = ground.size();
    const auto& vb = spec.v_blocks[q];
    for (std::size_t k = vb.size(); k-- > 0;) ground.emplace_back(static_cast<int>(q), vb[k]);
  }
  if (ground.size() % 2 != 0)
    raise(errc::parity_mismatch, "total number of block vertices must be even");

  SkewMatrix mat(ground.size());
  for (std::size_t p = 0; p < m; ++p) {
    const auto& ub = spec.u_blocks[p];
    for (std::size_t k = 0; k < ub.size(); ++k)
      for (std::size_t l = k + 1; l < ub.size(); ++l)
        mat.set(u_offsets[p] + k, u_offsets[p] + l,
                detail::q_pair(h, ub[k], ub[l], spec.sink_intervals[p]));
  }
  for (std::size_t i = 0; i < u_total; ++i)
    for (std::size_t j = u_total; j < ground.size(); ++j)
      mat.set(i, j, h.from(ground[i].second)[ground[j].second]);
  for (std::size_t q = 0; q < n; ++q) {
    const std::size_t s = spec.v_blocks[q].size();
    for (std::size_t i = 0; i < s; ++i)
      for (std::size_t j = i + 1; j < s; ++j)
        mat.set(v_offsets[q] + i, v_offsets[q] + j,
                detail::q_tilde_pair(h, spec.source_intervals[q], ground[v_offsets[q] + i].second,
                                     ground[v_offsets[q] + j].second));
  }
  return mat;
}

namespace detail {

// Sums the weights of all globally vertex-disjoint systems in which every
// u-element runs either into its own sink interval or to some v-element
// (injectively), every unmatched v-element is fed from its own source
// interval, and each block leaves an even number of interval-bound paths.
// Pairings whose arcs would have to cross never produce a disjoint
// realization on D-compatible instances, so no explicit pattern filter is
// needed; the even-leftover rule is the class constraint.
inline Rational multi_block_oracle(const Dag& d, const BlockSpec& spec, EnumBudget& b) {
  const std::size_t m = spec.u_blocks.size(), n = spec.v_blocks.size();
  std::vector<std::size_t> r(m), s(n);
  for (std::size_t p = 0; p < m; ++p) r[p] = spec.u_blocks[p].size();
  for (std::size_t q = 0; q < n; ++q) s[q] = spec.v_blocks[q].size();

  std::vector<ElemRef> u_elems, v_elems;
  for (std::size_t p = 0; p < m; ++p)
    for (std::size_t k = 0; k < r[p]; ++k) u_elems.push_back({p, k});
  for (std::size_t q = 0; q < n; ++q)
    for (std::size_t k = 0; k < s[q]; ++k) v_elems.push_back({q, k});

  // assign[i] = index into v_elems, or npos for "pairs internally into the
  // sink interval".
  constexpr std::size_t npos = static_cast<std::size_t>(-1);
  std::vector<std::size_t> assign(u_elems.size(), npos);

  auto admissible = [&]() -> bool {
    for (std::size_t p = 0; p < m; ++p) {
      std::size_t left = 0;
      for (std::size_t i = 0; i < u_elems.size(); ++i)
        if (u_elems[i].block == p && assign[i] == npos) ++left;
      if (left % 2 != 0) return false;
    }
    for (std::size_t q = 0; q < n; ++q) {
      std::size_t left = s[q];
      for (std::size_t i = 0; i < u_elems.size(); ++i)
        if (assign[i] != npos && v_elems[assign[i]].block == q) --left;
      if (left % 2 != 0) return false;
    }
    return true;
  };

  Rational total(0);
  auto realize = [&]() {
    std::vector<std::vector<Path>> choices;
    std::vector<bool> v_taken(v_elems.size(), false);
    for (std::size_t i = 0; i < u_elems.size(); ++i) {
      const VertexId src = spec.u_blocks[u_elems[i].block][u_elems[i].index];
      if (assign[i] == npos) {
        std::vector<Path> legs;
        const auto& sink = spec.sink_intervals[u_elems[i].block];
        for (std::size_t k = 0; k < sink.size(); ++k)
          for (auto& p : enumerate_paths(d, src, sink[k], b)) legs.push_back(std::move(p));
        choices.push_back(std::move(legs));
      } else {
        v_taken[assign[i]] = true;
        const ElemRef ve = v_elems[assign[i]];
        choices.push_back(enumerate_paths(d, src, spec.v_blocks[ve.block][ve.index], b));
      }
    }
    for (std::size_t j = 0; j < v_elems.size(); ++j) {
      if (v_taken[j]) continue;
      const ElemRef ve = v_elems[j];
      const VertexId dst = spec.v_blocks[ve.block][ve.index];
      std::vector<Path> legs;
      const auto& srcint = spec.source_intervals[ve.block];
      for (std::size_t k = 0; k < srcint.size(); ++k)
        for (auto& p : enumerate_paths(d, srcint[k], dst, b)) legs.push_back(std::move(p));
      choices.push_back(std::move(legs));
    }
    total += system_total(systems_from_choices(d, std::move(choices), true, b));
  };

  // Walk all partial injections u-elements -> v-elements.
  std::vector<bool> used(v_elems.size(), false);
  auto rec = [&](auto&& self, std::size_t i) -> void {
    if (i == u_elems.size()) {
      if (admissible()) realize();
      return;
    }
    self(self, i + 1);  // internal
    for (std::size_t j = 0; j < v_elems.size(); ++j) {
      if (used[j]) continue;
      used[j] = true;
      assign[i] = j;
      self(self, i + 1);
      assign[i] = npos;
      used[j] = false;
    }
  };
  rec(rec, 0);
  return total;
}

}  // namespace detail

inline bool is_multi_separated(const Dag& d, const BlockSpec& spec) {
  const std::size_t m = spec.u_blocks.size(), n = spec.v_blocks.size();
  std::vector<VertexSet> uA, from_u, Bv, to_v;
  for (std::size_t p = 0; p < m; ++p) {
    uA.push_back(detail::corridor(d, spec.u_blocks[p].ids(), spec.sink_intervals[p].ids()));
    VertexSet r(d.vertex_count());
    for (auto x : spec.u_blocks[p].ids()) r.unite(d.descendants(x));
    from_u.push_back(std::move(r));
  }
  for (std::size_t q = 0; q < n; ++q) {
    Bv.push_back(detail::corridor(d, spec.source_intervals[q].ids(), spec.v_blocks[q].ids()));
    VertexSet c(d.vertex_count());
    for (auto y : spec.v_blocks[q].ids()) c.unite(d.ancestors(y));
    to_v.push_back(std::move(c));
  }
  for (std::size_t p = 0; p < m; ++p)
    for (std::size_t k = 0; k < m; ++k)
      if (p != k) {
        VertexSet t = uA[p];
        t.intersect(from_u[k]);
        if (!t.empty()) return false;
      }
  for (std::size_t q = 0; q < n; ++q)
    for (std::size_t l = 0; l < n; ++l)
      if (q != l) {
        VertexSet t = Bv[q];
        t.intersect(to_v[l]);
        if (!t.empty()) return false;
      }
  for (std::size_t p = 0; p < m; ++p)
    for (std::size_t q = 0; q < n; ++q) {
      VertexSet t = uA[p];
      t.intersect(Bv[q]);
      if (!t.empty()) return false;
    }
  return true;
}

inline std::vector<VertexId> multi_block_sources(const BlockSpec& spec) {
  std::vector<VertexId> out;
  for (int t : spec.tau) {
    const auto& ids = t >= 0 ? spec.u_blocks[static_cast<std::size_t>(t)].ids()
                             : spec.source_intervals[static_cast<std::size_t>(-t - 1)].ids();
    out.insert(out.end(), ids.begin(), ids.end());
  }
  return out;
}

inline std::vector<VertexId> multi_block_targets(const BlockSpec& spec) {
  std::vector<VertexId> out;
  for (int t : spec.tau) {
    const auto& ids = t >= 0 ? spec.sink_intervals[static_cast<std::size_t>(t)].ids()
                             : spec.v_blocks[static_cast<std::size_t>(-t - 1)].ids();
    out.insert(out.end(), ids.begin(), ids.end());
  }
  return out;
}

inline GfReport multi_block(const Dag& d, const BlockSpec& spec, const GfOptions& opt = {}) {
  detail::validate_block_spec(spec);
  std::size_t total = 0;
  for (const auto& ub : spec.u_blocks) total += ub.size();
  for (const auto& vb : spec.v_blocks) total += vb.size();
  if (total % 2 != 0) raise(errc::parity_mismatch, "sum of block sizes must be even");
  if (opt.check_preconditions) {
    if (!is_D_compatible(d, multi_block_sources(spec), multi_block_targets(spec), opt.budget))
      raise(errc::not_compatible, "tau-ordered sources/targets are not D-compatible");
    if (!is_multi_separated(d, spec)) raise(errc::not_separated, "block corridors overlap");
  }
  GfReport rep;
  rep.closed_form = pfaffian_eliminate(multi_block_matrix(d, spec));
  EnumBudget b{opt.budget};
  rep.brute_force = detail::multi_block_oracle(d, spec, b);
  rep.matched = rep.closed_form == rep.brute_force;
  rep.descriptor = "multi_block m=" + std::to_string(spec.u_blocks.size()) +
                   " n=" + std::to_string(spec.v_blocks.size());
  return rep;
}

}  // namespace pfpaths
