#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "pfpaths/builders.hpp"
#include "pfpaths/gf.hpp"
#include "pfpaths/json_io.hpp"
#include "pfpaths/measure.hpp"
#include "pfpaths/pfaffian.hpp"

namespace pfpaths {

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

// Deterministic RNG wrapper. mt19937_64 output is pinned by the standard and
// the derived draws below avoid std::uniform_int_distribution, whose mapping
// is implementation-defined; reports must be byte-identical for a fixed seed.
class DetRng {
 public:
  explicit DetRng(std::uint64_t seed) : eng_(seed) {}

  std::uint64_t next() { return eng_(); }

  std::size_t below(std::size_t n) { return n == 0 ? 0 : static_cast<std::size_t>(next() % n); }

  long range(long lo, long hi) {  // inclusive
    return lo + static_cast<long>(below(static_cast<std::size_t>(hi - lo + 1)));
  }

  // positive weight with numerator/denominator <= 9
  Rational weight() { return Rational(range(1, 9), range(1, 9)); }

  // signed entry with |numerator| <= 9, denominator <= 9
  Rational entry() { return Rational(range(-9, 9), range(1, 9)); }

  // k distinct indices from 0..n-1, ascending
  std::vector<std::size_t> pick_ascending(std::size_t n, std::size_t k) {
    std::vector<std::size_t> pool(n);
    for (std::size_t i = 0; i < n; ++i) pool[i] = i;
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < k; ++i) {
      std::size_t j = below(pool.size());
      out.push_back(pool[j]);
      pool.erase(pool.begin() + static_cast<long>(j));
    }
    std::sort(out.begin(), out.end());
    return out;
  }

 private:
  std::mt19937_64 eng_;
};

struct CampaignConfig {
  std::uint64_t seed = 1;
  std::size_t trials = 5;
  std::vector<std::string> families = {"pfaffian", "lgv", "stembridge",
                                       "mixed",    "block", "multi"};
  std::size_t budget = kDefaultEnumerationBudget;
  bool corrupt_closed_form = false;  // test hook: breaks every closed form by +1
};

struct CampaignResult {
  std::vector<json> records;
  std::size_t passed = 0;
  std::size_t failed = 0;
  std::size_t errored = 0;
};

namespace campaign {

inline StepWeightFn rng_steps(DetRng& rng) {
  return [&rng](std::size_t, long, int) { return rng.weight(); };
}

inline GridWeightFn rng_grid(DetRng& rng) {
  return [&rng](std::size_t, std::size_t, bool) { return rng.weight(); };
}

// Counterclockwise lower-left boundary: left edge top-down, then the bottom
// edge rightwards. Ascending in the grid's vertex order.
inline std::vector<VertexId> lower_left_boundary(const Grid& g) {
  std::vector<VertexId> out;
  for (long y = static_cast<long>(g.height); y >= 0; --y)
    out.push_back(g.at(0, static_cast<std::size_t>(y)));
  for (std::size_t x = 1; x <= g.width; ++x) out.push_back(g.at(x, 0));
  return out;
}

// Clockwise upper-right boundary: top edge rightwards, then the right edge
// top-down.
inline std::vector<VertexId> upper_right_boundary(const Grid& g) {
  std::vector<VertexId> out;
  for (std::size_t x = 0; x <= g.width; ++x) out.push_back(g.at(x, g.height));
  for (long y = static_cast<long>(g.height) - 1; y >= 0; --y)
    out.push_back(g.at(g.width, static_cast<std::size_t>(y)));
  return out;
}

inline std::vector<VertexId> select(const std::vector<VertexId>& pool,
                                    const std::vector<std::size_t>& idx) {
  std::vector<VertexId> out;
  for (auto i : idx) out.push_back(pool[i]);
  return out;
}

inline json labels_of(const Dag& d, const std::vector<VertexId>& ids) {
  json arr = json::array();
  for (auto v : ids) arr.push_back(d.label(v));
  return arr;
}

inline void finish_record(json& rec, const GfReport& rep, bool corrupt) {
  Rational closed = rep.closed_form;
  if (corrupt) closed += Rational(1);
  rec["closed_form"] = closed.str();
  rec["brute_force"] = rep.brute_force.str();
  rec["matched"] = closed == rep.brute_force;
}

// --- per-family fixtures -------------------------------------------------

inline json pfaffian_fixture(std::uint64_t seed, bool corrupt) {
  DetRng rng(seed);
  const std::size_t dim = 2 * static_cast<std::size_t>(rng.range(1, 4));
  SkewMatrix m(dim);
  for (std::size_t i = 0; i < dim; ++i)
    for (std::size_t j = i + 1; j < dim; ++j) m.set(i, j, rng.entry());
  Rational expand = pfaffian_expand(m);
  if (corrupt) expand += Rational(1);
  Rational elim = pfaffian_eliminate(m);
  Rational det = determinant(m.as_matrix());
  json rec;
  rec["family"] = "pfaffian";
  rec["dim"] = dim;
  rec["expand"] = expand.str();
  rec["eliminate"] = elim.str();
  rec["determinant"] = det.str();
  rec["matched"] = expand == elim && elim * elim == det;
  return rec;
}

inline json lgv_fixture(std::uint64_t seed, std::size_t budget, bool corrupt) {
  DetRng rng(seed);
  const std::size_t W = static_cast<std::size_t>(rng.range(2, 4));
  const std::size_t H = static_cast<std::size_t>(rng.range(2, 4));
  Grid g = make_grid(W, H, rng_grid(rng));
  const std::size_t r = static_cast<std::size_t>(rng.range(1, 3));
  auto sources = lower_left_boundary(g);
  auto targets = upper_right_boundary(g);
  VertexTuple u(g.dag, select(sources, rng.pick_ascending(sources.size(), r)));
  VertexTuple v(g.dag, select(targets, rng.pick_ascending(targets.size(), r)));
  GfOptions opt;
  opt.check_preconditions = true;
  opt.budget = budget;
  json rec;
  rec["family"] = "lgv";
  rec["graph_hash"] = graph_hash(g.dag);
  rec["params"] = {{"W", W}, {"H", H}, {"r", r}};
  rec["u"] = labels_of(g.dag, u.ids());
  rec["v"] = labels_of(g.dag, v.ids());
  finish_record(rec, lgv(g.dag, u, v, opt), corrupt);
  return rec;
}

inline json stembridge_fixture(std::uint64_t seed, std::size_t budget, bool corrupt) {
  DetRng rng(seed);
  const std::size_t W = static_cast<std::size_t>(rng.range(2, 4));
  const std::size_t H = static_cast<std::size_t>(rng.range(2, 4));
  Grid g = make_grid(W, H, rng_grid(rng));
  const std::size_t r = static_cast<std::size_t>(rng.range(1, 4));
  auto sources = lower_left_boundary(g);
  auto targets = upper_right_boundary(g);
  VertexTuple u(g.dag, select(sources, rng.pick_ascending(sources.size(), r)));
  const std::size_t isize = static_cast<std::size_t>(rng.range(1, 5));
  const std::size_t start = rng.below(targets.size() >= isize ? targets.size() - isize + 1 : 1);
  std::vector<VertexId> ivals(targets.begin() + static_cast<long>(start),
                              targets.begin() + static_cast<long>(start + isize));
  Interval I(g.dag, ivals);
  GfOptions opt;
  opt.check_preconditions = true;
  opt.budget = budget;
  json rec;
  rec["family"] = r % 2 == 0 ? "stembridge_even" : "stembridge_odd";
  rec["graph_hash"] = graph_hash(g.dag);
  rec["params"] = {{"W", W}, {"H", H}, {"r", r}, {"I", isize}};
  rec["u"] = labels_of(g.dag, u.ids());
  rec["I"] = labels_of(g.dag, I.ids());
  GfReport rep = r % 2 == 0 ? stembridge_even(g.dag, u, I, opt) : stembridge_odd(g.dag, u, I, opt);
  finish_record(rec, rep, corrupt);
  return rec;
}

// Two-chamber walker spec sized so the needed climbs fit in the column count.
inline TwoChamberSpec sized_two_chamber(DetRng& rng, std::size_t j, std::size_t u, std::size_t v,
                                        std::size_t i) {
  TwoChamberSpec spec;
  spec.j_size = j;
  spec.u_size = u;
  spec.v_size = v;
  spec.i_size = i;
  spec.slack = rng.range(0, 1);
  const long low_span = 2 * static_cast<long>(std::max(u, i));
  long boundary = low_span + spec.slack;
  boundary += boundary % 2;
  long climb = boundary + (v > 0 ? 2 * static_cast<long>(v) - 2 : 0);
  climb += climb % 2;
  spec.columns = static_cast<std::size_t>(std::max<long>(4, climb));
  return spec;
}

inline json mixed_fixture(std::uint64_t seed, std::size_t budget, bool corrupt) {
  DetRng rng(seed);
  const std::size_t r = static_cast<std::size_t>(rng.range(1, 4));
  const std::size_t s = static_cast<std::size_t>(rng.range(0, std::min<long>(2, static_cast<long>(r))));
  const std::size_t isize = static_cast<std::size_t>(rng.range(1, 3));
  TwoChamberSpec spec = sized_two_chamber(rng, 0, r, s, isize);
  TwoChamber tc = make_two_chamber(spec, rng_steps(rng));
  GfOptions opt;
  opt.check_preconditions = true;
  opt.budget = budget;
  json rec;
  rec["family"] = (r + s) % 2 == 0 ? "mixed_even" : "mixed_odd";
  rec["graph_hash"] = graph_hash(tc.strip.dag);
  rec["params"] = {{"r", r}, {"s", s}, {"I", isize}, {"columns", spec.columns}};
  rec["u"] = labels_of(tc.strip.dag, tc.u.ids());
  rec["v"] = labels_of(tc.strip.dag, tc.v.ids());
  rec["I"] = labels_of(tc.strip.dag, tc.I.ids());
  GfReport rep = mixed(tc.strip.dag, tc.u, tc.v, tc.I, opt);
  finish_record(rec, rep, corrupt);

  // degeneration cross-checks on the same fixture
  if (s == 0) {
    GfReport stem = r % 2 == 0 ? stembridge_even(tc.strip.dag, tc.u, tc.I, opt)
                               : stembridge_odd(tc.strip.dag, tc.u, tc.I, opt);
    rec["degenerates_to_stembridge"] = rep.closed_form == stem.closed_form;
  }
  return rec;
}

// One fixture, both parity classes, and the class-sum completeness check.
inline json block_fixture(std::uint64_t seed, std::size_t budget, bool corrupt, bool even_total) {
  DetRng rng(seed);
  std::size_t r, s;
  if (even_total) {
    r = static_cast<std::size_t>(rng.range(1, 2));
    s = static_cast<std::size_t>(rng.range(1, 2));
    if ((r + s) % 2 != 0) s = s == 1 ? 2 : 1;
  } else {
    r = static_cast<std::size_t>(rng.range(1, 3));
    s = static_cast<std::size_t>(rng.range(1, 2));
    if ((r + s) % 2 == 0) s = s == 1 ? 2 : 1;
    if (r + s > 5) r -= 2;
  }
  const std::size_t jsize = static_cast<std::size_t>(rng.range(1, 2));
  const std::size_t isize = static_cast<std::size_t>(rng.range(1, 2));
  TwoChamberSpec spec = sized_two_chamber(rng, jsize, r, s, isize);
  TwoChamber tc = make_two_chamber(spec, rng_steps(rng));
  const Dag& d = tc.strip.dag;
  GfOptions opt;
  opt.check_preconditions = true;
  opt.budget = budget;

  json rec;
  rec["family"] = even_total ? "block_even" : "block_odd";
  rec["graph_hash"] = graph_hash(d);
  rec["params"] = {{"r", r}, {"s", s}, {"J", jsize}, {"I", isize}, {"columns", spec.columns}};
  GfReport first = even_total ? block_ee(d, tc.J, tc.u, tc.v, tc.I, opt)
                              : block_oe(d, tc.J, tc.u, tc.v, tc.I, opt);
  GfReport second = even_total ? block_oo(d, tc.J, tc.u, tc.v, tc.I, opt)
                               : block_eo(d, tc.J, tc.u, tc.v, tc.I, opt);
  json frec, srec;
  finish_record(frec, first, corrupt);
  finish_record(srec, second, corrupt);
  rec[even_total ? "ee" : "oe"] = frec;
  rec[even_total ? "oo" : "eo"] = srec;
  Rational total = block_total_oracle(d, tc.J, tc.u, tc.v, tc.I, budget);
  Rational closed_sum = first.closed_form + second.closed_form;
  if (corrupt) closed_sum += Rational(2);
  rec["class_sum"] = closed_sum.str();
  rec["unrestricted_total"] = total.str();
  rec["parity_complete"] = closed_sum == total;
  rec["matched"] =
      frec["matched"].get<bool>() && srec["matched"].get<bool>() && closed_sum == total;
  return rec;
}

inline ThreeChamberSpec sized_three_chamber(DetRng& rng, ThreeChamberKind kind) {
  ThreeChamberSpec spec;
  spec.kind = kind;
  spec.slack = rng.range(0, 1);
  auto sz = [&] { return static_cast<std::size_t>(rng.range(1, 2)); };
  std::size_t total;
  do {
    if (kind == ThreeChamberKind::two_u_blocks) {
      spec.u_sizes = {sz(), sz()};
      spec.sinkint_sizes = {sz(), sz()};
      spec.v_sizes = {sz()};
      spec.srcint_sizes = {sz()};
      total = spec.u_sizes[0] + spec.u_sizes[1] + spec.v_sizes[0];
    } else {
      spec.u_sizes = {sz()};
      spec.sinkint_sizes = {sz()};
      spec.v_sizes = {sz(), sz()};
      spec.srcint_sizes = {sz(), sz()};
      total = spec.u_sizes[0] + spec.v_sizes[0] + spec.v_sizes[1];
    }
  } while (total % 2 != 0);
  spec.columns = 6 + 2 * static_cast<std::size_t>(rng.range(0, 1));
  return spec;
}

inline json multi_fixture(std::uint64_t seed, std::size_t budget, bool corrupt, bool two_u) {
  DetRng rng(seed);
  ThreeChamberKind kind = two_u ? ThreeChamberKind::two_u_blocks : ThreeChamberKind::two_v_blocks;
  ThreeChamberSpec spec = sized_three_chamber(rng, kind);
  ThreeChamber t = make_three_chamber(spec, rng_steps(rng));
  BlockSpec bs;
  bs.u_blocks = t.u_blocks;
  bs.sink_intervals = t.sink_intervals;
  bs.v_blocks = t.v_blocks;
  bs.source_intervals = t.source_intervals;
  bs.tau = t.tau;
  GfOptions opt;
  opt.check_preconditions = true;
  opt.budget = budget;
  json rec;
  rec["family"] = two_u ? "multi_m2n1" : "multi_m1n2";
  rec["graph_hash"] = graph_hash(t.strip.dag);
  json sizes = json::array();
  for (const auto& b : bs.u_blocks) sizes.push_back(b.size());
  rec["params"] = {{"u_sizes", sizes}, {"columns", spec.columns}};
  json vsizes = json::array();
  for (const auto& b : bs.v_blocks) vsizes.push_back(b.size());
  rec["params"]["v_sizes"] = vsizes;
  finish_record(rec, multi_block(t.strip.dag, bs, opt), corrupt);
  return rec;
}

}  // namespace campaign

// Runs `trials` fixtures per enabled family with per-fixture seeds derived
// from the campaign seed. Budget errors are recorded per fixture, not fatal.
inline CampaignResult run_campaign(const CampaignConfig& cfg) {
  CampaignResult result;
  std::size_t family_id = 0;
  for (const auto& family : cfg.families) {
    ++family_id;
    for (std::size_t i = 0; i < cfg.trials; ++i) {
      const std::uint64_t seed = splitmix64(cfg.seed ^ (family_id * 0x9e3779b97f4a7c15ull) ^ i);
      json rec;
      try {
        if (family == "pfaffian") {
          rec = campaign::pfaffian_fixture(seed, cfg.corrupt_closed_form);
        } else if (family == "lgv") {
          rec = campaign::lgv_fixture(seed, cfg.budget, cfg.corrupt_closed_form);
        } else if (family == "stembridge") {
          rec = campaign::stembridge_fixture(seed, cfg.budget, cfg.corrupt_closed_form);
        } else if (family == "mixed") {
          rec = campaign::mixed_fixture(seed, cfg.budget, cfg.corrupt_closed_form);
        } else if (family == "block") {
          rec = campaign::block_fixture(seed, cfg.budget, cfg.corrupt_closed_form, i % 2 == 0);
        } else if (family == "multi") {
          rec = campaign::multi_fixture(seed, cfg.budget, cfg.corrupt_closed_form, i % 2 == 0);
        } else {
          raise(errc::invalid_argument, "unknown family '" + family + "'");
        }
      } catch (const Error& e) {
        if (e.code() == errc::invalid_argument) throw;
        rec["family"] = family;
        rec["error"] = e.what();
      }
      rec["index"] = result.records.size();
      rec["seed"] = std::to_string(seed);
      if (rec.contains("error")) {
        ++result.errored;
      } else if (rec.value("matched", false)) {
        ++result.passed;
      } else {
        ++result.failed;
      }
      result.records.push_back(std::move(rec));
    }
  }
  return result;
}

}  // namespace pfpaths
