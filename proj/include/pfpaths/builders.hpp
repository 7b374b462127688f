#pragma once

#include <cstddef>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "pfpaths/dag.hpp"
#include "pfpaths/error.hpp"
#include "pfpaths/rational.hpp"

namespace pfpaths {

// ---------------------------------------------------------------------------
// Right/up lattice
// ---------------------------------------------------------------------------

// Weight callback for grid edges: (x, y, up?) -> positive rational.
using GridWeightFn = std::function<Rational(std::size_t x, std::size_t y, bool up)>;

struct Grid {
  Dag dag;
  std::size_t width = 0;
  std::size_t height = 0;

  VertexId at(std::size_t x, std::size_t y) const { return x * (height + 1) + y; }
};

// Standard width x height lattice: vertices (x,y) with 0<=x<=W, 0<=y<=H and
// edges (x,y)->(x+1,y), (x,y)->(x,y+1). The vertex order is lexicographic by
// (x - y, x), which runs along anti-diagonals; under it the counterclockwise
// lower-left boundary (left edge top-to-bottom, then bottom edge
// left-to-right) and the clockwise upper-right boundary (top edge
// left-to-right, then right edge top-to-bottom) are both ascending, so
// boundary source/sink tuples are D-compatible.
inline Grid make_grid(std::size_t width, std::size_t height, const GridWeightFn& weight) {
  if (width < 1 || height < 1) raise(errc::invalid_argument, "grid needs width, height >= 1");
  const std::size_t nx = width + 1, ny = height + 1;
  const std::size_t n = nx * ny;
  auto id = [&](std::size_t x, std::size_t y) { return x * ny + y; };

  std::vector<std::string> labels(n);
  std::vector<std::pair<long, long>> key(n);
  for (std::size_t x = 0; x < nx; ++x)
    for (std::size_t y = 0; y < ny; ++y) {
      labels[id(x, y)] = "(" + std::to_string(x) + "," + std::to_string(y) + ")";
      key[id(x, y)] = {static_cast<long>(x) - static_cast<long>(y), static_cast<long>(x)};
    }
  std::vector<VertexId> by_key(n);
  for (std::size_t i = 0; i < n; ++i) by_key[i] = i;
  std::sort(by_key.begin(), by_key.end(),
            [&](VertexId a, VertexId b) { return key[a] < key[b]; });
  std::vector<std::size_t> order(n);
  for (std::size_t rank = 0; rank < n; ++rank) order[by_key[rank]] = rank;

  std::vector<EdgeSpec> edges;
  for (std::size_t x = 0; x < nx; ++x)
    for (std::size_t y = 0; y < ny; ++y) {
      if (x + 1 < nx) edges.push_back({id(x, y), id(x + 1, y), weight(x, y, false)});
      if (y + 1 < ny) edges.push_back({id(x, y), id(x, y + 1), weight(x, y, true)});
    }
  return Grid{Dag(n, std::move(order), std::move(edges), std::move(labels)), width, height};
}

inline Grid make_grid(std::size_t width, std::size_t height, const Rational& w = Rational(1)) {
  return make_grid(width, height, [&](std::size_t, std::size_t, bool) { return w; });
}

// ---------------------------------------------------------------------------
// Walker strip
// ---------------------------------------------------------------------------

// One-way membrane between heights level-1 and level. block_up forbids steps
// from y < level to y >= level; otherwise steps from y >= level to y < level
// are forbidden.
struct Membrane {
  long level;
  bool block_up;
};

// Weight callback for walker steps: (column, height, dy in {-1,+1}).
using StepWeightFn = std::function<Rational(std::size_t x, long y, int dy)>;

// Time/space strip of +-1 walkers: vertices (x, y) for 0 <= x <= columns and
// ymin <= y <= ymax, edges (x,y)->(x+1,y+-1) except where a membrane blocks
// the crossing. Every edge advances the column, so any two paths between
// column 0 and column `columns` that cross in height share a vertex whenever
// their height difference is even. Vertex order is lexicographic by
// (x, -y): within each column, higher walkers come first.
struct WalkerStrip {
  Dag dag;
  std::size_t columns = 0;
  long ymin = 0;
  long ymax = 0;

  VertexId at(std::size_t x, long y) const {
    return x * static_cast<std::size_t>(ymax - ymin + 1) + static_cast<std::size_t>(y - ymin);
  }
};

inline WalkerStrip make_walker_strip(std::size_t columns, long ymin, long ymax,
                                     const std::vector<Membrane>& membranes,
                                     const StepWeightFn& weight) {
  if (ymax < ymin) raise(errc::invalid_argument, "empty height range");
  const std::size_t ny = static_cast<std::size_t>(ymax - ymin + 1);
  const std::size_t n = (columns + 1) * ny;
  auto id = [&](std::size_t x, long y) { return x * ny + static_cast<std::size_t>(y - ymin); };

  auto blocked = [&](long from, long to) {
    for (const auto& m : membranes) {
      if (m.block_up && from < m.level && to >= m.level) return true;
      if (!m.block_up && from >= m.level && to < m.level) return true;
    }
    return false;
  };

  std::vector<std::string> labels(n);
  std::vector<std::size_t> order(n);
  for (std::size_t x = 0; x <= columns; ++x)
    for (long y = ymin; y <= ymax; ++y) {
      labels[id(x, y)] = "c" + std::to_string(x) + ":" + std::to_string(y);
      order[id(x, y)] = x * ny + static_cast<std::size_t>(ymax - y);
    }

  std::vector<EdgeSpec> edges;
  for (std::size_t x = 0; x < columns; ++x)
    for (long y = ymin; y <= ymax; ++y)
      for (int dy : {+1, -1}) {
        long y2 = y + dy;
        if (y2 < ymin || y2 > ymax || blocked(y, y2)) continue;
        edges.push_back({id(x, y), id(x + 1, y2), weight(x, y, dy)});
      }
  return WalkerStrip{Dag(n, std::move(order), std::move(edges), std::move(labels)), columns, ymin,
                     ymax};
}

namespace detail {

// Column-0 vertices at the given heights, listed in the strip's vertex order
// (descending height).
inline std::vector<VertexId> column_vertices(const WalkerStrip& s, std::size_t x,
                                             std::vector<long> heights) {
  std::sort(heights.begin(), heights.end(), std::greater<long>());
  std::vector<VertexId> out;
  out.reserve(heights.size());
  for (long y : heights) out.push_back(s.at(x, y));
  return out;
}

inline std::vector<long> even_band(long top, std::size_t count) {
  std::vector<long> h;
  for (std::size_t i = 0; i < count; ++i) h.push_back(top - 2 * static_cast<long>(i));
  return h;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Two-chamber testbed: J ⊕ u -> v ⊕ I
// ---------------------------------------------------------------------------

struct TwoChamberSpec {
  std::size_t columns = 4;  // must be even so column-0/column-X parities agree
  std::size_t j_size = 2;
  std::size_t u_size = 2;
  std::size_t v_size = 2;
  std::size_t i_size = 2;
  long slack = 2;  // extra head/foot room for wiggling
};

struct TwoChamber {
  WalkerStrip strip;
  Interval J;
  VertexTuple u;
  VertexTuple v;
  Interval I;
};

// Walker strip split by one membrane that can be crossed upward but not
// downward. J sources and v sinks live in the upper band, u sources and the
// interval I in the lower band, all at even heights listed top-down. Paths
// from J to v can never leave the upper band and paths from u to I can never
// complete after leaving the lower band, so the configuration is D-separated;
// direct u -> v paths cross the membrane upward. Sources in column 0 and
// sinks in the last column are height-ordered, which makes J ⊕ u and v ⊕ I
// D-compatible.
inline TwoChamber make_two_chamber(const TwoChamberSpec& spec, const StepWeightFn& weight) {
  if (spec.columns % 2 != 0) raise(errc::invalid_argument, "columns must be even");
  const long low_span = 2 * static_cast<long>(std::max(spec.u_size, spec.i_size));
  const long boundary = low_span + spec.slack;
  const long top = boundary + 2 * static_cast<long>(std::max(spec.j_size, spec.v_size)) +
                   spec.slack;
  long b = boundary + (boundary % 2);  // keep band entries on even heights

  WalkerStrip strip = make_walker_strip(spec.columns, -spec.slack, top + spec.slack,
                                        {Membrane{b, false}}, weight);
  const std::size_t X = spec.columns;
  auto upper = [&](std::size_t count) {
    return detail::even_band(b + 2 * static_cast<long>(count) - 2, count);
  };
  auto lower = [&](std::size_t count) {
    return detail::even_band(2 * static_cast<long>(count) - 2, count);
  };

  Interval J(strip.dag, detail::column_vertices(strip, 0, upper(spec.j_size)));
  VertexTuple u(strip.dag, detail::column_vertices(strip, 0, lower(spec.u_size)));
  VertexTuple v(strip.dag, detail::column_vertices(strip, X, upper(spec.v_size)));
  Interval I(strip.dag, detail::column_vertices(strip, X, lower(spec.i_size)));
  return TwoChamber{std::move(strip), std::move(J), std::move(u), std::move(v), std::move(I)};
}

// ---------------------------------------------------------------------------
// Three-chamber testbed for the multi-block identity
// ---------------------------------------------------------------------------

// Which side carries two blocks: two u-blocks with one v-block, or one
// u-block with two v-blocks.
enum class ThreeChamberKind { two_u_blocks, two_v_blocks };

struct ThreeChamberSpec {
  ThreeChamberKind kind = ThreeChamberKind::two_u_blocks;
  std::size_t columns = 4;
  std::vector<std::size_t> u_sizes;     // per u-block
  std::vector<std::size_t> sinkint_sizes;  // sink interval per u-block
  std::vector<std::size_t> v_sizes;     // per v-block
  std::vector<std::size_t> srcint_sizes;   // source interval per v-block
  long slack = 2;
};

struct ThreeChamber {
  WalkerStrip strip;
  std::vector<VertexTuple> u_blocks;
  std::vector<Interval> sink_intervals;  // u-block k pairs internally into sink_intervals[k]
  std::vector<VertexTuple> v_blocks;
  std::vector<Interval> source_intervals;  // v-block k is fed from source_intervals[k]
  std::vector<int> tau;  // source-side ordering: k >= 0 is u-block k, -(k+1) is source interval k
};

// Three stacked bands separated by two one-way membranes, arranged so that
// per-band path families can never meet while direct u -> v paths still
// exist. Bands are assigned top-down following the source-side ordering.
inline ThreeChamber make_three_chamber(const ThreeChamberSpec& spec, const StepWeightFn& weight) {
  if (spec.columns % 2 != 0) raise(errc::invalid_argument, "columns must be even");
  const bool two_u = spec.kind == ThreeChamberKind::two_u_blocks;
  if (two_u && (spec.u_sizes.size() != 2 || spec.sinkint_sizes.size() != 2 ||
                spec.v_sizes.size() != 1 || spec.srcint_sizes.size() != 1))
    raise(errc::invalid_argument, "two_u_blocks wants 2 u-blocks and 1 v-block");
  if (!two_u && (spec.u_sizes.size() != 1 || spec.sinkint_sizes.size() != 1 ||
                 spec.v_sizes.size() != 2 || spec.srcint_sizes.size() != 2))
    raise(errc::invalid_argument, "two_v_blocks wants 1 u-block and 2 v-blocks");

  // Band occupants top-down, as (source count, target count) per band.
  // two_u: u1/A1, B1/V1, u2/A2 with membranes NoUp (top) and NoDown (bottom).
  // two_v: B1/V1, u1/A1, B2/V2 with membranes NoDown (top) and NoUp (bottom).
  std::vector<std::pair<std::size_t, std::size_t>> bands;
  if (two_u) {
    bands = {{spec.u_sizes[0], spec.sinkint_sizes[0]},
             {spec.srcint_sizes[0], spec.v_sizes[0]},
             {spec.u_sizes[1], spec.sinkint_sizes[1]}};
  } else {
    bands = {{spec.srcint_sizes[0], spec.v_sizes[0]},
             {spec.u_sizes[0], spec.sinkint_sizes[0]},
             {spec.srcint_sizes[1], spec.v_sizes[1]}};
  }

  std::vector<long> band_top(3), band_bottom(3);
  long cursor = 0;
  for (int band = 2; band >= 0; --band) {
    const long span = 2 * static_cast<long>(std::max(bands[band].first, bands[band].second));
    band_bottom[band] = cursor;
    band_top[band] = cursor + span - 2 + spec.slack;
    cursor = band_top[band] + 2;
    if (cursor % 2 != 0) ++cursor;
  }

  std::vector<Membrane> membranes;
  if (two_u) {
    membranes = {Membrane{band_bottom[0], true}, Membrane{band_bottom[1], false}};
  } else {
    membranes = {Membrane{band_bottom[0], false}, Membrane{band_bottom[1], true}};
  }

  WalkerStrip strip = make_walker_strip(spec.columns, band_bottom[2] - spec.slack,
                                        band_top[0] + spec.slack, membranes, weight);
  const std::size_t X = spec.columns;

  auto band_heights = [&](int band, std::size_t count) {
    long top = band_bottom[band] + 2 * static_cast<long>(count) - 2;
    return detail::even_band(top, count);
  };

  ThreeChamber out{std::move(strip), {}, {}, {}, {}, {}};
  auto src = [&](int band, std::size_t count) {
    return VertexTuple(out.strip.dag, detail::column_vertices(out.strip, 0, band_heights(band, count)));
  };
  auto dst = [&](int band, std::size_t count) {
    return VertexTuple(out.strip.dag, detail::column_vertices(out.strip, X, band_heights(band, count)));
  };

  if (two_u) {
    out.u_blocks = {src(0, spec.u_sizes[0]), src(2, spec.u_sizes[1])};
    out.sink_intervals = {dst(0, spec.sinkint_sizes[0]), dst(2, spec.sinkint_sizes[1])};
    out.v_blocks = {dst(1, spec.v_sizes[0])};
    out.source_intervals = {src(1, spec.srcint_sizes[0])};
    out.tau = {0, -1, 1};  // u1, B1, u2
  } else {
    out.u_blocks = {src(1, spec.u_sizes[0])};
    out.sink_intervals = {dst(1, spec.sinkint_sizes[0])};
    out.v_blocks = {dst(0, spec.v_sizes[0]), dst(2, spec.v_sizes[1])};
    out.source_intervals = {src(0, spec.srcint_sizes[0]), src(2, spec.srcint_sizes[1])};
    out.tau = {-1, 0, -2};  // B1, u1, B2
  }
  return out;
}

}  // namespace pfpaths
