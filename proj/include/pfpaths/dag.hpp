#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "pfpaths/error.hpp"
#include "pfpaths/rational.hpp"

namespace pfpaths {

using VertexId = std::size_t;

inline constexpr std::size_t kDefaultEnumerationBudget = 1'000'000;

// Counts path objects / search nodes against a hard cap. Exceeding the cap is
// an error, never a silent truncation.
struct EnumBudget {
  std::size_t remaining = kDefaultEnumerationBudget;

  void charge(std::size_t n = 1) {
    if (n > remaining) raise(errc::enumeration_budget_exceeded, "enumeration budget exhausted");
    remaining -= n;
  }
};

struct EdgeSpec {
  VertexId src;
  VertexId dst;
  Rational weight;
};

// Small dynamic bitset over vertex ids; used to test path disjointness.
class VertexSet {
 public:
  explicit VertexSet(std::size_t n = 0) : words_((n + 63) / 64, 0) {}

  void insert(std::size_t i) { words_[i / 64] |= (std::uint64_t{1} << (i % 64)); }
  void erase(std::size_t i) { words_[i / 64] &= ~(std::uint64_t{1} << (i % 64)); }
  bool contains(std::size_t i) const { return (words_[i / 64] >> (i % 64)) & 1; }

  bool intersects(const VertexSet& o) const {
    const std::size_t n = std::min(words_.size(), o.words_.size());
    for (std::size_t w = 0; w < n; ++w)
      if (words_[w] & o.words_[w]) return true;
    return false;
  }

  void unite(const VertexSet& o) {
    if (o.words_.size() > words_.size()) words_.resize(o.words_.size(), 0);
    for (std::size_t w = 0; w < o.words_.size(); ++w) words_[w] |= o.words_[w];
  }

  void intersect(const VertexSet& o) {
    for (std::size_t w = 0; w < words_.size(); ++w)
      words_[w] &= (w < o.words_.size() ? o.words_[w] : 0);
  }

  bool empty() const {
    for (auto w : words_)
      if (w) return false;
    return true;
  }

 private:
  std::vector<std::uint64_t> words_;
};

// Finite weighted acyclic digraph with a total vertex order. Immutable after
// construction; the constructor validates acyclicity, weight positivity and
// edge uniqueness, and caches a topological order.
class Dag {
 public:
  Dag(std::size_t vertex_count, std::vector<std::size_t> order, std::vector<EdgeSpec> edges,
      std::vector<std::string> labels = {})
      : n_(vertex_count), order_(std::move(order)), labels_(std::move(labels)), adj_(vertex_count) {
    if (order_.size() != n_) raise(errc::invalid_argument, "order size mismatch");
    std::vector<bool> seen(n_, false);
    for (auto r : order_) {
      if (r >= n_ || seen[r]) raise(errc::invalid_argument, "order is not a permutation");
      seen[r] = true;
    }
    if (labels_.empty()) {
      labels_.resize(n_);
      for (std::size_t i = 0; i < n_; ++i) labels_[i] = std::to_string(i);
    } else if (labels_.size() != n_) {
      raise(errc::invalid_argument, "label count mismatch");
    }

    std::map<std::pair<VertexId, VertexId>, bool> seen_edge;
    for (const auto& e : edges) {
      if (e.src >= n_ || e.dst >= n_) raise(errc::unknown_vertex, "edge endpoint out of range");
      if (e.src == e.dst) raise(errc::cycle_detected, "self-loop");
      if (!(e.weight > Rational(0)))
        raise(errc::nonpositive_weight, "edge weight must be > 0");
      if (seen_edge[{e.src, e.dst}])
        raise(errc::duplicate_edge, "repeated (src,dst) pair");
      seen_edge[{e.src, e.dst}] = true;
      adj_[e.src].emplace_back(e.dst, e.weight);
    }
    for (auto& out : adj_)
      std::sort(out.begin(), out.end(),
                [](const auto& a, const auto& b) { return a.first < b.first; });
    compute_topo();
  }

  std::size_t vertex_count() const { return n_; }
  std::size_t order_of(VertexId v) const { return order_.at(v); }
  const std::string& label(VertexId v) const { return labels_.at(v); }
  const std::vector<std::pair<VertexId, Rational>>& out_edges(VertexId v) const {
    check_vertex(v);
    return adj_[v];
  }
  const std::vector<VertexId>& topo_order() const { return topo_; }
  const std::vector<std::size_t>& order() const { return order_; }
  const std::vector<std::string>& labels() const { return labels_; }

  std::vector<EdgeSpec> edge_list() const {
    std::vector<EdgeSpec> out;
    for (VertexId v = 0; v < n_; ++v)
      for (const auto& [d, w] : adj_[v]) out.push_back({v, d, w});
    return out;
  }

  // Edge-reversed copy (same vertex order). h_rev(v, u) == h(u, v).
  Dag reversed() const {
    std::vector<EdgeSpec> rev;
    for (VertexId v = 0; v < n_; ++v)
      for (const auto& [d, w] : adj_[v]) rev.push_back({d, v, w});
    return Dag(n_, order_, std::move(rev), labels_);
  }

  void check_vertex(VertexId v) const {
    if (v >= n_) raise(errc::unknown_vertex, "vertex id out of range");
  }

  // Vertices reachable from v by a directed path (v itself included).
  VertexSet descendants(VertexId v) const {
    check_vertex(v);
    VertexSet s(n_);
    s.insert(v);
    // topo_ is a valid processing order for forward propagation.
    for (VertexId x : topo_) {
      if (!s.contains(x)) continue;
      for (const auto& [d, w] : adj_[x]) s.insert(d);
    }
    return s;
  }

  // Vertices from which v is reachable (v itself included).
  VertexSet ancestors(VertexId v) const {
    check_vertex(v);
    VertexSet s(n_);
    s.insert(v);
    for (auto it = topo_.rbegin(); it != topo_.rend(); ++it) {
      if (*it == v) continue;
      for (const auto& [d, w] : adj_[*it])
        if (s.contains(d)) {
          s.insert(*it);
          break;
        }
    }
    return s;
  }

 private:
  void compute_topo() {
    std::vector<std::size_t> indeg(n_, 0);
    for (const auto& out : adj_)
      for (const auto& [d, w] : out) ++indeg[d];
    std::vector<bool> done(n_, false);
    topo_.reserve(n_);
    for (std::size_t step = 0; step < n_; ++step) {
      VertexId pick = n_;
      for (VertexId v = 0; v < n_; ++v)
        if (!done[v] && indeg[v] == 0) {
          pick = v;
          break;
        }
      if (pick == n_) raise(errc::cycle_detected, "graph has a directed cycle");
      done[pick] = true;
      topo_.push_back(pick);
      for (const auto& [d, w] : adj_[pick]) --indeg[d];
    }
  }

  std::size_t n_;
  std::vector<std::size_t> order_;
  std::vector<std::string> labels_;
  std::vector<std::vector<std::pair<VertexId, Rational>>> adj_;
  std::vector<VertexId> topo_;
};

inline Dag build_dag(std::size_t vertex_count, std::vector<std::size_t> order,
                     std::vector<EdgeSpec> edges, std::vector<std::string> labels = {}) {
  return Dag(vertex_count, std::move(order), std::move(edges), std::move(labels));
}

// Ordered list of vertices, strictly increasing in the Dag's vertex order.
// Used both for source/sink tuples and for finite intervals.
class OrderedVertices {
 public:
  OrderedVertices() = default;
  OrderedVertices(const Dag& d, std::vector<VertexId> ids) : ids_(std::move(ids)) {
    for (std::size_t i = 0; i < ids_.size(); ++i) {
      d.check_vertex(ids_[i]);
      if (i > 0 && d.order_of(ids_[i - 1]) >= d.order_of(ids_[i]))
        raise(errc::invalid_argument, "vertices not strictly increasing in vertex order");
    }
  }

  std::size_t size() const { return ids_.size(); }
  bool empty() const { return ids_.empty(); }
  VertexId operator[](std::size_t i) const { return ids_.at(i); }
  const std::vector<VertexId>& ids() const { return ids_; }

 private:
  std::vector<VertexId> ids_;
};

using VertexTuple = OrderedVertices;
using Interval = OrderedVertices;

// A directed walk along edges; weight is the product of edge weights, with the
// empty product 1 for a single-vertex path.
struct Path {
  std::vector<VertexId> vertices;
  Rational weight = Rational(1);

  VertexId source() const { return vertices.front(); }
  VertexId target() const { return vertices.back(); }

  VertexSet vertex_set(std::size_t n) const {
    VertexSet s(n);
    for (auto v : vertices) s.insert(v);
    return s;
  }
};

inline bool paths_intersect(const Path& p, const Path& q) {
  for (auto a : p.vertices)
    for (auto b : q.vertices)
      if (a == b) return true;
  return false;
}

struct PathSystem {
  std::vector<Path> paths;

  Rational weight() const {
    Rational w(1);
    for (const auto& p : paths) w *= p.weight;
    return w;
  }
};

// Sum of path weights u -> v by dynamic programming along the topological
// order; h(u, u) = 1 (the empty path).
inline Rational h_weight(const Dag& d, VertexId u, VertexId v) {
  d.check_vertex(u);
  d.check_vertex(v);
  std::vector<Rational> f(d.vertex_count(), Rational(0));
  f[u] = Rational(1);
  for (VertexId x : d.topo_order()) {
    if (f[x].is_zero()) continue;
    for (const auto& [dst, w] : d.out_edges(x)) f[dst] += f[x] * w;
  }
  return f[v];
}

// All h(u, x): one forward DP sweep.
inline std::vector<Rational> h_from(const Dag& d, VertexId u) {
  d.check_vertex(u);
  std::vector<Rational> f(d.vertex_count(), Rational(0));
  f[u] = Rational(1);
  for (VertexId x : d.topo_order()) {
    if (f[x].is_zero()) continue;
    for (const auto& [dst, w] : d.out_edges(x)) f[dst] += f[x] * w;
  }
  return f;
}

namespace detail {

inline void enumerate_paths_rec(const Dag& d, VertexId cur, VertexId v, const VertexSet& reaches_v,
                                Path& partial, std::vector<Path>& out, EnumBudget& budget) {
  if (cur == v) {
    budget.charge();
    out.push_back(partial);
    // fall through: v may have further edges back to itself? acyclic, so no.
    return;
  }
  for (const auto& [dst, w] : d.out_edges(cur)) {
    if (!reaches_v.contains(dst)) continue;
    partial.vertices.push_back(dst);
    Rational saved = partial.weight;
    partial.weight *= w;
    enumerate_paths_rec(d, dst, v, reaches_v, partial, out, budget);
    partial.weight = saved;
    partial.vertices.pop_back();
  }
}

}  // namespace detail

// Exhaustive DFS over all u -> v paths, each with its exact weight.
inline std::vector<Path> enumerate_paths(const Dag& d, VertexId u, VertexId v,
                                         EnumBudget& budget) {
  d.check_vertex(u);
  d.check_vertex(v);
  VertexSet reaches_v = d.ancestors(v);
  std::vector<Path> out;
  if (!reaches_v.contains(u)) return out;
  Path partial;
  partial.vertices.push_back(u);
  detail::enumerate_paths_rec(d, u, v, reaches_v, partial, out, budget);
  return out;
}

inline std::vector<Path> enumerate_paths(const Dag& d, VertexId u, VertexId v,
                                         std::size_t budget = kDefaultEnumerationBudget) {
  EnumBudget b{budget};
  return enumerate_paths(d, u, v, b);
}

namespace detail {

// Shared recursion for vertex-disjoint r-tuples of paths: leg i picks from
// choices[i], skipping paths that touch the vertices already used.
inline void disjoint_product_rec(const Dag& d, const std::vector<std::vector<Path>>& choices,
                                 const std::vector<std::vector<VertexSet>>& choice_sets,
                                 std::size_t leg, VertexSet& used, bool nonintersecting,
                                 PathSystem& partial, std::vector<PathSystem>& out,
                                 EnumBudget& budget) {
  if (leg == choices.size()) {
    budget.charge();
    out.push_back(partial);
    return;
  }
  for (std::size_t i = 0; i < choices[leg].size(); ++i) {
    const Path& p = choices[leg][i];
    if (nonintersecting && used.intersects(choice_sets[leg][i])) continue;
    budget.charge();
    partial.paths.push_back(p);
    VertexSet saved = used;
    if (nonintersecting) used.unite(choice_sets[leg][i]);
    disjoint_product_rec(d, choices, choice_sets, leg + 1, used, nonintersecting, partial, out,
                         budget);
    used = saved;
    partial.paths.pop_back();
  }
}

inline std::vector<PathSystem> systems_from_choices(const Dag& d,
                                                    std::vector<std::vector<Path>> choices,
                                                    bool nonintersecting, EnumBudget& budget) {
  // Constrained legs first: prunes the disjointness search much earlier.
  std::vector<std::size_t> leg_order(choices.size());
  for (std::size_t i = 0; i < leg_order.size(); ++i) leg_order[i] = i;
  std::stable_sort(leg_order.begin(), leg_order.end(), [&](std::size_t a, std::size_t b) {
    return choices[a].size() < choices[b].size();
  });
  std::vector<std::vector<Path>> ordered;
  ordered.reserve(choices.size());
  for (auto i : leg_order) ordered.push_back(std::move(choices[i]));

  std::vector<std::vector<VertexSet>> sets(ordered.size());
  for (std::size_t i = 0; i < ordered.size(); ++i) {
    sets[i].reserve(ordered[i].size());
    for (const auto& p : ordered[i]) sets[i].push_back(p.vertex_set(d.vertex_count()));
  }
  std::vector<PathSystem> out;
  PathSystem partial;
  VertexSet used(d.vertex_count());
  disjoint_product_rec(d, ordered, sets, 0, used, nonintersecting, partial, out, budget);
  // Restore the caller's leg order inside each system.
  for (auto& sys : out) {
    std::vector<Path> restored(sys.paths.size());
    for (std::size_t i = 0; i < leg_order.size(); ++i) restored[leg_order[i]] = sys.paths[i];
    sys.paths = std::move(restored);
  }
  return out;
}

}  // namespace detail

// All r-tuples (P_1..P_r) with P_i : u^(i) -> v^(i); with the flag set, only
// pairwise vertex-disjoint tuples are kept.
inline std::vector<PathSystem> enumerate_systems(const Dag& d, const VertexTuple& u,
                                                 const VertexTuple& v, bool nonintersecting,
                                                 EnumBudget& budget) {
  if (u.size() != v.size()) raise(errc::arity_mismatch, "|u| != |v|");
  std::vector<std::vector<Path>> choices(u.size());
  for (std::size_t i = 0; i < u.size(); ++i) choices[i] = enumerate_paths(d, u[i], v[i], budget);
  return detail::systems_from_choices(d, std::move(choices), nonintersecting, budget);
}

inline std::vector<PathSystem> enumerate_systems(const Dag& d, const VertexTuple& u,
                                                 const VertexTuple& v, bool nonintersecting,
                                                 std::size_t budget = kDefaultEnumerationBudget) {
  EnumBudget b{budget};
  return enumerate_systems(d, u, v, nonintersecting, b);
}

// All non-intersecting r-tuples with P_i ending at some vertex of I. Endpoint
// assignment is free; disjointness already forces endpoints to be distinct.
inline std::vector<PathSystem> enumerate_to_interval(const Dag& d, const VertexTuple& u,
                                                     const Interval& I, EnumBudget& budget) {
  std::vector<std::vector<Path>> choices(u.size());
  for (std::size_t i = 0; i < u.size(); ++i)
    for (std::size_t k = 0; k < I.size(); ++k)
      for (auto& p : enumerate_paths(d, u[i], I[k], budget)) choices[i].push_back(std::move(p));
  return detail::systems_from_choices(d, std::move(choices), true, budget);
}

inline std::vector<PathSystem> enumerate_to_interval(const Dag& d, const VertexTuple& u,
                                                     const Interval& I,
                                                     std::size_t budget = kDefaultEnumerationBudget) {
  EnumBudget b{budget};
  return enumerate_to_interval(d, u, I, b);
}

// Mirror: all non-intersecting tuples with Q_i from some vertex of J to v^(i).
inline std::vector<PathSystem> enumerate_from_interval(const Dag& d, const Interval& J,
                                                       const VertexTuple& v, EnumBudget& budget) {
  std::vector<std::vector<Path>> choices(v.size());
  for (std::size_t i = 0; i < v.size(); ++i)
    for (std::size_t k = 0; k < J.size(); ++k)
      for (auto& p : enumerate_paths(d, J[k], v[i], budget)) choices[i].push_back(std::move(p));
  return detail::systems_from_choices(d, std::move(choices), true, budget);
}

// D-compatibility of ordered sources with ordered targets: for every pair of
// sources i < i' and targets j > j', every path source_i -> target_j must meet
// every path source_i' -> target_j'. Verified by exhaustive path-pair check.
inline bool is_D_compatible(const Dag& d, const std::vector<VertexId>& sources,
                            const std::vector<VertexId>& targets,
                            std::size_t budget = kDefaultEnumerationBudget) {
  EnumBudget b{budget};
  std::map<std::pair<VertexId, VertexId>, std::pair<std::vector<Path>, std::vector<VertexSet>>>
      cache;
  auto get = [&](VertexId s, VertexId t)
      -> const std::pair<std::vector<Path>, std::vector<VertexSet>>& {
    auto key = std::make_pair(s, t);
    auto it = cache.find(key);
    if (it == cache.end()) {
      auto paths = enumerate_paths(d, s, t, b);
      std::vector<VertexSet> sets;
      sets.reserve(paths.size());
      for (const auto& p : paths) sets.push_back(p.vertex_set(d.vertex_count()));
      it = cache.emplace(key, std::make_pair(std::move(paths), std::move(sets))).first;
    }
    return it->second;
  };

  for (std::size_t i = 0; i < sources.size(); ++i)
    for (std::size_t ip = i + 1; ip < sources.size(); ++ip)
      for (std::size_t jp = 0; jp < targets.size(); ++jp)
        for (std::size_t j = jp + 1; j < targets.size(); ++j) {
          const auto& first = get(sources[i], targets[j]);
          if (first.first.empty()) continue;
          const auto& second = get(sources[ip], targets[jp]);
          for (const auto& sa : first.second)
            for (const auto& sb : second.second)
              if (!sa.intersects(sb)) return false;
        }
  return true;
}

namespace detail {

// Vertices lying on some x -> y path for x in from, y in to:
// union over x of descendants(x) ∩ (union over y of ancestors(y)).
inline VertexSet corridor(const Dag& d, const std::vector<VertexId>& from,
                          const std::vector<VertexId>& to) {
  VertexSet to_anc(d.vertex_count());
  for (auto y : to) to_anc.unite(d.ancestors(y));
  VertexSet out(d.vertex_count());
  for (auto x : from) {
    VertexSet r = d.descendants(x);
    r.intersect(to_anc);
    out.unite(r);
  }
  return out;
}

}  // namespace detail

// D-separated: no path in any P(j, v^(k)) (j in J) shares a vertex with any
// path in any P(u^(i), w) (w in I). A vertex lies on such a path exactly when
// it is reachable from the source and reaches the sink, so emptiness of the
// corridor intersection decides the predicate exactly.
inline bool is_D_separated(const Dag& d, const Interval& J, const VertexTuple& u,
                           const VertexTuple& v, const Interval& I) {
  VertexSet jv = detail::corridor(d, J.ids(), v.ids());
  VertexSet ui = detail::corridor(d, u.ids(), I.ids());
  jv.intersect(ui);
  return jv.empty();
}

}  // namespace pfpaths
