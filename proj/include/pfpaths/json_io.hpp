#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "pfpaths/dag.hpp"
#include "pfpaths/error.hpp"
#include "pfpaths/gf.hpp"
#include "pfpaths/measure.hpp"
#include "pfpaths/rational.hpp"

namespace pfpaths {

using nlohmann::json;

// A graph document: the dag, the name table, and the named vertex sets used
// by the identity queries. Block structure is optional and only used by the
// multi-block family.
struct GraphDoc {
  Dag dag{0, {}, {}};
  std::map<std::string, VertexId> by_name;
  std::map<std::string, std::vector<VertexId>> sets;
  std::vector<std::vector<VertexId>> u_blocks, v_blocks, sink_intervals, source_intervals;
  std::vector<int> tau;
};

namespace detail {

inline const json& require(const json& j, const char* key) {
  auto it = j.find(key);
  if (it == j.end()) raise(errc::parse_error, std::string("missing key '") + key + "'");
  return *it;
}

inline Rational parse_rational(const json& j) {
  if (j.is_number_integer()) return Rational(j.get<long>());
  if (j.is_string()) return Rational::parse(j.get<std::string>());
  raise(errc::parse_error, "rational must be an integer or a 'p/q' string");
}

}  // namespace detail

// Schema:
// {"vertices":[{"id":str,"order":int}],
//  "edges":[{"src":str,"dst":str,"w":"p/q"}],
//  "sets":{"u":[...],"v":[...],"I":[...],"J":[...]},
//  "blocks":{"u":[[...]],"sink":[[...]],"v":[[...]],"source":[[...]],
//            "tau":["u0","B0","u1"]}}            (blocks optional)
inline GraphDoc graph_from_json(const json& j) {
  try {
    GraphDoc doc;
    const json& vertices = detail::require(j, "vertices");
    if (!vertices.is_array() || vertices.empty())
      raise(errc::parse_error, "vertices must be a non-empty array");
    std::vector<std::size_t> order;
    std::vector<std::string> labels;
    for (const auto& v : vertices) {
      std::string id = detail::require(v, "id").get<std::string>();
      if (doc.by_name.count(id)) raise(errc::parse_error, "duplicate vertex id '" + id + "'");
      doc.by_name[id] = labels.size();
      labels.push_back(id);
      order.push_back(detail::require(v, "order").get<std::size_t>());
    }
    std::vector<EdgeSpec> edges;
    for (const auto& e : detail::require(j, "edges")) {
      std::string src = detail::require(e, "src").get<std::string>();
      std::string dst = detail::require(e, "dst").get<std::string>();
      if (!doc.by_name.count(src) || !doc.by_name.count(dst))
        raise(errc::parse_error, "edge references unknown vertex");
      edges.push_back({doc.by_name[src], doc.by_name[dst],
                       detail::parse_rational(detail::require(e, "w"))});
    }
    const std::size_t vertex_count = labels.size();
    doc.dag = Dag(vertex_count, std::move(order), std::move(edges), std::move(labels));

    auto to_ids = [&](const json& arr) {
      std::vector<VertexId> ids;
      for (const auto& name : arr) {
        std::string s = name.get<std::string>();
        auto it = doc.by_name.find(s);
        if (it == doc.by_name.end()) raise(errc::parse_error, "unknown vertex '" + s + "'");
        ids.push_back(it->second);
      }
      return ids;
    };
    if (j.contains("sets"))
      for (const auto& [key, arr] : j.at("sets").items()) doc.sets[key] = to_ids(arr);
    if (j.contains("blocks")) {
      const json& b = j.at("blocks");
      auto to_groups = [&](const char* key) {
        std::vector<std::vector<VertexId>> out;
        if (b.contains(key))
          for (const auto& g : b.at(key)) out.push_back(to_ids(g));
        return out;
      };
      doc.u_blocks = to_groups("u");
      doc.sink_intervals = to_groups("sink");
      doc.v_blocks = to_groups("v");
      doc.source_intervals = to_groups("source");
      if (b.contains("tau"))
        for (const auto& t : b.at("tau")) {
          std::string s = t.get<std::string>();
          if (s.size() < 2 || (s[0] != 'u' && s[0] != 'B'))
            raise(errc::parse_error, "tau entries look like 'u0' or 'B0'");
          int idx = std::stoi(s.substr(1));
          doc.tau.push_back(s[0] == 'u' ? idx : -idx - 1);
        }
    }
    return doc;
  } catch (const Error&) {
    throw;
  } catch (const std::exception& e) {
    raise(errc::parse_error, e.what());
  }
}

inline json graph_to_json(const Dag& d,
                          const std::map<std::string, std::vector<VertexId>>& sets = {}) {
  json j;
  j["vertices"] = json::array();
  for (VertexId v = 0; v < d.vertex_count(); ++v)
    j["vertices"].push_back({{"id", d.label(v)}, {"order", d.order_of(v)}});
  j["edges"] = json::array();
  for (const auto& e : d.edge_list())
    j["edges"].push_back(
        {{"src", d.label(e.src)}, {"dst", d.label(e.dst)}, {"w", e.weight.str()}});
  if (!sets.empty()) {
    json s;
    for (const auto& [key, ids] : sets) {
      json arr = json::array();
      for (auto v : ids) arr.push_back(d.label(v));
      s[key] = arr;
    }
    j["sets"] = s;
  }
  return j;
}

// Measure schema:
// {"support":["p/q",...], "masses":["p/q",...],
//  "families":[[["p/q" per support point], ...], ...]}
struct MeasureDoc {
  DiscreteMeasure measure{{}, {}};
  std::vector<std::vector<FunctionTable>> families;
};

inline MeasureDoc measure_from_json(const json& j) {
  try {
    std::vector<Rational> support, masses;
    for (const auto& x : detail::require(j, "support")) support.push_back(detail::parse_rational(x));
    for (const auto& w : detail::require(j, "masses")) masses.push_back(detail::parse_rational(w));
    if (support.empty()) raise(errc::parse_error, "empty support");
    MeasureDoc doc{DiscreteMeasure(std::move(support), std::move(masses)), {}};
    if (j.contains("families"))
      for (const auto& fam : j.at("families")) {
        std::vector<FunctionTable> tables;
        for (const auto& tbl : fam) {
          FunctionTable t;
          for (const auto& x : tbl) t.values.push_back(detail::parse_rational(x));
          if (t.values.size() != doc.measure.size())
            raise(errc::parse_error, "table length does not match support");
          tables.push_back(std::move(t));
        }
        doc.families.push_back(std::move(tables));
      }
    return doc;
  } catch (const Error&) {
    throw;
  } catch (const std::exception& e) {
    raise(errc::parse_error, e.what());
  }
}

inline json measure_to_json(const DiscreteMeasure& mu,
                            const std::vector<std::vector<FunctionTable>>& families) {
  json j;
  j["support"] = json::array();
  for (const auto& x : mu.support) j["support"].push_back(x.str());
  j["masses"] = json::array();
  for (const auto& w : mu.masses) j["masses"].push_back(w.str());
  j["families"] = json::array();
  for (const auto& fam : families) {
    json f = json::array();
    for (const auto& t : fam) {
      json arr = json::array();
      for (const auto& v : t.values) arr.push_back(v.str());
      f.push_back(arr);
    }
    j["families"].push_back(f);
  }
  return j;
}

// FNV-1a over the canonical serialization; stable fixture identity for
// reports.
inline std::string graph_hash(const Dag& d) {
  std::string s = graph_to_json(d).dump();
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return std::string(buf);
}

}  // namespace pfpaths
