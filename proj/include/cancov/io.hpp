#pragma once

// JSON and CSV exchange formats. Files carry external point ids; in memory
// points are indices 0..n-1.

#include <fstream>
#include <map>
#include <sstream>
#include <string>

#include "json.hpp"

#include "cancov/canonical.hpp"
#include "cancov/cylinder.hpp"

namespace cancov {

using Json = nlohmann::ordered_json;

namespace detail {

inline std::map<std::int64_t, PointId> index_of_ids(const DiscretePack& pack) {
  std::map<std::int64_t, PointId> m;
  for (PointId p = 0; p < pack.size(); ++p) m[pack.ids()[p]] = p;
  return m;
}

inline PointId lookup(const std::map<std::int64_t, PointId>& m, const Json& id) {
  if (!id.is_number_integer()) throw Error(ErrorCode::BadInput, "point ids must be integers");
  const auto it = m.find(id.get<std::int64_t>());
  if (it == m.end()) throw Error(ErrorCode::BadInput, "unknown point id " + id.dump());
  return it->second;
}

template <class F>
auto parse_guard(F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const Json::exception& e) {
    throw Error(ErrorCode::BadInput, e.what());
  }
}

}  // namespace detail

inline Json to_json(const DiscretePack& pack) {
  Json j;
  j["points"] = pack.ids();
  Json dist = Json::array();
  for (PointId p = 0; p < pack.size(); ++p) {
    Json row = Json::array();
    for (PointId q = 0; q < pack.size(); ++q) row.push_back(pack.dist(p, q));
    dist.push_back(std::move(row));
  }
  j["dist"] = std::move(dist);
  Json b = Json::array();
  for (PointId p : pack.boundary()) b.push_back(pack.ids()[p]);
  j["boundary"] = std::move(b);
  const PackMeta& m = pack.meta();
  Json meta;
  meta["kind"] = to_string(m.kind);
  meta["known_dim"] = m.known_dim;
  meta["delta_res"] = pack.delta_res();
  meta["cylindrical"] = m.cylindrical;
  if (!m.coords.empty()) meta["coords"] = m.coords;
  if (!m.base_param.empty()) {
    meta["base_param"] = m.base_param;
    meta["base_periodic"] = m.base_periodic;
  }
  if (m.cylinder) {
    Json c;
    c["levels"] = m.cylinder->levels;
    c["base_of"] = m.cylinder->base_of;
    c["level_of"] = m.cylinder->level_of;
    c["grid"] = m.cylinder->grid;
    meta["cylinder"] = std::move(c);
  }
  j["meta"] = std::move(meta);
  return j;
}

inline DiscretePack pack_from_json(const Json& j, const Tolerances& tol = {}) {
  return detail::parse_guard([&] {
    const auto ids = j.at("points").get<std::vector<std::int64_t>>();
    const auto dist = j.at("dist").get<std::vector<std::vector<double>>>();
    std::map<std::int64_t, std::size_t> pos;
    for (std::size_t i = 0; i < ids.size(); ++i)
      if (!pos.emplace(ids[i], i).second) throw Error(ErrorCode::BadInput, "duplicate point id");
    std::vector<bool> mask(ids.size());
    for (const auto& b : j.at("boundary")) {
      const auto it = pos.find(b.get<std::int64_t>());
      if (it == pos.end()) throw Error(ErrorCode::BadInput, "boundary id not among points");
      mask[it->second] = true;
    }
    PackMeta meta;
    if (j.contains("meta")) {
      const Json& m = j["meta"];
      if (m.contains("kind")) meta.kind = pack_kind_from_string(m["kind"].get<std::string>());
      meta.known_dim = m.value("known_dim", -1);
      meta.cylindrical = m.value("cylindrical", false);
      if (m.contains("coords")) meta.coords = m["coords"].get<std::vector<std::vector<double>>>();
      if (m.contains("base_param")) meta.base_param = m["base_param"].get<std::vector<double>>();
      meta.base_periodic = m.value("base_periodic", false);
      if (m.contains("cylinder")) {
        const Json& c = m["cylinder"];
        CylinderLayout layout;
        layout.levels = c.at("levels").get<std::vector<double>>();
        layout.base_of = c.at("base_of").get<std::vector<PointId>>();
        layout.level_of = c.at("level_of").get<std::vector<double>>();
        layout.grid = c.at("grid").get<std::vector<std::vector<PointId>>>();
        meta.cylinder = std::move(layout);
      }
    }
    return validate_pack(ids, dist, mask, tol, std::move(meta));
  });
}

inline Json to_json(const ScaleLadder& ladder) { return ladder.radii(); }

inline ScaleLadder ladder_from_json(const Json& j) {
  return detail::parse_guard([&] { return ScaleLadder(j.get<std::vector<double>>()); });
}

inline Json to_json(const DiscretePack& pack, const Relation& e) {
  Json out = Json::array();
  for (auto [p, q] : e.pairs()) out.push_back({pack.ids()[p], pack.ids()[q]});
  return out;
}

inline Relation relation_from_json(const DiscretePack& pack, const Json& j) {
  return detail::parse_guard([&] {
    const auto idx = detail::index_of_ids(pack);
    std::vector<std::pair<PointId, PointId>> pairs;
    for (const auto& pq : j) {
      if (!pq.is_array() || pq.size() != 2) throw Error(ErrorCode::BadInput, "relation entries are [p,q] pairs");
      pairs.emplace_back(detail::lookup(idx, pq[0]), detail::lookup(idx, pq[1]));
    }
    return Relation(pack.size(), pairs);
  });
}

inline Json to_json(const DiscretePack& pack, const Cover& c, Target target) {
  Json members = Json::array();
  for (const auto& u : c.members) {
    Json m = Json::array();
    for (PointId p : u) m.push_back(pack.ids()[p]);
    members.push_back(std::move(m));
  }
  return Json{{"members", std::move(members)}, {"target", to_string(target)}};
}

inline Target target_from_string(const std::string& s) {
  if (s == "interior") return Target::interior;
  if (s == "boundary") return Target::boundary;
  if (s == "all") return Target::all;
  throw Error(ErrorCode::BadInput, "unknown cover target " + s);
}

inline Cover cover_from_json(const DiscretePack& pack, const Json& j) {
  return detail::parse_guard([&] {
    const auto idx = detail::index_of_ids(pack);
    Family members;
    for (const auto& m : j.at("members")) {
      PointSet u;
      for (const auto& id : m) u.push_back(detail::lookup(idx, id));
      members.push_back(make_set(std::move(u)));
    }
    const Target t = target_from_string(j.value("target", std::string("interior")));
    return make_cover(std::move(members), target_points(pack, t));
  });
}

inline std::string curve_csv(const ModulusCurve& c) {
  std::ostringstream os;
  os.precision(17);
  os << "t,value\n";
  for (const auto& s : c.samples()) os << s.t << ',' << s.value << '\n';
  return os.str();
}

inline Json to_json(const CurveVerdict& v) {
  Json curve = Json::array();
  for (const auto& s : v.curve.samples()) curve.push_back({s.t, s.value});
  return Json{{"verdict", to_string(v.verdict)}, {"floor_t", v.floor_t},   {"floor_value", v.floor_value},
              {"threshold", v.threshold},         {"monotone", v.monotone}, {"curve", std::move(curve)}};
}

inline Json to_json(const BoundCertificate& c, const DiscretePack& pack) {
  Json j{{"witness_point", pack.ids()[c.witness_point]},
         {"mult_at_witness", c.mult_at_witness},
         {"bound", c.bound},
         {"verdict", to_string(c.verdict)}};
  if (!c.unmet.empty()) j["unmet"] = c.unmet;
  return j;
}

inline Json to_json(const DiscretePack& pack, const PipelineReport& r) {
  const CanonicalResult& c = r.result;
  Json pack_info{{"kind", to_string(r.pack_kind)}, {"known_dim", r.known_dim}, {"size", pack.size()},
                 {"k_sup", pack.k_sup()},          {"delta_res", pack.delta_res()}};
  return Json{{"pack", std::move(pack_info)},
              {"provider", r.provider},
              {"ladder", to_json(c.ladder)},
              {"subsequence", c.subsequence},
              {"shift", c.shift},
              {"multiplicity", c.multiplicity},
              {"bound_dim_plus_2", r.bound_dim_plus_2},
              {"naive_bound_2dim_plus_2", r.naive_bound_2dim_plus_2},
              {"consecutive_common", r.consecutive_common},
              {"max_common_mult", r.max_common_mult},
              {"provider_max_mult", r.provider_max_mult},
              {"witness_ok", c.witness_ok},
              {"uniformity_verdict", to_json(c.uniformity)},
              {"cover", to_json(pack, c.cover, Target::interior)}};
}

inline Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::BadInput, "cannot open " + path);
  return detail::parse_guard([&] { return Json::parse(in); });
}

inline void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::BadInput, "cannot write " + path);
  out << text;
}

inline void write_json_file(const std::string& path, const Json& j) { write_text_file(path, j.dump(2) + "\n"); }

}  // namespace cancov
