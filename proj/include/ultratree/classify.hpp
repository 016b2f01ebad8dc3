#pragma once

#include <algorithm>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "ultratree/generator.hpp"

namespace ultratree {

// Witness that T = T_0 ∪ R for a finite tree T_0 and a ray R (the canonical
// one; they may overlap). T_0 is listed explicitly.
struct AlmostRayCertificate {
  std::vector<Address> t0_vertices;                      // sorted
  std::vector<std::pair<Address, Address>> t0_edges;     // (parent, child)

  bool covers(const TreeGenerator& gen, const Address& a) const {
    if (gen.ray_index(a)) return true;
    return std::binary_search(t0_vertices.begin(), t0_vertices.end(), a);
  }

  nlohmann::ordered_json to_json() const {
    nlohmann::ordered_json j;
    j["ray"] = {{"from_index", 1}};
    nlohmann::ordered_json verts = nlohmann::ordered_json::array();
    for (const Address& a : t0_vertices) verts.push_back(a.to_string());
    nlohmann::ordered_json edges = nlohmann::ordered_json::array();
    for (const auto& [p, c] : t0_edges) edges.push_back({p.to_string(), c.to_string()});
    j["t0"] = {{"vertices", std::move(verts)}, {"edges", std::move(edges)}};
    return j;
  }
};

enum class NotAlmostRayReason {
  NotInfinite,
  InfiniteDegreeVertex,
  TwoDisjointRays,
  InfinitelyManyVerticesOffEveryRay,
};

inline const char* reason_name(NotAlmostRayReason r) {
  switch (r) {
    case NotAlmostRayReason::NotInfinite: return "NotInfinite";
    case NotAlmostRayReason::InfiniteDegreeVertex: return "InfiniteDegreeVertex";
    case NotAlmostRayReason::TwoDisjointRays: return "TwoDisjointRays";
    case NotAlmostRayReason::InfinitelyManyVerticesOffEveryRay:
      return "InfinitelyManyVerticesOffEveryRay";
  }
  return "Unknown";
}

struct Classification {
  bool almost_ray = false;
  std::optional<AlmostRayCertificate> certificate;
  std::optional<NotAlmostRayReason> reason;
  std::vector<Address> witnesses;  // e.g. the fat vertex, or two ray starts

  nlohmann::ordered_json to_json() const {
    nlohmann::ordered_json j;
    j["almost_ray"] = almost_ray;
    if (certificate) j["certificate"] = certificate->to_json();
    if (reason) j["reason"] = reason_name(*reason);
    nlohmann::ordered_json w = nlohmann::ordered_json::array();
    for (const Address& a : witnesses) w.push_back(a.to_string());
    j["witnesses"] = std::move(w);
    return j;
  }
};

// Decides whether the generated tree is a ray plus a finite part, and either
// produces the explicit decomposition or one of the structural obstructions,
// checked in order: finiteness, a vertex of infinite degree, two disjoint
// rays, infinitely many vertices off every ray.
inline Classification classify_almost_ray(const TreeGenerator& gen) {
  Classification out;
  if (!gen.is_infinite()) {
    out.reason = NotAlmostRayReason::NotInfinite;
    return out;
  }
  if (auto fat = gen.infinite_degree_vertex()) {
    out.reason = NotAlmostRayReason::InfiniteDegreeVertex;
    out.witnesses.push_back(*fat);
    return out;
  }
  if (gen.multiple_disjoint_rays()) {
    out.reason = NotAlmostRayReason::TwoDisjointRays;
    // two starts of disjoint rays, for the record
    if (std::holds_alternative<FullBinaryGen>(gen.shape())) {
      out.witnesses.push_back(Address{}.child(0));
      out.witnesses.push_back(Address{}.child(1));
    } else if (const auto* g = std::get_if<GraftGen>(&gen.shape())) {
      if (g->base->contains_ray() && g->graft->contains_ray()) {
        out.witnesses.push_back(Address{});
        out.witnesses.push_back(g->at.child(0));
      }
    }
    return out;
  }
  // exactly one ray direction from here on
  if (!gen.off_ray_finite()) {
    out.reason = NotAlmostRayReason::InfinitelyManyVerticesOffEveryRay;
    // the first two side vertices witness the escape from any fixed ray
    if (auto tip = gen.tooth_tip(1)) out.witnesses.push_back(*tip);
    if (auto tip = gen.tooth_tip(2)) out.witnesses.push_back(*tip);
    return out;
  }

  AlmostRayCertificate cert;
  std::vector<Address> off = gen.off_ray_vertices();
  std::uint64_t reach = 0;  // how far down the ray T_0 must go to stay connected
  for (const Address& a : off)
    if (auto s = gen.ray_section(a)) reach = std::max(reach, *s);
  std::set<Address> t0(off.begin(), off.end());
  for (std::uint64_t n = 1; n <= reach; ++n) t0.insert(gen.ray_address(n));
  if (!off.empty() && t0.find(Address{}) == t0.end()) t0.insert(Address{});
  cert.t0_vertices.assign(t0.begin(), t0.end());
  for (const Address& a : cert.t0_vertices) {
    if (a.is_root()) continue;
    Address p = a.parent();
    if (t0.count(p)) cert.t0_edges.emplace_back(p, a);
  }
  out.almost_ray = true;
  out.certificate = std::move(cert);
  return out;
}

}  // namespace ultratree
