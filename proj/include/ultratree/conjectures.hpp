#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"
#include "ultratree/errors.hpp"
#include "ultratree/index.hpp"
#include "ultratree/parallel.hpp"
#include "ultratree/profile.hpp"
#include "ultratree/truncation.hpp"

namespace ultratree {

// Cluster-count trajectory at one scale across the budget ladder.
struct Trend {
  Rat epsilon;
  std::vector<std::uint64_t> budgets;
  std::vector<std::size_t> counts;
  std::string trend;  // "stabilizes@c" | "growing" | "mixed"
};

// Desk-scale evidence for the accumulation-point conjectures. Always labeled
// EXPLORATORY: cluster counts on truncations support or challenge, they never
// decide statements about completions.
struct ConjectureReport {
  std::string which;  // "5.1" | "5.2"
  std::string instance;
  std::size_t mass = 1;
  std::vector<Trend> trends;
  nlohmann::ordered_json instance_json;

  nlohmann::ordered_json to_json() const {
    nlohmann::ordered_json j;
    j["conjecture"] = which;
    j["label"] = "EXPLORATORY";
    j["instance"] = instance;
    j["mass"] = mass;
    j["trends"] = nlohmann::ordered_json::array();
    for (const Trend& t : trends) {
      nlohmann::ordered_json jt;
      jt["epsilon"] = format_rat(t.epsilon);
      jt["budgets"] = t.budgets;
      jt["counts"] = t.counts;
      jt["trend"] = t.trend;
      j["trends"].push_back(std::move(jt));
    }
    j["inputs"] = instance_json;
    return j;
  }

  std::string to_csv() const {
    std::string out = "conjecture,epsilon,budget,clusters,trend\n";
    for (const Trend& t : trends)
      for (std::size_t i = 0; i < t.budgets.size(); ++i)
        out += which + "," + format_rat(t.epsilon) + "," + std::to_string(t.budgets[i]) + "," +
               std::to_string(t.counts[i]) + "," + t.trend + "\n";
    return out;
  }
};

inline ConjectureReport conjecture_experiment(const std::string& which, const TreeGenerator& gen,
                                              const LabelingScheme& scheme,
                                              const std::vector<Rat>& eps_grid, std::size_t mass,
                                              const std::vector<std::uint64_t>& ladder) {
  if (which != "5.1" && which != "5.2")
    fail(Errc::PreconditionMismatch, "unknown conjecture '" + which + "'");
  if (ladder.empty()) fail(Errc::PreconditionMismatch, "budget ladder is empty");
  if (which == "5.1" && !gen.locally_finite())
    fail(Errc::PreconditionMismatch, "conjecture 5.1 experiments need a locally finite generator");
  if (which == "5.2") {
    if (gen.contains_ray())
      fail(Errc::PreconditionMismatch, "conjecture 5.2 experiments need a rayless generator");
    if (gen.infinite_degree_count() < 1)
      fail(Errc::PreconditionMismatch,
           "conjecture 5.2 experiments need an unbounded-degree vertex");
  }

  ConjectureReport rep;
  rep.which = which;
  rep.instance = gen.summary() + " / " + scheme.summary();
  rep.mass = mass;
  rep.instance_json["gen"] = gen.to_json();
  rep.instance_json["scheme"] = scheme.to_json();

  for (const Rat& eps : eps_grid) {
    Trend t;
    t.epsilon = eps;
    t.budgets = ladder;
    t.counts = parallel_map_index(ladder.size(), [&](std::size_t i) {
      Truncation tr = truncate(gen, scheme, ladder[i]);
      UltrametricIndex ix(std::move(tr.tree));
      return epsilon_clusters(ix, eps, mass).clusters.size();
    });
    switch (growth_verdict(t.counts)) {
      case GrowthVerdict::Growing: t.trend = "growing"; break;
      case GrowthVerdict::Bounded: t.trend = "stabilizes@" + std::to_string(t.counts.back()); break;
      default: t.trend = "mixed"; break;
    }
    rep.trends.push_back(std::move(t));
  }
  return rep;
}

}  // namespace ultratree
