#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"
#include "ultratree/classify.hpp"
#include "ultratree/diagnostics.hpp"
#include "ultratree/profile.hpp"
#include "ultratree/witness.hpp"

namespace ultratree {

enum class ReportStatus { ConsistentAtScale, Violated, Inconclusive };

inline const char* status_name(ReportStatus s) {
  switch (s) {
    case ReportStatus::ConsistentAtScale: return "consistent-at-scale";
    case ReportStatus::Violated: return "violated";
    default: return "inconclusive";
  }
}

struct Claim {
  std::string name;
  bool pass = false;
  std::string details;
};

struct DistanceFact {
  Address a, b;
  Rat value;
};

// Desk-scale verdict on one theorem instance. The verification block holds
// everything needed to replay the recorded distance facts from scratch.
struct TheoremReport {
  std::string theorem;   // "4.5" | "4.2"
  std::string instance;
  std::string case_tag;  // 4.5 only: almost-ray | case1 | case2.1 | case221 | case222
  std::vector<std::uint64_t> budgets;
  std::vector<Claim> claims;
  ReportStatus status = ReportStatus::Inconclusive;
  nlohmann::ordered_json instance_json;
  nlohmann::ordered_json verify_gen;     // generator backing the facts
  nlohmann::ordered_json verify_scheme;  // scheme backing the facts
  std::uint64_t verify_budget = 0;
  std::vector<DistanceFact> facts;
  std::optional<CaseWitness> witness;
  std::vector<BoundedProfile> profiles;        // 4.2: whole-space, one per radius
  std::vector<SubsetProfile> subset_profiles;  // 4.2: registry x radii

  nlohmann::ordered_json to_json() const {
    nlohmann::ordered_json j;
    j["theorem"] = theorem;
    j["instance"] = instance;
    if (!case_tag.empty()) j["case"] = case_tag;
    j["budgets"] = budgets;
    j["status"] = status_name(status);
    j["claims"] = nlohmann::ordered_json::array();
    for (const Claim& c : claims) {
      nlohmann::ordered_json jc;
      jc["name"] = c.name;
      jc["pass"] = c.pass;
      jc["details"] = c.details;
      j["claims"].push_back(std::move(jc));
    }
    j["inputs"] = instance_json;
    nlohmann::ordered_json v;
    v["gen"] = verify_gen;
    v["scheme"] = verify_scheme;
    v["budget"] = verify_budget;
    v["facts"] = nlohmann::ordered_json::array();
    for (const DistanceFact& f : facts) {
      nlohmann::ordered_json jf;
      jf["a"] = f.a.to_string();
      jf["b"] = f.b.to_string();
      jf["d"] = format_rat(f.value);
      v["facts"].push_back(std::move(jf));
    }
    j["verification"] = std::move(v);
    if (witness) j["witness"] = witness->to_json();
    if (!profiles.empty()) {
      j["profiles"] = nlohmann::ordered_json::array();
      for (const BoundedProfile& p : profiles) j["profiles"].push_back(p.to_json());
    }
    if (!subset_profiles.empty()) {
      j["subset_profiles"] = nlohmann::ordered_json::array();
      for (const SubsetProfile& p : subset_profiles) j["subset_profiles"].push_back(p.to_json());
    }
    return j;
  }

  // One row per (profile, budget): instance,budget,radius,count,verdict.
  std::string csv_summary() const {
    std::string out = "instance,budget,radius,count,verdict\n";
    for (const BoundedProfile& p : profiles)
      for (std::size_t i = 0; i < p.budgets.size(); ++i)
        out += instance + "," + std::to_string(p.budgets[i]) + "," + format_rat(p.radius) + "," +
               std::to_string(p.counts[i]) + "," + verdict_name(p.verdict) + "\n";
    return out;
  }
};

struct CheckConfig {
  std::vector<std::uint64_t> ladder{100, 200, 400, 800};
  std::vector<Rat> scale_grid;   // defaults to 1/2 .. 1/64
  std::vector<Rat> radius_grid;  // defaults to 1/2 .. 1/64
  std::uint64_t seed = 0;
  // Must comfortably exceed the inverse of the smallest grid scale, or
  // settling tails get cut off before they can be observed.
  std::size_t horizon_cap = 128;

  static CheckConfig defaults() {
    CheckConfig c;
    for (int k = 1; k <= 6; ++k) {
      c.scale_grid.push_back(Rat(1, 1 << k));
      c.radius_grid.push_back(Rat(1, 1 << k));
    }
    return c;
  }
};

namespace detail {

// Shared by the almost-ray and case-2.1 paths of the 4.5 check: extract the
// greedy subsequence and test, per grid scale, that the subsequence settling
// implies the full sequence settles.
struct EquivalenceOutcome {
  std::vector<Claim> claims;
  std::vector<DistanceFact> facts;
  bool violated = false;
  bool inconclusive = false;
};

inline EquivalenceOutcome equivalence_claims(const TreeGenerator& gen,
                                             const LabelingScheme& scheme,
                                             const SequenceSpec& seq, const CheckConfig& cfg) {
  EquivalenceOutcome out;
  Truncation tr = truncate(gen, scheme, cfg.ladder.back());
  MaterializedSequence m = materialize(seq, tr);
  UltrametricIndex ix(std::move(tr.tree));
  if (m.addresses.size() < 3) {
    out.claims.push_back({"sufficient-terms", false,
                          "only " + std::to_string(m.addresses.size()) +
                              " sequence terms materialized at the top budget"});
    out.inconclusive = true;
    return out;
  }
  std::size_t horizon = std::min(cfg.horizon_cap, m.addresses.size() - 1);
  CauchyDiagnostic full = gap_profile(m, ix, horizon);
  ExtractResult ext = extract_cauchy_subsequence(m, ix.tree());
  std::optional<CauchyDiagnostic> sub;
  if (ext.indices.size() >= 2) {
    MaterializedSequence msub = take(m, ext.indices);
    sub = gap_profile(msub, ix, std::min(cfg.horizon_cap, msub.addresses.size() - 1));
  }
  for (std::size_t n = 0; n < std::min<std::size_t>(4, full.horizon); ++n)
    out.facts.push_back({m.addresses[n], m.addresses[n + 1], full.gaps[n]});
  for (const Rat& eps : cfg.scale_grid) {
    bool sub_settles = sub && sub->settles_at(eps).has_value();
    bool full_settles = full.settles_at(eps).has_value();
    Claim c;
    c.name = "subsequence-cauchy-implies-sequence-cauchy@" + format_rat(eps);
    c.pass = !sub_settles || full_settles;
    if (!sub)
      c.details = "no extracted subsequence; implication vacuous";
    else if (c.pass)
      c.details = std::string("subsequence ") + (sub_settles ? "settles" : "does not settle") +
                  ", full sequence " + (full_settles ? "settles" : "does not settle");
    else {
      ScaleVerdict v = full.at_scale(eps);
      c.details = "subsequence settles but full gap " + std::to_string(*v.witness) +
                  " stays >= " + format_rat(eps);
      out.facts.push_back(
          {m.addresses[*v.witness - 1], m.addresses[*v.witness], full.gaps[*v.witness - 1]});
      out.violated = true;
    }
    out.claims.push_back(std::move(c));
  }
  return out;
}

// Max vertex degree inside the convex hull of the materialized range.
inline std::size_t hull_max_degree(const LabeledTree& tree, const MaterializedSequence& m) {
  if (m.addresses.empty()) return 0;
  std::vector<VertexId> ids;
  ids.reserve(m.addresses.size());
  for (const Address& a : m.addresses) ids.push_back(VertexId::of_address(a));
  LabeledTree hull = convex_hull(tree, ids);
  std::size_t best = 0;
  for (int v = 0; v < static_cast<int>(hull.size()); ++v)
    best = std::max(best, degree(hull, hull.id(v)).degree);
  return best;
}

}  // namespace detail

inline TheoremReport check_theorem_4_5(const TreeGenerator& gen, const LabelingScheme& scheme,
                                       const SequenceSpec& seq,
                                       const CheckConfig& cfg = CheckConfig::defaults()) {
  TheoremReport rep;
  rep.theorem = "4.5";
  rep.instance = gen.summary() + " / " + scheme.summary() + " / " + seq.summary();
  rep.budgets = cfg.ladder;
  rep.instance_json["gen"] = gen.to_json();
  rep.instance_json["scheme"] = scheme.to_json();
  rep.instance_json["seq"] = seq.to_json();
  rep.verify_gen = gen.to_json();
  rep.verify_scheme = scheme.to_json();
  rep.verify_budget = cfg.ladder.back();

  Classification cls = classify_almost_ray(gen);
  if (cls.almost_ray) {
    rep.case_tag = "almost-ray";
    auto out = detail::equivalence_claims(gen, scheme, seq, cfg);
    rep.claims = std::move(out.claims);
    rep.facts = std::move(out.facts);
    rep.status = out.violated      ? ReportStatus::Violated
                 : out.inconclusive ? ReportStatus::Inconclusive
                                    : ReportStatus::ConsistentAtScale;
    return rep;
  }

  // Empirical case decision on the hull of the materialized range.
  struct Slice {
    std::size_t hull_degree = 0, s_count = 0, i_count = 0;
  };
  auto slices = parallel_map_index(cfg.ladder.size(), [&](std::size_t i) {
    Truncation tr = truncate(gen, scheme, cfg.ladder[i]);
    MaterializedSequence m = materialize(seq, tr);
    Slice s;
    s.hull_degree = detail::hull_max_degree(tr.tree, m);
    if (gen.has_canonical_ray()) {
      for (const Address& a : m.addresses)
        gen.ray_index(a) ? ++s.i_count : ++s.s_count;
    }
    return s;
  });
  auto counts_of = [&](auto pick) {
    std::vector<std::size_t> v;
    for (const Slice& s : slices) v.push_back(pick(s));
    return v;
  };
  GrowthVerdict deg = growth_verdict(counts_of([](const Slice& s) { return s.hull_degree; }));
  GrowthVerdict sg = growth_verdict(counts_of([](const Slice& s) { return s.s_count; }));
  GrowthVerdict ig = growth_verdict(counts_of([](const Slice& s) { return s.i_count; }));

  if (deg == GrowthVerdict::Growing) {
    rep.case_tag = "case1";
    Constructed c = construct_case1_labeling(gen, seq, cfg.ladder);
    rep.witness = c.witness;
    rep.verify_scheme = c.scheme.to_json();
    Truncation tr = truncate(gen, c.scheme, cfg.ladder.back());
    MaterializedSequence m = materialize(seq, tr);
    UltrametricIndex ix(std::move(tr.tree));
    bool gaps_ok = true;
    std::string gap_details;
    for (std::size_t k = 1; k + 1 <= c.witness.subseq_indices.size(); ++k) {
      const Address& a = m.addresses[c.witness.subseq_indices[k - 1] - 1];
      const Address& b = m.addresses[c.witness.subseq_indices[k] - 1];
      Rat d = ix.distance(VertexId::of_address(a), VertexId::of_address(b));
      if (k <= 4 || d > harmonic(k)) rep.facts.push_back({a, b, d});
      if (d > harmonic(k)) {
        gaps_ok = false;
        gap_details = "gap " + std::to_string(k) + " is " + format_rat(d) + " > 1/" +
                      std::to_string(k);
      }
    }
    rep.claims.push_back({"greedy-gaps-dominated", gaps_ok,
                          gaps_ok ? std::to_string(c.witness.subseq_indices.size()) +
                                        " greedy indices, all gaps within schedule"
                                  : gap_details});
    const WitnessSet* ones = c.witness.set("label-1-terms");
    rep.claims.push_back({"label-1-terms-growing", ones && ones->strictly_growing(),
                          "label-1 term counts across the ladder"});
    const WitnessSet* d1 = c.witness.set("level-1-set");
    rep.claims.push_back({"level-1-set-growing", d1 && d1->strictly_growing(),
                          "level-1 vertex counts across the ladder"});
    bool all = true;
    for (const Claim& c2 : rep.claims) all = all && c2.pass;
    rep.status = all ? ReportStatus::ConsistentAtScale : ReportStatus::Violated;
    return rep;
  }

  if (!gen.has_canonical_ray()) {
    rep.claims.push_back({"case-decision", false,
                          "hull degree bounded and no canonical ray; cannot separate cases at "
                          "this scale"});
    rep.status = ReportStatus::Inconclusive;
    return rep;
  }

  if (sg == GrowthVerdict::Bounded) {
    rep.case_tag = "case2.1";
    auto out = detail::equivalence_claims(gen, scheme, seq, cfg);
    rep.claims.push_back({"case-decision", true, "off-ray range S stabilizes; hull is almost a ray"});
    for (Claim& c : out.claims) rep.claims.push_back(std::move(c));
    rep.facts = std::move(out.facts);
    rep.status = out.violated      ? ReportStatus::Violated
                 : out.inconclusive ? ReportStatus::Inconclusive
                                    : ReportStatus::ConsistentAtScale;
    return rep;
  }

  if (sg == GrowthVerdict::Growing && ig == GrowthVerdict::Growing) {
    rep.case_tag = "case221";
    Constructed c = construct_case221_labeling(gen, seq, cfg.ladder);
    rep.witness = c.witness;
    rep.verify_scheme = c.scheme.to_json();
    Truncation tr = truncate(gen, c.scheme, cfg.ladder.back());
    MaterializedSequence m = materialize(seq, tr);
    UltrametricIndex ix(std::move(tr.tree));
    MaterializedSequence on_ray = take(m, c.witness.subseq_indices);
    bool sub_ok = true;
    if (on_ray.addresses.size() >= 2) {
      CauchyDiagnostic dsub = gap_profile(on_ray, ix, on_ray.addresses.size() - 1);
      for (const Rat& eps : cfg.scale_grid) sub_ok = sub_ok && dsub.settles_at(eps).has_value();
      for (std::size_t n = 0; n < std::min<std::size_t>(3, dsub.horizon); ++n)
        rep.facts.push_back({on_ray.addresses[n], on_ray.addresses[n + 1], dsub.gaps[n]});
    } else {
      sub_ok = false;
    }
    rep.claims.push_back({"on-ray-subsequence-settles", sub_ok,
                          "on-ray subsequence settles at every grid scale"});
    std::size_t horizon = std::min(cfg.horizon_cap, m.addresses.size() - 1);
    CauchyDiagnostic full = gap_profile(m, ix, horizon);
    bool not_cauchy = !full.settles_at(cfg.scale_grid.front()).has_value();
    rep.claims.push_back({"full-sequence-not-cauchy@" + format_rat(cfg.scale_grid.front()),
                          not_cauchy, "label-1 terms keep the gap profile from settling"});
    const WitnessSet* ones = c.witness.set("label-1-terms");
    rep.claims.push_back({"label-1-terms-growing", ones && ones->strictly_growing(),
                          "label-1 term counts across the ladder"});
    bool all = true;
    for (const Claim& c2 : rep.claims) all = all && c2.pass;
    rep.status = all ? ReportStatus::ConsistentAtScale : ReportStatus::Violated;
    return rep;
  }

  if (sg == GrowthVerdict::Growing && ig != GrowthVerdict::Growing) {
    if (slices.back().i_count != 0) {
      rep.claims.push_back({"case-decision", false,
                            "range meets the canonical ray finitely often; shifting to a "
                            "disjoint ray is out of scope"});
      rep.status = ReportStatus::Inconclusive;
      return rep;
    }
    rep.case_tag = "case222";
    Constructed c = construct_case222_labeling(gen, seq, cfg.ladder);
    rep.witness = c.witness;
    rep.verify_scheme = c.scheme.to_json();
    Truncation tr = truncate(gen, c.scheme, cfg.ladder.back());
    MaterializedSequence m = materialize(seq, tr);
    UltrametricIndex ix(std::move(tr.tree));
    bool wk_ok = !c.witness.wk_counts.empty();
    for (std::size_t w : c.witness.wk_counts) wk_ok = wk_ok && w > 0;
    rep.claims.push_back({"wk-nonempty", wk_ok,
                          std::to_string(c.witness.wk_counts.size()) + " ranks materialized"});
    // even-rank pairs: exact distance must be max(1/n_k1, 1/n_k2)
    bool even_ok = true;
    std::string even_details;
    const auto& evens = c.witness.subseq_indices;
    for (std::size_t x = 0; x + 1 < std::min<std::size_t>(evens.size(), 5); ++x) {
      const Address& a = m.addresses[evens[x] - 1];
      const Address& b = m.addresses[evens[x + 1] - 1];
      auto ra = gen.branch_rank(a), rb = gen.branch_rank(b);
      Rat want = std::max(harmonic(ra->second), harmonic(rb->second));
      Rat got = ix.distance(VertexId::of_address(a), VertexId::of_address(b));
      rep.facts.push_back({a, b, got});
      if (got != want) {
        even_ok = false;
        even_details = a.to_string() + " vs " + b.to_string() + ": " + format_rat(got) +
                       " != " + format_rat(want);
      }
    }
    rep.claims.push_back({"even-rank-pair-distances", even_ok,
                          even_ok ? "pairs at distance max(1/n_k1, 1/n_k2)" : even_details});
    bool odd_ok = true;
    std::vector<std::size_t> odds;
    for (std::size_t t = 1; t <= m.addresses.size(); ++t) {
      auto rk = gen.branch_rank(m.addresses[t - 1]);
      if (rk && rk->first % 2 == 1) odds.push_back(t);
    }
    for (std::size_t x = 0; x + 1 < std::min<std::size_t>(odds.size(), 4); ++x) {
      const Address& a = m.addresses[odds[x] - 1];
      const Address& b = m.addresses[odds[x + 1] - 1];
      Rat got = ix.distance(VertexId::of_address(a), VertexId::of_address(b));
      rep.facts.push_back({a, b, got});
      odd_ok = odd_ok && got == Rat(1);
    }
    rep.claims.push_back({"odd-rank-pairwise-1", odd_ok, "odd-rank terms pairwise at distance 1"});
    bool all = true;
    for (const Claim& c2 : rep.claims) all = all && c2.pass;
    rep.status = all ? ReportStatus::ConsistentAtScale : ReportStatus::Violated;
    return rep;
  }

  rep.claims.push_back({"case-decision", false, "growth evidence is mixed within the ladder"});
  rep.status = ReportStatus::Inconclusive;
  return rep;
}

inline TheoremReport check_theorem_4_2(const TreeGenerator& gen, const LabelingScheme& scheme,
                                       const CheckConfig& cfg = CheckConfig::defaults()) {
  TheoremReport rep;
  rep.theorem = "4.2";
  rep.instance = gen.summary() + " / " + scheme.summary();
  rep.budgets = cfg.ladder;
  rep.instance_json["gen"] = gen.to_json();
  rep.instance_json["scheme"] = scheme.to_json();
  rep.verify_gen = gen.to_json();
  rep.verify_scheme = scheme.to_json();
  rep.verify_budget = cfg.ladder.back();

  Classification cls = classify_almost_ray(gen);
  rep.case_tag = cls.almost_ray ? "almost-ray" : "not-almost-ray";

  for (const Rat& r : cfg.radius_grid)
    rep.profiles.push_back(totally_bounded_profile(gen, scheme, r, cfg.ladder));

  std::vector<SubsetSpec> registry;
  if (gen.has_canonical_ray()) {
    registry.push_back(SubsetSpec::ray_tail(1));
    registry.push_back(SubsetSpec::ray_tail(5));
  }
  registry.push_back(SubsetSpec::level_set_of(Rat(1)));
  registry.push_back(SubsetSpec::random(cfg.seed, 50));

  // A subset qualifies when it keeps growing in size yet its covering count
  // stabilizes at every grid radius.
  std::vector<std::string> bounded_subsets;
  for (const SubsetSpec& spec : registry) {
    bool infinite_at_scale = true, bounded_all = true;
    for (const Rat& r : cfg.radius_grid) {
      SubsetProfile p = subset_profile(gen, scheme, spec, r, cfg.ladder);
      rep.subset_profiles.push_back(p);
      infinite_at_scale = infinite_at_scale && p.size_verdict == GrowthVerdict::Growing;
      bounded_all = bounded_all && p.cover_verdict == GrowthVerdict::Bounded;
    }
    if (infinite_at_scale && bounded_all) bounded_subsets.push_back(spec.name());
  }

  bool whole_bounded_all = true;
  const BoundedProfile* growing_example = nullptr;
  for (const BoundedProfile& p : rep.profiles) {
    if (p.verdict != GrowthVerdict::Bounded) whole_bounded_all = false;
    if (p.verdict == GrowthVerdict::Growing && !growing_example) growing_example = &p;
  }

  if (!bounded_subsets.empty()) {
    std::string names;
    for (const std::string& n : bounded_subsets) names += (names.empty() ? "" : ", ") + n;
    rep.claims.push_back({"bounded-infinite-subset", true, names});
  } else {
    rep.claims.push_back(
        {"bounded-infinite-subset", false, "no sampled subset profiles bounded at all radii"});
  }

  if (cls.almost_ray) {
    // Theorem direction under test: a bounded infinite subset forces the
    // whole family bounded. No qualifying subset makes the claim vacuous.
    bool pass = bounded_subsets.empty() || whole_bounded_all;
    Claim c;
    c.name = "subset-bounded-implies-space-bounded";
    c.pass = pass;
    if (pass)
      c.details = bounded_subsets.empty() ? "vacuous: no qualifying subset"
                                          : "whole space bounded at every grid radius";
    else {
      c.details = "whole space grows at radius " + format_rat(growing_example->radius);
      // Witness: representative vertices from distinct blocks at that radius.
      Truncation tr = truncate(gen, scheme, cfg.ladder.back());
      UltrametricIndex ix(std::move(tr.tree));
      Cover cover = partition_at_scale(ix, growing_example->radius);
      for (std::size_t b = 1; b < std::min<std::size_t>(cover.blocks.size(), 4); ++b) {
        const VertexId& x = cover.blocks[0].center;
        const VertexId& y = cover.blocks[b].center;
        rep.facts.push_back({x.address(), y.address(), ix.distance(x, y)});
      }
    }
    rep.claims.push_back(std::move(c));
    rep.status = pass ? ReportStatus::ConsistentAtScale : ReportStatus::Violated;
    return rep;
  }

  // Not almost a ray: report what this particular labeling exhibits — a
  // growing whole space, possibly alongside a bounded infinite subset — and
  // record level-1 separation facts when available.
  if (growing_example) {
    rep.claims.push_back({"whole-space-growing", true,
                          "N(r) grows at radius " + format_rat(growing_example->radius)});
    Truncation tr = truncate(gen, scheme, cfg.ladder.back());
    std::vector<VertexId> d1 = level_set(tr.tree, Rat(1));
    UltrametricIndex ix(std::move(tr.tree));
    bool sep_ok = true;
    for (std::size_t i = 0; i + 1 < std::min<std::size_t>(d1.size(), 4); ++i) {
      Rat d = ix.distance(d1[i], d1[i + 1]);
      rep.facts.push_back({d1[i].address(), d1[i + 1].address(), d});
      sep_ok = sep_ok && d >= Rat(1);
    }
    if (d1.size() >= 2)
      rep.claims.push_back(
          {"level-1-set-separated", sep_ok, "level-1 vertices pairwise at distance >= 1"});
  } else {
    rep.claims.push_back(
        {"whole-space-growing", false, "no grid radius shows strict growth for this labeling"});
  }
  rep.status = ReportStatus::ConsistentAtScale;
  return rep;
}

// Replays the distance facts of a serialized report against a fresh
// truncation; any exact mismatch fails.
inline bool reverify_report(const nlohmann::json& j) {
  try {
    const auto& v = j.at("verification");
    TreeGenerator gen = TreeGenerator::from_json(v.at("gen"));
    LabelingScheme scheme = LabelingScheme::from_json(v.at("scheme"));
    Truncation tr = truncate(gen, scheme, v.at("budget").get<std::uint64_t>());
    UltrametricIndex ix(std::move(tr.tree));
    for (const auto& f : v.at("facts")) {
      VertexId a = VertexId::parse(f.at("a").get<std::string>());
      VertexId b = VertexId::parse(f.at("b").get<std::string>());
      if (ix.distance(a, b) != parse_rat(f.at("d").get<std::string>())) return false;
    }
    return true;
  } catch (const Error&) {
    return false;
  } catch (const nlohmann::json::exception&) {
    return false;
  } catch (const std::invalid_argument&) {
    return false;
  }
}

}  // namespace ultratree
