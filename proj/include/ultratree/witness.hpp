#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"
#include "ultratree/diagnostics.hpp"
#include "ultratree/errors.hpp"
#include "ultratree/parallel.hpp"
#include "ultratree/scheme.hpp"
#include "ultratree/sequence.hpp"
#include "ultratree/truncation.hpp"

namespace ultratree {

// Vertices whose label equals value exactly, in id order.
inline std::vector<VertexId> level_set(const LabeledTree& tree, const Rat& value) {
  std::vector<VertexId> out;
  for (int v = 0; v < static_cast<int>(tree.size()); ++v)
    if (tree.label(v) == value) out.push_back(tree.id(v));
  return out;
}

// One named quantity tracked across the budget ladder, with a few
// representative members from the largest budget.
struct WitnessSet {
  std::string name;
  std::vector<std::uint64_t> budgets;
  std::vector<std::size_t> counts;
  std::vector<Address> sample;

  bool strictly_growing() const {
    for (std::size_t i = 1; i < counts.size(); ++i)
      if (counts[i] <= counts[i - 1]) return false;
    return true;
  }
};

// Machine-checkable evidence bundle accompanying a constructed labeling.
struct CaseWitness {
  std::string case_tag;  // "case1" | "case221" | "case222"
  std::vector<WitnessSet> sets;
  std::vector<std::size_t> subseq_indices;    // 1-based positions into the sequence
  std::vector<std::uint64_t> branch_indices;  // n_k per rank (case222 only)
  std::vector<std::size_t> wk_counts;         // |W_k| per rank (case222 only)

  const WitnessSet* set(const std::string& name) const {
    for (const WitnessSet& s : sets)
      if (s.name == name) return &s;
    return nullptr;
  }

  nlohmann::ordered_json to_json() const {
    nlohmann::ordered_json j;
    j["case"] = case_tag;
    j["sets"] = nlohmann::ordered_json::array();
    for (const WitnessSet& s : sets) {
      nlohmann::ordered_json js;
      js["name"] = s.name;
      js["budgets"] = s.budgets;
      js["counts"] = s.counts;
      js["sample"] = nlohmann::ordered_json::array();
      for (const Address& a : s.sample) js["sample"].push_back(a.to_string());
      j["sets"].push_back(std::move(js));
    }
    j["subsequence_indices"] = subseq_indices;
    if (!branch_indices.empty()) j["branch_indices"] = branch_indices;
    if (!wk_counts.empty()) j["wk_counts"] = wk_counts;
    return j;
  }
};

struct Constructed {
  LabelingScheme scheme;
  CaseWitness witness;
};

namespace detail {

constexpr std::size_t kSampleCap = 6;

inline void push_sample(std::vector<Address>& sample, const Address& a) {
  if (sample.size() < kSampleCap) sample.push_back(a);
}

inline void require_ladder(const std::vector<std::uint64_t>& ladder) {
  if (ladder.empty()) fail(Errc::PreconditionMismatch, "budget ladder is empty");
  for (std::size_t i = 1; i < ladder.size(); ++i)
    if (ladder[i] <= ladder[i - 1])
      fail(Errc::PreconditionMismatch, "budget ladder must be strictly increasing");
}

inline std::size_t count_label_one(const LabeledTree& tree, const MaterializedSequence& m) {
  std::size_t ones = 0;
  for (const Address& a : m.addresses)
    if (tree.label(VertexId::of_address(a)) == Rat(1)) ++ones;
  return ones;
}

}  // namespace detail

// Hub with unbounded degree gets label 0, the 2n-th component of the
// punctured tree gets 1/n, everything else 1. The witness tracks how many
// components the sequence has met per budget, the label-1 term counts, the
// level-1 set of the whole truncation, and the greedy 1/k subsequence.
inline Constructed construct_case1_labeling(const TreeGenerator& gen, const SequenceSpec& seq,
                                            const std::vector<std::uint64_t>& ladder) {
  detail::require_ladder(ladder);
  auto hub = gen.infinite_degree_vertex();
  if (!hub) fail(Errc::NoInfiniteDegreeVertex, "generator has no unbounded-degree vertex");
  LabelingScheme scheme = LabelingScheme::case_one(*hub);

  struct Slice {
    std::size_t components = 0, ones = 0, d_size = 0;
    std::vector<Address> comp_sample, one_sample;
    MaterializedSequence m;
    LabeledTree tree;
  };
  auto slices = parallel_map_index(ladder.size(), [&](std::size_t i) {
    Truncation tr = truncate(gen, scheme, ladder[i]);
    MaterializedSequence m = materialize(seq, tr);
    std::set<std::uint64_t> comps;
    Slice s;
    for (const Address& a : m.addresses) {
      auto c = gen.component_index(a, *hub);
      if (!c) continue;  // the hub itself
      if (comps.insert(*c).second) detail::push_sample(s.comp_sample, a);
      if (tr.tree.label(VertexId::of_address(a)) == Rat(1)) detail::push_sample(s.one_sample, a);
    }
    s.components = comps.size();
    s.ones = detail::count_label_one(tr.tree, m);
    s.d_size = level_set(tr.tree, Rat(1)).size();
    s.m = std::move(m);
    s.tree = std::move(tr.tree);
    return s;
  });

  CaseWitness w;
  w.case_tag = "case1";
  WitnessSet comps{"components-hit", ladder, {}, slices.back().comp_sample};
  WitnessSet ones{"label-1-terms", ladder, {}, slices.back().one_sample};
  WitnessSet d{"level-1-set", ladder, {}, {}};
  for (const auto& s : slices) {
    comps.counts.push_back(s.components);
    ones.counts.push_back(s.ones);
    d.counts.push_back(s.d_size);
  }
  if (!comps.strictly_growing())
    fail(Errc::SequenceMissesComponents,
         "sequence does not meet new components of the punctured tree at every budget");
  w.sets = {std::move(comps), std::move(ones), std::move(d)};
  w.subseq_indices = extract_cauchy_subsequence(slices.back().m, slices.back().tree).indices;
  return {std::move(scheme), std::move(w)};
}

// Spine vertex v_n gets 1/n, everything off the ray gets 1. Requires both
// halves of the sequence range (off-ray S, on-ray I) to keep growing; the
// witness subsequence is the on-ray part.
inline Constructed construct_case221_labeling(const TreeGenerator& gen, const SequenceSpec& seq,
                                              const std::vector<std::uint64_t>& ladder) {
  detail::require_ladder(ladder);
  if (!gen.has_canonical_ray())
    fail(Errc::PreconditionMismatch, "generator has no canonical ray");
  LabelingScheme scheme = LabelingScheme::harmonic_on_ray();

  struct Slice {
    std::size_t s_count = 0, i_count = 0, ones = 0;
    std::vector<Address> s_sample, i_sample;
    std::vector<std::size_t> on_ray_indices;
  };
  auto slices = parallel_map_index(ladder.size(), [&](std::size_t i) {
    Truncation tr = truncate(gen, scheme, ladder[i]);
    MaterializedSequence m = materialize(seq, tr);
    Slice s;
    for (std::size_t t = 0; t < m.addresses.size(); ++t) {
      if (gen.ray_index(m.addresses[t])) {
        ++s.i_count;
        detail::push_sample(s.i_sample, m.addresses[t]);
        s.on_ray_indices.push_back(t + 1);
      } else {
        ++s.s_count;
        detail::push_sample(s.s_sample, m.addresses[t]);
      }
    }
    s.ones = detail::count_label_one(tr.tree, m);
    return s;
  });

  CaseWitness w;
  w.case_tag = "case221";
  WitnessSet soff{"S-off-ray", ladder, {}, slices.back().s_sample};
  WitnessSet ion{"I-on-ray", ladder, {}, slices.back().i_sample};
  WitnessSet ones{"label-1-terms", ladder, {}, slices.back().s_sample};
  for (const auto& s : slices) {
    soff.counts.push_back(s.s_count);
    ion.counts.push_back(s.i_count);
    ones.counts.push_back(s.ones);
  }
  if (!soff.strictly_growing())
    fail(Errc::WitnessSetsNotGrowing, "off-ray set S stops growing across the ladder");
  if (!ion.strictly_growing())
    fail(Errc::WitnessSetsNotGrowing, "on-ray set I stops growing across the ladder");
  w.sets = {std::move(soff), std::move(ion), std::move(ones)};
  w.subseq_indices = slices.back().on_ray_indices;
  return {std::move(scheme), std::move(w)};
}

// Spine vertex v_n gets 1/n, qualifying side branches of even rank k get
// 1/n_k, everything else 1. The sequence must avoid the spine entirely;
// W_k is its trace in the rank-k branch.
inline Constructed construct_case222_labeling(const TreeGenerator& gen, const SequenceSpec& seq,
                                              const std::vector<std::uint64_t>& ladder) {
  detail::require_ladder(ladder);
  if (!gen.has_branch_structure())
    fail(Errc::NoBranchVertices, "generator has no qualifying side branches");
  LabelingScheme scheme = LabelingScheme::case_branch();

  struct Slice {
    std::size_t ranks = 0, in_branches = 0, ones = 0;
    std::vector<Address> branch_sample;
    std::map<std::uint64_t, std::size_t> wk;          // rank -> |W_k|
    std::map<std::uint64_t, std::uint64_t> spine_of;  // rank -> n_k
    std::vector<std::size_t> even_indices;
  };
  auto slices = parallel_map_index(ladder.size(), [&](std::size_t i) {
    Truncation tr = truncate(gen, scheme, ladder[i]);
    MaterializedSequence m = materialize(seq, tr);
    Slice s;
    std::set<std::uint64_t> seen_ranks;
    for (const Address& a : tr.bfs_order)
      if (auto rk = gen.branch_rank(a)) seen_ranks.insert(rk->first);
    s.ranks = seen_ranks.size();
    for (std::size_t t = 0; t < m.addresses.size(); ++t) {
      const Address& a = m.addresses[t];
      if (auto n = gen.ray_index(a))
        fail(Errc::RayNotDisjoint,
             "sequence term " + std::to_string(t + 1) + " = " + a.to_string() +
                 " lies on the ray",
             static_cast<std::int64_t>(t + 1));
      if (auto rk = gen.branch_rank(a)) {
        ++s.in_branches;
        detail::push_sample(s.branch_sample, a);
        ++s.wk[rk->first];
        s.spine_of[rk->first] = rk->second;
        if (rk->first % 2 == 0) s.even_indices.push_back(t + 1);
      }
    }
    s.ones = detail::count_label_one(tr.tree, m);
    return s;
  });

  CaseWitness w;
  w.case_tag = "case222";
  WitnessSet ranks{"branch-ranks-materialized", ladder, {}, {}};
  WitnessSet hits{"seq-terms-in-branches", ladder, {}, slices.back().branch_sample};
  WitnessSet ones{"label-1-terms", ladder, {}, {}};
  for (const auto& s : slices) {
    ranks.counts.push_back(s.ranks);
    hits.counts.push_back(s.in_branches);
    ones.counts.push_back(s.ones);
  }
  if (!ranks.strictly_growing())
    fail(Errc::NoBranchVertices, "qualifying side branches stop appearing across the ladder");
  const Slice& last = slices.back();
  if (last.wk.empty())
    fail(Errc::PreconditionMismatch, "sequence never meets a qualifying side branch");
  std::uint64_t max_rank = last.wk.rbegin()->first;
  w.branch_indices.reserve(max_rank);
  w.wk_counts.reserve(max_rank);
  for (std::uint64_t k = 1; k <= max_rank; ++k) {
    auto spine = gen.branch_spine_index(k);
    w.branch_indices.push_back(spine ? *spine : 0);
    auto it = last.wk.find(k);
    w.wk_counts.push_back(it == last.wk.end() ? 0 : it->second);
  }
  w.sets = {std::move(ranks), std::move(hits), std::move(ones)};
  w.subseq_indices = last.even_indices;
  return {std::move(scheme), std::move(w)};
}

}  // namespace ultratree
