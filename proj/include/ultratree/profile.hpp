#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"
#include "ultratree/errors.hpp"
#include "ultratree/index.hpp"
#include "ultratree/parallel.hpp"
#include "ultratree/sequence.hpp"
#include "ultratree/truncation.hpp"
#include "ultratree/witness.hpp"

namespace ultratree {

enum class GrowthVerdict { Bounded, Growing, Inconclusive };

inline const char* verdict_name(GrowthVerdict v) {
  switch (v) {
    case GrowthVerdict::Bounded: return "bounded";
    case GrowthVerdict::Growing: return "growing";
    default: return "inconclusive";
  }
}

// Desk-scale trend of a count along a budget ladder: strictly increasing
// means growing; a stabilized tail (last two equal) means bounded.
inline GrowthVerdict growth_verdict(const std::vector<std::size_t>& counts) {
  if (counts.size() < 2) return GrowthVerdict::Inconclusive;
  bool strict = true;
  for (std::size_t i = 1; i < counts.size(); ++i)
    if (counts[i] <= counts[i - 1]) strict = false;
  if (strict) return GrowthVerdict::Growing;
  if (counts[counts.size() - 1] == counts[counts.size() - 2]) return GrowthVerdict::Bounded;
  return GrowthVerdict::Inconclusive;
}

// Covering numbers N(r) of whole truncations along a ladder.
struct BoundedProfile {
  Rat radius;
  std::vector<std::uint64_t> budgets;
  std::vector<std::size_t> counts;
  GrowthVerdict verdict = GrowthVerdict::Inconclusive;

  nlohmann::ordered_json to_json() const {
    nlohmann::ordered_json j;
    j["radius"] = format_rat(radius);
    j["budgets"] = budgets;
    j["counts"] = counts;
    j["verdict"] = verdict_name(verdict);
    return j;
  }
};

inline BoundedProfile totally_bounded_profile(const TreeGenerator& gen,
                                              const LabelingScheme& scheme, const Rat& radius,
                                              const std::vector<std::uint64_t>& ladder) {
  BoundedProfile p;
  p.radius = radius;
  p.budgets = ladder;
  p.counts = parallel_map_index(ladder.size(), [&](std::size_t i) {
    Truncation tr = truncate(gen, scheme, ladder[i]);
    UltrametricIndex ix(std::move(tr.tree));
    return partition_at_scale(ix, radius).blocks.size();
  });
  p.verdict = growth_verdict(p.counts);
  return p;
}

namespace detail {

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

inline std::uint64_t address_hash(const Address& a, std::uint64_t seed) {
  std::uint64_t h = 1469598103934665603ULL;  // FNV-1a over the canonical text
  for (char c : a.to_string()) h = (h ^ static_cast<unsigned char>(c)) * 1099511628211ULL;
  return splitmix64(h ^ seed);
}

}  // namespace detail

// Named families of vertex subsets used to search Theorem-style existentials:
// ray tails, exact label level sets, seeded random samples, sequence ranges.
struct SubsetSpec {
  enum class Kind { RayTail, LevelSet, Random, SeqRange };
  Kind kind = Kind::RayTail;
  std::uint64_t start = 1;           // RayTail: v_start, v_{start+1}, ...
  Rat value;                         // LevelSet
  std::uint64_t seed = 0;            // Random
  unsigned percent = 50;             // Random
  std::optional<SequenceSpec> seq;   // SeqRange

  static SubsetSpec ray_tail(std::uint64_t start) {
    SubsetSpec s;
    s.kind = Kind::RayTail;
    s.start = start;
    return s;
  }
  static SubsetSpec level_set_of(Rat value) {
    SubsetSpec s;
    s.kind = Kind::LevelSet;
    s.value = std::move(value);
    return s;
  }
  static SubsetSpec random(std::uint64_t seed, unsigned percent) {
    if (percent == 0 || percent > 100)
      fail(Errc::PreconditionMismatch, "random subset percent must be in 1..100");
    SubsetSpec s;
    s.kind = Kind::Random;
    s.seed = seed;
    s.percent = percent;
    return s;
  }
  static SubsetSpec seq_range(SequenceSpec seq) {
    SubsetSpec s;
    s.kind = Kind::SeqRange;
    s.seq = std::move(seq);
    return s;
  }

  std::string name() const {
    switch (kind) {
      case Kind::RayTail: return "ray-tail(" + std::to_string(start) + ")";
      case Kind::LevelSet: return "level-set(" + format_rat(value) + ")";
      case Kind::Random:
        return "random(seed=" + std::to_string(seed) + "," + std::to_string(percent) + "%)";
      default: return "seq-range(" + seq->summary() + ")";
    }
  }

  // Materialized members within one truncation, in BFS order.
  std::vector<Address> members(const TreeGenerator& gen, const Truncation& tr) const {
    std::vector<Address> out;
    switch (kind) {
      case Kind::RayTail:
        for (const Address& a : tr.bfs_order) {
          auto ri = gen.ray_index(a);
          if (ri && *ri >= start) out.push_back(a);
        }
        break;
      case Kind::LevelSet:
        for (const VertexId& v : level_set(tr.tree, value)) out.push_back(v.address());
        break;
      case Kind::Random:
        for (const Address& a : tr.bfs_order)
          if (detail::address_hash(a, seed) % 100 < percent) out.push_back(a);
        break;
      case Kind::SeqRange:
        out = materialize(*seq, tr).addresses;
        break;
    }
    return out;
  }
};

// Trace of one subset across the ladder: its size (is it infinite at scale?)
// and how many partition blocks at the given radius it meets (its own
// covering number, since ultrametric balls restrict to balls).
struct SubsetProfile {
  std::string subset;
  Rat radius;
  std::vector<std::uint64_t> budgets;
  std::vector<std::size_t> sizes;
  std::vector<std::size_t> counts;
  GrowthVerdict size_verdict = GrowthVerdict::Inconclusive;
  GrowthVerdict cover_verdict = GrowthVerdict::Inconclusive;

  nlohmann::ordered_json to_json() const {
    nlohmann::ordered_json j;
    j["subset"] = subset;
    j["radius"] = format_rat(radius);
    j["budgets"] = budgets;
    j["sizes"] = sizes;
    j["counts"] = counts;
    j["size_verdict"] = verdict_name(size_verdict);
    j["cover_verdict"] = verdict_name(cover_verdict);
    return j;
  }
};

inline SubsetProfile subset_profile(const TreeGenerator& gen, const LabelingScheme& scheme,
                                    const SubsetSpec& spec, const Rat& radius,
                                    const std::vector<std::uint64_t>& ladder) {
  SubsetProfile p;
  p.subset = spec.name();
  p.radius = radius;
  p.budgets = ladder;
  auto slices = parallel_map_index(ladder.size(), [&](std::size_t i) {
    Truncation tr = truncate(gen, scheme, ladder[i]);
    std::vector<Address> members = spec.members(gen, tr);
    UltrametricIndex ix(std::move(tr.tree));
    Cover cover = partition_at_scale(ix, radius);
    std::map<Address, std::size_t> block_of;
    for (std::size_t b = 0; b < cover.blocks.size(); ++b)
      for (const VertexId& v : cover.blocks[b].members) block_of.emplace(v.address(), b);
    std::set<std::size_t> hit;
    for (const Address& a : members) hit.insert(block_of.at(a));
    return std::pair<std::size_t, std::size_t>(members.size(), hit.size());
  });
  for (const auto& [size, blocks] : slices) {
    p.sizes.push_back(size);
    p.counts.push_back(blocks);
  }
  p.size_verdict = growth_verdict(p.sizes);
  p.cover_verdict = growth_verdict(p.counts);
  return p;
}

}  // namespace ultratree
