#pragma once

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <vector>

#include "ultratree/errors.hpp"
#include "ultratree/index.hpp"
#include "ultratree/sequence.hpp"

namespace ultratree {

struct ScaleVerdict {
  bool holds = false;                   // every gap n >= start is < eps
  std::optional<std::size_t> witness;   // last violating gap index when it fails
};

// Consecutive-gap profile of a finite sequence prefix. Gap n (1-based) is
// d(x_n, x_{n+1}); horizon N means gaps 1..N are recorded.
struct CauchyDiagnostic {
  std::size_t horizon = 0;
  std::vector<Rat> gaps;      // gaps[n-1] = d(x_n, x_{n+1})
  std::vector<Rat> tail_sup;  // tail_sup[n-1] = max over gaps n..N

  ScaleVerdict at_scale(const Rat& eps, std::size_t start = 1) const {
    ScaleVerdict v;
    v.holds = true;
    for (std::size_t n = std::max<std::size_t>(start, 1); n <= horizon; ++n) {
      if (gaps[n - 1] >= eps) {
        v.holds = false;
        v.witness = n;
      }
    }
    return v;
  }

  // Minimal start index from which all recorded gaps stay below eps;
  // empty when even the final gap violates (no settling within horizon).
  std::optional<std::size_t> settles_at(const Rat& eps) const {
    std::size_t last_violation = 0;
    for (std::size_t n = 1; n <= horizon; ++n)
      if (gaps[n - 1] >= eps) last_violation = n;
    if (last_violation == horizon && horizon > 0) return std::nullopt;
    return last_violation + 1;
  }
};

inline CauchyDiagnostic gap_profile(const MaterializedSequence& m, const UltrametricIndex& ix,
                                    std::size_t n_gaps) {
  if (n_gaps == 0) fail(Errc::SequenceLeavesTruncation, "horizon must be at least 1");
  if (m.addresses.size() < n_gaps + 1) {
    std::size_t usable = m.addresses.empty() ? 0 : m.addresses.size() - 1;
    fail(Errc::SequenceLeavesTruncation,
         "sequence has " + std::to_string(m.addresses.size()) + " terms, need " +
             std::to_string(n_gaps + 1),
         static_cast<std::int64_t>(usable));
  }
  CauchyDiagnostic d;
  d.horizon = n_gaps;
  d.gaps.reserve(n_gaps);
  for (std::size_t n = 0; n < n_gaps; ++n)
    d.gaps.push_back(ix.distance(VertexId::of_address(m.addresses[n]),
                                 VertexId::of_address(m.addresses[n + 1])));
  d.tail_sup.assign(n_gaps, Rat(0));
  Rat running(0);
  for (std::size_t n = n_gaps; n-- > 0;) {
    running = std::max(running, d.gaps[n]);
    d.tail_sup[n] = running;
  }
  return d;
}

// Greedy schedule extraction: n_1 = 1 and n_k = min{i > n_{k-1} : l(x_i) <= 1/k}.
// Stops (rather than throws) when level k finds no qualifying term, recording
// the stalled level; callers decide whether a stall is an error.
struct ExtractResult {
  std::vector<std::size_t> indices;        // 1-based positions into the sequence
  std::optional<std::size_t> stalled_at;   // first level k with no qualifying term
};

inline ExtractResult extract_cauchy_subsequence(const MaterializedSequence& m,
                                                const LabeledTree& tree) {
  ExtractResult r;
  if (m.addresses.empty()) {
    r.stalled_at = 1;
    return r;
  }
  r.indices.push_back(1);
  std::size_t prev = 1;
  for (std::size_t k = 2;; ++k) {
    Rat bound = harmonic(k);
    std::optional<std::size_t> pick;
    for (std::size_t i = prev + 1; i <= m.addresses.size(); ++i) {
      if (tree.label(VertexId::of_address(m.addresses[i - 1])) <= bound) {
        pick = i;
        break;
      }
    }
    if (!pick) {
      r.stalled_at = k;
      return r;
    }
    r.indices.push_back(*pick);
    prev = *pick;
  }
}

// Restriction of a materialized sequence to a 1-based index list.
inline MaterializedSequence take(const MaterializedSequence& m,
                                 const std::vector<std::size_t>& indices) {
  MaterializedSequence out;
  out.hit_truncation_wall = m.hit_truncation_wall;
  for (std::size_t i : indices) {
    if (i == 0 || i > m.addresses.size())
      fail(Errc::UnknownVertex, "subsequence index " + std::to_string(i) + " out of range");
    out.addresses.push_back(m.addresses[i - 1]);
    out.tree_index.push_back(m.tree_index[i - 1]);
  }
  return out;
}

// Common subsequence of two distinct-term sequences: walk a in order, pairing
// each shared term whose position in b lies beyond the previous pick.
struct CommonSubsequence {
  std::vector<std::size_t> a_indices;  // 1-based, strictly increasing
  std::vector<std::size_t> b_indices;  // 1-based, strictly increasing
};

inline CommonSubsequence common_subsequence(const MaterializedSequence& a,
                                            const MaterializedSequence& b) {
  std::map<Address, std::size_t> pos_b;
  for (std::size_t j = 0; j < b.addresses.size(); ++j) pos_b.emplace(b.addresses[j], j + 1);
  CommonSubsequence out;
  std::size_t last_b = 0;
  for (std::size_t i = 1; i <= a.addresses.size(); ++i) {
    auto it = pos_b.find(a.addresses[i - 1]);
    if (it == pos_b.end() || it->second <= last_b) continue;
    out.a_indices.push_back(i);
    out.b_indices.push_back(it->second);
    last_b = it->second;
  }
  if (out.a_indices.empty())
    fail(Errc::FiniteIntersectionAtScale, "sequences share no usable terms at this budget");
  return out;
}

}  // namespace ultratree
