#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <utility>
#include <vector>

#include "ultratree/errors.hpp"
#include "ultratree/rational.hpp"
#include "ultratree/vertex_id.hpp"

namespace ultratree {

// Finite vertex-labeled tree. Vertices are kept sorted by id; the internal
// index of a vertex is its rank in that order. Immutable once built.
class LabeledTree {
 public:
  LabeledTree() = default;

  std::size_t size() const { return ids_.size(); }
  const std::vector<VertexId>& ids() const { return ids_; }
  const VertexId& id(int v) const { return ids_[static_cast<std::size_t>(v)]; }
  const Rat& label(int v) const { return labels_[static_cast<std::size_t>(v)]; }
  const std::vector<int>& neighbors(int v) const { return adj_[static_cast<std::size_t>(v)]; }
  bool is_frontier(int v) const { return frontier_[static_cast<std::size_t>(v)] != 0; }

  std::optional<int> find(const VertexId& id) const {
    auto it = std::lower_bound(ids_.begin(), ids_.end(), id);
    if (it == ids_.end() || !(*it == id)) return std::nullopt;
    return static_cast<int>(it - ids_.begin());
  }
  int require(const VertexId& id) const {
    auto v = find(id);
    if (!v) fail(Errc::UnknownVertex, "no vertex '" + id.to_string() + "'");
    return *v;
  }
  const Rat& label(const VertexId& id) const { return label(require(id)); }

  std::vector<std::pair<int, int>> edge_list() const {  // u < v, sorted
    std::vector<std::pair<int, int>> out;
    for (int v = 0; v < static_cast<int>(size()); ++v)
      for (int w : neighbors(v))
        if (v < w) out.emplace_back(v, w);
    return out;
  }

  friend LabeledTree build_tree(const std::vector<std::pair<VertexId, VertexId>>& edges,
                                const std::map<VertexId, Rat>& labels,
                                const std::vector<VertexId>& frontier);

 private:
  std::vector<VertexId> ids_;
  std::vector<Rat> labels_;
  std::vector<std::vector<int>> adj_;
  std::vector<char> frontier_;
};

// Validates and builds. Error precedence: NegativeLabel, SelfLoop,
// MissingLabel, DuplicateEdge, CycleDetected, Disconnected; messages name the
// offending vertex or edge.
inline LabeledTree build_tree(const std::vector<std::pair<VertexId, VertexId>>& edges,
                              const std::map<VertexId, Rat>& labels,
                              const std::vector<VertexId>& frontier = {}) {
  if (labels.empty()) fail(Errc::MalformedInput, "a tree needs at least one vertex");
  for (const auto& [id, value] : labels)
    if (value < 0) fail(Errc::NegativeLabel, "vertex '" + id.to_string() + "'");

  LabeledTree t;
  t.ids_.reserve(labels.size());
  t.labels_.reserve(labels.size());
  for (const auto& [id, value] : labels) {  // std::map iterates in id order
    t.ids_.push_back(id);
    t.labels_.push_back(value);
  }
  t.adj_.assign(t.ids_.size(), {});
  t.frontier_.assign(t.ids_.size(), 0);

  auto edge_name = [](const VertexId& a, const VertexId& b) {
    return "edge {" + a.to_string() + ", " + b.to_string() + "}";
  };

  std::vector<int> parent(t.ids_.size());
  std::iota(parent.begin(), parent.end(), 0);
  auto root_of = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };

  std::vector<std::pair<int, int>> seen;
  for (const auto& [a, b] : edges) {
    if (a == b) fail(Errc::SelfLoop, "vertex '" + a.to_string() + "'");
    auto ia = t.find(a), ib = t.find(b);
    if (!ia) fail(Errc::MissingLabel, "vertex '" + a.to_string() + "'");
    if (!ib) fail(Errc::MissingLabel, "vertex '" + b.to_string() + "'");
    int u = *ia, v = *ib;
    if (u > v) std::swap(u, v);
    seen.emplace_back(u, v);
  }
  std::sort(seen.begin(), seen.end());
  for (std::size_t i = 1; i < seen.size(); ++i)
    if (seen[i] == seen[i - 1])
      fail(Errc::DuplicateEdge, edge_name(t.id(seen[i].first), t.id(seen[i].second)));
  for (auto [u, v] : seen) {
    int ru = root_of(u), rv = root_of(v);
    if (ru == rv) fail(Errc::CycleDetected, edge_name(t.id(u), t.id(v)));
    parent[ru] = rv;
    t.adj_[static_cast<std::size_t>(u)].push_back(v);
    t.adj_[static_cast<std::size_t>(v)].push_back(u);
  }
  int r0 = root_of(0);
  for (int v = 1; v < static_cast<int>(t.size()); ++v)
    if (root_of(v) != r0)
      fail(Errc::Disconnected,
           "vertices '" + t.id(0).to_string() + "' and '" + t.id(v).to_string() + "'");

  for (auto& nbrs : t.adj_) std::sort(nbrs.begin(), nbrs.end());
  for (const VertexId& id : frontier) t.frontier_[static_cast<std::size_t>(t.require(id))] = 1;
  return t;
}

// A labeling is non-degenerate when every edge sees a positive label.
struct NondegeneracyVerdict {
  bool ok = true;
  int u = -1, v = -1;  // offending edge when !ok
};

inline NondegeneracyVerdict is_nondegenerate(const LabeledTree& t) {
  for (int v = 0; v < static_cast<int>(t.size()); ++v) {
    if (!(t.label(v) == 0)) continue;
    for (int w : t.neighbors(v))
      if (t.label(w) == 0) return {false, v < w ? v : w, v < w ? w : v};
  }
  return {};
}

struct Path {
  std::vector<VertexId> vertices;  // endpoints inclusive, consecutive adjacent
};

namespace detail {
// BFS parent array from src; trees are deep (rays), so no recursion anywhere.
inline std::vector<int> bfs_parents(const LabeledTree& t, int src) {
  std::vector<int> par(t.size(), -2);
  std::vector<int> queue{src};
  par[static_cast<std::size_t>(src)] = -1;
  for (std::size_t head = 0; head < queue.size(); ++head) {
    int v = queue[head];
    for (int w : t.neighbors(v))
      if (par[static_cast<std::size_t>(w)] == -2) {
        par[static_cast<std::size_t>(w)] = v;
        queue.push_back(w);
      }
  }
  return par;
}

// Subtree induced on keep-marked vertices; they must form a connected set.
inline LabeledTree induced(const LabeledTree& t, const std::vector<char>& keep) {
  std::map<VertexId, Rat> labels;
  std::vector<std::pair<VertexId, VertexId>> edges;
  std::vector<VertexId> frontier;
  for (int v = 0; v < static_cast<int>(t.size()); ++v) {
    if (!keep[static_cast<std::size_t>(v)]) continue;
    labels.emplace(t.id(v), t.label(v));
    if (t.is_frontier(v)) frontier.push_back(t.id(v));
    for (int w : t.neighbors(v))
      if (v < w && keep[static_cast<std::size_t>(w)]) edges.emplace_back(t.id(v), t.id(w));
  }
  return build_tree(edges, labels, frontier);
}
}  // namespace detail

inline Path path_between(const LabeledTree& t, const VertexId& a, const VertexId& b) {
  int u = t.require(a), v = t.require(b);
  auto par = detail::bfs_parents(t, u);
  std::vector<VertexId> rev;
  for (int x = v; x != -1; x = par[static_cast<std::size_t>(x)]) rev.push_back(t.id(x));
  std::reverse(rev.begin(), rev.end());
  return {std::move(rev)};
}

// Smallest subtree containing S: union of the paths from an anchor to each
// member. The result is anchor-independent (tested exhaustively).
inline LabeledTree convex_hull(const LabeledTree& t, const std::vector<VertexId>& s) {
  if (s.empty()) fail(Errc::EmptySet, "hull of the empty set");
  std::vector<int> members;
  members.reserve(s.size());
  for (const VertexId& id : s) members.push_back(t.require(id));
  int anchor = *std::min_element(members.begin(), members.end());
  auto par = detail::bfs_parents(t, anchor);
  std::vector<char> keep(t.size(), 0);
  keep[static_cast<std::size_t>(anchor)] = 1;
  for (int m : members)
    for (int x = m; !keep[static_cast<std::size_t>(x)]; x = par[static_cast<std::size_t>(x)])
      keep[static_cast<std::size_t>(x)] = 1;
  return detail::induced(t, keep);
}

struct Forest {
  std::vector<LabeledTree> components;  // ordered by their minimal vertex id
};

inline Forest remove_vertex(const LabeledTree& t, const VertexId& id) {
  if (t.size() < 2) fail(Errc::SingletonTree, "vertex '" + id.to_string() + "'");
  int gone = t.require(id);
  std::vector<int> comp(t.size(), -1);
  comp[static_cast<std::size_t>(gone)] = -2;
  Forest out;
  for (int seed = 0; seed < static_cast<int>(t.size()); ++seed) {
    if (comp[static_cast<std::size_t>(seed)] != -1) continue;
    std::vector<char> keep(t.size(), 0);
    std::vector<int> queue{seed};
    comp[static_cast<std::size_t>(seed)] = static_cast<int>(out.components.size());
    keep[static_cast<std::size_t>(seed)] = 1;
    for (std::size_t head = 0; head < queue.size(); ++head)
      for (int w : t.neighbors(queue[head]))
        if (comp[static_cast<std::size_t>(w)] == -1) {
          comp[static_cast<std::size_t>(w)] = comp[static_cast<std::size_t>(seed)];
          keep[static_cast<std::size_t>(w)] = 1;
          queue.push_back(w);
        }
    out.components.push_back(detail::induced(t, keep));
  }
  return out;
}

struct DegreeInfo {
  std::size_t degree = 0;
  bool frontier = false;  // materialized degree may undercount the full tree
};

inline DegreeInfo degree(const LabeledTree& t, const VertexId& id) {
  int v = t.require(id);
  return {t.neighbors(v).size(), t.is_frontier(v)};
}

}  // namespace ultratree
