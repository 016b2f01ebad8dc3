#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <optional>
#include <ostream>
#include <random>
#include <utility>
#include <vector>

#include "ultratree/labeled_tree.hpp"

namespace ultratree {

// Distance oracle for d(u, v) = max vertex label on the u–v path (0 when
// u = v). Binary lifting with path-max tables; queries are O(log n).
// Rooted at the minimal vertex id; distances are root-independent.
// Requires a non-degenerate labeling, which makes d an ultrametric.
class UltrametricIndex {
 public:
  explicit UltrametricIndex(LabeledTree tree) : tree_(std::move(tree)) {
    auto verdict = is_nondegenerate(tree_);
    if (!verdict.ok)
      fail(Errc::DegenerateLabeling,
           "edge {" + tree_.id(verdict.u).to_string() + ", " + tree_.id(verdict.v).to_string() +
               "} has two zero labels");
    int n = static_cast<int>(tree_.size());
    log_ = 1;
    while ((1 << log_) < n) ++log_;
    depth_.assign(static_cast<std::size_t>(n), 0);
    up_.assign(static_cast<std::size_t>(log_), std::vector<int>(static_cast<std::size_t>(n), 0));
    maxl_.assign(static_cast<std::size_t>(log_), std::vector<Rat>(static_cast<std::size_t>(n)));

    std::vector<int> order{0};  // root = minimal id = rank 0
    order.reserve(static_cast<std::size_t>(n));
    std::vector<char> seen(static_cast<std::size_t>(n), 0);
    seen[0] = 1;
    for (std::size_t head = 0; head < order.size(); ++head) {
      int v = order[head];
      for (int w : tree_.neighbors(v))
        if (!seen[static_cast<std::size_t>(w)]) {
          seen[static_cast<std::size_t>(w)] = 1;
          up_[0][static_cast<std::size_t>(w)] = v;
          depth_[static_cast<std::size_t>(w)] = depth_[static_cast<std::size_t>(v)] + 1;
          order.push_back(w);
        }
    }
    for (int v = 0; v < n; ++v) maxl_[0][static_cast<std::size_t>(v)] = tree_.label(v);
    for (int k = 1; k < log_; ++k)
      for (int v = 0; v < n; ++v) {
        int mid = up_[static_cast<std::size_t>(k - 1)][static_cast<std::size_t>(v)];
        up_[static_cast<std::size_t>(k)][static_cast<std::size_t>(v)] =
            up_[static_cast<std::size_t>(k - 1)][static_cast<std::size_t>(mid)];
        maxl_[static_cast<std::size_t>(k)][static_cast<std::size_t>(v)] =
            std::max(maxl_[static_cast<std::size_t>(k - 1)][static_cast<std::size_t>(v)],
                     maxl_[static_cast<std::size_t>(k - 1)][static_cast<std::size_t>(mid)]);
      }
  }

  const LabeledTree& tree() const { return tree_; }
  int root() const { return 0; }
  std::uint64_t depth(int v) const { return depth_[static_cast<std::size_t>(v)]; }

  Rat distance(int u, int v) const {
    if (u == v) return Rat(0);
    Rat best(0);
    if (depth_[static_cast<std::size_t>(u)] < depth_[static_cast<std::size_t>(v)]) std::swap(u, v);
    std::uint64_t diff = depth_[static_cast<std::size_t>(u)] - depth_[static_cast<std::size_t>(v)];
    for (int k = 0; k < log_; ++k)
      if (diff >> k & 1) {
        best = std::max(best, maxl_[static_cast<std::size_t>(k)][static_cast<std::size_t>(u)]);
        u = up_[static_cast<std::size_t>(k)][static_cast<std::size_t>(u)];
      }
    if (u == v) return std::max(best, tree_.label(v));  // v is an ancestor
    for (int k = log_ - 1; k >= 0; --k)
      if (up_[static_cast<std::size_t>(k)][static_cast<std::size_t>(u)] !=
          up_[static_cast<std::size_t>(k)][static_cast<std::size_t>(v)]) {
        best = std::max(best, maxl_[static_cast<std::size_t>(k)][static_cast<std::size_t>(u)]);
        best = std::max(best, maxl_[static_cast<std::size_t>(k)][static_cast<std::size_t>(v)]);
        u = up_[static_cast<std::size_t>(k)][static_cast<std::size_t>(u)];
        v = up_[static_cast<std::size_t>(k)][static_cast<std::size_t>(v)];
      }
    best = std::max(best, tree_.label(u));
    best = std::max(best, tree_.label(v));
    return std::max(best, tree_.label(up_[0][static_cast<std::size_t>(u)]));  // the meet
  }

  Rat distance(const VertexId& a, const VertexId& b) const {
    return distance(tree_.require(a), tree_.require(b));
  }

 private:
  LabeledTree tree_;
  int log_ = 1;
  std::vector<std::uint64_t> depth_;
  std::vector<std::vector<int>> up_;
  std::vector<std::vector<Rat>> maxl_;
};

struct TriangleReport {
  std::uint64_t checked = 0;
  bool exhaustive = false;
  std::optional<std::array<VertexId, 3>> violation;  // never expected
  bool ok() const { return !violation.has_value(); }
};

// Strong triangle inequality d(x,z) <= max(d(x,y), d(y,z)) over unordered
// triples: exhaustive when |V| <= 60, else `samples` seeded draws.
inline TriangleReport verify_strong_triangle(const UltrametricIndex& ix,
                                             std::uint64_t samples = 20000,
                                             std::uint64_t seed = 0) {
  const LabeledTree& t = ix.tree();
  int n = static_cast<int>(t.size());
  TriangleReport report;
  auto check = [&](int x, int y, int z) -> bool {
    Rat xy = ix.distance(x, y), yz = ix.distance(y, z), xz = ix.distance(x, z);
    ++report.checked;
    if (xz > std::max(xy, yz) || xy > std::max(xz, yz) || yz > std::max(xy, xz)) {
      report.violation = {t.id(x), t.id(y), t.id(z)};
      return false;
    }
    return true;
  };
  if (n <= 60) {
    report.exhaustive = true;
    for (int x = 0; x < n; ++x)
      for (int y = x + 1; y < n; ++y)
        for (int z = y + 1; z < n; ++z)
          if (!check(x, y, z)) return report;
    return report;
  }
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> pick(0, n - 1);
  for (std::uint64_t i = 0; i < samples; ++i) {
    int x = pick(rng), y = pick(rng), z = pick(rng);
    if (x == y || y == z || x == z) {
      ++report.checked;
      continue;  // degenerate triples hold trivially
    }
    if (!check(x, y, z)) return report;
  }
  return report;
}

struct Ball {
  VertexId center;  // minimal id inside
  Rat radius;
  std::vector<VertexId> members;  // sorted
};

struct Cover {
  Rat radius;
  std::vector<Ball> blocks;  // partition into open balls, sorted by center
};

namespace detail {
// Open balls of radius r are the components of the subgraph induced on
// labels < r, plus a singleton for every vertex with label >= r.
inline std::vector<int> scale_blocks(const LabeledTree& t, const Rat& r) {
  std::vector<int> block(t.size(), -1);
  int next = 0;
  for (int seed = 0; seed < static_cast<int>(t.size()); ++seed) {
    if (block[static_cast<std::size_t>(seed)] != -1) continue;
    int b = next++;
    block[static_cast<std::size_t>(seed)] = b;
    if (!(t.label(seed) < r)) continue;  // heavy vertex: singleton
    std::vector<int> queue{seed};
    for (std::size_t head = 0; head < queue.size(); ++head)
      for (int w : t.neighbors(queue[head]))
        if (block[static_cast<std::size_t>(w)] == -1 && t.label(w) < r) {
          block[static_cast<std::size_t>(w)] = b;
          queue.push_back(w);
        }
  }
  return block;
}
}  // namespace detail

inline Cover partition_at_scale(const UltrametricIndex& ix, const Rat& r) {
  if (!(r > 0)) fail(Errc::NonpositiveRadius, format_rat(r));
  const LabeledTree& t = ix.tree();
  auto block = detail::scale_blocks(t, r);
  int nblocks = *std::max_element(block.begin(), block.end()) + 1;
  Cover cover{r, std::vector<Ball>(static_cast<std::size_t>(nblocks))};
  for (int v = 0; v < static_cast<int>(t.size()); ++v) {
    Ball& b = cover.blocks[static_cast<std::size_t>(block[static_cast<std::size_t>(v)])];
    if (b.members.empty()) {
      b.center = t.id(v);  // vertices scanned in id order: first in = minimal
      b.radius = r;
    }
    b.members.push_back(t.id(v));
  }
  std::sort(cover.blocks.begin(), cover.blocks.end(),
            [](const Ball& a, const Ball& b) { return a.center < b.center; });
  return cover;
}

inline Ball ball(const UltrametricIndex& ix, const VertexId& center, const Rat& r) {
  if (!(r > 0)) fail(Errc::NonpositiveRadius, format_rat(r));
  const LabeledTree& t = ix.tree();
  int c = t.require(center);
  Ball out{t.id(c), r, {}};
  if (!(t.label(c) < r)) {  // every other path passes through c itself
    out.members.push_back(t.id(c));
    return out;
  }
  std::vector<char> in(t.size(), 0);
  std::vector<int> queue{c};
  in[static_cast<std::size_t>(c)] = 1;
  for (std::size_t head = 0; head < queue.size(); ++head)
    for (int w : t.neighbors(queue[head]))
      if (!in[static_cast<std::size_t>(w)] && t.label(w) < r) {
        in[static_cast<std::size_t>(w)] = 1;
        queue.push_back(w);
      }
  for (int v = 0; v < static_cast<int>(t.size()); ++v)
    if (in[static_cast<std::size_t>(v)]) out.members.push_back(t.id(v));
  return out;
}

// Distance from v to its nearest other vertex. Attained at a neighbor:
// the path to anything farther passes through one, and the path max only
// grows under extension.
inline Rat isolation_radius(const UltrametricIndex& ix, const VertexId& id) {
  const LabeledTree& t = ix.tree();
  if (t.size() < 2) fail(Errc::SingletonTree, "vertex '" + id.to_string() + "'");
  int v = t.require(id);
  std::optional<Rat> best;
  for (int w : t.neighbors(v)) {
    Rat d = std::max(t.label(v), t.label(w));
    if (!best || d < *best) best = d;
  }
  return *best;
}

struct Cluster {
  Ball block;
  Rat diameter;  // max pairwise distance inside; 0 for singletons
};

struct ClusterReport {
  Rat epsilon;
  std::uint64_t mass = 0;
  std::vector<Cluster> clusters;  // blocks with >= mass members, by center
};

// Blocks of the scale-epsilon partition holding at least `mass` vertices.
// A block of size >= 2 has diameter = its max label: the max sits on the
// path between its own vertex and any in-block neighbor.
inline ClusterReport epsilon_clusters(const UltrametricIndex& ix, const Rat& epsilon,
                                      std::uint64_t mass) {
  if (mass == 0) fail(Errc::MalformedInput, "mass must be positive");
  Cover cover = partition_at_scale(ix, epsilon);
  ClusterReport report{epsilon, mass, {}};
  for (Ball& b : cover.blocks) {
    if (b.members.size() < mass) continue;
    Rat diam(0);
    if (b.members.size() >= 2)
      for (const VertexId& m : b.members) diam = std::max(diam, ix.tree().label(m));
    report.clusters.push_back({std::move(b), std::move(diam)});
  }
  return report;
}

inline void write_cover_csv(std::ostream& out, const Cover& cover) {
  out << "radius,block_id,center,size\n";
  for (std::size_t i = 0; i < cover.blocks.size(); ++i)
    out << format_rat(cover.radius) << ',' << i << ',' << cover.blocks[i].center.to_string()
        << ',' << cover.blocks[i].members.size() << '\n';
}

}  // namespace ultratree
