#pragma once

#include <deque>
#include <map>
#include <utility>
#include <vector>

#include "ultratree/generator.hpp"
#include "ultratree/labeled_tree.hpp"
#include "ultratree/scheme.hpp"

namespace ultratree {

// A finite, faithfully labeled prefix of a generated tree. The frontier set
// marks vertices whose child enumeration the budget cut short.
struct Truncation {
  TreeGenerator gen;
  LabelingScheme scheme;
  std::uint64_t budget = 0;
  LabeledTree tree;                 // ids are addresses
  std::vector<Address> bfs_order;   // materialization order
};

// Deterministic breadth-first materialization of exactly min(budget, |T|)
// vertices. Finite-degree vertices expand all children when popped, so
// locally finite levels fill in level order; an infinite-degree vertex
// yields one child per turn and goes to the back of the queue, interleaving
// fairly with the rest. Truncations are prefix-monotone in the budget.
inline Truncation truncate(const TreeGenerator& gen, const LabelingScheme& scheme,
                           std::uint64_t budget) {
  if (budget == 0) fail(Errc::MalformedInput, "budget must be >= 1");
  scheme.validate_for(gen);

  struct Cursor {
    Address vertex;
    std::uint64_t next_child;
  };
  std::vector<Address> order{Address{}};
  std::vector<std::pair<Address, Address>> edges;
  std::deque<Cursor> queue{{Address{}, 0}};
  std::map<Address, char> frontier;
  bool exhausted_budget = false;

  while (!queue.empty()) {
    Cursor cur = queue.front();
    queue.pop_front();
    auto count = gen.child_count(cur.vertex);
    if (count) {
      bool cut = false;
      for (std::uint64_t c = cur.next_child; c < *count; ++c) {
        if (order.size() == budget) {
          cut = true;
          break;
        }
        Address child = cur.vertex.child(c);
        order.push_back(child);
        edges.emplace_back(cur.vertex, child);
        queue.push_back({child, 0});
      }
      if (cut) {
        frontier[cur.vertex] = 1;
        exhausted_budget = true;
        break;
      }
    } else {
      if (order.size() == budget) {
        frontier[cur.vertex] = 1;
        exhausted_budget = true;
        break;
      }
      Address child = cur.vertex.child(cur.next_child);
      order.push_back(child);
      edges.emplace_back(cur.vertex, child);
      queue.push_back({child, 0});
      queue.push_back({cur.vertex, cur.next_child + 1});
    }
  }
  if (exhausted_budget) {
    // everything still queued with unenumerated children is frontier too
    for (const Cursor& cur : queue) {
      auto count = gen.child_count(cur.vertex);
      if (!count || cur.next_child < *count) frontier[cur.vertex] = 1;
    }
  }

  std::map<VertexId, Rat> labels;
  std::vector<std::pair<VertexId, VertexId>> tree_edges;
  std::vector<VertexId> frontier_ids;
  for (const Address& a : order) {
    Rat value = scheme.eval(gen, a);
    if (value < 0)
      fail(Errc::NegativeLabel, "vertex '" + a.to_string() + "'");
    labels.emplace(VertexId::of_address(a), std::move(value));
  }
  tree_edges.reserve(edges.size());
  for (const auto& [u, v] : edges)
    tree_edges.emplace_back(VertexId::of_address(u), VertexId::of_address(v));
  for (const auto& [a, flag] : frontier) frontier_ids.push_back(VertexId::of_address(a));

  Truncation out{gen, scheme, budget, build_tree(tree_edges, labels, frontier_ids), order};
  auto verdict = is_nondegenerate(out.tree);
  if (!verdict.ok)
    fail(Errc::DegenerateOnTruncation,
         "edge {" + out.tree.id(verdict.u).to_string() + ", " +
             out.tree.id(verdict.v).to_string() + "} has two zero labels");
  return out;
}

}  // namespace ultratree
