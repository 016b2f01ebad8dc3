#pragma once

#include <algorithm>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include <json.hpp>

#include "ultratree/errors.hpp"
#include "ultratree/vertex_id.hpp"

namespace ultratree {

// Length of the n-th appendage (tooth, arm): constant or affine in n.
struct LengthRule {
  enum class Kind { Constant, Linear } kind = Kind::Constant;
  std::uint64_t value = 1;              // Constant
  std::uint64_t slope = 0, offset = 1;  // Linear: slope*n + offset

  std::uint64_t at(std::uint64_t n) const {
    return kind == Kind::Constant ? value : slope * n + offset;
  }
  static LengthRule constant(std::uint64_t v) { return {Kind::Constant, v, 0, 0}; }
  static LengthRule linear(std::uint64_t a, std::uint64_t b) { return {Kind::Linear, 0, a, b}; }
};

// Which spine vertices carry a tooth, and how long each tooth is.
// Teeth sit at spine indices start, start+period, ...; `count` caps how many
// (unset = infinitely many).
struct TeethSchedule {
  std::uint64_t start = 1;
  std::uint64_t period = 1;
  std::optional<std::uint64_t> count;
  LengthRule length = LengthRule::constant(1);

  // 1-based tooth rank carried by spine index n, if any.
  std::optional<std::uint64_t> rank_of_spine(std::uint64_t n) const {
    if (n < start || (n - start) % period != 0) return std::nullopt;
    std::uint64_t rank = (n - start) / period + 1;
    if (count && rank > *count) return std::nullopt;
    return rank;
  }
  std::optional<std::uint64_t> spine_of_rank(std::uint64_t rank) const {  // rank >= 1
    if (rank == 0 || (count && rank > *count)) return std::nullopt;
    return start + (rank - 1) * period;
  }
  std::uint64_t length_at_spine(std::uint64_t n) const { return length.at(n); }
};

struct ArmSchedule {
  LengthRule length = LengthRule::constant(1);  // arm k has length.at(k) >= 1
};

class TreeGenerator;
using GenPtr = std::shared_ptr<const TreeGenerator>;

struct RayGen {};
struct FullBinaryGen {};
struct FiniteGen {
  std::vector<std::vector<std::uint64_t>> children;  // node 0 is the root
};
struct CombGen {
  TeethSchedule teeth;
};
struct StarGen {
  ArmSchedule arms;
};
struct GraftGen {
  GenPtr base;
  Address at;  // in base coordinates; graft takes child slot 0 there
  GenPtr graft;
};

// Lazy infinite (or finite) rooted tree described structurally. Children of
// any vertex occupy contiguous slots 0..count-1; vertex identity is the root
// path. Generators are immutable and cheap to copy.
//
// Shape conventions:
//   Ray         v_n at r/0^(n-1); each vertex has one child.
//   Comb        spine = the ray; spine child 0 continues the spine, child 1
//               starts the tooth (when the schedule places one); tooth
//               vertices chain through child 0.
//   Star        root has children 0,1,2,...; arm k (1-based) hangs at child
//               k-1 and chains through child 0 for length.at(k) vertices.
//   FullBinary  two children everywhere.
//   Finite      explicit child lists.
//   Graft       base with another generator attached below `at`: the graft
//               root becomes child 0 of `at`, existing children shift up one.
class TreeGenerator {
 public:
  using Shape = std::variant<RayGen, FullBinaryGen, FiniteGen, CombGen, StarGen, GraftGen>;

  static TreeGenerator ray() { return TreeGenerator(RayGen{}); }
  static TreeGenerator full_binary() { return TreeGenerator(FullBinaryGen{}); }
  static TreeGenerator finite(std::vector<std::vector<std::uint64_t>> children) {
    FiniteGen g{std::move(children)};
    validate_finite(g);
    return TreeGenerator(std::move(g));
  }
  static TreeGenerator comb(TeethSchedule teeth) {
    validate_teeth(teeth);
    return TreeGenerator(CombGen{std::move(teeth)});
  }
  static TreeGenerator star(ArmSchedule arms) {
    validate_arms(arms);
    return TreeGenerator(StarGen{std::move(arms)});
  }
  static TreeGenerator graft(TreeGenerator base, const Address& at, TreeGenerator graft_gen) {
    if (!base.contains(at))
      fail(Errc::UnknownVertex, "graft point '" + at.to_string() + "' not in base");
    return TreeGenerator(GraftGen{std::make_shared<TreeGenerator>(std::move(base)), at,
                                  std::make_shared<TreeGenerator>(std::move(graft_gen))});
  }

  const Shape& shape() const { return shape_; }

  // ---- structure ----

  // Number of children; nullopt means infinitely many.
  std::optional<std::uint64_t> child_count(const Address& a) const {
    return std::visit(
        [&](const auto& g) -> std::optional<std::uint64_t> { return child_count_of(g, a); },
        shape_);
  }

  bool contains(const Address& a) const {
    return std::visit([&](const auto& g) { return contains_in(g, a); }, shape_);
  }

  bool is_infinite() const {
    return std::visit(
        [](const auto& g) {
          using T = std::decay_t<decltype(g)>;
          if constexpr (std::is_same_v<T, FiniteGen>)
            return false;
          else if constexpr (std::is_same_v<T, GraftGen>)
            return g.base->is_infinite() || g.graft->is_infinite();
          else
            return true;
        },
        shape_);
  }

  bool locally_finite() const { return infinite_degree_count() == 0; }

  std::uint64_t infinite_degree_count() const {
    return std::visit(
        [](const auto& g) -> std::uint64_t {
          using T = std::decay_t<decltype(g)>;
          if constexpr (std::is_same_v<T, StarGen>)
            return 1;
          else if constexpr (std::is_same_v<T, GraftGen>)
            return g.base->infinite_degree_count() + g.graft->infinite_degree_count();
          else
            return 0;
        },
        shape_);
  }

  // Minimal-address vertex of infinite degree, if any.
  std::optional<Address> infinite_degree_vertex() const {
    return std::visit(
        [](const auto& g) -> std::optional<Address> {
          using T = std::decay_t<decltype(g)>;
          if constexpr (std::is_same_v<T, StarGen>) {
            return Address{};
          } else if constexpr (std::is_same_v<T, GraftGen>) {
            std::optional<Address> best;
            if (auto b = g.base->infinite_degree_vertex()) best = base_to_comp(g, *b);
            if (auto x = g.graft->infinite_degree_vertex()) {
              Address comp = g.at.child(0).append(*x);
              if (!best || comp < *best) best = comp;
            }
            return best;
          } else {
            return std::nullopt;
          }
        },
        shape_);
  }

  // Does the tree contain any one-way infinite path / more than one
  // vertex-disjoint such path?
  bool contains_ray() const {
    return std::visit(
        [](const auto& g) {
          using T = std::decay_t<decltype(g)>;
          if constexpr (std::is_same_v<T, RayGen> || std::is_same_v<T, CombGen> ||
                        std::is_same_v<T, FullBinaryGen>)
            return true;
          else if constexpr (std::is_same_v<T, GraftGen>)
            return g.base->contains_ray() || g.graft->contains_ray();
          else
            return false;
        },
        shape_);
  }
  bool multiple_disjoint_rays() const {
    return std::visit(
        [](const auto& g) {
          using T = std::decay_t<decltype(g)>;
          if constexpr (std::is_same_v<T, FullBinaryGen>)
            return true;
          else if constexpr (std::is_same_v<T, GraftGen>)
            return g.base->multiple_disjoint_rays() || g.graft->multiple_disjoint_rays() ||
                   (g.base->contains_ray() && g.graft->contains_ray());
          else
            return false;
        },
        shape_);
  }
  bool rayless() const { return !contains_ray(); }

  // ---- canonical ray ----
  // Ray and Comb carry one (the spine); a graft inherits the base's, or the
  // graft's when the base has none. FullBinary has many rays but no canonical
  // one.

  bool has_canonical_ray() const {
    return std::visit(
        [](const auto& g) {
          using T = std::decay_t<decltype(g)>;
          if constexpr (std::is_same_v<T, RayGen> || std::is_same_v<T, CombGen>)
            return true;
          else if constexpr (std::is_same_v<T, GraftGen>)
            return g.base->has_canonical_ray() || g.graft->has_canonical_ray();
          else
            return false;
        },
        shape_);
  }

  Address ray_address(std::uint64_t n) const {  // v_n, n >= 1
    if (n == 0) fail(Errc::MalformedInput, "ray indices are 1-based");
    return std::visit(
        [&](const auto& g) -> Address {
          using T = std::decay_t<decltype(g)>;
          if constexpr (std::is_same_v<T, RayGen> || std::is_same_v<T, CombGen>) {
            Address a;
            if (n > 1) return a.append(run_of_zeros(n - 1));
            return a;
          } else if constexpr (std::is_same_v<T, GraftGen>) {
            if (g.base->has_canonical_ray()) return base_to_comp(g, g.base->ray_address(n));
            if (g.graft->has_canonical_ray())
              return g.at.child(0).append(g.graft->ray_address(n));
            fail(Errc::PreconditionMismatch, "generator has no canonical ray");
          } else {
            fail(Errc::PreconditionMismatch, "generator has no canonical ray");
          }
        },
        shape_);
  }

  std::optional<std::uint64_t> ray_index(const Address& a) const {
    return std::visit(
        [&](const auto& g) -> std::optional<std::uint64_t> {
          using T = std::decay_t<decltype(g)>;
          if constexpr (std::is_same_v<T, RayGen> || std::is_same_v<T, CombGen>) {
            if (all_zero_steps(a)) return a.depth() + 1;
            return std::nullopt;
          } else if constexpr (std::is_same_v<T, GraftGen>) {
            auto r = resolve(g, a);
            if (g.base->has_canonical_ray())
              return r.in_graft ? std::nullopt : g.base->ray_index(r.local);
            if (g.graft->has_canonical_ray())
              return r.in_graft ? g.graft->ray_index(r.local) : std::nullopt;
            return std::nullopt;
          } else {
            return std::nullopt;
          }
        },
        shape_);
  }

  // Projection onto the canonical ray: the ray index under which `a` hangs.
  // Vertices above the ray start (possible when the ray lives in a graft)
  // project to 1.
  std::optional<std::uint64_t> ray_section(const Address& a) const {
    return std::visit(
        [&](const auto& g) -> std::optional<std::uint64_t> {
          using T = std::decay_t<decltype(g)>;
          if constexpr (std::is_same_v<T, RayGen>) {
            return a.depth() + 1;
          } else if constexpr (std::is_same_v<T, CombGen>) {
            std::uint64_t zeros = leading_zero_steps(a);
            return zeros + 1;  // spine vertex or its tooth
          } else if constexpr (std::is_same_v<T, GraftGen>) {
            auto r = resolve(g, a);
            if (g.base->has_canonical_ray())
              return r.in_graft ? g.base->ray_section(g.at) : g.base->ray_section(r.local);
            if (g.graft->has_canonical_ray())
              return r.in_graft ? g.graft->ray_section(r.local) : std::uint64_t{1};
            return std::nullopt;
          } else {
            return std::nullopt;
          }
        },
        shape_);
  }

  // ---- components of T - u ----
  // Ordered by their minimal address: the root-side component (when u is not
  // the root) comes first, then the child subtrees in slot order.
  std::optional<std::uint64_t> component_index(const Address& v, const Address& u) const {
    if (v == u) return std::nullopt;
    if (u.is_root()) return v.step_at(0) + 1;
    if (u.is_prefix_of(v) && v.depth() > u.depth()) return v.step_at(u.depth()) + 2;
    return 1;
  }

  // ---- comb branch structure ----
  // Side branches qualify from spine index 2 up (their spine vertex then has
  // materialized degree >= 3). n_k = spine index of the k-th qualifying one.

  bool has_branch_structure() const {
    return std::visit(
        [](const auto& g) {
          using T = std::decay_t<decltype(g)>;
          if constexpr (std::is_same_v<T, CombGen>)
            return true;
          else if constexpr (std::is_same_v<T, GraftGen>)
            return g.base->has_branch_structure() && !g.graft->is_infinite();
          else
            return false;
        },
        shape_);
  }

  std::optional<std::uint64_t> branch_spine_index(std::uint64_t k) const {  // n_k
    return std::visit(
        [&](const auto& g) -> std::optional<std::uint64_t> {
          using T = std::decay_t<decltype(g)>;
          if constexpr (std::is_same_v<T, CombGen>) {
            // qualifying teeth have spine index >= 2
            std::uint64_t skipped = g.teeth.rank_of_spine(1) ? 1 : 0;
            auto spine = g.teeth.spine_of_rank(k + skipped);
            return spine;
          } else if constexpr (std::is_same_v<T, GraftGen>) {
            return g.base->branch_spine_index(k);
          } else {
            return std::nullopt;
          }
        },
        shape_);
  }

  // For a vertex in a qualifying side branch: (k, n_k).
  std::optional<std::pair<std::uint64_t, std::uint64_t>> branch_rank(const Address& a) const {
    return std::visit(
        [&](const auto& g) -> std::optional<std::pair<std::uint64_t, std::uint64_t>> {
          using T = std::decay_t<decltype(g)>;
          if constexpr (std::is_same_v<T, CombGen>) {
            std::uint64_t zeros = leading_zero_steps(a);
            if (zeros == a.depth()) return std::nullopt;  // on the spine
            std::uint64_t n = zeros + 1;
            if (n < 2) return std::nullopt;  // tooth at the spine start never qualifies
            auto rank = g.teeth.rank_of_spine(n);
            if (!rank) return std::nullopt;
            std::uint64_t skipped = g.teeth.rank_of_spine(1) ? 1 : 0;
            return std::make_pair(*rank - skipped, n);
          } else if constexpr (std::is_same_v<T, GraftGen>) {
            auto r = resolve(g, a);
            if (r.in_graft) return std::nullopt;
            return g.base->branch_rank(r.local);
          } else {
            return std::nullopt;
          }
        },
        shape_);
  }

  // ---- appendage tips (sequence fodder) ----

  std::optional<Address> tooth_tip(std::uint64_t j) const {  // j-th tooth, spine order
    return std::visit(
        [&](const auto& g) -> std::optional<Address> {
          using T = std::decay_t<decltype(g)>;
          if constexpr (std::is_same_v<T, CombGen>) {
            auto spine = g.teeth.spine_of_rank(j);
            if (!spine) return std::nullopt;
            std::uint64_t len = g.teeth.length_at_spine(*spine);
            Address a = run_of_zeros(*spine - 1).child(1);
            if (len > 1) a = a.append(run_of_zeros(len - 1));
            return a;
          } else if constexpr (std::is_same_v<T, GraftGen>) {
            auto tip = g.base->tooth_tip(j);
            if (!tip) return std::nullopt;
            return base_to_comp(g, *tip);
          } else {
            return std::nullopt;
          }
        },
        shape_);
  }

  std::optional<Address> arm_tip(std::uint64_t k) const {  // k-th arm, k >= 1
    return std::visit(
        [&](const auto& g) -> std::optional<Address> {
          using T = std::decay_t<decltype(g)>;
          if constexpr (std::is_same_v<T, StarGen>) {
            std::uint64_t len = g.arms.length.at(k);
            Address a = Address{}.child(k - 1);
            if (len > 1) a = a.append(run_of_zeros(len - 1));
            return a;
          } else if constexpr (std::is_same_v<T, GraftGen>) {
            auto tip = g.base->arm_tip(k);
            if (!tip) return std::nullopt;
            return base_to_comp(g, *tip);
          } else {
            return std::nullopt;
          }
        },
        shape_);
  }

  // ---- almost-ray support ----

  // Finitely many vertices off the canonical ray?
  bool off_ray_finite() const {
    return std::visit(
        [](const auto& g) {
          using T = std::decay_t<decltype(g)>;
          if constexpr (std::is_same_v<T, RayGen>) {
            return true;
          } else if constexpr (std::is_same_v<T, CombGen>) {
            return g.teeth.count.has_value();
          } else if constexpr (std::is_same_v<T, GraftGen>) {
            if (g.base->has_canonical_ray())
              return g.base->off_ray_finite() && !g.graft->is_infinite();
            if (g.graft->has_canonical_ray())
              return !g.base->is_infinite() && g.graft->off_ray_finite();
            return false;
          } else {
            return false;
          }
        },
        shape_);
  }

  // All vertices off the canonical ray (valid only when off_ray_finite()).
  std::vector<Address> off_ray_vertices() const {
    std::vector<Address> out;
    std::visit(
        [&](const auto& g) {
          using T = std::decay_t<decltype(g)>;
          if constexpr (std::is_same_v<T, RayGen>) {
            // none
          } else if constexpr (std::is_same_v<T, CombGen>) {
            std::uint64_t teeth = g.teeth.count.value_or(0);
            for (std::uint64_t j = 1; j <= teeth; ++j) {
              std::uint64_t spine = *g.teeth.spine_of_rank(j);
              std::uint64_t len = g.teeth.length_at_spine(spine);
              Address base = run_of_zeros(spine - 1).child(1);
              out.push_back(base);
              for (std::uint64_t p = 2; p <= len; ++p) {
                base = base.child(0);
                out.push_back(base);
              }
            }
          } else if constexpr (std::is_same_v<T, GraftGen>) {
            if (g.base->has_canonical_ray()) {
              for (const Address& b : g.base->off_ray_vertices())
                out.push_back(base_to_comp(g, b));
              for (const Address& x : g.graft->enumerate_all())
                out.push_back(g.at.child(0).append(x));
            } else if (g.graft->has_canonical_ray()) {
              for (const Address& b : g.base->enumerate_all()) out.push_back(base_to_comp(g, b));
              for (const Address& x : g.graft->off_ray_vertices())
                out.push_back(g.at.child(0).append(x));
            }
          }
        },
        shape_);
    std::sort(out.begin(), out.end());
    return out;
  }

  // Every vertex of a finite generator, sorted.
  std::vector<Address> enumerate_all() const {
    if (is_infinite()) fail(Errc::PreconditionMismatch, "enumerate_all on an infinite generator");
    std::vector<Address> out{Address{}};
    for (std::size_t head = 0; head < out.size(); ++head) {
      Address a = out[head];  // by value: out reallocates
      std::uint64_t n = *child_count(a);
      for (std::uint64_t c = 0; c < n; ++c) out.push_back(a.child(c));
    }
    std::sort(out.begin(), out.end());
    return out;
  }

  // ---- serialization ----

  nlohmann::ordered_json to_json() const;
  static TreeGenerator from_json(const nlohmann::json& j);
  std::string summary() const;

 private:
  explicit TreeGenerator(Shape s) : shape_(std::move(s)) {}

  static Address run_of_zeros(std::uint64_t n) {
    Address a;
    if (n > 0) a = Address::parse("r/0^" + std::to_string(n));
    return a;
  }
  static bool all_zero_steps(const Address& a) {
    for (const auto& run : a.runs())
      if (run.child != 0) return false;
    return true;
  }
  static std::uint64_t leading_zero_steps(const Address& a) {
    std::uint64_t n = 0;
    for (const auto& run : a.runs()) {
      if (run.child != 0) break;
      n += run.count;
    }
    return n;
  }

  static void validate_finite(const FiniteGen& g) {
    std::size_t n = g.children.size();
    if (n == 0) fail(Errc::MalformedInput, "finite generator needs at least the root");
    std::vector<int> parent_count(n, 0);
    for (const auto& kids : g.children)
      for (std::uint64_t k : kids) {
        if (k >= n) fail(Errc::MalformedInput, "finite generator child out of range");
        if (k == 0) fail(Errc::MalformedInput, "finite generator root cannot be a child");
        ++parent_count[static_cast<std::size_t>(k)];
      }
    for (std::size_t v = 1; v < n; ++v)
      if (parent_count[v] != 1)
        fail(Errc::MalformedInput,
             "finite generator node " + std::to_string(v) + " needs exactly one parent");
    // single-parent + root unparented on n nodes with n-1 edges => a tree,
    // provided everything is reachable
    std::vector<char> seen(n, 0);
    std::vector<std::uint64_t> queue{0};
    seen[0] = 1;
    for (std::size_t head = 0; head < queue.size(); ++head)
      for (std::uint64_t k : g.children[static_cast<std::size_t>(queue[head])])
        if (!seen[static_cast<std::size_t>(k)]) {
          seen[static_cast<std::size_t>(k)] = 1;
          queue.push_back(k);
        }
    for (std::size_t v = 0; v < n; ++v)
      if (!seen[v]) fail(Errc::MalformedInput, "finite generator node " + std::to_string(v) + " unreachable");
  }
  static void validate_teeth(const TeethSchedule& t) {
    if (t.start < 1) fail(Errc::MalformedInput, "teeth start at spine index >= 1");
    if (t.period < 1) fail(Errc::MalformedInput, "teeth period must be >= 1");
    if (t.length.at(t.start) < 1) fail(Errc::MalformedInput, "tooth length must be >= 1");
    if (t.length.kind == LengthRule::Kind::Constant && t.length.value < 1)
      fail(Errc::MalformedInput, "tooth length must be >= 1");
  }
  static void validate_arms(const ArmSchedule& a) {
    if (a.length.at(1) < 1 ||
        (a.length.kind == LengthRule::Kind::Constant && a.length.value < 1))
      fail(Errc::MalformedInput, "arm length must be >= 1");
  }

  struct Resolved {
    bool in_graft;
    Address local;  // graft coordinates when in_graft, else base coordinates
  };
  static Resolved resolve(const GraftGen& g, const Address& a) {
    if (g.at.is_prefix_of(a) && a.depth() > g.at.depth()) {
      std::uint64_t c = a.step_at(g.at.depth());
      Address rest = a.drop_prefix(g.at.depth() + 1);
      if (c == 0) return {true, rest};
      return {false, g.at.child(c - 1).append(rest)};
    }
    return {false, a};
  }
  static Address base_to_comp(const GraftGen& g, const Address& b) {
    if (g.at.is_prefix_of(b) && b.depth() > g.at.depth()) {
      std::uint64_t c = b.step_at(g.at.depth());
      Address rest = b.drop_prefix(g.at.depth() + 1);
      return g.at.child(c + 1).append(rest);
    }
    return b;
  }

  // -- child_count per shape --
  static std::optional<std::uint64_t> child_count_of(const RayGen&, const Address&) { return 1; }
  static std::optional<std::uint64_t> child_count_of(const FullBinaryGen&, const Address&) {
    return 2;
  }
  static std::optional<std::uint64_t> child_count_of(const FiniteGen& g, const Address& a) {
    auto node = finite_node(g, a);
    if (!node) fail(Errc::UnknownVertex, "address '" + a.to_string() + "' not in generator");
    return g.children[static_cast<std::size_t>(*node)].size();
  }
  static std::optional<std::uint64_t> child_count_of(const CombGen& g, const Address& a) {
    std::uint64_t zeros = leading_zero_steps(a);
    if (zeros == a.depth()) {  // spine vertex n = zeros + 1
      return 1 + (g.teeth.rank_of_spine(zeros + 1) ? 1 : 0);
    }
    // tooth vertex: position = depth - zeros (step zeros is the '1' turn)
    std::uint64_t n = zeros + 1;
    std::uint64_t pos = a.depth() - zeros;
    return pos < g.teeth.length_at_spine(n) ? 1 : 0;
  }
  static std::optional<std::uint64_t> child_count_of(const StarGen& g, const Address& a) {
    if (a.is_root()) return std::nullopt;
    std::uint64_t k = a.step_at(0) + 1;
    return a.depth() < g.arms.length.at(k) ? 1 : 0;
  }
  static std::optional<std::uint64_t> child_count_of(const GraftGen& g, const Address& a) {
    auto r = resolve(g, a);
    if (r.in_graft) return g.graft->child_count(r.local);
    auto n = g.base->child_count(r.local);
    if (r.local == g.at && n) return *n + 1;
    return n;
  }

  // -- contains per shape --
  static bool contains_in(const RayGen&, const Address& a) { return all_zero_steps(a); }
  static bool contains_in(const FullBinaryGen&, const Address& a) {
    for (const auto& run : a.runs())
      if (run.child > 1) return false;
    return true;
  }
  static bool contains_in(const FiniteGen& g, const Address& a) {
    return finite_node(g, a).has_value();
  }
  static bool contains_in(const CombGen& g, const Address& a) {
    std::uint64_t zeros = leading_zero_steps(a);
    if (zeros == a.depth()) return true;  // spine
    // must be: zeros, then a single 1, then only 0s, within the tooth length
    std::uint64_t n = zeros + 1;
    if (a.step_at(zeros) != 1) return false;
    if (!g.teeth.rank_of_spine(n)) return false;
    std::uint64_t pos = 1;
    for (std::uint64_t i = zeros + 1; i < a.depth(); ++i, ++pos)
      if (a.step_at(i) != 0) return false;
    return a.depth() - zeros <= g.teeth.length_at_spine(n);
  }
  static bool contains_in(const StarGen& g, const Address& a) {
    if (a.is_root()) return true;
    std::uint64_t k = a.step_at(0) + 1;
    for (std::uint64_t i = 1; i < a.depth(); ++i)
      if (a.step_at(i) != 0) return false;
    return a.depth() <= g.arms.length.at(k);
  }
  static bool contains_in(const GraftGen& g, const Address& a) {
    auto r = resolve(g, a);
    return r.in_graft ? g.graft->contains(r.local) : g.base->contains(r.local);
  }

  static std::optional<std::uint64_t> finite_node(const FiniteGen& g, const Address& a) {
    std::uint64_t node = 0;
    for (std::uint64_t i = 0; i < a.depth(); ++i) {
      std::uint64_t c = a.step_at(i);
      const auto& kids = g.children[static_cast<std::size_t>(node)];
      if (c >= kids.size()) return std::nullopt;
      node = kids[static_cast<std::size_t>(c)];
    }
    return node;
  }

  Shape shape_;
};

// ---- JSON ----

inline nlohmann::ordered_json length_rule_to_json(const LengthRule& r) {
  nlohmann::ordered_json j;
  if (r.kind == LengthRule::Kind::Constant) {
    j["kind"] = "const";
    j["value"] = r.value;
  } else {
    j["kind"] = "linear";
    j["slope"] = r.slope;
    j["offset"] = r.offset;
  }
  return j;
}

inline LengthRule length_rule_from_json(const nlohmann::json& j) {
  std::string kind = j.at("kind").get<std::string>();
  if (kind == "const") return LengthRule::constant(j.at("value").get<std::uint64_t>());
  if (kind == "linear")
    return LengthRule::linear(j.at("slope").get<std::uint64_t>(),
                              j.at("offset").get<std::uint64_t>());
  fail(Errc::MalformedInput, "unknown length rule '" + kind + "'");
}

inline nlohmann::ordered_json TreeGenerator::to_json() const {
  nlohmann::ordered_json j;
  std::visit(
      [&](const auto& g) {
        using T = std::decay_t<decltype(g)>;
        if constexpr (std::is_same_v<T, RayGen>) {
          j["shape"] = "ray";
        } else if constexpr (std::is_same_v<T, FullBinaryGen>) {
          j["shape"] = "full-binary";
        } else if constexpr (std::is_same_v<T, FiniteGen>) {
          j["shape"] = "finite";
          j["children"] = g.children;
        } else if constexpr (std::is_same_v<T, CombGen>) {
          j["shape"] = "comb";
          nlohmann::ordered_json teeth;
          teeth["start"] = g.teeth.start;
          teeth["period"] = g.teeth.period;
          if (g.teeth.count)
            teeth["count"] = *g.teeth.count;
          else
            teeth["count"] = nullptr;
          teeth["length"] = length_rule_to_json(g.teeth.length);
          j["teeth"] = std::move(teeth);
        } else if constexpr (std::is_same_v<T, StarGen>) {
          j["shape"] = "star";
          j["arms"]["length"] = length_rule_to_json(g.arms.length);
        } else {
          j["shape"] = "graft";
          j["base"] = g.base->to_json();
          j["at"] = g.at.to_string();
          j["graft"] = g.graft->to_json();
        }
      },
      shape_);
  return j;
}

inline TreeGenerator TreeGenerator::from_json(const nlohmann::json& j) {
  try {
    std::string shape = j.at("shape").get<std::string>();
    if (shape == "ray") return ray();
    if (shape == "full-binary") return full_binary();
    if (shape == "finite")
      return finite(j.at("children").get<std::vector<std::vector<std::uint64_t>>>());
    if (shape == "comb") {
      const auto& tj = j.at("teeth");
      TeethSchedule t;
      t.start = tj.value("start", std::uint64_t{1});
      t.period = tj.value("period", std::uint64_t{1});
      if (tj.contains("count") && !tj.at("count").is_null())
        t.count = tj.at("count").get<std::uint64_t>();
      if (tj.contains("length")) t.length = length_rule_from_json(tj.at("length"));
      return comb(t);
    }
    if (shape == "star") {
      ArmSchedule a;
      if (j.contains("arms") && j.at("arms").contains("length"))
        a.length = length_rule_from_json(j.at("arms").at("length"));
      return star(a);
    }
    if (shape == "graft")
      return graft(from_json(j.at("base")), Address::parse(j.at("at").get<std::string>()),
                   from_json(j.at("graft")));
    fail(Errc::MalformedInput, "unknown shape '" + shape + "'");
  } catch (const nlohmann::json::exception& e) {
    fail(Errc::MalformedInput, e.what());
  }
}

inline std::string TreeGenerator::summary() const {
  return std::visit(
      [&](const auto& g) -> std::string {
        using T = std::decay_t<decltype(g)>;
        if constexpr (std::is_same_v<T, RayGen>) {
          return "ray";
        } else if constexpr (std::is_same_v<T, FullBinaryGen>) {
          return "full-binary";
        } else if constexpr (std::is_same_v<T, FiniteGen>) {
          return "finite(" + std::to_string(g.children.size()) + ")";
        } else if constexpr (std::is_same_v<T, CombGen>) {
          std::string s = "comb(start=" + std::to_string(g.teeth.start) +
                          ",period=" + std::to_string(g.teeth.period);
          if (g.teeth.count) s += ",count=" + std::to_string(*g.teeth.count);
          return s + ")";
        } else if constexpr (std::is_same_v<T, StarGen>) {
          return "star";
        } else {
          return "graft(" + g.base->summary() + "@" + g.at.to_string() + "<-" +
                 g.graft->summary() + ")";
        }
      },
      shape_);
}

}  // namespace ultratree
