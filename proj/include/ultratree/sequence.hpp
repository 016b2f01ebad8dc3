#pragma once

#include <optional>
#include <set>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include <json.hpp>

#include "ultratree/truncation.hpp"

namespace ultratree {

// Symbolic vertex sequences over a generator. A spec denotes an infinite (or
// finite, for explicit/capped shapes) sequence; materialization takes the
// longest prefix that fits inside a truncation.
class SequenceSpec {
 public:
  struct RaySeq {
    std::uint64_t start = 1, step = 1;  // v_start, v_(start+step), ...
  };
  struct ToothTips {};
  struct ArmTips {};
  struct BfsAll {};
  struct Alternate {
    std::vector<SequenceSpec> parts;  // round robin: p1[1], p2[1], ..., p1[2], ...
  };
  struct Explicit {
    std::vector<Address> terms;
  };
  using Kind = std::variant<RaySeq, ToothTips, ArmTips, BfsAll, Alternate, Explicit>;

  static SequenceSpec ray(std::uint64_t start = 1, std::uint64_t step = 1) {
    if (start < 1 || step < 1) fail(Errc::MalformedInput, "ray sequence needs start, step >= 1");
    return SequenceSpec(RaySeq{start, step});
  }
  static SequenceSpec tooth_tips() { return SequenceSpec(ToothTips{}); }
  static SequenceSpec arm_tips() { return SequenceSpec(ArmTips{}); }
  static SequenceSpec bfs_all() { return SequenceSpec(BfsAll{}); }
  static SequenceSpec alternate(std::vector<SequenceSpec> parts) {
    if (parts.size() < 2) fail(Errc::MalformedInput, "alternate needs at least two parts");
    return SequenceSpec(Alternate{std::move(parts)});
  }
  static SequenceSpec explicit_terms(std::vector<Address> terms) {
    if (terms.empty()) fail(Errc::MalformedInput, "explicit sequence needs terms");
    return SequenceSpec(Explicit{std::move(terms)});
  }

  const Kind& kind() const { return kind_; }

  // The i-th term (1-based) as an address, independent of any truncation.
  // nullopt when the sequence is genuinely shorter than i.
  std::optional<Address> term(const TreeGenerator& gen, std::uint64_t i) const {
    return std::visit(
        [&](const auto& k) -> std::optional<Address> {
          using T = std::decay_t<decltype(k)>;
          if constexpr (std::is_same_v<T, RaySeq>) {
            if (!gen.has_canonical_ray())
              fail(Errc::PreconditionMismatch, "ray sequence needs a canonical ray");
            return gen.ray_address(k.start + (i - 1) * k.step);
          } else if constexpr (std::is_same_v<T, ToothTips>) {
            return gen.tooth_tip(i);
          } else if constexpr (std::is_same_v<T, ArmTips>) {
            return gen.arm_tip(i);
          } else if constexpr (std::is_same_v<T, BfsAll>) {
            return std::nullopt;  // only meaningful against a truncation
          } else if constexpr (std::is_same_v<T, Alternate>) {
            std::uint64_t p = (i - 1) % k.parts.size();
            std::uint64_t j = (i - 1) / k.parts.size() + 1;
            return k.parts[static_cast<std::size_t>(p)].term(gen, j);
          } else {
            if (i > k.terms.size()) return std::nullopt;
            return k.terms[static_cast<std::size_t>(i - 1)];
          }
        },
        kind_);
  }

  bool is_bfs_like() const { return std::holds_alternative<BfsAll>(kind_); }

  nlohmann::ordered_json to_json() const {
    nlohmann::ordered_json j;
    std::visit(
        [&](const auto& k) {
          using T = std::decay_t<decltype(k)>;
          if constexpr (std::is_same_v<T, RaySeq>) {
            j["kind"] = "ray";
            j["start"] = k.start;
            j["step"] = k.step;
          } else if constexpr (std::is_same_v<T, ToothTips>) {
            j["kind"] = "tooth-tips";
          } else if constexpr (std::is_same_v<T, ArmTips>) {
            j["kind"] = "arm-tips";
          } else if constexpr (std::is_same_v<T, BfsAll>) {
            j["kind"] = "bfs-all";
          } else if constexpr (std::is_same_v<T, Alternate>) {
            j["kind"] = "alternate";
            j["parts"] = nlohmann::ordered_json::array();
            for (const auto& p : k.parts) j["parts"].push_back(p.to_json());
          } else {
            j["kind"] = "explicit";
            j["terms"] = nlohmann::ordered_json::array();
            for (const Address& a : k.terms) j["terms"].push_back(a.to_string());
          }
        },
        kind_);
    return j;
  }

  static SequenceSpec from_json(const nlohmann::json& j) {
    try {
      std::string kind = j.at("kind").get<std::string>();
      if (kind == "ray")
        return ray(j.value("start", std::uint64_t{1}), j.value("step", std::uint64_t{1}));
      if (kind == "tooth-tips") return tooth_tips();
      if (kind == "arm-tips") return arm_tips();
      if (kind == "bfs-all") return bfs_all();
      if (kind == "alternate") {
        std::vector<SequenceSpec> parts;
        for (const auto& p : j.at("parts")) parts.push_back(from_json(p));
        return alternate(std::move(parts));
      }
      if (kind == "explicit") {
        std::vector<Address> terms;
        for (const auto& t : j.at("terms")) terms.push_back(Address::parse(t.get<std::string>()));
        return explicit_terms(std::move(terms));
      }
      fail(Errc::MalformedInput, "unknown sequence kind '" + kind + "'");
    } catch (const nlohmann::json::exception& e) {
      fail(Errc::MalformedInput, e.what());
    }
  }

  std::string summary() const {
    return std::visit(
        [](const auto& k) -> std::string {
          using T = std::decay_t<decltype(k)>;
          if constexpr (std::is_same_v<T, RaySeq>)
            return "ray(start=" + std::to_string(k.start) + ",step=" + std::to_string(k.step) + ")";
          else if constexpr (std::is_same_v<T, ToothTips>)
            return "tooth-tips";
          else if constexpr (std::is_same_v<T, ArmTips>)
            return "arm-tips";
          else if constexpr (std::is_same_v<T, BfsAll>)
            return "bfs-all";
          else if constexpr (std::is_same_v<T, Alternate>) {
            std::string s = "alternate(";
            for (std::size_t i = 0; i < k.parts.size(); ++i) {
              if (i) s += ",";
              s += k.parts[i].summary();
            }
            return s + ")";
          } else {
            return "explicit(" + std::to_string(k.terms.size()) + ")";
          }
        },
        kind_);
  }

 private:
  explicit SequenceSpec(Kind k) : kind_(std::move(k)) {}
  Kind kind_;
};

struct MaterializedSequence {
  std::vector<Address> addresses;  // 1-based positions map to [i-1]
  std::vector<int> tree_index;     // into the truncation's tree
  // true when the next term exists but fell outside the truncation: growing
  // the budget can extend the prefix
  bool hit_truncation_wall = false;
};

// Longest all-inside prefix of the sequence, capped at max_terms. Repeated
// vertices are a spec bug worth failing loudly over.
inline MaterializedSequence materialize(const SequenceSpec& seq, const Truncation& tr,
                                        std::uint64_t max_terms = 1u << 20) {
  MaterializedSequence out;
  std::set<Address> seen;
  auto push = [&](const Address& a) -> bool {
    auto ix = tr.tree.find(VertexId::of_address(a));
    if (!ix) {
      out.hit_truncation_wall = true;
      return false;
    }
    if (!seen.insert(a).second)
      fail(Errc::SequenceRepeats, "term '" + a.to_string() + "' repeats");
    out.addresses.push_back(a);
    out.tree_index.push_back(*ix);
    return true;
  };

  if (seq.is_bfs_like()) {
    for (const Address& a : tr.bfs_order) {
      if (out.addresses.size() == max_terms) break;
      if (!push(a)) break;
    }
    // the infinite tree continues past any truncation
    if (tr.tree.size() == tr.budget && tr.gen.is_infinite()) out.hit_truncation_wall = true;
    return out;
  }
  for (std::uint64_t i = 1; i <= max_terms; ++i) {
    auto a = seq.term(tr.gen, i);
    if (!a) break;  // genuinely finite sequence
    if (!tr.gen.contains(*a))
      fail(Errc::UnknownVertex, "sequence term '" + a->to_string() + "' not in the generator");
    if (!push(*a)) break;
  }
  return out;
}

}  // namespace ultratree
