#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <variant>

#include <json.hpp>

#include "ultratree/generator.hpp"
#include "ultratree/rational.hpp"

namespace ultratree {

// Vertex labelings over a generator, evaluated symbolically per address.
// All values are exact nonnegative rationals.
//
//   Constant             c everywhere
//   HarmonicOnRay        1/n at ray vertex v_n, 1 off the ray
//   HarmonicDepth        1/(depth+1)
//   RaySectionHarmonic   1/n for everything hanging under ray section n
//   ComponentHarmonic    0 at the hub, 1/k in the k-th component around it
//   CaseOne              0 at the hub, 1/n in component 2n, 1 in odd ones
//   CaseBranch           1/n at spine v_n, 1/n_k on even-ranked side
//                        branches, 1 elsewhere
//   Table                explicit labels with a default
class LabelingScheme {
 public:
  struct Constant {
    Rat value;
  };
  struct HarmonicOnRay {};
  struct HarmonicDepth {};
  struct RaySectionHarmonic {};
  struct ComponentHarmonic {
    Address hub;
  };
  struct CaseOne {
    Address hub;
  };
  struct CaseBranch {};
  struct Table {
    std::map<Address, Rat> labels;
    Rat fallback;
  };
  using Rule =
      std::variant<Constant, HarmonicOnRay, HarmonicDepth, RaySectionHarmonic, ComponentHarmonic,
                   CaseOne, CaseBranch, Table>;

  static LabelingScheme constant(Rat value) {
    if (value < 0) fail(Errc::NegativeLabel, "constant scheme");
    return LabelingScheme(Constant{std::move(value)});
  }
  static LabelingScheme harmonic_on_ray() { return LabelingScheme(HarmonicOnRay{}); }
  static LabelingScheme harmonic_depth() { return LabelingScheme(HarmonicDepth{}); }
  static LabelingScheme ray_section_harmonic() { return LabelingScheme(RaySectionHarmonic{}); }
  static LabelingScheme component_harmonic(Address hub) {
    return LabelingScheme(ComponentHarmonic{std::move(hub)});
  }
  static LabelingScheme case_one(Address hub) { return LabelingScheme(CaseOne{std::move(hub)}); }
  static LabelingScheme case_branch() { return LabelingScheme(CaseBranch{}); }
  static LabelingScheme table(std::map<Address, Rat> labels, Rat fallback) {
    for (const auto& [a, v] : labels)
      if (v < 0) fail(Errc::NegativeLabel, "vertex '" + a.to_string() + "'");
    if (fallback < 0) fail(Errc::NegativeLabel, "table fallback");
    return LabelingScheme(Table{std::move(labels), std::move(fallback)});
  }

  const Rule& rule() const { return rule_; }

  // Structural requirements against a generator; throws PreconditionMismatch.
  void validate_for(const TreeGenerator& gen) const {
    std::visit(
        [&](const auto& r) {
          using T = std::decay_t<decltype(r)>;
          if constexpr (std::is_same_v<T, HarmonicOnRay> ||
                        std::is_same_v<T, RaySectionHarmonic>) {
            if (!gen.has_canonical_ray())
              fail(Errc::PreconditionMismatch, "scheme needs a canonical ray");
          } else if constexpr (std::is_same_v<T, ComponentHarmonic> ||
                               std::is_same_v<T, CaseOne>) {
            if (!gen.contains(r.hub))
              fail(Errc::PreconditionMismatch,
                   "hub '" + r.hub.to_string() + "' not in the generator");
          } else if constexpr (std::is_same_v<T, CaseBranch>) {
            if (!gen.has_branch_structure())
              fail(Errc::PreconditionMismatch, "scheme needs comb branch structure");
          }
        },
        rule_);
  }

  Rat eval(const TreeGenerator& gen, const Address& a) const {
    return std::visit(
        [&](const auto& r) -> Rat {
          using T = std::decay_t<decltype(r)>;
          if constexpr (std::is_same_v<T, Constant>) {
            return r.value;
          } else if constexpr (std::is_same_v<T, HarmonicOnRay>) {
            if (auto n = gen.ray_index(a)) return Rat(1, *n);
            return Rat(1);
          } else if constexpr (std::is_same_v<T, HarmonicDepth>) {
            return Rat(1, a.depth() + 1);
          } else if constexpr (std::is_same_v<T, RaySectionHarmonic>) {
            if (auto n = gen.ray_section(a)) return Rat(1, *n);
            return Rat(1);
          } else if constexpr (std::is_same_v<T, ComponentHarmonic>) {
            if (a == r.hub) return Rat(0);
            auto k = gen.component_index(a, r.hub);
            return k ? Rat(1, *k) : Rat(1);
          } else if constexpr (std::is_same_v<T, CaseOne>) {
            if (a == r.hub) return Rat(0);
            auto c = gen.component_index(a, r.hub);
            if (c && *c % 2 == 0) return Rat(1, *c / 2);
            return Rat(1);
          } else if constexpr (std::is_same_v<T, CaseBranch>) {
            if (auto n = gen.ray_index(a)) return Rat(1, *n);
            if (auto rank = gen.branch_rank(a); rank && rank->first % 2 == 0)
              return Rat(1, rank->second);
            return Rat(1);
          } else {  // Table
            auto it = r.labels.find(a);
            return it == r.labels.end() ? r.fallback : it->second;
          }
        },
        rule_);
  }

  nlohmann::ordered_json to_json() const {
    nlohmann::ordered_json j;
    std::visit(
        [&](const auto& r) {
          using T = std::decay_t<decltype(r)>;
          if constexpr (std::is_same_v<T, Constant>) {
            j["rule"] = "constant";
            j["value"] = format_rat(r.value);
          } else if constexpr (std::is_same_v<T, HarmonicOnRay>) {
            j["rule"] = "harmonic-ray";
          } else if constexpr (std::is_same_v<T, HarmonicDepth>) {
            j["rule"] = "harmonic-depth";
          } else if constexpr (std::is_same_v<T, RaySectionHarmonic>) {
            j["rule"] = "ray-section-harmonic";
          } else if constexpr (std::is_same_v<T, ComponentHarmonic>) {
            j["rule"] = "component-harmonic";
            j["hub"] = r.hub.to_string();
          } else if constexpr (std::is_same_v<T, CaseOne>) {
            j["rule"] = "case1";
            j["hub"] = r.hub.to_string();
          } else if constexpr (std::is_same_v<T, CaseBranch>) {
            j["rule"] = "case222";
          } else {
            j["rule"] = "table";
            j["default"] = format_rat(r.fallback);
            nlohmann::ordered_json labels = nlohmann::ordered_json::object();
            for (const auto& [a, v] : r.labels) labels[a.to_string()] = format_rat(v);
            j["labels"] = std::move(labels);
          }
        },
        rule_);
    return j;
  }

  static LabelingScheme from_json(const nlohmann::json& j) {
    try {
      std::string rule = j.at("rule").get<std::string>();
      if (rule == "constant") return constant(parse_rat(j.at("value").get<std::string>()));
      if (rule == "harmonic-ray") return harmonic_on_ray();
      if (rule == "harmonic-depth") return harmonic_depth();
      if (rule == "ray-section-harmonic") return ray_section_harmonic();
      if (rule == "component-harmonic")
        return component_harmonic(Address::parse(j.at("hub").get<std::string>()));
      if (rule == "case1") return case_one(Address::parse(j.at("hub").get<std::string>()));
      if (rule == "case222") return case_branch();
      if (rule == "table") {
        std::map<Address, Rat> labels;
        if (j.contains("labels"))
          for (const auto& [key, value] : j.at("labels").items())
            labels.emplace(Address::parse(key), parse_rat(value.get<std::string>()));
        Rat fallback =
            j.contains("default") ? parse_rat(j.at("default").get<std::string>()) : Rat(1);
        return table(std::move(labels), std::move(fallback));
      }
      fail(Errc::MalformedInput, "unknown labeling rule '" + rule + "'");
    } catch (const nlohmann::json::exception& e) {
      fail(Errc::MalformedInput, e.what());
    } catch (const std::invalid_argument& e) {
      fail(Errc::MalformedInput, e.what());
    }
  }

  std::string summary() const {
    return std::visit(
        [](const auto& r) -> std::string {
          using T = std::decay_t<decltype(r)>;
          if constexpr (std::is_same_v<T, Constant>)
            return "constant(" + format_rat(r.value) + ")";
          else if constexpr (std::is_same_v<T, HarmonicOnRay>)
            return "harmonic-ray";
          else if constexpr (std::is_same_v<T, HarmonicDepth>)
            return "harmonic-depth";
          else if constexpr (std::is_same_v<T, RaySectionHarmonic>)
            return "ray-section-harmonic";
          else if constexpr (std::is_same_v<T, ComponentHarmonic>)
            return "component-harmonic@" + r.hub.to_string();
          else if constexpr (std::is_same_v<T, CaseOne>)
            return "case1@" + r.hub.to_string();
          else if constexpr (std::is_same_v<T, CaseBranch>)
            return "case222";
          else
            return "table(" + std::to_string(r.labels.size()) + ")";
        },
        rule_);
  }

 private:
  explicit LabelingScheme(Rule r) : rule_(std::move(r)) {}
  Rule rule_;
};

}  // namespace ultratree
