#include <catch2/catch_amalgamated.hpp>

#include <set>
#include <string>
#include <vector>

#include "ultratree/classify.hpp"
#include "ultratree/generator.hpp"
#include "ultratree/scheme.hpp"
#include "ultratree/sequence.hpp"
#include "ultratree/truncation.hpp"

using namespace ultratree;

namespace {

Address addr(const char* s) { return Address::parse(s); }

std::vector<std::string> order_strings(const Truncation& tr) {
  std::vector<std::string> out;
  for (const Address& a : tr.bfs_order) out.push_back(a.to_string());
  return out;
}

std::vector<std::string> frontier_strings(const Truncation& tr) {
  std::vector<std::string> out;
  for (int v = 0; v < static_cast<int>(tr.tree.size()); ++v)
    if (tr.tree.is_frontier(v)) out.push_back(tr.tree.id(v).to_string());
  return out;
}

TeethSchedule teeth_everywhere(std::uint64_t len = 1) {
  TeethSchedule t;
  t.length = LengthRule::constant(len);
  return t;
}

}  // namespace

TEST_CASE("ray truncation") {
  Truncation tr = truncate(TreeGenerator::ray(), LabelingScheme::harmonic_on_ray(), 5);
  CHECK(order_strings(tr) ==
        std::vector<std::string>{"r", "r/0", "r/0^2", "r/0^3", "r/0^4"});
  CHECK(frontier_strings(tr) == std::vector<std::string>{"r/0^4"});
  CHECK(tr.tree.label(VertexId::parse("r/0^3")) == Rat(1, 4));
}

TEST_CASE("full binary truncation fills levels") {
  Truncation tr = truncate(TreeGenerator::full_binary(), LabelingScheme::constant(Rat(1)), 7);
  REQUIRE(tr.tree.size() == 7);
  std::set<std::string> leaves{"r/0^2", "r/0/1", "r/1/0", "r/1^2"};
  for (const std::string& l : leaves) CHECK(tr.tree.find(VertexId::parse(l)).has_value());
  auto front = frontier_strings(tr);
  CHECK(std::set<std::string>(front.begin(), front.end()) == leaves);
}

TEST_CASE("unbounded star truncation interleaves fairly") {
  ArmSchedule arms;
  Truncation tr = truncate(TreeGenerator::star(arms), LabelingScheme::constant(Rat(1)), 4);
  CHECK(order_strings(tr) == std::vector<std::string>{"r", "r/0", "r/1", "r/2"});
  CHECK(frontier_strings(tr) == std::vector<std::string>{"r"});
}

TEST_CASE("comb truncation, teeth everywhere") {
  Truncation tr =
      truncate(TreeGenerator::comb(teeth_everywhere()), LabelingScheme::harmonic_on_ray(), 9);
  CHECK(order_strings(tr) ==
        std::vector<std::string>{"r", "r/0", "r/1", "r/0^2", "r/0/1", "r/0^3", "r/0^2/1",
                                 "r/0^4", "r/0^3/1"});
  CHECK(frontier_strings(tr) == std::vector<std::string>{"r/0^4"});
  // teeth carry label 1, spine 1/n
  CHECK(tr.tree.label(VertexId::parse("r/0^3")) == Rat(1, 4));
  CHECK(tr.tree.label(VertexId::parse("r/0^2/1")) == Rat(1));
}

TEST_CASE("truncations are prefix-monotone in the budget") {
  TreeGenerator gens[] = {TreeGenerator::ray(), TreeGenerator::full_binary(),
                          TreeGenerator::comb(teeth_everywhere(2)),
                          TreeGenerator::star(ArmSchedule{LengthRule::linear(1, 0)})};
  for (const TreeGenerator& gen : gens) {
    Truncation small = truncate(gen, LabelingScheme::harmonic_depth(), 20);
    Truncation big = truncate(gen, LabelingScheme::harmonic_depth(), 50);
    REQUIRE(small.bfs_order.size() == 20);
    for (std::size_t i = 0; i < small.bfs_order.size(); ++i)
      REQUIRE(small.bfs_order[i] == big.bfs_order[i]);
    for (const Address& a : small.bfs_order)
      CHECK(small.tree.label(VertexId::of_address(a)) == big.tree.label(VertexId::of_address(a)));
  }
}

TEST_CASE("budget edge cases") {
  CHECK_THROWS_AS(truncate(TreeGenerator::ray(), LabelingScheme::constant(Rat(1)), 0), Error);
  Truncation one = truncate(TreeGenerator::ray(), LabelingScheme::constant(Rat(0)), 1);
  CHECK(one.tree.size() == 1);  // single zero-labeled vertex: no edge, not degenerate
  CHECK(frontier_strings(one) == std::vector<std::string>{"r"});

  // finite tree smaller than the budget: no frontier at all
  Truncation fin =
      truncate(TreeGenerator::finite({{1, 2}, {}, {}}), LabelingScheme::constant(Rat(1)), 10);
  CHECK(fin.tree.size() == 3);
  CHECK(frontier_strings(fin).empty());
}

TEST_CASE("degenerate labelings are rejected at truncation, naming an edge") {
  try {
    truncate(TreeGenerator::ray(), LabelingScheme::constant(Rat(0)), 3);
    FAIL("expected DegenerateOnTruncation");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::DegenerateOnTruncation);
    CHECK_THAT(e.what(), Catch::Matchers::ContainsSubstring("r/0"));
  }
}

TEST_CASE("scheme evaluation on shapes") {
  TreeGenerator comb = TreeGenerator::comb(teeth_everywhere());
  SECTION("harmonic on ray") {
    LabelingScheme s = LabelingScheme::harmonic_on_ray();
    CHECK(s.eval(comb, addr("r")) == Rat(1));
    CHECK(s.eval(comb, addr("r/0^6")) == Rat(1, 7));
    CHECK(s.eval(comb, addr("r/0^2/1")) == Rat(1));
  }
  SECTION("ray-section harmonic: teeth inherit the spine index") {
    LabelingScheme s = LabelingScheme::ray_section_harmonic();
    CHECK(s.eval(comb, addr("r/0^2")) == Rat(1, 3));
    CHECK(s.eval(comb, addr("r/0^2/1")) == Rat(1, 3));
    CHECK(s.eval(comb, addr("r/1")) == Rat(1));
  }
  SECTION("harmonic depth") {
    LabelingScheme s = LabelingScheme::harmonic_depth();
    CHECK(s.eval(comb, addr("r")) == Rat(1));
    CHECK(s.eval(comb, addr("r/0^3")) == Rat(1, 4));
    CHECK(s.eval(comb, addr("r/0/1")) == Rat(1, 3));
  }
  SECTION("case-1 scheme around a hub") {
    TreeGenerator star = TreeGenerator::star(ArmSchedule{});
    LabelingScheme s = LabelingScheme::case_one(Address{});
    CHECK(s.eval(star, addr("r")) == Rat(0));
    CHECK(s.eval(star, addr("r/0")) == Rat(1));       // component 1
    CHECK(s.eval(star, addr("r/1")) == Rat(1, 1));    // component 2 -> 1/1
    CHECK(s.eval(star, addr("r/3")) == Rat(1, 2));    // component 4 -> 1/2
    CHECK(s.eval(star, addr("r/9")) == Rat(1, 5));    // component 10 -> 1/5
    CHECK(s.eval(star, addr("r/4")) == Rat(1));       // component 5, odd
  }
  SECTION("case-1 scheme with a non-root hub counts the root side first") {
    TreeGenerator ray = TreeGenerator::ray();
    LabelingScheme s = LabelingScheme::case_one(addr("r/0"));
    CHECK(s.eval(ray, addr("r/0")) == Rat(0));
    CHECK(s.eval(ray, addr("r")) == Rat(1));          // root side = component 1
    CHECK(s.eval(ray, addr("r/0^2")) == Rat(1, 1));   // child 0 subtree = component 2
  }
  SECTION("case-2.2.2 scheme on the comb") {
    LabelingScheme s = LabelingScheme::case_branch();
    CHECK(s.eval(comb, addr("r")) == Rat(1));         // spine v_1
    CHECK(s.eval(comb, addr("r/0^4")) == Rat(1, 5));  // spine v_5
    CHECK(s.eval(comb, addr("r/1")) == Rat(1));       // tooth at spine 1: never ranked
    CHECK(s.eval(comb, addr("r/0/1")) == Rat(1));     // n=2, k=1 odd
    CHECK(s.eval(comb, addr("r/0^2/1")) == Rat(1, 3));  // n=3, k=2 even
    CHECK(s.eval(comb, addr("r/0^3/1")) == Rat(1));     // n=4, k=3 odd
    CHECK(s.eval(comb, addr("r/0^4/1")) == Rat(1, 5));  // n=5, k=4 even
  }
  SECTION("table with fallback") {
    LabelingScheme s =
        LabelingScheme::table({{addr("r"), Rat(0)}, {addr("r/0"), Rat(1, 7)}}, Rat(2));
    CHECK(s.eval(comb, addr("r")) == Rat(0));
    CHECK(s.eval(comb, addr("r/0")) == Rat(1, 7));
    CHECK(s.eval(comb, addr("r/5")) == Rat(2));
  }
  SECTION("structural preconditions") {
    TreeGenerator star = TreeGenerator::star(ArmSchedule{});
    CHECK_THROWS_AS(truncate(star, LabelingScheme::harmonic_on_ray(), 5), Error);
    CHECK_THROWS_AS(truncate(TreeGenerator::ray(), LabelingScheme::case_branch(), 5), Error);
    CHECK_THROWS_AS(
        truncate(TreeGenerator::ray(), LabelingScheme::case_one(addr("r/1")), 5), Error);
  }
}

TEST_CASE("graft addressing") {
  SECTION("graft at the root shifts siblings up") {
    TreeGenerator leafy = TreeGenerator::finite({{}});
    TreeGenerator g = TreeGenerator::graft(TreeGenerator::comb(teeth_everywhere()), Address{},
                                           leafy);
    CHECK(g.contains(addr("r/0")));           // the grafted leaf
    CHECK(*g.child_count(addr("r")) == 3);    // leaf + shifted spine + shifted tooth
    CHECK(*g.child_count(addr("r/0")) == 0);
    CHECK(g.ray_address(2) == addr("r/1"));   // spine shifted from slot 0 to 1
    CHECK(g.ray_address(3) == addr("r/1/0"));
    CHECK(*g.tooth_tip(1) == addr("r/2"));    // tooth shifted from slot 1 to 2
    CHECK(*g.tooth_tip(2) == addr("r/1/1"));  // deeper teeth unaffected
    CHECK(g.ray_index(addr("r/1/0")).has_value());
    CHECK(!g.ray_index(addr("r/0")).has_value());
  }
  SECTION("double graft at the same vertex") {
    TreeGenerator leafy = TreeGenerator::finite({{}});
    TreeGenerator inner = TreeGenerator::graft(TreeGenerator::comb(teeth_everywhere()),
                                               Address{}, leafy);
    TreeGenerator outer = TreeGenerator::graft(inner, Address{}, leafy);
    CHECK(*outer.child_count(addr("r")) == 4);
    CHECK(outer.contains(addr("r/0")));       // second leaf
    CHECK(outer.contains(addr("r/1")));       // first leaf, shifted
    CHECK(outer.ray_address(2) == addr("r/2"));
    CHECK(*outer.tooth_tip(1) == addr("r/3"));
  }
  SECTION("graft deeper on the spine") {
    TreeGenerator g = TreeGenerator::graft(TreeGenerator::ray(), addr("r/0^2"),
                                           TreeGenerator::finite({{1}, {}}));
    CHECK(*g.child_count(addr("r/0^2")) == 2);
    CHECK(g.contains(addr("r/0^3")));         // graft root took slot 0
    CHECK(g.contains(addr("r/0^3/0")));       // graft child
    CHECK(g.ray_address(4) == addr("r/0^2/1"));
    CHECK(g.ray_address(5) == addr("r/0^2/1/0"));
    CHECK(*g.ray_index(addr("r/0^2/1/0")) == 5);
    CHECK(!g.ray_index(addr("r/0^3")).has_value());
    CHECK(*g.ray_section(addr("r/0^3/0")) == 3);  // projects to the attachment
  }
  SECTION("graft point must exist") {
    CHECK_THROWS_AS(
        TreeGenerator::graft(TreeGenerator::ray(), addr("r/1"), TreeGenerator::ray()), Error);
  }
}

TEST_CASE("classification: almost rays get explicit certificates") {
  SECTION("pure ray") {
    Classification c = classify_almost_ray(TreeGenerator::ray());
    REQUIRE(c.almost_ray);
    CHECK(c.certificate->t0_vertices.empty());
  }
  SECTION("comb with finitely many teeth") {
    TeethSchedule t = teeth_everywhere(2);
    t.count = 3;
    TreeGenerator gen = TreeGenerator::comb(t);
    Classification c = classify_almost_ray(gen);
    REQUIRE(c.almost_ray);
    // teeth at spines 1..3 of length 2, plus the spine segment v_1..v_3
    CHECK(c.certificate->t0_vertices.size() == 9);
    Truncation tr = truncate(gen, LabelingScheme::harmonic_on_ray(), 60);
    for (const Address& a : tr.bfs_order) CHECK(c.certificate->covers(gen, a));
    for (const auto& [p, q] : c.certificate->t0_edges) {
      CHECK(q.parent() == p);
    }
  }
  SECTION("finite graft on a ray") {
    TreeGenerator gen = TreeGenerator::graft(TreeGenerator::ray(), addr("r/0^2"),
                                             TreeGenerator::finite({{1, 2}, {}, {}}));
    Classification c = classify_almost_ray(gen);
    REQUIRE(c.almost_ray);
    Truncation tr = truncate(gen, LabelingScheme::harmonic_depth(), 40);
    for (const Address& a : tr.bfs_order) CHECK(c.certificate->covers(gen, a));
  }
  SECTION("infinite ray grafted under a finite base") {
    TreeGenerator gen = TreeGenerator::graft(TreeGenerator::finite({{1, 2}, {}, {}}), addr("r/0"),
                                             TreeGenerator::ray());
    Classification c = classify_almost_ray(gen);
    REQUIRE(c.almost_ray);
    CHECK(gen.has_canonical_ray());
    CHECK(gen.ray_address(1) == addr("r/0/0"));
    Truncation tr = truncate(gen, LabelingScheme::harmonic_depth(), 40);
    for (const Address& a : tr.bfs_order) CHECK(c.certificate->covers(gen, a));
  }
}

TEST_CASE("classification: obstructions") {
  SECTION("finite generators are not infinite trees") {
    Classification c = classify_almost_ray(TreeGenerator::finite({{1}, {}}));
    CHECK(!c.almost_ray);
    CHECK(*c.reason == NotAlmostRayReason::NotInfinite);
  }
  SECTION("unbounded star") {
    Classification c = classify_almost_ray(TreeGenerator::star(ArmSchedule{}));
    CHECK(*c.reason == NotAlmostRayReason::InfiniteDegreeVertex);
    REQUIRE(c.witnesses.size() == 1);
    CHECK(c.witnesses[0] == Address{});
  }
  SECTION("full binary tree") {
    Classification c = classify_almost_ray(TreeGenerator::full_binary());
    CHECK(*c.reason == NotAlmostRayReason::TwoDisjointRays);
    CHECK(c.witnesses.size() == 2);
  }
  SECTION("two grafted rays") {
    Classification c = classify_almost_ray(
        TreeGenerator::graft(TreeGenerator::ray(), Address{}, TreeGenerator::ray()));
    CHECK(*c.reason == NotAlmostRayReason::TwoDisjointRays);
  }
  SECTION("comb with teeth forever") {
    Classification c = classify_almost_ray(TreeGenerator::comb(teeth_everywhere()));
    CHECK(*c.reason == NotAlmostRayReason::InfinitelyManyVerticesOffEveryRay);
    CHECK(c.witnesses.size() == 2);
  }
  SECTION("star grafted onto a ray") {
    Classification c = classify_almost_ray(
        TreeGenerator::graft(TreeGenerator::ray(), addr("r/0"), TreeGenerator::star(ArmSchedule{})));
    CHECK(*c.reason == NotAlmostRayReason::InfiniteDegreeVertex);
    REQUIRE(c.witnesses.size() == 1);
    CHECK(c.witnesses[0] == addr("r/0/0"));
  }
}

TEST_CASE("sequence materialization") {
  TreeGenerator comb = TreeGenerator::comb(teeth_everywhere());
  Truncation tr = truncate(comb, LabelingScheme::harmonic_on_ray(), 12);

  SECTION("ray sequence") {
    MaterializedSequence m = materialize(SequenceSpec::ray(), tr);
    REQUIRE(m.addresses.size() == 7);  // v_1..v_7 materialized at budget 12
    CHECK(m.addresses[0] == addr("r"));
    CHECK(m.addresses[6] == addr("r/0^6"));
    CHECK(m.hit_truncation_wall);
  }
  SECTION("ray sequence with start and step") {
    MaterializedSequence m = materialize(SequenceSpec::ray(2, 3), tr);
    REQUIRE(m.addresses.size() == 2);  // v_2, v_5; v_8 is out
    CHECK(m.addresses[0] == addr("r/0"));
    CHECK(m.addresses[1] == addr("r/0^4"));
    CHECK(m.hit_truncation_wall);
  }
  SECTION("tooth tips") {
    MaterializedSequence m = materialize(SequenceSpec::tooth_tips(), tr);
    REQUIRE(m.addresses.size() == 5);
    CHECK(m.addresses[0] == addr("r/1"));
    CHECK(m.addresses[1] == addr("r/0/1"));
    CHECK(m.addresses[4] == addr("r/0^4/1"));
    CHECK(m.hit_truncation_wall);
  }
  SECTION("alternate tips with the spine from v_2") {
    MaterializedSequence m = materialize(
        SequenceSpec::alternate({SequenceSpec::tooth_tips(), SequenceSpec::ray(2)}), tr);
    REQUIRE(m.addresses.size() >= 6);
    CHECK(m.addresses[0] == addr("r/1"));     // tip 1
    CHECK(m.addresses[1] == addr("r/0"));     // v_2
    CHECK(m.addresses[2] == addr("r/0/1"));   // tip 2
    CHECK(m.addresses[3] == addr("r/0^2"));   // v_3
  }
  SECTION("bfs order sequence") {
    MaterializedSequence m = materialize(SequenceSpec::bfs_all(), tr);
    CHECK(m.addresses.size() == 12);
    CHECK(m.addresses == tr.bfs_order);
    CHECK(m.hit_truncation_wall);
  }
  SECTION("bfs on a fully materialized finite tree hits no wall") {
    Truncation fin =
        truncate(TreeGenerator::finite({{1, 2}, {}, {}}), LabelingScheme::constant(Rat(1)), 10);
    MaterializedSequence m = materialize(SequenceSpec::bfs_all(), fin);
    CHECK(m.addresses.size() == 3);
    CHECK(!m.hit_truncation_wall);
  }
  SECTION("arm tips on the growing star") {
    TreeGenerator star = TreeGenerator::star(ArmSchedule{LengthRule::linear(1, 0)});
    Truncation st = truncate(star, LabelingScheme::constant(Rat(1)), 15);
    MaterializedSequence m = materialize(SequenceSpec::arm_tips(), st);
    REQUIRE(m.addresses.size() >= 2);
    CHECK(m.addresses[0] == addr("r/0"));
    CHECK(m.addresses[1] == addr("r/1/0"));
  }
  SECTION("explicit terms, repeats, and strays") {
    CHECK_THROWS_AS(
        materialize(SequenceSpec::explicit_terms({addr("r"), addr("r/0"), addr("r")}), tr), Error);
    CHECK_THROWS_AS(materialize(SequenceSpec::explicit_terms({addr("r/7")}), tr), Error);
    MaterializedSequence m =
        materialize(SequenceSpec::explicit_terms({addr("r/1"), addr("r")}), tr);
    CHECK(m.addresses.size() == 2);
    CHECK(!m.hit_truncation_wall);
  }
  SECTION("alternate over overlapping parts repeats loudly") {
    CHECK_THROWS_AS(
        materialize(SequenceSpec::alternate({SequenceSpec::ray(), SequenceSpec::ray()}), tr),
        Error);
  }
  SECTION("max_terms caps the prefix") {
    MaterializedSequence m = materialize(SequenceSpec::bfs_all(), tr, 4);
    CHECK(m.addresses.size() == 4);
  }
}

TEST_CASE("generator and scheme json round trips") {
  TeethSchedule t;
  t.start = 2;
  t.period = 3;
  t.count = 5;
  t.length = LengthRule::linear(1, 1);
  TreeGenerator gens[] = {
      TreeGenerator::ray(),
      TreeGenerator::full_binary(),
      TreeGenerator::finite({{1, 2}, {}, {3}, {}}),
      TreeGenerator::comb(t),
      TreeGenerator::star(ArmSchedule{LengthRule::constant(2)}),
      TreeGenerator::graft(TreeGenerator::ray(), addr("r/0"), TreeGenerator::finite({{}}))};
  for (const TreeGenerator& gen : gens) {
    auto j = gen.to_json();
    TreeGenerator back = TreeGenerator::from_json(nlohmann::json::parse(j.dump()));
    CHECK(back.to_json().dump() == j.dump());
  }

  LabelingScheme schemes[] = {
      LabelingScheme::constant(Rat(3, 2)),
      LabelingScheme::harmonic_on_ray(),
      LabelingScheme::harmonic_depth(),
      LabelingScheme::ray_section_harmonic(),
      LabelingScheme::component_harmonic(Address{}),
      LabelingScheme::case_one(Address{}),
      LabelingScheme::case_branch(),
      LabelingScheme::table({{addr("r"), Rat(0)}}, Rat(1))};
  for (const LabelingScheme& s : schemes) {
    auto j = s.to_json();
    LabelingScheme back = LabelingScheme::from_json(nlohmann::json::parse(j.dump()));
    CHECK(back.to_json().dump() == j.dump());
  }

  SequenceSpec seqs[] = {
      SequenceSpec::ray(2, 3), SequenceSpec::tooth_tips(), SequenceSpec::arm_tips(),
      SequenceSpec::bfs_all(),
      SequenceSpec::alternate({SequenceSpec::tooth_tips(), SequenceSpec::ray(2)}),
      SequenceSpec::explicit_terms({addr("r"), addr("r/0/1")})};
  for (const SequenceSpec& s : seqs) {
    auto j = s.to_json();
    SequenceSpec back = SequenceSpec::from_json(nlohmann::json::parse(j.dump()));
    CHECK(back.to_json().dump() == j.dump());
  }

  CHECK_THROWS_AS(TreeGenerator::from_json(nlohmann::json::parse(R"({"shape":"salad"})")), Error);
  CHECK_THROWS_AS(LabelingScheme::from_json(nlohmann::json::parse(R"({"rule":"salad"})")), Error);
  CHECK_THROWS_AS(SequenceSpec::from_json(nlohmann::json::parse(R"({"kind":"salad"})")), Error);
}

TEST_CASE("finite generator validation") {
  CHECK_THROWS_AS(TreeGenerator::finite({}), Error);
  CHECK_THROWS_AS(TreeGenerator::finite({{1}, {1}}), Error);   // two parents
  CHECK_THROWS_AS(TreeGenerator::finite({{0}}), Error);        // root as child
  CHECK_THROWS_AS(TreeGenerator::finite({{5}, {}}), Error);    // out of range
  CHECK_THROWS_AS(TreeGenerator::finite({{}, {}}), Error);     // unreachable node
  TreeGenerator ok = TreeGenerator::finite({{2, 1}, {}, {}});  // child order kept
  CHECK(ok.enumerate_all().size() == 3);
  Truncation tr = truncate(ok, LabelingScheme::harmonic_depth(), 10);
  CHECK(tr.bfs_order[1] == addr("r/0"));
}

TEST_CASE("teeth and arm schedule edges") {
  CHECK_THROWS_AS(TreeGenerator::comb(TeethSchedule{0, 1, std::nullopt, LengthRule::constant(1)}),
                  Error);
  CHECK_THROWS_AS(TreeGenerator::comb(TeethSchedule{1, 0, std::nullopt, LengthRule::constant(1)}),
                  Error);
  CHECK_THROWS_AS(TreeGenerator::comb(teeth_everywhere(0)), Error);
  CHECK_THROWS_AS(TreeGenerator::star(ArmSchedule{LengthRule::constant(0)}), Error);

  TeethSchedule sparse;
  sparse.start = 3;
  sparse.period = 2;  // teeth at 3, 5, 7, ...
  TreeGenerator gen = TreeGenerator::comb(sparse);
  CHECK(!gen.tooth_tip(0).has_value());
  CHECK(*gen.tooth_tip(1) == addr("r/0^2/1"));
  CHECK(*gen.tooth_tip(2) == addr("r/0^4/1"));
  CHECK(*gen.child_count(addr("r/0")) == 1);     // spine 2: no tooth
  CHECK(*gen.child_count(addr("r/0^2")) == 2);   // spine 3: tooth
  // ranks: teeth all start at spine >= 2, so ranks line up with tooth order
  auto r1 = gen.branch_rank(addr("r/0^2/1"));
  REQUIRE(r1.has_value());
  CHECK(r1->first == 1);
  CHECK(r1->second == 3);
  CHECK(*gen.branch_spine_index(2) == 5);

  TeethSchedule capped = teeth_everywhere();
  capped.count = 2;
  TreeGenerator capped_gen = TreeGenerator::comb(capped);
  CHECK(capped_gen.tooth_tip(2).has_value());
  CHECK(!capped_gen.tooth_tip(3).has_value());
  // tooth at spine 1 is skipped by ranking; only spine 2 qualifies
  CHECK(!capped_gen.branch_rank(addr("r/1")).has_value());
  CHECK(capped_gen.branch_rank(addr("r/0/1"))->first == 1);
  CHECK(!capped_gen.branch_spine_index(2).has_value());
}
