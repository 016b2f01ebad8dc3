#pragma once

#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "ultratree/classify.hpp"
#include "ultratree/conjectures.hpp"
#include "ultratree/index.hpp"
#include "ultratree/theorems.hpp"
#include "ultratree/tree_io.hpp"
#include "ultratree/witness.hpp"

namespace ultratree::cli {

namespace detail {

// Spec-valued flags (--gen, --scheme, --seq) take either inline JSON or a
// path to a JSON file; anything starting with '{' is treated as inline.
inline nlohmann::json read_json_arg(const std::string& arg, const std::string& what) {
  std::string text = arg;
  if (arg.empty()) fail(Errc::MalformedInput, "empty " + what + " argument");
  if (arg.front() != '{') {
    std::ifstream in(arg);
    if (!in) fail(Errc::MalformedInput, "cannot open '" + arg + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    text = buf.str();
  }
  try {
    return nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    fail(Errc::MalformedInput, "parse error in " + what + ": " + e.what());
  }
}

inline void write_text(const std::string& out_path, const std::string& text) {
  if (out_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(out_path);
  if (!out) fail(Errc::MalformedInput, "cannot write '" + out_path + "'");
  out << text;
}

inline std::string dump(const nlohmann::ordered_json& j) { return j.dump(2) + "\n"; }

inline std::vector<Rat> parse_grid(const std::vector<std::string>& texts) {
  std::vector<Rat> grid;
  grid.reserve(texts.size());
  for (const std::string& t : texts) grid.push_back(parse_rat(t));
  return grid;
}

// Exit contract: 0 ok, 1 input error, 2 domain verdict. Malformed input is
// the only error code that is the caller's syntax rather than a verdict.
inline int report_error(const Error& e) {
  nlohmann::ordered_json j;
  j["error"] = errc_name(e.code());
  j["message"] = e.what();
  if (e.detail() >= 0) j["detail"] = e.detail();
  std::cerr << dump(j);
  return e.code() == Errc::MalformedInput ? 1 : 2;
}

struct TreeArgs {
  std::string tree_path;
  std::string gen_text;
  std::string scheme_text;
  std::uint64_t budget = 0;

  // Either a serialized tree or generator+scheme+budget; both are accepted
  // everywhere a concrete finite tree is needed.
  LabeledTree load() const {
    if (!tree_path.empty()) return load_tree(tree_path);
    if (gen_text.empty() || scheme_text.empty() || budget == 0)
      fail(Errc::MalformedInput, "need either --tree or all of --gen, --scheme, --budget");
    TreeGenerator gen = TreeGenerator::from_json(read_json_arg(gen_text, "--gen"));
    LabelingScheme scheme = LabelingScheme::from_json(read_json_arg(scheme_text, "--scheme"));
    return truncate(gen, scheme, budget).tree;
  }

  void attach(CLI::App* cmd) {
    cmd->add_option("--tree", tree_path, "tree JSON file");
    cmd->add_option("--gen", gen_text, "generator spec (inline JSON or file)");
    cmd->add_option("--scheme", scheme_text, "labeling scheme spec (inline JSON or file)");
    cmd->add_option("--budget", budget, "truncation budget for --gen");
  }
};

}  // namespace detail

inline int run(int argc, char** argv) {
  using detail::read_json_arg;

  CLI::App app{"ultrametrics from labeled trees: distances, covers, witnesses"};
  app.require_subcommand(1);

  std::string out_path;
  std::string csv_path;
  auto add_out = [&](CLI::App* cmd, bool with_csv = false) {
    cmd->add_option("--out", out_path, "write primary output here instead of stdout");
    if (with_csv) cmd->add_option("--csv", csv_path, "also write the CSV summary here");
  };

  // validate
  auto* cmd_validate = app.add_subcommand("validate", "check tree shape and non-degeneracy");
  std::string validate_tree;
  cmd_validate->add_option("--tree", validate_tree, "tree JSON file")->required();
  add_out(cmd_validate);

  // dist
  auto* cmd_dist = app.add_subcommand("dist", "exact distance between two vertices");
  detail::TreeArgs dist_tree;
  dist_tree.attach(cmd_dist);
  std::string dist_u, dist_v;
  cmd_dist->add_option("u", dist_u, "first vertex")->required();
  cmd_dist->add_option("v", dist_v, "second vertex")->required();
  add_out(cmd_dist);

  // hull
  auto* cmd_hull = app.add_subcommand("hull", "convex hull of a vertex set, as DOT");
  detail::TreeArgs hull_tree;
  hull_tree.attach(cmd_hull);
  std::vector<std::string> hull_vertices;
  cmd_hull->add_option("vertices", hull_vertices, "vertices spanning the hull")->required();
  add_out(cmd_hull);

  // cover
  auto* cmd_cover = app.add_subcommand("cover", "ball cover at a radius, as CSV");
  detail::TreeArgs cover_tree;
  cover_tree.attach(cmd_cover);
  std::string cover_radius;
  cmd_cover->add_option("--radius", cover_radius, "cover radius, e.g. 1/5")->required();
  add_out(cmd_cover);

  // classify
  auto* cmd_classify = app.add_subcommand("classify", "almost-ray decision with certificate");
  std::string classify_gen;
  cmd_classify->add_option("--gen", classify_gen, "generator spec")->required();
  add_out(cmd_classify);

  // construct
  auto* cmd_construct = app.add_subcommand("construct", "adversarial labeling with witness sets");
  std::string construct_case;
  std::string construct_gen, construct_seq;
  std::vector<std::uint64_t> construct_ladder{100, 200, 400, 800};
  cmd_construct->add_option("--case", construct_case, "construction case: 1, 221 or 222")
      ->required()
      ->check(CLI::IsMember({"1", "221", "222"}));
  cmd_construct->add_option("--gen", construct_gen, "generator spec")->required();
  cmd_construct->add_option("--seq", construct_seq, "sequence spec")->required();
  cmd_construct->add_option("--budget-ladder", construct_ladder, "witness budgets")
      ->delimiter(',');
  add_out(cmd_construct);

  // check
  auto* cmd_check = app.add_subcommand("check", "empirical theorem check, as a report");
  std::string check_theorem;
  std::string check_gen, check_scheme, check_seq;
  CheckConfig check_cfg = CheckConfig::defaults();
  std::vector<std::string> check_scales, check_radii;
  cmd_check->add_option("--theorem", check_theorem, "which statement: 4.5 or 4.2")
      ->required()
      ->check(CLI::IsMember({"4.5", "4.2"}));
  cmd_check->add_option("--gen", check_gen, "generator spec")->required();
  cmd_check->add_option("--scheme", check_scheme, "labeling scheme spec")->required();
  cmd_check->add_option("--seq", check_seq, "sequence spec (4.5 only)");
  cmd_check->add_option("--budget-ladder", check_cfg.ladder, "budgets")->delimiter(',');
  cmd_check->add_option("--scale-grid", check_scales, "scales, e.g. 1/2,1/4")->delimiter(',');
  cmd_check->add_option("--radius-grid", check_radii, "radii, e.g. 1/2,1/4")->delimiter(',');
  cmd_check->add_option("--seed", check_cfg.seed, "seed for the random subset registry");
  add_out(cmd_check, true);

  // conjecture
  auto* cmd_conj = app.add_subcommand("conjecture", "exploratory cluster-count experiment");
  std::string conj_which;
  std::string conj_gen, conj_scheme;
  std::vector<std::string> conj_eps{"1/2", "1/4", "1/8", "1/16"};
  std::size_t conj_mass = 2;
  std::vector<std::uint64_t> conj_ladder{100, 200, 400, 800};
  cmd_conj->add_option("--which", conj_which, "conjecture: 5.1 or 5.2")
      ->required()
      ->check(CLI::IsMember({"5.1", "5.2"}));
  cmd_conj->add_option("--gen", conj_gen, "generator spec")->required();
  cmd_conj->add_option("--scheme", conj_scheme, "labeling scheme spec")->required();
  cmd_conj->add_option("--epsilon-grid", conj_eps, "cluster scales")->delimiter(',');
  cmd_conj->add_option("--mass", conj_mass, "minimum cluster size");
  cmd_conj->add_option("--budget-ladder", conj_ladder, "budgets")->delimiter(',');
  add_out(cmd_conj, true);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 1;
  }

  try {
    if (*cmd_validate) {
      LabeledTree tree = load_tree(validate_tree);
      NondegeneracyVerdict verdict = is_nondegenerate(tree);
      if (!verdict.ok)
        fail(Errc::DegenerateLabeling,
             "both ends of {" + tree.id(verdict.u).to_string() + ", " +
                 tree.id(verdict.v).to_string() + "} have label 0");
      nlohmann::ordered_json j;
      j["valid"] = true;
      j["nondegenerate"] = true;
      j["vertices"] = tree.size();
      j["edges"] = tree.size() - 1;
      detail::write_text(out_path, detail::dump(j));
      return 0;
    }

    if (*cmd_dist) {
      UltrametricIndex ix(dist_tree.load());
      Rat d = ix.distance(VertexId::parse(dist_u), VertexId::parse(dist_v));
      detail::write_text(out_path, format_rat(d) + "\n");
      return 0;
    }

    if (*cmd_hull) {
      LabeledTree tree = hull_tree.load();
      std::vector<VertexId> ids;
      ids.reserve(hull_vertices.size());
      for (const std::string& v : hull_vertices) ids.push_back(VertexId::parse(v));
      detail::write_text(out_path, to_dot(convex_hull(tree, ids), "hull"));
      return 0;
    }

    if (*cmd_cover) {
      UltrametricIndex ix(cover_tree.load());
      Cover cover = partition_at_scale(ix, parse_rat(cover_radius));
      std::ostringstream csv;
      write_cover_csv(csv, cover);
      detail::write_text(out_path, csv.str());
      return 0;
    }

    if (*cmd_classify) {
      TreeGenerator gen = TreeGenerator::from_json(read_json_arg(classify_gen, "--gen"));
      detail::write_text(out_path, detail::dump(classify_almost_ray(gen).to_json()));
      return 0;
    }

    if (*cmd_construct) {
      TreeGenerator gen = TreeGenerator::from_json(read_json_arg(construct_gen, "--gen"));
      SequenceSpec seq = SequenceSpec::from_json(read_json_arg(construct_seq, "--seq"));
      Constructed made = construct_case == "1"
                             ? construct_case1_labeling(gen, seq, construct_ladder)
                             : construct_case == "221"
                                   ? construct_case221_labeling(gen, seq, construct_ladder)
                                   : construct_case222_labeling(gen, seq, construct_ladder);
      nlohmann::ordered_json j;
      j["scheme"] = made.scheme.to_json();
      j["witness"] = made.witness.to_json();
      detail::write_text(out_path, detail::dump(j));
      return 0;
    }

    if (*cmd_check) {
      TreeGenerator gen = TreeGenerator::from_json(read_json_arg(check_gen, "--gen"));
      LabelingScheme scheme = LabelingScheme::from_json(read_json_arg(check_scheme, "--scheme"));
      if (!check_scales.empty()) check_cfg.scale_grid = detail::parse_grid(check_scales);
      if (!check_radii.empty()) check_cfg.radius_grid = detail::parse_grid(check_radii);
      TheoremReport rep;
      if (check_theorem == "4.5") {
        if (check_seq.empty()) fail(Errc::MalformedInput, "checking 4.5 needs --seq");
        SequenceSpec seq = SequenceSpec::from_json(read_json_arg(check_seq, "--seq"));
        rep = check_theorem_4_5(gen, scheme, seq, check_cfg);
      } else {
        rep = check_theorem_4_2(gen, scheme, check_cfg);
      }
      detail::write_text(out_path, detail::dump(rep.to_json()));
      if (!csv_path.empty()) detail::write_text(csv_path, rep.csv_summary());
      return rep.status == ReportStatus::Violated ? 2 : 0;
    }

    if (*cmd_conj) {
      TreeGenerator gen = TreeGenerator::from_json(read_json_arg(conj_gen, "--gen"));
      LabelingScheme scheme = LabelingScheme::from_json(read_json_arg(conj_scheme, "--scheme"));
      ConjectureReport rep = conjecture_experiment(conj_which, gen, scheme,
                                                   detail::parse_grid(conj_eps), conj_mass,
                                                   conj_ladder);
      detail::write_text(out_path, detail::dump(rep.to_json()));
      if (!csv_path.empty()) detail::write_text(csv_path, rep.to_csv());
      return 0;
    }
  } catch (const Error& e) {
    return detail::report_error(e);
  } catch (const nlohmann::json::exception& e) {
    return detail::report_error(Error(Errc::MalformedInput, e.what()));
  } catch (const std::invalid_argument& e) {
    return detail::report_error(Error(Errc::MalformedInput, e.what()));
  }
  return 0;
}

}  // namespace ultratree::cli
