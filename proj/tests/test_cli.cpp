#include <catch2/catch_amalgamated.hpp>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

namespace {

namespace fs = std::filesystem;

const fs::path& scratch_dir() {
  static const fs::path dir = [] {
    fs::path p = fs::temp_directory_path() / "ultratree_cli_tests";
    fs::create_directories(p);
    return p;
  }();
  return dir;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

fs::path write_file(const std::string& name, const std::string& text) {
  fs::path p = scratch_dir() / name;
  std::ofstream(p) << text;
  return p;
}

struct RunResult {
  int exit_code = -1;
  std::string out, err;
};

RunResult run_cli(const std::string& args) {
  const char* bin = std::getenv("ULTRATREE_BIN");
  REQUIRE(bin != nullptr);
  fs::path out = scratch_dir() / "stdout.txt";
  fs::path err = scratch_dir() / "stderr.txt";
  std::string cmd =
      std::string(bin) + " " + args + " > " + out.string() + " 2> " + err.string();
  int raw = std::system(cmd.c_str());
  REQUIRE(raw != -1);
  REQUIRE(WIFEXITED(raw));
  return {WEXITSTATUS(raw), slurp(out), slurp(err)};
}

constexpr const char* kRayGen = R"('{"shape":"ray"}')";
constexpr const char* kHarmonic = R"('{"rule":"harmonic-ray"}')";
constexpr const char* kComb =
    R"('{"shape":"comb","teeth":{"start":1,"period":1,"count":null,"length":{"kind":"const","value":1}}}')";

}  // namespace

TEST_CASE("validate accepts a clean tree and reports shape") {
  fs::path tree = write_file("chain.json",
                             R"({"vertices":[{"id":"1","label":"1"},{"id":"2","label":"1/2"},
                                 {"id":"3","label":"1/3"}],
                                 "edges":[["1","2"],["2","3"]]})");
  RunResult r = run_cli("validate --tree " + tree.string());
  REQUIRE(r.exit_code == 0);
  auto j = nlohmann::json::parse(r.out);
  CHECK(j["valid"] == true);
  CHECK(j["nondegenerate"] == true);
  CHECK(j["vertices"] == 3);
  CHECK(j["edges"] == 2);
}

TEST_CASE("validate rejects a degenerate edge with exit 2 and names it") {
  fs::path tree = write_file("degenerate.json",
                             R"({"vertices":[{"id":"1","label":"0"},{"id":"2","label":"0"}],
                                 "edges":[["1","2"]]})");
  RunResult r = run_cli("validate --tree " + tree.string());
  REQUIRE(r.exit_code == 2);
  auto j = nlohmann::json::parse(r.err);
  CHECK(j["error"] == "DegenerateLabeling");
  CHECK(j["message"].get<std::string>().find("{1, 2}") != std::string::npos);
}

TEST_CASE("malformed input exits 1 with a structured error") {
  fs::path bad = write_file("bad.json", "{ definitely not json");
  RunResult r = run_cli("validate --tree " + bad.string());
  REQUIRE(r.exit_code == 1);
  CHECK(nlohmann::json::parse(r.err)["error"] == "MalformedInput");

  RunResult missing = run_cli("validate --tree " + (scratch_dir() / "absent.json").string());
  REQUIRE(missing.exit_code == 1);
  CHECK(nlohmann::json::parse(missing.err)["error"] == "MalformedInput");
}

TEST_CASE("dist prints exact fractions from a tree file or a generator") {
  fs::path tree = write_file("dist.json",
                             R"({"vertices":[{"id":"1","label":"1"},{"id":"2","label":"1/2"},
                                 {"id":"3","label":"1/3"}],
                                 "edges":[["1","2"],["2","3"]]})");
  CHECK(run_cli("dist --tree " + tree.string() + " 2 3").out == "1/2\n");
  CHECK(run_cli("dist --tree " + tree.string() + " 1 3").out == "1\n");

  // v_3 to v_7 on the harmonic ray: the path tops out at 1/3.
  std::string gen_mode = std::string("dist --gen ") + kRayGen + " --scheme " + kHarmonic +
                         " --budget 10 r/0^2 r/0^6";
  CHECK(run_cli(gen_mode).out == "1/3\n");

  RunResult unknown = run_cli("dist --tree " + tree.string() + " 1 9");
  REQUIRE(unknown.exit_code == 2);
  CHECK(nlohmann::json::parse(unknown.err)["error"] == "UnknownVertex");

  RunResult partial = run_cli(std::string("dist --gen ") + kRayGen + " r r/0");
  REQUIRE(partial.exit_code == 1);
}

TEST_CASE("hull emits DOT with labels and both endpoints") {
  std::string cmd = std::string("hull --gen ") + kRayGen + " --scheme " + kHarmonic +
                    " --budget 6 r/0 r/0^4";
  RunResult r = run_cli(cmd);
  REQUIRE(r.exit_code == 0);
  CHECK(r.out.find("graph hull {") == 0);
  CHECK(r.out.find("\"r/0\"") != std::string::npos);
  CHECK(r.out.find("\"r/0^4\"") != std::string::npos);
  CHECK(r.out.find("1/5") != std::string::npos);       // deepest label
  CHECK(r.out.find("\"r\"") == std::string::npos);     // root not between them
}

TEST_CASE("cover at scale 1/5 on the ten-point harmonic ray has six blocks") {
  std::string cmd = std::string("cover --gen ") + kRayGen + " --scheme " + kHarmonic +
                    " --budget 10 --radius 1/5";
  RunResult r = run_cli(cmd);
  REQUIRE(r.exit_code == 0);
  std::istringstream lines(r.out);
  std::string line;
  std::getline(lines, line);
  CHECK(line == "radius,block_id,center,size");
  int rows = 0;
  while (std::getline(lines, line)) ++rows;
  CHECK(rows == 6);
  CHECK(r.out.find("1/5,5,r/0^5,5") != std::string::npos);  // the one light block

  RunResult bad = run_cli(std::string("cover --gen ") + kRayGen + " --scheme " + kHarmonic +
                          " --budget 10 --radius 0");
  REQUIRE(bad.exit_code == 2);
  CHECK(nlohmann::json::parse(bad.err)["error"] == "NonpositiveRadius");
}

TEST_CASE("classify reports certificates and obstructions") {
  RunResult ray = run_cli(std::string("classify --gen ") + kRayGen);
  REQUIRE(ray.exit_code == 0);
  auto jray = nlohmann::json::parse(ray.out);
  CHECK(jray["almost_ray"] == true);
  CHECK(jray["certificate"]["ray"]["from_index"] == 1);

  RunResult fb = run_cli(R"(classify --gen '{"shape":"full-binary"}')");
  REQUIRE(fb.exit_code == 0);
  auto jfb = nlohmann::json::parse(fb.out);
  CHECK(jfb["almost_ray"] == false);
  CHECK(jfb["reason"] == "TwoDisjointRays");
}

TEST_CASE("construct writes scheme plus witness and maps failures to exit 2") {
  std::string cmd = std::string("construct --case 221 --gen ") + kComb +
                    R"( --seq '{"kind":"alternate","parts":[{"kind":"tooth-tips"},)" +
                    R"({"kind":"ray","start":2,"step":1}]}' --budget-ladder 30,60,120)";
  RunResult r = run_cli(cmd);
  REQUIRE(r.exit_code == 0);
  auto j = nlohmann::json::parse(r.out);
  CHECK(j["scheme"]["rule"] == "harmonic-ray");
  CHECK(j["witness"]["case"] == "case221");
  REQUIRE(j["witness"]["sets"].size() >= 2);
  CHECK(j["witness"]["sets"][0]["name"] == "S-off-ray");

  RunResult wrong = run_cli(std::string("construct --case 1 --gen ") + kRayGen +
                            R"( --seq '{"kind":"ray"}' --budget-ladder 30,60)");
  REQUIRE(wrong.exit_code == 2);
  CHECK(nlohmann::json::parse(wrong.err)["error"] == "NoInfiniteDegreeVertex");
}

TEST_CASE("check writes a report and csv summary; missing --seq is an input error") {
  fs::path out = scratch_dir() / "report.json";
  fs::path csv = scratch_dir() / "report.csv";
  std::string cmd = std::string("check --theorem 4.2 --gen ") + kComb + " --scheme " +
                    kHarmonic + " --budget-ladder 100,200,400 --seed 7 --out " + out.string() +
                    " --csv " + csv.string();
  RunResult r = run_cli(cmd);
  REQUIRE(r.exit_code == 0);
  auto j = nlohmann::json::parse(slurp(out));
  CHECK(j["theorem"] == "4.2");
  CHECK(j["status"] == "consistent-at-scale");
  CHECK(j["claims"][0]["name"] == "bounded-infinite-subset");
  CHECK(j["claims"][0]["pass"] == true);
  std::string summary = slurp(csv);
  CHECK(summary.find("instance,budget,radius,count,verdict") == 0);
  CHECK(summary.find(",growing") != std::string::npos);

  RunResult noseq = run_cli(std::string("check --theorem 4.5 --gen ") + kRayGen +
                            " --scheme " + kHarmonic);
  REQUIRE(noseq.exit_code == 1);
  CHECK(nlohmann::json::parse(noseq.err)["error"] == "MalformedInput");
}

TEST_CASE("check 4.5 resolves the ray instance as consistent") {
  std::string cmd = std::string("check --theorem 4.5 --gen ") + kRayGen + " --scheme " +
                    kHarmonic + R"( --seq '{"kind":"ray"}' --budget-ladder 30,60,120)";
  RunResult r = run_cli(cmd);
  REQUIRE(r.exit_code == 0);
  auto j = nlohmann::json::parse(r.out);
  CHECK(j["case"] == "almost-ray");
  CHECK(j["status"] == "consistent-at-scale");
  CHECK(j["verification"]["budget"] == 120);
}

TEST_CASE("conjecture runs are labeled exploratory") {
  fs::path csv = scratch_dir() / "conjecture.csv";
  std::string cmd = std::string("conjecture --which 5.2 --gen '{\"shape\":\"star\"}'") +
                    R"( --scheme '{"rule":"component-harmonic","hub":"r"}')" +
                    " --epsilon-grid 1/2,1/4 --mass 2 --budget-ladder 50,100,200 --csv " +
                    csv.string();
  RunResult r = run_cli(cmd);
  REQUIRE(r.exit_code == 0);
  auto j = nlohmann::json::parse(r.out);
  CHECK(j["label"] == "EXPLORATORY");
  CHECK(j["conjecture"] == "5.2");
  REQUIRE(j["trends"].size() == 2);
  CHECK(j["trends"][0]["trend"] == "stabilizes@1");
  CHECK(slurp(csv).find("conjecture,epsilon,budget,clusters,trend") == 0);

  RunResult mismatch = run_cli(std::string("conjecture --which 5.1 --gen '{\"shape\":\"star\"}'") +
                               R"( --scheme '{"rule":"constant","value":"1"}')");
  REQUIRE(mismatch.exit_code == 2);
  CHECK(nlohmann::json::parse(mismatch.err)["error"] == "PreconditionMismatch");
}

TEST_CASE("outputs are byte-identical across repeat runs with the same seed") {
  std::string cmd = std::string("check --theorem 4.2 --gen ") + kComb + " --scheme " +
                    kHarmonic + " --budget-ladder 100,200 --seed 11";
  RunResult first = run_cli(cmd);
  RunResult second = run_cli(cmd);
  REQUIRE(first.exit_code == 0);
  CHECK(first.out == second.out);

  std::string classify = std::string("classify --gen ") + kComb;
  CHECK(run_cli(classify).out == run_cli(classify).out);
}

TEST_CASE("usage errors exit 1 and help exits 0") {
  CHECK(run_cli("frobnicate").exit_code == 1);
  CHECK(run_cli("dist").exit_code == 1);   // missing positionals
  CHECK(run_cli("--help").exit_code == 0);
  CHECK(run_cli("check --theorem 9.9 --gen x --scheme y").exit_code == 1);
}
