#include <doctest.h>

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "../tools/commands.hpp"

namespace fs = std::filesystem;
using namespace logicnet::cli;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run_cli(std::vector<std::string> args) {
  args.insert(args.begin(), "logicnet");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out;
  std::ostringstream err;
  const int code = run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

// Scratch directory removed at scope exit.
struct TempDir {
  fs::path path;
  TempDir() {
    std::random_device rd;
    path = fs::temp_directory_path() / ("logicnet_cli_" + std::to_string(rd()));
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  std::string write(const std::string& name, const std::string& text) const {
    std::ofstream(path / name) << text;
    return (path / name).string();
  }
};

const std::string kFixtures = LOGICNET_FIXTURE_DIR;
std::string fixture(const std::string& name) { return kFixtures + "/" + name; }

std::size_t count_lines(const std::string& s) { return static_cast<std::size_t>(std::ranges::count(s, '\n')); }

}  // namespace

TEST_CASE("validate passes on the shipped fixtures") {
  const Result r = run_cli({"validate", kFixtures});
  CHECK(r.code == exit_ok);
  CHECK(r.out.find("FAIL") == std::string::npos);
  CHECK(r.out.find("PASS ie_srl table") != std::string::npos);
}

TEST_CASE("validate reports a corrupted fixture by line") {
  TempDir dir;
  for (const auto& e : fs::directory_iterator(kFixtures)) fs::copy(e.path(), dir.path / e.path().filename());
  std::ifstream in(dir.path / "ie_ar.model");
  std::stringstream text;
  text << in.rdbuf();
  in.close();
  dir.write("ie_ar.model", text.str() + "layer 99\n1 6 500 501\n");
  const Result r = run_cli({"validate", dir.path.string()});
  CHECK(r.code == exit_validation);
  CHECK(r.out.find("FAIL ie_ar.model parses") != std::string::npos);
  CHECK(r.out.find("line") != std::string::npos);
  CHECK(r.out.find("PASS ie_srl anchors") != std::string::npos);

  CHECK(run_cli({"validate", (dir.path / "absent").string()}).code == exit_io);
}

TEST_CASE("train, classify, export and import") {
  TempDir dir;
  const std::string data = dir.write("xor.csv", "a,b,y\n0,0,0\n0,1,1\n1,0,1\n1,1,0\n");
  const std::string model = (dir.path / "xor.model").string();
  const Result t = run_cli({"train", data, "-o", model, "--label", "y"});
  REQUIRE(t.code == exit_ok);
  CHECK(t.out.find("layers:\n  1: ") != std::string::npos);
  CHECK(t.out.find("training error: 0/4") != std::string::npos);
  CHECK(t.out.find("syndromes: N = 1,") != std::string::npos);

  const Result c = run_cli({"classify", model, data});
  CHECK(c.code == exit_ok);
  CHECK(c.out == "0, +1, 1/1\n1, -1, 1/1\n1, -1, 1/1\n0, +1, 1/1\n");
  const Result csv = run_cli({"classify", model, data, "--format", "csv"});
  CHECK(count_lines(csv.out) == 5);

  const Result js = run_cli({"export", model, "--to", "json"});
  REQUIRE(js.code == exit_ok);
  const std::string json_path = dir.write("xor.json", js.out);
  const Result back = run_cli({"import", json_path});
  CHECK(back.code == exit_ok);
  CHECK(back.out == run_cli({"export", model, "--to", "formulas"}).out);
  CHECK(run_cli({"export", model, "--to", "expressions"}).out.find("g5(") != std::string::npos);
}

TEST_CASE("training failures map to exit codes") {
  TempDir dir;
  const Result one = run_cli({"train", dir.write("one.csv", "a,label\n1,0\n2,0\n")});
  CHECK(one.code == exit_data);
  CHECK(one.err.find("empty class") != std::string::npos);
  CHECK(run_cli({"train", (dir.path / "missing.csv").string()}).code == exit_io);
  CHECK(run_cli({"train", dir.write("flat.csv", "a,label\n1,0\n1,1\n1,0\n")}).code == exit_training);
  CHECK(run_cli({"train"}).code == exit_usage);
  CHECK(run_cli({"frobnicate"}).code == exit_usage);
}

TEST_CASE("classify with the first fixture") {
  TempDir dir;
  const std::string header =
      "leukocytes,immune_complexes,articular_syndrome,anhelation,skin_erythema,heart_noises,hepatomegaly,myocarditis\n";
  const std::string rows = dir.write("rows.csv", header + "5.0,100,0,0,0,0,0,0\n7.0,150,0,0,0,0,0,0\n");
  const Result r = run_cli({"classify", fixture("ie_srl.model"), rows});
  CHECK(r.code == exit_ok);
  CHECK(r.out == "IE, +6, 6/9\nIE, +7, 7/9\n");

  const Result empty = run_cli({"classify", fixture("ie_srl.model"), dir.write("empty.csv", "")});
  CHECK(empty.code == exit_ok);
  CHECK(empty.out.empty());

  const Result missing = run_cli({"classify", fixture("ie_srl.model"), dir.write("short.csv", "leukocytes\n5\n")});
  CHECK(missing.code == exit_data);
  CHECK(missing.err.find("immune_complexes") != std::string::npos);
}

TEST_CASE("tabulate") {
  const Result r = run_cli({"tabulate", fixture("ie_srl.model"), "--rows", "x2,x5,x8,x11", "--format", "csv"});
  REQUIRE(r.code == exit_ok);
  CHECK(count_lines(r.out) == 17);
  std::ifstream in(fixture("ie_srl_table.csv"));
  std::stringstream printed;
  printed << in.rdbuf();
  CHECK(r.out == printed.str());

  CHECK(run_cli({"tabulate", fixture("ie_ar.model"), "--check-contradictions"}).code == exit_ok);
  CHECK(run_cli({"tabulate", fixture("ie_ar.model"), "--rows", "x9", "--cols", "x9,x10"}).code == exit_usage);
}

TEST_CASE("gen is deterministic and trains quickly at full size") {
  const Result a = run_cli({"gen", "--seed", "5"});
  const Result b = run_cli({"gen", "--seed", "5"});
  REQUIRE(a.code == exit_ok);
  CHECK(a.out == b.out);
  CHECK(count_lines(a.out) == 36);
  CHECK(a.err.find("planted rule") != std::string::npos);

  TempDir dir;
  const std::string data = dir.write("gen.csv", a.out);
  const auto start = std::chrono::steady_clock::now();
  const Result t = run_cli({"train", data});
  CHECK(t.code == exit_ok);
  CHECK(std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count() < 5.0);
}

TEST_CASE("config file from the environment, overridden by flags") {
  TempDir dir;
  const std::string cfg = dir.write("cfg.ini", "[gen]\nrows=7\n");
  ::setenv("LOGICNET_CONFIG", cfg.c_str(), 1);
  const Result a = run_cli({"gen", "--seed", "2"});
  const Result b = run_cli({"gen", "--seed", "2", "--rows", "9"});
  ::unsetenv("LOGICNET_CONFIG");
  CHECK(count_lines(a.out) == 8);
  CHECK(count_lines(b.out) == 10);
  CHECK(count_lines(run_cli({"--config", cfg, "gen"}).out) == 8);
}
