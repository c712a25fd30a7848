#include <catch2/catch_amalgamated.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <unistd.h>

#include <nlohmann/json.hpp>

#include "forge/forge.hpp"

// Drives the installed binary end to end; the path arrives via
// LANGFORD_FORGE_BIN (set by ctest).

namespace {

namespace fs = std::filesystem;
using nlohmann::json;

struct RunResult {
  int exit_code = -1;
  std::string out;
  std::string err;
};

std::string slurp(const fs::path& p) {
  std::ifstream f(p, std::ios::binary);
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

fs::path scratch_dir() {
  static fs::path dir = [] {
    auto d = fs::temp_directory_path() /
             ("forge_cli_" + std::to_string(::getpid()));
    fs::create_directories(d);
    return d;
  }();
  return dir;
}

RunResult run_cli(const std::string& args, const std::string& stdin_data = "",
                  const std::string& env_prefix = "") {
  const char* bin = std::getenv("LANGFORD_FORGE_BIN");
  REQUIRE(bin != nullptr);
  static int counter = 0;
  fs::path base = scratch_dir() / ("run" + std::to_string(counter++));
  fs::path in = base.string() + ".in", out = base.string() + ".out",
           err = base.string() + ".err";
  {
    std::ofstream f(in, std::ios::binary);
    f << stdin_data;
  }
  std::string cmd = env_prefix + "\"" + std::string(bin) + "\" " + args + " < " +
                    in.string() + " > " + out.string() + " 2> " + err.string();
  int status = std::system(cmd.c_str());
  RunResult r;
  r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  r.out = slurp(out);
  r.err = slurp(err);
  return r;
}

std::string write_table(const json& j) {
  static int counter = 0;
  fs::path p = scratch_dir() / ("table" + std::to_string(counter++) + ".json");
  std::ofstream f(p);
  f << j.dump();
  return p.string();
}

const std::string kSkolem4Line = "4,2,3,2,4,3,1,1";
const std::string kLangford12Line =
    "12,13,11,6,7,5,10,8,9,6,5,7,12,11,13,8,10,9,4,2,3,2,4,3";
const std::string kExtended2Line = "1,1,2,0,2";
const std::string kExtended12Line =
    "7,4,6,3,5,4,3,7,6,5,11,9,12,10,8,2,0,2,1,1,9,11,8,10,12";

}  // namespace

TEST_CASE("cli verify langford") {
  auto r = run_cli("verify --kind langford --defect 2", kLangford12Line + "\n");
  CHECK(r.exit_code == 0);
  CHECK(r.out == "{\"d\":2,\"format\":1,\"m\":12,\"valid\":true}\n");

  auto bad = run_cli("verify --kind langford", "2,2,1,1\n");
  CHECK(bad.exit_code == 1);
  CHECK(bad.out.empty());
  auto errj = json::parse(bad.err);
  CHECK(errj["error"] == "BadGap");
  CHECK(errj["detail"]["symbol"] == 2);
}

TEST_CASE("cli verify extended and skolem") {
  auto r = run_cli("verify --kind extended", kExtended12Line + "\n");
  CHECK(r.exit_code == 0);
  auto j = json::parse(r.out);
  CHECK(j["valid"] == true);
  CHECK(j["m"] == 12);
  CHECK(j["zero_pos"] == 17);
  CHECK(j["hooked"] == false);

  auto s = run_cli("verify --kind skolem", kSkolem4Line + "\n");
  CHECK(s.exit_code == 0);
  CHECK(json::parse(s.out)["m"] == 4);
}

TEST_CASE("cli enumerate") {
  auto r = run_cli("enumerate --family Sn --n 3");
  CHECK(r.exit_code == 0);
  std::istringstream lines(r.out);
  std::string l1, l2, extra;
  REQUIRE(std::getline(lines, l1));
  REQUIRE(std::getline(lines, l2));
  CHECK_FALSE(std::getline(lines, extra));
  CHECK(json::parse(l1)["perm"] == json({2, 3, 1}));
  CHECK(json::parse(l2)["perm"] == json({3, 1, 2}));

  auto f1 = run_cli("enumerate --family RSn --n 3 --index 0");
  auto j = json::parse(f1.out);
  CHECK(j["arcs"] == json({{1, 1}, {2, 3}, {3, 2}}));
  CHECK(j["format"] == 1);

  auto oob = run_cli("enumerate --family RSn --n 3 --index 5");
  CHECK(oob.exit_code == 1);
  CHECK(json::parse(oob.err)["error"] == "BadIndex");
}

TEST_CASE("cli rotations") {
  auto r = run_cli("rotations --n 5");
  CHECK(r.exit_code == 0);
  auto j = json::parse(r.out);
  CHECK(j["labels"] == json({1, 4, 2, 5, 3}));
  CHECK(j["r1"]["arcs"] == json({{1, 3}, {2, 2}, {3, 1}, {4, 5}, {5, 4}}));

  CHECK(run_cli("rotations --n 4").exit_code == 1);
}

TEST_CASE("cli expand reproduces the order-12 langford expansion") {
  json table{{"1,5", {{"n", 3}, {"index", 0}}},
             {"2,4", {{"n", 3}, {"index", 0}}},
             {"3,6", {{"n", 3}, {"index", 1}}},
             {"7,8", {{"n", 3}, {"index", 1}}}};
  auto r = run_cli("expand --n 3 --defect 1 --h table:" + write_table(table),
                   kSkolem4Line + "\n");
  CHECK(r.exit_code == 0);
  CHECK(r.out == kLangford12Line + "\n");

  // byte determinism
  auto again = run_cli("expand --n 3 --defect 1 --h table:" + write_table(table),
                       kSkolem4Line + "\n");
  CHECK(again.out == r.out);
}

TEST_CASE("cli expand reproduces the order-12 extended expansion") {
  // R3 passed inline; R2 through its canonical index; loop choice 1
  forge::Digraph r2(5, {{1, 2}, {2, 1}, {4, 4}, {5, 3}, {3, 5}});
  auto family = forge::enumerate_RSn(5);
  long long r2_index = -1;
  for (std::size_t i = 0; i < family.size(); ++i)
    if (family[i].arcs == r2) r2_index = static_cast<long long>(i);
  REQUIRE(r2_index >= 0);

  json table{
      {"1,2", forge::digraph_to_json(forge::Digraph(
                  5, {{1, 3}, {3, 4}, {4, 2}, {2, 1}, {5, 5}}))},
      {"3,5", {{"n", 5}, {"index", r2_index}}},
      {"L", {{"choice", 1}}}};
  auto r = run_cli("expand --n 5 --h table:" + write_table(table),
                   kExtended2Line + "\n");
  CHECK(r.exit_code == 0);
  CHECK(r.out == kExtended12Line + "\n");
}

TEST_CASE("cli expand h table errors") {
  auto missing = run_cli("expand --n 3 --defect 1 --h table:" + write_table(json::object()),
                         kSkolem4Line + "\n");
  CHECK(missing.exit_code == 1);
  CHECK(json::parse(missing.err)["error"] == "MissingArc");

  json loopy{{"L", {{"choice", 1}}}};
  auto noloop = run_cli("expand --n 3 --defect 1 --h table:" + write_table(loopy),
                        kSkolem4Line + "\n");
  CHECK(noloop.exit_code == 1);
  CHECK(json::parse(noloop.err)["error"] == "BadIndex");
}

TEST_CASE("cli expand random h is seed-deterministic") {
  auto a = run_cli("expand --n 3 --defect 1 --h random:42", kSkolem4Line + "\n");
  auto b = run_cli("expand --n 3 --defect 1 --h random:42", kSkolem4Line + "\n");
  CHECK(a.exit_code == 0);
  CHECK(a.out == b.out);
  auto vals = forge::parse_sequence_line(a.out);
  CHECK_NOTHROW(forge::LangfordSeq::validate(vals, 2));

  auto c = run_cli("expand --n 3 --defect 1 --h random:43", kSkolem4Line + "\n");
  CHECK(c.exit_code == 0);  // any seed yields some valid expansion
}

TEST_CASE("cli product") {
  fs::path base = scratch_dir() / "base_digraph.json";
  {
    std::ofstream f(base);
    f << forge::digraph_to_json(forge::Digraph(4, {{1, 3}, {2, 4}})).dump();
  }
  auto r = run_cli("product --base " + base.string() + " --n 3 --h constant:0");
  CHECK(r.exit_code == 0);
  auto prod = forge::digraph_from_json(json::parse(r.out));
  CHECK(prod.order() == 12);
  CHECK(forge::is_disjoint_arc_union(prod, 6));
}

TEST_CASE("cli count") {
  auto r = run_cli("count --bound theorem-1-1 --m 4");
  CHECK(r.exit_code == 0);
  auto j = json::parse(r.out);
  CHECK(j["bound"] == "2");
  CHECK(j["exact"] == "6");
  CHECK(j["satisfied"] == true);

  auto t44 = run_cli("count --bound theorem-4-4 --m 2 --n 3");
  auto j44 = json::parse(t44.out);
  CHECK(j44["bound"] == "16");
  CHECK(j44["satisfied"] == true);

  CHECK(run_cli("count --bound theorem-1-1 --m 7").exit_code == 1);  // BadResidue
}

TEST_CASE("cli census") {
  auto r = run_cli("census --m 1 --n 3 --print");
  CHECK(r.exit_code == 0);
  std::istringstream lines(r.out);
  std::string a, b, report, extra;
  REQUIRE(std::getline(lines, a));
  REQUIRE(std::getline(lines, b));
  REQUIRE(std::getline(lines, report));
  CHECK_FALSE(std::getline(lines, extra));
  for (const auto& line : {a, b})
    CHECK_NOTHROW(forge::LangfordSeq::validate(forge::parse_sequence_line(line), 2));
  auto j = json::parse(report);
  CHECK(j["census"] == "2");
  CHECK(j["satisfied"] == true);

  // guard env var caps the census size
  auto blocked = run_cli("census --m 1 --n 3", "", "LANGFORD_FORGE_GUARD=1 ");
  CHECK(blocked.exit_code == 1);
  CHECK(json::parse(blocked.err)["error"] == "TooLarge");
}

TEST_CASE("cli usage errors exit 2") {
  CHECK(run_cli("expand").exit_code == 2);                       // missing flags
  CHECK(run_cli("verify --kind nonsense").exit_code == 2);       // bad enum
  CHECK(run_cli("frobnicate").exit_code == 2);                   // no such subcommand
  CHECK(run_cli("verify --kind skolem --bogus 1").exit_code == 2);
  CHECK(run_cli("verify --kind skolem --defect 2", "1,1\n").exit_code == 2);
  CHECK(run_cli("count --bound theorem-3-3 --m 4").exit_code == 2);  // missing --n
}
