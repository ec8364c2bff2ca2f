#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "invar/commands.hpp"

using namespace invar;

namespace {

struct Run {
  int code;
  std::string out, err;
};

Run run(std::vector<std::string> args) {
  args.insert(args.begin(), "invar");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::filesystem::path temp_file(const std::string& name) {
  return std::filesystem::temp_directory_path() / ("invar_test_" + std::to_string(::getpid()) + "_" + name);
}

}  // namespace

TEST_CASE("gen") {
  auto r = run({"gen", "--group", "un", "--n", "2", "--p", "3", "--format", "json"});
  REQUIRE(r.code == kExitPass);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j["generators"].size() == 5);
  CHECK(j["relations"].size() == 1);

  r = run({"gen", "--group", "bn", "--n", "1", "--p", "2", "--format", "text"});
  CHECK(r.code == kExitPass);
  CHECK(r.out.find("Rt1 (1,1): Ft1*Fts1 + U0") != std::string::npos);

  r = run({"gen", "--group", "un", "--n", "1", "--p", "2"});
  CHECK(r.code == kExitPass);
  CHECK(r.err.find("warning") != std::string::npos);

  r = run({"gen", "--group", "bn", "--n", "2", "--p", "2", "--e", "2", "--format", "cas"});
  CHECK(r.code == kExitPass);
  CHECK(r.out.find("ring R = (4,t)") != std::string::npos);

  CHECK(run({"gen", "--group", "gln", "--n", "2", "--p", "2"}).code == kExitUsage);
  CHECK(run({"gen", "--group", "un", "--format", "csv"}).code == kExitUsage);
}

TEST_CASE("verify, including a corrupted input file") {
  auto r = run({"verify", "--group", "bn", "--n", "3", "--p", "2"});
  CHECK(r.code == kExitPass);
  CHECK(nlohmann::json::parse(r.out)["pass"] == true);

  const auto good = temp_file("good.json"), bad = temp_file("bad.json");
  REQUIRE(run({"gen", "--group", "un", "--n", "3", "--p", "3", "--output", good.string()}).code == kExitPass);
  std::ifstream in(good);
  auto j = nlohmann::json::parse(in);
  CHECK(run({"verify", "--input", good.string()}).code == kExitPass);
  // change one coefficient of the second relation
  auto& coeff = j["relations"][1]["terms"][0]["coeff"];
  coeff[0] = (coeff[0].get<int>() + 1) % 3;
  std::ofstream(bad) << j.dump();
  r = run({"verify", "--input", bad.string(), "--format", "text"});
  CHECK(r.code == kExitFail);
  CHECK(r.out.find("FAIL") != std::string::npos);

  std::ofstream(bad) << "{ not json";
  CHECK(run({"verify", "--input", bad.string()}).code == kExitUsage);
  CHECK(run({"verify", "--input", temp_file("missing.json").string()}).code == kExitUsage);
  std::filesystem::remove(good);
  std::filesystem::remove(bad);
}

TEST_CASE("verify refuses sizes it cannot expand") {
  const auto r = run({"verify", "--group", "un", "--n", "8", "--p", "5"});
  CHECK(r.code == kExitResource);
  CHECK(r.err.find("resource") != std::string::npos);
}

TEST_CASE("dims and hilbert") {
  const auto gl = run({"dims", "--group", "gln", "--n", "2", "--p", "2", "--cutoff", "8", "--format", "csv"});
  const auto un = run({"hilbert", "--group", "un", "--n", "2", "--p", "2", "--cutoff", "8", "--format", "csv"});
  const auto und = run({"dims", "--group", "un", "--n", "2", "--p", "2", "--cutoff", "8", "--format", "csv"});
  CHECK(gl.code == kExitPass);
  CHECK(un.code == kExitPass);
  CHECK(gl.out != un.out);
  CHECK(und.out == un.out);
  CHECK(un.out.rfind("d,e,dim\n", 0) == 0);
  const auto j = nlohmann::json::parse(run({"hilbert", "--group", "bn", "--n", "2", "--p", "3"}).out);
  CHECK(j["cutoff"] == 12);
  CHECK(j["series"]["numerator"].size() == 3);
  CHECK(run({"hilbert", "--group", "sln", "--n", "2", "--p", "3"}).code == kExitUsage);
}

TEST_CASE("check-conjecture, fuzz-det, sl2-example") {
  auto r = run({"check-conjecture", "--n", "2", "--p", "2", "--cutoff", "10"});
  CHECK(r.code == kExitPass);
  CHECK(nlohmann::json::parse(r.out)["pass"] == true);

  r = run({"fuzz-det", "--n", "4", "--trials", "200", "--seed", "42"});
  CHECK(r.code == kExitPass);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j["seed"] == 42);
  CHECK(j["total_failures"] == 0);
  CHECK(run({"fuzz-det", "--n", "6"}).code == kExitUsage);

  r = run({"sl2-example", "--format", "text"});
  CHECK(r.code == kExitPass);
  CHECK(r.out.find("first deficit at (3,3)") != std::string::npos);
  CHECK(run({"sl2-example", "--cutoff", "5"}).code == kExitFail);
}

TEST_CASE("byte-identical output for identical configs") {
  for (const auto& args : std::vector<std::vector<std::string>>{
           {"gen", "--group", "bn", "--n", "3", "--p", "3"},
           {"verify", "--group", "un", "--n", "3", "--p", "2", "--jobs", "1"},
           {"dims", "--group", "bn", "--n", "2", "--p", "3", "--cutoff", "6"},
           {"fuzz-det", "--n", "3", "--trials", "30", "--seed", "7"}}) {
    CHECK(run(args).out == run(args).out);
  }
  CHECK(run({"verify", "--group", "un", "--n", "3", "--p", "2", "--jobs", "3"}).out ==
        run({"verify", "--group", "un", "--n", "3", "--p", "2"}).out);
  CHECK(run({"dims", "--group", "un", "--n", "2", "--p", "3", "--jobs", "2"}).out ==
        run({"dims", "--group", "un", "--n", "2", "--p", "3"}).out);
}

TEST_CASE("usage errors and the column bound") {
  CHECK(run({}).code == kExitUsage);
  CHECK(run({"frobnicate"}).code == kExitUsage);
  CHECK(run({"gen", "--p", "4"}).code == kExitUsage);
  CHECK(run({"gen", "--n", "0"}).code == kExitUsage);
  CHECK(run({"gen", "--format", "xml"}).code == kExitUsage);
  CHECK(run({"gen", "--group", "on"}).code == kExitUsage);
  CHECK(run({"--help"}).code == kExitPass);
  ::setenv("INVAR_MAX_COLUMNS", "5", 1);
  CHECK(run({"dims", "--group", "un", "--n", "2", "--p", "2", "--cutoff", "4"}).code == kExitResource);
  ::setenv("INVAR_MAX_COLUMNS", "junk", 1);
  CHECK(run({"dims", "--group", "un", "--n", "2", "--p", "2", "--cutoff", "4"}).code == kExitUsage);
  ::unsetenv("INVAR_MAX_COLUMNS");
}
