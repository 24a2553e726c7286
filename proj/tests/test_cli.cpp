#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "transchrome/cli.hpp"

using namespace transchrome;

namespace {

struct Run {
  int code;
  std::string out, err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

std::string fixture(const std::string& name) {
  std::ifstream in(std::string(TRANSCHROME_FIXTURES) + "/" + name, std::ios::binary);
  REQUIRE(in.good());
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("golden outputs") {
  CHECK(run({"homs", "--p", "2", "--h", "1", "--k", "2", "--json"}).out == fixture("homs_p2_h1_k2.json"));
  CHECK(run({"homs", "--p", "3", "--h", "2", "--k", "1"}).out == fixture("homs_p3_h2_k1.txt"));
  CHECK(run({"decompose", "--p", "2", "--n", "2", "--t", "1", "--k", "2"}).out == fixture("decompose_2_2_1_2.txt"));
  CHECK(run({"decompose", "--p", "2", "--n", "2", "--t", "1", "--k", "1", "--json"}).out ==
        fixture("decompose_2_2_1_1.json"));
  CHECK(run({"count-sub", "--h", "1", "--p", "5", "--m", "3"}).out == fixture("count_sub_h1_p5_m3.txt"));
  CHECK(run({"transfer", "--G", "S4", "--H", "S2xS2", "--p", "2", "--alpha", "(0 1)", "--json"}).out ==
        fixture("transfer_s4_v_transposition.json"));
  CHECK(run({"fgl", "--p", "2", "--k", "2", "--multiplicative", "--D", "9"}).out == fixture("fgl_mult_p2_k2.txt"));
}

TEST_CASE("homs") {
  const auto r = run({"homs", "--p", "2", "--h", "1", "--k", "2", "--json"});
  REQUIRE(r.code == 0);
  const auto j = nlohmann::json::parse(r.out);
  std::vector<std::uint64_t> orders;
  for (const auto& c : j["classes"]) orders.push_back(c["centralizer_order"]);
  CHECK(orders == std::vector<std::uint64_t>{24, 4, 8, 4});
}

TEST_CASE("decompose") {
  const auto r = run({"decompose", "--p", "2", "--n", "2", "--t", "1", "--k", "2", "--json", "--serial"});
  REQUIRE(r.code == 0);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j["degree"] == 7);
  int nontrivial = 0;
  for (const auto& c : j["components"]) nontrivial += c["ideal_trivial"] ? 0 : 1;
  CHECK(nontrivial == 3);
  CHECK(j["triangle"]["ok"] == true);
}

TEST_CASE("count-sub") {
  const auto r = run({"count-sub", "--h", "1", "--p", "5", "--m", "3"});
  CHECK(r.code == 0);
  CHECK(r.out.rfind("1\n", 0) == 0);
  const auto j = nlohmann::json::parse(run({"count-sub", "--h", "3", "--p", "2", "--m", "1", "--json"}).out);
  CHECK(j["formula"] == 7);
  CHECK(j["enumerated"] == 7);
}

TEST_CASE("transfer and induce") {
  const auto t = nlohmann::json::parse(
      run({"transfer", "--G", "S4", "--H", "S2^2", "--p", "2", "--alpha", "(0 1 2 3)", "--json"}).out);
  CHECK(t["orbits"].empty());
  CHECK(t["ideal_trivial"]["t_zero"] == false);

  const std::string path = "cli_test_chi.json";
  {
    std::ofstream f(path);
    f << R"j({"tuple:(0 1 2)": "3/2", "tuple:()": "1"})j";
  }
  const auto r = run({"induce", "--G", "S3", "--H", "<(0 1 2)>", "--p", "3", "--input", path, "--json"});
  REQUIRE(r.code == 0);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j["grouped_agrees"] == true);
  CHECK(j["induced"]["p3.k1.h1:[(U<(1)>:idx1,m3)]"] == "2/1");
  CHECK(j["induced"]["p3.k1.h1:[(U<>:idx3,m1)]"] == "3/2");
  std::remove(path.c_str());
}

TEST_CASE("fgl") {
  const auto r = run({"fgl", "--p", "2", "--n", "2", "--k", "1", "--json"});
  REQUIRE(r.code == 0);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j["torsion_rank"] == 4);
  CHECK(j["honda_reduction"] == true);
}

TEST_CASE("reproduce a single criterion") {
  const auto r = run({"reproduce", "--only", "1"});
  CHECK(r.code == 0);
  CHECK(r.out.find("PASS") != std::string::npos);
  CHECK(r.out.find("1/1 criteria passed") != std::string::npos);
}

TEST_CASE("exit codes") {
  CHECK(run({}).code == kExitUsage);
  CHECK(run({"homs", "--p", "2"}).code == kExitUsage);
  CHECK(run({"frobnicate"}).code == kExitUsage);
  CHECK(run({"transfer", "--G", "S4", "--H", "S2xS2", "--p", "2"}).code == kExitUsage);
  CHECK(run({"homs", "--p", "4", "--h", "1", "--k", "1"}).code == kExitDomain);
  CHECK(run({"decompose", "--p", "2", "--n", "2", "--t", "2", "--k", "1"}).code == kExitDomain);
  CHECK(run({"transfer", "--G", "S4", "--H", "S3xS1", "--p", "2", "--alpha", "()"}).code == kExitDomain);
  CHECK(run({"count-sub", "--h", "2", "--p", "6", "--m", "1"}).code == kExitDomain);
  const auto capped = run({"--max-elements", "10", "transfer", "--G", "S4", "--H", "S2xS2", "--p", "2", "--alpha", "()"});
  CHECK(capped.code == kExitResource);
  CHECK(capped.err.find("ResourceLimit") != std::string::npos);
  unsetenv("TRANSCHROME_MAX_ELEMENTS");
  CHECK(run({"--help"}).code == kExitOk);
}
