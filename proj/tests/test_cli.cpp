#include "doctest.h"

#include "oracles.hpp"
#include "vfa/cli.hpp"

#include <sstream>
#include <string>
#include <vector>

using namespace vfa;

namespace {

struct Run {
  int status;
  std::string out;
  std::string err;
  Json report() const { return Json::parse(out); }
};

Run run(std::vector<std::string> args) {
  args.insert(args.begin(), "vfa");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  int status = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  return {status, out.str(), err.str()};
}

const Json* find_check(const Json& report, const std::string& name) {
  for (const auto& c : report.at("checks"))
    if (c.at("name") == name) return &c;
  return nullptr;
}

}  // namespace

TEST_CASE("jet build reports partition dimensions") {
  Run r = run({"jet", "build", "--gens", "x", "--max-weight", "6", "--dims"});
  REQUIRE(r.status == 0);
  Json j = r.report();
  CHECK(j.at("command") == "jet build");
  CHECK(j.at("result").at("dims") == Json::array({1, 1, 2, 3, 5, 7, 11}));
  for (const char* key : {"command", "params", "checks", "timing_ms", "result"}) CHECK(j.contains(key));
}

TEST_CASE("jet build with a relation") {
  Run r = run({"jet", "build", "--gens", "x,y", "--relations", "x*y", "--max-weight", "4", "--dims"});
  REQUIRE(r.status == 0);
  Json dims = r.report().at("result").at("dims");
  REQUIRE(dims.size() == 5);
  for (int w = 0; w <= 4; ++w) CHECK(dims[w].get<std::size_t>() == oracle::jet_xy_dimension(w));
}

TEST_CASE("vertex modes with a negative index") {
  Run r = run({"vertex", "modes", "--a", "x0", "--b", "x0", "--n", "-2", "--max-weight", "4"});
  REQUIRE(r.status == 0);
  Json j = r.report();
  CHECK(j.at("result").at("value") == "x1*x0");
  CHECK(j.at("params").at("n") == -2);
}

TEST_CASE("checks with zero samples pass") {
  Run r = run({"fact", "check", "--samples", "0"});
  CHECK(r.status == 0);
}

TEST_CASE("small check commands pass") {
  CHECK(run({"vertex", "check", "--samples", "10", "--max-weight", "4"}).status == 0);
  CHECK(run({"fact", "coeq", "--radii", "1,2", "--max-weight", "3"}).status == 0);
  CHECK(run({"fact", "adjunction", "--samples", "3", "--max-weight", "3"}).status == 0);
  CHECK(run({"reconstruct", "roundtrip", "--samples", "2", "--max-weight", "4", "--max-mode", "3"}).status == 0);
  CHECK(run({"num", "laurent", "--function", "partial_fraction", "--n", "-1"}).status == 0);
}

TEST_CASE("perturbed swap fails with exit code 1") {
  Run r = run({"num", "swap", "--samples", "1", "--max-weight", "3", "--max-n", "0", "--perturb"});
  CHECK(r.status == 1);
}

TEST_CASE("input errors exit with code 2") {
  CHECK(run({"jet", "frobnicate"}).status == 2);
  CHECK(run({"vertex", "modes", "--a", "x0", "--b", "q7"}).status == 2);
  CHECK(run({"jet", "build", "--gens", "x", "--max-weight", "-1"}).status == 2);
  CHECK(run({"fact", "coeq", "--radii", "2,1"}).status == 2);
  CHECK(run({"fact", "check", "--scenario", "/nonexistent.json"}).status == 2);
}

TEST_CASE("runs are deterministic for a fixed seed") {
  auto strip = [](Json j) {
    j.erase("timing_ms");
    return j.dump();
  };
  Run a = run({"vertex", "check", "--samples", "5", "--max-weight", "4", "--seed", "11"});
  Run b = run({"vertex", "check", "--samples", "5", "--max-weight", "4", "--seed", "11"});
  CHECK(strip(a.report()) == strip(b.report()));
}

TEST_CASE("scenario files drive several runs") {
  Run r = run({"fact", "check", "--scenario", std::string(VFA_DATA_DIR) + "/pushes.json"});
  Json j = r.report();
  CHECK(j.at("params").at("runs") == 2);
  const Json* ok = find_check(j, "0/push L -> M");
  REQUIRE(ok);
  CHECK(ok->at("status") == "pass");
  CHECK(find_check(j, "0/push L -> U")->at("status") == "pass");
  // L does not lie in the far disk, so that push fails and so does the run.
  CHECK(find_check(j, "1/push L -> far")->at("status") == "fail");
  CHECK(r.status == 1);
  auto pushes = j.at("result").at("reports").at(0).at("result").at("pushes");
  CHECK(pushes.at(0).at("value").get<std::string>().find("x1*x0") != std::string::npos);
}

TEST_CASE("the installed binary matches the in-process runner") {
  std::string cmd = std::string(VFA_CLI_PATH) + " jet build --gens x --max-weight 3 --dims > /dev/null";
  CHECK(std::system(cmd.c_str()) == 0);
}
