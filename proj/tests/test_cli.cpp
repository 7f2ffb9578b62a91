#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <string>
#include <sys/wait.h>

#include <json.hpp>

namespace {

struct Run {
  int code = -1;
  std::string out;
};

Run run(const std::string& args) {
  const std::string cmd = std::string(CONVEXCHAIN_CLI) + " " + args + " 2>/dev/null";
  Run r;
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  char buf[4096];
  size_t got;
  while ((got = fread(buf, 1, sizeof buf, pipe)) > 0) r.out.append(buf, got);
  const int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

nlohmann::ordered_json json_of(const std::string& args) {
  const Run r = run(args + " --format json");
  REQUIRE(r.code == 0);
  return nlohmann::ordered_json::parse(r.out);
}

}  // namespace

TEST_CASE("exact distribution output") {
  const auto j = json_of("exact --n 2");
  CHECK(j["schema_version"] == 1);
  REQUIRE(j["rows"].size() == 3);
  CHECK(j["rows"][0]["p"] == "0/1");
  CHECK(j["rows"][1]["p"] == "2/3");
  CHECK(j["rows"][2]["p"] == "1/3");
  CHECK(j["summary"]["mean"] == "10/3");

  const auto j0 = json_of("exact --n 0");
  REQUIRE(j0["rows"].size() == 1);
  CHECK(j0["rows"][0]["p"] == "1/1");

  const auto j5 = json_of("exact --n 5");
  CHECK(j5["rows"][5]["p"] == "1/2700");

  CHECK(run("exact --n 3000").code == 2);
  CHECK(run("exact --n 3000 --mode float --format csv").code == 0);
  CHECK(run("exact --n -1").code == 2);
  CHECK(run("exact").code == 2);
}

TEST_CASE("csv output") {
  const Run r = run("exact --n 2 --format csv");
  REQUIRE(r.code == 0);
  CHECK(r.out.rfind("k,f0,p\r\n", 0) == 0);
  CHECK(r.out.find("1,3,2/3\r\n") != std::string::npos);
}

TEST_CASE("simulation output") {
  const auto j = json_of("simulate --n 1 --reps 10 --seed 3");
  REQUIRE(j["rows"].size() == 1);
  CHECK(j["rows"][0]["f0"] == 3);
  CHECK(j["rows"][0]["count"] == 10);

  const Run a = run("simulate --n 200 --reps 300 --seed 9 --threads 1 --format json");
  const Run b = run("simulate --n 200 --reps 300 --seed 9 --threads 3 --format json");
  REQUIRE(a.code == 0);
  CHECK(a.out == b.out);
  // parse and re-serialize reproduces the bytes
  CHECK(nlohmann::ordered_json::parse(a.out).dump(2) + "\n" == a.out);
}

TEST_CASE("rate output") {
  const auto j = json_of("rate --x 0.6666666666666666 --x -1");
  REQUIRE(j["rows"].size() == 2);
  CHECK(j["rows"][0]["I"].get<double>() == doctest::Approx(0.0));
  CHECK(j["rows"][1]["I"] == "inf");
  CHECK(run("rate --x-grid 1:0:0.1").code == 2);
}

TEST_CASE("validate subcommand") {
  CHECK(run("validate oracle").code == 0);
  CHECK(run("validate no-such-suite").code == 2);
  const Run csv = run("validate oracle --format csv");
  CHECK(csv.out.rfind("criterion,", 0) == 0);
}
