#include <catch2/catch_amalgamated.hpp>

#include <array>
#include <cstdio>
#include <cstdlib>
#include <sys/wait.h>
#include <string>
#include <vector>

#include <json.hpp>

namespace {

struct RunResult {
  int exit_code = -1;
  std::string out;
};

std::string cli_path() {
  const char* p = std::getenv("GHCALC_CLI");
  REQUIRE(p != nullptr);
  return p;
}

// runs the binary through the shell, capturing stdout+stderr
RunResult run(const std::string& args) {
  const std::string cmd = cli_path() + " " + args + " 2>&1";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  RunResult r;
  std::array<char, 4096> buf{};
  std::size_t n = 0;
  while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), n);
  const int status = pclose(pipe);
  r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

bool contains(const std::string& haystack, const std::string& needle) {
  return haystack.find(needle) != std::string::npos;
}

const std::string kMirrorAbs = "\"n=2; L: -abs(x1)+x2^2; U: abs(x1)+x2^2\"";
const std::string kKinkedSine =
    "\"n=2; L: abs(x1)+sin(x1)+x2^2; U: abs(x1)+sin(x1)+(x1-4)^2+x2^2\"";

}  // namespace

TEST_CASE("ghdiff") {
  auto r = run("ghdiff 0 4 0 10");
  CHECK(r.exit_code == 0);
  CHECK(contains(r.out, "[-6, 0]"));
  CHECK(contains(r.out, "H-difference undefined"));

  r = run("ghdiff 0 1 0 1");
  CHECK(r.exit_code == 0);
  CHECK(contains(r.out, "[0, 0]"));

  r = run("ghdiff 3 7 1 2");
  CHECK(r.exit_code == 0);
  CHECK(contains(r.out, "[2, 5]"));
  CHECK(contains(r.out, "H-difference defined"));

  SECTION("malformed interval exits 2") {
    CHECK(run("ghdiff 4 2 0 1").exit_code == 2);
    CHECK(run("ghdiff 0 1 0 oops").exit_code == 2);
    CHECK(run("ghdiff 0 1 0").exit_code == 2);
  }
}

TEST_CASE("hdiff") {
  CHECK(run("hdiff 3 7 1 2").out.find("[2, 5]") == 0);
  auto r = run("hdiff 0 4 0 10");
  CHECK(r.exit_code == 0);
  CHECK(contains(r.out, "undefined"));
}

TEST_CASE("ghproduct") {
  auto r = run("ghproduct -v 1 -1 -K 1 2 1 2 --compare");
  CHECK(r.exit_code == 0);
  CHECK(contains(r.out, "gH: [0, 0]"));
  CHECK(contains(r.out, "Ghosh: [-1, 1]"));

  r = run("ghproduct -v 1 -2 -K 3 5 1.5 2.5");
  CHECK(r.exit_code == 0);
  CHECK(contains(r.out, "[0, 0]"));

  r = run("ghproduct -v 0 0 -K 1 2 3 6");
  CHECK(r.exit_code == 0);
  CHECK(contains(r.out, "[0, 0]"));

  SECTION("dimension mismatch exits 2") {
    CHECK(run("ghproduct -v 1 -K 1 2 3 4").exit_code == 2);
    CHECK(run("ghproduct -v 1 2 -K 1 2 3").exit_code == 2);
  }
}

TEST_CASE("partial") {
  auto r = run("partial --spec " + kMirrorAbs + " --point 0 0 --coord 1");
  CHECK(r.exit_code == 0);
  CHECK(contains(r.out, "exists [-1, 1] (case i)"));

  r = run("partial --spec " + kKinkedSine + " --point 0 0 --coord 1");
  CHECK(r.exit_code == 0);  // a definitive negative answer is a success
  CHECK(contains(r.out, "not_exists"));
  CHECK(contains(r.out, "[-6, 2]"));
  CHECK(contains(r.out, "[-8, 0]"));

  SECTION("exit code mapping") {
    // parse error -> 2
    CHECK(run("partial --spec \"n=2; L x1\" --point 0 0 --coord 1").exit_code == 2);
    // missing spec -> 2
    CHECK(run("partial --point 0 0 --coord 1").exit_code == 2);
    // evaluation error -> 3
    CHECK(run("partial --spec \"n=1; L: sqrt(x1); U: sqrt(x1)\" --point 0 --coord 1")
              .exit_code == 3);
    // inconclusive -> 4
    const std::string osc =
        "\"n=1; L: branch p [x1>0]: x1*sin(1/x1) | branch m [x1<0]: x1*sin(1/x1)"
        " | branch o [x1=0]: 0;"
        " U: branch p [x1>0]: x1*sin(1/x1)+1 | branch m [x1<0]: x1*sin(1/x1)+1"
        " | branch o [x1=0]: 1\"";
    CHECK(run("partial --spec " + osc + " --point 0 --coord 1").exit_code == 4);
    // bad plan override -> 2
    CHECK(run("partial --spec " + kMirrorAbs + " --point 0 0 --coord 1 --ratio 2")
              .exit_code == 2);
  }

  SECTION("plan overrides are honored") {
    r = run("partial --spec " + kMirrorAbs +
            " --point 0 0 --coord 1 --t0 1e-3 --ratio 0.3 --count 24");
    CHECK(r.exit_code == 0);
    CHECK(contains(r.out, "exists [-1, 1] (case i)"));
  }
}

TEST_CASE("gradient") {
  auto r = run("gradient --spec \"n=2; L: x1+2*x2; U: x1+2*x2\" --point 1 1");
  CHECK(r.exit_code == 0);
  CHECK(contains(r.out, "([1, 1], [2, 2])"));

  r = run("gradient --spec " + kMirrorAbs + " --point 0 0");
  CHECK(r.exit_code == 0);
  CHECK(contains(r.out, "([-1, 1], [0, 0])"));

  r = run("gradient --spec " + kKinkedSine + " --point 0 0");
  CHECK(r.exit_code == 0);
  CHECK(contains(r.out, "x1: not_exists"));
  CHECK(contains(r.out, "x2: exists [0, 0] (case i)"));
}

TEST_CASE("spec files") {
  const std::string path = "/tmp/ghcalc_test_spec.ghc";
  {
    FILE* f = fopen(path.c_str(), "w");
    REQUIRE(f != nullptr);
    fputs("# mirrored kink\nn=2;\nL: -abs(x1) + x2^2;\nU: abs(x1) + x2^2\n", f);
    fclose(f);
  }
  auto r = run("partial --spec-file " + path + " --point 0 0 --coord 1");
  CHECK(r.exit_code == 0);
  CHECK(contains(r.out, "exists [-1, 1] (case i)"));

  CHECK(run("partial --spec-file /nonexistent.ghc --point 0 0 --coord 1").exit_code == 2);
  // --spec and --spec-file are mutually exclusive
  CHECK(run("partial --spec \"n=1; L: x1; U: x1\" --spec-file " + path +
            " --point 0 --coord 1")
            .exit_code == 2);
  // coordinate out of range
  CHECK(run("partial --spec-file " + path + " --point 0 0 --coord 3").exit_code == 2);
  std::remove(path.c_str());
}

TEST_CASE("json output round-trips byte for byte") {
  const std::vector<std::string> commands{
      "--format json partial --spec " + kMirrorAbs + " --point 0 0 --coord 1",
      "--format json ghdiff 0 4 0 10",
      "--format json ghproduct -v 1 -1 -K 1 2 3 6 --compare",
      "--format json replay-paper"};
  for (const std::string& cmd : commands) {
    const auto r = run(cmd);
    REQUIRE(r.exit_code == 0);
    const auto parsed = nlohmann::json::parse(r.out);
    CHECK(parsed.dump(2) + "\n" == r.out);
  }
}

TEST_CASE("replay-paper") {
  auto r = run("replay-paper");
  CHECK(r.exit_code == 0);
  CHECK(contains(r.out, "rows passed"));
  CHECK_FALSE(contains(r.out, "FAIL"));

  SECTION("a tampered expectation turns the run red") {
    r = run("replay-paper --tamper \"split-left-value=[1, 3]\"");
    CHECK(r.exit_code == 1);
    CHECK(contains(r.out, "FAIL"));
  }

  SECTION("unknown row ids are rejected") {
    CHECK(run("replay-paper --tamper \"bogus-row=[1, 3]\"").exit_code == 2);
  }

  SECTION("json mode") {
    r = run("replay-paper --json");
    CHECK(r.exit_code == 0);
    const auto parsed = nlohmann::json::parse(r.out);
    CHECK(parsed.at("all_passed").get<bool>());
  }
}

TEST_CASE("usage errors exit 2") {
  CHECK(run("").exit_code == 2);
  CHECK(run("no-such-command").exit_code == 2);
}
