#include <doctest.h>

#include <array>
#include <cstdio>
#include <string>

namespace {

struct RunResult {
  int exit_code = -1;
  std::string output;
};

RunResult run(const std::string& args) {
  const std::string cmd = std::string(HSCALE_BIN_PATH) + " " + args + " 2>&1";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  RunResult res;
  std::array<char, 512> buf{};
  while (fgets(buf.data(), buf.size(), pipe) != nullptr) res.output += buf.data();
  const int status = pclose(pipe);
  res.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return res;
}

const std::string kData = HSCALE_TEST_DATA_DIR;

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("validate: exit 0 on the example file, 2 on the scaled map, 3 on junk") {
  CHECK(run("validate " + kData + "/e1.json").exit_code == 0);

  const RunResult bad = run("validate " + kData + "/scaled_u.json");
  CHECK(bad.exit_code == 2);
  CHECK(bad.output.find("contraction") != std::string::npos);

  CHECK(run("validate " + kData + "/malformed.json").exit_code == 3);
  CHECK(run("validate " + kData + "/missing.json").exit_code == 3);
}

TEST_CASE("validate prints a contraction witness for the literal weight grid") {
  const RunResult res = run("validate " + kData + "/grid_literal.json");
  CHECK(res.exit_code == 2);
  CHECK(res.output.find("FAIL") != std::string::npos);
  CHECK(res.output.find("component") != std::string::npos);
}

TEST_CASE("verify: all pass on the example and shift files, fail on the diamond") {
  const RunResult e1 = run("verify " + kData + "/e1.json");
  CHECK(e1.exit_code == 0);
  CHECK(e1.output.find("FAIL") == std::string::npos);

  CHECK(run("verify " + kData + "/shift.json --samples 60").exit_code == 0);

  const RunResult diamond = run("verify " + kData + "/diamond.json");
  CHECK(diamond.exit_code == 2);
  CHECK(diamond.output.find("rhs.parallelogram") != std::string::npos);
  CHECK(diamond.output.find("margin=6") != std::string::npos);
}

TEST_CASE("verify --json emits a parsable report") {
  const RunResult res = run("verify " + kData + "/e1.json --json");
  CHECK(res.exit_code == 0);
  CHECK(res.output.find("\"checks\"") != std::string::npos);
  CHECK(res.output.find("\"pass\": true") != std::string::npos);
}

TEST_CASE("pair prints the frozen example value with 15 digits") {
  const RunResult res = run("pair " + kData + "/e1.json --dx 1:1,0 --d 1,1");
  CHECK(res.exit_code == 0);
  CHECK(res.output.find("2.000000000000000+0i") != std::string::npos);
}

TEST_CASE("pair maps dimension errors to exit 2") {
  CHECK(run("pair " + kData + "/e1.json --dx 1:1,0,0 --d 1,1").exit_code == 2);
}

TEST_CASE("op apply/adjoint/product") {
  const RunResult applied =
      run("op " + kData + "/e1.json --op P1 apply --d 1,1");
  CHECK(applied.exit_code == 0);
  CHECK(applied.output.find("base=1") != std::string::npos);
  CHECK(applied.output.find("1.000000000000000+0i") != std::string::npos);

  const RunResult adj = run("op " + kData + "/e1.json --op P1 adjoint");
  CHECK(adj.exit_code == 0);

  const RunResult prod = run("op " + kData + "/e1.json --op I1 product --with I1");
  CHECK(prod.exit_code == 0);
  CHECK(prod.output.find("UNDEFINED") != std::string::npos);
  CHECK(prod.output.find("residual=0.6") != std::string::npos);

  CHECK(run("op " + kData + "/e1.json --op NOPE adjoint").exit_code == 3);
}

TEST_CASE("gen writes a loadable system file") {
  const std::string out = std::string("/tmp/hscale_gen_test.json");
  const RunResult res =
      run("gen --kind weighted-grid --xmin -1 --xmax 1 --points 5 --alphas 0 1 2 --out " + out);
  CHECK(res.exit_code == 0);
  CHECK(run("validate " + out).exit_code == 0);
  std::remove(out.c_str());
}

}  // TEST_SUITE
