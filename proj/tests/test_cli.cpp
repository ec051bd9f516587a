#include <doctest.h>

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <fstream>

#include "fixtures.hpp"

namespace {

struct Run {
  int exit_code = -1;
  std::string out;
};

// Runs the CLI with stderr folded into the captured output.
Run run(const std::string& args) {
  const std::string cmd = std::string(PRYMKER_CLI) + " " + args + " 2>&1";
  Run r;
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::array<char, 4096> buf{};
  std::size_t n;
  while ((n = std::fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), n);
  const int status = pclose(pipe);
  r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

const std::string kData = PRYMKER_DATA_DIR;
const std::string kTmp = PRYMKER_TMP_DIR;

void write(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  out << text;
}

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("build then analyze each shipped spec") {
  for (const char* name : prymker::testing::kFixtures) {
    CAPTURE(name);
    const std::string datum = kTmp + "/cli_" + name + ".json";
    const std::string action = kTmp + "/cli_" + name + "_action.json";
    const Run b = run("build " + kData + "/specs/" + name + ".json --out " + datum + " --action-out " + action);
    CHECK(b.exit_code == 0);
    CHECK(b.out.find("wrote") != std::string::npos);
    const Run a = run("analyze " + datum + " --json --action " + action);
    CHECK(a.exit_code == 0);
    const auto j = prymker::Json::parse(a.out);
    CHECK(j["exit_code"] == 0);
    CHECK(j.contains("kernel_E"));
    CHECK(j.contains("criterion"));
    const Run t = run("analyze " + datum);
    CHECK(t.exit_code == 0);
    CHECK(t.out.find("dim Ker dP") != std::string::npos);
  }
}

TEST_CASE("build errors exit with the input code") {
  const std::string bad = kTmp + "/cli_order4.json";
  write(bad, R"({"E": {"A": 0, "B": 1}, "h": {"P": [-1, -1], "Q": [1]}, "N": 4})");
  const Run r = run("build " + bad + " --out " + kTmp + "/cli_unused.json");
  CHECK(r.exit_code == 2);
  CHECK(r.out.find("UnsupportedOrder") != std::string::npos);
  CHECK(run("build /nonexistent/spec.json --out " + kTmp + "/cli_unused.json").exit_code == 2);
  CHECK(run("build").exit_code == 2);
  CHECK(run("no-such-command").exit_code == 2);
}

TEST_CASE("corrupt datum") {
  const std::string bad = kTmp + "/cli_corrupt.json";
  write(bad, "{\"field\": ");
  const Run r = run("analyze " + bad);
  CHECK(r.exit_code == 2);
  CHECK(r.out.find("ParseError") != std::string::npos);
}

TEST_CASE("demo") {
  const Run r = run("demo-pirola");
  CHECK(r.exit_code == 0);
  CHECK(r.out.find("7/7 checks passed") != std::string::npos);
  CHECK(r.out.find("dim Ker dP >= 2") != std::string::npos);

  const Run j = run("demo-pirola --json");
  CHECK(j.exit_code == 0);
  const auto rep = prymker::Json::parse(j.out);
  CHECK(rep["all_pass"] == true);
  CHECK(rep["analysis"]["equivariant"]["battery"]["checks"].size() == 7);

  const Run low = run("demo-pirola --precision 3");
  CHECK(low.exit_code == 2);
  CHECK(low.out.find("InsufficientPrecision") != std::string::npos);
}

TEST_CASE("output is reproducible byte for byte") {
  CHECK(run("demo-pirola --json").out == run("demo-pirola --json").out);
  const std::string datum = kTmp + "/cli_repeat.json";
  REQUIRE(run("build " + kData + "/specs/bielliptic_g4.json --out " + datum).exit_code == 0);
  CHECK(run("analyze " + datum + " --json").out == run("analyze " + datum + " --json").out);
}

}  // TEST_SUITE
