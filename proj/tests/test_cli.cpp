#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>

#include "doctest.h"
#include "json.hpp"

namespace {

struct Result {
  int code;
  std::string out;
};

Result run(const std::string& args, const std::string& env = "") {
  std::string cmd = env + (env.empty() ? "" : " ") + VOA_BIN + " " + args + " 2>&1";
  FILE* p = popen(cmd.c_str(), "r");
  REQUIRE(p);
  std::string out;
  std::array<char, 4096> buf;
  while (std::size_t n = fread(buf.data(), 1, buf.size(), p)) out.append(buf.data(), n);
  int status = pclose(p);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

std::filesystem::path temp(const std::string& name) { return std::filesystem::temp_directory_path() / name; }

}  // namespace

TEST_CASE("reports are byte-identical across runs") {
  for (auto args : {"run curves --json", "run zhu", "ks verify --direction inverse --cutoff 3 --json",
                    "curves intersect --json", "classify --x 0 --y 5/2 --z 0 --json"}) {
    CAPTURE(args);
    Result a = run(args), b = run(args);
    CHECK(a.code == 0);
    CHECK(a.out == b.out);
  }
}

TEST_CASE("json report schema") {
  Result r = run("ks verify --cutoff 2 --json");
  REQUIRE(r.code == 0);
  auto j = nlohmann::json::parse(r.out);
  CHECK(j["status"] == "pass");
  for (auto& job : j["jobs"])
    for (auto key : {"job", "status", "expected", "got", "weight", "charge"}) CHECK(job.contains(key));
  auto s = nlohmann::json::parse(run("run curves --json").out);
  CHECK(s["suite"] == "curves");
  CHECK(s["failures"] == 0);
  CHECK_FALSE(s.contains("seconds"));
  CHECK(nlohmann::json::parse(run("run curves --json --timing").out).contains("seconds"));
}

TEST_CASE("exit codes") {
  CHECK(run("run nope").code == 2);
  CHECK(run("ks verify --k 2").code == 2);
  CHECK(run("run ks-forward --specialize c=-14").code == 2);
  CHECK(run("classify --x 1/0 --y 0 --z 0").code == 2);
  CHECK(run("parse /nonexistent/file").code == 2);
  CHECK(run("run n2-axioms --c generic").code == 0);
}

TEST_CASE("parse errors cite line and column") {
  auto path = temp("voa_bad_presentation.txt");
  std::ofstream(path) << "algebra bad\ngenerator X parity=even weight=1\nope X X { 1: 2 |0> ; 0: ; }\n";
  Result r = run("parse " + path.string());
  CHECK(r.code == 2);
  CHECK(r.out.find("line 3, column") != std::string::npos);
  std::filesystem::remove(path);
}

TEST_CASE("print and parse round trip through the command line") {
  for (auto preset : {"n2", "wsl4sub", "virasoro", "F-1"}) {
    CAPTURE(preset);
    Result p = run(std::string("print ") + preset);
    REQUIRE(p.code == 0);
    auto path = temp("voa_roundtrip.txt");
    std::ofstream(path) << p.out;
    Result q = run("parse " + path.string());
    CHECK(q.code == 0);
    CHECK(q.out == p.out);
    std::filesystem::remove(path);
  }
}

TEST_CASE("inconsistent table is a mismatch, not an input error") {
  Result p = run("print n2");
  std::string text = p.out;
  auto at = text.find("1: 2 H;");
  REQUIRE(at != std::string::npos);
  text.replace(at, 7, "1: 3 H;");
  auto path = temp("voa_skew.txt");
  std::ofstream(path) << text;
  Result r = run("parse " + path.string());
  CHECK(r.code == 1);
  CHECK(r.out.find("skew") != std::string::npos);
  std::filesystem::remove(path);
}

TEST_CASE("environment cutoff override") {
  // the jacobi record names the number of instances it covered
  auto jacobi = [](const Result& r) { return nlohmann::json::parse(r.out)["checks"][2]["identity"].get<std::string>(); };
  Result a = run("run n2-axioms --json", "VOA_CUTOFF=4"), b = run("run n2-axioms --json");
  CHECK(a.code == 0);
  CHECK(jacobi(a) != jacobi(b));
  CHECK(jacobi(run("run n2-axioms --json --cutoff 4", "VOA_CUTOFF=6")) == jacobi(a));
  CHECK(jacobi(run("run n2-axioms --json --cutoff 6", "VOA_CUTOFF=4")) == jacobi(b));
}

TEST_CASE("zhu and singular subcommands") {
  Result z = run("zhu --k -1 --expr \"[G+,G-]\"");
  CHECK(z.code == 0);
  CHECK(z.out == "56/25 [J]^3 - 6 [J]^2 - 12/5 [J] [L] + 4 [J] + 3 [L] + [W]\n");
  Result s = run("singular --specialize k=-1 --weight 2 --charge 2 --zero-mode G+");
  CHECK(s.out.find(":(G+ G+)") != std::string::npos);
  auto j = nlohmann::json::parse(run("zhu --algebra n2 --c -15 --expr Wpf --json").out);
  CHECK(j["trace"].size() > 0);
}
