// Drives the command-line binary end to end. The binary path arrives as the
// last command-line argument (wired up by the build).
#define DOCTEST_CONFIG_IMPLEMENT
#include <doctest.h>

#include <sys/wait.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

namespace {

std::string cli_path;
int run_id = 0;

std::filesystem::path scratch(const std::string& name) {
  return std::filesystem::temp_directory_path() / ("rrtcut_cli_test_" + name);
}

struct RunResult {
  int exit_code = -1;
  std::string out;
};

std::string slurp(const std::filesystem::path& p) {
  std::ifstream f(p, std::ios::binary);
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

RunResult run_cli(const std::string& args) {
  const auto out_path = scratch("stdout_" + std::to_string(run_id++));
  const std::string cmd =
      "\"" + cli_path + "\" " + args + " > \"" + out_path.string() + "\" 2>&1";
  const int status = std::system(cmd.c_str());
  RunResult r;
  r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  r.out = slurp(out_path);
  std::filesystem::remove(out_path);
  return r;
}

std::uint64_t count_lines(const std::string& s) {
  std::uint64_t lines = 0;
  for (char c : s)
    if (c == '\n') ++lines;
  return lines;
}

}  // namespace

TEST_CASE("listing names every experiment") {
  const RunResult r = run_cli("--list");
  REQUIRE(r.exit_code == 0);
  for (const char* name :
       {"isolate-root", "isolate-multi", "random-targets", "last-targets", "disconnect",
        "first-targets-disconnect", "component-tree", "cut-tree", "ordered", "coalescent",
        "percolation", "urn", "yule", "walk", "oracle", "sweep"})
    CHECK_MESSAGE(r.out.find(name) != std::string::npos, "missing ", name);
}

TEST_CASE("fixed seed reruns are byte-identical") {
  const auto a = scratch("det_a.csv"), b = scratch("det_b.csv");
  const std::string base = "isolate-root --n 1000 --trials 30 --seed 7 --output ";
  REQUIRE(run_cli(base + "\"" + a.string() + "\"").exit_code == 0);
  REQUIRE(run_cli(base + "\"" + b.string() + "\"").exit_code == 0);
  const std::string ca = slurp(a), cb = slurp(b);
  CHECK(ca == cb);
  CHECK(ca.starts_with("experiment,n,trial,stat,raw,normalized,ref_cdf\n"));
  CHECK(count_lines(ca) == 31);  // header + one row per trial
  std::filesystem::remove(a);
  std::filesystem::remove(b);
}

TEST_CASE("thread count does not change the output") {
  const auto a = scratch("thr_a.csv"), b = scratch("thr_b.csv");
  const std::string base = "disconnect --n 400 --trials 25 --seed 11 --ell 3 --k 2 ";
  REQUIRE(run_cli(base + "--threads 1 --output \"" + a.string() + "\"").exit_code == 0);
  REQUIRE(run_cli(base + "--threads 8 --output \"" + b.string() + "\"").exit_code == 0);
  CHECK(slurp(a) == slurp(b));
  std::filesystem::remove(a);
  std::filesystem::remove(b);
}

TEST_CASE("jsonl mirrors the csv fields") {
  const RunResult r = run_cli("urn --n 50 --trials 4 --seed 2 --p 0.5 --format jsonl");
  REQUIRE(r.exit_code == 0);
  CHECK(r.out.find("{\"experiment\":\"urn\",\"n\":50,\"trial\":0,\"stat\":\"red-count\"") !=
        std::string::npos);
  CHECK(r.out.find("\"ref_cdf\":null") != std::string::npos);  // no reference law for the urn
  CHECK(r.out.find("# summary experiment=urn") != std::string::npos);
}

TEST_CASE("oracle prints the exact isolation law") {
  const RunResult r = run_cli("oracle --n 4 --statistic X");
  REQUIRE(r.exit_code == 0);
  CHECK(r.out.find("1,1/16,0.0625") != std::string::npos);
  CHECK(r.out.find("2,65/288,") != std::string::npos);
  CHECK(r.out.find("3,115/288,") != std::string::npos);
  CHECK(r.out.find("4,5/16,0.3125") != std::string::npos);
}

TEST_CASE("oracle split law") {
  const RunResult r = run_cli("oracle --n 3 --statistic split");
  REQUIRE(r.exit_code == 0);
  CHECK(r.out.find("1,2/3,") != std::string::npos);
  CHECK(r.out.find("2,2/9,") != std::string::npos);
  CHECK(r.out.find("3,1/9,") != std::string::npos);
}

TEST_CASE("sweep reports a trend verdict") {
  const RunResult r =
      run_cli("sweep --experiment walk --n 1000 --n 10000 --trials 300 --seed 5");
  REQUIRE(r.exit_code == 0);
  CHECK(r.out.find("# n=1000 ks=") != std::string::npos);
  CHECK(r.out.find("# n=10000 ks=") != std::string::npos);
  CHECK(r.out.find("# trend: ") != std::string::npos);
}

TEST_CASE("usage errors exit with code 2") {
  CHECK(run_cli("no-such-command").exit_code == 2);
  CHECK(run_cli("sweep --experiment walk --n 1000 --trials 10").exit_code == 2);
  CHECK(run_cli("disconnect --n 100 --trials 5 --ell 3 --k 5").exit_code == 2);
  CHECK(run_cli("last-targets --n 4 --trials 5 --ell 9").exit_code == 2);
  CHECK(run_cli("sweep --experiment urn --n 100 --n 1000 --trials 5").exit_code == 2);
  CHECK(run_cli("").exit_code == 2);
}

TEST_CASE("unwritable output exits with code 3") {
  CHECK(run_cli("isolate-root --n 100 --trials 2 --output /nonexistent-dir/rows.csv").exit_code ==
        3);
}

TEST_CASE("percolation summary carries the mean-field verdict") {
  const RunResult r = run_cli("percolation --n 10000 --t 1.0 --trials 100 --seed 1");
  REQUIRE(r.exit_code == 0);
  CHECK(r.out.find("# tolerance: mean root fraction within 2% of exp(-t) -> ") !=
        std::string::npos);
}

int main(int argc, char** argv) {
  if (argc < 2) {
    std::fprintf(stderr, "usage: test_cli <path-to-cli-binary>\n");
    return 1;
  }
  cli_path = argv[argc - 1];
  doctest::Context context;
  context.applyCommandLine(1, argv);
  return context.run();
}
