#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

namespace fs = std::filesystem;

namespace {

const fs::path& scratch() {
  static const fs::path dir = [] {
    fs::path p = fs::temp_directory_path() / ("dsd_cli_test_" + std::to_string(::getpid()));
    fs::create_directories(p);
    return p;
  }();
  return dir;
}

int run(const std::string& args) {
  std::string cmd = std::string(DSD_CLI_PATH) + " " + args + " >" + (scratch() / "stdout").string() + " 2>" +
                    (scratch() / "stderr").string();
  int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

fs::path write_file(const std::string& name, const std::string& body) {
  fs::path p = scratch() / name;
  std::ofstream(p) << body;
  return p;
}

const char* kHeader =
    "dataset,algo,eps,reduction,strategy,gamma,density,s_size,t_size,iterations,ratios_probed,reductions,"
    "elapsed_ms,verified\n";

}  // namespace

TEST_CASE("help and usage errors") {
  CHECK(run("--help") == 0);
  CHECK(run("uds --help") == 0);
  CHECK(run("") == 2);
  CHECK(run("uds --algo greedy") == 2);
  auto k4 = write_file("k4.txt", "0 1\n0 2\n0 3\n1 2\n1 3\n2 3\n");
  CHECK(run("uds --algo bogus --input " + k4.string()) == 2);
  CHECK(run("uds --algo flow_exact --eps 0.1 --input " + k4.string()) == 2);
  CHECK(run("uds --algo greedy --reduction double --input " + k4.string()) == 2);
  CHECK(run("dds --algo dc_exact --gamma 2 --input " + k4.string()) == 2);
  CHECK(run("uds --algo greedy --format xml --input " + k4.string()) == 2);
}

TEST_CASE("io failures exit with 1") {
  CHECK(run("uds --algo greedy --input " + (scratch() / "missing.txt").string()) == 1);
  auto bad = write_file("bad.txt", "0 1\n1 x\n");
  CHECK(run("uds --algo greedy --input " + bad.string()) == 1);
  CHECK(slurp(scratch() / "stderr").find("line 2") != std::string::npos);
}

TEST_CASE("single runs print a header and one row") {
  auto k4 = write_file("k4.txt", "0 1\n0 2\n0 3\n1 2\n1 3\n2 3\n");
  REQUIRE(run("uds --algo greedy --no-timing --input " + k4.string()) == 0);
  CHECK(slurp(scratch() / "stdout") == std::string(kHeader) + "k4,greedy,,none,sequential,,1.5,4,0,1,0,0,,false\n");

  REQUIRE(run("oracle --no-timing --input " + k4.string()) == 0);
  CHECK(slurp(scratch() / "stdout").find("k4,brute_force,") != std::string::npos);

  auto cyc = write_file("cyc.txt", "1 2\n2 1\n");
  REQUIRE(run("dds --algo dfw_exact --format json --no-timing --input " + cyc.string()) == 0);
  auto out = slurp(scratch() / "stdout");
  CHECK(out.find("\"density\":1.0") != std::string::npos);
  CHECK(out.find("\"s\":[1,2]") != std::string::npos);
}

TEST_CASE("generator output is deterministic") {
  auto a = scratch() / "a.txt";
  auto b = scratch() / "b.txt";
  REQUIRE(run("gen two-clique --k 20 --remove 0.01 --seed 7 --out " + a.string()) == 0);
  REQUIRE(run("gen two-clique --k 20 --remove 0.01 --seed 7 --out " + b.string()) == 0);
  CHECK(slurp(a) == slurp(b));
  CHECK_FALSE(slurp(a).empty());
}

TEST_CASE("bench appends rows without repeating the header") {
  auto k4 = write_file("bench_k4.txt", "0 1\n0 2\n0 3\n1 2\n1 3\n2 3\n");
  auto out = scratch() / "bench.csv";
  fs::remove(out);
  std::string args = "bench --algo greedy,fw_app --eps-grid 1,0.1 --no-timing --input " + k4.string() + " --out " +
                     out.string();
  REQUIRE(run(args) == 0);
  REQUIRE(run(args) == 0);
  auto text = slurp(out);
  std::size_t headers = 0, lines = 0;
  for (std::size_t pos = 0; (pos = text.find('\n', pos)) != std::string::npos; ++pos) ++lines;
  for (std::size_t pos = 0; (pos = text.find("dataset,", pos)) != std::string::npos; ++pos) ++headers;
  CHECK(headers == 1);
  CHECK(lines == 1 + 2 * 3);
}
