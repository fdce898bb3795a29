#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sys/wait.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

// Drives the installed binary end to end. CTest provides COLLATZ_CLI (path
// to the binary) and COLLATZ_GOLDEN (directory with committed reports).

namespace {

struct RunResult {
  int exit_code = -1;
  std::string out;
};

const char* cli_path() {
  const char* p = std::getenv("COLLATZ_CLI");
  REQUIRE_MESSAGE(p != nullptr, "COLLATZ_CLI must point at the binary");
  return p;
}

RunResult run(const std::string& args) {
  const std::string cmd = std::string("\"") + cli_path() + "\" " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  RunResult res;
  char buf[4096];
  std::size_t got;
  while ((got = fread(buf, 1, sizeof(buf), pipe)) > 0) res.out.append(buf, got);
  const int status = pclose(pipe);
  res.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return res;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE_MESSAGE(in.good(), ("cannot open " + path));
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::string temp_path(const char* name) {
  const char* dir = std::getenv("TMPDIR");
  return std::string(dir ? dir : "/tmp") + "/" + name;
}

}  // namespace

TEST_CASE("documented one-liners") {
  CHECK(run("sigma 7").out == "11\n");
  CHECK(run("sk 4").out == "5,16\n");
  CHECK(run("phi 7").out == "-1/9\n");
}

TEST_CASE("plain outputs") {
  CHECK(run("orbit 7").out == "7,11,17,26,13,20,10,5,8,4,2,1\n");
  CHECK(run("stopping 7").out == "7\n");
  CHECK(run("trace 3").out == "1,1,0,0,0,1\n");
  CHECK(run("curve 3").out == "2,5\n");
  CHECK(run("c4 11").out == "5,11\n");
  CHECK(run("accel-sigma 27").out == "70\n");
  CHECK(run("accel-sigma 27 -w 13").out == "70\n");
  CHECK(run("rep 3").out == "2,0,1,5\n");
  CHECK(run("tau 7").out == "2199\n");
  CHECK(run("alpha 8").out == "24,18,16,4,1,0\n");
  CHECK(run("l1 8").out == "80,84,85\n");
  CHECK(run("l2 14").out == "1813\n");
  CHECK(run("lambda 6").out == "6,20,21,64\n");
  CHECK(run("sk 8 --bound 100").out == "24,26,80,84,85\n");
  CHECK(run("zeta 20").out == "3\n");
  CHECK(run("gamma 27").out.substr(0, 5) == "21.23");
  CHECK(run("angle 3").out == "0.840336134454\n");
}

TEST_CASE("csv outputs carry a header row") {
  CHECK(run("sigma 7 -f csv").out == "n,sigma\n7,11\n");
  CHECK(run("curve 3 -f csv").out == "n,i,j\n3,2,5\n");
  const RunResult orbit = run("orbit 5 -f csv");
  CHECK(orbit.out == "step,value\n0,5\n1,8\n2,4\n3,2\n4,1\n");
  const RunResult table = run("table -w 1 -f csv");
  CHECK(table.out == "residue,odd_count,offset\n0,0,0\n1,1,1\n");
  const RunResult growth = run("growth 4 -f csv");
  CHECK(growth.out == "k,count,ratio\n0,1,\n1,1,1.0000\n2,1,1.0000\n3,1,1.0000\n4,2,2.0000\n");
  CHECK(run("phi-s-check 8 -f csv").out ==
        "k,argument,phi,expected,matches\n"
        "0,257,85,85,true\n1,260,84,84,true\n2,272,80,80,true\n");
}

TEST_CASE("json outputs") {
  const RunResult sigma = run("sigma 7 -f json");
  CHECK(sigma.out.find("\"sigma\": 11") != std::string::npos);
  CHECK(sigma.out.find("\"n\": \"7\"") != std::string::npos);
  const RunResult cand = run("candidates -f json");
  CHECK(cand.out.find("\"increasing\": false") != std::string::npos);
  CHECK(cand.out.find("\"first_decrease\": 2") != std::string::npos);
  CHECK(cand.out.find("\"100759293214567\"") != std::string::npos);
}

TEST_CASE("verdict reports") {
  CHECK(run("equality 8").out ==
        "m: 8\nlambda_count: 6\nlevel_set_count: 6\n"
        "lambda_in_level_set: true\nlevel_set_in_lambda: true\nequal: true\n");
  CHECK(run("alpha-check 8").out ==
        "m: 8\nalpha1: 24\nalpha1_formula: 24\nalpha1_matches: true\n"
        "alpha2: 18\nalpha2_formula: 18\nalpha2_matches: true\n");
  // the second formula misses at m = 4 and the report says so
  CHECK(run("alpha-check 4").out.find("alpha2_matches: false") != std::string::npos);
  CHECK(run("phi-s-check 12").out == "m: 12\nchecks: 5\nall_match: true\n");
}

TEST_CASE("plot emission is two-column csv") {
  CHECK(run("growth 3 --plot").out == "k,count\n0,1\n1,1\n2,1\n3,1\n");
  const RunResult zeta = run("zeta 14 --plot");
  CHECK(zeta.out.substr(0, 7) == "m,zeta\n");
  CHECK(zeta.out.find("\n13,1\n") != std::string::npos);
  const RunResult an = run("an-scan 30 --plot");
  CHECK(an.out.substr(0, 11) == "seed,gamma\n");
  CHECK(an.out.find("\n27,21.2389\n") != std::string::npos);
}

TEST_CASE("exit codes") {
  CHECK(run("sigma 7").exit_code == 0);
  CHECK(run("sigma 27 --cap 69").exit_code == 3);
  CHECK(run("c4 27 --cap 10").exit_code == 3);
  CHECK(run("sigma abc").exit_code == 2);
  CHECK(run("sigma").exit_code == 2);
  CHECK(run("nosuchcommand").exit_code == 2);
  CHECK(run("stopping 1").exit_code == 2);
  CHECK(run("l2 6").exit_code == 2);
  CHECK(run("table -w 30").exit_code == 2);
  CHECK(run("--help").exit_code == 0);
  CHECK(run("verify --help").exit_code == 0);
  CHECK(run("verify 10 2").exit_code == 2);
}

TEST_CASE("checkpoint errors carry their own exit code") {
  const std::string bad = temp_path("collatz_bad_checkpoint.json");
  {
    std::ofstream out(bad, std::ios::trunc);
    out << "not a checkpoint";
  }
  CHECK(run("verify 2 100 --checkpoint " + bad).exit_code == 4);
  std::remove(bad.c_str());

  // a checkpoint for a different range must be refused
  const std::string cp = temp_path("collatz_range_checkpoint.json");
  std::remove(cp.c_str());
  CHECK(run("verify 2 500 --checkpoint " + cp).exit_code == 0);
  CHECK(run("verify 2 600 --checkpoint " + cp).exit_code == 4);
  std::remove(cp.c_str());
}

TEST_CASE("verify reports and resume identity") {
  const RunResult full = run("verify 2 50000");
  CHECK(full.exit_code == 0);
  CHECK(full.out.find("complete: true\n") != std::string::npos);
  CHECK(full.out.find("seeds_scanned: 49999\n") != std::string::npos);
  CHECK(full.out.find("non_descending: 0\n") != std::string::npos);
  CHECK(full.out.find("max_sigma_seed: 35655\n") != std::string::npos);

  const std::string cp = temp_path("collatz_resume_checkpoint.json");
  std::remove(cp.c_str());
  const RunResult part =
      run("verify 2 50000 --stop-after 12345 --checkpoint " + cp);
  CHECK(part.exit_code == 0);
  CHECK(part.out.find("complete: false\n") != std::string::npos);
  const RunResult resumed = run("verify 2 50000 --checkpoint " + cp);
  CHECK(resumed.exit_code == 0);
  CHECK(resumed.out == full.out);
  std::remove(cp.c_str());
}

TEST_CASE("threaded verify output is identical") {
  const RunResult one = run("verify 2 200000");
  const RunResult four = run("verify 2 200000 --threads 4");
  CHECK(one.out == four.out);
}

TEST_CASE("reference report matches the committed golden byte for byte") {
  const char* dir = std::getenv("COLLATZ_GOLDEN");
  REQUIRE_MESSAGE(dir != nullptr, "COLLATZ_GOLDEN must point at tests/golden");
  const std::string want = read_file(std::string(dir) + "/tables.txt");
  const RunResult got = run("tables");
  CHECK(got.exit_code == 0);
  CHECK(got.out == want);
  const RunResult threaded = run("tables --threads 3");
  CHECK(threaded.out == want);
}
