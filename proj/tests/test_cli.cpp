#include <catch2/catch_amalgamated.hpp>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

namespace {

namespace fs = std::filesystem;

std::string cli_path() { return OPALG_CLI_PATH; }

int run(const std::string& args) {
  std::string cmd = cli_path() + " " + args + " > /dev/null 2>&1";
  int rc = std::system(cmd.c_str());
  return WEXITSTATUS(rc);
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

}  // namespace

TEST_CASE("exit codes") {
  CHECK(run("check --suite factorization") == 0);
  CHECK(run("check --suite factorization --inject-fault") == 1);
  CHECK(run("check --suite bogus") == 2);
  CHECK(run("commutator --id not_an_identity") == 2);
  CHECK(run("wavefunction --dim 3 --n 2 --sector 7") == 2);
  CHECK(run("spectrum --n-max 0") == 2);
  CHECK(run("nonsense") == 2);
}

TEST_CASE("spectrum output") {
  fs::path out = fs::temp_directory_path() / "opalg_spec_test.csv";
  REQUIRE(run("spectrum --dim 3 --n-max 2 --format csv -o " + out.string()) == 0);
  CHECK(slurp(out) ==
        "n,sector_min,sector_max,energy_e2_per_a0,degeneracy\n"
        "1,0,0,-1/2,1\n"
        "2,0,1,-1/8,2\n");
  REQUIRE(run("spectrum --dim 2 --n-max 1 --format csv -o " + out.string()) == 0);
  CHECK(slurp(out) ==
        "n,sector_min,sector_max,energy_e2_per_a0,degeneracy\n"
        "1,0,0,-2,1\n");
  fs::remove(out);
}

TEST_CASE("identical configuration yields identical bytes") {
  fs::path a = fs::temp_directory_path() / "opalg_det_a.json";
  fs::path b = fs::temp_directory_path() / "opalg_det_b.json";
  REQUIRE(run("check --suite commutators --seed 7 -o " + a.string()) == 0);
  REQUIRE(run("check --suite commutators --seed 7 -o " + b.string()) == 0);
  CHECK(slurp(a) == slurp(b));
  REQUIRE(run("wavefunction --dim 2 --n 3 --m -2 --grid 0.1:20:50 -o " + a.string()) == 0);
  REQUIRE(run("wavefunction --dim 2 --n 3 --m -2 --grid 0.1:20:50 -o " + b.string()) == 0);
  CHECK(slurp(a) == slurp(b));
  fs::remove(a);
  fs::remove(b);
}

TEST_CASE("chain summary table") {
  fs::path out = fs::temp_directory_path() / "opalg_summary_test.csv";
  REQUIRE(run("state --dim 3 --summary-n-max 2 -o " + out.string()) == 0);
  CHECK(slurp(out) ==
        "n,sector,energy_e2_per_a0,norm_constant,b_coeffs\n"
        "1,0,-1/2,1,1\n"
        "2,0,-1/8,2/3*sqrt(6)*hbar^1*mu^-1/2*e^-2,-3;3/2\n"
        "2,1,-1/8,1,1\n");
  fs::remove(out);
}

TEST_CASE("state document carries the exact derivation") {
  fs::path out = fs::temp_directory_path() / "opalg_state_test.json";
  REQUIRE(run("state --dim 3 --n 2 --sector 0 -o " + out.string()) == 0);
  std::string text = slurp(out);
  CHECK(text.find("\"-3\"") != std::string::npos);
  CHECK(text.find("\"3/2\"") != std::string::npos);
  CHECK(text.find("\"forms_match\": true") != std::string::npos);
  fs::remove(out);
}
