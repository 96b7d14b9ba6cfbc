#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sys/wait.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

// Drives the installed binary end to end through a shell; the build passes
// its location in as STATDIST_CLI_PATH.

namespace {

namespace fs = std::filesystem;

// Scratch directory for input/output files, removed on destruction.
struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() /
           ("statdist_cli_test_" + std::to_string(::getpid()));
    fs::create_directories(path);
  }
  ~TempDir() {
    std::error_code ec;
    fs::remove_all(path, ec);
  }
  fs::path file(const std::string& name) const { return path / name; }
};

void write_file(const fs::path& p, const std::string& text) {
  std::ofstream out(p);
  REQUIRE(out.good());
  out << text;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  REQUIRE(in.good());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

// Returns the process exit code; stdout lands in `stdout_path` when given.
int run_cli(const std::string& args, const fs::path& stdout_path = {}) {
  std::string cmd = std::string("\"") + STATDIST_CLI_PATH + "\" " + args;
  if (!stdout_path.empty()) {
    cmd += " > " + stdout_path.string();
  } else {
    cmd += " > /dev/null";
  }
  cmd += " 2> /dev/null";
  const int status = std::system(cmd.c_str());
  REQUIRE(status != -1);
  REQUIRE(WIFEXITED(status));
  return WEXITSTATUS(status);
}

// Pulls `name <value>` out of a report; fails the test if absent.
double report_value(const std::string& text, const std::string& name) {
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (line.rfind(name + " ", 0) == 0) {
      return std::stod(line.substr(name.size() + 1));
    }
  }
  FAIL("report value not found: ", name);
  return 0.0;
}

int count_lines_starting(const std::string& text, const std::string& prefix) {
  std::istringstream in(text);
  std::string line;
  int n = 0;
  while (std::getline(in, line)) {
    if (line.rfind(prefix, 0) == 0) ++n;
  }
  return n;
}

const std::string kBellPair =
    "dims 2 2\n"
    "1 0\n"
    "0 0\n"
    "0 0\n"
    "0 0\n"
    "\n"
    "dims 2 2\n"
    "0.70710678118654752 0\n"
    "0 0\n"
    "0 0\n"
    "0.70710678118654752 0\n";

}  // namespace

TEST_CASE("pure reports the global distance of the Bell-state pair") {
  TempDir dir;
  const fs::path states = dir.file("pair.txt");
  write_file(states, kBellPair);
  const fs::path out = dir.file("report.txt");

  const int code = run_cli("pure --states " + states.string(), out);
  CHECK(code == 0);
  const std::string report = slurp(out);
  CHECK(std::abs(report_value(report, "d_global_rad") - std::numbers::pi / 4) <
        1e-9);
  CHECK(std::abs(report_value(report, "overlap_abs") - std::sqrt(0.5)) < 1e-12);
  CHECK(std::abs(report_value(report, "d_global_deg") - 45.0) < 1e-7);
}

TEST_CASE("locc reproduces the global distance and prints the leaf table") {
  TempDir dir;
  const fs::path states = dir.file("pair.txt");
  write_file(states, kBellPair);
  const fs::path out = dir.file("report.txt");

  const int code = run_cli("locc --states " + states.string(), out);
  CHECK(code == 0);
  const std::string report = slurp(out);
  CHECK(std::abs(report_value(report, "d_locc_rad") - std::numbers::pi / 4) <
        1e-9);
  CHECK(std::abs(report_value(report, "d_locc_rad") -
                 report_value(report, "d_global_rad")) < 1e-9);
  CHECK(report_value(report, "cascade_telescope_max") < 1e-9);
  CHECK(report_value(report, "leaf_completeness_defect") < 1e-9);

  // Four leaves, every amplitude 1/(4 sqrt 2).
  CHECK(report.find("outcome,amp_re,amp_im,p1,p2") != std::string::npos);
  int leaf_rows = 0;
  std::istringstream in(report);
  std::string line;
  bool in_csv = false;
  while (std::getline(in, line)) {
    if (line.rfind("outcome,", 0) == 0) {
      in_csv = true;
      continue;
    }
    if (!in_csv || line.empty()) continue;
    ++leaf_rows;
    std::istringstream row(line);
    std::string field;
    std::getline(row, field, ',');  // outcome label
    std::getline(row, field, ',');
    const double re = std::stod(field);
    std::getline(row, field, ',');
    const double im = std::stod(field);
    CHECK(std::abs(std::hypot(re, im) - 1.0 / (4.0 * std::sqrt(2.0))) < 1e-9);
  }
  CHECK(leaf_rows == 4);
}

TEST_CASE("locc honours an explicit measurement order") {
  TempDir dir;
  const fs::path states = dir.file("pair.txt");
  write_file(states, kBellPair);
  const fs::path out = dir.file("report.txt");

  const int code =
      run_cli("locc --states " + states.string() + " --order \"1 0\"", out);
  CHECK(code == 0);
  const std::string report = slurp(out);
  CHECK(std::abs(report_value(report, "d_locc_rad") - std::numbers::pi / 4) <
        1e-9);
  CHECK(report.find("# order 1 0\n") != std::string::npos);
}

TEST_CASE("repeated runs emit byte-identical reports") {
  TempDir dir;
  const fs::path states = dir.file("pair.txt");
  write_file(states, kBellPair);
  const fs::path out1 = dir.file("a.txt");
  const fs::path out2 = dir.file("b.txt");

  CHECK(run_cli("locc --states " + states.string(), out1) == 0);
  CHECK(run_cli("locc --states " + states.string(), out2) == 0);
  CHECK(slurp(out1) == slurp(out2));

  // --out must produce the same bytes as captured stdout.
  const fs::path out3 = dir.file("c.txt");
  CHECK(run_cli("locc --states " + states.string() + " --out " +
                out3.string()) == 0);
  CHECK(slurp(out1) == slurp(out3));
}

TEST_CASE("equidiag emits the basis and meets its residual bound") {
  TempDir dir;
  const fs::path matrix = dir.file("m.txt");
  write_file(matrix,
             "dim 3\n"
             "1 0\n0 2\n0 0\n"
             "0 -2\n-1 0\n0.5 0\n"
             "0 0\n0.5 0\n3 1\n");
  const fs::path out = dir.file("report.txt");

  const int code = run_cli("equidiag --matrix " + matrix.string(), out);
  CHECK(code == 0);
  const std::string report = slurp(out);
  CHECK(report_value(report, "residual") < 1e-10 * 3.0);
  CHECK(report_value(report, "unitarity_defect") < 1e-12);
  CHECK(std::abs(report_value(report, "tau_re") - 1.0) < 1e-12);
  CHECK(std::abs(report_value(report, "tau_im") - 1.0 / 3.0) < 1e-12);
  // The basis follows the scalars in matrix format: header plus 9 rows.
  CHECK(report.find("\ndim 3\n") != std::string::npos);
}

TEST_CASE("oracle bound sampling stays within tolerance") {
  TempDir dir;
  const fs::path out = dir.file("report.txt");
  const int code = run_cli("oracle --dim 3 --trials 150 --seed 11", out);
  CHECK(code == 0);
  const std::string report = slurp(out);
  CHECK(report_value(report, "max_violation") <= 1e-12);
  CHECK(report.find("# generator ") != std::string::npos);
}

TEST_CASE("oracle optimizer mode respects the overlap bound") {
  TempDir dir;
  const fs::path states = dir.file("pair.txt");
  write_file(states, kBellPair);
  const fs::path out = dir.file("report.txt");

  const int code = run_cli("oracle --states " + states.string() +
                               " --seed 7 --restarts 2 --steps 120",
                           out);
  CHECK(code == 0);
  const std::string report = slurp(out);
  CHECK(report_value(report, "optimizer_gap") >= -1e-12);
  CHECK(report_value(report, "best_found_rad") <=
        report_value(report, "d_global_rad") + 1e-12);
}

TEST_CASE("mixed reports the Bures angle and a non-negative gap") {
  TempDir dir;
  const fs::path rho1 = dir.file("rho1.txt");
  const fs::path rho2 = dir.file("rho2.txt");
  write_file(rho1, "dim 2\n0.7 0\n0 0\n0 0\n0.3 0\n");
  write_file(rho2, "dim 2\n0.3 0\n0 0\n0 0\n0.7 0\n");
  const fs::path out = dir.file("report.txt");

  const int code = run_cli(
      "mixed --rho1 " + rho1.string() + " --rho2 " + rho2.string(), out);
  CHECK(code == 0);
  const std::string report = slurp(out);
  // Commuting pair with a scalar transition operator: the angle is
  // arccos(2 sqrt(0.21)) and equi-diagonalization attains it exactly.
  CHECK(std::abs(report_value(report, "bures_rad") -
                 std::acos(2.0 * std::sqrt(0.21))) < 1e-12);
  CHECK(std::abs(report_value(report, "transition_gap")) < 1e-9);
}

TEST_CASE("selftest passes and prints one line per invariant") {
  TempDir dir;
  const fs::path out = dir.file("report.txt");
  const int code = run_cli("selftest --seed 5", out);
  CHECK(code == 0);
  const std::string report = slurp(out);
  CHECK(count_lines_starting(report, "PASS ") >= 10);
  CHECK(count_lines_starting(report, "FAIL ") == 0);
}

TEST_CASE("bad inputs exit with status 2") {
  TempDir dir;
  const fs::path mismatched = dir.file("mismatched.txt");
  write_file(mismatched,
             "dims 2 2\n1 0\n0 0\n0 0\n0 0\n"
             "\n"
             "dims 2 3\n1 0\n0 0\n0 0\n0 0\n0 0\n0 0\n");
  CHECK(run_cli("pure --states " + mismatched.string()) == 2);

  const fs::path malformed = dir.file("malformed.txt");
  write_file(malformed, "dims 2\n1 0\noops\n");
  CHECK(run_cli("pure --states " + malformed.string()) == 2);

  const fs::path single = dir.file("single.txt");
  write_file(single, "dims 2\n1 0\n0 0\n");
  CHECK(run_cli("pure --states " + single.string()) == 2);

  CHECK(run_cli("pure --states " + dir.file("missing.txt").string()) == 2);

  const fs::path pair = dir.file("pair.txt");
  write_file(pair, kBellPair);
  CHECK(run_cli("locc --states " + pair.string() + " --order \"0 0\"") == 2);
  CHECK(run_cli("locc --states " + pair.string() + " --order \"0 2\"") == 2);
  CHECK(run_cli("locc --states " + pair.string() + " --order \"0 x\"") == 2);

  // Unknown subcommands and missing required flags are usage errors too.
  CHECK(run_cli("bogus") == 2);
  CHECK(run_cli("pure") == 2);
}
