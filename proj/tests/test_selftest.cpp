#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sstream>
#include <string>

#include "statdist/selftest.hpp"

TEST_CASE("the invariant suite passes on a clean build") {
  std::ostringstream out;
  const int failures = statdist::run_selftest(out, 0);
  CHECK(failures == 0);

  std::istringstream lines(out.str());
  std::string line;
  int pass_lines = 0;
  while (std::getline(lines, line)) {
    CHECK(line.rfind("PASS ", 0) == 0);
    ++pass_lines;
  }
  CHECK(pass_lines == 13);
}

TEST_CASE("the suite holds for other seeds too") {
  std::ostringstream out;
  CHECK(statdist::run_selftest(out, 42) == 0);
  CHECK(statdist::run_selftest(out, 20260814) == 0);
}
