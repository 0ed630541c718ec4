#pragma once

// Command-line front end shared by the wulffc tool and the tests.
//
// Exit codes: 0 ok, 1 theorem-agreement failure, 2 input schema or usage,
// 3 invalid integrand or body, 4 pipeline census or tolerance failure.

#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

namespace wulff::cli {

struct RunConfig {
  std::string command;
  std::vector<std::string> inputs;
  int grid = 0;       // 0 selects the per-command default
  double tol = -1.0;  // negative selects the per-command default
  double eps = 0.05;
  std::uint64_t seed = 0;
  std::string out = ".";
  std::string dir;    // apex direction "x,y[,z]"
  int sections = 16;
};

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);
int run(const RunConfig& cfg, std::ostream& out, std::ostream& err);

}  // namespace wulff::cli
