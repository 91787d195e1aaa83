#pragma once

#include "cavity/config.hpp"
#include "cavity/kinematics.hpp"
#include "cavity/solver.hpp"
#include "cavity/stress.hpp"

#include <filesystem>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace cavity::cli {

enum ExitCode : int { kSuccess = 0, kDomainFailure = 1, kUsageFailure = 2 };

/// The output directory or one of its files cannot be written.
class OutputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Console {
  std::ostream& out;
  std::ostream& err;
  bool quiet = false;

  void info(const std::string& line) const;
  void warn(const std::string& line) const;
};

/// A configured stress on a concrete domain. Builtins also carry their known
/// stream function.
struct Problem {
  TriangleDomain domain;
  StressField stress;
  std::optional<StreamFunction> known;
  std::string label;
};

Problem make_problem(const RunConfig& cfg, const Console& console);

/// Throws IncompatibleStress.
StreamFunction solve_problem(const Problem& problem, const RunConfig& cfg);

/// Interior 5 x 5 lattice, then three seeds between each interior center and
/// its nearest wall or neighbouring stagnation point.
std::vector<PhysicalPoint> default_seeds(const TriangleDomain& d, const std::vector<StagnationPoint>& stagnation);

int cmd_check(const RunConfig& cfg, const Console& console);
int cmd_solve(const RunConfig& cfg, const Console& console);
int cmd_flow(const RunConfig& cfg, const Console& console);
/// Regenerates the linear, sinusoidal and realistic cases under base.output.
int cmd_examples(const RunConfig& base, const Console& console);

/// Full command-line entry point; returns the process exit code.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace cavity::cli
