#pragma once

#include "cavity/geometry.hpp"
#include "cavity/polynomial.hpp"
#include "cavity/quadrature.hpp"

#include "json.hpp"

#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace cavity {

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct PolyTerm {
  int i = 0;        // power of x
  int j = 0;        // power of y
  int a_power = 0;  // power of the length parameter a
  Rational coefficient;
};

struct StressSpec {
  enum class Kind { Polynomial, Cosine, Builtin };
  Kind kind = Kind::Builtin;
  std::vector<PolyTerm> terms;
  double amplitude = 5.0;
  int harmonic = 1;
  std::string builtin;  // "linear", "sinusoidal" or "realistic"
};

/// One run of the command-line tool. Parsed from a single JSON document; every
/// key except "stress" is optional and unknown keys are rejected.
struct RunConfig {
  double a = 1.0;
  StressSpec stress;
  std::filesystem::path output = "cavity-out";
  double compat_tol = 1e-10;
  std::optional<double> tol_pde;
  std::optional<double> tol_bc;
  int grid = 101;
  std::optional<QuadratureSpec> quadrature;
  std::vector<PhysicalPoint> seeds;
  std::optional<double> step;
  int max_steps = 20000;
  int stagnation_seeds = 24;
};

RunConfig parse_config(const nlohmann::json& doc);
RunConfig parse_config_text(const std::string& text);
RunConfig load_config(const std::filesystem::path& path);

RunConfig builtin_config(const std::string& name, double a);

}  // namespace cavity
