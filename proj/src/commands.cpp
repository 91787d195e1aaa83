#include "cavity/cli.hpp"

#include "cavity/compatibility.hpp"
#include "cavity/export.hpp"
#include "cavity/svg.hpp"
#include "cavity/verify.hpp"

#include "CLI11.hpp"
#include <fmt/format.h>

#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>

namespace cavity::cli {

namespace fs = std::filesystem;

void Console::info(const std::string& line) const {
  if (!quiet) out << line << '\n';
}

void Console::warn(const std::string& line) const { err << "warning: " << line << '\n'; }

namespace {

void prepare_dir(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec || !fs::is_directory(dir)) throw OutputError("cannot create output directory " + dir.string());
}

void write_file(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  out << text;
  out.close();
  if (!out) throw OutputError("cannot write " + path.string());
}

Poly poly_from_terms(const std::vector<PolyTerm>& terms) {
  Poly f;
  for (const auto& t : terms) f += Poly::term(t.coefficient, t.i, t.j, t.a_power);
  return f;
}

QuadratureSpec quadrature_for(const RunConfig& cfg, const TriangleDomain& d) {
  return cfg.quadrature ? *cfg.quadrature : default_quadrature(d);
}

VerificationOptions verification_for(const RunConfig& cfg, const StreamFunction& psi) {
  VerificationOptions opts;
  opts.lattice_n = cfg.grid;
  // differences of a non-polynomial field carry truncation error of order h^2
  opts.tol_pde = cfg.tol_pde.value_or(psi.exact_poly() ? 1e-9 : 5e-3);
  if (cfg.tol_bc) opts.tol_bc = *cfg.tol_bc;
  return opts;
}

CompatibilityReport check_problem(const Problem& p, const RunConfig& cfg) {
  return compat_check(p.stress, p.domain, 65, cfg.compat_tol, quadrature_for(cfg, p.domain));
}

struct Solved {
  StreamFunction psi;
  VerificationReport report;
};

Solved solve_and_verify(const Problem& p, const RunConfig& cfg) {
  StreamFunction psi = solve_problem(p, cfg);
  VerificationReport report = verify_solution(psi, p.stress, verification_for(cfg, psi));
  return {std::move(psi), std::move(report)};
}

struct Flow {
  std::vector<StagnationPoint> stagnation;
  std::vector<Streamline> lines;
  bool null_field = false;
};

Flow trace_flow(const StreamFunction& psi, const RunConfig& cfg) {
  Flow flow;
  const TriangleDomain& d = psi.domain();
  if (psi.scale() == 0.0) {
    flow.null_field = true;
    return flow;
  }
  const VelocityField v = VelocityField::best(psi);
  flow.stagnation = stagnation_points(v, d, cfg.stagnation_seeds);
  const auto seeds = cfg.seeds.empty() ? default_seeds(d, flow.stagnation) : cfg.seeds;
  const double step = cfg.step.value_or(1e-3 * d.a());
  for (const auto& s : seeds) {
    if (!in_closed_triangle(d, s, 1e-10 * d.a())) throw std::invalid_argument(fmt::format("seed ({}, {}) lies outside the cavity", s.x, s.y));
    flow.lines.push_back(trace_streamline(v, s, step, cfg.max_steps));
  }
  return flow;
}

std::string compat_summary(const CompatibilityReport& r) {
  return fmt::format("{}: max |C(X)| = {:.3e} (relative {:.3e}, tolerance {:.1e})",
                     r.compatible ? "compatible" : "incompatible", r.max_abs_residual, r.relative_residual(),
                     r.tolerance);
}

std::string flow_summary(const Flow& flow) {
  if (flow.null_field) return "null field: psi vanishes identically, nothing to trace";
  int centers = 0, saddles = 0, degenerate = 0;
  for (const auto& s : flow.stagnation) {
    if (s.kind == StagnationKind::Center) ++centers;
    else if (s.kind == StagnationKind::Saddle) ++saddles;
    else ++degenerate;
  }
  int closed = 0;
  for (const auto& l : flow.lines) closed += l.termination == Termination::Closed;
  return fmt::format("{} stagnation points ({} centers, {} saddles, {} degenerate); {} path-lines, {} closed",
                     flow.stagnation.size(), centers, saddles, degenerate, flow.lines.size(), closed);
}

void write_flow(const fs::path& dir, const StreamFunction& psi, const Flow& flow, const std::string& title) {
  std::ostringstream lines, stag;
  write_streamlines_csv(lines, flow.lines, psi);
  write_stagnation_csv(stag, flow.stagnation);
  const std::string svg = render_flow_svg(psi.domain(), flow.lines, flow.stagnation, title);
  write_file(dir / "streamlines.csv", lines.str());
  write_file(dir / "stagnation.csv", stag.str());
  write_file(dir / "flow.svg", svg);
}

std::string grid_text(const StreamFunction& psi, int n) {
  std::ostringstream out;
  write_grid_csv(out, psi, n);
  return out.str();
}

int report_incompatible(const CompatibilityReport& r, const Console& console) {
  console.err << "error: stress violates the compatibility condition; " << compat_summary(r) << '\n';
  return kDomainFailure;
}

}  // namespace

Problem make_problem(const RunConfig& cfg, const Console& console) {
  const TriangleDomain d(cfg.a);
  const auto& s = cfg.stress;
  switch (s.kind) {
    case StressSpec::Kind::Polynomial: {
      const Poly f = poly_from_terms(s.terms);
      return {d, StressField::polynomial(f), std::nullopt, "polynomial stress " + f.to_string()};
    }
    case StressSpec::Kind::Cosine: {
      if (s.harmonic % 2 == 0) {
        console.warn(fmt::format("even harmonic m = {} is never compatible; use an odd m", s.harmonic));
      }
      const double k = s.harmonic * std::numbers::pi / cfg.a;
      return {d, StressField::cosine(s.amplitude, k), std::nullopt,
              fmt::format("cosine stress A = {}, m = {}", s.amplitude, s.harmonic)};
    }
    case StressSpec::Kind::Builtin:
      break;
  }
  if (s.builtin == "linear") {
    return {d, StressField::polynomial(linear_example_stress()), std::nullopt, "linear shear"};
  }
  if (s.builtin == "sinusoidal") {
    return {d, sinusoidal_source_stress(s.amplitude, d), sinusoidal_closed_form(s.amplitude, d),
            fmt::format("sinusoidal shear A = {}", s.amplitude)};
  }
  if (s.builtin == "realistic") {
    RealisticExample ex = realistic_example(d);
    return {d, StressField::polynomial(ex.stress), ex.psi, "realistic shear"};
  }
  throw ConfigError("unknown builtin '" + s.builtin + "'");
}

StreamFunction solve_problem(const Problem& p, const RunConfig& cfg) {
  if (p.known) return *p.known;
  if (const Poly* f = p.stress.as_polynomial()) return solve_exact_poly(*f, p.domain);
  return solve_quadrature(p.stress, p.domain, quadrature_for(cfg, p.domain), cfg.compat_tol);
}

std::vector<PhysicalPoint> default_seeds(const TriangleDomain& d, const std::vector<StagnationPoint>& stagnation) {
  std::vector<PhysicalPoint> seeds;
  const double a = d.a();
  for (int j = 0; j < 5; ++j) {
    for (int i = 0; i < 5; ++i) {
      const PhysicalPoint p{(i + 0.5) * 2.0 * a / 5.0, (j + 0.5) * a / 5.0};
      if (classify(d, p, 1e-10 * a).region == Region::Interior) seeds.push_back(p);
    }
  }
  for (const auto& c : stagnation) {
    if (c.kind != StagnationKind::Center) continue;
    const PhysicalPoint p = c.location;
    double reach = std::min({p.y, (p.x - p.y) / std::numbers::sqrt2, (2.0 * a - p.x - p.y) / std::numbers::sqrt2});
    for (const auto& o : stagnation) {
      const double dist = std::hypot(o.location.x - p.x, o.location.y - p.y);
      if (dist > 0.0) reach = std::min(reach, 0.5 * dist);
    }
    if (!(reach > 0.0)) continue;
    for (double f : {0.25, 0.5, 0.75}) seeds.push_back({p.x, p.y + f * reach});
  }
  return seeds;
}

int cmd_check(const RunConfig& cfg, const Console& console) {
  const Problem p = make_problem(cfg, console);
  const CompatibilityReport r = check_problem(p, cfg);
  prepare_dir(cfg.output);
  write_file(cfg.output / "compat.json", r.to_json().dump(2) + "\n");
  console.info(p.label + ": " + compat_summary(r));
  return r.compatible ? kSuccess : kDomainFailure;
}

int cmd_solve(const RunConfig& cfg, const Console& console) {
  const Problem p = make_problem(cfg, console);
  const CompatibilityReport r = check_problem(p, cfg);
  if (!r.compatible) return report_incompatible(r, console);
  const Solved s = solve_and_verify(p, cfg);
  const std::string grid = grid_text(s.psi, cfg.grid);
  prepare_dir(cfg.output);
  write_file(cfg.output / "psi.csv", grid);
  write_file(cfg.output / "verify.json", s.report.to_json().dump(2) + "\n");
  console.info(p.label + ": " + s.psi.describe());
  console.info(s.report.table());
  return s.report.passed() ? kSuccess : kDomainFailure;
}

int cmd_flow(const RunConfig& cfg, const Console& console) {
  const Problem p = make_problem(cfg, console);
  const CompatibilityReport r = check_problem(p, cfg);
  if (!r.compatible) return report_incompatible(r, console);
  const StreamFunction psi = solve_problem(p, cfg);
  const Flow flow = trace_flow(psi, cfg);
  prepare_dir(cfg.output);
  write_flow(cfg.output, psi, flow, "Flow path-lines: " + p.label);
  console.info(p.label + ": " + flow_summary(flow));
  return kSuccess;
}

int cmd_examples(const RunConfig& base, const Console& console) {
  const TriangleDomain d(base.a);
  bool all_passed = true;
  struct Artifacts {
    fs::path dir;
    std::string compat, grid, verify;
    StreamFunction psi;
    Flow flow;
    std::string title;
  };
  std::vector<Artifacts> cases;
  for (const char* name : {"linear", "sinusoidal", "realistic"}) {
    RunConfig cfg = base;
    cfg.stress = builtin_config(name, base.a).stress;
    const Problem p = make_problem(cfg, console);
    const CompatibilityReport r = check_problem(p, cfg);
    if (!r.compatible) {
      report_incompatible(r, console);
      all_passed = false;
      continue;
    }
    Solved s = solve_and_verify(p, cfg);
    if (!s.report.passed()) {
      console.err << "error: verification failed for the " << name << " case\n" << s.report.table();
      all_passed = false;
    }
    Flow flow = trace_flow(s.psi, cfg);
    console.info(fmt::format("{}: {}; verification {}; {}", name, compat_summary(r),
                             s.report.passed() ? "passed" : "FAILED", flow_summary(flow)));
    cases.push_back({base.output / name, r.to_json().dump(2) + "\n", grid_text(s.psi, cfg.grid),
                     s.report.to_json().dump(2) + "\n", s.psi, std::move(flow), "Flow path-lines: " + p.label});
  }

  // u along x = a for the linear and sinusoidal cases, and along the moving wall y = 0
  const int n_profile = 201;
  std::vector<std::vector<double>> u_rows, shear_rows;
  {
    const VelocityField lin = VelocityField::best(solve_exact_poly(linear_example_stress(), d));
    const VelocityField sin = VelocityField::best(sinusoidal_closed_form(5.0, d));
    const auto ul = u_profile(lin, VerticalLine{d.a()}, n_profile);
    const auto us = u_profile(sin, VerticalLine{d.a()}, n_profile);
    for (std::size_t i = 0; i < ul.size(); ++i) u_rows.push_back({ul[i].coordinate, ul[i].u, us[i].u});

    const RealisticExample ex = realistic_example(d);
    const VelocityField real = VelocityField::best(ex.psi);
    const CompiledPoly f(ex.stress, d.a());
    for (const auto& s : u_profile(real, HorizontalLine{0.0}, n_profile)) {
      shear_rows.push_back({s.coordinate, s.u, f(s.coordinate, 0.0)});
    }
  }

  prepare_dir(base.output);
  for (const auto& c : cases) {
    prepare_dir(c.dir);
    write_file(c.dir / "compat.json", c.compat);
    write_file(c.dir / "psi.csv", c.grid);
    write_file(c.dir / "verify.json", c.verify);
    write_flow(c.dir, c.psi, c.flow, c.title);
  }
  std::ostringstream u_csv, shear_csv;
  write_table_csv(u_csv, {"y", "u_linear", "u_sinusoidal"}, u_rows);
  write_table_csv(shear_csv, {"x", "u", "f"}, shear_rows);
  write_file(base.output / "u_profile_x_eq_a.csv", u_csv.str());
  write_file(base.output / "shear_profile_y_eq_0.csv", shear_csv.str());
  return all_passed ? kSuccess : kDomainFailure;
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Stream functions of shear-driven flow in a right-triangular cavity"};
  app.require_subcommand(1);
  std::string config_path;
  std::optional<double> a;
  std::optional<std::string> out_dir;
  std::optional<int> grid;
  bool quiet = false;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", config_path, "JSON run configuration")->check(CLI::ExistingFile);
    sub->add_option("--a", a, "half-length of the hypotenuse OA");
    sub->add_option("--out", out_dir, "output directory");
    sub->add_option("--grid", grid, "lattice points per axis");
    sub->add_flag("--quiet", quiet, "suppress the summary on stdout");
  };
  CLI::App* check = app.add_subcommand("check", "test the compatibility condition, write compat.json");
  CLI::App* solve = app.add_subcommand("solve", "solve and verify, write psi.csv and verify.json");
  CLI::App* flow = app.add_subcommand("flow", "trace path-lines and stagnation points, write CSVs and flow.svg");
  CLI::App* examples = app.add_subcommand("examples", "regenerate the linear, sinusoidal and realistic cases");
  for (CLI::App* sub : {check, solve, flow, examples}) add_common(sub);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kSuccess : kUsageFailure;
  }

  const Console console{out, err, quiet};
  try {
    RunConfig cfg;
    if (!config_path.empty()) {
      cfg = load_config(config_path);
    } else if (!examples->parsed()) {
      throw ConfigError("--config is required for this command");
    }
    if (a) {
      if (!std::isfinite(*a) || *a <= 0.0) throw ConfigError("--a must be a positive number");
      cfg.a = *a;
    }
    if (grid) {
      if (*grid < 4) throw ConfigError("--grid must be at least 4");
      cfg.grid = *grid;
    }
    if (out_dir) {
      cfg.output = *out_dir;
    } else if (examples->parsed() && config_path.empty()) {
      cfg.output = "cavity-examples";
    }

    if (check->parsed()) return cmd_check(cfg, console);
    if (solve->parsed()) return cmd_solve(cfg, console);
    if (flow->parsed()) return cmd_flow(cfg, console);
    return cmd_examples(cfg, console);
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << '\n';
    return kUsageFailure;
  } catch (const OutputError& e) {
    err << "output error: " << e.what() << '\n';
    return kUsageFailure;
  } catch (const IncompatibleStress& e) {
    err << "error: " << e.what() << '\n';
    return kDomainFailure;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kUsageFailure;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kDomainFailure;
  }
}

}  // namespace cavity::cli
