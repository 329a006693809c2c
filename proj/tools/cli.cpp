#include "cli.hpp"

#include <cmath>
#include <string>

#include "io.hpp"
#include "metaschwarz/error.hpp"
#include "metaschwarz/integral_ops.hpp"

namespace metaschwarz::cli {

namespace {

namespace fs = std::filesystem;

void require(bool ok, const std::string& what) {
  if (!ok) throw Error(Errc::Schema, what);
}

void validate(const RunConfig& cfg) {
  require(cfg.grid_radii >= 4 && cfg.grid_angles >= 4, "grid dimensions must be >= 4");
  require(cfg.grid_angles % 2 == 0 && cfg.grid_angles >= 8, "grid angles must be even and >= 8");
  require(cfg.degree >= 0, "degree must be non-negative");
  require(cfg.radial_depth >= 4, "radial depth must be >= 4");
  require(cfg.order >= 1, "order must be >= 1");
  for (const auto& [name, value] : cfg.tolerances) {
    require(value > 0.0 && std::isfinite(value), "tolerance " + name + " must be positive");
  }
}

int exit_code_for(Errc code) {
  switch (code) {
    case Errc::Schema:
    case Errc::InvalidArgument:
      return schema;
    case Errc::VerificationFailed:
      return verification;
    default:
      return nonconvergence;
  }
}

std::vector<std::vector<double>> sample_rows(const PolarGrid& grid, const DiskFunction& f) {
  std::vector<std::vector<double>> rows;
  rows.reserve(grid.n_radii() * static_cast<std::size_t>(grid.n_theta()));
  for (std::size_t i = 0; i < grid.n_radii(); ++i) {
    for (int j = 0; j < grid.n_theta(); ++j) {
      const cplx v = f(grid.point(i, j));
      rows.push_back({grid.radii()[i], grid.theta(j), v.real(), v.imag()});
    }
  }
  return rows;
}

RunResult finish_verification(const Report& report, const fs::path& report_path, RunResult result) {
  io::write_json(report_path, io::to_json(report));
  result.files.push_back(report_path);
  if (!report.passed()) {
    const Check* bad = report.first_failure();
    result.exit_code = verification;
    result.message = "verification failed: " + bad->name + " = " + std::to_string(bad->value) +
                     " (threshold " + std::to_string(bad->threshold) + ")";
  } else {
    result.message = "all " + std::to_string(report.checks().size()) + " checks passed";
  }
  return result;
}

RunResult run_solve(const RunConfig& cfg) {
  const SchwarzSpec spec = io::spec_from_json(io::read_json(cfg.input));
  SolverOptions opts = solver_options(cfg);
  opts.throw_on_failure = false;
  const SchwarzSolution sol = solve(spec, opts);

  RunResult result;
  const fs::path solution_path = cfg.out_dir / "solution.json";
  io::write_json(solution_path, io::to_json(sol, spec));
  result.files.push_back(solution_path);

  const PolarGrid grid = PolarGrid::uniform(cfg.grid_radii, cfg.grid_angles);
  const BivarPoly residual = shifted_cofactor(sol.w, spec.A, spec.n);
  std::vector<std::vector<double>> rows;
  for (std::size_t i = 0; i < grid.n_radii(); ++i) {
    for (int j = 0; j < grid.n_theta(); ++j) {
      const cplx z = grid.point(i, j);
      const cplx w = sol.w(z);
      const cplx res = std::exp(sol.w.psi()(z)) * residual(z);
      rows.push_back({grid.radii()[i], grid.theta(j), w.real(), w.imag(), res.real(), res.imag()});
    }
  }
  const fs::path grid_path = cfg.out_dir / "grid.csv";
  io::write_csv(grid_path, {"r", "theta", "re_w", "im_w", "re_residual", "im_residual"}, rows);
  result.files.push_back(grid_path);
  return finish_verification(sol.diagnostics, cfg.out_dir / "report.json", std::move(result));
}

RunResult run_verify(const RunConfig& cfg) {
  SolverOptions opts = solver_options(cfg);
  const io::LoadedSolution loaded = io::solution_from_json(io::read_json(cfg.input), opts.psi);
  const Report report = verify_solution(loaded.solution, loaded.spec, opts);
  return finish_verification(report, cfg.out_dir / "report.json", {});
}

RunResult run_transform(const RunConfig& cfg) {
  const BivarPoly f = io::bivar_from_json(io::read_json(cfg.input));
  BivarPoly g;
  if (cfg.kind == "teodorescu") {
    g = teodorescu_poly(f);
  } else if (cfg.kind == "schwarz_pompeiu") {
    g = psi_from_A(f, PsiKind::schwarz, solver_options(cfg).psi).value;
  } else {
    throw Error(Errc::Schema, "unknown transform kind \"" + cfg.kind + "\"");
  }
  const PolarGrid grid = PolarGrid::uniform(cfg.grid_radii, cfg.grid_angles);
  const fs::path path = cfg.out_dir / "transform.csv";
  io::write_csv(path, {"r", "theta", "re", "im"}, sample_rows(grid, [&g](cplx z) { return g(z); }));
  return {ok, "wrote " + path.string(), {path}};
}

RunResult run_poisson(const RunConfig& cfg) {
  const BoundaryDistribution u = io::boundary_from_json(io::read_json(cfg.input));
  const PolarGrid grid = PolarGrid::uniform(cfg.grid_radii, cfg.grid_angles);
  const fs::path path = cfg.out_dir / "poisson.csv";
  io::write_csv(path, {"r", "theta", "re", "im"},
                sample_rows(grid, [&u](cplx z) { return poisson_extend(u, DiskPoint(z)); }));
  return {ok, "wrote " + path.string(), {path}};
}

RunResult run_decompose(const RunConfig& cfg) {
  const PolarGrid samples = io::read_grid_csv(cfg.input);
  const Decomposition d = poly_decompose(samples, cfg.order, cfg.degree);
  io::json parts = io::json::array();
  for (const auto& part : d.parts.parts()) parts.push_back(io::to_json(part));
  const fs::path path = cfg.out_dir / "decomposition.json";
  io::write_json(path, {{"order", cfg.order},
                        {"degree", cfg.degree},
                        {"parts", parts},
                        {"residual", d.residual},
                        {"condition", d.condition}});
  return {ok, "wrote " + path.string(), {path}};
}

}  // namespace

Command command_from_string(const std::string& name) {
  if (name == "solve") return Command::solve;
  if (name == "verify") return Command::verify;
  if (name == "transform") return Command::transform;
  if (name == "poisson") return Command::poisson;
  if (name == "decompose") return Command::decompose;
  throw Error(Errc::Schema, "unknown command \"" + name + "\"");
}

std::pair<std::string, double> parse_tolerance(const std::string& spec) {
  const auto eq = spec.find('=');
  require(eq != std::string::npos && eq > 0, "tolerance must be given as name=value, got \"" + spec + "\"");
  std::size_t used = 0;
  double value = 0.0;
  try {
    value = std::stod(spec.substr(eq + 1), &used);
  } catch (const std::exception&) {
    used = 0;
  }
  require(used > 0 && used == spec.size() - eq - 1, "bad tolerance value in \"" + spec + "\"");
  return {spec.substr(0, eq), value};
}

std::pair<int, int> parse_grid(const std::string& spec) {
  const auto x = spec.find('x');
  require(x != std::string::npos, "grid must be given as NRxNT, got \"" + spec + "\"");
  try {
    std::size_t a = 0;
    std::size_t b = 0;
    const int nr = std::stoi(spec.substr(0, x), &a);
    const int nt = std::stoi(spec.substr(x + 1), &b);
    if (a == x && b == spec.size() - x - 1) return {nr, nt};
  } catch (const std::exception&) {
  }
  throw Error(Errc::Schema, "grid must be given as NRxNT, got \"" + spec + "\"");
}

void load_config(const std::filesystem::path& path, RunConfig& cfg) {
  const io::json j = io::read_json(path);
  try {
    if (j.contains("grid")) std::tie(cfg.grid_radii, cfg.grid_angles) = parse_grid(j["grid"].get<std::string>());
    if (j.contains("degree")) cfg.degree = j["degree"].get<int>();
    if (j.contains("radial_depth")) cfg.radial_depth = j["radial_depth"].get<int>();
    if (j.contains("order")) cfg.order = j["order"].get<int>();
    if (j.contains("kind")) cfg.kind = j["kind"].get<std::string>();
    if (j.contains("out")) cfg.out_dir = j["out"].get<std::string>();
    if (j.contains("tolerances")) {
      for (const auto& [name, value] : j["tolerances"].items()) cfg.tolerances[name] = value.get<double>();
    }
  } catch (const io::json::exception& e) {
    throw Error(Errc::Schema, path.string() + ": " + e.what());
  }
}

SolverOptions solver_options(const RunConfig& cfg) {
  SolverOptions opts;
  opts.grid_radii = cfg.grid_radii;
  opts.grid_angles = cfg.grid_angles;
  opts.radial_depth = cfg.radial_depth;
  for (const auto& [name, value] : cfg.tolerances) {
    if (name == "chain") opts.tol.chain = value;
    else if (name == "pde") opts.tol.pde = value;
    else if (name == "point") opts.tol.point = value;
    else if (name == "boundary") opts.tol.boundary = value;
    else if (name == "pairing") opts.tol.pairing = value;
    else if (name == "psi_imag") opts.tol.psi_imag = value;
    else if (name == "negative_control") opts.tol.negative_control = value;
    else if (name == "limit") opts.limit.tolerance = value;
    else if (name == "quadrature") opts.psi.quadrature.tolerance = value;
    else if (name == "fit") opts.psi.max_residual = value;
    else throw Error(Errc::Schema, "unknown tolerance \"" + name + "\"");
  }
  return opts;
}

RunResult run(const RunConfig& cfg) {
  try {
    validate(cfg);
    std::filesystem::create_directories(cfg.out_dir);
    switch (cfg.command) {
      case Command::solve:
        return run_solve(cfg);
      case Command::verify:
        return run_verify(cfg);
      case Command::transform:
        return run_transform(cfg);
      case Command::poisson:
        return run_poisson(cfg);
      case Command::decompose:
        return run_decompose(cfg);
    }
  } catch (const Error& e) {
    return {exit_code_for(e.code()), e.what(), {}};
  } catch (const std::filesystem::filesystem_error& e) {
    return {schema, e.what(), {}};
  }
  return {schema, "unknown command", {}};
}

}  // namespace metaschwarz::cli
