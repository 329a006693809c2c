#include <CLI11.hpp>
#include <iostream>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "cli.hpp"
#include "metaschwarz/error.hpp"

int main(int argc, char** argv) {
  using namespace metaschwarz;

  CLI::App app{"Meta-analytic functions on the unit disk and the higher-order Schwarz problem"};
  app.require_subcommand(1);
  app.fallthrough();

  std::string config_path;
  std::string input;
  std::optional<std::string> grid;
  std::optional<std::string> out_dir;
  std::optional<std::string> kind;
  std::optional<int> degree;
  std::optional<int> radial_depth;
  std::optional<int> order;
  std::vector<std::string> tolerances;

  app.add_option("--config", config_path, "JSON file with grid, degree, radial_depth, tolerances, ...")
      ->check(CLI::ExistingFile);
  app.add_option("--grid", grid, "output grid NRxNT (default 32x64)");
  app.add_option("--degree", degree, "truncation degree N (default 16)");
  app.add_option("--radial-depth", radial_depth, "radial depth J (default 16)");
  app.add_option("--tol", tolerances, "tolerance override name=value (repeatable)");
  app.add_option("--out", out_dir, "output directory (default .)");

  struct Sub {
    const char* name;
    const char* help;
    const char* input_help;
  };
  const Sub subs[] = {
      {"solve", "solve a Schwarz problem", "problem file"},
      {"verify", "re-check a solution file", "solution file"},
      {"transform", "apply the Teodorescu or Schwarz-Pompeiu operator to a polynomial", "polynomial file"},
      {"poisson", "Poisson extension of boundary data", "boundary data file"},
      {"decompose", "split sampled values into poly-analytic parts", "grid CSV (r,theta,re,im)"},
  };
  for (const Sub& s : subs) {
    CLI::App* sub = app.add_subcommand(s.name, s.help);
    sub->add_option("input", input, s.input_help)->required()->check(CLI::ExistingFile);
    if (std::string_view(s.name) == "transform") {
      sub->add_option("--kind", kind, "teodorescu | schwarz_pompeiu")
          ->check(CLI::IsMember({"teodorescu", "schwarz_pompeiu"}));
    }
    if (std::string_view(s.name) == "decompose") sub->add_option("--order", order, "number of parts n");
  }

  CLI11_PARSE(app, argc, argv);

  cli::RunConfig cfg;
  try {
    if (!config_path.empty()) cli::load_config(config_path, cfg);
    if (grid) std::tie(cfg.grid_radii, cfg.grid_angles) = cli::parse_grid(*grid);
    if (out_dir) cfg.out_dir = *out_dir;
    if (kind) cfg.kind = *kind;
    if (degree) cfg.degree = *degree;
    if (radial_depth) cfg.radial_depth = *radial_depth;
    if (order) cfg.order = *order;
    for (const auto& t : tolerances) {
      auto [name, value] = cli::parse_tolerance(t);
      cfg.tolerances.insert_or_assign(name, value);
    }
    cfg.input = input;
    cfg.command = cli::command_from_string(app.get_subcommands().front()->get_name());
  } catch (const Error& e) {
    std::cerr << e.what() << '\n';
    return cli::schema;
  }

  const cli::RunResult result = cli::run(cfg);
  (result.exit_code == cli::ok ? std::cout : std::cerr) << result.message << '\n';
  return result.exit_code;
}
