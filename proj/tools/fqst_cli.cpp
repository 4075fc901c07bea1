// fqst: solve, search, check and draw flow-dependent quadratic Steiner trees.

#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "fqst/cli.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Flow-dependent quadratic Steiner trees in the plane"};
  app.require_subcommand(1);
  fqst::cli::Options options;
  long long seed = 0;
  int guard_n = 0;
  app.add_option("--tolerance", options.tolerance, "certificate tolerance, scaled by extent")
      ->check(CLI::PositiveNumber);
  auto* guard_opt = app.add_option("--guard-n", guard_n, "largest n accepted by exact search")
                        ->check(CLI::NonNegativeNumber);
  auto* seed_opt = app.add_option("--seed", seed, "seed recorded in reports");
  app.add_option("--threads", options.threads, "exact search workers (0 = all cores)");

  std::string input;
  std::string svg_path;
  auto* solve = app.add_subcommand("solve-topology", "locally minimal tree for a given topology");
  solve->add_option("file", input, "instance document with topology")->required();
  auto* exact = app.add_subcommand("exact", "globally minimum tree by enumeration");
  exact->add_option("file", input, "instance document")->required();
  auto* check = app.add_subcommand("check", "re-run certificates on a result document");
  check->add_option("file", input, "result document")->required();
  auto* render = app.add_subcommand("render", "draw a result document as SVG");
  render->add_option("file", input, "result document")->required();
  render->add_option("-o,--output", svg_path, "SVG path")->required();
  auto* bounds = app.add_subcommand("bounds", "lower and upper bounds for an instance");
  bounds->add_option("file", input, "instance document")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return fqst::cli::kInputError;
  }
  if (*guard_opt) options.guard_n = guard_n;
  if (*seed_opt) options.seed = seed;

  if (*solve) return fqst::cli::solve_topology(input, options, std::cout, std::cerr);
  if (*exact) return fqst::cli::exact(input, options, std::cout, std::cerr);
  if (*check) return fqst::cli::check(input, options, std::cout, std::cerr);
  if (*render) return fqst::cli::render(input, svg_path, options, std::cout, std::cerr);
  return fqst::cli::bounds(input, options, std::cout, std::cerr);
}
