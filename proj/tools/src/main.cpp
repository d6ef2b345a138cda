#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "commands.hpp"

int main(int argc, char** argv) {
  CLI::App app{"worldline: Hamiltonian spectra, VQE, time evolution and vertex scattering from JSON configs"};
  app.require_subcommand(1);

  worldline::cli::Options options;
  std::string out, variant;
  std::uint64_t seed = 0;
  const char* help[] = {
      "sorted eigenvalues of a Hamiltonian",
      "variational ground-state search",
      "exact and Trotterized transition amplitudes",
      "vertex-operator amplitude scan over p2",
      "Wu-Yang radial equation by RK4",
      "monopole construction variants against reference energies",
  };
  std::size_t i = 0;
  for (auto name : worldline::cli::kCommands) {
    auto* sub = app.add_subcommand(std::string(name), help[i++]);
    sub->add_option("--config", options.config_path, "JSON experiment config")->required()->check(CLI::ExistingFile);
    sub->add_option("--out", out, "CSV output path (overrides the config)");
    sub->add_option("--seed", seed, "optimizer seed (overrides the config)");
    sub->add_option("--variant", variant, "Hamiltonian variant, e.g. HermitianPart or ScalarB(1.0)");
    sub->add_flag("--quiet", options.quiet, "suppress summary lines");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : worldline::cli::kConfigError;
  }

  auto* sub = app.get_subcommands().front();
  if (sub->count("--out")) options.out = out;
  if (sub->count("--seed")) options.seed = seed;
  if (sub->count("--variant")) options.variant = variant;
  return worldline::cli::run(sub->get_name(), options, std::cout, std::cerr);
}
