#include <CLI11.hpp>

#include "repel/commands.hpp"
#include "repel/version.hpp"

namespace {

void add_common(CLI::App* cmd, repel::CommandOptions& options,
                std::optional<std::uint64_t>& seed) {
  cmd->add_option("--config", options.config_path, "run configuration file")->required();
  cmd->add_option("--out", options.out_dir, "output directory");
  cmd->add_option("--seed", seed, "override the config seed");
  cmd->add_flag("--no-deterministic", options.force_nondeterministic,
                "drop the deterministic-mode flag");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"stable repelling point configurations on compact model manifolds"};
  app.set_version_flag("--version", repel::kVersion);
  app.require_subcommand(1);

  repel::CommandOptions options;
  std::optional<std::uint64_t> seed;

  auto* minimize = app.add_subcommand("minimize", "multistart descent to a stable configuration");
  add_common(minimize, options, seed);
  auto* verify = app.add_subcommand("verify-pretrace",
                                    "check the kernel-sum / spectral-sum identity on random configurations");
  add_common(verify, options, seed);
  auto* diagnose = app.add_subcommand("diagnose", "Weyl-sum and mean-energy diagnostics for a points file");
  add_common(diagnose, options, seed);
  diagnose->add_option("--points", options.points_path, "points CSV (as written by minimize)")
      ->required();
  auto* sweep = app.add_subcommand("sweep", "minimize over a list of N and tabulate Weyl decay");
  add_common(sweep, options, seed);
  auto* audit = app.add_subcommand("group-audit", "validate the hyperbolic group construction");
  add_common(audit, options, seed);

  CLI11_PARSE(app, argc, argv);
  options.seed_override = seed;

  if (minimize->parsed()) return repel::cmd_minimize(options);
  if (verify->parsed()) return repel::cmd_verify_pretrace(options);
  if (diagnose->parsed()) return repel::cmd_diagnose(options);
  if (sweep->parsed()) return repel::cmd_sweep(options);
  if (audit->parsed()) return repel::cmd_group_audit(options);
  return 1;
}
