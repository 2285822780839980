#include <iostream>

#include "CLI11.hpp"
#include "sfpsd_cli/commands.hpp"

int main(int argc, char** argv) {
  using sfpsd::cli::RunConfig;
  RunConfig cfg;
  std::string family;
  std::string spec_path;
  std::string report_path;
  double tol = 0.0;

  CLI::App app{"Special-function kernels and PSD verification"};
  app.require_subcommand(1);
  app.set_version_flag("--version", sfpsd::cli::kToolVersion);

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--spec", spec_path, "MatrixSpec JSON file (check also accepts {\"matrix\": rows})");
    sub->add_option("--family", family, "Kernel family name, or 'all' for fuzz");
    sub->add_option("--n", cfg.n, "Matrix dimension (fuzz: 0 draws n from 2..8 per trial)");
    sub->add_option("--trials", cfg.trials, "Fuzz trials per family");
    sub->add_option("--seed", cfg.seed, "Base seed");
    sub->add_option("--tol", tol, "Relative tolerance (PSD verdict, oracle or identity)");
    sub->add_option("--report", report_path, "Write the JSON report here instead of stdout");
    sub->add_option("--eps", cfg.series.rel_eps, "Series relative tolerance");
    sub->add_option("--max-terms", cfg.series.max_terms, "Series term cap");
    sub->add_option("args", cfg.args, "Positional arguments");
  };

  CLI::App* eval = app.add_subcommand("eval", "Evaluate a special function: eval <name> <args...>");
  CLI::App* build = app.add_subcommand("build", "Build the matrix of a spec");
  CLI::App* check = app.add_subcommand("check", "PSD verdict and leading minors of a spec or matrix");
  CLI::App* fuzz = app.add_subcommand("fuzz", "Random specs through build, verdict and oracle");
  CLI::App* oracle = app.add_subcommand("oracle", "oracle MP <lambda> <phi> | AW <q> <alphas> | <FAMILY>");
  for (CLI::App* sub : {eval, build, check, fuzz, oracle}) add_common(sub);
  fuzz->add_flag("!--no-oracle", cfg.oracle, "Skip oracle comparisons");
  fuzz->add_option("--threads", cfg.max_threads, "Worker cap (SFPSD_MAX_THREADS also applies)");
  for (CLI::App* sub : {eval, oracle}) sub->positionals_at_end(false);
  eval->allow_extras(false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : sfpsd::cli::kExitSpecError;
  }

  cfg.command = app.get_subcommands().front()->get_name();
  CLI::App* sub = app.get_subcommands().front();
  if (sub->count("--family")) cfg.family = family;
  if (sub->count("--spec")) cfg.spec_path = spec_path;
  if (sub->count("--report")) cfg.report_path = report_path;
  if (sub->count("--tol")) cfg.tol = tol;
  return sfpsd::cli::run(cfg, std::cout, std::cerr);
}
