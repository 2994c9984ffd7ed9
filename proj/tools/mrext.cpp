#include <iostream>

#include <CLI11.hpp>

#include "mrext/commands.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Exact tensor geometry of deformed Riemannian extensions on cotangent bundles"};
  app.require_subcommand(1);

  std::string spec_path;
  mrext::CommandOptions opts;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("spec", spec_path, "manifold spec file (JSON)")->required();
    sub->add_option("--format", opts.format, "text|json")->default_val("text");
    sub->add_option("--out", opts.out_path, "write machine-readable output to this file");
  };

  CLI::App* tensor = app.add_subcommand("tensor", "print a computed object");
  add_common(tensor);
  tensor->add_option("--object", opts.object,
                     "curvature|ricci|scalar|weyl|projective|connection|metric-connection")
      ->required();
  tensor->add_option("--frame", opts.frame, "adapted|induced")->default_val("adapted");

  CLI::App* check = app.add_subcommand("check", "oracle equivalence and invariant suite");
  add_common(check);

  CLI::App* conditions = app.add_subcommand("conditions", "flatness/symmetry condition checkers");
  add_common(conditions);

  CLI::App* kahler = app.add_subcommand("kahler", "Kaehler-Norden verdict for the bundle");
  add_common(kahler);

  CLI::App* geodesic = app.add_subcommand("geodesic", "integrate the geodesic system to CSV");
  add_common(geodesic);
  geodesic->add_option("--x0", opts.x0, "initial base position")->delimiter(',');
  geodesic->add_option("--v0", opts.v0, "initial base velocity")->delimiter(',');
  geodesic->add_option("--p0", opts.p0, "initial fiber position")->delimiter(',');
  geodesic->add_option("--q0", opts.q0, "initial covariant fiber velocity")->delimiter(',');
  geodesic->add_option("--step", opts.step, "step size")->default_val(1e-3);
  geodesic->add_option("--steps", opts.steps, "step count")->default_val(1000);

  CLI::App* report = app.add_subcommand("report", "run every checker and emit a summary");
  add_common(report);
  report->add_option("--seed", opts.seed, "seed recorded in the report run");

  CLI11_PARSE(app, argc, argv);

  const std::string command = app.get_subcommands().front()->get_name();
  return mrext::run_command(command, spec_path, opts, std::cout, std::cerr);
}
