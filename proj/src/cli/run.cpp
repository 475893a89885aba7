#include <CLI11.hpp>

#include "oddfield/cli.hpp"

namespace oddfield::cli {

namespace {

void add_common(CLI::App& sub, RunConfig& cfg) {
  sub.add_option("--dim", cfg.dim, "Spacetime dimension D (odd, >= 5)");
  sub.add_option("--omega", cfg.omega, "Override the sphere area Omega");
}

void add_physics(CLI::App& sub, RunConfig& cfg, std::string& kind, std::string& beta) {
  sub.add_option("--worldline", kind, "uniform | hyperbolic");
  sub.add_option("--beta", beta, "Spatial velocity, comma separated");
  sub.add_option("--rapidity", cfg.worldline.rapidity, "Uniform motion rapidity along --axis");
  sub.add_option("--g", cfg.worldline.g, "Proper acceleration of the hyperbolic worldline");
  sub.add_option("--axis", cfg.worldline.axis, "Spatial axis of the motion");
  sub.add_option("--charge", cfg.charge, "Charge e");
  sub.add_option("--lambda-max", cfg.lambda_max, "Quadrature split point");
  sub.add_option("--rel-tol", cfg.rel_tol, "Quadrature relative tolerance");
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Retarded potentials and fields of point charges in odd dimensions", "oddfield"};
  app.require_subcommand(1);
  RunConfig cfg;
  std::string kind = "uniform";
  std::string beta;
  std::string format = "csv";
  std::vector<std::string> grid;

  CLI::App* constant = app.add_subcommand("constant", "Print the Green-function constant and field prefactor");
  add_common(*constant, cfg);

  CLI::App* fieldmap = app.add_subcommand("fieldmap", "Potentials and fields on a grid at fixed time");
  add_common(*fieldmap, cfg);
  add_physics(*fieldmap, cfg, kind, beta);
  fieldmap->add_option("--grid", grid, "axis=lo:hi:count (repeatable)");
  fieldmap->add_option("--t", cfg.t, "Observation time x^0");
  fieldmap->add_option("--out", cfg.out, "Output path (default stdout)");
  fieldmap->add_option("--format", format, "csv | json");

  CLI::App* verify = app.add_subcommand("verify", "Run the invariant suites");
  add_common(*verify, cfg);
  verify->add_option("--suite", cfg.suite, "geometry | worldline | greens | potentials | fields | gauge | all");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp& e) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kConfigError;
  }

  try {
    cfg.worldline.kind = parse_worldline_kind(kind);
    if (!beta.empty()) cfg.worldline.beta = parse_real_list(beta);
    cfg.format = parse_format(format);
    for (const std::string& g : grid) cfg.grid.push_back(parse_grid_axis(g));
    if (constant->parsed()) return cmd_constant(cfg, out);
    if (fieldmap->parsed()) return cmd_fieldmap(cfg, out);
    return cmd_verify(cfg, out, err);
  } catch (const ContractError& e) {
    err << "error: " << e.what() << '\n';
    return kConfigError;
  } catch (const IoError& e) {
    err << "error: " << e.what() << '\n';
    return kIoError;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kNumericalError;
  }
}

}  // namespace oddfield::cli
