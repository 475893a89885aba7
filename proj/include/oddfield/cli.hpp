#pragma once

// Front end shared by the oddfield executable and its tests: run
// configuration, the constant / fieldmap / verify commands and exit codes.

#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "oddfield/errors.hpp"
#include "oddfield/greens.hpp"
#include "oddfield/worldline.hpp"

namespace oddfield::cli {

enum ExitCode : int {
  kOk = 0,
  kVerifyFailed = 1,
  kConfigError = 2,
  kNumericalError = 3,
  kIoError = 4,
};

/// Output file could not be written.
class IoError : public Error {
 public:
  using Error::Error;
};

struct GridAxis {
  int axis = 1;  // spatial index 1..D-1
  double lo = 0.0;
  double hi = 0.0;
  int count = 1;

  double at(int i) const { return count == 1 ? lo : lo + (hi - lo) * i / (count - 1); }
};

/// "axis=lo:hi:count" with axis given as 1, x1, x, y or z.
GridAxis parse_grid_axis(std::string_view text);

enum class OutputFormat { csv, json };

OutputFormat parse_format(std::string_view text);

struct WorldlineConfig {
  WorldlineKind kind = WorldlineKind::uniform;
  std::vector<double> beta;  // empty: at rest
  std::optional<double> rapidity;  // along axis; excludes beta
  double g = 1.0;
  int axis = 1;
};

WorldlineKind parse_worldline_kind(std::string_view text);

/// Comma-separated reals, e.g. "0.3,0,0".
std::vector<double> parse_real_list(std::string_view text);

struct RunConfig {
  int dim = 5;
  std::optional<double> omega;
  WorldlineConfig worldline;
  double charge = 1.0;
  double lambda_max = QuadratureSpec{}.lambda_max;
  double rel_tol = QuadratureSpec{}.rel_tol;
  std::string out;  // empty: standard output
  OutputFormat format = OutputFormat::csv;
  std::vector<GridAxis> grid;
  double t = 2.0;
  std::string suite = "all";
};

Dimension make_dimension(const RunConfig& cfg);
Worldline make_worldline(const RunConfig& cfg, const Dimension& dim);
QuadratureSpec make_quadrature(const RunConfig& cfg, const Dimension& dim);

/// Shortest decimal that reads back to the same double.
std::string format_real(double v);

/// Number of worker threads: ODDFIELD_THREADS if set and positive, else the hardware count.
unsigned worker_threads();

/// JSON report with n, Omega_D, the finite-part integral, C and the field prefactor.
int cmd_constant(const RunConfig& cfg, std::ostream& out);

/// Field map over the grid at time t, written to cfg.out or to `out`.
int cmd_fieldmap(const RunConfig& cfg, std::ostream& out);

inline constexpr std::string_view kSuites[] = {"geometry", "worldline", "greens", "potentials",
                                               "fields",   "gauge",     "all"};

/// Runs the named invariant suites and prints a JSON pass/fail table. Returns
/// kOk when every check passes and kVerifyFailed otherwise; failing checks are
/// also named on `err`.
int cmd_verify(const RunConfig& cfg, std::ostream& out, std::ostream& err);

/// Parses argv, dispatches the subcommand and maps errors to exit codes.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace oddfield::cli
