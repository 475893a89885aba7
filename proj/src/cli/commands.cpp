#include <atomic>
#include <cmath>
#include <fstream>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "oddfield/cli.hpp"
#include "oddfield/fields.hpp"
#include "oddfield/potentials.hpp"

namespace oddfield::cli {

using nlohmann::ordered_json;

int cmd_constant(const RunConfig& cfg, std::ostream& out) {
  const Dimension dim = make_dimension(cfg);
  const int n = dim.n();
  const Estimate fp = fp_sinh_integral(n);
  const Estimate c = coefficient_C(dim);
  double fact = 1.0;
  for (int i = 2; i < n; ++i) fact *= i;
  const PrefactorArbitration pa = arbitrate_field_prefactor(dim);

  ordered_json j;
  j["D"] = dim.d();
  j["n"] = n;
  j["omega"] = dim.omega();
  j["fp_sinh_integral"] = {{"value", fp.value}, {"error", fp.error}};
  j["C"] = {{"value", c.value}, {"error", c.error}, {"closed_form", fact / (2.0 * dim.omega())}};
  j["field_prefactor"] = {{"confirmed", to_string(pa.confirmed)},
                          {"K", prefactor_multiplier(pa.confirmed, n) * c.value},
                          {"measured_K_over_C", pa.measured},
                          {"deviation_2nC", pa.deviation_two_n},
                          {"deviation_2C", pa.deviation_two}};
  out << j.dump(2) << '\n';
  return kOk;
}

namespace {

struct MapRow {
  LorentzVector x;
  bool skipped = false;
  LorentzVector A;
  FieldTensor F;
  double lorenz = 0.0;
  double est_error = 0.0;
};

MapRow evaluate_point(const LorentzVector& x, const Worldline& w, const Dimension& dim, double charge,
                      const QuadratureSpec& spec) {
  MapRow row;
  row.x = x;
  try {
    if (const LorentzVector* b = w.uniform_velocity()) {
      const PotentialSample A = potential_uniform(x, *b, dim, charge);
      auto fn = [&](const LorentzVector& y) { return potential_uniform(y, *b, dim, charge).A; };
      row.A = A.A;
      row.F = field_uniform(x, *b, dim, charge);
      row.lorenz = residuals(x, fn, dim, default_field_step(x, true)).lorenz;
      row.est_error = A.est_error;
    } else {
      const PotentialSample A = potential_generic(x, w, dim, charge, spec);
      auto fn = [&](const LorentzVector& y) { return potential_generic(y, w, dim, charge, spec).A; };
      const double h = default_field_step(x, false);
      row.A = A.A;
      row.F = field_numeric(x, fn, dim, h);
      row.lorenz = residuals(x, fn, dim, h).lorenz;
      row.est_error = A.est_error;
    }
    if (!row.A.is_finite() || !std::isfinite(row.lorenz)) row.skipped = true;
  } catch (const NumericalError&) {
    row.skipped = true;
  }
  return row;
}

std::vector<LorentzVector> grid_points(const RunConfig& cfg, const Dimension& dim) {
  for (const GridAxis& g : cfg.grid) {
    if (g.axis >= dim.d()) throw ContractError("grid: axis must lie in 1..D-1");
  }
  std::vector<LorentzVector> pts;
  std::vector<int> idx(cfg.grid.size(), 0);
  while (true) {
    LorentzVector x(dim.d());
    x[0] = cfg.t;
    for (std::size_t k = 0; k < cfg.grid.size(); ++k) x[cfg.grid[k].axis] = cfg.grid[k].at(idx[k]);
    pts.push_back(x);
    // Odometer with the first axis slowest.
    std::size_t k = cfg.grid.size();
    while (k > 0) {
      --k;
      if (++idx[k] < cfg.grid[k].count) break;
      idx[k] = 0;
      if (k == 0) return pts;
    }
    if (cfg.grid.empty()) return pts;
  }
}

std::vector<std::string> header(const Dimension& dim) {
  std::vector<std::string> h;
  for (int mu = 0; mu < dim.d(); ++mu) h.push_back("x" + std::to_string(mu));
  for (int mu = 0; mu < dim.d(); ++mu) h.push_back("A" + std::to_string(mu));
  for (int mu = 0; mu < dim.d(); ++mu) {
    for (int nu = mu + 1; nu < dim.d(); ++nu) h.push_back("F" + std::to_string(mu) + "_" + std::to_string(nu));
  }
  h.emplace_back("lorenz");
  h.emplace_back("est_error");
  return h;
}

void write_csv(std::ostream& os, const std::vector<MapRow>& rows, const Dimension& dim) {
  const auto h = header(dim);
  for (std::size_t i = 0; i < h.size(); ++i) os << (i ? "," : "") << h[i];
  os << '\n';
  const int nf = FieldTensor::independent_count(dim.d());
  for (const MapRow& r : rows) {
    for (int mu = 0; mu < dim.d(); ++mu) os << (mu ? "," : "") << format_real(r.x[mu]);
    if (r.skipped) {
      for (int i = 0; i < dim.d() + nf; ++i) os << ',';
      os << ",skipped,skipped\n";
      continue;
    }
    for (int mu = 0; mu < dim.d(); ++mu) os << ',' << format_real(r.A[mu]);
    for (double f : r.F.independent()) os << ',' << format_real(f);
    os << ',' << format_real(r.lorenz) << ',' << format_real(r.est_error) << '\n';
  }
}

void write_json(std::ostream& os, const std::vector<MapRow>& rows, const Dimension& dim) {
  ordered_json j;
  j["columns"] = header(dim);
  j["rows"] = ordered_json::array();
  for (const MapRow& r : rows) {
    ordered_json row;
    row["x"] = std::vector<double>(r.x.components().begin(), r.x.components().end());
    row["skipped"] = r.skipped;
    if (!r.skipped) {
      row["A"] = std::vector<double>(r.A.components().begin(), r.A.components().end());
      row["F"] = r.F.independent();
      row["lorenz"] = r.lorenz;
      row["est_error"] = r.est_error;
    }
    j["rows"].push_back(row);
  }
  os << j.dump(2) << '\n';
}

}  // namespace

int cmd_fieldmap(const RunConfig& cfg, std::ostream& out) {
  const Dimension dim = make_dimension(cfg);
  const Worldline w = make_worldline(cfg, dim);
  const QuadratureSpec spec = make_quadrature(cfg, dim);
  const std::vector<LorentzVector> pts = grid_points(cfg, dim);

  std::vector<MapRow> rows(pts.size());
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i = next++; i < pts.size(); i = next++) rows[i] = evaluate_point(pts[i], w, dim, cfg.charge, spec);
  };
  const unsigned nthreads = std::min<unsigned>(worker_threads(), static_cast<unsigned>(pts.size()));
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < nthreads; ++t) pool.emplace_back(work);
  work();
  for (std::thread& t : pool) t.join();

  std::ostringstream buf;
  if (cfg.format == OutputFormat::csv) {
    write_csv(buf, rows, dim);
  } else {
    write_json(buf, rows, dim);
  }
  if (cfg.out.empty()) {
    out << buf.str();
    return kOk;
  }
  std::ofstream file(cfg.out, std::ios::binary | std::ios::trunc);
  if (!file) throw IoError("cannot open output file '" + cfg.out + "'");
  file << buf.str();
  file.close();
  if (!file) throw IoError("failed writing output file '" + cfg.out + "'");
  return kOk;
}

}  // namespace oddfield::cli
