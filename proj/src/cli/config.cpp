#include <charconv>
#include <cstdlib>
#include <string>
#include <thread>

#include "oddfield/cli.hpp"

namespace oddfield::cli {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
  return s;
}

double parse_real(std::string_view s, std::string_view what) {
  s = trim(s);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size() || s.empty()) {
    throw ContractError(std::string(what) + ": cannot parse '" + std::string(s) + "' as a number");
  }
  return v;
}

int parse_int(std::string_view s, std::string_view what) {
  s = trim(s);
  int v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size() || s.empty()) {
    throw ContractError(std::string(what) + ": cannot parse '" + std::string(s) + "' as an integer");
  }
  return v;
}

}  // namespace

GridAxis parse_grid_axis(std::string_view text) {
  const auto eq = text.find('=');
  if (eq == std::string_view::npos) throw ContractError("grid: expected axis=lo:hi:count");
  std::string_view name = trim(text.substr(0, eq));
  std::string_view range = text.substr(eq + 1);
  GridAxis g;
  if (name == "x") {
    g.axis = 1;
  } else if (name == "y") {
    g.axis = 2;
  } else if (name == "z") {
    g.axis = 3;
  } else {
    if (!name.empty() && name.front() == 'x') name.remove_prefix(1);
    g.axis = parse_int(name, "grid axis");
  }
  const auto c1 = range.find(':');
  const auto c2 = c1 == std::string_view::npos ? c1 : range.find(':', c1 + 1);
  if (c1 == std::string_view::npos || c2 == std::string_view::npos) {
    throw ContractError("grid: expected axis=lo:hi:count");
  }
  g.lo = parse_real(range.substr(0, c1), "grid lo");
  g.hi = parse_real(range.substr(c1 + 1, c2 - c1 - 1), "grid hi");
  g.count = parse_int(range.substr(c2 + 1), "grid count");
  if (g.count < 1) throw ContractError("grid: count must be >= 1");
  if (g.axis < 1) throw ContractError("grid: axis must be a spatial index >= 1");
  return g;
}

OutputFormat parse_format(std::string_view text) {
  if (text == "csv") return OutputFormat::csv;
  if (text == "json") return OutputFormat::json;
  throw ContractError("format must be csv or json");
}

WorldlineKind parse_worldline_kind(std::string_view text) {
  if (text == "uniform") return WorldlineKind::uniform;
  if (text == "hyperbolic") return WorldlineKind::hyperbolic;
  throw ContractError("worldline must be uniform or hyperbolic");
}

std::vector<double> parse_real_list(std::string_view text) {
  std::vector<double> out;
  while (true) {
    const auto comma = text.find(',');
    out.push_back(parse_real(text.substr(0, comma), "beta"));
    if (comma == std::string_view::npos) break;
    text.remove_prefix(comma + 1);
  }
  return out;
}

Dimension make_dimension(const RunConfig& cfg) {
  Dimension dim(cfg.dim);
  if (cfg.omega) {
    if (!(*cfg.omega > 0.0)) throw ContractError("omega must be > 0");
    dim = dim.with_omega(*cfg.omega);
  }
  return dim;
}

Worldline make_worldline(const RunConfig& cfg, const Dimension& dim) {
  const WorldlineConfig& w = cfg.worldline;
  if (w.axis < 1 || w.axis >= dim.d()) throw ContractError("axis must lie in 1..D-1");
  if (w.kind == WorldlineKind::hyperbolic) {
    if (!(w.g > 0.0)) throw ContractError("hyperbolic worldline: g must be > 0");
    return Worldline::hyperbolic(dim, w.g, w.axis);
  }
  if (w.rapidity) {
    if (!w.beta.empty()) throw ContractError("give either beta or rapidity, not both");
    return Worldline::uniform_from_rapidity(dim, *w.rapidity, w.axis);
  }
  std::vector<double> beta(static_cast<std::size_t>(dim.d() - 1), 0.0);
  if (w.beta.size() > beta.size()) throw ContractError("beta has more components than spatial dimensions");
  std::copy(w.beta.begin(), w.beta.end(), beta.begin());
  return Worldline::uniform_from_beta(beta);
}

QuadratureSpec make_quadrature(const RunConfig& cfg, const Dimension& dim) {
  QuadratureSpec q = QuadratureSpec::for_dimension(dim);
  q.lambda_max = cfg.lambda_max;
  q.rel_tol = cfg.rel_tol;
  q.validate();
  return q;
}

std::string format_real(double v) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  if (ec != std::errc()) throw Error("format_real: conversion failed");
  return {buf, ptr};
}

unsigned worker_threads() {
  unsigned n = std::thread::hardware_concurrency();
  if (n == 0) n = 1;
  if (const char* env = std::getenv("ODDFIELD_THREADS")) {
    const std::string_view s(env);
    unsigned cap = 0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), cap);
    if (ec == std::errc() && ptr == s.data() + s.size() && cap > 0) n = std::min(n, cap);
  }
  return n;
}

}  // namespace oddfield::cli
