#include "io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>

#include "metaschwarz/error.hpp"

namespace metaschwarz::io {

namespace {

[[noreturn]] void schema_error(const std::string& what) { throw Error(Errc::Schema, what); }

const json& field(const json& j, const char* name) {
  if (!j.is_object()) schema_error(std::string("expected an object holding \"") + name + "\"");
  auto it = j.find(name);
  if (it == j.end()) schema_error(std::string("missing field \"") + name + "\"");
  return *it;
}

double number(const json& j, const char* what) {
  if (!j.is_number()) schema_error(std::string(what) + " must be a number");
  return j.get<double>();
}

int integer(const json& j, const char* what) {
  if (!j.is_number_integer()) schema_error(std::string(what) + " must be an integer");
  return j.get<int>();
}

std::vector<cplx> coeff_list(const json& j) {
  if (!j.is_array()) schema_error("\"coeffs\" must be an array of [re, im] pairs");
  std::vector<cplx> out;
  out.reserve(j.size());
  for (const auto& c : j) out.push_back(complex_from_json(c));
  return out;
}

json coeff_list(std::span<const cplx> coeffs) {
  json out = json::array();
  for (const cplx c : coeffs) out.push_back(to_json(c));
  return out;
}

std::string format_number(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

json read_json(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) schema_error("cannot open " + path.string());
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    schema_error(path.string() + ": " + e.what());
  }
}

void write_json(const std::filesystem::path& path, const json& doc) {
  std::ofstream out(path);
  if (!out) throw Error(Errc::InvalidArgument, "cannot write " + path.string());
  out << doc.dump(2) << '\n';
}

json to_json(cplx c) { return json::array({c.real() + 0.0, c.imag() + 0.0}); }

cplx complex_from_json(const json& j) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (!j.is_array() || j.size() != 2) schema_error("complex numbers are written as [re, im]");
  return {number(j[0], "re"), number(j[1], "im")};
}

json to_json(const BivarPoly& p) {
  json terms = json::array();
  for (const auto& [key, c] : p.terms()) {
    terms.push_back({{"m", key.first}, {"k", key.second}, {"re", c.real() + 0.0}, {"im", c.imag() + 0.0}});
  }
  return {{"terms", terms}};
}

BivarPoly bivar_from_json(const json& j) {
  const json& terms = field(j, "terms");
  if (!terms.is_array()) schema_error("\"terms\" must be an array");
  BivarPoly p;
  for (const auto& t : terms) {
    const int m = integer(field(t, "m"), "m");
    const int k = integer(field(t, "k"), "k");
    if (m < 0 || k < 0) schema_error("monomial powers must be non-negative");
    const double im = t.contains("im") ? number(t["im"], "im") : 0.0;
    p.add_term(m, k, {number(field(t, "re"), "re"), im});
  }
  return p;
}

json to_json(const HoloSeries& h) {
  return {{"type", "holo_series"}, {"coeffs", coeff_list(h.coeffs())}, {"min_index", 0}};
}

HoloSeries holo_from_json(const json& j) {
  if (j.contains("type") && j["type"] != "holo_series") schema_error("expected a holo_series");
  if (j.contains("min_index") && integer(j["min_index"], "min_index") != 0) {
    schema_error("a holo_series starts at index 0");
  }
  return HoloSeries(coeff_list(field(j, "coeffs")));
}

json to_json(const BoundaryDistribution& u) {
  return {{"type", "fourier"}, {"coeffs", coeff_list(u.coeffs())}, {"min_index", u.min_index()}};
}

BoundaryDistribution boundary_from_json(const json& j) {
  const std::string type = j.contains("type") ? j["type"].get<std::string>() : "fourier";
  if (type == "holo_series") return holo_from_json(j).boundary_value();
  if (type != "fourier") schema_error("unknown boundary type \"" + type + "\"");
  const int min_index = j.contains("min_index") ? integer(j["min_index"], "min_index") : 0;
  return {min_index, coeff_list(field(j, "coeffs"))};
}

json to_json(const SchwarzSpec& spec) {
  json levels = json::array();
  for (const auto& level : spec.levels) levels.push_back({{"h", to_json(level.h)}, {"c", level.c}});
  return {{"n", spec.n},
          {"A", to_json(spec.A)},
          {"psi_kind", std::string(to_string(spec.psi_kind))},
          {"levels", levels}};
}

SchwarzSpec spec_from_json(const json& j) {
  try {
    SchwarzSpec spec;
    spec.n = integer(field(j, "n"), "n");
    spec.A = j.contains("A") ? bivar_from_json(j["A"]) : BivarPoly{};
    if (j.contains("psi_kind")) {
      if (!j["psi_kind"].is_string()) schema_error("\"psi_kind\" must be a string");
      spec.psi_kind = psi_kind_from_string(j["psi_kind"].get<std::string>());
    }
    const json& levels = field(j, "levels");
    if (!levels.is_array()) schema_error("\"levels\" must be an array");
    for (const auto& level : levels) {
      spec.levels.push_back({holo_from_json(field(level, "h")), number(field(level, "c"), "c")});
    }
    spec.validate();
    return spec;
  } catch (const Error& e) {
    if (e.code() == Errc::Schema) throw;
    schema_error(e.what());
  } catch (const json::exception& e) {
    schema_error(e.what());
  }
}

json to_json(const Report& report) {
  json checks = json::array();
  for (const Check& c : report.checks()) {
    checks.push_back({{"name", c.name},
                      {"value", c.value},
                      {"threshold", c.threshold},
                      {"bound", c.bound == Check::Bound::upper ? "upper" : "lower"},
                      {"passed", c.passed}});
  }
  json timings = json::object();
  for (const auto& [phase, ms] : report.timings()) timings[phase] = ms;
  return {{"passed", report.passed()}, {"checks", checks}, {"timings_ms", timings}};
}

json to_json(const SchwarzSolution& sol, const SchwarzSpec& spec) {
  json doc = to_json(spec);
  json parts = json::array();
  for (const auto& part : sol.w.poly().parts()) parts.push_back(to_json(part));
  doc["parts"] = parts;
  doc["I"] = coeff_list(sol.I);
  json diagnostics = to_json(sol.diagnostics);
  // timings vary run to run; keep the solution file reproducible
  diagnostics.erase("timings_ms");
  doc["diagnostics"] = diagnostics;
  return doc;
}

LoadedSolution solution_from_json(const json& j, const PsiFitOptions& psi_opts) {
  SchwarzSpec spec = spec_from_json(j);
  std::vector<HoloSeries> parts;
  std::vector<cplx> constants;
  try {
    const json& p = field(j, "parts");
    if (!p.is_array()) schema_error("\"parts\" must be an array");
    for (const auto& part : p) parts.push_back(holo_from_json(part));
    constants = coeff_list(field(j, "I"));
  } catch (const json::exception& e) {
    schema_error(e.what());
  }
  if (constants.size() != static_cast<std::size_t>(spec.n)) {
    schema_error("\"I\" must hold n = " + std::to_string(spec.n) + " entries");
  }
  if (parts.size() > static_cast<std::size_t>(spec.n)) {
    schema_error("order of the stored solution exceeds n");
  }
  PolyAnalytic top(std::move(parts));
  std::vector<PolyAnalytic> chain(static_cast<std::size_t>(spec.n));
  PolyAnalytic f = top;
  for (int k = spec.n; k >= 1; --k) {
    chain[static_cast<std::size_t>(k) - 1] = f;
    f = f.dbar();
  }
  MetaExpr w(psi_from_A(spec.A, spec.psi_kind, psi_opts), std::move(top));
  return {std::move(spec), SchwarzSolution{std::move(w), std::move(chain), std::move(constants), {}}};
}

void write_csv(const std::filesystem::path& path, const std::vector<std::string>& header,
               const std::vector<std::vector<double>>& rows) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(Errc::InvalidArgument, "cannot write " + path.string());
  for (std::size_t i = 0; i < header.size(); ++i) out << (i ? "," : "") << header[i];
  out << '\n';
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << format_number(row[i]);
    out << '\n';
  }
}

PolarGrid read_grid_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) schema_error("cannot open " + path.string());
  std::string line;
  if (!std::getline(in, line) || line.rfind("r,theta,re,im", 0) != 0) {
    schema_error(path.string() + ": expected header r,theta,re,im");
  }
  std::vector<double> radii;
  std::vector<std::vector<cplx>> values;
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    std::stringstream ss(line);
    std::string cell;
    double v[4];
    for (double& x : v) {
      if (!std::getline(ss, cell, ',')) schema_error(path.string() + ":" + std::to_string(lineno) + ": short row");
      try {
        x = std::stod(cell);
      } catch (const std::exception&) {
        schema_error(path.string() + ":" + std::to_string(lineno) + ": bad number \"" + cell + "\"");
      }
    }
    if (radii.empty() || radii.back() != v[0]) {
      radii.push_back(v[0]);
      values.emplace_back();
    }
    values.back().emplace_back(v[2], v[3]);
  }
  if (radii.empty()) schema_error(path.string() + ": no samples");
  const std::size_t n_theta = values.front().size();
  for (const auto& row : values) {
    if (row.size() != n_theta) schema_error(path.string() + ": every circle needs the same number of angles");
  }
  try {
    PolarGrid grid(radii, static_cast<int>(n_theta));
    for (std::size_t i = 0; i < radii.size(); ++i) {
      for (std::size_t j = 0; j < n_theta; ++j) grid.value(i, static_cast<int>(j)) = values[i][j];
    }
    return grid;
  } catch (const Error& e) {
    schema_error(path.string() + ": " + e.what());
  }
}

}  // namespace metaschwarz::io
