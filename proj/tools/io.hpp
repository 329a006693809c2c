#pragma once

#include <filesystem>
#include <nlohmann/json.hpp>

#include "metaschwarz/boundary.hpp"
#include "metaschwarz/disk.hpp"
#include "metaschwarz/report.hpp"
#include "metaschwarz/schwarz.hpp"

namespace metaschwarz::io {

using nlohmann::json;

/// Parse or serialise the file formats. Malformed input raises Error(Schema).
json read_json(const std::filesystem::path& path);
void write_json(const std::filesystem::path& path, const json& doc);

json to_json(cplx c);
cplx complex_from_json(const json& j);

/// {"terms": [{"m": int, "k": int, "re": float, "im": float}]}
json to_json(const BivarPoly& p);
BivarPoly bivar_from_json(const json& j);

/// {"type": "holo_series", "coeffs": [[re, im], ...], "min_index": 0}
json to_json(const HoloSeries& h);
HoloSeries holo_from_json(const json& j);

/// {"type": "fourier" | "holo_series", "coeffs": [[re, im], ...], "min_index": int}
json to_json(const BoundaryDistribution& u);
BoundaryDistribution boundary_from_json(const json& j);

/// {"n": int, "A": BivarPoly, "psi_kind": str, "levels": [{"h": HoloSeries, "c": float}]}
json to_json(const SchwarzSpec& spec);
SchwarzSpec spec_from_json(const json& j);

json to_json(const Report& report);

/// Problem fields plus {"parts": [...], "I": [[re, im], ...], "diagnostics": {...}}.
json to_json(const SchwarzSolution& sol, const SchwarzSpec& spec);

struct LoadedSolution {
  SchwarzSpec spec;
  SchwarzSolution solution;
};

/// Rebuilds psi from A and psi_kind and the chain f_{n-k} = d^k F / dzbar^k
/// from the stored parts of F.
LoadedSolution solution_from_json(const json& j, const PsiFitOptions& psi_opts = {});

/// Header line then one row per node; numbers printed with %.17g.
void write_csv(const std::filesystem::path& path, const std::vector<std::string>& header,
               const std::vector<std::vector<double>>& rows);

/// Reads a "r,theta,re,im" file written on a polar grid back into a PolarGrid.
PolarGrid read_grid_csv(const std::filesystem::path& path);

}  // namespace metaschwarz::io
