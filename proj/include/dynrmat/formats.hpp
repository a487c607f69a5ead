#pragma once

#include <string>

#include <json.hpp>

#include "dynrmat/dyn_tensor.hpp"
#include "dynrmat/dynamical_r.hpp"
#include "dynrmat/lie_algebra.hpp"

namespace dynrmat {

using json = nlohmann::json;

// ---- algebra files ---------------------------------------------------------
// {"dim": n, "labels": [...],
//  "brackets": [{"i":, "j":, "terms": [{"k":, "c": "p/q"}]}],   (i < j, one per pair)
//  "base": [indices], "complement": [indices]}                   (0-based)

json algebra_to_json(const LieAlgebra& alg, const Decomposition& dec);
// Parses and checks: structure validates (antisymmetry + Jacobi) and the
// decomposition is reductive; throws Error/ParseError with diagnostics.
BuiltinAlgebra algebra_from_json(const json& j);

// ---- r-matrix files --------------------------------------------------------
// {"algebra": "<reference>", "terms": [{"i":, "j":, "coeff": "<expr>"}]}  (i < j)

json rmatrix_to_json(const DynamicalR& r, const std::string& algebra_ref);
DynamicalR rmatrix_from_json(const json& j, const Decomposition& dec);

// ---- twist / R-matrix tensor files ----------------------------------------
// {"arity": 2, "truncation": N,
//  "terms": [{"hbar": k, "coeff": "<expr>", "legs": [["e"],["f"]]}]}
// legs are per-slot label words.

json twist_to_json(const DynTensor& t);
DynTensor twist_from_json(const json& j, const QContextPtr& ctx);

// parse with line/column diagnostics on failure
json parse_json(const std::string& text);
std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

// FNV-1a 64-bit content hash, hex-encoded (for report input identification)
std::string fnv1a_hex(const std::string& content);

} // namespace dynrmat
