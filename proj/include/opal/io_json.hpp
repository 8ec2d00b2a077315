#pragma once

#include <string>

#include "json.hpp"
#include "opal/dga.hpp"
#include "opal/multicomplex.hpp"

namespace opal {

using Json = nlohmann::ordered_json;

// Version stamp carried by every JSON payload this library reads or writes.
inline constexpr int kSchemaVersion = 1;

// Whole-file helpers; failures throw opal::error naming the path.
std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& content);

// Deterministic serialization: two-space indent plus a trailing newline, so
// identical payloads are byte-identical across runs.
std::string dump_json(const Json& j);

// Differential graded algebra from JSON:
//   { "schema_version": 1,
//     "basis": [ {"name": "x", "degree": 2}, ... ],
//     "differential": [ {"from": "a", "to": "c", "coeff": "1"}, ... ],
//     "product": [ {"left": "x", "right": "y", "out": "c", "coeff": "1/2"} ] }
// d(from) += coeff * to; product(left, right) += coeff * out; coefficients are
// rational strings.  Structural problems throw opal::semantic_error.
DgAlgebra parse_dga_json(const std::string& text);

// Bicomplex from JSON:
//   { "schema_version": 1,
//     "basis": [ {"name": "u", "col": 2, "row": 0}, ... ],
//     "d":     [ {"from": ..., "to": ..., "coeff": ...}, ... ],
//     "delta": [ ... ] }
// "d" moves bidegree by (0,-1) and "delta" by (-1,0); both square to zero and
// anticommute (verified; violations throw opal::semantic_error).
Multicomplex parse_bicomplex_json(const std::string& text);

// Payload builders shared by the command-line subcommands.
Json basis_json(const GradedSpace& space);
Json linear_map_json(const LinearMap& f);
Json multimap_json(const MultiMap& f, const GradedSpace& space);

}  // namespace opal
