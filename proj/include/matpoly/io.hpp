#pragma once

// JSON file formats.
//
//   PolyFile  {"n": 2, "k": 1, "monomials": [{"word": [1, 1], "chain": [M, M, M]}]}
//   PointFile {"n": 2, "Xs": [M, ...]}
//
// A matrix M is n rows of n [re, im] pairs. Words are 1-based in files.
// Reports carry "schema": "matpoly/1". Floating values are written with 17
// significant digits and always with a fraction or exponent, so that parsing
// and re-serializing reproduces the same bytes.

#include <string>

#include <json.hpp>

#include "matpoly/nondegen.hpp"
#include "matpoly/polyalg.hpp"
#include "matpoly/solver.hpp"
#include "matpoly/topdegree.hpp"

namespace matpoly {

using Json = nlohmann::ordered_json;

inline constexpr const char* kSchema = "matpoly/1";

std::string serialize(const Json& value);

Json matrix_to_json(const ComplexMatrix& M);
/// Throws InvalidInput naming `path` on any shape or type violation.
ComplexMatrix matrix_from_json(const Json& value, int n, const std::string& path);

Json poly_to_json(const FreeMatrixPoly& p);
FreeMatrixPoly poly_from_json(const Json& value);
FreeMatrixPoly parse_poly_text(const std::string& text);
FreeMatrixPoly parse_poly_file(const std::string& path);

Json point_to_json(const MatrixTuple& Xs);
MatrixTuple point_from_json(const Json& value);
MatrixTuple parse_point_file(const std::string& path);

Json degree_to_json(const Degree& d);
Json to_json(const DegreeReport& report);
Json to_json(const NondegReport& report);
Json to_json(const SolveReport& report);
Json to_json(const LeadingScreen& screen);

}  // namespace matpoly
