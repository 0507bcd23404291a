#pragma once

#include <string>
#include <string_view>

#include <json.hpp>

#include "sicq/operators.hpp"
#include "sicq/probability.hpp"
#include "sicq/rational.hpp"
#include "sicq/sicframe.hpp"

namespace sicq::io {

using Json = nlohmann::json;

/// Throws ParseError carrying the byte offset of the first bad character.
Json parse(std::string_view text);
/// Reads and parses a file; the ParseError message names the path.
Json read_file(const std::string& path);

/// Integers as JSON numbers, anything else as a "p/q" string.
Json rational_to_json(const Rational& r);

Json complex_to_json(Complex z);
Json matrix_to_json(const ComplexMatrix& m);
Json vector_to_json(const ComplexVector& v);
ComplexMatrix matrix_from_json(const Json& j, std::size_t dim);
ComplexVector vector_from_json(const Json& j, std::size_t dim);

// {"dim": d, "matrix": [[[re, im], ...], ...]}
Json operator_to_json(const ComplexMatrix& m);
ComplexMatrix operator_from_json(const Json& j);

// {"dim": d, "effects": [matrix, ...]}
Json povm_to_json(const Povm& povm);
Povm povm_from_json(const Json& j, double tol = kDefaultTol);

// {"dim": d, "provenance": {...}, "projectors": [...], "vectors": [...]}. On
// load the projectors win when both are present.
Json frame_to_json(const SicFrame& frame);
SicFrame frame_from_json(const Json& j);

Json mub_to_json(const MubFrame& mub);

// {"n": len, "p": [...]}
Json prob_to_json(const ProbVector& p);
ProbVector prob_from_json(const Json& j, double tol = kDefaultTol);

}  // namespace sicq::io
