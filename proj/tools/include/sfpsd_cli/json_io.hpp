#pragma once

// JSON encoding of specs, matrices and verdicts, plus the "a+bi" parser
// used for command-line arguments.

#include <string_view>
#include <vector>

#include "json.hpp"

#include "sfpsd/kernels.hpp"
#include "sfpsd/matrix.hpp"
#include "sfpsd/oracle.hpp"
#include "sfpsd/psdlinalg.hpp"

namespace sfpsd::cli {

using Json = nlohmann::json;

// Accepts "3", "-2.5e-3", "i", "-2i", "1+2i", "1.5e-3-4j". Throws SpecError.
Complex parse_complex(std::string_view text);
// Comma-separated list of complex values; "" and "-" are the empty list.
std::vector<Complex> parse_complex_list(std::string_view text);
double parse_real(std::string_view text);

Json complex_to_json(Complex c);
// A number or a [re, im] pair.
Complex complex_from_json(const Json& j);

Json spec_to_json(const MatrixSpec& spec);
MatrixSpec spec_from_json(const Json& j);

// Rows of [re, im] pairs.
Json matrix_to_json(const HermitianMatrix& m);
// Does not check Hermitian symmetry; the caller decides what to do with it.
HermitianMatrix matrix_from_json(const Json& j);

Json verdict_to_json(const PsdVerdict& v);
Json violations_to_json(const ValidationReport& report);
Json compare_to_json(const CompareReport& c, double tolerance);
Json identity_to_json(const IdentityCheck& c, double tolerance);

}  // namespace sfpsd::cli
