#pragma once

#include <string>

#include <json.hpp>

#include "sympos/fio.hpp"
#include "sympos/forms.hpp"
#include "sympos/positivity.hpp"
#include "sympos/toeplitz.hpp"

namespace sympos {

using Json = nlohmann::json;

// Canonical serialization: keys sorted, floats printed with 17 significant
// digits so reports round-trip byte-identically.
std::string canonical_dump(const Json& j, int indent = 0);

Json to_json(Complex z);
Json to_json(const CMatrix& m);
Json to_json(const CVector& v);
Json to_json(const RVector& v);
Json to_json(const QuadraticWeight& w);
Json to_json(const PositivityVerdict& v);

Complex parse_complex(const Json& j);
CMatrix parse_cmatrix(const Json& j, int rows = -1, int cols = -1);
QuadraticWeight parse_weight(const Json& j);
ComplexQuadraticSymbolExponent parse_symbol(const Json& j);

}  // namespace sympos
