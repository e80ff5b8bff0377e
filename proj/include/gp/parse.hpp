#ifndef GP_PARSE_HPP
#define GP_PARSE_HPP

// Text formats used by the CLI and the C API:
//   field spec   p=<prime>,m=<degree>[,mod=<c0>,<c1>,...,<cm>]   (low-to-high)
//   form         X^3*Y + Y^3*Z + Z^3*X, coefficients as powers of the
//                generator w of the coefficient field, e.g. w^2*Y^5 or (w+1)*X*Y
//   point        <elem>:<elem>:<elem>
//   curve file   '#' comment lines, then a field spec line, then a form line
//
// Parse errors carry 1-based line/column positions.

#include <array>
#include <string>

#include "gp/poly.hpp"

namespace gp {

struct FieldSpec {
  u64 p = 0;
  u32 m = 0;
  std::vector<u32> modulus;  // empty: deterministic default
};

FieldSpec parse_field_spec(const std::string& text);
// Builds the field. A custom modulus yields the canonical field model:
// elements are transported through the least-root isomorphism so the rest
// of the library sees one model per (p, m).
Field field_from_spec(const FieldSpec& spec);

Form parse_form(const std::string& text, Field k);
Elem parse_element(const std::string& text, Field k);
std::array<Elem, 3> parse_point(const std::string& text, Field k);

struct CurveInput {
  Field field;
  Form form;
};
CurveInput parse_curve_file(const std::string& contents);

}  // namespace gp

#endif
