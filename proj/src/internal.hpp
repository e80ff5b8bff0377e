#ifndef GP_SRC_INTERNAL_HPP
#define GP_SRC_INTERNAL_HPP

// Cross-module internals of the static library. Not installed.

#include <vector>

#include "gp/gf.hpp"

namespace gp::detail {

// All roots in f of the polynomial with the given coefficients (low-to-high,
// elements of f). Implemented in poly.cpp on top of the generic factoring
// machinery; used by gf.cpp when building embedding data.
std::vector<Elem> roots_in_field(const std::vector<Elem>& coeffs, Field f);

}  // namespace gp::detail

#endif
