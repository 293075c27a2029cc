#pragma once

// Shared high-precision evaluation of j at the CM point of a reduced form.

#include "mpfloat.hpp"
#include "qfr/forms.hpp"

namespace qfr::detail {

// j(tau) for tau = (-b + sqrt(delta)) / 2a, computed with `digits` correct
// significant digits plus the caller's guard digits already folded in.
mp::Complex j_of_form(const QuadraticForm& reduced, long digits);

}  // namespace qfr::detail
