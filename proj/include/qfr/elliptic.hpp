#pragma once

#include <cstdint>
#include <string>

#include <gmpxx.h>

#include "qfr/arith.hpp"
#include "qfr/bigint.hpp"
#include "qfr/forms.hpp"
#include "qfr/poly.hpp"

namespace qfr {

// y^2 = x^3 + A x + B over F_p.
struct CurveFp {
  Int p, A, B;
};
CurveFp make_curve(const Int& A, const Int& B, const Int& p);
CurveFp parse_curve(const std::string& literal);  // "A,B@p"
Int j_invariant(const CurveFp& c);
CurveFp quadratic_twist(const CurveFp& c);

struct RationalCurve {
  mpq_class A, B;
};
mpq_class j_invariant(const RationalCurve& c);

// y^2 = x^3 + 3k x + 2k with k = j/(1728 - j); j = 0 and 1728 use x^3 + 1, x^3 + x.
RationalCurve curve_from_j(const mpq_class& j);
CurveFp curve_from_j_mod_p(const Int& j, const Int& p);

struct TraceData {
  Int q, N, a;  // N = q + 1 - a
};

// Exhaustive Legendre sums, serial reference and OpenMP kernel.
TraceData count_points_serial(const CurveFp& c);
TraceData count_points_parallel(const CurveFp& c);
// Baby-step giant-step on random points of the curve and its twist.
TraceData count_points_bsgs(const CurveFp& c, std::uint64_t seed = kDefaultSeed);
// Exhaustive below 1e5, BSGS up to 1e12.
TraceData count_points(const CurveFp& c);

// Square root of delta < 0 modulo p from the trace of a CM curve with
// j-invariant j_mod_p (a root of the class polynomial mod p).
Int sqrt_disc_via_curve(const Discriminant& d, const Int& p, const Int& j_mod_p);

// Same over F_{p^2} = F_p[t]/(g), for a root t of a quadratic factor g of the
// class polynomial. serial selects the reference counting loop.
Int sqrt_disc_via_curve_quadratic(const Discriminant& d, const Int& p, const fp::Poly& g, bool serial = false);

// Point count of y^2 = x^3 + A x + B over F_p[t]/(g), A and B given as
// (c0, c1) pairs meaning c0 + c1 t.
struct Fp2 {
  std::uint64_t c0 = 0, c1 = 0;
};
TraceData count_points_fp2(std::uint64_t p, const fp::Poly& g, Fp2 A, Fp2 B, bool serial = false);

// Square root of delta > 0 modulo p = 1 mod 4 via p = x0^2 + y0^2.
Int sqrt_pos_disc(const Discriminant& d, const Int& p);

struct ComplexApprox {
  std::string re, im;  // decimal, `digits` significant digits
  long digits = 0;
  Int nearest;         // real part rounded to the nearest integer
  double residual = 0; // distance of the value from `nearest`
};
ComplexApprox j_from_qexp(const Discriminant& d, const QuadraticForm& f, long digits);

}  // namespace qfr
