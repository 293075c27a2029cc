#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "qfr/bigint.hpp"
#include "qfr/forms.hpp"
#include "qfr/ideals.hpp"
#include "qfr/poly.hpp"

namespace qfr {

// Delta is a square modulo every prime factor of the odd m.
bool is_representable(const Int& m, const Discriminant& d);

// (p, b, (b^2 - delta)/4p) with b^2 = delta mod 4p; p = 2 needs delta = 1 mod 8.
QuadraticForm trivial_form(const Int& p, const Discriminant& d);

// Reduced form of the class of trivial_form(p) and the image of (1, 0).
Representation represent_prime(const Int& p, const Discriminant& d);

struct FactoredInteger {
  Int m;
  std::vector<PrimeFactor> factors;

  // Checks the product and the primality of each factor.
  static FactoredInteger from_factors(std::vector<PrimeFactor> factors);
  static FactoredInteger factor(const Int& m);
};

// f(x, y) = m from representations of the prime powers of m; nullopt is the
// FAILURE outcome (no composed class matches f).
std::optional<Representation> algorithm_g(const QuadraticForm& f, const FactoredInteger& m);

// a1(x,y) + a2(x,y) omega = conj(pi) (a x + (beta + omega) y)^l / N(pi).
struct DiophantineSystem {
  unsigned ell = 0;
  HomogeneousPoly a1, a2;
  QuadraticForm form;  // the form of the ideal
  QuadInt pi;
  Discriminant disc;
};
DiophantineSystem build_system(const Discriminant& d, const QuadIdeal& I, unsigned l, const PrincipalGenerator& pi);

// (u, v) with N(u + v omega) = +-p^l, normalized within the unit orbit
// (least |v|, then u > 0 and v >= 0).
std::pair<Int, Int> represent_norm_power(const Int& p, unsigned l, const Discriminant& d);

// Units used for the orbit search: all roots of unity for delta < 0, and
// +-eps^k with |k| <= 4 for delta > 0.
std::vector<QuadInt> unit_orbit(const Discriminant& d);

// Integer (x, y) with a1 = u', a2 = v' for (u', v') over the unit and
// conjugation orbit of (u, v), keeping those with |form(x, y)| = |N(u+v omega)|^(1/l).
std::vector<std::pair<Int, Int>> solve_system(const DiophantineSystem& s, const Int& u, const Int& v);

// End to end: ideal of the class, its order l, generator, norm-form solution,
// elimination. target selects the form of the output when given.
Representation represent_alternative(const Int& p, const Discriminant& d,
                                     const std::optional<QuadraticForm>& target = std::nullopt);

}  // namespace qfr
