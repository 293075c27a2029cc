#pragma once

// Small helpers over gmpxx that every module leans on.

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace qfr {

using Int = mpz_class;

Int parse_int(std::string_view text);
std::string to_string(const Int& n);

// Floor square root; n must be non-negative.
Int isqrt(const Int& n);
bool is_perfect_square(const Int& n);

// Residue in [0, |m|).
Int mod(const Int& a, const Int& m);
Int floor_div(const Int& a, const Int& b);
Int ceil_div(const Int& a, const Int& b);

Int gcd(const Int& a, const Int& b);
Int lcm(const Int& a, const Int& b);

struct Bezout {
  Int g;  // non-negative
  Int s;
  Int t;  // s*a + t*b == g
};
Bezout ext_gcd(const Int& a, const Int& b);

Int inverse_mod(const Int& a, const Int& m);
Int pow_mod(const Int& base, const Int& exp, const Int& m);
Int pow(const Int& base, unsigned long exp);

bool is_probable_prime(const Int& n);

struct PrimeFactor {
  Int p;
  unsigned k;
};

// Trial division then Pollard rho. Returns factors sorted by p.
// A cofactor that survives `rho_iterations` without splitting raises kIndeterminate.
std::vector<PrimeFactor> factor_integer(const Int& n,
                                        std::uint64_t rho_iterations = 2'000'000);

bool is_squarefree(const Int& n);

inline bool fits_u64(const Int& n) { return n >= 0 && mpz_sizeinbase(n.get_mpz_t(), 2) <= 63; }
std::uint64_t to_u64(const Int& n);
inline Int from_u64(std::uint64_t v) {
  Int r;
  mpz_import(r.get_mpz_t(), 1, -1, sizeof v, 0, 0, &v);
  return r;
}

}  // namespace qfr
