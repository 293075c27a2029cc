#pragma once

#include <cstdint>

#include "qfr/bigint.hpp"
#include "qfr/poly.hpp"

namespace qfr {

inline constexpr std::uint64_t kDefaultSeed = 0x51f15eed;

class PrimePower {
 public:
  PrimePower(Int p, unsigned k);
  const Int& p() const { return p_; }
  unsigned k() const { return k_; }
  Int value() const { return pow(p_, k_); }

 private:
  Int p_;
  unsigned k_;
};

// n odd and >= 3.
int jacobi_symbol(const Int& a, const Int& n);
// Kronecker symbol (a|n) for prime n, including n = 2.
int kronecker_prime(const Int& a, const Int& p);

enum class SqrtBackend { kTonelliShanks, kCantorZassenhaus };

// Square root of d modulo an odd prime p; the even representative in [0, p).
Int sqrt_mod_prime(const Int& d, const Int& p, SqrtBackend backend = SqrtBackend::kTonelliShanks,
                   std::uint64_t seed = kDefaultSeed);

// Lift a root of x^2 = d mod p to a root mod p^k by Newton iteration.
Int hensel_lift_sqrt(const Int& r, const Int& d, const PrimePower& pk);

}  // namespace qfr
