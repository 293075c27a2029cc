#include "qfr/arith.hpp"

#include "qfr/error.hpp"

namespace qfr {

PrimePower::PrimePower(Int p, unsigned k) : p_(std::move(p)), k_(k) {
  if (p_ < 3 || !is_probable_prime(p_))
    throw Error(ErrorCode::kInvalidArgument, "prime power base must be an odd prime");
  if (k_ < 1) throw Error(ErrorCode::kInvalidArgument, "prime power exponent must be positive");
}

int jacobi_symbol(const Int& a_in, const Int& n_in) {
  if (n_in < 3 || n_in % 2 == 0)
    throw Error(ErrorCode::kInvalidArgument, "jacobi symbol needs an odd modulus >= 3");
  Int a = mod(a_in, n_in), n = n_in;
  int t = 1;
  while (a != 0) {
    while (a % 2 == 0) {
      a /= 2;
      unsigned long r = mpz_fdiv_ui(n.get_mpz_t(), 8);
      if (r == 3 || r == 5) t = -t;
    }
    std::swap(a, n);
    if (mpz_fdiv_ui(a.get_mpz_t(), 4) == 3 && mpz_fdiv_ui(n.get_mpz_t(), 4) == 3) t = -t;
    a = mod(a, n);
  }
  return n == 1 ? t : 0;
}

int kronecker_prime(const Int& a, const Int& p) {
  if (p == 2) {
    if (a % 2 == 0) return 0;
    unsigned long r = mpz_fdiv_ui(a.get_mpz_t(), 8);
    return (r == 1 || r == 7) ? 1 : -1;
  }
  return jacobi_symbol(a, p);
}

namespace {

Int canonical_even(const Int& r, const Int& p) {
  Int x = mod(r, p);
  return (x % 2 == 0) ? x : Int(p - x);
}

Int tonelli_shanks(const Int& d, const Int& p) {
  if (mpz_fdiv_ui(p.get_mpz_t(), 4) == 3) return pow_mod(d, (p + 1) / 4, p);
  Int q = p - 1;
  unsigned long s = mpz_scan1(q.get_mpz_t(), 0);
  q >>= s;
  Int z = 2;
  while (jacobi_symbol(z, p) != -1) ++z;
  Int c = pow_mod(z, q, p);
  Int r = pow_mod(d, (q + 1) / 2, p);
  Int t = pow_mod(d, q, p);
  unsigned long m = s;
  while (t != 1) {
    unsigned long i = 0;
    Int tt = t;
    while (tt != 1) {
      tt = tt * tt % p;
      ++i;
    }
    Int b = c;
    for (unsigned long j = 0; j + i + 1 < m; ++j) b = b * b % p;
    r = r * b % p;
    c = b * b % p;
    t = t * c % p;
    m = i;
  }
  return r;
}

// Random splitting of x^2 - d: gcd((x + delta)^((p-1)/2) - 1, x^2 - d).
Int cantor_zassenhaus(const Int& d, const Int& p, std::uint64_t seed) {
  gmp_randclass rng(gmp_randinit_default);
  rng.seed(seed);
  const fp::Poly f{mod(-d, p), Int(0), Int(1)};
  const Int e = (p - 1) / 2;
  for (;;) {
    Int delta = rng.get_z_range(p);
    fp::Poly base{delta, Int(1)};
    fp::Poly h = fp::sub(fp::powmod(base, e, f, p), fp::Poly{Int(1)}, p);
    fp::Poly g = fp::gcd(f, h, p);
    if (fp::degree(g) == 1) return mod(-g[0], p);
  }
}

}  // namespace

Int sqrt_mod_prime(const Int& d, const Int& p, SqrtBackend backend, std::uint64_t seed) {
  if (p < 3 || p % 2 == 0) throw Error(ErrorCode::kInvalidArgument, "sqrt_mod_prime needs an odd prime");
  Int dd = mod(d, p);
  if (dd == 0) return 0;
  if (jacobi_symbol(dd, p) != 1)
    throw Error(ErrorCode::kNoRoot, to_string(d) + " is not a square modulo " + to_string(p));
  Int r = backend == SqrtBackend::kTonelliShanks ? tonelli_shanks(dd, p) : cantor_zassenhaus(dd, p, seed);
  if (mod(r * r - dd, p) != 0)
    throw Error(ErrorCode::kInvalidArgument, "modulus is not prime: " + to_string(p));
  return canonical_even(r, p);
}

Int hensel_lift_sqrt(const Int& r, const Int& d, const PrimePower& pk) {
  const Int& p = pk.p();
  if (mod(r * r - d, p) != 0 || mod(r, p) == 0)
    throw Error(ErrorCode::kInvalidArgument, "seed is not a unit square root modulo p");
  Int x = mod(r, p);
  Int modulus = p;
  for (unsigned k = 1; k < pk.k(); ++k) {
    modulus *= p;
    // x <- x - (x^2 - d) / (2x), valid modulo p^(k+1).
    Int inv = inverse_mod(2 * x, modulus);
    x = mod(x - (x * x - d) * inv, modulus);
  }
  return x;
}

}  // namespace qfr
