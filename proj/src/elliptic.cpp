#include "qfr/elliptic.hpp"

#include <omp.h>

#include <algorithm>
#include <cmath>
#include <set>
#include <unordered_map>
#include <vector>

#include "mpfloat.hpp"
#include "qfr/error.hpp"
#include "qfr/hilbert.hpp"
#include "jfunc.hpp"

namespace qfr {

namespace {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

constexpr u64 kExhaustiveLimit = 100'000;
constexpr u64 kExhaustiveMax = 10'000'000;
constexpr u64 kBsgsMax = 1'000'000'000'000ULL;

u64 mulmod(u64 a, u64 b, u64 p) { return static_cast<u64>(static_cast<u128>(a) * b % p); }
u64 addmod(u64 a, u64 b, u64 p) { return (a + b) % p; }
u64 submod(u64 a, u64 b, u64 p) { return (a + p - b) % p; }

u64 powmod(u64 b, u64 e, u64 p) {
  u64 r = 1 % p;
  b %= p;
  while (e) {
    if (e & 1) r = mulmod(r, b, p);
    b = mulmod(b, b, p);
    e >>= 1;
  }
  return r;
}

u64 invmod(u64 a, u64 p) { return powmod(a, p - 2, p); }

// Short Weierstrass form needs p >= 3; the j-invariant maps need p >= 5.
void check_prime(const Int& p, long least = 5) {
  if (p < least || !is_probable_prime(p))
    throw Error(ErrorCode::kInvalidArgument, "curve needs a prime p >= " + std::to_string(least));
}

// chi[v] = Legendre symbol (v | p).
std::vector<signed char> legendre_table(u64 p, bool parallel) {
  std::vector<signed char> chi(p, -1);
  chi[0] = 0;
  const long long half = static_cast<long long>((p - 1) / 2);
  if (parallel) {
#pragma omp parallel for schedule(static)
    for (long long y = 1; y <= half; ++y) chi[mulmod(y, y, p)] = 1;
  } else {
    for (long long y = 1; y <= half; ++y) chi[mulmod(y, y, p)] = 1;
  }
  return chi;
}

TraceData finish(const Int& q, const Int& N) {
  TraceData t{q, N, q + 1 - N};
  if (t.a * t.a > 4 * q) throw Error(ErrorCode::kInconsistent, "Hasse bound violated");
  return t;
}

struct Pt {
  u64 x = 0, y = 0;
  bool inf = true;
};

struct Ops {
  u64 p, A, B;

  Pt neg(const Pt& P) const { return P.inf ? P : Pt{P.x, (p - P.y) % p, false}; }

  Pt add(const Pt& P, const Pt& Q) const {
    if (P.inf) return Q;
    if (Q.inf) return P;
    u64 lam;
    if (P.x == Q.x) {
      if ((P.y + Q.y) % p == 0) return {};
      u64 num = addmod(mulmod(3, mulmod(P.x, P.x, p), p), A, p);
      lam = mulmod(num, invmod(mulmod(2, P.y, p), p), p);
    } else {
      lam = mulmod(submod(Q.y, P.y, p), invmod(submod(Q.x, P.x, p), p), p);
    }
    u64 x3 = submod(submod(mulmod(lam, lam, p), P.x, p), Q.x, p);
    u64 y3 = submod(mulmod(lam, submod(P.x, x3, p), p), P.y, p);
    return {x3, y3, false};
  }

  Pt mul(u64 k, Pt P) const {
    Pt R;
    while (k) {
      if (k & 1) R = add(R, P);
      P = add(P, P);
      k >>= 1;
    }
    return R;
  }

  u64 rhs(u64 x) const { return addmod(addmod(mulmod(mulmod(x, x, p), x, p), mulmod(A, x, p), p), B, p); }
};

Pt random_point(const Ops& E, gmp_randclass& rng) {
  const Int P = from_u64(E.p);
  for (;;) {
    u64 x = to_u64(Int(rng.get_z_range(P)));
    u64 v = E.rhs(x);
    if (v == 0) return {x, 0, false};
    if (jacobi_symbol(from_u64(v), P) != 1) continue;
    u64 y = to_u64(sqrt_mod_prime(from_u64(v), P));
    return {x, y, false};
  }
}

// All k in [lo, hi] with kP = O.
std::set<u64> annihilators(const Ops& E, const Pt& P, u64 lo, u64 hi) {
  const u64 width = hi - lo + 1;
  const u64 m = static_cast<u64>(std::ceil(std::sqrt(static_cast<double>(width)))) + 1;
  std::unordered_multimap<u64, std::pair<u64, u64>> baby;  // x -> (j, y)
  std::vector<u64> zero_js;
  Pt J = P;
  for (u64 j = 1; j < m; ++j) {
    if (J.inf)
      zero_js.push_back(j);
    else
      baby.emplace(J.x, std::make_pair(j, J.y));
    J = E.add(J, P);
  }
  std::set<u64> out;
  const Pt G = E.mul(m, P);
  Pt R = E.mul(lo, P);
  for (u64 k0 = lo; k0 <= hi; k0 += m) {
    if (R.inf) {
      out.insert(k0);
      for (u64 j : zero_js)
        if (k0 + j <= hi) out.insert(k0 + j);
    } else {
      auto [b, e] = baby.equal_range(R.x);
      for (auto it = b; it != e; ++it) {
        const auto [j, y] = it->second;
        if ((y + R.y) % E.p == 0 && k0 + j <= hi) out.insert(k0 + j);
      }
    }
    R = E.add(R, G);
  }
  return out;
}

}  // namespace

CurveFp make_curve(const Int& A, const Int& B, const Int& p) {
  check_prime(p, 3);
  CurveFp c{p, mod(A, p), mod(B, p)};
  if (mod(4 * c.A * c.A * c.A + 27 * c.B * c.B, p) == 0)
    throw Error(ErrorCode::kInvalidArgument, "singular curve");
  return c;
}

CurveFp parse_curve(const std::string& literal) {
  auto at = literal.find('@');
  auto comma = literal.find(',');
  if (at == std::string::npos || comma == std::string::npos || comma > at)
    throw Error(ErrorCode::kParse, "curve literal must be A,B@p");
  return make_curve(parse_int(literal.substr(0, comma)), parse_int(literal.substr(comma + 1, at - comma - 1)),
                    parse_int(literal.substr(at + 1)));
}

Int j_invariant(const CurveFp& c) {
  Int a3 = 4 * c.A * c.A * c.A;
  Int den = mod(a3 + 27 * c.B * c.B, c.p);
  return mod(1728 * a3 * inverse_mod(den, c.p), c.p);
}

CurveFp quadratic_twist(const CurveFp& c) {
  Int n = 2;
  while (jacobi_symbol(n, c.p) != -1) ++n;
  return make_curve(c.A * n * n, c.B * n * n * n, c.p);
}

mpq_class j_invariant(const RationalCurve& c) {
  mpq_class a3 = 4 * c.A * c.A * c.A;
  mpq_class den = a3 + 27 * c.B * c.B;
  if (den == 0) throw Error(ErrorCode::kInvalidArgument, "singular curve");
  mpq_class j = 1728 * a3 / den;
  j.canonicalize();
  return j;
}

RationalCurve curve_from_j(const mpq_class& j) {
  if (j == 0) return {0, 1};
  if (j == 1728) return {1, 0};
  mpq_class k = j / (1728 - j);
  k.canonicalize();
  mpq_class A = 3 * k, B = 2 * k;
  A.canonicalize();
  B.canonicalize();
  return {A, B};
}

CurveFp curve_from_j_mod_p(const Int& j_in, const Int& p) {
  check_prime(p);
  Int j = mod(j_in, p);
  if (j == 0) return make_curve(0, 1, p);
  if (j == mod(Int(1728), p)) return make_curve(1, 0, p);
  Int k = mod(j * inverse_mod(1728 - j, p), p);
  return make_curve(3 * k, 2 * k, p);
}

TraceData count_points_serial(const CurveFp& c) {
  if (!fits_u64(c.p) || c.p > kExhaustiveMax) throw Error(ErrorCode::kUnsupported, "p too large for exhaustive counting");
  const u64 p = to_u64(c.p);
  const Ops E{p, to_u64(c.A), to_u64(c.B)};
  const auto chi = legendre_table(p, false);
  long long sum = 0;
  for (u64 x = 0; x < p; ++x) sum += chi[E.rhs(x)];
  return finish(c.p, c.p + 1 + static_cast<long>(sum));
}

TraceData count_points_parallel(const CurveFp& c) {
  if (!fits_u64(c.p) || c.p > kExhaustiveMax) throw Error(ErrorCode::kUnsupported, "p too large for exhaustive counting");
  const u64 p = to_u64(c.p);
  const Ops E{p, to_u64(c.A), to_u64(c.B)};
  const auto chi = legendre_table(p, true);
  long long sum = 0;
  const long long n = static_cast<long long>(p);
#pragma omp parallel for reduction(+ : sum) schedule(static)
  for (long long x = 0; x < n; ++x) sum += chi[E.rhs(static_cast<u64>(x))];
  return finish(c.p, c.p + 1 + static_cast<long>(sum));
}

TraceData count_points_bsgs(const CurveFp& c, std::uint64_t seed) {
  if (!fits_u64(c.p) || c.p > kBsgsMax) throw Error(ErrorCode::kUnsupported, "p too large for BSGS counting");
  const u64 p = to_u64(c.p);
  const u64 s = to_u64(isqrt(Int(4 * c.p)));
  const u64 lo = p + 1 - s, hi = p + 1 + s;
  const Ops E{p, to_u64(c.A), to_u64(c.B)};
  const CurveFp tw = quadratic_twist(c);
  const Ops T{p, to_u64(tw.A), to_u64(tw.B)};
  gmp_randclass rng(gmp_randinit_default);
  rng.seed(seed);

  std::set<u64> cand;
  bool first = true;
  for (int round = 0; round < 64; ++round) {
    std::set<u64> on_e = annihilators(E, random_point(E, rng), lo, hi);
    // Twist order is 2p + 2 - N.
    std::set<u64> on_t;
    for (u64 k : annihilators(T, random_point(T, rng), lo, hi)) on_t.insert(2 * p + 2 - k);
    std::set<u64> both;
    for (u64 k : on_e)
      if (on_t.count(k) && (first || cand.count(k))) both.insert(k);
    cand = std::move(both);
    first = false;
    if (cand.size() == 1) return finish(c.p, from_u64(*cand.begin()));
    if (cand.empty()) throw Error(ErrorCode::kInconsistent, "BSGS found no admissible group order");
  }
  throw Error(ErrorCode::kIndeterminate, "BSGS did not isolate the group order");
}

TraceData count_points(const CurveFp& c) {
  if (c.p < kExhaustiveLimit) return count_points_parallel(c);
  return count_points_bsgs(c);
}

namespace {

Int root_from_trace(const Discriminant& d, const Int& q, const Int& a, const Int& p, bool* ok) {
  *ok = false;
  Int num = 4 * q - a * a;
  Int ad = abs(d.delta());
  if (num <= 0 || !mpz_divisible_p(num.get_mpz_t(), ad.get_mpz_t())) return 0;
  Int b2 = num / ad;
  if (!is_perfect_square(b2)) return 0;
  Int b = isqrt(b2);
  if (mod(b, p) == 0) return 0;
  Int r = mod(a * inverse_mod(b, p), p);
  if (mod(r * r - d.delta(), p) != 0) return 0;
  *ok = true;
  return std::min(r, Int(p - r));
}

}  // namespace

Int sqrt_disc_via_curve(const Discriminant& d, const Int& p, const Int& j_mod_p) {
  if (!d.is_negative()) throw Error(ErrorCode::kInvalidArgument, "sqrt_disc_via_curve needs delta < 0");
  check_prime(p);
  if (jacobi_symbol(d.delta(), p) != 1)
    throw Error(ErrorCode::kNotRepresentable, "delta is not a nonzero square modulo p");
  Int j = mod(j_mod_p, p);
  std::vector<CurveFp> curves;
  if (j == 0 || j == mod(Int(1728), p)) {
    // Extra automorphisms: try the sextic or quartic twists.
    for (long c = 1; c <= 200; ++c)
      if (mod(Int(c), p) != 0) curves.push_back(j == 0 ? make_curve(0, c, p) : make_curve(c, 0, p));
  } else {
    curves.push_back(curve_from_j_mod_p(j, p));
  }
  for (const auto& E : curves) {
    if (mod(4 * E.A * E.A * E.A + 27 * E.B * E.B, p) == 0) continue;
    TraceData t = count_points(E);
    bool ok = false;
    Int r = root_from_trace(d, p, t.a, p, &ok);
    if (ok) return r;
    if (curves.size() == 1) break;
  }
  throw Error(ErrorCode::kInconsistent, "no twist has trace compatible with the discriminant");
}

namespace {

struct Fp2Ops {
  u64 p, g0, g1;  // t^2 = -g1 t - g0

  Fp2 add(Fp2 a, Fp2 b) const { return {addmod(a.c0, b.c0, p), addmod(a.c1, b.c1, p)}; }
  Fp2 sub(Fp2 a, Fp2 b) const { return {submod(a.c0, b.c0, p), submod(a.c1, b.c1, p)}; }
  Fp2 mul(Fp2 a, Fp2 b) const {
    u64 hh = mulmod(a.c1, b.c1, p);
    u64 c0 = submod(mulmod(a.c0, b.c0, p), mulmod(hh, g0, p), p);
    u64 c1 = submod(addmod(mulmod(a.c0, b.c1, p), mulmod(a.c1, b.c0, p), p), mulmod(hh, g1, p), p);
    return {c0, c1};
  }
  u64 norm(Fp2 a) const {
    // (c0 + c1 t)(c0 + c1 t') with t + t' = -g1, t t' = g0.
    u64 v = submod(mulmod(a.c0, a.c0, p), mulmod(mulmod(g1, a.c0, p), a.c1, p), p);
    return addmod(v, mulmod(g0, mulmod(a.c1, a.c1, p), p), p);
  }
  Fp2 inv(Fp2 a) const {
    u64 n = invmod(norm(a), p);
    Fp2 conj{submod(a.c0, mulmod(g1, a.c1, p), p), (p - a.c1) % p};
    return {mulmod(conj.c0, n, p), mulmod(conj.c1, n, p)};
  }
};

}  // namespace

TraceData count_points_fp2(std::uint64_t p, const fp::Poly& g, Fp2 A, Fp2 B, bool serial) {
  if (g.size() != 3 || g[2] != 1) throw Error(ErrorCode::kInvalidArgument, "need a monic quadratic modulus");
  if (p > 5000) throw Error(ErrorCode::kUnsupported, "F_{p^2} counting is exhaustive; p too large");
  const Fp2Ops F{p, to_u64(g[0]), to_u64(g[1])};
  const auto chi = legendre_table(p, !serial);
  const long long n = static_cast<long long>(p);
  long long sum = 0;
  auto row = [&](long long u0) {
    long long s = 0;
    for (u64 u1 = 0; u1 < p; ++u1) {
      Fp2 x{static_cast<u64>(u0), u1};
      Fp2 v = F.add(F.add(F.mul(F.mul(x, x), x), F.mul(A, x)), B);
      s += chi[F.norm(v)];
    }
    return s;
  };
  if (serial) {
    for (long long u0 = 0; u0 < n; ++u0) sum += row(u0);
  } else {
#pragma omp parallel for reduction(+ : sum) schedule(static)
    for (long long u0 = 0; u0 < n; ++u0) sum += row(u0);
  }
  Int q = from_u64(p) * from_u64(p);
  return finish(q, q + 1 + static_cast<long>(sum));
}

Int sqrt_disc_via_curve_quadratic(const Discriminant& d, const Int& p, const fp::Poly& g, bool serial) {
  if (!d.is_negative()) throw Error(ErrorCode::kInvalidArgument, "sqrt_disc_via_curve needs delta < 0");
  check_prime(p);
  if (jacobi_symbol(d.delta(), p) != 1)
    throw Error(ErrorCode::kNotRepresentable, "delta is not a nonzero square modulo p");
  const u64 pp = to_u64(p);
  fp::Poly gm = fp::make_monic(g, p);
  if (gm.size() != 3) throw Error(ErrorCode::kInvalidArgument, "need a quadratic factor");
  const Fp2Ops F{pp, to_u64(gm[0]), to_u64(gm[1])};
  const Fp2 t{0, 1};
  const Fp2 j1728{1728 % pp, 0};
  Fp2 k = F.mul(t, F.inv(F.sub(j1728, t)));
  Fp2 A = F.mul({3, 0}, k), B = F.mul({2, 0}, k);
  TraceData td = count_points_fp2(pp, gm, A, B, serial);
  bool ok = false;
  Int r = root_from_trace(d, td.q, td.a, p, &ok);
  if (!ok) throw Error(ErrorCode::kInconsistent, "quadratic-extension trace incompatible with the discriminant");
  return r;
}

Int sqrt_pos_disc(const Discriminant& d, const Int& p) {
  if (d.is_negative()) throw Error(ErrorCode::kInvalidArgument, "sqrt_pos_disc needs delta > 0");
  check_prime(p);
  if (mod(p, 4) != 1) throw Error(ErrorCode::kUnsupported, "sqrt_pos_disc needs p = 1 mod 4");
  if (jacobi_symbol(d.delta(), p) != 1) throw Error(ErrorCode::kNoRoot, "delta is not a square modulo p");

  // p = x0^2 + y0^2 from the trace of y^2 = x^3 - x.
  TraceData t = count_points(make_curve(-1, 0, p));
  Int x0 = t.a / 2;
  Int y0 = isqrt((4 * p - t.a * t.a) / 4);
  if (x0 * x0 + y0 * y0 != p) throw Error(ErrorCode::kInconsistent, "trace of x^3 - x does not split p");
  Int i = mod(x0 * inverse_mod(y0, p), p);

  // sqrt(-delta) through the CM route for the negative discriminant.
  Int neg = -d.delta();
  Int scale = 1;
  if (mod(neg, 4) != 0 && mod(neg, 4) != 1) {
    neg *= 4;
    scale = 2;
  }
  Discriminant dn(neg);
  Int s;
  bool have = false;
  if (abs(neg) <= 4000) {
    IntPolynomial h = compute_class_poly(dn);
    std::vector<Int> roots = roots_mod_p(h, p);
    if (!roots.empty()) {
      s = sqrt_disc_via_curve(dn, p, roots.front());
      have = true;
    }
  }
  if (!have) s = sqrt_mod_prime(neg, p);
  Int r = mod(i * s * inverse_mod(scale, p), p);
  if (mod(r * r - d.delta(), p) != 0) throw Error(ErrorCode::kInconsistent, "sqrt_pos_disc failed its check");
  return std::min(r, Int(p - r));
}

namespace detail {

mp::Complex j_of_form(const QuadraticForm& f, long digits) {
  const mpfr_prec_t prec = mp::bits_for_digits(digits);

  // tau = (-b + i sqrt|delta|) / (2a)
  mp::Real two_a = mp::from_int(prec, 2 * f.a());
  mp::Real x = mp::from_int(prec, -f.b()) / two_a;
  mp::Real y = mp::sqrt(mp::from_int(prec, -f.delta())) / two_a;
  mp::Complex q = mp::nome(x, y);

  const double log_q = 2 * M_PI * y.to_double();  // -ln|q|
  // j is about 1/q, so the tail must also be scaled by |1/q|.
  const long terms = static_cast<long>(std::ceil((digits * std::log(10.0) + log_q) / log_q)) + 4;

  // sigma_3 by sieve.
  std::vector<Int> sigma3(terms + 1, Int(0));
  for (long dd = 1; dd <= terms; ++dd) {
    Int c = Int(dd) * dd * dd;
    for (long m = dd; m <= terms; m += dd) sigma3[m] += c;
  }

  mp::Complex one{mp::Real(prec, 1), mp::Real(prec)};
  mp::Complex qn = one, e4 = one;
  std::vector<mp::Complex> qpow;
  qpow.reserve(terms + 1);
  qpow.push_back(one);
  for (long n = 1; n <= terms; ++n) {
    qn = qn * q;
    qpow.push_back(qn);
    e4 = e4 + qn * mp::from_int(prec, 240 * sigma3[n]);
  }
  // Euler product via the pentagonal series.
  mp::Complex eta = one;
  for (long k = 1;; ++k) {
    long e1 = k * (3 * k - 1) / 2, e2 = k * (3 * k + 1) / 2;
    if (e1 > terms) break;
    mp::Complex part = qpow[e1];
    if (e2 <= terms) part = part + qpow[e2];
    eta = (k % 2) ? eta - part : eta + part;
  }
  mp::Complex eta2 = eta * eta, eta4 = eta2 * eta2, eta8 = eta4 * eta4, eta16 = eta8 * eta8;
  mp::Complex disc = q * (eta16 * eta8);
  return (e4 * e4 * e4) / disc;
}

}  // namespace detail

ComplexApprox j_from_qexp(const Discriminant& d, const QuadraticForm& f_in, long digits) {
  if (digits < 16) throw Error(ErrorCode::kInvalidArgument, "j_from_qexp needs at least 16 digits");
  if (!d.is_negative() || f_in.delta() != d.delta())
    throw Error(ErrorCode::kInvalidArgument, "j_from_qexp needs a form of the given negative discriminant");
  const QuadraticForm f = reduce_form(f_in).form;
  const long guard = 12;
  // Enough precision for the integer part plus `digits` more.
  const long int_digits = static_cast<long>(M_PI * std::sqrt(std::abs(d.delta().get_d())) / f.a().get_d() / std::log(10.0)) + 1;
  mp::Complex j = detail::j_of_form(f, digits + guard + int_digits);
  const mpfr_prec_t prec = j.re.prec();

  ComplexApprox out;
  out.digits = digits;
  out.re = j.re.to_string(digits);
  out.im = j.im.to_string(digits);
  out.nearest = j.re.round_to_int();
  mp::Real dr = j.re - mp::from_int(prec, out.nearest);
  out.residual = std::hypot(dr.to_double(), j.im.to_double());
  return out;
}

}  // namespace qfr
