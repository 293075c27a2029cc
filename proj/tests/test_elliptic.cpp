#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <array>

#include "oracles.hpp"
#include "qfr/arith.hpp"
#include "qfr/elliptic.hpp"
#include "qfr/error.hpp"
#include "qfr/hilbert.hpp"

using namespace qfr;
using oracle::i64;

namespace {

// Brute-force arithmetic in F_p[t]/(t^2 + g1 t + g0).
struct SmallFp2 {
  i64 p, g0, g1;
  using E = std::array<i64, 2>;
  E mul(E a, E b) const {
    i64 c0 = a[0] * b[0], c1 = a[0] * b[1] + a[1] * b[0], c2 = a[1] * b[1];
    return {oracle::md(c0 - c2 * g0, p), oracle::md(c1 - c2 * g1, p)};
  }
  E add(E a, E b) const { return {(a[0] + b[0]) % p, (a[1] + b[1]) % p}; }
  i64 count(E A, E B) const {
    // Number of y with y^2 = v, tabulated over all p^2 elements.
    std::vector<int> sq(p * p, 0);
    for (i64 y0 = 0; y0 < p; ++y0)
      for (i64 y1 = 0; y1 < p; ++y1) {
        E s = mul({y0, y1}, {y0, y1});
        ++sq[s[0] * p + s[1]];
      }
    i64 n = 1;
    for (i64 x0 = 0; x0 < p; ++x0)
      for (i64 x1 = 0; x1 < p; ++x1) {
        E x{x0, x1};
        E v = add(add(mul(mul(x, x), x), mul(A, x)), B);
        n += sq[v[0] * p + v[1]];
      }
    return n;
  }
};

std::vector<Int> split_primes(const Discriminant& d, std::size_t count, long start = 5) {
  std::vector<Int> out;
  for (long p = start; out.size() < count; ++p)
    if (oracle::is_prime(p) && oracle::legendre(oracle::md(d.delta().get_si(), p), p) == 1) out.push_back(p);
  return out;
}

}  // namespace

TEST_CASE("point counts: examples") {
  TraceData a = count_points_serial(make_curve(-1, 0, 13));
  CHECK(a.N == 8);
  CHECK(a.a == 6);
  TraceData b = count_points_serial(make_curve(0, 1, 7));
  CHECK(b.N == 12);
  CHECK(b.a == -4);
  CHECK(count_points_serial(make_curve(1, 0, 3)).N == 4);
  CHECK(parse_curve("-1,0@13").p == 13);
  CHECK_THROWS_AS(parse_curve("1,2"), Error);
  CHECK_THROWS_AS(make_curve(0, 0, 13), Error);
}

TEST_CASE("serial, parallel and BSGS agree with the oracle") {
  for (i64 p : oracle::primes_below(500)) {
    if (p < 5) continue;
    for (i64 A : {1LL, 2LL, p - 3}) {
      for (i64 B : {1LL, 5LL}) {
        if (oracle::md(4 * A * A * A + 27 * B * B, p) == 0) continue;
        CurveFp c = make_curve(static_cast<long>(A), static_cast<long>(B), static_cast<long>(p));
        const long want = static_cast<long>(oracle::count_points(A, B, p));
        CHECK(count_points_serial(c).N == want);
        CHECK(count_points_parallel(c).N == want);
      }
    }
  }
  for (i64 p : {1009LL, 2003LL, 7919LL, 100003LL}) {
    CurveFp c = make_curve(3, 7, static_cast<long>(p));
    CHECK(count_points_bsgs(c).N == count_points_serial(c).N);
  }
}

TEST_CASE("twist negates the trace") {
  for (i64 p : oracle::primes_below(500)) {
    if (p < 5) continue;
    if (oracle::md(4 * 8 + 27 * 9, p) == 0) continue;
    CurveFp c = make_curve(2, 3, static_cast<long>(p));
    CHECK(count_points_serial(quadratic_twist(c)).a == -count_points_serial(c).a);
  }
}

TEST_CASE("Hasse bound") {
  for (i64 p : oracle::primes_below(2004)) {
    if (p < 5) continue;
    if (oracle::md(4 + 27, p) == 0) continue;
    CurveFp c = make_curve(1, 1, static_cast<long>(p));
    TraceData t = count_points_parallel(c);
    CHECK(Int(t.a * t.a) <= 4 * static_cast<long>(p));
  }
}

TEST_CASE("large prime by BSGS") {
  TraceData t = count_points(make_curve(2, 3, Int("1000000007")));
  CHECK(t.a * t.a <= 4 * Int("1000000007"));
  CHECK(t.N == Int("1000000007") + 1 - t.a);
}

TEST_CASE("curves from j") {
  for (long j : {0L, 1728L, 8000L, -3375L, 54000L}) {
    RationalCurve c = curve_from_j(j);
    CHECK(j_invariant(c) == j);
  }
  RationalCurve c0 = curve_from_j(0);
  CHECK(c0.A == 0);
  CHECK(c0.B == 1);
  RationalCurve c1728 = curve_from_j(1728);
  CHECK(c1728.A == 1);
  CHECK(c1728.B == 0);
  for (long p : {5L, 7L, 11L, 101L}) CHECK(j_invariant(curve_from_j_mod_p(8000, p)) == mod(Int(8000), p));
}

TEST_CASE("square roots through CM curves: examples") {
  CHECK(sqrt_disc_via_curve(Discriminant(-4), 13, 1728) == 3);
  CHECK(sqrt_disc_via_curve(Discriminant(-3), 7, 0) == 2);
  CHECK_THROWS_AS(sqrt_disc_via_curve(Discriminant(-4), 7, 1728), Error);
  // 328 = 4 * 82 and sqrt(82) = +-13 mod 29.
  Int r328 = sqrt_pos_disc(Discriminant(328), 29);
  CHECK((r328 == 26 || r328 == 3));
  Int r5 = sqrt_pos_disc(Discriminant(5), 29);
  CHECK((r5 == 11 || r5 == 18));
  CHECK_THROWS_AS(sqrt_pos_disc(Discriminant(328), 7), Error);
}

TEST_CASE("square roots through CM curves agree with the oracle") {
  // Only primes with a root of the class polynomial qualify.
  for (long delta : {-3L, -4L, -7L, -8L, -11L, -19L, -43L, -67L, -163L, -20L, -23L, -24L, -31L}) {
    Discriminant d(delta);
    IntPolynomial h = class_polynomial(d);
    int checked = 0;
    for (const Int& p : split_primes(d, 600)) {
      std::vector<Int> roots = roots_mod_p(h, p);
      if (roots.empty()) continue;
      Int r = sqrt_disc_via_curve(d, p, roots.front());
      CHECK(mod(r * r - delta, p) == 0);
      const auto roots_p = oracle::sqrt_all(oracle::md(delta, p.get_si()), p.get_si());
      CHECK(std::find(roots_p.begin(), roots_p.end(), r.get_si()) != roots_p.end());
      CHECK(2 * r < p);
      if (++checked == 30) break;
    }
    CHECK(checked == 30);
  }
}

TEST_CASE("square roots for positive discriminants") {
  for (long delta : {5L, 8L, 12L, 13L, 328L, 60L}) {
    Discriminant d(delta);
    int checked = 0;
    for (long p = 5; checked < 15; ++p) {
      if (!oracle::is_prime(p) || p % 4 != 1 || oracle::legendre(delta % p, p) != 1) continue;
      Int r = sqrt_pos_disc(d, p);
      CHECK(mod(r * r - delta, p) == 0);
      ++checked;
    }
  }
}

TEST_CASE("F_{p^2} counts agree with the oracle") {
  // t^2 + t + 1 is irreducible for p = 2 mod 3; t^2 + 1 for p = 3 mod 4.
  for (i64 p : {5LL, 11LL, 17LL, 23LL}) {
    SmallFp2 F{p, 1, 1};
    fp::Poly g{1, 1, 1};
    for (auto [A, B] : {std::pair<Fp2, Fp2>{{1, 0}, {1, 0}}, {{2, 3}, {0, 1}}, {{0, 1}, {4, 4}}}) {
      const i64 want = F.count({static_cast<i64>(A.c0), static_cast<i64>(A.c1)},
                               {static_cast<i64>(B.c0), static_cast<i64>(B.c1)});
      if (want == 1) continue;
      CHECK(count_points_fp2(p, g, A, B, true).N == static_cast<long>(want));
      CHECK(count_points_fp2(p, g, A, B, false).N == static_cast<long>(want));
    }
  }
}

TEST_CASE("square roots over the quadratic extension") {
  // Primes represented only by the non-principal class of delta = -20: the
  // class polynomial stays irreducible mod p.
  Discriminant d(-20);
  IntPolynomial h = class_polynomial(d);
  int checked = 0;
  for (long p : {7L, 23L, 43L, 47L, 67L, 83L, 103L, 107L}) {
    auto pattern = factor_degree_pattern_mod_p(h, p);
    REQUIRE(pattern == std::vector<unsigned>{2});
    fp::Poly g = fp::reduce(h, p);
    Int r1 = sqrt_disc_via_curve_quadratic(d, p, g, true);
    Int r2 = sqrt_disc_via_curve_quadratic(d, p, g, false);
    CHECK(mod(r1 * r1 + 20, p) == 0);
    CHECK(r1 == r2);
    ++checked;
  }
  CHECK(checked == 8);
}

TEST_CASE("j from the q-expansion") {
  const HilbertTable& table = default_table();
  int seen = 0;
  for (const auto& rec : table.records()) {
    if (!rec.j) continue;
    Discriminant d(rec.delta);
    ComplexApprox z = j_from_qexp(d, QuadraticForm::principal(rec.delta), 30);
    CHECK_MESSAGE(z.nearest == *rec.j, "delta=" << rec.delta);
    CHECK(z.residual < 1e-6);
    ++seen;
  }
  CHECK(seen == 9);
  ComplexApprox z163 = j_from_qexp(Discriminant(-163), QuadraticForm(1, 1, 41), 40);
  CHECK(z163.nearest == -pow(Int(640320), 3));
}
