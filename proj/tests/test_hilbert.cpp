#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <map>
#include <set>

#include "oracles.hpp"
#include "qfr/contfrac.hpp"
#include "qfr/error.hpp"
#include "qfr/hilbert.hpp"

using namespace qfr;
using i64 = long;

namespace {

IntPolynomial poly(std::initializer_list<const char*> ascending) {
  std::vector<Int> c;
  for (const char* s : ascending) c.emplace_back(s);
  return IntPolynomial(c);
}

// p = a x^2 + b x y + c y^2 with |y| <= box, solving for x.
bool represented(i64 a, i64 b, i64 c, i64 p, i64 box = 1000) {
  for (i64 y = -box; y <= box; ++y) {
    __int128 disc = static_cast<__int128>(b * y) * (b * y) - static_cast<__int128>(4 * a) * (c * y * y - p);
    if (disc < 0) continue;
    i64 s = static_cast<i64>(std::sqrt(static_cast<long double>(disc)));
    while (static_cast<__int128>(s) * s > disc) --s;
    while (static_cast<__int128>(s + 1) * (s + 1) <= disc) ++s;
    if (static_cast<__int128>(s) * s != disc) continue;
    for (i64 num : {-b * y + s, -b * y - s})
      if (num % (2 * a) == 0) {
        i64 x = num / (2 * a);
        if (a * x * x + b * x * y + c * y * y == p) return true;
      }
  }
  return false;
}

}  // namespace

TEST_CASE("table lookup") {
  const auto& r5 = lookup_table(Discriminant(-20));
  CHECK(r5.h == 2);
  CHECK(r5.poly == poly({"-681472000", "-1264000", "1"}));
  const auto& r23 = lookup_table(Discriminant(-23));
  CHECK(r23.h == 3);
  CHECK(r23.poly == poly({"12771880859375", "-5151296875", "3491750", "1"}));
  const auto& r82 = lookup_table(Discriminant(328));
  CHECK(r82.h == 4);
  REQUIRE(r82.poly_over_k.size() == 5);
  CHECK(r82.poly_over_k[0] == std::pair<Int, Int>(672644, 71760));
  CHECK(r82.poly_over_k[2] == std::pair<Int, Int>(-1676, -120));
  CHECK(r82.poly_over_k[4] == std::pair<Int, Int>(1, 0));
  CHECK(r82.poly == poly({"30191147536", "0", "-842465888", "0", "2973464", "0", "-3352", "0", "1"}));
  CHECK_THROWS_AS(lookup_table(Discriminant(-71)), Error);
  try {
    lookup_table(Discriminant(-71));
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kNotInTable);
  }
}

TEST_CASE("records are internally consistent") {
  for (const auto& rec : default_table().records()) {
    const long deg = rec.delta < 0 ? static_cast<long>(rec.h) : 2 * static_cast<long>(rec.h);
    CHECK(rec.poly.degree() == deg);
    CHECK(rec.poly.leading() == 1);
    // Tables omit the inverse of a listed class, so compare up to inversion.
    std::set<QuadraticForm> listed, all;
    for (const auto& f : rec.forms) {
      CHECK(f.delta() == rec.delta);
      listed.insert(class_key(f));
      listed.insert(class_key(f.inverse()));
    }
    for (const auto& f : enumerate_classes(Discriminant(rec.delta))) all.insert(class_key(f));
    CHECK(listed == all);
    if (rec.delta < 0) CHECK(class_number(Discriminant(rec.delta)) == rec.h);
  }
  CHECK(default_table().records().size() == 44);
}

TEST_CASE("computed class polynomials") {
  CHECK(compute_class_poly(Discriminant(-4)) == poly({"-1728", "1"}));
  CHECK(compute_class_poly(Discriminant(-20)) == poly({"-681472000", "-1264000", "1"}));
  CHECK(compute_class_poly(Discriminant(-15)) == poly({"-121287375", "191025", "1"}));
  int n = 0;
  for (const auto& rec : default_table().records()) {
    if (rec.delta > 0) continue;
    CHECK_MESSAGE(compute_class_poly(Discriminant(rec.delta)) == rec.poly, "delta=" << rec.delta);
    ++n;
  }
  CHECK(n == 43);
  CHECK(compute_class_poly(Discriminant(-23), 0, false) == compute_class_poly(Discriminant(-23), 0, true));
  IntPolynomial h71 = compute_class_poly(Discriminant(-71));
  CHECK(h71.degree() == 7);
  CHECK(class_polynomial(Discriminant(-71)) == h71);
  CHECK_THROWS_AS(compute_class_poly(Discriminant(328)), Error);
}

TEST_CASE("split test: examples") {
  const IntPolynomial& h23 = lookup_table(Discriminant(-23)).poly;
  SplitResult s59 = hilbert_split_test(h23, 59);
  CHECK(s59.fully_splits);
  CHECK(s59.pattern == std::vector<unsigned>{1, 1, 1});
  SplitResult s13 = hilbert_split_test(h23, 13);
  CHECK_FALSE(s13.fully_splits);
  CHECK(s13.pattern == std::vector<unsigned>{3});
  for (long p : {5L, 7L, 101L}) CHECK(hilbert_split_test(poly({"-1728", "1"}), p).fully_splits);
  // j = 0 is a root mod every p, which x^(p-1) - 1 would miss.
  CHECK(hilbert_split_test(poly({"0", "1"}), 7).fully_splits);
  // x^2 mod p is not squarefree.
  CHECK(hilbert_split_test(poly({"0", "0", "1"}), 7).ramified);
}

TEST_CASE("full splitting matches principal representation") {
  for (const auto& rec : default_table().records()) {
    if (rec.delta > 0) continue;
    const i64 delta = rec.delta.get_si();
    const QuadraticForm q0 = QuadraticForm::principal(rec.delta);
    int checked = 0;
    for (i64 p = 3; checked < 25; p += 2) {
      if (!oracle::is_prime(p) || delta % p == 0 || oracle::legendre(oracle::md(delta, p), p) != 1) continue;
      SplitResult s = hilbert_split_test(rec.poly, p);
      if (s.ramified) continue;
      const bool principal = represented(q0.a().get_si(), q0.b().get_si(), q0.c().get_si(), p);
      CHECK_MESSAGE(s.fully_splits == principal, "delta=" << delta << " p=" << p);
      ++checked;
    }
  }
}

TEST_CASE("classification for D = 82") {
  const Discriminant d(328);
  const std::set<long> P1{73, 103, 113, 223, 359, 401, 449};
  const std::set<long> P2{23, 31, 127, 241, 271, 337, 353};
  const std::set<long> P34{3, 11, 19, 29, 53, 67, 101, 109, 149, 157};
  std::set<long> got1, got2, got34;
  for (i64 p : oracle::primes_below(450)) {
    if (p == 2 || p == 41 || oracle::legendre(oracle::md(328, p), p) != 1) continue;
    ClassLabel c = classify_prime(p, d);
    switch (c.kind) {
      case ClassLabel::Kind::kPrincipal: got1.insert(p); break;
      case ClassLabel::Kind::kSelfReciprocalNonPrincipal: if (p <= 353) got2.insert(p); break;
      case ClassLabel::Kind::kReciprocalPair:
        CHECK(signature_string(c.signature) == "--");
        if (p <= 157) got34.insert(p);
        break;
      default: FAIL("unexpected label " << c.to_string());
    }
  }
  CHECK(got1 == P1);
  CHECK(got2 == P2);
  // 13 = 3*4^2 + 2*4*(-1) - 27 also lies in the (-,-) genus; no form of the
  // principal genus represents +-13 (brute force over |x|, |y| <= 200).
  std::set<long> want34 = P34;
  want34.insert(13);
  CHECK(got34 == want34);
  CHECK(oracle::find_rep(3, 2, -27, 13, 10).has_value());
  CHECK_FALSE(oracle::find_rep(1, 0, -82, 13, 200).has_value());
  CHECK_FALSE(oracle::find_rep(1, 0, -82, -13, 200).has_value());
  CHECK_FALSE(oracle::find_rep(2, 0, -41, 13, 200).has_value());
  CHECK_FALSE(oracle::find_rep(2, 0, -41, -13, 200).has_value());
  CHECK(classify_prime(73, d).to_string() == "principal");
  CHECK(classify_prime(23, d).to_string() == "self-reciprocal-non-principal");
  CHECK(classify_prime(3, d).to_string() == "reciprocal-pair(--)");
  CHECK_THROWS_AS(classify_prime(7, d), Error);  // (328|7) = -1
}

TEST_CASE("classification of imaginary discriminants") {
  // h = 2: the two classes sit in different genera.
  CHECK(classify_prime(29, Discriminant(-20)).kind == ClassLabel::Kind::kPrincipal);
  ClassLabel l7 = classify_prime(7, Discriminant(-20));
  CHECK(l7.kind == ClassLabel::Kind::kGenusOnly);
  CHECK(signature_string(l7.signature) == "--");
  // h = 3: the two non-principal classes are inverse to each other.
  CHECK(classify_prime(59, Discriminant(-23)).kind == ClassLabel::Kind::kPrincipal);
  CHECK(classify_prime(13, Discriminant(-23)).kind == ClassLabel::Kind::kReciprocalPair);
  // h = 5 is outside the supported class numbers.
  try {
    classify_prime(3, Discriminant(-47));
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kUnsupported);
  }
}

TEST_CASE("principality through the class polynomial") {
  CHECK(is_principal_via_hilbert(QuadraticForm(1, 0, -82)) == std::optional<bool>(true));
  CHECK(is_principal_via_hilbert(QuadraticForm(2, 0, -41)) == std::optional<bool>(false));
  CHECK(is_principal_via_hilbert(QuadraticForm(3, 14, -11)) == std::optional<bool>(false));
  CHECK(is_principal_cf(QuadraticForm(3, 14, -11)) == false);
  // A principal form off the reduced representative: (-1, 18, 1) ~ (1, 18, -1).
  CHECK(is_principal_via_hilbert(QuadraticForm(1, 18, -1)) == std::optional<bool>(true));
}

TEST_CASE("degree patterns for cyclic class number four") {
  for (long delta : {328L, -56L}) {
    const IntPolynomial h = class_polynomial(Discriminant(delta));
    std::set<std::vector<unsigned>> seen;
    for (i64 p : oracle::primes_below(3000)) {
      if (p < 5 || delta % p == 0 || oracle::legendre(oracle::md(delta, p), p) != 1) continue;
      SplitResult s = hilbert_split_test(h, p);
      if (s.ramified) continue;
      std::vector<unsigned> want = s.pattern;
      if (delta > 0) {
        // H_K has degree 8 over Q: each pattern shows up twice.
        std::vector<unsigned> half;
        for (std::size_t i = 0; i < want.size(); i += 2) half.push_back(want[i]);
        want = half;
      }
      seen.insert(want);
    }
    const std::set<std::vector<unsigned>> allowed{{1, 1, 1, 1}, {2, 2}, {4}};
    CHECK(seen == allowed);
  }
}
