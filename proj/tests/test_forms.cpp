#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "qfr/error.hpp"
#include "qfr/forms.hpp"

using namespace qfr;

namespace {

QuadraticForm F(long a, long b, long c) { return QuadraticForm(a, b, c); }

bool same_class(const QuadraticForm& f, const QuadraticForm& g) { return class_key(f) == class_key(g); }

}  // namespace

TEST_CASE("discriminants") {
  CHECK(discriminant_of(F(1, 0, 1)).delta() == -4);
  CHECK(discriminant_of(F(2, 2, 3)).delta() == -20);
  CHECK(discriminant_of(F(3, 2, -27)).delta() == 328);
  CHECK(discriminant_of(F(3, 2, -27)).d_field() == 82);
  CHECK(Discriminant(-23).d_field() == -23);
  CHECK_THROWS_AS(F(1, 2, 1), Error);     // square discriminant
  CHECK_THROWS_AS(F(2, 2, 2), Error);     // not primitive
  CHECK_THROWS_AS(Discriminant(-18), Error);
  CHECK_THROWS_AS(Discriminant(-72), Error);  // D = -18 not square-free
  CHECK(QuadraticForm::parse(" 3, -2,-27") == F(3, -2, -27));
  CHECK_THROWS_AS(QuadraticForm::parse("1,2"), Error);
}

TEST_CASE("is_reduced examples") {
  CHECK(is_reduced(F(1, 0, 1)));
  CHECK(is_reduced(F(2, 1, 3)));
  CHECK(is_reduced(F(3, 14, -11)));
  CHECK_FALSE(is_reduced(F(3, 10, 9)));
  CHECK_FALSE(is_reduced(F(3, 2, -27)));
}

TEST_CASE("reduce_form examples") {
  Reduction r = reduce_form(F(3, 10, 9));
  CHECK(r.form == F(1, 0, 2));
  CHECK(r.map.det() == 1);
  CHECK(transform(F(3, 10, 9), r.map) == r.form);

  Reduction id = reduce_form(F(1, 0, 1));
  CHECK(id.form == F(1, 0, 1));
  CHECK(id.map == UnimodularMap::identity());

  Reduction ind = reduce_form(F(3, 2, -27));
  CHECK(ind.form == F(3, 14, -11));
  CHECK(ind.map == UnimodularMap{1, 2, 0, 1});
}

TEST_CASE("evaluate examples") {
  CHECK(evaluate(F(2, 0, -41), 65, 3) == 8081);
  CHECK(evaluate(F(1, 0, 5), 3, 2) == 29);
  CHECK(evaluate(F(3, 2, -27), 0, 0) == 0);
}

TEST_CASE("reduction on random forms keeps the discriminant and the transport") {
  std::mt19937_64 rng(2024);
  std::uniform_int_distribution<long> coef(-10000, 10000);
  int done = 0;
  while (done < 1000) {
    long a = coef(rng), b = coef(rng), c = coef(rng);
    long long delta = static_cast<long long>(b) * b - 4LL * a * c;
    if (a == 0 || c == 0 || oracle::gcd(oracle::gcd(a, b), c) != 1) continue;
    if (delta >= 0) {
      long long s = static_cast<long long>(std::sqrt(static_cast<long double>(delta)));
      bool square = false;
      for (long long t = s - 1; t <= s + 1; ++t) square |= t >= 0 && t * t == delta;
      if (square) continue;
    } else if (a < 0) {
      a = -a;
      b = -b;
      c = -c;
    }
    QuadraticForm f(a, b, c);
    Reduction r = reduce_form(f);
    CHECK(r.form.delta() == f.delta());
    CHECK(r.map.det() == 1);
    CHECK(transform(f, r.map) == r.form);
    CHECK(is_reduced(r.form));
    if (delta < 0) {
      auto [ra, rb, rc] = oracle::reduce_definite(a, b, c);
      CHECK(r.form == F(ra, rb, rc));
    }
    ++done;
  }
}

TEST_CASE("composition examples") {
  CHECK(same_class(compose(F(1, 0, 5), F(2, 2, 3)).form, F(2, 2, 3)));
  CHECK(same_class(compose(F(2, 2, 3), F(2, 2, 3)).form, F(1, 0, 5)));
  CHECK(reduce_form(compose(F(2, 1, 3), F(2, 1, 3)).form).form == F(2, -1, 3));
  CHECK_THROWS_AS(compose(F(1, 0, 5), F(2, 1, 3)), Error);
}

TEST_CASE("the bilinear map multiplies values for random pairs") {
  std::mt19937_64 rng(99);
  std::uniform_int_distribution<long> small(-30, 30);
  const std::vector<long> deltas{-20, -23, -47, -71, -84, 328, 5, 12, 60, 145};
  int done = 0;
  while (done < 200) {
    Int delta = deltas[done % deltas.size()];
    std::vector<QuadraticForm> classes = enumerate_classes(Discriminant(delta));
    // Random members of random classes.
    auto random_member = [&](const QuadraticForm& f) {
      UnimodularMap m{1, small(rng), 0, 1};
      UnimodularMap n{1, 0, small(rng), 1};
      return transform(f, m * n);
    };
    QuadraticForm f1 = random_member(classes[rng() % classes.size()]);
    QuadraticForm f2 = random_member(classes[rng() % classes.size()]);
    Composition c = compose(f1, f2);
    CHECK(c.form.delta() == delta);
    for (int k = 0; k < 5; ++k) {
      Int x1 = small(rng), y1 = small(rng), x2 = small(rng), y2 = small(rng);
      Int prods[4] = {x1 * x2, x1 * y2, y1 * x2, y1 * y2};
      Int X = 0, Y = 0;
      for (int i = 0; i < 4; ++i) {
        X += c.bilinear[0][i] * prods[i];
        Y += c.bilinear[1][i] * prods[i];
      }
      CHECK(f1(x1, y1) * f2(x2, y2) == c.form(X, Y));
    }
    ++done;
  }
}

TEST_CASE("class group laws") {
  for (long delta : {-20L, -23L, -47L, -71L, 328L}) {
    Discriminant d(delta);
    std::vector<QuadraticForm> cls = enumerate_classes(d);
    QuadraticForm one = QuadraticForm::principal(delta);
    for (const auto& f : cls) {
      CHECK(same_class(compose(one, f).form, f));
      CHECK(same_class(compose(f, f.inverse()).form, one));
      for (const auto& g : cls)
        for (const auto& h : cls) {
          QuadraticForm left = compose_reduced(compose_reduced(f, g), h);
          QuadraticForm right = compose_reduced(f, compose_reduced(g, h));
          CHECK(same_class(left, right));
        }
    }
  }
}

TEST_CASE("class enumeration") {
  CHECK(enumerate_classes(Discriminant(-4)) == std::vector<QuadraticForm>{F(1, 0, 1)});
  CHECK(enumerate_classes(Discriminant(-23)) == std::vector<QuadraticForm>{F(1, 1, 6), F(2, 1, 3), F(2, -1, 3)});
  CHECK(enumerate_classes(Discriminant(-20)) == std::vector<QuadraticForm>{F(1, 0, 5), F(2, 2, 3)});
  CHECK(class_number(Discriminant(328)) == 4);
  CHECK(enumerate_classes(Discriminant(328)).front() == class_key(F(1, 0, -82)));

  for (long delta = -3; delta >= -1500; --delta) {
    if (mod(Int(delta), 4) > 1) continue;
    Int D = mod(Int(delta), 4) == 0 ? Int(delta / 4) : Int(delta);
    if (!is_squarefree(abs(D)) || (mod(Int(delta), 4) == 0 && mod(D, 4) == 1)) continue;
    Discriminant d(delta);
    auto got = enumerate_classes(d);
    auto want = oracle::reduced_forms(delta);
    REQUIRE(got.size() == want.size());
    for (const auto& f : got) {
      CHECK(f.b() * f.b() * 3 <= -delta);
      auto t = std::make_tuple(f.a().get_si(), f.b().get_si(), f.c().get_si());
      CHECK(std::find(want.begin(), want.end(), t) != want.end());
    }
  }
}

TEST_CASE("equivalence maps") {
  auto e = equivalence_map(F(3, 10, 9), F(1, 0, 2));
  REQUIRE(e);
  CHECK(e->proper);
  CHECK(transform(F(3, 10, 9), e->map) == F(1, 0, 2));
  auto id = equivalence_map(F(1, 0, 1), F(1, 0, 1));
  REQUIRE(id);
  CHECK(id->map == UnimodularMap::identity());
  CHECK_FALSE(equivalence_map(F(1, 0, 5), F(2, 2, 3)));

  // Improper only: (2,1,3) and (2,-1,3).
  auto imp = equivalence_map(F(2, 1, 3), F(2, -1, 3));
  REQUIRE(imp);
  CHECK_FALSE(imp->proper);
  CHECK(transform(F(2, 1, 3), imp->map) == F(2, -1, 3));
  CHECK_FALSE(proper_equivalence(F(2, 1, 3), F(2, -1, 3)));

  // Indefinite: across the cycle.
  auto ind = equivalence_map(F(3, 2, -27), F(3, 16, -6));
  REQUIRE(ind);
  CHECK(transform(F(3, 2, -27), ind->map) == F(3, 16, -6));
  CHECK_FALSE(equivalence_map(F(1, 0, -82), F(3, 2, -27)));
}
