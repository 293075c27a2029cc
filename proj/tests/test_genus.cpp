#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>

#include "oracles.hpp"
#include "qfr/error.hpp"
#include "qfr/genus.hpp"
#include "qfr/hilbert.hpp"

using namespace qfr;

TEST_CASE("character systems") {
  CharacterSystem m5 = character_system(Discriminant(-20));
  CHECK(m5.chi1 == Chi1Rule::kMinusOne);
  CHECK(m5.odd_primes == std::vector<Int>{5});
  CharacterSystem r82 = character_system(Discriminant(328));
  CHECK(r82.chi1 == Chi1Rule::kTwo);
  CHECK(r82.odd_primes == std::vector<Int>{41});
  CharacterSystem m23 = character_system(Discriminant(-23));
  CHECK(m23.chi1 == Chi1Rule::kNone);
  CHECK(m23.odd_primes == std::vector<Int>{23});
  CHECK(character_system(Discriminant(-24)).chi1 == Chi1Rule::kTwo);
  CHECK(character_system(Discriminant(-40)).chi1 == Chi1Rule::kMinusTwo);
}

TEST_CASE("signatures of integers") {
  CHECK(signature_string(signature_of_int(73, Discriminant(328))) == "++");
  CHECK(signature_string(signature_of_int(3, Discriminant(328))) == "--");
  CHECK(signature_string(signature_of_int(29, Discriminant(-20))) == "++");
  CHECK(signature_string(signature_of_int(7, Discriminant(-20))) == "--");
  CHECK_THROWS_AS(signature_of_int(5, Discriminant(-20)), Error);
  CHECK_THROWS_AS(signature_of_int(-3, Discriminant(-20)), Error);
}

TEST_CASE("genus partitions") {
  auto g20 = genus_partition(Discriminant(-20));
  REQUIRE(g20.size() == 2);
  CHECK(signature_string(g20[0].signature) == "++");
  CHECK(g20[0].classes == std::vector<QuadraticForm>{QuadraticForm(1, 0, 5)});
  CHECK(signature_string(g20[1].signature) == "--");
  CHECK(g20[1].classes == std::vector<QuadraticForm>{QuadraticForm(2, 2, 3)});

  auto g328 = genus_partition(Discriminant(328));
  REQUIRE(g328.size() == 2);
  auto keys = [](const Genus& g) {
    std::set<std::string> s;
    for (const auto& f : g.classes) s.insert(class_key(f).to_string());
    return s;
  };
  CHECK(keys(g328[0]) == std::set<std::string>{class_key(QuadraticForm(1, 0, -82)).to_string(),
                                               class_key(QuadraticForm(2, 0, -41)).to_string()});
  CHECK(keys(g328[1]) == std::set<std::string>{class_key(QuadraticForm(3, 2, -27)).to_string(),
                                               class_key(QuadraticForm(3, -2, -27)).to_string()});

  auto g23 = genus_partition(Discriminant(-23));
  REQUIRE(g23.size() == 1);
  CHECK(g23[0].classes.size() == 3);
}

TEST_CASE("equal split over the tabulated discriminants") {
  for (const auto& rec : default_table().records()) {
    Discriminant d(rec.delta);
    auto parts = genus_partition(d);
    CHECK(parts.size() == character_system(d).genus_count());
    for (const auto& g : parts) CHECK(g.classes.size() * parts.size() == rec.h);
  }
}

TEST_CASE("class signatures are well defined") {
  for (long delta : {-20L, -84L, -120L, -420L, 328L, 60L, 145L}) {
    Discriminant d(delta);
    const Int two_d = 2 * d.d_field();
    for (const auto& f : enumerate_classes(d)) {
      GenusSignature s = class_signature(f);
      int seen = 0;
      std::set<Int> values;
      for (long x = -30; x <= 30 && seen < 20; ++x)
        for (long y = 0; y <= 30 && seen < 20; ++y) {
          Int v = f(x, y);
          if (v == 0 || gcd(v, two_d) != 1 || (d.is_negative() && v < 0) || !values.insert(v).second) continue;
          CHECK(signature_of_int(v, d) == s);
          ++seen;
        }
      CHECK(seen == 20);
    }
  }
}

TEST_CASE("represented primes carry their class signature") {
  for (long delta : {-20L, -56L, -84L}) {
    Discriminant d(delta);
    for (const auto& f : enumerate_classes(d)) {
      GenusSignature s = class_signature(f);
      for (long p : oracle::primes_below(2000)) {
        if (gcd(Int(p), 2 * d.d_field()) != 1) continue;
        if (oracle::find_rep(f.a().get_si(), f.b().get_si(), f.c().get_si(), p, 60))
          CHECK(signature_of_int(p, d) == s);
      }
    }
  }
}
