#pragma once

#include <string>
#include <vector>

#include "qfr/bigint.hpp"
#include "qfr/forms.hpp"

namespace qfr {

enum class Chi1Rule {
  kNone,         // D = 1 mod 4
  kMinusOne,     // D = 3 mod 4: (-1|m), sign-adjusted
  kTwo,          // D = 2 mod 8: (2|m)
  kMinusTwo,     // D = 6 mod 8: (-2|m), sign-adjusted
};

struct CharacterSystem {
  Chi1Rule chi1 = Chi1Rule::kNone;
  std::vector<Int> odd_primes;  // ascending

  std::size_t size() const { return odd_primes.size() + (chi1 == Chi1Rule::kNone ? 0 : 1); }
  std::size_t genus_count() const { return std::size_t{1} << (size() - 1); }
};

using GenusSignature = std::vector<int>;

CharacterSystem character_system(const Discriminant& d);
GenusSignature signature_of_int(const Int& m, const Discriminant& d);
std::string signature_string(const GenusSignature& s);  // "+-"

// Signature of the genus of a form, from a represented value coprime to 2D.
GenusSignature class_signature(const QuadraticForm& f);

struct Genus {
  GenusSignature signature;
  std::vector<QuadraticForm> classes;
};
// Principal genus first.
std::vector<Genus> genus_partition(const Discriminant& d);

}  // namespace qfr
