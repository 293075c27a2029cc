#include "qfr/genus.hpp"

#include <algorithm>
#include <map>

#include "qfr/arith.hpp"
#include "qfr/error.hpp"

namespace qfr {

CharacterSystem character_system(const Discriminant& d) {
  CharacterSystem cs;
  const Int& D = d.d_field();
  Int r8 = mod(D, 8);
  if (mod(D, 4) == 3)
    cs.chi1 = Chi1Rule::kMinusOne;
  else if (r8 == 2)
    cs.chi1 = Chi1Rule::kTwo;
  else if (r8 == 6)
    cs.chi1 = Chi1Rule::kMinusTwo;
  for (const auto& pf : factor_integer(D))
    if (pf.p != 2) cs.odd_primes.push_back(pf.p);
  return cs;
}

GenusSignature signature_of_int(const Int& m, const Discriminant& d) {
  const Int& D = d.d_field();
  if (gcd(m, 2 * D) != 1)
    throw Error(ErrorCode::kInvalidArgument, "signature needs m coprime to 2D, got " + to_string(m));
  if (D < 0 && m < 0) throw Error(ErrorCode::kInvalidArgument, "signature needs m > 0 when D < 0");
  CharacterSystem cs = character_system(d);
  GenusSignature sig;
  Int am = abs(m);
  int sgn = m < 0 ? -1 : 1;
  switch (cs.chi1) {
    case Chi1Rule::kNone: break;
    case Chi1Rule::kMinusOne: sig.push_back(am == 1 ? sgn : jacobi_symbol(-1, am) * sgn); break;
    case Chi1Rule::kTwo: sig.push_back(am == 1 ? 1 : jacobi_symbol(2, am)); break;
    case Chi1Rule::kMinusTwo: sig.push_back(am == 1 ? sgn : jacobi_symbol(-2, am) * sgn); break;
  }
  for (const Int& q : cs.odd_primes) sig.push_back(jacobi_symbol(m, q));
  return sig;
}

std::string signature_string(const GenusSignature& s) {
  std::string out;
  for (int v : s) out += v > 0 ? '+' : '-';
  return out;
}

GenusSignature class_signature(const QuadraticForm& f) {
  Discriminant d(f.delta());
  const Int two_d = 2 * d.d_field();
  for (long r = 1; r <= 40; ++r) {
    for (long x = -r; x <= r; ++x) {
      for (long y : {-r, r}) {
        for (int swap = 0; swap < 2; ++swap) {
          Int xx = swap ? y : x, yy = swap ? x : y;
          Int v = f(xx, yy);
          if (v == 0 || gcd(v, two_d) != 1) continue;
          if (d.is_negative() && v < 0) continue;
          return signature_of_int(v, d);
        }
      }
    }
  }
  throw Error(ErrorCode::kInconsistent, "no represented value coprime to 2D within the search box");
}

std::vector<Genus> genus_partition(const Discriminant& d) {
  std::vector<Genus> out;
  for (const auto& f : enumerate_classes(d)) {
    GenusSignature s = class_signature(f);
    auto it = std::find_if(out.begin(), out.end(), [&](const Genus& g) { return g.signature == s; });
    if (it == out.end())
      out.push_back({s, {f}});
    else
      it->classes.push_back(f);
  }
  return out;
}

}  // namespace qfr
