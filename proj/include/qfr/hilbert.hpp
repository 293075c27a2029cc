#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qfr/bigint.hpp"
#include "qfr/forms.hpp"
#include "qfr/genus.hpp"
#include "qfr/ideals.hpp"
#include "qfr/poly.hpp"

namespace qfr {

struct HilbertPolyRecord {
  Int D, delta;
  unsigned h = 0;
  std::string omega;
  std::vector<QuadraticForm> forms;
  std::vector<std::string> ideals;  // "e;f;g" literals
  // Class polynomial over Z. For real fields this is H_K = h_K * conj(h_K).
  IntPolynomial poly;
  // Real fields only: h_K with coefficients s + t*sqrt(D), ascending.
  std::vector<std::pair<Int, Int>> poly_over_k;
  std::optional<QuadInt> pi_a;
  unsigned ell = 0;
  std::optional<HomogeneousPoly> sys_u, sys_v;
  std::optional<Int> j;     // class number one only
  std::string curve;        // class number one only
  std::optional<QuadInt> unit;
};

class HilbertTable {
 public:
  static HilbertTable load(const std::string& path);
  // Throws kNotInTable.
  const HilbertPolyRecord& lookup(const Discriminant& d) const;
  const HilbertPolyRecord* find(const Discriminant& d) const;
  const std::vector<HilbertPolyRecord>& records() const { return records_; }

 private:
  std::vector<HilbertPolyRecord> records_;
};

// $QFR_DATA if set, else the data directory fixed at build time.
std::string default_data_path();
const HilbertTable& default_table();
inline const HilbertPolyRecord& lookup_table(const Discriminant& d) { return default_table().lookup(d); }

// prod (x - j(tau_i)) over the reduced forms of a negative discriminant.
// digits = 0 picks a precision from the size of the largest root.
IntPolynomial compute_class_poly(const Discriminant& d, long digits = 0, bool parallel = true);

struct SplitResult {
  bool ramified = false;      // h mod p has a repeated factor
  bool fully_splits = false;
  std::vector<unsigned> pattern;
};
SplitResult hilbert_split_test(const IntPolynomial& h, const Int& p);

struct ClassLabel {
  enum class Kind { kPrincipal, kSelfReciprocalNonPrincipal, kReciprocalPair, kGenusOnly };
  Kind kind = Kind::kPrincipal;
  GenusSignature signature;
  std::string to_string() const;
  bool operator==(const ClassLabel& o) const = default;
};

// Class polynomial for d: the table when present, computed otherwise (d < 0).
IntPolynomial class_polynomial(const Discriminant& d);

ClassLabel classify_prime(const Int& p, const Discriminant& d);

// Sufficient test for principality of an indefinite form. nullopt when some
// lcm(|a|, |c|) does not factor by trial division up to trial_bound and no
// form on the cycle already passed.
std::optional<bool> is_principal_via_hilbert(const QuadraticForm& f, unsigned long trial_bound = 1'000'000);

}  // namespace qfr
