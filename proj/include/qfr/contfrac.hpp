#pragma once

#include <vector>

#include "qfr/bigint.hpp"
#include "qfr/forms.hpp"

namespace qfr {

// Expansion of (P + sqrt(N)) / Q.
struct CFExpansion {
  std::vector<Int> preperiod;  // includes the leading term
  std::vector<Int> period;

  const Int& d0() const { return preperiod.empty() ? period.front() : preperiod.front(); }
  std::size_t period_length() const { return period.size(); }
};

CFExpansion cf_sqrt_quadratic(const Int& P, const Int& Q, const Int& N);
inline CFExpansion cf_sqrt(const Int& N) { return cf_sqrt_quadratic(0, 1, N); }

// Period of the expansion of the larger root of a t^2 + b t + c.
std::size_t class_cycle_period(const QuadraticForm& f);

struct SSequence {
  std::vector<Int> values;    // principal-form values along the convergents
  bool unit_norm_negative = false;
  std::size_t period = 0;     // T; values holds T terms, or 2T when the unit has norm -1
};
SSequence s_sequence(const Discriminant& d);

// Unit of the maximal order in the basis {1, omega}, read off the
// convergent at the end of the first period.
struct FundamentalUnit {
  Int u, v;  // u + v*omega
  int norm = 1;
  std::size_t period = 0;
};
FundamentalUnit fundamental_unit(const Discriminant& d);

// Least solution of p^2 - D q^2 = +-1 from the expansion of sqrt(D).
struct PellUnit {
  Int p, q;
  int norm = 1;
  std::size_t period = 0;
};
PellUnit pell_unit(const Int& D);

bool is_principal_cf(const QuadraticForm& f);

}  // namespace qfr
