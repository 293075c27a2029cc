#pragma once

#include <optional>
#include <string>
#include <string_view>

#include "qfr/bigint.hpp"
#include "qfr/forms.hpp"

namespace qfr {

// u + v*omega.
struct QuadInt {
  Int u = 0, v = 0;
  bool operator==(const QuadInt& o) const = default;
  bool is_zero() const { return u == 0 && v == 0; }
};

// Q(sqrt(D)) with omega = (1 + sqrt D)/2 when D = 1 mod 4, sqrt D otherwise.
// omega^2 = tr*omega - nm.
class QuadraticField {
 public:
  explicit QuadraticField(const Int& D);
  static QuadraticField of(const Discriminant& d);

  const Int& D() const { return D_; }
  const Int& omega_trace() const { return tr_; }
  const Int& omega_norm() const { return nm_; }
  // Discriminant of the maximal order.
  Int discriminant() const { return tr_ == 1 ? D_ : Int(4 * D_); }

  QuadInt add(const QuadInt& a, const QuadInt& b) const { return {a.u + b.u, a.v + b.v}; }
  QuadInt sub(const QuadInt& a, const QuadInt& b) const { return {a.u - b.u, a.v - b.v}; }
  QuadInt mul(const QuadInt& a, const QuadInt& b) const;
  QuadInt scale(const QuadInt& a, const Int& k) const { return {a.u * k, a.v * k}; }
  QuadInt conj(const QuadInt& a) const { return {a.u + a.v * tr_, -a.v}; }
  Int norm(const QuadInt& a) const { return a.u * a.u + tr_ * a.u * a.v + nm_ * a.v * a.v; }
  Int trace(const QuadInt& a) const { return 2 * a.u + tr_ * a.v; }
  QuadInt pow(const QuadInt& a, unsigned long n) const;
  // Exact quotient a/b, or nullopt if it is not integral.
  std::optional<QuadInt> divide(const QuadInt& a, const QuadInt& b) const;

  std::string to_string(const QuadInt& a) const;  // e.g. "2-w"
  bool operator==(const QuadraticField& o) const { return D_ == o.D_; }

 private:
  Int D_, tr_, nm_;
};

// Parses "2-w", "-w", "4+w", "7", "29-2w".
QuadInt parse_quad_int(std::string_view text);

// <e><f, g + omega> with e, f > 0 and 0 <= g < f.
struct QuadIdeal {
  QuadraticField field;
  Int e, f, g;
  QuadInt gen1, gen2;  // generators it was built from

  Int norm() const { return e * e * f; }
  std::string literal() const;  // "e;f;g"
  bool operator==(const QuadIdeal& o) const { return field == o.field && e == o.e && f == o.f && g == o.g; }
};

QuadIdeal canonicalize(const QuadraticField& K, const QuadInt& a, const QuadInt& b);
QuadIdeal parse_ideal(const QuadraticField& K, std::string_view literal);
QuadIdeal unit_ideal(const QuadraticField& K);
Int ideal_norm(const QuadIdeal& I);
QuadIdeal ideal_multiply(const QuadIdeal& I, const QuadIdeal& J);
QuadIdeal ideal_power(const QuadIdeal& I, unsigned long n);
QuadIdeal conjugate(const QuadIdeal& I);
bool contains(const QuadIdeal& I, const QuadInt& x);

struct PrincipalGenerator {
  QuadInt pi;
  Int norm;
};

std::optional<PrincipalGenerator> principal_generator(const QuadIdeal& I);
PrincipalGenerator ideal_power_principal_gen(const QuadIdeal& I, unsigned long l);
// Least l >= 1 with I^l principal, searching up to max_order.
unsigned long ideal_class_order(const QuadIdeal& I, unsigned long max_order = 1000);

QuadraticForm form_from_ideal(const QuadIdeal& I);
QuadIdeal ideal_from_form(const QuadraticField& K, const QuadraticForm& f);

}  // namespace qfr
