#pragma once

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "qfr/bigint.hpp"

namespace qfr {

class Discriminant {
 public:
  // Accepts delta = 0 or 1 mod 4, nonsquare, with D square-free.
  explicit Discriminant(Int delta);
  static Discriminant from_field(const Int& D);

  const Int& delta() const { return delta_; }
  const Int& d_field() const { return d_; }
  int sign() const { return delta_ < 0 ? -1 : 1; }
  bool is_negative() const { return delta_ < 0; }
  // delta equals the field discriminant of Q(sqrt(D)).
  bool is_fundamental() const;
  bool operator==(const Discriminant& o) const { return delta_ == o.delta_; }

 private:
  Int delta_;
  Int d_;
};

class QuadraticForm {
 public:
  QuadraticForm(Int a, Int b, Int c);
  static QuadraticForm parse(std::string_view literal);  // "a,b,c"
  static QuadraticForm principal(const Int& delta);

  const Int& a() const { return a_; }
  const Int& b() const { return b_; }
  const Int& c() const { return c_; }
  Int delta() const { return b_ * b_ - 4 * a_ * c_; }
  Int operator()(const Int& x, const Int& y) const { return a_ * x * x + b_ * x * y + c_ * y * y; }
  QuadraticForm inverse() const { return QuadraticForm(a_, -b_, c_, Unchecked{}); }

  bool operator==(const QuadraticForm& o) const = default;
  bool operator<(const QuadraticForm& o) const;
  std::string to_string() const;  // "a,b,c"
  std::string pretty() const;     // "2x^2 + 2xy + 3y^2"

 private:
  struct Unchecked {};
  QuadraticForm(Int a, Int b, Int c, Unchecked) : a_(std::move(a)), b_(std::move(b)), c_(std::move(c)) {}
  friend struct FormAccess;
  Int a_, b_, c_;
};

// Matrix (p q / r s); acts on forms by f(px + qy, rx + sy).
struct UnimodularMap {
  Int p = 1, q = 0, r = 0, s = 1;

  static UnimodularMap identity() { return {}; }
  Int det() const { return p * s - q * r; }
  bool is_proper() const { return det() == 1; }
  UnimodularMap operator*(const UnimodularMap& o) const;
  UnimodularMap inverse() const;
  // Column vector image (p x + q y, r x + s y).
  std::pair<Int, Int> apply(const Int& x, const Int& y) const;
  bool operator==(const UnimodularMap& o) const = default;
};

struct Representation {
  QuadraticForm form;
  Int x, y, value;
};

Discriminant discriminant_of(const QuadraticForm& f);
QuadraticForm transform(const QuadraticForm& f, const UnimodularMap& m);
Int evaluate(const QuadraticForm& f, const Int& x, const Int& y);

bool is_reduced(const QuadraticForm& f);

struct Reduction {
  QuadraticForm form;
  UnimodularMap map;  // transform(input, map) == form
};
Reduction reduce_form(const QuadraticForm& f);

// One step of the indefinite reduction operator; (a,b,c) -> (c, -b + 2ct, ...).
Reduction rho(const QuadraticForm& f);
// The rho-cycle of a reduced indefinite form, starting with it; maps are
// cumulative from the starting form.
std::vector<Reduction> rho_cycle(const QuadraticForm& reduced);

struct Composition {
  QuadraticForm form;
  // Rows give x3 and y3 as combinations of (x1x2, x1y2, y1x2, y1y2).
  std::array<std::array<Int, 4>, 2> bilinear;
};
Composition compose(const QuadraticForm& f1, const QuadraticForm& f2);

// Reduced composition; for indefinite forms the first reduced form reached.
QuadraticForm compose_reduced(const QuadraticForm& f1, const QuadraticForm& f2);
QuadraticForm power_reduced(const QuadraticForm& f, unsigned long n);

// One reduced representative per proper class, principal first.
std::vector<QuadraticForm> enumerate_classes(const Discriminant& d);
std::size_t class_number(const Discriminant& d);

struct Equivalence {
  UnimodularMap map;  // transform(f, map) == g
  bool proper;
};
// Proper equivalence is tried first.
std::optional<Equivalence> equivalence_map(const QuadraticForm& f, const QuadraticForm& g);
std::optional<Equivalence> proper_equivalence(const QuadraticForm& f, const QuadraticForm& g);

// Canonical representative of the proper class of f: the reduced form for
// delta < 0, the least form of the rho-cycle for delta > 0.
QuadraticForm class_key(const QuadraticForm& f);

}  // namespace qfr
