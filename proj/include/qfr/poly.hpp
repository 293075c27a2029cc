#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "qfr/bigint.hpp"

namespace qfr {

// Dense univariate polynomial over Z, coefficients ascending. The zero
// polynomial has an empty coefficient vector.
class IntPolynomial {
 public:
  IntPolynomial() = default;
  explicit IntPolynomial(std::vector<Int> coeffs);
  static IntPolynomial monomial(const Int& c, std::size_t deg);
  static IntPolynomial constant(const Int& c) { return monomial(c, 0); }
  static IntPolynomial x() { return monomial(1, 1); }
  // Monic polynomial with the given roots.
  static IntPolynomial from_roots(const std::vector<Int>& roots);

  bool is_zero() const { return c_.empty(); }
  // -1 for the zero polynomial.
  long degree() const { return static_cast<long>(c_.size()) - 1; }
  const std::vector<Int>& coeffs() const { return c_; }
  Int coeff(std::size_t i) const { return i < c_.size() ? c_[i] : Int(0); }
  const Int& leading() const { return c_.back(); }

  Int operator()(const Int& x) const;
  IntPolynomial derivative() const;
  Int content() const;

  IntPolynomial operator+(const IntPolynomial& o) const;
  IntPolynomial operator-(const IntPolynomial& o) const;
  IntPolynomial operator-() const;
  IntPolynomial operator*(const IntPolynomial& o) const;
  IntPolynomial operator*(const Int& k) const;
  bool operator==(const IntPolynomial& o) const { return c_ == o.c_; }

  // Exact division in Z[x]; throws kInconsistent when the remainder is nonzero.
  IntPolynomial exact_div(const IntPolynomial& d) const;
  IntPolynomial exact_div(const Int& k) const;

  std::string to_string(const char* var = "x") const;

 private:
  void trim();
  std::vector<Int> c_;
};

// Integer roots with multiplicity, sorted ascending.
std::vector<Int> integer_roots(const IntPolynomial& f);

// Bivariate homogeneous polynomial sum_i c_i x^i y^(l-i).
struct HomogeneousPoly {
  unsigned degree = 0;
  std::vector<Int> coeffs;  // size degree+1, c_i multiplies x^i y^(degree-i)

  Int eval(const Int& x, const Int& y) const;
  bool operator==(const HomogeneousPoly& o) const = default;
  std::string to_string() const;
};

// P(x, y) = sum_j P_j(x) y^j.
struct BivariatePoly {
  std::vector<IntPolynomial> by_y;

  static BivariatePoly from_homogeneous(const HomogeneousPoly& h);
  long degree_y() const { return static_cast<long>(by_y.size()) - 1; }
  BivariatePoly operator-(const Int& k) const;
  // Substitute x = x0, giving a polynomial in y.
  IntPolynomial at_x(const Int& x0) const;
};

// Res_y(f, g) as a polynomial in x, via fraction-free elimination of the
// Sylvester matrix.
IntPolynomial resultant_y(const BivariatePoly& f, const BivariatePoly& g);

// Polynomials over F_p. Coefficients ascending and reduced to [0, p).
namespace fp {

using Poly = std::vector<Int>;

Poly reduce(const IntPolynomial& f, const Int& p);
void trim(Poly& f);
Poly add(const Poly& a, const Poly& b, const Int& p);
Poly sub(const Poly& a, const Poly& b, const Int& p);
Poly mul(const Poly& a, const Poly& b, const Int& p);
void divmod(const Poly& a, const Poly& b, const Int& p, Poly* q, Poly* r);
Poly rem(const Poly& a, const Poly& b, const Int& p);
Poly gcd(Poly a, Poly b, const Int& p);  // monic
Poly make_monic(const Poly& a, const Int& p);
Poly powmod(const Poly& base, const Int& e, const Poly& m, const Int& p);
Poly derivative(const Poly& a, const Int& p);
Int eval(const Poly& a, const Int& x, const Int& p);
inline long degree(const Poly& a) { return static_cast<long>(a.size()) - 1; }

bool is_squarefree(const Poly& f, const Int& p);
// Distinct-degree factorization: pairs (d, product of all degree-d factors).
std::vector<std::pair<unsigned, Poly>> distinct_degree(const Poly& f, const Int& p);
// Equal-degree splitting of a product of degree-d irreducibles (p odd).
std::vector<Poly> equal_degree(const Poly& f, unsigned d, const Int& p, std::uint64_t seed);

}  // namespace fp

// Multiset of irreducible factor degrees of f mod p, ascending.
// Throws kInvalidArgument if f vanishes mod p and kNotSquarefree when f mod p
// has a repeated factor.
std::vector<unsigned> factor_degree_pattern_mod_p(const IntPolynomial& f, const Int& p);

// Roots of f in F_p, ascending, without multiplicity.
std::vector<Int> roots_mod_p(const IntPolynomial& f, const Int& p, std::uint64_t seed = 0x5eed);

// Monic irreducible factors of degree d of f mod p.
std::vector<fp::Poly> factors_of_degree_mod_p(const IntPolynomial& f, const Int& p, unsigned d,
                                              std::uint64_t seed = 0x5eed);

}  // namespace qfr
