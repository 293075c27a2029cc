#pragma once

// Minimal RAII layer over MPFR plus a complex pair, enough for the
// q-expansion of j and products of linear factors.

#include <mpfr.h>

#include <string>
#include <utility>

#include "qfr/bigint.hpp"

namespace qfr::mp {

class Real {
 public:
  explicit Real(mpfr_prec_t prec) { mpfr_init2(v_, prec); mpfr_set_zero(v_, 1); }
  Real(mpfr_prec_t prec, long x) { mpfr_init2(v_, prec); mpfr_set_si(v_, x, MPFR_RNDN); }
  Real(const Real& o) { mpfr_init2(v_, mpfr_get_prec(o.v_)); mpfr_set(v_, o.v_, MPFR_RNDN); }
  Real(Real&& o) noexcept { mpfr_init2(v_, mpfr_get_prec(o.v_)); mpfr_swap(v_, o.v_); }
  Real& operator=(const Real& o) {
    if (this != &o) mpfr_set(v_, o.v_, MPFR_RNDN);
    return *this;
  }
  Real& operator=(Real&& o) noexcept {
    mpfr_swap(v_, o.v_);
    return *this;
  }
  ~Real() { mpfr_clear(v_); }

  mpfr_ptr get() { return v_; }
  mpfr_srcptr get() const { return v_; }
  mpfr_prec_t prec() const { return mpfr_get_prec(v_); }

  Real operator+(const Real& o) const { return apply(mpfr_add, o); }
  Real operator-(const Real& o) const { return apply(mpfr_sub, o); }
  Real operator*(const Real& o) const { return apply(mpfr_mul, o); }
  Real operator/(const Real& o) const { return apply(mpfr_div, o); }
  Real operator-() const {
    Real r(prec());
    mpfr_neg(r.v_, v_, MPFR_RNDN);
    return r;
  }

  Int round_to_int() const {
    Int z;
    mpfr_get_z(z.get_mpz_t(), v_, MPFR_RNDN);
    return z;
  }
  double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }
  std::string to_string(long digits) const {
    std::string fmt = "%." + std::to_string(digits) + "Rg";
    int n = mpfr_snprintf(nullptr, 0, fmt.c_str(), v_);
    std::string out(static_cast<std::size_t>(n) + 1, '\0');
    mpfr_snprintf(out.data(), out.size(), fmt.c_str(), v_);
    out.pop_back();
    return out;
  }

 private:
  template <class F>
  Real apply(F f, const Real& o) const {
    Real r(std::max(prec(), o.prec()));
    f(r.v_, v_, o.v_, MPFR_RNDN);
    return r;
  }
  mpfr_t v_;
};

inline Real from_int(mpfr_prec_t prec, const Int& z) {
  Real r(prec);
  mpfr_set_z(r.get(), z.get_mpz_t(), MPFR_RNDN);
  return r;
}

inline Real sqrt(const Real& x) {
  Real r(x.prec());
  mpfr_sqrt(r.get(), x.get(), MPFR_RNDN);
  return r;
}

inline Real pi(mpfr_prec_t prec) {
  Real r(prec);
  mpfr_const_pi(r.get(), MPFR_RNDN);
  return r;
}

struct Complex {
  Real re, im;
  explicit Complex(mpfr_prec_t prec) : re(prec), im(prec) {}
  Complex(Real r, Real i) : re(std::move(r)), im(std::move(i)) {}

  Complex operator+(const Complex& o) const { return {re + o.re, im + o.im}; }
  Complex operator-(const Complex& o) const { return {re - o.re, im - o.im}; }
  Complex operator*(const Complex& o) const { return {re * o.re - im * o.im, re * o.im + im * o.re}; }
  Complex operator*(const Real& k) const { return {re * k, im * k}; }
  Complex operator/(const Complex& o) const {
    Real den = o.re * o.re + o.im * o.im;
    return {(re * o.re + im * o.im) / den, (im * o.re - re * o.im) / den};
  }
};

// exp(2 pi i tau) for tau = x + i y.
inline Complex nome(const Real& x, const Real& y) {
  const mpfr_prec_t prec = x.prec();
  Real two_pi = pi(prec) * Real(prec, 2);
  Real mag(prec), ang = two_pi * x, arg = -(two_pi * y);
  mpfr_exp(mag.get(), arg.get(), MPFR_RNDN);
  Real c(prec), s(prec);
  mpfr_sin_cos(s.get(), c.get(), ang.get(), MPFR_RNDN);
  return {mag * c, mag * s};
}

inline mpfr_prec_t bits_for_digits(long digits) { return static_cast<mpfr_prec_t>(digits * 3.3219280948873626) + 16; }

}  // namespace qfr::mp
