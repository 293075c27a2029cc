#include "qfr/bigint.hpp"

#include <algorithm>
#include <map>

#include "qfr/error.hpp"

namespace qfr {

const char* error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidArgument: return "invalid-argument";
    case ErrorCode::kParse: return "parse-error";
    case ErrorCode::kNoRoot: return "no-root";
    case ErrorCode::kNotSquarefree: return "not-squarefree";
    case ErrorCode::kUnsupportedDiscriminant: return "unsupported-discriminant";
    case ErrorCode::kNotPrincipal: return "not-principal";
    case ErrorCode::kNotRepresentable: return "not-representable";
    case ErrorCode::kNotInTable: return "not-in-table";
    case ErrorCode::kPrecision: return "precision-escalation";
    case ErrorCode::kInconsistent: return "inconsistency";
    case ErrorCode::kUnsupported: return "unsupported";
    case ErrorCode::kWrongGenerator: return "wrong-generator";
    case ErrorCode::kNoSolution: return "no-solution";
    case ErrorCode::kWrongClass: return "wrong-class";
    case ErrorCode::kIndeterminate: return "indeterminate";
  }
  return "unknown";
}

Int parse_int(std::string_view text) {
  std::string s(text);
  auto l = s.find_first_not_of(" \t");
  auto r = s.find_last_not_of(" \t");
  if (l == std::string::npos) throw Error(ErrorCode::kParse, "empty integer literal");
  s = s.substr(l, r - l + 1);
  if (!s.empty() && s[0] == '+') s.erase(0, 1);
  std::size_t start = (!s.empty() && s[0] == '-') ? 1 : 0;
  if (start == s.size() ||
      !std::all_of(s.begin() + start, s.end(), [](char c) { return c >= '0' && c <= '9'; }))
    throw Error(ErrorCode::kParse, "malformed integer literal '" + std::string(text) + "'");
  return Int(s, 10);
}

std::string to_string(const Int& n) { return n.get_str(10); }

Int isqrt(const Int& n) {
  if (n < 0) throw Error(ErrorCode::kInvalidArgument, "isqrt of a negative number");
  Int r;
  mpz_sqrt(r.get_mpz_t(), n.get_mpz_t());
  return r;
}

bool is_perfect_square(const Int& n) {
  return n >= 0 && mpz_perfect_square_p(n.get_mpz_t()) != 0;
}

Int mod(const Int& a, const Int& m) {
  Int r;
  mpz_mod(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
  return r;
}

Int floor_div(const Int& a, const Int& b) {
  Int q;
  mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

Int ceil_div(const Int& a, const Int& b) {
  Int q;
  mpz_cdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

Int gcd(const Int& a, const Int& b) {
  Int g;
  mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return g;
}

Int lcm(const Int& a, const Int& b) {
  Int l;
  mpz_lcm(l.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return l;
}

Bezout ext_gcd(const Int& a, const Int& b) {
  Bezout r;
  mpz_gcdext(r.g.get_mpz_t(), r.s.get_mpz_t(), r.t.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return r;
}

Int inverse_mod(const Int& a, const Int& m) {
  Int r;
  if (mpz_invert(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t()) == 0)
    throw Error(ErrorCode::kInvalidArgument, "element not invertible modulo " + to_string(m));
  return r;
}

Int pow_mod(const Int& base, const Int& exp, const Int& m) {
  Int r;
  mpz_powm(r.get_mpz_t(), base.get_mpz_t(), exp.get_mpz_t(), m.get_mpz_t());
  return r;
}

Int pow(const Int& base, unsigned long exp) {
  Int r;
  mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), exp);
  return r;
}

bool is_probable_prime(const Int& n) {
  return n >= 2 && mpz_probab_prime_p(n.get_mpz_t(), 30) != 0;
}

std::uint64_t to_u64(const Int& n) {
  if (!fits_u64(n)) throw Error(ErrorCode::kInvalidArgument, "value does not fit in 63 bits");
  std::uint64_t v = 0;
  mpz_export(&v, nullptr, -1, sizeof v, 0, 0, n.get_mpz_t());
  return v;
}

namespace {

// Brent's variant; returns a nontrivial factor or 0 on give-up.
Int pollard_rho(const Int& n, std::uint64_t budget) {
  if (n % 2 == 0) return 2;
  for (unsigned long c = 1; c < 40; ++c) {
    Int y = 2, x, g = 1, q = 1, ys;
    std::uint64_t r = 1, used = 0;
    do {
      x = y;
      for (std::uint64_t i = 0; i < r; ++i) y = (y * y + c) % n;
      std::uint64_t k = 0;
      do {
        ys = y;
        std::uint64_t lim = std::min<std::uint64_t>(128, r - k);
        for (std::uint64_t i = 0; i < lim; ++i) {
          y = (y * y + c) % n;
          Int diff = x - y;
          q = (q * abs(diff)) % n;
        }
        g = gcd(q, n);
        k += lim;
        used += lim;
      } while (k < r && g == 1);
      r *= 2;
    } while (g == 1 && used < budget);
    if (g == n) {
      do {
        ys = (ys * ys + c) % n;
        Int diff = x - ys;
        g = gcd(abs(diff), n);
      } while (g == 1);
    }
    if (g != 1 && g != n) return g;
    if (used >= budget) return 0;
  }
  return 0;
}

void split(const Int& n, std::map<Int, unsigned>& out, std::uint64_t budget) {
  if (n == 1) return;
  if (is_probable_prime(n)) {
    ++out[n];
    return;
  }
  Int r;
  if (mpz_perfect_power_p(n.get_mpz_t())) {
    for (unsigned long e = 2; e < mpz_sizeinbase(n.get_mpz_t(), 2) + 1; ++e) {
      if (mpz_root(r.get_mpz_t(), n.get_mpz_t(), e)) {
        std::map<Int, unsigned> sub;
        split(r, sub, budget);
        for (auto& [p, k] : sub) out[p] += k * e;
        return;
      }
    }
  }
  Int f = pollard_rho(n, budget);
  if (f == 0) throw Error(ErrorCode::kIndeterminate, "factoring budget exceeded for " + to_string(n));
  split(f, out, budget);
  Int g = n / f;
  split(g, out, budget);
}

}  // namespace

std::vector<PrimeFactor> factor_integer(const Int& n_in, std::uint64_t rho_iterations) {
  Int n = abs(n_in);
  if (n == 0) throw Error(ErrorCode::kInvalidArgument, "cannot factor zero");
  std::map<Int, unsigned> found;
  for (unsigned long p = 2; p < 10000; p += (p == 2 ? 1 : 2)) {
    if (n == 1) break;
    Int pp(p);
    if (pp * pp > n) break;
    while (mpz_divisible_ui_p(n.get_mpz_t(), p)) {
      n /= p;
      ++found[pp];
    }
  }
  split(n, found, rho_iterations);
  std::vector<PrimeFactor> out;
  for (auto& [p, k] : found) out.push_back({p, k});
  return out;
}

bool is_squarefree(const Int& n) {
  if (n == 0) return false;
  for (const auto& f : factor_integer(n))
    if (f.k > 1) return false;
  return true;
}

}  // namespace qfr
