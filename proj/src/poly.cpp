#include "qfr/poly.hpp"

#include <algorithm>
#include <sstream>

#include "qfr/error.hpp"

namespace qfr {

IntPolynomial::IntPolynomial(std::vector<Int> coeffs) : c_(std::move(coeffs)) { trim(); }

IntPolynomial IntPolynomial::monomial(const Int& c, std::size_t deg) {
  std::vector<Int> v(deg + 1, Int(0));
  v[deg] = c;
  return IntPolynomial(std::move(v));
}

IntPolynomial IntPolynomial::from_roots(const std::vector<Int>& roots) {
  IntPolynomial r = constant(1);
  for (const Int& z : roots) r = r * IntPolynomial({Int(-z), Int(1)});
  return r;
}

void IntPolynomial::trim() {
  while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

Int IntPolynomial::operator()(const Int& x) const {
  Int acc = 0;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
  return acc;
}

IntPolynomial IntPolynomial::derivative() const {
  if (c_.size() <= 1) return {};
  std::vector<Int> d(c_.size() - 1);
  for (std::size_t i = 1; i < c_.size(); ++i) d[i - 1] = c_[i] * static_cast<unsigned long>(i);
  return IntPolynomial(std::move(d));
}

Int IntPolynomial::content() const {
  Int g = 0;
  for (const Int& c : c_) g = gcd(g, c);
  return g;
}

IntPolynomial IntPolynomial::operator+(const IntPolynomial& o) const {
  std::vector<Int> r(std::max(c_.size(), o.c_.size()), Int(0));
  for (std::size_t i = 0; i < c_.size(); ++i) r[i] += c_[i];
  for (std::size_t i = 0; i < o.c_.size(); ++i) r[i] += o.c_[i];
  return IntPolynomial(std::move(r));
}

IntPolynomial IntPolynomial::operator-() const {
  std::vector<Int> r(c_);
  for (Int& c : r) c = -c;
  return IntPolynomial(std::move(r));
}

IntPolynomial IntPolynomial::operator-(const IntPolynomial& o) const { return *this + (-o); }

IntPolynomial IntPolynomial::operator*(const IntPolynomial& o) const {
  if (is_zero() || o.is_zero()) return {};
  std::vector<Int> r(c_.size() + o.c_.size() - 1, Int(0));
  for (std::size_t i = 0; i < c_.size(); ++i) {
    if (c_[i] == 0) continue;
    for (std::size_t j = 0; j < o.c_.size(); ++j) r[i + j] += c_[i] * o.c_[j];
  }
  return IntPolynomial(std::move(r));
}

IntPolynomial IntPolynomial::operator*(const Int& k) const {
  std::vector<Int> r(c_);
  for (Int& c : r) c *= k;
  return IntPolynomial(std::move(r));
}

IntPolynomial IntPolynomial::exact_div(const Int& k) const {
  std::vector<Int> r(c_);
  for (Int& c : r) {
    if (!mpz_divisible_p(c.get_mpz_t(), k.get_mpz_t()))
      throw Error(ErrorCode::kInconsistent, "inexact scalar division");
    mpz_divexact(c.get_mpz_t(), c.get_mpz_t(), k.get_mpz_t());
  }
  return IntPolynomial(std::move(r));
}

IntPolynomial IntPolynomial::exact_div(const IntPolynomial& d) const {
  if (d.is_zero()) throw Error(ErrorCode::kInvalidArgument, "division by the zero polynomial");
  if (is_zero()) return {};
  if (degree() < d.degree()) throw Error(ErrorCode::kInconsistent, "inexact polynomial division");
  std::vector<Int> rem(c_);
  std::vector<Int> q(c_.size() - d.c_.size() + 1, Int(0));
  const Int& lead = d.leading();
  for (long i = static_cast<long>(q.size()) - 1; i >= 0; --i) {
    Int& top = rem[i + d.degree()];
    if (top == 0) continue;
    if (!mpz_divisible_p(top.get_mpz_t(), lead.get_mpz_t()))
      throw Error(ErrorCode::kInconsistent, "inexact polynomial division");
    Int t;
    mpz_divexact(t.get_mpz_t(), top.get_mpz_t(), lead.get_mpz_t());
    q[i] = t;
    for (std::size_t j = 0; j < d.c_.size(); ++j) rem[i + j] -= t * d.c_[j];
  }
  for (const Int& c : rem)
    if (c != 0) throw Error(ErrorCode::kInconsistent, "inexact polynomial division");
  return IntPolynomial(std::move(q));
}

std::string IntPolynomial::to_string(const char* var) const {
  if (is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (long i = degree(); i >= 0; --i) {
    const Int& c = c_[i];
    if (c == 0) continue;
    Int mag = abs(c);
    if (first) {
      if (c < 0) os << "-";
    } else {
      os << (c < 0 ? " - " : " + ");
    }
    first = false;
    if (i == 0 || mag != 1) os << mag.get_str();
    if (i >= 1) os << var;
    if (i >= 2) os << "^" << i;
  }
  return os.str();
}

namespace {

// Ceiling of the k-th root of a non-negative rational num/den.
Int ceil_root(const Int& num, const Int& den, unsigned long k) {
  Int q = ceil_div(num, den);
  Int r;
  int exact = mpz_root(r.get_mpz_t(), q.get_mpz_t(), k);
  return exact ? r : Int(r + 1);
}

// Fujiwara's bound on the modulus of every complex root.
Int root_bound(const IntPolynomial& f) {
  const long n = f.degree();
  Int lead = abs(f.leading());
  Int best = 0;
  for (long i = 1; i <= n; ++i) {
    Int c = abs(f.coeff(n - i));
    if (c == 0) continue;
    Int den = (i == n) ? Int(2 * lead) : lead;
    Int b = ceil_root(c, den, i);
    if (b > best) best = b;
  }
  return 2 * best;
}

void collect_divisors(const std::vector<PrimeFactor>& fs, std::size_t i, const Int& cur,
                      const Int& bound, std::vector<Int>& out) {
  if (cur > bound) return;
  if (i == fs.size()) {
    out.push_back(cur);
    return;
  }
  Int v = cur;
  for (unsigned e = 0; e <= fs[i].k && v <= bound; ++e) {
    collect_divisors(fs, i + 1, v, bound, out);
    v *= fs[i].p;
  }
}

}  // namespace

std::vector<Int> integer_roots(const IntPolynomial& f) {
  if (f.is_zero()) throw Error(ErrorCode::kInvalidArgument, "integer_roots of the zero polynomial");
  std::vector<Int> roots;
  std::size_t low = 0;
  while (f.coeff(low) == 0) ++low;
  for (std::size_t i = 0; i < low; ++i) roots.push_back(0);
  std::vector<Int> rest(f.coeffs().begin() + low, f.coeffs().end());
  IntPolynomial g(std::move(rest));
  g = g.exact_div(g.content());
  if (g.degree() == 0) return roots;

  Int a0 = abs(g.coeff(0));
  Int bound = root_bound(g);
  if (bound > a0) bound = a0;

  std::vector<Int> candidates;
  constexpr unsigned long kScanLimit = 2'000'000;
  if (bound <= kScanLimit) {
    unsigned long b = bound.get_ui();
    for (unsigned long z = 1; z <= b; ++z)
      if (mpz_divisible_ui_p(a0.get_mpz_t(), z)) candidates.push_back(Int(z));
  } else {
    collect_divisors(factor_integer(a0), 0, Int(1), bound, candidates);
  }

  for (const Int& z : candidates) {
    for (int sign : {-1, 1}) {
      Int x = sign * z;
      while (g.degree() >= 1 && g(x) == 0) {
        roots.push_back(x);
        g = g.exact_div(IntPolynomial({Int(-x), Int(1)}));
      }
    }
  }
  std::sort(roots.begin(), roots.end());
  return roots;
}

Int HomogeneousPoly::eval(const Int& x, const Int& y) const {
  Int acc = 0;
  for (std::size_t i = 0; i < coeffs.size(); ++i)
    acc += coeffs[i] * pow(x, i) * pow(y, degree - i);
  return acc;
}

std::string HomogeneousPoly::to_string() const {
  std::ostringstream os;
  bool first = true;
  for (long i = degree; i >= 0; --i) {
    const Int& c = coeffs[i];
    if (c == 0) continue;
    Int mag = abs(c);
    if (first) {
      if (c < 0) os << "-";
    } else {
      os << (c < 0 ? " - " : " + ");
    }
    first = false;
    long j = static_cast<long>(degree) - i;
    if (mag != 1 || degree == 0) os << mag.get_str();
    if (i >= 1) os << "x" << (i > 1 ? "^" + std::to_string(i) : "");
    if (j >= 1) os << "y" << (j > 1 ? "^" + std::to_string(j) : "");
  }
  return first ? "0" : os.str();
}

BivariatePoly BivariatePoly::from_homogeneous(const HomogeneousPoly& h) {
  BivariatePoly b;
  b.by_y.resize(h.degree + 1);
  for (std::size_t i = 0; i < h.coeffs.size(); ++i)
    b.by_y[h.degree - i] = IntPolynomial::monomial(h.coeffs[i], i);
  while (!b.by_y.empty() && b.by_y.back().is_zero()) b.by_y.pop_back();
  return b;
}

BivariatePoly BivariatePoly::operator-(const Int& k) const {
  BivariatePoly r = *this;
  if (r.by_y.empty()) r.by_y.resize(1);
  r.by_y[0] = r.by_y[0] - IntPolynomial::constant(k);
  return r;
}

IntPolynomial BivariatePoly::at_x(const Int& x0) const {
  std::vector<Int> c;
  for (const auto& p : by_y) c.push_back(p(x0));
  return IntPolynomial(std::move(c));
}

IntPolynomial resultant_y(const BivariatePoly& f, const BivariatePoly& g) {
  const long m = f.degree_y(), n = g.degree_y();
  if (m < 0 || n < 0) return {};
  if (m == 0 && n == 0) return IntPolynomial::constant(1);
  if (m == 0) {
    IntPolynomial r = IntPolynomial::constant(1);
    for (long i = 0; i < n; ++i) r = r * f.by_y[0];
    return r;
  }
  if (n == 0) {
    IntPolynomial r = IntPolynomial::constant(1);
    for (long i = 0; i < m; ++i) r = r * g.by_y[0];
    return r;
  }
  const long size = m + n;
  std::vector<std::vector<IntPolynomial>> M(size, std::vector<IntPolynomial>(size));
  for (long r = 0; r < n; ++r)
    for (long j = 0; j <= m; ++j) M[r][r + j] = f.by_y[m - j];
  for (long r = 0; r < m; ++r)
    for (long j = 0; j <= n; ++j) M[n + r][r + j] = g.by_y[n - j];

  int sign = 1;
  IntPolynomial prev = IntPolynomial::constant(1);
  for (long k = 0; k < size - 1; ++k) {
    if (M[k][k].is_zero()) {
      long piv = -1;
      for (long i = k + 1; i < size; ++i)
        if (!M[i][k].is_zero()) {
          piv = i;
          break;
        }
      if (piv < 0) return {};
      std::swap(M[k], M[piv]);
      sign = -sign;
    }
    for (long i = k + 1; i < size; ++i) {
      for (long j = k + 1; j < size; ++j)
        M[i][j] = (M[i][j] * M[k][k] - M[i][k] * M[k][j]).exact_div(prev);
      M[i][k] = IntPolynomial();
    }
    prev = M[k][k];
  }
  return sign > 0 ? M[size - 1][size - 1] : -M[size - 1][size - 1];
}

namespace fp {

void trim(Poly& f) {
  while (!f.empty() && f.back() == 0) f.pop_back();
}

Poly reduce(const IntPolynomial& f, const Int& p) {
  Poly r;
  for (const Int& c : f.coeffs()) r.push_back(mod(c, p));
  trim(r);
  return r;
}

Poly add(const Poly& a, const Poly& b, const Int& p) {
  Poly r(std::max(a.size(), b.size()), Int(0));
  for (std::size_t i = 0; i < a.size(); ++i) r[i] += a[i];
  for (std::size_t i = 0; i < b.size(); ++i) r[i] += b[i];
  for (Int& c : r) c = mod(c, p);
  trim(r);
  return r;
}

Poly sub(const Poly& a, const Poly& b, const Int& p) {
  Poly r(std::max(a.size(), b.size()), Int(0));
  for (std::size_t i = 0; i < a.size(); ++i) r[i] += a[i];
  for (std::size_t i = 0; i < b.size(); ++i) r[i] -= b[i];
  for (Int& c : r) c = mod(c, p);
  trim(r);
  return r;
}

Poly mul(const Poly& a, const Poly& b, const Int& p) {
  if (a.empty() || b.empty()) return {};
  Poly r(a.size() + b.size() - 1, Int(0));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  for (Int& c : r) c = mod(c, p);
  trim(r);
  return r;
}

void divmod(const Poly& a, const Poly& b, const Int& p, Poly* q, Poly* r) {
  if (b.empty()) throw Error(ErrorCode::kInvalidArgument, "division by zero polynomial mod p");
  Poly rem = a;
  Poly quo(a.size() >= b.size() ? a.size() - b.size() + 1 : 0, Int(0));
  Int inv = inverse_mod(b.back(), p);
  const long db = degree(b);
  while (!rem.empty() && degree(rem) >= db) {
    long shift = degree(rem) - db;
    Int t = mod(rem.back() * inv, p);
    quo[shift] = t;
    for (long j = 0; j <= db; ++j) rem[shift + j] = mod(rem[shift + j] - t * b[j], p);
    trim(rem);
  }
  if (q) {
    trim(quo);
    *q = std::move(quo);
  }
  if (r) *r = std::move(rem);
}

Poly rem(const Poly& a, const Poly& b, const Int& p) {
  Poly r;
  divmod(a, b, p, nullptr, &r);
  return r;
}

Poly make_monic(const Poly& a, const Int& p) {
  if (a.empty()) return a;
  Int inv = inverse_mod(a.back(), p);
  Poly r(a);
  for (Int& c : r) c = mod(c * inv, p);
  return r;
}

Poly gcd(Poly a, Poly b, const Int& p) {
  while (!b.empty()) {
    Poly r = rem(a, b, p);
    a = std::move(b);
    b = std::move(r);
  }
  return make_monic(a, p);
}

Poly powmod(const Poly& base, const Int& e, const Poly& m, const Int& p) {
  Poly result{Int(1)};
  result = rem(result, m, p);
  Poly b = rem(base, m, p);
  const std::size_t bits = mpz_sizeinbase(e.get_mpz_t(), 2);
  for (long i = static_cast<long>(bits) - 1; i >= 0; --i) {
    result = rem(mul(result, result, p), m, p);
    if (mpz_tstbit(e.get_mpz_t(), i)) result = rem(mul(result, b, p), m, p);
  }
  return result;
}

Poly derivative(const Poly& a, const Int& p) {
  Poly d;
  for (std::size_t i = 1; i < a.size(); ++i) d.push_back(mod(a[i] * static_cast<unsigned long>(i), p));
  trim(d);
  return d;
}

Int eval(const Poly& a, const Int& x, const Int& p) {
  Int acc = 0;
  for (auto it = a.rbegin(); it != a.rend(); ++it) acc = mod(acc * x + *it, p);
  return acc;
}

bool is_squarefree(const Poly& f, const Int& p) {
  if (degree(f) <= 0) return true;
  Poly d = derivative(f, p);
  if (d.empty()) return false;  // f is a p-th power
  return degree(gcd(f, d, p)) == 0;
}

std::vector<std::pair<unsigned, Poly>> distinct_degree(const Poly& f_in, const Int& p) {
  std::vector<std::pair<unsigned, Poly>> out;
  Poly f = make_monic(f_in, p);
  const Poly x{Int(0), Int(1)};
  Poly h = x;
  for (unsigned d = 1; 2 * static_cast<long>(d) <= degree(f); ++d) {
    h = powmod(h, p, f, p);
    Poly g = gcd(f, sub(h, x, p), p);
    if (degree(g) > 0) {
      out.emplace_back(d, g);
      Poly q;
      divmod(f, g, p, &q, nullptr);
      f = std::move(q);
      h = rem(h, f, p);
    }
  }
  if (degree(f) > 0) out.emplace_back(static_cast<unsigned>(degree(f)), f);
  return out;
}

std::vector<Poly> equal_degree(const Poly& f_in, unsigned d, const Int& p, std::uint64_t seed) {
  Poly f = make_monic(f_in, p);
  const long n = degree(f);
  if (n <= 0) return {};
  if (n == static_cast<long>(d)) return {f};
  if (p == 2) throw Error(ErrorCode::kInvalidArgument, "equal-degree splitting needs odd p");
  gmp_randclass rng(gmp_randinit_default);
  rng.seed(seed);
  Int e = (pow(p, d) - 1) / 2;
  std::vector<Poly> work{f}, done;
  while (!work.empty()) {
    Poly g = work.back();
    work.pop_back();
    if (degree(g) == static_cast<long>(d)) {
      done.push_back(g);
      continue;
    }
    for (;;) {
      Poly a;
      for (long i = 0; i < degree(g); ++i) a.push_back(rng.get_z_range(p));
      trim(a);
      if (degree(a) < 1) continue;
      Poly b = sub(powmod(a, e, g, p), Poly{Int(1)}, p);
      Poly h = gcd(g, b, p);
      if (degree(h) > 0 && degree(h) < degree(g)) {
        Poly q;
        divmod(g, h, p, &q, nullptr);
        work.push_back(h);
        work.push_back(make_monic(q, p));
        break;
      }
    }
  }
  std::sort(done.begin(), done.end());
  return done;
}

}  // namespace fp

namespace {

fp::Poly checked_reduce(const IntPolynomial& f, const Int& p) {
  fp::Poly g = fp::reduce(f, p);
  if (g.empty()) throw Error(ErrorCode::kInvalidArgument, "polynomial vanishes modulo " + to_string(p));
  return g;
}

}  // namespace

std::vector<unsigned> factor_degree_pattern_mod_p(const IntPolynomial& f, const Int& p) {
  fp::Poly g = checked_reduce(f, p);
  if (!fp::is_squarefree(g, p))
    throw Error(ErrorCode::kNotSquarefree, "polynomial is not squarefree modulo " + to_string(p));
  std::vector<unsigned> pattern;
  for (const auto& [d, part] : fp::distinct_degree(g, p))
    for (long i = 0; i < fp::degree(part) / static_cast<long>(d); ++i) pattern.push_back(d);
  std::sort(pattern.begin(), pattern.end());
  return pattern;
}

std::vector<fp::Poly> factors_of_degree_mod_p(const IntPolynomial& f, const Int& p, unsigned d,
                                              std::uint64_t seed) {
  fp::Poly g = checked_reduce(f, p);
  // Strip repeated factors first so the distinct-degree step sees a squarefree input.
  fp::Poly dg = fp::derivative(g, p);
  if (!dg.empty()) {
    fp::Poly common = fp::gcd(g, dg, p);
    if (fp::degree(common) > 0) fp::divmod(g, common, p, &g, nullptr);
  }
  for (const auto& [deg, part] : fp::distinct_degree(g, p))
    if (deg == d) return fp::equal_degree(part, d, p, seed);
  return {};
}

std::vector<Int> roots_mod_p(const IntPolynomial& f, const Int& p, std::uint64_t seed) {
  fp::Poly g = checked_reduce(f, p);
  std::vector<Int> roots;
  if (p == 2) {
    for (int x = 0; x < 2; ++x)
      if (fp::eval(g, Int(x), p) == 0) roots.push_back(x);
    return roots;
  }
  if (fp::degree(g) == 0) return roots;
  const fp::Poly x{Int(0), Int(1)};
  fp::Poly xp = fp::powmod(x, p, g, p);
  fp::Poly lin = fp::gcd(g, fp::sub(xp, x, p), p);
  for (const fp::Poly& fac : fp::equal_degree(lin, 1, p, seed)) roots.push_back(mod(-fac[0], p));
  std::sort(roots.begin(), roots.end());
  return roots;
}

}  // namespace qfr
