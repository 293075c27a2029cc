#include "qfr/ideals.hpp"

#include <vector>

#include "qfr/contfrac.hpp"
#include "qfr/error.hpp"

namespace qfr {

QuadraticField::QuadraticField(const Int& D) : D_(D) {
  if (D_ == 0 || D_ == 1 || is_perfect_square(D_) || !is_squarefree(D_))
    throw Error(ErrorCode::kUnsupportedDiscriminant, "field needs a squarefree D != 0, 1: " + qfr::to_string(D_));
  if (mod(D_, 4) == 1) {
    tr_ = 1;
    nm_ = (1 - D_) / 4;
  } else {
    tr_ = 0;
    nm_ = -D_;
  }
}

QuadraticField QuadraticField::of(const Discriminant& d) {
  if (!d.is_fundamental())
    throw Error(ErrorCode::kUnsupportedDiscriminant,
                "ideal arithmetic needs a fundamental discriminant, got " + qfr::to_string(d.delta()));
  return QuadraticField(d.d_field());
}

QuadInt QuadraticField::mul(const QuadInt& a, const QuadInt& b) const {
  Int bd = a.v * b.v;
  return {a.u * b.u - bd * nm_, a.u * b.v + a.v * b.u + bd * tr_};
}

QuadInt QuadraticField::pow(const QuadInt& a, unsigned long n) const {
  QuadInt r{1, 0}, base = a;
  while (n) {
    if (n & 1) r = mul(r, base);
    n >>= 1;
    if (n) base = mul(base, base);
  }
  return r;
}

std::optional<QuadInt> QuadraticField::divide(const QuadInt& a, const QuadInt& b) const {
  Int n = norm(b);
  if (n == 0) throw Error(ErrorCode::kInvalidArgument, "division by zero in the quadratic field");
  QuadInt num = mul(a, conj(b));
  if (!mpz_divisible_p(num.u.get_mpz_t(), n.get_mpz_t()) || !mpz_divisible_p(num.v.get_mpz_t(), n.get_mpz_t()))
    return std::nullopt;
  return QuadInt{num.u / n, num.v / n};
}

std::string QuadraticField::to_string(const QuadInt& a) const {
  std::string out;
  if (a.u != 0) out = a.u.get_str();
  if (a.v != 0) {
    if (a.v < 0)
      out += "-";
    else if (!out.empty())
      out += "+";
    Int m = abs(a.v);
    if (m != 1) out += m.get_str();
    out += "w";
  }
  return out.empty() ? "0" : out;
}

QuadInt parse_quad_int(std::string_view text) {
  QuadInt r;
  std::string s;
  for (char c : text)
    if (c != ' ') s += c;
  if (s.empty()) throw Error(ErrorCode::kParse, "empty quadratic integer literal");
  std::size_t i = 0;
  while (i < s.size()) {
    std::size_t j = i + 1;
    while (j < s.size() && s[j] != '+' && s[j] != '-') ++j;
    std::string term = s.substr(i, j - i);
    if (!term.empty() && term.back() == 'w') {
      std::string k = term.substr(0, term.size() - 1);
      if (k.empty() || k == "+") k = "1";
      if (k == "-") k = "-1";
      r.v += parse_int(k);
    } else {
      r.u += parse_int(term);
    }
    i = j;
  }
  return r;
}

std::string QuadIdeal::literal() const { return e.get_str() + ";" + f.get_str() + ";" + g.get_str(); }

namespace {

// Hermite normal form of the Z-span of the given (u, v) vectors, read as
// <e><f, g + omega>.
QuadIdeal hnf(const QuadraticField& K, std::vector<QuadInt> vecs, const QuadInt& g1, const QuadInt& g2) {
  // Euclid on the v coordinates: collapse to one vector with v = gcd.
  QuadInt pivot{0, 0};
  std::vector<Int> pure;
  for (auto& w : vecs) {
    if (w.v == 0) {
      pure.push_back(w.u);
      continue;
    }
    if (pivot.v == 0) {
      pivot = w;
      continue;
    }
    // Combine pivot and w into (new pivot, vector with v == 0).
    Bezout b = ext_gcd(pivot.v, w.v);
    QuadInt np{b.s * pivot.u + b.t * w.u, b.g};
    Int kp = w.v / b.g, kw = pivot.v / b.g;
    pure.push_back(kp * pivot.u - kw * w.u);
    pivot = np;
  }
  Int a0 = 0;
  for (const Int& x : pure) a0 = gcd(a0, x);
  if (pivot.v == 0 || a0 == 0) throw Error(ErrorCode::kInvalidArgument, "generators span a degenerate lattice");
  if (pivot.v < 0) pivot = {-pivot.u, -pivot.v};
  const Int& e = pivot.v;
  if (!mpz_divisible_p(a0.get_mpz_t(), e.get_mpz_t()) || !mpz_divisible_p(pivot.u.get_mpz_t(), e.get_mpz_t()))
    throw Error(ErrorCode::kInconsistent, "lattice is not an ideal");
  Int f = a0 / e;
  Int g = mod(pivot.u / e, f);
  QuadIdeal I{K, e, f, g, g1, g2};
  if (!mpz_divisible_p(K.norm({g, 1}).get_mpz_t(), f.get_mpz_t()))
    throw Error(ErrorCode::kInconsistent, "lattice is not closed under multiplication by omega");
  return I;
}

QuadInt omega() { return {0, 1}; }

}  // namespace

QuadIdeal canonicalize(const QuadraticField& K, const QuadInt& a, const QuadInt& b) {
  if (a.is_zero() && b.is_zero()) throw Error(ErrorCode::kInvalidArgument, "zero ideal");
  std::vector<QuadInt> vecs{a, K.mul(a, omega()), b, K.mul(b, omega())};
  return hnf(K, vecs, a, b);
}

QuadIdeal parse_ideal(const QuadraticField& K, std::string_view literal) {
  std::vector<Int> parts;
  std::size_t start = 0;
  for (;;) {
    std::size_t sep = literal.find(';', start);
    parts.push_back(parse_int(literal.substr(start, sep == std::string_view::npos ? sep : sep - start)));
    if (sep == std::string_view::npos) break;
    start = sep + 1;
  }
  if (parts.size() != 3) throw Error(ErrorCode::kParse, "ideal literal must be e;f;g");
  const Int &e = parts[0], &f = parts[1], &g = parts[2];
  if (e <= 0 || f <= 0) throw Error(ErrorCode::kParse, "ideal literal needs positive e and f");
  QuadIdeal I = canonicalize(K, {e * f, 0}, {e * g, e});
  if (I.e != e || I.f != f || I.g != mod(g, f))
    throw Error(ErrorCode::kInvalidArgument, "e;f;g does not describe an ideal: " + std::string(literal));
  return I;
}

QuadIdeal unit_ideal(const QuadraticField& K) { return canonicalize(K, {1, 0}, {0, 1}); }

Int ideal_norm(const QuadIdeal& I) { return I.norm(); }

QuadIdeal ideal_multiply(const QuadIdeal& I, const QuadIdeal& J) {
  if (!(I.field == J.field)) throw Error(ErrorCode::kInvalidArgument, "ideals live in different fields");
  const QuadraticField& K = I.field;
  QuadInt i1{I.f, 0}, i2{I.g, 1}, j1{J.f, 0}, j2{J.g, 1};
  Int s = I.e * J.e;
  std::vector<QuadInt> vecs{K.scale(K.mul(i1, j1), s), K.scale(K.mul(i1, j2), s), K.scale(K.mul(i2, j1), s),
                            K.scale(K.mul(i2, j2), s)};
  return hnf(K, vecs, K.scale(i1, I.e), K.scale(j1, J.e));
}

QuadIdeal ideal_power(const QuadIdeal& I, unsigned long n) {
  QuadIdeal r = unit_ideal(I.field), base = I;
  while (n) {
    if (n & 1) r = ideal_multiply(r, base);
    n >>= 1;
    if (n) base = ideal_multiply(base, base);
  }
  return r;
}

QuadIdeal conjugate(const QuadIdeal& I) {
  const QuadraticField& K = I.field;
  return canonicalize(K, {I.e * I.f, 0}, K.conj({I.e * I.g, I.e}));
}

bool contains(const QuadIdeal& I, const QuadInt& x) {
  // x = s*(e f) + t*(e g + e omega)
  if (!mpz_divisible_p(x.v.get_mpz_t(), I.e.get_mpz_t())) return false;
  Int t = x.v / I.e;
  Int rest = x.u - t * I.e * I.g;
  return mpz_divisible_p(rest.get_mpz_t(), Int(I.e * I.f).get_mpz_t()) != 0;
}

QuadraticForm form_from_ideal(const QuadIdeal& I) {
  const QuadraticField& K = I.field;
  QuadInt beta{I.g, 1};
  return QuadraticForm(I.f, K.trace(beta), K.norm(beta) / I.f);
}

QuadIdeal ideal_from_form(const QuadraticField& K, const QuadraticForm& f) {
  if (f.delta() != K.discriminant())
    throw Error(ErrorCode::kInvalidArgument, "form discriminant does not match the field");
  QuadraticForm g = f;
  if (g.a() < 0) {
    if (g.delta() < 0) throw Error(ErrorCode::kInvalidArgument, "negative definite form");
    for (const auto& step : rho_cycle(reduce_form(f).form))
      if (step.form.a() > 0) {
        g = step.form;
        break;
      }
  }
  Int beta = mod((g.b() - K.omega_trace()) / 2, g.a());
  return canonicalize(K, {g.a(), 0}, {beta, 1});
}

namespace {

// Shrink a real-field generator by the fundamental unit while it helps.
QuadInt balance_by_unit(const QuadraticField& K, QuadInt pi) {
  FundamentalUnit fu = fundamental_unit(Discriminant(K.discriminant()));
  QuadInt eps{fu.u, fu.v};
  QuadInt eps_inv = K.conj(eps);
  if (fu.norm < 0) eps_inv = {-eps_inv.u, -eps_inv.v};
  auto size = [](const QuadInt& a) { return Int(abs(a.u) + abs(a.v)); };
  for (;;) {
    QuadInt up = K.mul(pi, eps), down = K.mul(pi, eps_inv);
    if (size(up) < size(pi))
      pi = up;
    else if (size(down) < size(pi))
      pi = down;
    else
      return pi;
  }
}

}  // namespace

std::optional<PrincipalGenerator> principal_generator(const QuadIdeal& I) {
  const QuadraticField& K = I.field;
  const Int delta = K.discriminant();
  QuadraticForm q = form_from_ideal(I);
  QuadraticForm q0 = QuadraticForm::principal(delta);
  std::vector<QuadraticForm> targets{q0};
  if (delta > 0) targets.push_back(QuadraticForm(-1, q0.b(), -q0.c()));
  for (const auto& t : targets) {
    auto eq = equivalence_map(q, t);
    if (!eq) continue;
    // q(M e1) = t(1, 0) = +-1, so x*(e f) + y*(e (g + omega)) has norm +-N(I).
    const Int &x = eq->map.p, &y = eq->map.r;
    QuadInt pi{I.e * (x * I.f + y * I.g), I.e * y};
    if (delta < 0) {
      if (pi.u < 0 || (pi.u == 0 && pi.v < 0)) pi = {-pi.u, -pi.v};
    } else {
      pi = balance_by_unit(K, pi);
      if (pi.u < 0 || (pi.u == 0 && pi.v < 0)) pi = {-pi.u, -pi.v};
    }
    Int n = K.norm(pi);
    if (abs(n) != I.norm()) throw Error(ErrorCode::kInconsistent, "generator norm mismatch");
    return PrincipalGenerator{pi, n};
  }
  return std::nullopt;
}

PrincipalGenerator ideal_power_principal_gen(const QuadIdeal& I, unsigned long l) {
  if (l == 0) throw Error(ErrorCode::kInvalidArgument, "exponent must be positive");
  auto g = principal_generator(ideal_power(I, l));
  if (!g) throw Error(ErrorCode::kNotPrincipal, "I^" + std::to_string(l) + " is not principal");
  return *g;
}

unsigned long ideal_class_order(const QuadIdeal& I, unsigned long max_order) {
  QuadIdeal J = I;
  for (unsigned long l = 1; l <= max_order; ++l) {
    if (principal_generator(J)) return l;
    J = ideal_multiply(J, I);
  }
  throw Error(ErrorCode::kInconsistent, "ideal class order exceeds the search limit");
}

}  // namespace qfr
