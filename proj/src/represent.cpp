#include "qfr/represent.hpp"

#include <algorithm>
#include <set>

#include "qfr/arith.hpp"
#include "qfr/contfrac.hpp"
#include "qfr/error.hpp"
#include "qfr/hilbert.hpp"

namespace qfr {

namespace {

void check_odd_prime(const Int& p) {
  if (p < 3 || !is_probable_prime(p)) throw Error(ErrorCode::kInvalidArgument, to_string(p) + " is not an odd prime");
}

// Image of v under the inverse of m: representations move this way through
// transform(f, m) = g, since g(x) = f(m x).
std::pair<Int, Int> pull_back(const UnimodularMap& m, const Int& x, const Int& y) { return m.inverse().apply(x, y); }

Representation normalized(QuadraticForm f, Int x, Int y) {
  if (x < 0 || (x == 0 && y < 0)) {
    x = -x;
    y = -y;
  }
  Int v = f(x, y);
  return Representation{std::move(f), std::move(x), std::move(y), std::move(v)};
}

// Carry a representation of f to the reduced form of its class.
Representation to_reduced(const Representation& r) {
  Reduction red = reduce_form(r.form);
  auto [x, y] = pull_back(red.map, r.x, r.y);
  return Representation{red.form, x, y, r.value};
}

Representation compose_reps(const Representation& r1, const Representation& r2) {
  Composition c = compose(r1.form, r2.form);
  const Int prods[4] = {r1.x * r2.x, r1.x * r2.y, r1.y * r2.x, r1.y * r2.y};
  Int X = 0, Y = 0;
  for (int i = 0; i < 4; ++i) {
    X += c.bilinear[0][i] * prods[i];
    Y += c.bilinear[1][i] * prods[i];
  }
  Representation out{c.form, X, Y, r1.value * r2.value};
  if (c.form(X, Y) != out.value) throw Error(ErrorCode::kInconsistent, "composition lost a representation");
  return to_reduced(out);
}

Representation scaled(const Representation& r, const Int& k) {
  return Representation{r.form, r.x * k, r.y * k, r.value * k * k};
}

// b with b^2 = delta mod 4q and b = delta mod 2, for q = p^l.
Int lifted_b(const Int& p, unsigned l, const Discriminant& d) {
  const Int q = pow(p, l);
  if (p == 2) {
    for (Int b = 1; b < 2 * q; b += 2)
      if (mod(b * b - d.delta(), 4 * q) == 0) return b;
    throw Error(ErrorCode::kNoRoot, "delta is not a square modulo a power of 2");
  }
  Int r = sqrt_mod_prime(mod(d.delta(), p), p);
  Int b = l == 1 ? std::min(r, Int(p - r)) : hensel_lift_sqrt(r, d.delta(), PrimePower(p, l));
  if (mod(b - d.delta(), 2) != 0) b += q;
  return b;
}

}  // namespace

bool is_representable(const Int& m, const Discriminant& d) {
  if (mod(m, 2) == 0) throw Error(ErrorCode::kInvalidArgument, "m must be odd");
  if (gcd(m, d.delta()) != 1) throw Error(ErrorCode::kInvalidArgument, "m must be coprime to delta");
  if (abs(m) == 1) return true;
  for (const auto& pf : factor_integer(abs(m)))
    if (jacobi_symbol(d.delta(), pf.p) != 1) return false;
  return true;
}

QuadraticForm trivial_form(const Int& p, const Discriminant& d) {
  if (p == 2) {
    if (mod(d.delta(), 8) != 1) throw Error(ErrorCode::kNotRepresentable, "2 is not split for this discriminant");
  } else {
    check_odd_prime(p);
    if (jacobi_symbol(d.delta(), p) != 1)
      throw Error(ErrorCode::kNotRepresentable, "delta is not a square modulo " + to_string(p));
  }
  Int b = lifted_b(p, 1, d);
  return QuadraticForm(p, b, (b * b - d.delta()) / (4 * p));
}

Representation represent_prime(const Int& p, const Discriminant& d) {
  QuadraticForm t = trivial_form(p, d);
  Representation r = to_reduced(Representation{t, 1, 0, p});
  return normalized(r.form, r.x, r.y);
}

FactoredInteger FactoredInteger::from_factors(std::vector<PrimeFactor> factors) {
  FactoredInteger out{1, {}};
  std::sort(factors.begin(), factors.end(), [](const PrimeFactor& a, const PrimeFactor& b) { return a.p < b.p; });
  for (auto& pf : factors) {
    if (pf.k == 0) continue;
    if (!is_probable_prime(pf.p)) throw Error(ErrorCode::kInvalidArgument, to_string(pf.p) + " is not prime");
    if (!out.factors.empty() && out.factors.back().p == pf.p)
      out.factors.back().k += pf.k;
    else
      out.factors.push_back(pf);
    out.m *= pow(pf.p, pf.k);
  }
  return out;
}

FactoredInteger FactoredInteger::factor(const Int& m) {
  if (m < 1) throw Error(ErrorCode::kInvalidArgument, "m must be positive");
  if (m == 1) return {1, {}};
  return {m, factor_integer(m)};
}

std::optional<Representation> algorithm_g(const QuadraticForm& f, const FactoredInteger& m) {
  const Discriminant d(f.delta());
  if (gcd(m.m, d.delta()) != 1) throw Error(ErrorCode::kInvalidArgument, "m must be coprime to delta");

  // Representations of the product so far, one per proper class.
  std::vector<Representation> acc{to_reduced({QuadraticForm::principal(d.delta()), 1, 0, 1})};
  auto dedupe = [](std::vector<Representation> v) {
    std::vector<Representation> out;
    std::set<std::string> seen;
    for (auto& r : v)
      if (seen.insert(class_key(r.form).to_string()).second) out.push_back(std::move(r));
    return out;
  };

  for (const auto& [p, alpha] : m.factors) {
    const int chi = kronecker_prime(d.delta(), p);
    std::vector<Representation> local;
    if (chi == -1) {
      if (alpha % 2) return std::nullopt;
      for (auto& r : acc) local.push_back(scaled(r, pow(p, alpha / 2)));
      acc = dedupe(std::move(local));
      continue;
    }
    // The reduced pair G, G^-1 representing p.
    Representation g = represent_prime(p, d);
    Representation g_inv{g.form.inverse(), g.x, -g.y, g.value};
    // G^t G^-(e-t) for each primitive part p^e of p^alpha, pure G
    // first so that a single prime reproduces represent_prime.
    std::vector<Representation> powers;
    for (unsigned j = 0; 2 * j <= alpha; ++j) {
      const unsigned e = alpha - 2 * j;
      for (unsigned t = e + 1; t-- > 0;) {
        Representation r = to_reduced({QuadraticForm::principal(d.delta()), 1, 0, 1});
        for (unsigned i = 0; i < t; ++i) r = compose_reps(r, g);
        for (unsigned i = t; i < e; ++i) r = compose_reps(r, g_inv);
        powers.push_back(scaled(r, pow(p, j)));
      }
    }
    powers = dedupe(std::move(powers));
    // Combine with the primes handled so far.
    for (const auto& a : acc)
      for (const auto& b : powers) local.push_back(compose_reps(a, b));
    acc = dedupe(std::move(local));
  }

  // Match against the class of f, properly first.
  for (bool want_proper : {true, false}) {
    for (const auto& r : acc) {
      auto eq = equivalence_map(f, r.form);
      if (!eq || eq->proper != want_proper) continue;
      // r.form(x) = f(M x).
      auto [x, y] = eq->map.apply(r.x, r.y);
      Representation out = normalized(f, x, y);
      if (out.value != m.m) throw Error(ErrorCode::kInconsistent, "algorithm G produced a wrong value");
      return out;
    }
  }
  return std::nullopt;
}

DiophantineSystem build_system(const Discriminant& d, const QuadIdeal& I, unsigned l, const PrincipalGenerator& pi) {
  const QuadraticField& K = I.field;
  if (K.discriminant() != d.delta()) throw Error(ErrorCode::kInvalidArgument, "ideal is not in the field of delta");
  if (l == 0) throw Error(ErrorCode::kInvalidArgument, "l must be positive");
  // Work with the primitive part <f, g + omega>; the content e only scales.
  const Int a = I.f;
  const QuadInt gamma{I.g, 1};
  const QuadInt sigma = K.conj(pi.pi);
  const Int n = K.norm(pi.pi);
  if (abs(n) != pow(a, l) || I.e != 1)
    throw Error(ErrorCode::kWrongGenerator, "generator norm does not match N(I)^l");

  DiophantineSystem s{l, {l, {}}, {l, {}}, form_from_ideal(I), pi.pi, d};
  Int binom = 1;
  for (unsigned i = 0; i <= l; ++i) {
    // binom(l, i) a^i gamma^(l-i) multiplies x^i y^(l-i)
    QuadInt c = K.scale(K.pow(gamma, l - i), binom * pow(a, i));
    c = K.mul(c, sigma);
    if (!mpz_divisible_p(c.u.get_mpz_t(), n.get_mpz_t()) || !mpz_divisible_p(c.v.get_mpz_t(), n.get_mpz_t()))
      throw Error(ErrorCode::kWrongGenerator, "expansion is not integral; generator does not match I^l");
    s.a1.coeffs.push_back(c.u / n);
    s.a2.coeffs.push_back(c.v / n);
    binom = binom * (l - i) / (i + 1);
  }
  return s;
}

std::vector<QuadInt> unit_orbit(const Discriminant& d) {
  const QuadraticField K = QuadraticField::of(d);
  std::vector<QuadInt> out;
  if (d.is_negative()) {
    if (d.delta() == -4 || d.delta() == -3) {
      QuadInt z{1, 0};
      const int order = d.delta() == -4 ? 4 : 6;
      for (int k = 0; k < order; ++k) {
        out.push_back(z);
        z = K.mul(z, {0, 1});
      }
    } else {
      out = {{1, 0}, {-1, 0}};
    }
    return out;
  }
  FundamentalUnit fu = fundamental_unit(d);
  QuadInt eps{fu.u, fu.v};
  QuadInt inv = K.conj(eps);
  if (fu.norm < 0) inv = {-inv.u, -inv.v};
  // eps^k for k = 0, 1, -1, 2, -2, ...; smaller exponents first.
  out.push_back({1, 0});
  QuadInt up{1, 0}, down{1, 0};
  for (int k = 1; k <= 4; ++k) {
    up = K.mul(up, eps);
    down = K.mul(down, inv);
    out.push_back(up);
    out.push_back(down);
  }
  const std::size_t n = out.size();
  for (std::size_t i = 0; i < n; ++i) out.push_back({-out[i].u, -out[i].v});
  return out;
}

std::pair<Int, Int> represent_norm_power(const Int& p, unsigned l, const Discriminant& d) {
  if (l == 0) throw Error(ErrorCode::kInvalidArgument, "l must be positive");
  if (p != 2) {
    check_odd_prime(p);
    if (jacobi_symbol(d.delta(), p) != 1) throw Error(ErrorCode::kNoRoot, "delta is not a square modulo p");
  }
  const Int q = pow(p, l);
  const Int b = lifted_b(p, l, d);
  const QuadraticForm F(q, b, (b * b - d.delta()) / (4 * q));
  const QuadraticForm q0 = QuadraticForm::principal(d.delta());
  std::vector<QuadraticForm> targets{q0};
  if (!d.is_negative()) targets.push_back(QuadraticForm(-1, -q0.b(), -q0.c()));

  const QuadraticField K = QuadraticField::of(d);
  for (const auto& t : targets) {
    auto eq = equivalence_map(F, t);
    if (!eq) continue;
    // t(x) = F(M x); x = M^-1 e1 gives t(x) = q.
    auto [u0, v0] = pull_back(eq->map, 1, 0);
    const QuadInt alpha{u0, v0};
    if (abs(K.norm(alpha)) != q) throw Error(ErrorCode::kInconsistent, "norm-form solution has the wrong norm");

    // Least |v| over the unit orbit and conjugates, then u > 0, v >= 0.
    QuadInt best = alpha;
    auto better = [](const QuadInt& a, const QuadInt& b) {
      if (abs(a.v) != abs(b.v)) return abs(a.v) < abs(b.v);
      if (abs(a.u) != abs(b.u)) return abs(a.u) < abs(b.u);
      auto pos = [](const QuadInt& z) { return (z.u > 0) + (z.v >= 0); };
      return pos(a) > pos(b);
    };
    for (const QuadInt& eta : unit_orbit(d))
      for (const QuadInt& z : {alpha, K.conj(alpha)}) {
        QuadInt c = K.mul(eta, z);
        if (better(c, best)) best = c;
      }
    return {best.u, best.v};
  }
  throw Error(ErrorCode::kNotPrincipal, to_string(p) + "^" + std::to_string(l) + " is not a norm");
}

std::vector<std::pair<Int, Int>> solve_system(const DiophantineSystem& s, const Int& u, const Int& v) {
  const QuadraticField K = QuadraticField::of(s.disc);
  const QuadInt alpha{u, v};
  const Int n = abs(K.norm(alpha));
  Int p;
  if (mpz_root(p.get_mpz_t(), n.get_mpz_t(), s.ell) == 0)
    throw Error(ErrorCode::kInvalidArgument, "N(u + v omega) is not an l-th power");

  const BivariatePoly A1 = BivariatePoly::from_homogeneous(s.a1), A2 = BivariatePoly::from_homogeneous(s.a2);
  std::set<std::pair<Int, Int>> found;
  std::vector<std::pair<Int, Int>> out;
  for (const QuadInt& eta : unit_orbit(s.disc)) {
    for (const QuadInt& z : {alpha, K.conj(alpha)}) {
      const QuadInt t = K.mul(eta, z);
      const BivariatePoly f = A1 - t.u, g = A2 - t.v;
      IntPolynomial res = resultant_y(f, g);
      if (res.is_zero()) continue;  // common factor: no isolated solutions from this pair
      for (const Int& x0 : integer_roots(res)) {
        IntPolynomial fy = f.at_x(x0), gy = g.at_x(x0);
        std::vector<Int> ys;
        if (!fy.is_zero())
          ys = integer_roots(fy);
        else if (!gy.is_zero())
          ys = integer_roots(gy);
        for (const Int& y0 : ys) {
          if (gy(y0) != 0 || fy(y0) != 0) continue;
          if (abs(s.form(x0, y0)) != p) continue;
          if (found.insert({x0, y0}).second) out.emplace_back(x0, y0);
        }
      }
    }
  }
  if (out.empty()) throw Error(ErrorCode::kNoSolution, "no integer solution over the unit orbit");
  return out;
}

Representation represent_alternative(const Int& p, const Discriminant& d, const std::optional<QuadraticForm>& target) {
  if (!d.is_fundamental()) throw Error(ErrorCode::kUnsupportedDiscriminant, "the alternative method needs a field discriminant");
  const QuadraticField K = QuadraticField::of(d);
  const QuadraticForm t = trivial_form(p, d);

  // Output form: the target, else a tabulated form of the class, else the reduced one.
  QuadraticForm out_form = reduce_form(t).form;
  if (target) {
    if (target->delta() != d.delta()) throw Error(ErrorCode::kInvalidArgument, "target form has another discriminant");
    if (!equivalence_map(*target, t)) throw Error(ErrorCode::kWrongClass, "p is not represented by the target class");
    out_form = *target;
  } else if (const auto* rec = default_table().find(d)) {
    std::optional<QuadraticForm> improper;
    bool done = false;
    for (const auto& f : rec->forms) {
      auto eq = equivalence_map(f, t);
      if (!eq) continue;
      if (eq->proper) {
        out_form = f;
        done = true;
        break;
      }
      if (!improper) improper = f;
    }
    if (!done && improper) out_form = *improper;
  }

  const QuadIdeal I = ideal_from_form(K, out_form);
  const unsigned long l = ideal_class_order(I);
  const PrincipalGenerator pi = ideal_power_principal_gen(I, l);
  const DiophantineSystem sys = build_system(d, I, static_cast<unsigned>(l), pi);
  const auto [u, v] = represent_norm_power(p, static_cast<unsigned>(l), d);

  std::vector<std::pair<Int, Int>> sols;
  try {
    sols = solve_system(sys, u, v);
  } catch (const Error& e) {
    if (e.code() == ErrorCode::kNoSolution) throw Error(ErrorCode::kWrongClass, "no solution in any orbit; wrong class");
    throw;
  }

  // The system's form may differ from out_form when I had to move along the cycle.
  const QuadraticForm& g = sys.form;
  auto eq = equivalence_map(out_form, g);
  if (!eq) throw Error(ErrorCode::kInconsistent, "ideal form left the class");
  auto carry = [&](const Int& x, const Int& y) {
    auto [X, Y] = eq->map.apply(x, y);
    return normalized(out_form, X, Y);
  };

  std::optional<Representation> negative;
  for (const auto& [x, y] : sols) {
    Representation r = carry(x, y);
    if (r.value == p) return r;
    if (!negative) negative = r;
  }
  // Only -p found: multiply by a unit of norm -1 inside the ideal.
  if (negative && !d.is_negative()) {
    FundamentalUnit fu = fundamental_unit(d);
    if (fu.norm < 0) {
      const auto& [x, y] = sols.front();
      const QuadInt z{g.a() * x + (g.b() - K.omega_trace()) / 2 * y, y};  // a x + (beta + omega) y
      const QuadInt w = K.mul(z, {fu.u, fu.v});
      const Int beta = (g.b() - K.omega_trace()) / 2;
      const Int y2 = w.v, x2 = (w.u - beta * y2) / g.a();
      Representation r = carry(x2, y2);
      if (r.value == p) return r;
    }
  }
  if (negative) return *negative;
  throw Error(ErrorCode::kWrongClass, "no representation of p found");
}

}  // namespace qfr
