#include "qfr/forms.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "qfr/error.hpp"

namespace qfr {

Discriminant::Discriminant(Int delta) : delta_(std::move(delta)) {
  Int r = mod(delta_, 4);
  if (r != 0 && r != 1)
    throw Error(ErrorCode::kInvalidArgument, "discriminant must be 0 or 1 mod 4: " + to_string(delta_));
  if (is_perfect_square(delta_))
    throw Error(ErrorCode::kUnsupportedDiscriminant, "square discriminant " + to_string(delta_));
  d_ = (r == 1) ? delta_ : Int(delta_ / 4);
  if (!is_squarefree(d_))
    throw Error(ErrorCode::kUnsupportedDiscriminant,
                "discriminant " + to_string(delta_) + " has a non-squarefree field part");
}

Discriminant Discriminant::from_field(const Int& D) {
  return Discriminant(mod(D, 4) == 1 ? D : Int(4 * D));
}

bool Discriminant::is_fundamental() const {
  if (mod(delta_, 4) == 1) return true;
  Int r = mod(d_, 4);
  return r == 2 || r == 3;
}

QuadraticForm::QuadraticForm(Int a, Int b, Int c) : a_(std::move(a)), b_(std::move(b)), c_(std::move(c)) {
  if (gcd(gcd(a_, b_), c_) != 1)
    throw Error(ErrorCode::kInvalidArgument, "form " + to_string() + " is not primitive");
  if (is_perfect_square(delta()))
    throw Error(ErrorCode::kUnsupportedDiscriminant, "form " + to_string() + " has square discriminant");
}

QuadraticForm QuadraticForm::parse(std::string_view literal) {
  std::vector<Int> parts;
  std::size_t start = 0;
  for (;;) {
    std::size_t comma = literal.find(',', start);
    parts.push_back(parse_int(literal.substr(start, comma == std::string_view::npos ? comma : comma - start)));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  if (parts.size() != 3) throw Error(ErrorCode::kParse, "form literal must be a,b,c");
  return QuadraticForm(parts[0], parts[1], parts[2]);
}

QuadraticForm QuadraticForm::principal(const Int& delta) {
  Int b = mod(delta, 2);
  return QuadraticForm(1, b, (b - delta) / 4);
}

bool QuadraticForm::operator<(const QuadraticForm& o) const {
  if (a_ != o.a_) return a_ < o.a_;
  if (b_ != o.b_) return b_ < o.b_;
  return c_ < o.c_;
}

std::string QuadraticForm::to_string() const {
  return a_.get_str() + "," + b_.get_str() + "," + c_.get_str();
}

std::string QuadraticForm::pretty() const {
  std::ostringstream os;
  auto term = [&](const Int& k, const char* mono, bool first) {
    if (k == 0) return first;
    if (first) {
      if (k < 0) os << "-";
    } else {
      os << (k < 0 ? " - " : " + ");
    }
    if (abs(k) != 1) os << Int(abs(k)).get_str();
    os << mono;
    return false;
  };
  bool first = term(a_, "x^2", true);
  first = term(b_, "xy", first);
  first = term(c_, "y^2", first);
  return first ? "0" : os.str();
}

UnimodularMap UnimodularMap::operator*(const UnimodularMap& o) const {
  return {p * o.p + q * o.r, p * o.q + q * o.s, r * o.p + s * o.r, r * o.q + s * o.s};
}

UnimodularMap UnimodularMap::inverse() const {
  Int d = det();
  // det is +-1, so dividing by it is multiplying by it.
  return {s * d, -q * d, -r * d, p * d};
}

std::pair<Int, Int> UnimodularMap::apply(const Int& x, const Int& y) const {
  return {p * x + q * y, r * x + s * y};
}

Discriminant discriminant_of(const QuadraticForm& f) { return Discriminant(f.delta()); }

// Forms reached by unimodular substitution stay primitive with the same
// discriminant, so the checks in the public constructor can be skipped.
struct FormAccess {
  static QuadraticForm make(Int a, Int b, Int c) {
    return QuadraticForm(std::move(a), std::move(b), std::move(c), QuadraticForm::Unchecked{});
  }
};

QuadraticForm transform(const QuadraticForm& f, const UnimodularMap& m) {
  const Int &a = f.a(), &b = f.b(), &c = f.c();
  Int A = a * m.p * m.p + b * m.p * m.r + c * m.r * m.r;
  Int B = 2 * a * m.p * m.q + b * (m.p * m.s + m.q * m.r) + 2 * c * m.r * m.s;
  Int C = a * m.q * m.q + b * m.q * m.s + c * m.s * m.s;
  return FormAccess::make(std::move(A), std::move(B), std::move(C));
}

Int evaluate(const QuadraticForm& f, const Int& x, const Int& y) { return f(x, y); }

namespace {

const UnimodularMap kSwap{0, -1, 1, 0};

UnimodularMap translation(const Int& k) { return {1, k, 0, 1}; }

// Translate so that b lands in the indefinite normalization window for a.
Reduction normalize_indefinite(const QuadraticForm& f, const Int& s) {
  Int aa = abs(f.a());
  Int two_a = 2 * aa;
  Int target = (aa > s) ? Int(aa - mod(aa - f.b(), two_a)) : Int(s - mod(s - f.b(), two_a));
  Int k = (target - f.b()) / (2 * f.a());
  UnimodularMap t = translation(k);
  return {transform(f, t), t};
}

bool is_reduced_indefinite(const QuadraticForm& f, const Int& s) {
  Int a2 = 2 * abs(f.a());
  return f.b() > 0 && f.b() <= s && a2 + f.b() > s && a2 - f.b() <= s;
}

Reduction rho_with(const QuadraticForm& f, const Int& s) {
  QuadraticForm swapped = transform(f, kSwap);
  Reduction n = normalize_indefinite(swapped, s);
  return {n.form, kSwap * n.map};
}

Reduction reduce_definite(const QuadraticForm& f) {
  if (f.a() < 0) throw Error(ErrorCode::kInvalidArgument, "negative definite form " + f.to_string());
  QuadraticForm g = f;
  UnimodularMap m;
  for (;;) {
    Int target = g.a() - mod(g.a() - g.b(), 2 * g.a());
    if (target != g.b()) {
      UnimodularMap t = translation((target - g.b()) / (2 * g.a()));
      g = transform(g, t);
      m = m * t;
    }
    if (g.a() > g.c() || (g.a() == g.c() && g.b() < 0)) {
      g = transform(g, kSwap);
      m = m * kSwap;
      continue;
    }
    return {g, m};
  }
}

Reduction reduce_indefinite(const QuadraticForm& f) {
  const Int s = isqrt(f.delta());
  Reduction r = normalize_indefinite(f, s);
  while (!is_reduced_indefinite(r.form, s)) {
    Reduction step = rho_with(r.form, s);
    r = {step.form, r.map * step.map};
  }
  return r;
}

// Ordering used to pick a cycle representative: positive a first, then small |a|.
bool cycle_less(const QuadraticForm& x, const QuadraticForm& y) {
  bool xn = x.a() < 0, yn = y.a() < 0;
  if (xn != yn) return !xn;
  Int ax = abs(x.a()), ay = abs(y.a());
  if (ax != ay) return ax < ay;
  if (x.b() != y.b()) return x.b() < y.b();
  return x.c() < y.c();
}

}  // namespace

bool is_reduced(const QuadraticForm& f) {
  Int d = f.delta();
  if (d < 0) {
    if (f.a() <= 0) return false;
    Int ab = abs(f.b());
    if (!(ab <= f.a() && f.a() <= f.c())) return false;
    if ((ab == f.a() || f.a() == f.c()) && f.b() < 0) return false;
    return true;
  }
  return is_reduced_indefinite(f, isqrt(d));
}

Reduction reduce_form(const QuadraticForm& f) {
  return f.delta() < 0 ? reduce_definite(f) : reduce_indefinite(f);
}

Reduction rho(const QuadraticForm& f) {
  if (f.delta() < 0) throw Error(ErrorCode::kInvalidArgument, "rho is defined for indefinite forms");
  return rho_with(f, isqrt(f.delta()));
}

std::vector<Reduction> rho_cycle(const QuadraticForm& start) {
  const Int s = isqrt(start.delta());
  if (start.delta() < 0 || !is_reduced_indefinite(start, s))
    throw Error(ErrorCode::kInvalidArgument, "rho_cycle needs a reduced indefinite form");
  std::vector<Reduction> out{{start, UnimodularMap::identity()}};
  for (;;) {
    Reduction step = rho_with(out.back().form, s);
    if (step.form == start) break;
    out.push_back({step.form, out.back().map * step.map});
  }
  return out;
}

Composition compose(const QuadraticForm& f1, const QuadraticForm& f2) {
  const Int delta = f1.delta();
  if (delta != f2.delta()) throw Error(ErrorCode::kInvalidArgument, "composition needs equal discriminants");
  const Int &a1 = f1.a(), &b1 = f1.b(), &a2 = f2.a(), &b2 = f2.b();
  const Int beta = (b1 + b2) / 2;
  Bezout e1 = ext_gcd(a1, a2);
  Bezout e2 = ext_gcd(e1.g, beta);
  const Int& n = e2.g;
  const Int t = e2.s * e1.s, u = e2.s * e1.t, v = e2.t;
  Int B = (a1 * b2 * t + u * a2 * b1 + v * (b1 * b2 + delta) / 2) / n;
  Int a3 = a1 * a2 / (n * n);
  // Keep B small; the class is unchanged by B -> B + 2 a3 k.
  Int a3abs = abs(a3);
  Int Bn = a3abs - mod(a3abs - B, 2 * a3abs);
  Int c3 = (Bn * Bn - delta) / (4 * a3);

  Composition out{FormAccess::make(a3, Bn, c3), {}};
  out.bilinear[0] = {n, (b2 - Bn) * n / (2 * a2), (b1 - Bn) * n / (2 * a1),
                     (b1 * b2 + delta - Bn * (b1 + b2)) * n / (4 * a1 * a2)};
  out.bilinear[1] = {Int(0), a1 / n, a2 / n, (b1 + b2) / (2 * n)};
  return out;
}

QuadraticForm compose_reduced(const QuadraticForm& f1, const QuadraticForm& f2) {
  return reduce_form(compose(f1, f2).form).form;
}

QuadraticForm power_reduced(const QuadraticForm& f, unsigned long n) {
  QuadraticForm result = reduce_form(QuadraticForm::principal(f.delta())).form;
  QuadraticForm base = reduce_form(f).form;
  while (n > 0) {
    if (n & 1) result = compose_reduced(result, base);
    n >>= 1;
    if (n) base = compose_reduced(base, base);
  }
  return result;
}

QuadraticForm class_key(const QuadraticForm& f) {
  Reduction r = reduce_form(f);
  if (f.delta() < 0) return r.form;
  QuadraticForm best = r.form;
  for (const auto& step : rho_cycle(r.form))
    if (cycle_less(step.form, best)) best = step.form;
  return best;
}

std::vector<QuadraticForm> enumerate_classes(const Discriminant& d) {
  const Int& delta = d.delta();
  std::vector<QuadraticForm> out;
  if (delta < 0) {
    const Int n = -delta;
    for (Int a = 1; 3 * a * a <= n; ++a) {
      for (Int b = -a + 1; b <= a; ++b) {
        if (mod(b - delta, 2) != 0) continue;
        Int num = b * b - delta;
        if (!mpz_divisible_p(num.get_mpz_t(), Int(4 * a).get_mpz_t())) continue;
        Int c = num / (4 * a);
        if (c < a) continue;
        if ((abs(b) == a || a == c) && b < 0) continue;
        if (gcd(gcd(a, b), c) != 1) continue;
        out.push_back(FormAccess::make(a, b, c));
      }
    }
    std::sort(out.begin(), out.end(), [](const QuadraticForm& x, const QuadraticForm& y) {
      if (x.a() != y.a()) return x.a() < y.a();
      if (abs(x.b()) != abs(y.b())) return abs(x.b()) < abs(y.b());
      return x.b() > y.b();
    });
    return out;
  }

  const Int s = isqrt(delta);
  std::set<QuadraticForm> reduced;
  for (Int b = 1; b <= s; ++b) {
    if (mod(b - delta, 2) != 0) continue;
    Int N = (delta - b * b) / 4;  // a*c = -N
    Int lo = ceil_div(s - b + 1, 2), hi = floor_div(s + b, 2);
    if (lo < 1) lo = 1;
    for (Int aa = lo; aa <= hi; ++aa) {
      if (!mpz_divisible_p(N.get_mpz_t(), aa.get_mpz_t())) continue;
      for (int sg : {1, -1}) {
        Int a = sg * aa;
        Int c = -N / a;
        if (gcd(gcd(a, b), c) != 1) continue;
        QuadraticForm f = FormAccess::make(a, b, c);
        if (is_reduced_indefinite(f, s)) reduced.insert(f);
      }
    }
  }
  const QuadraticForm principal_key = class_key(QuadraticForm::principal(delta));
  while (!reduced.empty()) {
    QuadraticForm start = *reduced.begin();
    QuadraticForm best = start;
    for (const auto& step : rho_cycle(start)) {
      reduced.erase(step.form);
      if (cycle_less(step.form, best)) best = step.form;
    }
    out.push_back(best);
  }
  std::sort(out.begin(), out.end(), cycle_less);
  auto it = std::find(out.begin(), out.end(), principal_key);
  if (it != out.end()) std::rotate(out.begin(), it, it + 1);
  return out;
}

std::size_t class_number(const Discriminant& d) { return enumerate_classes(d).size(); }

std::optional<Equivalence> proper_equivalence(const QuadraticForm& f, const QuadraticForm& g) {
  if (f.delta() != g.delta()) return std::nullopt;
  Reduction rf = reduce_form(f), rg = reduce_form(g);
  if (f.delta() < 0) {
    if (rf.form != rg.form) return std::nullopt;
    return Equivalence{rf.map * rg.map.inverse(), true};
  }
  for (const auto& step : rho_cycle(rf.form))
    if (step.form == rg.form) return Equivalence{rf.map * step.map * rg.map.inverse(), true};
  return std::nullopt;
}

std::optional<Equivalence> equivalence_map(const QuadraticForm& f, const QuadraticForm& g) {
  if (auto e = proper_equivalence(f, g)) return e;
  const UnimodularMap flip{1, 0, 0, -1};
  if (auto e = proper_equivalence(f, g.inverse())) return Equivalence{e->map * flip, false};
  return std::nullopt;
}

}  // namespace qfr
