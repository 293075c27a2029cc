#include "qfr/contfrac.hpp"

#include <map>
#include <set>

#include "qfr/error.hpp"

namespace qfr {

CFExpansion cf_sqrt_quadratic(const Int& P_in, const Int& Q_in, const Int& N_in) {
  if (N_in <= 0 || is_perfect_square(N_in))
    throw Error(ErrorCode::kInvalidArgument, "cf_sqrt_quadratic needs a positive nonsquare N");
  if (Q_in == 0) throw Error(ErrorCode::kInvalidArgument, "cf_sqrt_quadratic: Q must be nonzero");
  Int P = P_in, Q = Q_in, N = N_in;
  if (!mpz_divisible_p(Int(N - P * P).get_mpz_t(), Q.get_mpz_t())) {
    Int q_abs = abs(Q);
    P *= q_abs;
    N *= Q * Q;
    Q *= q_abs;
  }
  const Int s = isqrt(N);
  std::map<std::pair<Int, Int>, std::size_t> seen;
  std::vector<Int> terms;
  for (;;) {
    auto key = std::make_pair(P, Q);
    auto [it, fresh] = seen.emplace(key, terms.size());
    if (!fresh) {
      CFExpansion out;
      out.preperiod.assign(terms.begin(), terms.begin() + it->second);
      out.period.assign(terms.begin() + it->second, terms.end());
      return out;
    }
    Int a = Q > 0 ? floor_div(P + s, Q) : Int(-floor_div(P + s, -Q) - 1);
    terms.push_back(a);
    P = a * Q - P;
    Q = (N - P * P) / Q;
  }
}

std::size_t class_cycle_period(const QuadraticForm& f) {
  Int delta = f.delta();
  if (delta < 0) throw Error(ErrorCode::kInvalidArgument, "class_cycle_period needs a positive discriminant");
  Int P = f.a() > 0 ? Int(-f.b()) : f.b();
  return cf_sqrt_quadratic(P, 2 * abs(f.a()), delta).period_length();
}

namespace {

// Expansion of the principal root: sqrt(delta/4) or (-1 + sqrt(delta))/2.
struct PrincipalRoot {
  CFExpansion cf;
  Int b0;         // middle coefficient of the principal form
  Int c0;         // its last coefficient
};

PrincipalRoot principal_root(const Int& delta) {
  PrincipalRoot r;
  r.b0 = mod(delta, 2);
  r.c0 = (r.b0 - delta) / 4;
  r.cf = r.b0 == 0 ? cf_sqrt_quadratic(0, 1, delta / 4) : cf_sqrt_quadratic(-1, 2, delta);
  return r;
}

const Int& term_at(const CFExpansion& cf, std::size_t k) {
  if (k < cf.preperiod.size()) return cf.preperiod[k];
  return cf.period[(k - cf.preperiod.size()) % cf.period.size()];
}

// Convergents p_k/q_k for k = 0..count-1.
std::vector<std::pair<Int, Int>> convergents(const CFExpansion& cf, std::size_t count) {
  std::vector<std::pair<Int, Int>> out;
  Int p_prev = 1, q_prev = 0, p = term_at(cf, 0), q = 1;
  out.emplace_back(p, q);
  for (std::size_t k = 1; k < count; ++k) {
    const Int& a = term_at(cf, k);
    Int pn = a * p + p_prev, qn = a * q + q_prev;
    p_prev = p;
    q_prev = q;
    p = pn;
    q = qn;
    out.emplace_back(p, q);
  }
  return out;
}

Int principal_value(const PrincipalRoot& r, const Int& x, const Int& y) {
  return x * x + r.b0 * x * y + r.c0 * y * y;
}

}  // namespace

SSequence s_sequence(const Discriminant& d) {
  if (d.is_negative()) throw Error(ErrorCode::kInvalidArgument, "s_sequence needs a positive discriminant");
  PrincipalRoot root = principal_root(d.delta());
  const std::size_t T = root.cf.period_length();
  const std::size_t pre = root.cf.preperiod.size();
  SSequence out;
  out.period = T;
  out.unit_norm_negative = (T % 2 == 1);
  const std::size_t count = out.unit_norm_negative ? 2 * T : T;
  for (const auto& [p, q] : convergents(root.cf, pre - 1 + count))
    out.values.push_back(principal_value(root, p, q));
  out.values.erase(out.values.begin(), out.values.begin() + (pre - 1));

  Int unit = out.values[T - 1];
  if (unit != (out.unit_norm_negative ? -1 : 1))
    throw Error(ErrorCode::kInconsistent, "S-sequence does not end its period with a unit");
  for (const Int& v : out.values)
    if (v * v >= 4 * d.delta()) throw Error(ErrorCode::kInconsistent, "S-sequence value exceeds 2 sqrt(delta)");
  return out;
}

FundamentalUnit fundamental_unit(const Discriminant& d) {
  if (d.is_negative()) throw Error(ErrorCode::kInvalidArgument, "fundamental_unit needs a positive discriminant");
  PrincipalRoot root = principal_root(d.delta());
  const std::size_t T = root.cf.period_length();
  const std::size_t k = root.cf.preperiod.size() + T - 2;
  auto conv = convergents(root.cf, k + 1);
  const auto& [p, q] = conv.back();
  FundamentalUnit u{p, q, 0, T};
  Int n = principal_value(root, p, q);
  if (n != 1 && n != -1) throw Error(ErrorCode::kInconsistent, "convergent at the period end is not a unit");
  u.norm = n.get_si();
  return u;
}

PellUnit pell_unit(const Int& D) {
  CFExpansion cf = cf_sqrt_quadratic(0, 1, D);
  const std::size_t T = cf.period_length();
  auto conv = convergents(cf, T);
  const auto& [p, q] = conv.back();
  Int n = p * p - D * q * q;
  return {p, q, static_cast<int>(n.get_si()), T};
}

bool is_principal_cf(const QuadraticForm& f) {
  if (f.delta() < 0) throw Error(ErrorCode::kInvalidArgument, "is_principal_cf needs a positive discriminant");
  SSequence s = s_sequence(Discriminant(f.delta()));
  std::set<Int> values(s.values.begin(), s.values.end());
  for (const auto& step : rho_cycle(reduce_form(f).form))
    if (values.count(step.form.a()) || values.count(step.form.c())) return true;
  return false;
}

}  // namespace qfr
