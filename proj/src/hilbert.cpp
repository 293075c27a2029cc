#include "qfr/hilbert.hpp"

#include <omp.h>

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <mutex>

#include <json.hpp>

#include "jfunc.hpp"
#include "qfr/arith.hpp"
#include "qfr/error.hpp"

#ifndef QFR_DEFAULT_DATA_DIR
#define QFR_DEFAULT_DATA_DIR "data"
#endif

namespace qfr {

namespace {

using nlohmann::json;

// Largest allowed distance of a rounded coefficient from the computed value.
constexpr double kCoeffTolerance = 1e-6;
constexpr int kMaxEscalations = 3;

Int int_of(const json& v) {
  if (v.is_string()) return parse_int(v.get<std::string>());
  if (v.is_number_integer()) return Int(v.get<long>());
  throw Error(ErrorCode::kParse, "expected an integer in the table data");
}

std::vector<Int> ints_of(const json& arr) {
  std::vector<Int> out;
  for (const auto& v : arr) out.push_back(int_of(v));
  return out;
}

HomogeneousPoly hom_of(const json& arr) {
  HomogeneousPoly h;
  h.coeffs = ints_of(arr);
  h.degree = static_cast<unsigned>(h.coeffs.size() - 1);
  return h;
}

HilbertPolyRecord parse_record(const json& r) {
  HilbertPolyRecord rec;
  rec.D = int_of(r.at("D"));
  rec.delta = int_of(r.at("delta"));
  rec.h = r.at("h").get<unsigned>();
  rec.omega = r.value("omega", "");
  for (const auto& f : r.at("forms")) rec.forms.emplace_back(int_of(f[0]), int_of(f[1]), int_of(f[2]));
  for (const auto& i : r.at("ideals")) rec.ideals.push_back(i.get<std::string>());
  if (r.contains("hilbert_coeffs")) rec.poly = IntPolynomial(ints_of(r.at("hilbert_coeffs")));
  if (r.contains("hilbert_coeffs_over_k")) {
    for (const auto& c : r.at("hilbert_coeffs_over_k")) rec.poly_over_k.emplace_back(int_of(c[0]), int_of(c[1]));
    // h * conj(h): the sqrt(D) parts cancel.
    const std::size_t n = rec.poly_over_k.size();
    std::vector<Int> prod(2 * n - 1, Int(0));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t k = 0; k < n; ++k) {
        const auto& [s1, t1] = rec.poly_over_k[i];
        const auto& [s2, t2] = rec.poly_over_k[k];
        prod[i + k] += s1 * s2 - rec.D * t1 * t2;
      }
    rec.poly = IntPolynomial(prod);
  }
  if (r.contains("pi_a")) rec.pi_a = parse_quad_int(r.at("pi_a").get<std::string>());
  rec.ell = r.value("ell", 0u);
  if (r.contains("system")) {
    rec.sys_u = hom_of(r.at("system").at("u_poly"));
    rec.sys_v = hom_of(r.at("system").at("v_poly"));
  }
  if (r.contains("j")) rec.j = int_of(r.at("j"));
  rec.curve = r.value("curve", "");
  if (r.contains("unit")) {
    auto u = ints_of(r.at("unit"));
    rec.unit = QuadInt{u.at(0), u.at(1)};
  }

  for (const auto& f : rec.forms)
    if (f.delta() != rec.delta) throw Error(ErrorCode::kInconsistent, "table form " + f.to_string() + " has the wrong discriminant");
  const long want = rec.delta < 0 ? static_cast<long>(rec.h) : 2 * static_cast<long>(rec.h);
  if (rec.poly.degree() != want)
    throw Error(ErrorCode::kInconsistent, "table polynomial for D=" + to_string(rec.D) + " has the wrong degree");
  return rec;
}

}  // namespace

HilbertTable HilbertTable::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kInvalidArgument, "cannot open table data " + path);
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::exception& e) {
    throw Error(ErrorCode::kParse, std::string("table data: ") + e.what());
  }
  HilbertTable t;
  for (const auto& r : doc.at("records")) t.records_.push_back(parse_record(r));
  return t;
}

const HilbertPolyRecord* HilbertTable::find(const Discriminant& d) const {
  for (const auto& r : records_)
    if (r.delta == d.delta()) return &r;
  return nullptr;
}

const HilbertPolyRecord& HilbertTable::lookup(const Discriminant& d) const {
  if (const auto* r = find(d)) return *r;
  throw Error(ErrorCode::kNotInTable, "discriminant " + to_string(d.delta()) + " is not tabulated");
}

std::string default_data_path() {
  if (const char* env = std::getenv("QFR_DATA"); env && *env) return env;
  return std::string(QFR_DEFAULT_DATA_DIR) + "/hilbert_tables.json";
}

const HilbertTable& default_table() {
  static const HilbertTable table = HilbertTable::load(default_data_path());
  return table;
}

IntPolynomial compute_class_poly(const Discriminant& d, long digits, bool parallel) {
  if (!d.is_negative()) throw Error(ErrorCode::kInvalidArgument, "class polynomials are computed for delta < 0 only");
  const std::vector<QuadraticForm> forms = enumerate_classes(d);
  const double root = M_PI * std::sqrt(std::abs(d.delta().get_d())) / std::log(10.0);
  if (digits <= 0) {
    digits = 20;
    for (const auto& f : forms) digits += static_cast<long>(std::ceil(root / f.a().get_d()));
  }

  for (int attempt = 0; attempt <= kMaxEscalations; ++attempt, digits *= 2) {
    const long n = static_cast<long>(forms.size());
    std::vector<mp::Complex> js(n, mp::Complex(mp::bits_for_digits(digits)));
#pragma omp parallel for schedule(dynamic) if (parallel)
    for (long i = 0; i < n; ++i) js[i] = detail::j_of_form(forms[i], digits);

    const mpfr_prec_t prec = js.front().re.prec();
    // Coefficients ascending; start from the constant 1.
    std::vector<mp::Complex> c{mp::Complex{mp::Real(prec, 1), mp::Real(prec)}};
    for (const auto& j : js) {
      std::vector<mp::Complex> next(c.size() + 1, mp::Complex(prec));
      for (std::size_t k = 0; k < c.size(); ++k) {
        next[k + 1] = next[k + 1] + c[k];
        next[k] = next[k] - c[k] * j;
      }
      c = std::move(next);
    }

    std::vector<Int> out;
    bool ok = true;
    for (const auto& z : c) {
      Int r = z.re.round_to_int();
      mp::Real dr = z.re - mp::from_int(prec, r);
      if (std::hypot(dr.to_double(), z.im.to_double()) >= kCoeffTolerance) ok = false;
      out.push_back(r);
    }
    if (ok) return IntPolynomial(out);
  }
  throw Error(ErrorCode::kPrecision, "class polynomial coefficients did not round cleanly");
}

SplitResult hilbert_split_test(const IntPolynomial& h, const Int& p) {
  SplitResult res;
  fp::Poly f = fp::reduce(h, p);
  if (fp::degree(f) != h.degree() || !fp::is_squarefree(f, p)) {
    res.ramified = true;
    return res;
  }
  res.pattern = factor_degree_pattern_mod_p(h, p);
  // gcd(h, x^p - x) collects the linear factors.
  fp::Poly x{Int(0), Int(1)};
  fp::Poly xp = fp::sub(fp::powmod(x, p, f, p), x, p);
  fp::Poly g = fp::gcd(f, xp, p);
  res.fully_splits = fp::degree(g) == h.degree();
  return res;
}

std::string ClassLabel::to_string() const {
  switch (kind) {
    case Kind::kPrincipal: return "principal";
    case Kind::kSelfReciprocalNonPrincipal: return "self-reciprocal-non-principal";
    case Kind::kReciprocalPair: return "reciprocal-pair(" + signature_string(signature) + ")";
    case Kind::kGenusOnly: return "genus-only(" + signature_string(signature) + ")";
  }
  return "";
}

IntPolynomial class_polynomial(const Discriminant& d) {
  if (const auto* r = default_table().find(d)) return r->poly;
  if (!d.is_negative()) throw Error(ErrorCode::kNotInTable, "no class polynomial for delta " + to_string(d.delta()));
  return compute_class_poly(d);
}

namespace {

// Order of the class of a prime ideal above p, from the forms themselves.
unsigned long class_order_by_forms(const Int& p, const Discriminant& d) {
  Int b = sqrt_mod_prime(mod(d.delta(), p), p);
  if (mod(b - d.delta(), 2) != 0) b += p;
  QuadraticForm f(p, b, (b * b - d.delta()) / (4 * p));
  const QuadraticForm one = class_key(QuadraticForm::principal(d.delta()));
  QuadraticForm acc = reduce_form(f).form;
  for (unsigned long k = 1; k <= 10000; ++k) {
    if (class_key(acc) == one) return k;
    acc = compose_reduced(acc, f);
  }
  throw Error(ErrorCode::kInconsistent, "class order search exhausted");
}

}  // namespace

ClassLabel classify_prime(const Int& p, const Discriminant& d) {
  if (p < 3 || !is_probable_prime(p)) throw Error(ErrorCode::kInvalidArgument, "classify_prime needs an odd prime");
  if (gcd(p, 2 * d.delta()) != 1) throw Error(ErrorCode::kNotRepresentable, "p divides 2*delta");
  if (jacobi_symbol(d.delta(), p) != 1) throw Error(ErrorCode::kNotRepresentable, "delta is not a square modulo p");

  const HilbertPolyRecord* rec = default_table().find(d);
  const std::size_t h = rec ? rec->h : class_number(d);
  if (h != 1 && h != 2 && h != 3 && h != 4 && h != 6)
    throw Error(ErrorCode::kUnsupported, "characters and splitting do not separate classes for h = " + std::to_string(h));

  unsigned long order = 1;
  if (h > 1) {
    IntPolynomial H = rec ? rec->poly : IntPolynomial();
    if (!rec) {
      if (!d.is_negative()) throw Error(ErrorCode::kNotInTable, "real discriminant without tabulated H_K");
      H = compute_class_poly(d);
    }
    SplitResult s = hilbert_split_test(H, p);
    if (s.ramified) {
      order = class_order_by_forms(p, d);
    } else {
      order = 0;
      for (unsigned deg : s.pattern) order = std::max<unsigned long>(order, deg);
    }
  }

  ClassLabel label;
  label.signature = signature_of_int(p, d);
  const std::size_t genera = character_system(d).genus_count();
  if (order == 1) {
    for (int v : label.signature)
      if (v != 1) throw Error(ErrorCode::kInconsistent, "principal prime outside the principal genus");
    label.kind = ClassLabel::Kind::kPrincipal;
  } else if (genera == h) {
    label.kind = ClassLabel::Kind::kGenusOnly;
  } else if (order == 2) {
    label.kind = ClassLabel::Kind::kSelfReciprocalNonPrincipal;
  } else {
    label.kind = ClassLabel::Kind::kReciprocalPair;
  }
  return label;
}

namespace {

// Prime factors of n by trial division up to bound; nullopt if a composite
// cofactor is left over.
std::optional<std::vector<Int>> trial_primes(Int n, unsigned long bound) {
  std::vector<Int> out;
  n = abs(n);
  for (unsigned long q = 2; q <= bound && Int(q) * q <= n; ++q) {
    if (n % q != 0) continue;
    out.push_back(q);
    while (n % q == 0) n /= q;
  }
  if (n > 1) {
    if (!is_probable_prime(n)) return std::nullopt;
    out.push_back(n);
  }
  return out;
}

}  // namespace

std::optional<bool> is_principal_via_hilbert(const QuadraticForm& f, unsigned long trial_bound) {
  Discriminant d(f.delta());
  if (d.is_negative()) throw Error(ErrorCode::kInvalidArgument, "is_principal_via_hilbert needs delta > 0");
  const IntPolynomial& H = default_table().lookup(d).poly;

  bool indeterminate = false;
  for (const auto& step : rho_cycle(reduce_form(f).form)) {
    auto primes = trial_primes(lcm(abs(step.form.a()), abs(step.form.c())), trial_bound);
    if (!primes) {
      indeterminate = true;
      continue;
    }
    bool all = true;
    for (const Int& q : *primes) {
      if (q == 2) {
        // Tiny field: count roots directly.
        fp::Poly h2 = fp::reduce(H, q);
        all = fp::is_squarefree(h2, q) && roots_mod_p(H, q).size() == static_cast<std::size_t>(H.degree());
      } else {
        all = hilbert_split_test(H, q).fully_splits;
      }
      if (!all) break;
    }
    if (all) return true;
  }
  if (indeterminate) return std::nullopt;
  return false;
}

}  // namespace qfr
