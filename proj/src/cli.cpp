#include "qfr/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <functional>
#include <map>
#include <optional>
#include <sstream>

#include "qfr/arith.hpp"
#include "qfr/contfrac.hpp"
#include "qfr/elliptic.hpp"
#include "qfr/error.hpp"
#include "qfr/forms.hpp"
#include "qfr/genus.hpp"
#include "qfr/hilbert.hpp"
#include "qfr/ideals.hpp"
#include "qfr/represent.hpp"

namespace qfr::cli {

namespace {

using nlohmann::json;

// Negative answers that are facts about the input rather than mistakes in it.
bool is_failure(ErrorCode c) {
  switch (c) {
    case ErrorCode::kNoRoot:
    case ErrorCode::kNotRepresentable:
    case ErrorCode::kNoSolution:
    case ErrorCode::kWrongClass:
    case ErrorCode::kNotPrincipal: return true;
    default: return false;
  }
}

json num(const Int& n) { return to_string(n); }

json form_json(const QuadraticForm& f) { return json::array({num(f.a()), num(f.b()), num(f.c())}); }

json ints_json(const std::vector<Int>& v) {
  json a = json::array();
  for (const auto& x : v) a.push_back(num(x));
  return a;
}

json map_json(const UnimodularMap& m) {
  return json::array({json::array({num(m.p), num(m.q)}), json::array({num(m.r), num(m.s)})});
}

json rep_json(const Representation& r, const std::string& method) {
  return {{"form", form_json(r.form)}, {"x", num(r.x)}, {"y", num(r.y)}, {"value", num(r.value)}, {"method", method}};
}

// Human-readable rendering: one "key: value" line per field, strings unquoted.
std::string flat(const json& v) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_array()) {
    std::string s = "[";
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + flat(v[i]);
    return s + "]";
  }
  if (v.is_object()) {
    std::string s = "{";
    bool first = true;
    for (auto it = v.begin(); it != v.end(); ++it, first = false) s += (first ? "" : ", ") + it.key() + ": " + flat(it.value());
    return s + "}";
  }
  return v.dump();
}

void print(const json& payload, bool as_json, std::ostream& out) {
  if (as_json) {
    out << payload.dump() << "\n";
    return;
  }
  for (auto it = payload.begin(); it != payload.end(); ++it) out << it.key() << ": " << flat(it.value()) << "\n";
}

Discriminant disc_of(const std::string& s) { return Discriminant(parse_int(s)); }

std::vector<PrimeFactor> parse_factors(const std::string& s) {
  // "3^2,5,7^3"
  std::vector<PrimeFactor> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    auto caret = item.find('^');
    Int p = parse_int(item.substr(0, caret));
    unsigned k = 1;
    if (caret != std::string::npos) k = static_cast<unsigned>(std::stoul(item.substr(caret + 1)));
    out.push_back({p, k});
  }
  return out;
}

struct Options {
  std::string form, form2, disc, prime, m, factors, curve, ideal, method = "gauss", j, n, u, v, count_method = "auto";
  unsigned power = 0;
  long digits = 0;
};

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Binary quadratic forms, class polynomials and prime representation"};
  app.require_subcommand(1);
  app.fallthrough();
  bool as_json = false;
  std::uint64_t seed = kDefaultSeed;
  app.add_flag("--json", as_json, "emit a single JSON document");
  app.add_option("--seed", seed, "seed for randomized backends");
  Options o;

  std::map<std::string, std::function<json()>> handlers;
  auto sub = [&](const std::string& name, const std::string& help, std::function<json()> fn) {
    handlers[name] = std::move(fn);
    return app.add_subcommand(name, help);
  };

  auto* reduce = sub("reduce", "reduce a form", [&] {
    Reduction r = reduce_form(QuadraticForm::parse(o.form));
    return json{{"form", form_json(r.form)}, {"map", map_json(r.map)}};
  });
  reduce->add_option("--form", o.form, "a,b,c")->required();

  auto* compose_cmd = sub("compose", "compose two forms", [&] {
    Composition c = compose(QuadraticForm::parse(o.form), QuadraticForm::parse(o.form2));
    json bil = json::array();
    for (const auto& row : c.bilinear) bil.push_back(ints_json({row.begin(), row.end()}));
    return json{{"form", form_json(c.form)}, {"bilinear", bil}, {"reduced", form_json(reduce_form(c.form).form)}};
  });
  compose_cmd->add_option("--form", o.form, "first form")->required();
  compose_cmd->add_option("--with", o.form2, "second form")->required();

  auto* classgroup = sub("classgroup", "reduced representatives of the class group", [&] {
    Discriminant d = disc_of(o.disc);
    json forms = json::array();
    for (const auto& f : enumerate_classes(d)) forms.push_back(form_json(f));
    return json{{"delta", num(d.delta())}, {"h", forms.size()}, {"forms", forms}};
  });
  classgroup->add_option("--disc", o.disc, "discriminant")->required();

  auto* genus = sub("genus", "genus characters and partition", [&] {
    Discriminant d = disc_of(o.disc);
    CharacterSystem cs = character_system(d);
    json genera = json::array();
    for (const auto& g : genus_partition(d)) {
      json forms = json::array();
      for (const auto& f : g.classes) forms.push_back(form_json(f));
      genera.push_back({{"signature", signature_string(g.signature)}, {"forms", forms}});
    }
    return json{{"delta", num(d.delta())}, {"odd_primes", ints_json(cs.odd_primes)},
                {"genus_count", cs.genus_count()}, {"genera", genera}};
  });
  genus->add_option("--disc", o.disc, "discriminant")->required();

  auto* cf = sub("cf", "continued fraction of sqrt(N), or the cycle period of a form", [&] {
    if (!o.form.empty()) {
      QuadraticForm f = QuadraticForm::parse(o.form);
      return json{{"form", form_json(f)}, {"period_length", class_cycle_period(f)}};
    }
    CFExpansion e = cf_sqrt(parse_int(o.n));
    return json{{"d0", num(e.d0())}, {"preperiod", ints_json(e.preperiod)}, {"period", ints_json(e.period)},
                {"period_length", e.period_length()}};
  });
  cf->add_option("--n", o.n, "N for sqrt(N)");
  cf->add_option("--form", o.form, "indefinite form a,b,c");

  auto* unit = sub("unit", "fundamental unit and S-sequence of a real field", [&] {
    Discriminant d = disc_of(o.disc);
    FundamentalUnit fu = fundamental_unit(d);
    SSequence s = s_sequence(d);
    json res{{"u", num(fu.u)}, {"v", num(fu.v)}, {"norm", fu.norm}, {"period", fu.period},
             {"s_sequence", ints_json(s.values)}};
    PellUnit pu = pell_unit(d.d_field());
    res["pell"] = {{"p", num(pu.p)}, {"q", num(pu.q)}, {"norm", pu.norm}};
    return res;
  });
  unit->add_option("--disc", o.disc, "positive discriminant")->required();

  auto* count = sub("curve-count", "number of points of y^2 = x^3 + A x + B over F_p", [&] {
    CurveFp c = parse_curve(o.curve);
    TraceData t;
    if (o.count_method == "serial")
      t = count_points_serial(c);
    else if (o.count_method == "parallel")
      t = count_points_parallel(c);
    else if (o.count_method == "bsgs")
      t = count_points_bsgs(c, seed);
    else if (o.count_method == "auto")
      t = count_points(c);
    else
      throw Error(ErrorCode::kInvalidArgument, "unknown counting method " + o.count_method);
    return json{{"p", num(t.q)}, {"points", num(t.N)}, {"trace", num(t.a)}};
  });
  count->add_option("--curve", o.curve, "A,B@p")->required();
  count->add_option("--method", o.count_method, "auto, serial, parallel or bsgs");

  auto* sqrtdisc = sub("sqrtdisc", "square root of delta mod p via elliptic curves", [&] {
    Discriminant d = disc_of(o.disc);
    Int p = parse_int(o.prime);
    Int r;
    if (d.is_negative()) {
      Int j;
      if (!o.j.empty()) {
        j = parse_int(o.j);
      } else {
        auto roots = roots_mod_p(class_polynomial(d), p, seed);
        if (roots.empty()) throw Error(ErrorCode::kNoRoot, "class polynomial has no root mod p");
        j = roots.front();
      }
      r = sqrt_disc_via_curve(d, p, j);
    } else {
      r = sqrt_pos_disc(d, p);
    }
    return json{{"root", num(r)}, {"check", num(mod(r * r - d.delta(), p))}};
  });
  sqrtdisc->add_option("--disc", o.disc, "discriminant")->required();
  sqrtdisc->add_option("--prime", o.prime, "prime p")->required();
  sqrtdisc->add_option("--j", o.j, "j-invariant mod p (default: a root of the class polynomial)");

  auto* hilbert = sub("hilbert", "table record, class polynomial and split test", [&] {
    Discriminant d = disc_of(o.disc);
    json res{{"delta", num(d.delta())}};
    const HilbertPolyRecord* rec = default_table().find(d);
    IntPolynomial h;
    if (rec) {
      h = rec->poly;
      res["D"] = num(rec->D);
      res["h"] = rec->h;
      json forms = json::array();
      for (const auto& f : rec->forms) forms.push_back(form_json(f));
      res["forms"] = forms;
      res["ideals"] = rec->ideals;
      if (rec->pi_a) res["pi_a"] = QuadraticField(rec->D).to_string(*rec->pi_a);
      if (rec->sys_u) res["system"] = {{"u", rec->sys_u->to_string()}, {"v", rec->sys_v->to_string()}};
      res["source"] = "table";
    } else {
      h = compute_class_poly(d, o.digits);
      res["h"] = h.degree();
      res["source"] = "computed";
    }
    res["poly"] = h.to_string();
    res["coeffs"] = ints_json(h.coeffs());
    if (!o.prime.empty()) {
      SplitResult s = hilbert_split_test(h, parse_int(o.prime));
      res["split"] = {{"ramified", s.ramified}, {"fully_splits", s.fully_splits}, {"pattern", s.pattern}};
    }
    return res;
  });
  hilbert->add_option("--disc", o.disc, "discriminant")->required();
  hilbert->add_option("--prime", o.prime, "prime for the split test");
  hilbert->add_option("--digits", o.digits, "working precision when computing");

  auto* classify = sub("classify", "class label of a prime", [&] {
    ClassLabel l = classify_prime(parse_int(o.prime), disc_of(o.disc));
    std::string kind = l.to_string();
    kind = kind.substr(0, kind.find('('));
    return json{{"label", kind}, {"signature", signature_string(l.signature)}, {"text", l.to_string()}};
  });
  classify->add_option("--disc", o.disc, "discriminant")->required();
  classify->add_option("--prime", o.prime, "prime p")->required();

  auto* represent = sub("represent", "represent a prime or a factored integer", [&]() -> json {
    Discriminant d = disc_of(o.disc);
    std::optional<QuadraticForm> target;
    if (!o.form.empty()) target = QuadraticForm::parse(o.form);
    if (o.method == "gauss") {
      if (!o.m.empty() || target) {
        FactoredInteger m = !o.factors.empty() ? FactoredInteger::from_factors(parse_factors(o.factors))
                                               : FactoredInteger::from_factors({{parse_int(o.prime), 1}});
        if (!o.m.empty() && m.m != parse_int(o.m)) throw Error(ErrorCode::kInvalidArgument, "factors do not multiply to m");
        QuadraticForm f = target ? *target : QuadraticForm::principal(d.delta());
        auto r = algorithm_g(f, m);
        if (!r) throw Error(ErrorCode::kNoSolution, "algorithm G: FAILURE");
        return rep_json(*r, "gauss");
      }
      return rep_json(represent_prime(parse_int(o.prime), d), "gauss");
    }
    if (o.method == "norm") {
      const unsigned l = o.power ? o.power : 1;
      auto [u, v] = represent_norm_power(parse_int(o.prime), l, d);
      QuadraticForm q0 = QuadraticForm::principal(d.delta());
      return rep_json({q0, u, v, q0(u, v)}, "norm");
    }
    if (o.method == "alt") return rep_json(represent_alternative(parse_int(o.prime), d, target), "alt");
    throw Error(ErrorCode::kInvalidArgument, "unknown method " + o.method);
  });
  represent->add_option("--disc", o.disc, "discriminant")->required();
  represent->add_option("--prime", o.prime, "prime p");
  represent->add_option("--m", o.m, "composite m (with --factors)");
  represent->add_option("--factors", o.factors, "factorization of m, e.g. 3^2,5");
  represent->add_option("--form", o.form, "target form a,b,c");
  represent->add_option("--method", o.method, "gauss, norm or alt")->check(CLI::IsMember({"gauss", "norm", "alt"}));
  represent->add_option("--power", o.power, "exponent l for --method norm");

  auto* system = sub("system", "Diophantine system of an ideal class", [&] {
    Discriminant d = disc_of(o.disc);
    QuadraticField K = QuadraticField::of(d);
    QuadIdeal I = !o.ideal.empty() ? parse_ideal(K, o.ideal) : ideal_from_form(K, QuadraticForm::parse(o.form));
    const unsigned long l = o.power ? o.power : ideal_class_order(I);
    PrincipalGenerator pi = ideal_power_principal_gen(I, l);
    DiophantineSystem s = build_system(d, I, static_cast<unsigned>(l), pi);
    json res{{"ideal", I.literal()}, {"form", form_json(s.form)}, {"ell", l}, {"pi", K.to_string(s.pi)},
             {"u_poly", s.a1.to_string()}, {"v_poly", s.a2.to_string()}};
    if (!o.u.empty()) {
      json sols = json::array();
      for (const auto& [x, y] : solve_system(s, parse_int(o.u), parse_int(o.v)))
        sols.push_back({{"x", num(x)}, {"y", num(y)}, {"value", num(s.form(x, y))}});
      res["solutions"] = sols;
    }
    return res;
  });
  system->add_option("--disc", o.disc, "field discriminant")->required();
  system->add_option("--ideal", o.ideal, "ideal e;f;g");
  system->add_option("--form", o.form, "form of the class");
  system->add_option("--power", o.power, "exponent l (default: the class order)");
  system->add_option("--u", o.u, "u of the norm-form solution");
  system->add_option("--v", o.v, "v of the norm-form solution");

  std::vector<const char*> argv{"qfr"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }

  const std::string name = app.get_subcommands().front()->get_name();
  try {
    json payload = handlers.at(name)();
    print(payload, as_json, out);
    return 0;
  } catch (const Error& e) {
    err << error_code_name(e.code()) << ": " << e.what() << "\n";
    if (is_failure(e.code())) {
      print(json{{"status", "failure"}, {"reason", error_code_name(e.code())}, {"detail", e.what()}}, as_json, out);
      return 1;
    }
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
}

}  // namespace qfr::cli
