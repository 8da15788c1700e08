#include "fpr/formulas.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <regex>

namespace fpr {

namespace {

using Check = std::optional<std::string>;

BigRational Q(const BigInt& a, const BigInt& b) { return BigRational(a, b); }
BigInt P(long long base, long long e) { return e < 0 ? BigInt(0) : ipow(BigInt(base), static_cast<unsigned>(e)); }

void require(bool ok, const std::string& what) {
  if (!ok) throw ConditionViolated(what);
}

bool prime_ll(long long v) { return v > 1 && is_prime(static_cast<std::uint64_t>(v)); }

// q-analogue [m]_Q = (Q^m - 1)/(Q - 1)
BigInt qint(unsigned m, const BigInt& q) { return (ipow(q, m) - 1) / (q - 1); }

BigInt singular_points(Family f, unsigned n, int eps, const BigInt& q) {
  switch (f) {
    case Family::Symplectic: return (ipow(q, n) - 1) / (q - 1);
    case Family::Unitary: {
      BigInt a = ipow(q, n) - (n % 2 ? -1 : 1);
      BigInt b = ipow(q, n - 1) - (n % 2 ? 1 : -1);
      return a * b / (q * q - 1);
    }
    case Family::OrthogonalOdd: return n < 1 ? BigInt(0) : (ipow(q, n - 1) - 1) / (q - 1);
    case Family::OrthogonalEven: {
      if (n == 0) return 0;
      unsigned k = n / 2;
      return (ipow(q, k) - eps) * (ipow(q, k - 1) + eps) / (q - 1);
    }
    default: throw Unsupported("singular points for " + to_string(f));
  }
}

BigInt totally_singular(Family f, unsigned n, int eps, const BigInt& q, unsigned m) {
  if (m == 0) return 1;
  BigInt Qf = f == Family::Unitary ? q * q : q;
  return singular_points(f, n, eps, q) * totally_singular(f, n - 2, eps, q, m - 1) / qint(m, Qf);
}

BigInt simple_order(const std::string& name) {
  std::smatch m;
  static const std::regex alt_re(R"(A(\d+))"), l2_re(R"(L2\((\d+)\))");
  if (std::regex_match(name, m, alt_re)) {
    long long n = std::stoll(m[1]);
    BigInt f = 1;
    for (long long i = 2; i <= n; ++i) f *= i;
    return f / 2;
  }
  if (std::regex_match(name, m, l2_re)) {
    long long q = std::stoll(m[1]);
    return BigInt(q) * (q * q - 1) / (q % 2 ? 2 : 1);
  }
  throw Unsupported("unknown simple group descriptor '" + name + "'");
}

const std::map<std::string, long long>& catalog_degrees() {
  static const std::map<std::string, long long> m = {
      {"A5prim", 6}, {"S5prim", 6}, {"S2wrS3", 15}, {"S3wrS2.2", 10}, {"L3(4).2_2", 22},
      {"AGL3(2)", 15}};
  return m;
}

}  // namespace

Json FormulaResult::to_json() const {
  return Json{{"formula_id", formula_id}, {"value", value.str()}, {"inputs", inputs.to_json()}, {"anchor", anchor}};
}

BigInt order_gu(unsigned n, const BigInt& q) {
  BigInt r = ipow(q, n * (n - 1) / 2);
  for (unsigned i = 1; i <= n; ++i) r *= ipow(q, i) - (i % 2 ? -1 : 1);
  return r;
}

BigInt order_sp(unsigned n, const BigInt& q) {
  unsigned k = n / 2;
  BigInt r = ipow(q, k * k);
  for (unsigned i = 1; i <= k; ++i) r *= ipow(q, 2 * i) - 1;
  return r;
}

BigInt order_go(unsigned n, int eps, const BigInt& q) {
  if (n == 0) return 1;
  unsigned k = n / 2;
  if (n % 2) {
    BigInt r = 2 * ipow(q, k * k);
    for (unsigned i = 1; i <= k; ++i) r *= ipow(q, 2 * i) - 1;
    return r;
  }
  BigInt r = 2 * ipow(q, k * (k - 1)) * (ipow(q, k) - eps);
  for (unsigned i = 1; i < k; ++i) r *= ipow(q, 2 * i) - 1;
  return r;
}

BigInt action_degree(const GroupSpec& g, const ActionSpec& a) {
  if (auto v = validate(g, a); !v.empty()) throw BadSpec(v.front());
  const unsigned n = g.n;
  const BigInt q = g.q;
  auto unsupported = [&]() -> BigInt { throw Unsupported("no degree formula for " + g.label() + " on " + a.label()); };

  if (a.kind == ActionKind::Catalog && g.family != Family::Product) {
    auto it = catalog_degrees().find(a.name);
    if (it == catalog_degrees().end()) return unsupported();
    return it->second;
  }
  switch (g.family) {
    case Family::SymAlt:
      if (a.kind == ActionKind::Subsets) return binomial(n, a.m);
      if (a.kind == ActionKind::Partitions) return binomial(n, n / 2) / 2;
      if (a.kind == ActionKind::NaturalPoints) return n;
      return unsupported();
    case Family::Affine: return ipow(BigInt(g.p), g.d);
    case Family::Diagonal: return ipow(simple_order(g.name), g.k - 1);
    case Family::Product: {
      ActionSpec ca = g.component_action.empty() ? a : ActionSpec::parse(g.component_action);
      return ipow(action_degree(*g.component, ca), g.k);
    }
    case Family::Sporadic:
      if (g.name.rfind("M22", 0) == 0) return 22;
      return unsupported();
    case Family::Linear:
      if (a.kind == ActionKind::P) return gaussian_binomial(n, a.m, q);
      if (a.kind == ActionKind::PPair) return gaussian_binomial(n, n - a.m, q) * gaussian_binomial(n - a.m, a.m, q);
      return unsupported();
    case Family::Unitary:
      if (a.kind == ActionKind::P) return totally_singular(g.family, n, 0, q, a.m);
      if (a.kind == ActionKind::N) return order_gu(n, q) / (order_gu(a.m, q) * order_gu(n - a.m, q));
      return unsupported();
    case Family::Symplectic:
      if (a.kind == ActionKind::P) return totally_singular(g.family, n, 0, q, a.m);
      if (a.kind == ActionKind::N) return order_sp(n, q) / (order_sp(a.m, q) * order_sp(n - a.m, q));
      if (a.kind == ActionKind::OEpsilon) return ipow(q, n / 2) * (ipow(q, n / 2) + a.eta) / 2;
      return unsupported();
    case Family::OrthogonalOdd:
      if (a.kind == ActionKind::P) return totally_singular(g.family, n, 0, q, a.m);
      if (a.kind == ActionKind::N) {
        if (a.m % 2 == 0) return order_go(n, 0, q) / (order_go(a.m, a.eta, q) * order_go(n - a.m, 0, q));
        return order_go(n, 0, q) / (order_go(a.m, 0, q) * order_go(n - a.m, a.eta, q));
      }
      return unsupported();
    case Family::OrthogonalEven:
      if (a.kind == ActionKind::P) return totally_singular(g.family, n, g.eps, q, a.m);
      if (a.kind == ActionKind::N) {
        if (a.m % 2 == 0)
          return order_go(n, g.eps, q) / (order_go(a.m, a.eta, q) * order_go(n - a.m, g.eps * a.eta, q));
        return order_go(n, g.eps, q) / (order_go(a.m, 0, q) * order_go(n - a.m, 0, q));
      }
      if (a.kind == ActionKind::N1Nonsingular) return ipow(q, n / 2 - 1) * (ipow(q, n / 2) - g.eps);
      return unsupported();
    case Family::TwistedWreath: return unsupported();
  }
  return unsupported();
}

BigRational fpr_subset_rcycle(long long n, long long l, long long r) {
  require(l >= 1 && 2 * l < n, "1 <= l < n/2");
  require(prime_ll(r) && r <= n, "r prime, r <= n");
  if (r > n - l) return 0;
  BigRational a = 1, b = 1;
  for (long long i = 0; i < r; ++i) {
    a *= BigRational(1) - Q(l, n - i);
    b *= BigRational(1) - Q(n - l, n - i);
  }
  return r <= l ? a + b : a;
}

BigRational fpr_subset_cycles(long long n, long long l, long long r, long long c) {
  require(l >= 1 && 2 * l < n, "1 <= l < n/2");
  require(prime_ll(r) && c >= 1 && r * c <= n, "r prime, 1 <= c, rc <= n");
  BigInt fixed = 0;
  for (long long j = 0; j <= c && r * j <= l; ++j) fixed += binomial(c, j) * binomial(n - r * c, l - r * j);
  return Q(fixed, binomial(n, l));
}

BigRational fpr_subset_double_transposition(long long n, long long l) {
  require(n >= 4, "n >= 4");
  require(l >= 1 && 2 * l < n, "1 <= l < n/2");
  BigInt fixed = binomial(n - 4, l) + 2 * binomial(n - 4, l - 2) + binomial(n - 4, l - 4);
  return Q(fixed, binomial(n, l));
}

BigRational fpr_subset_max(const GroupSpec& g, long long l, long long r) {
  require(g.family == Family::SymAlt, "S_n or A_n");
  if (g.alt && r == 2) return fpr_subset_double_transposition(g.n, l);
  return fpr_subset_rcycle(g.n, l, r);
}

BigRational fpr_partition_transposition(long long n) {
  require(n >= 6 && n % 2 == 0, "n >= 6 even");
  return Q(1, 3) + Q(n - 4, 6 * (n - 1));
}

BigRational fpr_affine(long long p, long long d, long long e) {
  require(prime_ll(p), "p prime");
  require(0 <= e && e < d, "0 <= e < d");
  return Q(1, P(p, d - e));
}

BigRational fpr_psl2_borel(long long q, Psl2Element kind, long long r) {
  require(q >= 7 && q != 9, "q >= 7, q != 9");
  switch (kind) {
    case Psl2Element::Unipotent: return Q(1, q + 1);
    case Psl2Element::Torus: return Q(2, q + 1);
    case Psl2Element::FieldAut: {
      require(prime_ll(r), "r prime");
      long long q0 = 2;
      while (P(q0, r) < q) ++q0;
      require(P(q0, r) == q, "q = q0^r");
      return Q(q0 + 1, q + 1);
    }
  }
  return 0;
}

BigRational fpr_product(const std::vector<BigRational>& component_values) {
  BigRational v = 1;
  for (const auto& c : component_values) v *= c;
  return v;
}

BigRational fpr_product_pi_bound(long long gamma_size, long long h, long long r) {
  require(gamma_size >= 1 && h >= 1 && r >= 2, "|Gamma| >= 1, h >= 1, r >= 2");
  return Q(1, P(gamma_size, h * (r - 1)));
}

BigRational fpr_diagonal(long long t_order, long long count, long long k, DiagonalCase c) {
  require(t_order > 0 && count > 0, "orders positive");
  if (c == DiagonalCase::R2) {
    require(k >= 2, "k >= 2");
    require(t_order % count == 0, "centralizer order divides |T|");
    return pow(Q(count, t_order), k - 1);
  }
  require(k == 2, "k = 2");
  require(count <= t_order, "inversion count <= |T|");
  return Q(count, t_order);
}

BigRational twisted_wreath_bound(long long t_order, long long k, long long l) {
  require(t_order > 1 && k >= 2, "|T| > 1, k >= 2");
  require(0 <= l && 2 * l <= k, "0 <= l <= k/r");
  return Q(1, P(t_order, k - l));
}

// ---------------------------------------------------------------------------

namespace {

using Rec = ExceptionRecord;

Check need(bool ok, const char* what) { return ok ? Check{} : Check{what}; }

Check all_of(std::initializer_list<Check> cs) {
  for (auto& c : cs)
    if (c) return c;
  return {};
}

long long N(const Params& p) { return p.get("n"); }
long long Qp(const Params& p) { return p.get("q"); }
long long E(const Params& p) { return p.get("eps"); }

Rec make(std::string id, std::string table, Family f, ActionSpec a, std::string elt, std::string prime,
         std::string cond, std::string anchor) {
  Rec r;
  r.id = std::move(id);
  r.table = std::move(table);
  r.family = f;
  r.action = std::move(a);
  r.element = std::move(elt);
  r.prime = std::move(prime);
  r.conditions = std::move(cond);
  r.anchor = std::move(anchor);
  return r;
}

ActionSpec act(const std::string& s) { return ActionSpec::parse(s); }

BigRational transvection_p1(const Params& p) {
  long long n = N(p), q = Qp(p);
  return Q(1, q + 1) + Q(BigInt(q) * (P(q, n - 2) - 1), BigInt(q + 1) * (P(q, n) - 1));
}

bool is_sym(const GroupSpec& g, bool alt, const std::string& ext) {
  return g.family == Family::SymAlt && g.n == 6 && g.alt == alt && g.extension == ext;
}

std::vector<Rec> build_records() {
  std::vector<Rec> v;
  const std::string C = "class", B = "subb2", A = "a6", M = "main";
  const char* tc = "exceptional subspace table: ";
  const char* tb = "1/r exception table: ";
  const char* ta = "A6 special cases table: ";

  auto prime_q = [](const Params& p) { return Qp(p); };
  auto two = [](const Params&) { return 2LL; };
  auto three = [](const Params&) { return 3LL; };

  // -- exceptional subspace actions (20 rows)
  {
    auto r = make("tab:class/L/P1/transvection", C, Family::Linear, act("P1"), "(J2,J1^{n-2})", "q",
                  "n >= 3, q prime", std::string(tc) + "L_n(q), P_1, transvection");
    r.check = [](const Params& p) { return all_of({need(N(p) >= 3, "n >= 3"), need(prime_ll(Qp(p)), "q prime")}); };
    r.value = transvection_p1;
    r.prime_of = prime_q;
    v.push_back(r);
  }
  {
    auto r = make("tab:class/L/P1/omega", C, Family::Linear, act("P1"), "(omega,I_{n-1})", "q-1",
                  "q-1 prime; q >= 8 when n = 2", std::string(tc) + "L_n(q), P_1, (omega, I_{n-1})");
    r.check = [](const Params& p) {
      return all_of({need(prime_ll(Qp(p) - 1), "q-1 prime"), need(N(p) >= 3 || Qp(p) >= 8, "n >= 3 or q >= 8")});
    };
    r.value = [](const Params& p) {
      long long n = N(p), q = Qp(p);
      return Q(1, q) + Q(BigInt(q - 1) * (q - 1), BigInt(q) * (P(q, n) - 1));
    };
    r.prime_of = [](const Params& p) { return Qp(p) - 1; };
    r.requires_element = "omega";
    v.push_back(r);
  }
  {
    auto r = make("tab:class/L/P1/phi", C, Family::Linear, act("P1"), "phi", "3", "(n,q) = (2,8)",
                  std::string(tc) + "L_2(8), P_1, field automorphism");
    r.check = [](const Params& p) { return need(N(p) == 2 && Qp(p) == 8, "(n,q) = (2,8)"); };
    r.value = [](const Params&) { return Q(1, 3); };
    r.prime_of = three;
    r.requires_element = "phi";
    v.push_back(r);
  }
  {
    auto r = make("tab:class/U/P1/omega", C, Family::Unitary, act("P1"), "(omega,I_{n-1})", "3",
                  "n >= 5 odd, q = 2", std::string(tc) + "U_n(q), P_1, (omega, I_{n-1})");
    r.check = [](const Params& p) {
      return all_of({need(N(p) >= 5 && N(p) % 2 == 1, "n >= 5 odd"), need(Qp(p) == 2, "q = 2")});
    };
    r.value = [](const Params& p) { return Q(1, 4) + Q(3, 4 * (P(2, N(p)) + 1)); };
    r.prime_of = three;
    r.requires_element = "omega";
    v.push_back(r);
  }
  {
    auto r = make("tab:class/U/P2/tau", C, Family::Unitary, act("P2"), "tau", "2", "n = 4, q in {2,3}, tau in G",
                  std::string(tc) + "U_4(q), P_2, graph automorphism tau");
    r.check = [](const Params& p) {
      return all_of({need(N(p) == 4, "n = 4"), need(Qp(p) == 2 || Qp(p) == 3, "q in {2,3}")});
    };
    r.value = [](const Params& p) { return Qp(p) == 2 ? Q(5, 9) : Q(5, 14); };
    r.prime_of = two;
    r.requires_element = "tau";
    v.push_back(r);
  }
  {
    auto r = make("tab:class/U/P2/omegaI2", C, Family::Unitary, act("P2"), "(omega I_2,I_2)", "3", "(n,q) = (4,2)",
                  std::string(tc) + "U_4(2), P_2, (omega I_2, I_2)");
    r.check = [](const Params& p) { return need(N(p) == 4 && Qp(p) == 2, "(n,q) = (4,2)"); };
    r.value = [](const Params&) { return Q(1, 3); };
    r.prime_of = three;
    r.requires_element = "omega";
    v.push_back(r);
  }
  {
    auto r = make("tab:class/U/N1/omega", C, Family::Unitary, act("N1"), "(omega,I_{n-1})", "3", "n even, q = 2",
                  std::string(tc) + "U_n(q), N_1, (omega, I_{n-1})");
    r.check = [](const Params& p) {
      return all_of({need(N(p) >= 4 && N(p) % 2 == 0, "n even"), need(Qp(p) == 2, "q = 2")});
    };
    r.value = [](const Params& p) {
      long long n = N(p);
      return Q(1, 4) + Q(3 * (P(2, n - 3) + 1), P(2, n - 1) * (P(2, n) - 1));
    };
    r.prime_of = three;
    r.requires_element = "omega";
    v.push_back(r);
  }
  {
    auto r = make("tab:class/Sp/P1/transvection", C, Family::Symplectic, act("P1"), "(J2,J1^{n-2})", "q",
                  "n >= 4 even, q prime", std::string(tc) + "PSp_n(q), P_1, transvection");
    r.check = [](const Params& p) {
      return all_of({need(N(p) >= 4 && N(p) % 2 == 0, "n >= 4 even"), need(prime_ll(Qp(p)), "q prime")});
    };
    r.value = transvection_p1;
    r.prime_of = prime_q;
    v.push_back(r);
  }
  {
    ActionSpec a;
    a.kind = ActionKind::OEpsilon;  // eta taken from the parameters
    auto r = make("tab:class/Sp/Oeps/b1", C, Family::Symplectic, a, "(J2,J1^{n-2})", "2", "n >= 6, q = 2",
                  std::string(tc) + "PSp_n(q), O_n^eps(q), transvection");
    r.check = [](const Params& p) {
      return all_of({need(N(p) >= 6 && N(p) % 2 == 0, "n >= 6 even"), need(Qp(p) == 2, "q = 2"),
                     need(E(p) == 1 || E(p) == -1, "eps = +/-")});
    };
    r.value = [](const Params& p) {
      long long h = N(p) / 2, e = E(p);
      return Q(1, 3) + Q(P(2, h - 1) - e, 3 * (P(2, h) + e));
    };
    r.prime_of = two;
    v.push_back(r);
  }
  {
    auto r = make("tab:class/Sp/Ominus/Lambda", C, Family::Symplectic, act("Oeps:-"), "(Lambda,I_{n-2})", "3",
                  "n >= 6, q = 2", std::string(tc) + "PSp_n(q), O_n^-(q), (Lambda, I_{n-2})");
    r.check = [](const Params& p) {
      return all_of({need(N(p) >= 6 && N(p) % 2 == 0, "n >= 6 even"), need(Qp(p) == 2, "q = 2")});
    };
    r.value = [](const Params& p) { return Q(1, 4) + Q(3, 4 * (P(2, N(p) / 2) - 1)); };
    r.prime_of = three;
    v.push_back(r);
  }
  {
    auto r = make("tab:class/O/P1/refl+", C, Family::OrthogonalOdd, act("P1"), "(-I_{n-1},I_1)^+", "2", "q = 3",
                  std::string(tc) + "Omega_n(q), P_1, reflection of plus type");
    r.check = [](const Params& p) {
      return all_of({need(N(p) >= 7 && N(p) % 2 == 1, "n >= 7 odd"), need(Qp(p) == 3, "q = 3")});
    };
    r.value = [](const Params& p) { return Q(1, 3) + Q(2, 3 * (P(3, (N(p) - 1) / 2) + 1)); };
    r.prime_of = two;
    r.requires_element = "r+";
    v.push_back(r);
  }
  {
    auto r = make("tab:class/O/N1-/refl-", C, Family::OrthogonalOdd, act("N1:-"), "(-I_{n-1},I_1)^-", "2", "q = 3",
                  std::string(tc) + "Omega_n(q), N_1^-, reflection of minus type");
    r.check = [](const Params& p) {
      return all_of({need(N(p) >= 7 && N(p) % 2 == 1, "n >= 7 odd"), need(Qp(p) == 3, "q = 3")});
    };
    r.value = [](const Params& p) {
      long long n = N(p);
      return Q(1, 3) + Q(2 * (P(3, (n - 3) / 2) + 1), P(3, (n - 1) / 2) * (P(3, (n - 1) / 2) - 1));
    };
    r.prime_of = two;
    r.requires_element = "r-";
    v.push_back(r);
  }
  auto even_n = [](const Params& p) { return need(N(p) >= 8 && N(p) % 2 == 0, "n >= 8 even"); };
  {
    auto r = make("tab:class/POmega/P1/b1", C, Family::OrthogonalEven, act("P1"), "(J2,J1^{n-2})", "2", "q = 2",
                  std::string(tc) + "POmega_n^eps(q), P_1, b_1 involution");
    r.check = [even_n](const Params& p) { return all_of({even_n(p), need(Qp(p) == 2, "q = 2")}); };
    r.value = [](const Params& p) {
      long long n = N(p), h = n / 2, e = E(p);
      return Q(1, 3) + Q(P(2, n - 2) - e * P(2, h - 1) - 2, 3 * (P(2, h - 1) + e) * (P(2, h) - e));
    };
    r.prime_of = two;
    r.requires_element = "O";
    v.push_back(r);
  }
  {
    auto r = make("tab:class/POmega/P1/refl", C, Family::OrthogonalEven, act("P1"), "(-I_{n-1},I_1)", "2",
                  "(q,eps) = (3,-)", std::string(tc) + "POmega_n^-(3), P_1, reflection");
    r.check = [even_n](const Params& p) {
      return all_of({even_n(p), need(Qp(p) == 3 && E(p) == -1, "(q,eps) = (3,-)")});
    };
    r.value = [](const Params& p) { return Q(1, 3) + Q(2, 3 * (P(3, N(p) / 2) + 1)); };
    r.prime_of = two;
    r.requires_element = "r";
    v.push_back(r);
  }
  {
    auto r = make("tab:class/POmega/P1/Lambda", C, Family::OrthogonalEven, act("P1"), "(Lambda,I_{n-2})", "3",
                  "(q,eps) = (2,-)", std::string(tc) + "POmega_n^-(2), P_1, (Lambda, I_{n-2})");
    r.check = [even_n](const Params& p) {
      return all_of({even_n(p), need(Qp(p) == 2 && E(p) == -1, "(q,eps) = (2,-)")});
    };
    r.value = [](const Params& p) { return Q(1, 4) + Q(3, 4 * (P(2, N(p) / 2) + 1)); };
    r.prime_of = three;
    v.push_back(r);
  }
  {
    auto r = make("tab:class/POmega/P2/Lambda", C, Family::OrthogonalEven, act("P2"), "(Lambda,I_6)", "5",
                  "(n,q,eps) = (8,4,+)", std::string(tc) + "POmega_8^+(4), P_2, (Lambda, I_6)");
    r.check = [](const Params& p) {
      return need(N(p) == 8 && Qp(p) == 4 && E(p) == 1, "(n,q,eps) = (8,4,+)");
    };
    r.value = [](const Params&) { return Q(1, 5); };
    r.prime_of = [](const Params&) { return 5LL; };
    v.push_back(r);
  }
  {
    auto r = make("tab:class/POmega/N1/refl-nsq", C, Family::OrthogonalEven, act("N1"), "(-I_{n-1},I_1)^nonsquare",
                  "2", "(q,eps) = (3,+)", std::string(tc) + "POmega_n^+(3), N_1, reflection, nonsquare discriminant");
    r.check = [even_n](const Params& p) {
      return all_of({even_n(p), need(Qp(p) == 3 && E(p) == 1, "(q,eps) = (3,+)")});
    };
    r.value = [](const Params& p) { return Q(1, 3) + Q(4, 3 * (P(3, N(p) / 2) - 1)); };
    r.prime_of = two;
    r.requires_element = "rnsq";
    v.push_back(r);
  }
  {
    auto r = make("tab:class/POmega/N1/refl-sq", C, Family::OrthogonalEven, act("N1"), "(-I_{n-1},I_1)^square", "2",
                  "(q,eps) = (3,-)", std::string(tc) + "POmega_n^-(3), N_1, reflection, square discriminant");
    r.check = [even_n](const Params& p) {
      return all_of({even_n(p), need(Qp(p) == 3 && E(p) == -1, "(q,eps) = (3,-)")});
    };
    r.value = [](const Params& p) {
      long long h = N(p) / 2;
      return Q(1, 3) + Q(2 * (P(3, h - 2) + 1), P(3, h - 1) * (P(3, h) + 1));
    };
    r.prime_of = two;
    r.requires_element = "rsq";
    v.push_back(r);
  }
  {
    auto r = make("tab:class/POmega/N1/b1", C, Family::OrthogonalEven, act("N1ns"), "(J2,J1^{n-2})", "2", "q = 2",
                  std::string(tc) + "POmega_n^eps(q), N_1, b_1 involution");
    r.check = [even_n](const Params& p) { return all_of({even_n(p), need(Qp(p) == 2, "q = 2")}); };
    r.value = [](const Params& p) {
      long long h = N(p) / 2, e = E(p);
      return Q(1, 3) + Q(P(2, h - 1) + e, 3 * (P(2, h) - e));
    };
    r.prime_of = two;
    r.requires_element = "O";
    v.push_back(r);
  }
  {
    auto r = make("tab:class/POmega/N1/Lambda", C, Family::OrthogonalEven, act("N1ns"), "(Lambda,I_{n-2})", "3",
                  "(q,eps) = (2,+)", std::string(tc) + "POmega_n^+(2), N_1, (Lambda, I_{n-2})");
    r.check = [even_n](const Params& p) {
      return all_of({even_n(p), need(Qp(p) == 2 && E(p) == 1, "(q,eps) = (2,+)")});
    };
    r.value = [](const Params& p) { return Q(1, 4) + Q(3, 4 * (P(2, N(p) / 2) - 1)); };
    r.prime_of = three;
    v.push_back(r);
  }

  // -- exceptions to the 1/r bound (6 rows)
  {
    auto r = make("tab:subb2/L2/P1/torus", B, Family::Linear, act("P1"), "(omega,omega^-1)", "q-1",
                  "n = 2, q >= 8, q-1 prime", std::string(tb) + "L_2(q), P_1, torus element");
    r.check = [](const Params& p) {
      return all_of({need(N(p) == 2, "n = 2"), need(Qp(p) >= 8, "q >= 8"), need(prime_ll(Qp(p) - 1), "q-1 prime")});
    };
    r.value = [](const Params& p) {
      long long q = Qp(p);
      return Q(1, q - 1) + Q(q - 3, q * q - 1);
    };
    r.prime_of = [](const Params& p) { return Qp(p) - 1; };
    v.push_back(r);
  }
  {
    auto r = make("tab:subb2/U4/P2/tau", B, Family::Unitary, act("P2"), "tau", "2", "(n,q) = (4,2), G = U_4(2).2",
                  std::string(tb) + "U_4(2).2, P_2, graph automorphism");
    r.check = [](const Params& p) { return need(N(p) == 4 && Qp(p) == 2, "(n,q) = (4,2)"); };
    r.value = [](const Params&) { return Q(5, 9); };
    r.prime_of = two;
    r.requires_element = "tau";
    v.push_back(r);
  }
  {
    auto r = make("tab:subb2/Sp/Ominus/b1", B, Family::Symplectic, act("Oeps:-"), "(J2,J1^{n-2})", "2",
                  "n >= 6, q = 2", std::string(tb) + "Sp_n(2), O_n^-(2), transvection");
    r.check = [](const Params& p) {
      return all_of({need(N(p) >= 6 && N(p) % 2 == 0, "n >= 6 even"), need(Qp(p) == 2, "q = 2")});
    };
    r.value = [](const Params& p) { return Q(1, 2) + Q(1, 2 * (P(2, N(p) / 2) - 1)); };
    r.prime_of = two;
    v.push_back(r);
  }
  {
    auto r = make("tab:subb2/Sp/Ominus/Lambda", B, Family::Symplectic, act("Oeps:-"), "(Lambda,I_{n-2})", "3",
                  "n = 6, q = 2", std::string(tb) + "Sp_6(2), O_6^-(2), (Lambda, I_4)");
    r.check = [](const Params& p) { return need(N(p) == 6 && Qp(p) == 2, "(n,q) = (6,2)"); };
    r.value = [](const Params&) { return Q(5, 14); };
    r.prime_of = three;
    v.push_back(r);
  }
  {
    auto r = make("tab:subb2/Ominus/P1/b1", B, Family::OrthogonalEven, act("P1"), "(J2,J1^{n-2})", "2",
                  "eps = -, q = 2, G = O_n^-(2)", std::string(tb) + "Omega_n^-(2), P_1, b_1 involution");
    r.check = [even_n](const Params& p) {
      return all_of({even_n(p), need(Qp(p) == 2 && E(p) == -1, "(q,eps) = (2,-)")});
    };
    r.value = [](const Params& p) { return Q(1, 2) + Q(1, 2 * (P(2, N(p) / 2) + 1)); };
    r.prime_of = two;
    r.requires_element = "O";
    v.push_back(r);
  }
  {
    auto r = make("tab:subb2/Oplus/N1/b1", B, Family::OrthogonalEven, act("N1ns"), "(J2,J1^{n-2})", "2",
                  "eps = +, q = 2, G = O_n^+(2)", std::string(tb) + "Omega_n^+(2), N_1, b_1 involution");
    r.check = [even_n](const Params& p) {
      return all_of({even_n(p), need(Qp(p) == 2 && E(p) == 1, "(q,eps) = (2,+)")});
    };
    r.value = [](const Params& p) { return Q(1, 2) + Q(1, 2 * (P(2, N(p) / 2) - 1)); };
    r.prime_of = two;
    r.requires_element = "O";
    v.push_back(r);
  }

  // -- A6 special cases (5 rows)
  struct A6Row {
    const char* id;
    const char* action;
    bool alt;
    const char* ext;
    const char* elt;
    long long r;
    BigRational value;
  };
  const A6Row a6rows[] = {
      {"tab:a6/A6/A5prim/32", "A5prim", true, "", "(3^2)", 3, Q(1, 2)},
      {"tab:a6/S6/S5prim/23", "S5prim", false, "", "(2^3)", 2, Q(2, 3)},
      {"tab:a6/S6/S5prim/32", "S5prim", false, "", "(3^2)", 3, Q(1, 2)},
      {"tab:a6/S6/S2wrS3/2", "S2wrS3", false, "", "(2,1^4)", 2, Q(7, 15)},
      {"tab:a6/A6.2^2/S3wrS2.2/2", "S3wrS2.2", true, "2^2", "(2,1^4)", 2, Q(2, 5)},
  };
  for (const auto& row : a6rows) {
    ActionSpec a;
    a.kind = ActionKind::Catalog;
    a.name = row.action;
    auto r = make(row.id, A, Family::SymAlt, a, row.elt, std::to_string(row.r), "n = 6",
                  std::string(ta) + (row.id + 7));
    BigRational val = row.value;
    long long pr = row.r;
    r.value = [val](const Params&) { return val; };
    r.prime_of = [pr](const Params&) { return pr; };
    bool alt = row.alt;
    std::string ext = row.ext;
    r.group_ok = [alt, ext](const GroupSpec& g) { return is_sym(g, alt, ext); };
    v.push_back(r);
  }

  // -- non-classical parts of the main classification (5 records)
  {
    auto r = make("subset-rcycle", M, Family::SymAlt, act("subsets:1"), "r-cycle", "r", "1 <= l < n/2",
                  "subset actions: fixed-point ratio of an r-cycle on l-subsets");
    r.check = [](const Params& p) {
      long long c = p.has("c") ? p.get("c") : 1;
      return all_of({need(p.get("l") >= 1 && 2 * p.get("l") < N(p), "1 <= l < n/2"),
                     need(prime_ll(p.get("r")) && p.get("r") <= N(p), "r prime, r <= n"),
                     need(c >= 1 && c * p.get("r") <= N(p), "1 <= c <= n/r")});
    };
    // optional c: element with c disjoint r-cycles
    r.value = [](const Params& p) {
      if (p.has("c")) return fpr_subset_cycles(N(p), p.get("l"), p.get("r"), p.get("c"));
      return fpr_subset_rcycle(N(p), p.get("l"), p.get("r"));
    };
    r.prime_of = [](const Params& p) { return p.get("r"); };
    v.push_back(r);
  }
  {
    auto r = make("partition-transposition", M, Family::SymAlt, act("partitions"), "(2,1^{n-2})", "2",
                  "n >= 6 even", "partition actions: transposition on bisections");
    r.check = [](const Params& p) { return need(N(p) >= 6 && N(p) % 2 == 0, "n >= 6 even"); };
    r.value = [](const Params& p) { return fpr_partition_transposition(N(p)); };
    r.prime_of = two;
    v.push_back(r);
  }
  {
    ActionSpec a;
    a.kind = ActionKind::Catalog;
    a.name = "L3(4).2_2";
    auto r = make("m22.2/2B", M, Family::Sporadic, a, "2B", "2", "G = M22:2",
                  "sporadic case: M22:2 of degree 22, involution class 2B");
    r.value = [](const Params&) { return Q(4, 11); };
    r.prime_of = two;
    r.group_ok = [](const GroupSpec& g) { return g.name == "M22:2" || (g.name == "M22" && g.extension == ".2"); };
    v.push_back(r);
  }
  {
    auto r = make("affine-transvection", M, Family::Affine, act("natural"), "transvection in H", "p",
                  "d >= 2, H contains a transvection", "affine groups: transvection of the point stabilizer");
    r.check = [](const Params& p) {
      return all_of({need(prime_ll(p.get("p")), "p prime"), need(p.get("d") >= 2, "d >= 2")});
    };
    r.value = [](const Params& p) { return fpr_affine(p.get("p"), p.get("d"), p.get("d") - 1); };
    r.prime_of = [](const Params& p) { return p.get("p"); };
    v.push_back(r);
  }
  {
    auto r = make("product", M, Family::Product, act("natural"), "(x_1,1,...,1)", "r",
                  "component value is an exception of the component action",
                  "product type: element with one nontrivial coordinate");
    r.check = [](const Params& p) {
      return all_of({need(p.get("den") > 0, "den > 0"),
                     need(p.get("num") >= 0 && p.get("num") <= p.get("den"), "0 <= num/den <= 1")});
    };
    r.value = [](const Params& p) { return fpr_product({Q(p.get("num"), p.get("den"))}); };
    r.prime_of = [](const Params& p) { return p.has("r") ? p.get("r") : 0; };
    v.push_back(r);
  }
  return v;
}

}  // namespace

const std::vector<ExceptionRecord>& exception_records() {
  static const std::vector<ExceptionRecord> records = build_records();
  return records;
}

const ExceptionRecord& exception_record(const std::string& id) {
  for (const auto& r : exception_records())
    if (r.id == id) return r;
  throw UnknownFormula("unknown formula id '" + id + "'");
}

BigRational fpr_exception_row(const ExceptionRecord& rec, const Params& p) { return rec.eval(p); }

// ---------------------------------------------------------------------------

namespace {

std::vector<std::string> record_params(const ExceptionRecord& r) {
  if (r.table == "a6" || r.id == "m22.2/2B") return {};
  if (r.id == "subset-rcycle") return {"n", "l", "r"};
  if (r.id == "partition-transposition") return {"n"};
  if (r.id == "affine-transvection") return {"p", "d"};
  if (r.id == "product") return {"num", "den"};
  if (r.family == Family::OrthogonalEven || r.id == "tab:class/Sp/Oeps/b1") return {"n", "q", "eps"};
  return {"n", "q"};
}

struct Extra {
  FormulaInfo info;
  std::function<BigRational(const Params&)> eval;
};

const std::vector<Extra>& extras() {
  static const std::vector<Extra> e = {
      {{"subset-max", {"n", "l", "r", "alt"}, "subset actions: maximum over elements of order r",
        "r-cycle value, double transposition for A_n and r = 2"},
       [](const Params& p) {
         GroupSpec g;
         g.n = static_cast<unsigned>(p.get("n"));
         g.alt = p.has("alt") && p.get("alt") != 0;
         return fpr_subset_max(g, p.get("l"), p.get("r"));
       }},
      {{"subset-double-transposition", {"n", "l"}, "subset actions: double transposition",
        "double transposition on l-subsets"},
       [](const Params& p) { return fpr_subset_double_transposition(p.get("n"), p.get("l")); }},
      {{"affine", {"p", "d", "e"}, "affine groups: fixed space of dimension e", "p^(e-d)"},
       [](const Params& p) { return fpr_affine(p.get("p"), p.get("d"), p.get("e")); }},
      {{"psl2-borel", {"q", "kind", "r"}, "L_2(q) on the projective line",
        "kind 0 unipotent, 1 torus, 2 field automorphism of order r"},
       [](const Params& p) {
         long long k = p.get("kind");
         if (k < 0 || k > 2) throw ConditionViolated("kind in {0,1,2}");
         return fpr_psl2_borel(p.get("q"), static_cast<Psl2Element>(k), p.has("r") ? p.get("r") : 0);
       }},
      {{"product-pi-bound", {"gamma", "h", "r"}, "product type: elements permuting the factors",
        "|Gamma|^(-h(r-1))"},
       [](const Params& p) { return fpr_product_pi_bound(p.get("gamma"), p.get("h"), p.get("r")); }},
      {{"diagonal-R2", {"t", "c", "k"}, "diagonal type: centralizer count", "(c/|T|)^(k-1)"},
       [](const Params& p) { return fpr_diagonal(p.get("t"), p.get("c"), p.get("k"), DiagonalCase::R2); }},
      {{"diagonal-R1", {"t", "inv"}, "diagonal type: swap with k = 2", "inversions/|T|"},
       [](const Params& p) { return fpr_diagonal(p.get("t"), p.get("inv"), 2, DiagonalCase::R1Inversions); }},
      {{"twisted-wreath-bound", {"t", "k", "l"}, "twisted wreath type", "|T|^(l-k)"},
       [](const Params& p) { return twisted_wreath_bound(p.get("t"), p.get("k"), p.get("l")); }},
  };
  return e;
}

}  // namespace

std::vector<FormulaInfo> formula_list() {
  std::vector<FormulaInfo> out;
  for (const auto& r : exception_records())
    out.push_back({r.id, record_params(r), r.anchor, r.element + ", r = " + r.prime + "; " + r.conditions});
  for (const auto& e : extras()) out.push_back(e.info);
  return out;
}

FormulaResult evaluate_formula(const std::string& id, const Params& p) {
  for (const auto& e : extras())
    if (e.info.id == id) return {e.eval(p), id, p, e.info.anchor};
  const auto& rec = exception_record(id);
  for (const auto& k : record_params(rec))
    if (!p.has(k)) throw BadSpec("missing parameter '" + k + "'");
  return {rec.eval(p), id, p, rec.anchor};
}

}  // namespace fpr
