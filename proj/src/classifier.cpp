#include "fpr/classifier.hpp"

#include <algorithm>
#include <functional>
#include <limits>
#include <numeric>
#include <set>

#include "fpr/formulas.hpp"

namespace fpr {

namespace {

BigRational Q(const BigInt& a, const BigInt& b) { return BigRational(a, b); }
BigInt P(long long b, long long e) { return ipow(BigInt(b), static_cast<unsigned>(e)); }

bool prime_ll(long long r) { return r >= 2 && is_prime(static_cast<std::uint64_t>(r)); }

void require_prime(long long r) {
  if (!prime_ll(r)) throw BadSpec("r = " + std::to_string(r) + " is not prime");
}

bool one_of(const std::string& s, std::initializer_list<const char*> xs) {
  for (const char* x : xs)
    if (s == x) return true;
  return false;
}

bool known_extension(const std::string& e) {
  if (e.size() > 2 && e.front() == '<' && e.back() == '>') return true;
  return one_of(e, {"", "Aut", "PGL", "PGU", "PGammaL", "PGammaU", "PSigmaL", "SO", "O", "PGO", ":2", ".2", ":3",
                    ".3", "2^2", "'", ".2_1", ".2_2", ".2_3", "S6", "M10"});
}

long long to_ll(const BigInt& v) {
  if (v > BigInt(std::numeric_limits<long long>::max()) || v < 0) throw Unsupported("value out of range");
  return v.convert_to<long long>();
}

GroupSpec sym(unsigned n, bool alt, std::string ext = "") {
  GroupSpec g;
  g.family = Family::SymAlt;
  g.n = n;
  g.alt = alt;
  g.extension = std::move(ext);
  return g;
}

ActionSpec subsets(unsigned l) {
  ActionSpec a;
  a.kind = ActionKind::Subsets;
  a.m = l;
  return a;
}

ActionSpec named(ActionKind k, const std::string& name = "") {
  ActionSpec a;
  a.kind = k;
  a.name = name;
  return a;
}

ActionSpec component_action(const GroupSpec& g) {
  return ActionSpec::parse(g.component_action.empty() ? "natural" : g.component_action);
}

// Catalog actions of S_6 / A_6 that are permutation isomorphic to subset actions.
std::optional<Canonical> as_subset_action(const GroupSpec& g, const ActionSpec& a) {
  if (g.family != Family::SymAlt || a.kind != ActionKind::Catalog || g.n != 6 || !g.extension.empty())
    return std::nullopt;
  if (a.name == "S5prim" || a.name == "A5prim") return Canonical{sym(6, g.alt), subsets(1), "outer automorphism of S6"};
  if (a.name == "S2wrS3") return Canonical{sym(6, g.alt), subsets(2), "outer automorphism of S6"};
  return std::nullopt;
}

// Whether the affine point stabilizer named by the descriptor contains a transvection.
bool affine_has_transvection(const GroupSpec& g) {
  const std::string& h = g.name;
  auto starts = [&](const char* s) { return h.rfind(s, 0) == 0; };
  if (starts("GammaL1")) return g.p == 2 && g.d == 2;
  if (starts("GL") || starts("SL") || starts("Sp")) return g.d >= 2;
  if (starts("C") && h.size() > 1 && std::all_of(h.begin() + 1, h.end(), ::isdigit)) {
    unsigned long m = std::stoul(h.substr(1));
    if (m % g.p != 0) return false;
  }
  throw UnknownFamily("cannot decide whether affine point stabilizer '" + h + "' contains a transvection");
}

bool affine_odd_order(const GroupSpec& g) {
  const std::string& h = g.name;
  if (g.p % 2 == 0 || h.size() < 2 || h[0] != 'C') return false;
  if (!std::all_of(h.begin() + 1, h.end(), ::isdigit)) return false;
  return std::stoul(h.substr(1)) % 2 == 1;
}

bool action_matches(const ActionSpec& rec, const ActionSpec& a) {
  if (rec.kind != a.kind) return false;
  switch (a.kind) {
    case ActionKind::Subsets:
    case ActionKind::P:
    case ActionKind::PPair: return rec.m == a.m;
    case ActionKind::N: return rec.m == a.m && (rec.eta == 0 || rec.eta == a.eta);
    case ActionKind::OEpsilon: return rec.eta == 0 || rec.eta == a.eta;
    case ActionKind::Catalog: return rec.name == a.name;
    default: return true;
  }
}

Params classical_params(const GroupSpec& g, const ActionSpec& a) {
  Params p{{"n", g.n}, {"q", g.q}};
  if (g.family == Family::OrthogonalEven) p.set("eps", g.eps);
  if (g.family == Family::Symplectic && a.kind == ActionKind::OEpsilon) p.set("eps", a.eta);
  return p;
}

// Rows of the given tables that apply to (g, a) at prime r.
std::vector<ExceptionHit> table_hits(const GroupSpec& g, const ActionSpec& a, long long r,
                                     std::initializer_list<const char*> tables, const Params& params) {
  std::vector<ExceptionHit> out;
  for (const auto& rec : exception_records()) {
    if (rec.family != g.family || !one_of(rec.table, tables)) continue;
    if (!action_matches(rec.action, a)) continue;
    if (rec.group_ok && !rec.group_ok(g)) continue;
    if (rec.check && rec.check(params)) continue;
    if (rec.prime_of(params) != r) continue;
    if (!group_contains(g, rec.requires_element)) continue;
    out.push_back({&rec, params, rec.value(params), {}});
  }
  return out;
}

// fpr values of all order-r classes of S_n / A_n on l-subsets, with their cycle counts.
std::vector<std::pair<long long, BigRational>> subset_class_values(const GroupSpec& g, long long l, long long r) {
  std::vector<std::pair<long long, BigRational>> v;
  for (long long c = 1; r * c <= g.n; ++c) {
    if (g.alt && r == 2 && c % 2 == 1) continue;
    v.emplace_back(c, fpr_subset_cycles(g.n, l, r, c));
  }
  return v;
}

void check_subset_params(const GroupSpec& g, const ActionSpec& a) {
  if (a.m < 1 || 2 * a.m >= g.n) throw UnknownFamily("subset action needs 1 <= l < n/2");
}

std::vector<ExceptionHit> main_hits(const GroupSpec& g, const ActionSpec& a, long long r, Bound b = Bound::Main);

std::vector<ExceptionHit> product_hits(const GroupSpec& g, long long r) {
  const BigRational cut = threshold(r, Bound::Main);
  auto comp = canonicalize(*g.component, component_action(g));
  // (value, record id) per nontrivial component class that can matter
  std::vector<std::pair<BigRational, std::string>> vals;
  if (comp.group.family == Family::SymAlt && comp.action.kind == ActionKind::Subsets) {
    check_subset_params(comp.group, comp.action);
    for (auto& [c, f] : subset_class_values(comp.group, comp.action.m, r))
      if (f.sign() > 0) vals.emplace_back(f, "subset-rcycle");
  } else {
    for (auto& h : main_hits(comp.group, comp.action, r)) vals.emplace_back(h.fpr, h.record->id);
  }
  std::sort(vals.begin(), vals.end(), [](auto& x, auto& y) { return x.first > y.first; });

  const auto& rec = exception_record("product");
  std::vector<ExceptionHit> out;
  std::set<BigRational> seen;
  std::vector<std::size_t> pick;
  // multisets of at most k nontrivial coordinates, in nonincreasing value order
  std::function<void(std::size_t, const BigRational&)> walk = [&](std::size_t from, const BigRational& acc) {
    if (!pick.empty() && acc > cut && seen.insert(acc).second) {
      Params p{{"num", to_ll(acc.num())}, {"den", to_ll(acc.den())}, {"r", r}};
      ExceptionHit h{&rec, p, acc, {}};
      for (auto i : pick)
        if (std::find(h.via.begin(), h.via.end(), vals[i].second) == h.via.end()) h.via.push_back(vals[i].second);
      out.push_back(std::move(h));
    }
    if (pick.size() == g.k) return;
    for (std::size_t i = from; i < vals.size(); ++i) {
      BigRational next = acc * vals[i].first;
      if (!(next > cut)) continue;
      pick.push_back(i);
      walk(i, next);
      pick.pop_back();
    }
  };
  walk(0, BigRational(1));
  return out;
}

std::vector<ExceptionHit> main_hits(const GroupSpec& g, const ActionSpec& a, long long r, Bound b) {
  if (!known_extension(g.extension)) throw UnknownFamily("unrecognized extension '" + g.extension + "'");
  switch (g.family) {
    case Family::SymAlt: {
      if (a.kind == ActionKind::Subsets) {
        check_subset_params(g, a);
        if (!g.extension.empty()) throw UnknownFamily("subset action of an extension of A_n");
        std::vector<ExceptionHit> out;
        const auto& rec = exception_record("subset-rcycle");
        for (auto& [c, f] : subset_class_values(g, a.m, r))
          if (f > threshold(r, Bound::Main))
            out.push_back({&rec, Params{{"n", g.n}, {"l", a.m}, {"r", r}, {"c", c}}, f, {}});
        return out;
      }
      if (a.kind == ActionKind::Partitions) {
        if (g.n < 6 || g.n % 2) throw UnknownFamily("partition action needs n >= 6 even");
        if (!g.extension.empty()) throw UnknownFamily("partition action of an extension of A_n");
        if (g.alt || r != 2) return {};
        const auto& rec = exception_record("partition-transposition");
        Params p{{"n", g.n}};
        return {{&rec, p, rec.value(p), {}}};
      }
      if (a.kind == ActionKind::Catalog) {
        static const std::set<std::string> table4 = {"A5prim", "S5prim", "S2wrS3", "S3wrS2.2"};
        if (g.n != 6 || !table4.count(a.name)) throw UnknownFamily("unknown coset action '" + a.name + "'");
        return table_hits(g, a, r, {"a6"}, Params{});
      }
      throw UnknownFamily("action " + a.label() + " of " + g.label());
    }
    case Family::Linear:
    case Family::Unitary:
    case Family::Symplectic:
    case Family::OrthogonalOdd:
    case Family::OrthogonalEven:
      // the 1/r bound has its own (shorter) table
      if (b == Bound::OneOverR) return table_hits(g, a, r, {"subb2"}, classical_params(g, a));
      return table_hits(g, a, r, {"class"}, classical_params(g, a));
    case Family::Sporadic:
      if (a.kind == ActionKind::Catalog) return table_hits(g, a, r, {"main"}, Params{});
      return {};
    case Family::Affine: {
      if (a.kind != ActionKind::NaturalPoints) throw UnknownFamily("affine groups act on V");
      if (r != g.p || g.d < 2 || !affine_has_transvection(g)) return {};
      const auto& rec = exception_record("affine-transvection");
      Params p{{"p", g.p}, {"d", g.d}};
      return {{&rec, p, rec.value(p), {}}};
    }
    case Family::Diagonal:
    case Family::TwistedWreath: return {};
    case Family::Product: return product_hits(g, r);
  }
  throw UnknownFamily(g.label());
}

}  // namespace

std::string to_string(Bound b) {
  switch (b) {
    case Bound::Main: return "main";
    case Bound::Sqrt: return "sqrt";
    case Bound::OneOverR: return "one-over-r";
  }
  return "?";
}

Bound bound_from_string(const std::string& s) {
  if (s == "main") return Bound::Main;
  if (s == "sqrt") return Bound::Sqrt;
  if (s == "one-over-r" || s == "1/r") return Bound::OneOverR;
  throw BadSpec("unknown bound '" + s + "'");
}

BigRational threshold(long long r, Bound b) {
  require_prime(r);
  return b == Bound::OneOverR ? Q(1, r) : Q(1, r + 1);
}

bool within_bound(const BigRational& fpr, long long r, Bound b) {
  BigRational t = threshold(r, b);
  return b == Bound::Sqrt ? fpr * fpr <= t : fpr <= t;
}

Json ExceptionHit::to_json() const {
  Json j;
  j["id"] = record->id;
  j["table"] = record->table;
  j["element"] = record->element;
  j["anchor"] = record->anchor;
  j["params"] = params.to_json();
  j["fpr"] = fpr.str();
  if (!via.empty()) j["via"] = via;
  return j;
}

Canonical canonicalize(const GroupSpec& g, const ActionSpec& a) {
  const std::string& e = g.extension;
  auto keep = [&]() { return Canonical{g, a, ""}; };
  switch (g.family) {
    case Family::SymAlt:
      if (a.kind == ActionKind::NaturalPoints) return {g, subsets(1), "natural action as 1-subsets"};
      if (a.kind == ActionKind::Subsets && 2 * a.m > g.n) return {g, subsets(g.n - a.m), "complements"};
      if (a.kind == ActionKind::Catalog && g.n == 8 && g.alt && e.empty() && a.name == "AGL3(2)") {
        GroupSpec l;
        l.family = Family::Linear;
        l.n = 4;
        l.q = 2;
        ActionSpec p1;
        p1.kind = ActionKind::P;
        p1.m = 1;
        return {l, p1, "A8 = L4(2), cosets of AGL3(2) = points"};
      }
      if (a.kind == ActionKind::Catalog && g.n == 6 && e.empty()) {
        if (g.alt && a.name == "S5prim") return {g, named(ActionKind::Catalog, "A5prim"), "A6 cosets of A5 (prim)"};
        if (!g.alt && a.name == "A5prim") return {g, named(ActionKind::Catalog, "S5prim"), "S6 cosets of S5 (prim)"};
        if (g.alt && a.name == "S2wrS3") return {g, subsets(2), "outer automorphism of S6"};
      }
      return keep();
    case Family::Linear: {
      if (a.kind == ActionKind::P && g.n >= 3 && a.m == g.n - 1) {
        ActionSpec p1 = a;
        p1.m = 1;
        return {g, p1, "hyperplanes via the inverse-transpose automorphism"};
      }
      if (a.kind != ActionKind::P) return keep();
      if (g.n == 2 && g.q == 4 && a.m == 1) {
        bool alt = !one_of(e, {".2", ":2", "PGammaL", "PSigmaL", "Aut"});
        return {sym(5, alt), subsets(1), "L2(4) = A5 on the projective line"};
      }
      if (g.n == 2 && g.q == 9 && a.m == 1) {
        if (e.empty()) return {sym(6, true), named(ActionKind::Partitions), "L2(9) = A6 on bisections"};
        if (one_of(e, {".2_1", "S6"})) return {sym(6, false), named(ActionKind::Partitions), "L2(9).2_1 = S6 on bisections"};
        if (one_of(e, {"PGammaL", "Aut", "2^2"}))
          return {sym(6, true, "2^2"), named(ActionKind::Catalog, "S3wrS2.2"), "PGammaL2(9) = A6.2^2"};
        if (e == ".2") throw UnknownFamily("L2(9).2 is ambiguous; use .2_1, .2_2 or .2_3");
        return keep();
      }
      if (g.n == 4 && g.q == 2 && a.m == 2) {
        bool alt = !one_of(e, {".2", ":2", "Aut"});
        return {sym(8, alt), named(ActionKind::Partitions), "L4(2) = A8, lines = bisections of 8"};
      }
      return keep();
    }
    case Family::Symplectic:
      if (g.n == 4 && g.q == 2) {
        bool alt = e == "'";
        if (a.kind == ActionKind::OEpsilon && a.eta == 1)
          return {sym(6, alt), named(ActionKind::Partitions), "Sp4(2) = S6, O4+(2) cosets = bisections"};
        if (a.kind == ActionKind::OEpsilon && a.eta == -1)
          return {sym(6, alt), subsets(1), "Sp4(2) = S6, O4-(2) cosets = points"};
        if (a.kind == ActionKind::P && a.m == 1) return {sym(6, alt), subsets(2), "Sp4(2) = S6, points = duads"};
        if (a.kind == ActionKind::P && a.m == 2)
          return {sym(6, alt), named(ActionKind::Catalog, "S2wrS3"), "Sp4(2) = S6, lines = synthemes"};
      }
      return keep();
    case Family::Product: {
      if (!g.component) return keep();
      auto c = canonicalize(*g.component, component_action(g));
      if (c.note.empty()) return keep();
      GroupSpec out = g;
      out.component = std::make_shared<GroupSpec>(c.group);
      out.component_action = c.action.label();
      return {out, a, "component: " + c.note};
    }
    default: return keep();
  }
}

bool group_contains(const GroupSpec& g, const std::string& tok) {
  const std::string& e = g.extension;
  if (tok.empty()) return true;
  if (e == "<" + tok + ">" || e == "Aut") return true;
  if (tok == "phi") return g.family == Family::Linear && one_of(e, {":3", ".3", "PGammaL", "PSigmaL"});
  if (tok == "tau") return g.family == Family::Unitary && one_of(e, {".2", ":2"});
  if (tok == "O") return g.family == Family::OrthogonalEven && one_of(e, {"O", "PGO", ".2", ":2"});
  if (tok == "omega") {
    if (g.family == Family::Linear) return std::gcd(g.n, g.q - 1) == 1 || one_of(e, {"PGL", "PGammaL"});
    if (g.family == Family::Unitary) return std::gcd(g.n, g.q + 1) == 1 || one_of(e, {"PGU", "PGammaU"});
    return false;
  }
  if (tok == "r+" || tok == "r-") {
    if (g.family != Family::OrthogonalOdd) return false;
    return one_of(e, {"SO", "O", "PGO"}) || g.n % 4 == (tok == "r+" ? 1u : 3u);
  }
  if (tok == "r" || tok == "rsq" || tok == "rnsq") return g.family == Family::OrthogonalEven && one_of(e, {"O", "PGO"});
  return false;
}

std::vector<ExceptionHit> exceptions_for(const GroupSpec& g, const ActionSpec& a, long long r, Bound b) {
  if (auto v = validate(g, a); !v.empty()) throw BadSpec(v.front());
  require_prime(r);
  auto c = canonicalize(g, a);
  std::vector<ExceptionHit> out;
  for (auto& h : main_hits(c.group, c.action, r, b))
    if (!within_bound(h.fpr, r, b)) out.push_back(std::move(h));
  std::stable_sort(out.begin(), out.end(), [](const ExceptionHit& x, const ExceptionHit& y) { return x.fpr > y.fpr; });
  return out;
}

Json ClassificationReport::to_json() const {
  Json j;
  j["group"] = fpr::to_json(group);
  j["action"] = fpr::to_json(action);
  j["prime"] = prime;
  j["bound"] = to_string(bound);
  j["threshold"] = threshold.str();
  if (bound == Bound::Sqrt) j["compare"] = "fpr^2";
  j["verdict"] = exceptions.empty() ? "NoException" : "Exceptions";
  Json xs = Json::array();
  for (const auto& h : exceptions) xs.push_back(h.to_json());
  j["exceptions"] = xs;
  j["notes"] = notes;
  return j;
}

ClassificationReport classify(const GroupSpec& g, const ActionSpec& a, long long r, Bound b) {
  ClassificationReport rep;
  rep.group = g;
  rep.action = a;
  rep.prime = r;
  rep.bound = b;
  rep.exceptions = exceptions_for(g, a, r, b);
  rep.threshold = threshold(r, b);
  auto c = canonicalize(g, a);
  if (!c.note.empty()) rep.notes.push_back("canonical form " + c.group.label() + " on " + c.action.label() + ": " + c.note);
  if (g.family == Family::Product)
    rep.notes.push_back("product type: assumes G contains the base group L^k (unchecked hypothesis)");
  return rep;
}

// ---------------------------------------------------------------------------

Json DegreeResult::to_json() const {
  Json j;
  j["kind"] = kind == Kind::Exact ? "exact" : "threshold-only";
  j[kind == Kind::Exact ? "mu" : "lower_bound"] = value.str();
  j["degree"] = degree.str();
  j["source"] = source;
  return j;
}

DegreeResult minimal_degree_formula(const GroupSpec& g, const ActionSpec& a) {
  if (auto v = validate(g, a); !v.empty()) throw BadSpec(v.front());
  auto c = canonicalize(g, a);
  if (auto s = as_subset_action(c.group, c.action)) c = *s;
  const GroupSpec& G = c.group;
  const ActionSpec& A = c.action;
  if (!known_extension(G.extension)) throw UnknownFamily("unrecognized extension '" + G.extension + "'");

  DegreeResult res;
  res.degree = action_degree(G, A);
  const BigInt m = res.degree;
  auto exact = [&](const BigRational& mu, const std::string& src) {
    res.kind = DegreeResult::Kind::Exact;
    res.value = mu;
    res.source = src;
    return res;
  };
  const long long n = G.n, q = G.q;
  switch (G.family) {
    case Family::SymAlt:
      if (A.kind == ActionKind::Subsets && G.extension.empty()) {
        check_subset_params(G, A);
        BigRational best = 0;
        for (long long r = 2; r <= n; ++r)
          if (prime_ll(r))
            for (auto& [cc, f] : subset_class_values(G, A.m, r)) best = std::max(best, f);
        return exact(BigRational(m) * (1 - best), "subset action: element with the most fixed points");
      }
      if (A.kind == ActionKind::Partitions && !G.alt && G.extension.empty() && n >= 6 && n % 2 == 0) {
        BigInt fact = 1, half = 1;
        for (long long i = 2; i <= n; ++i) fact *= i;
        for (long long i = 2; i <= n / 2; ++i) half *= i;
        return exact(Q(1, 4) * (1 + Q(1, n - 1)) * Q(fact, half * half), "partition action of S_n");
      }
      // PGammaL2(9) on 10 points contains S_6 on bisections
      if (A.kind == ActionKind::Catalog && A.name == "S3wrS2.2" && n == 6 && G.extension == "2^2")
        return exact(6, "A6.2^2 on 10 points: contains S_6 on bisections");
      break;
    case Family::Sporadic:
      if (A.kind == ActionKind::Catalog && A.name == "L3(4).2_2" && exception_record("m22.2/2B").group_ok(G))
        return exact(14, "M22:2 of degree 22");
      break;
    case Family::Linear:
      if (A.kind == ActionKind::P && A.m == 1 && n >= 3) {
        if (q == 2) return exact(P(2, n - 1), "minimal degree table: L_n(2), P_1");
        if (q == 3 && group_contains(G, "omega")) return exact(P(3, n - 1) - 1, "minimal degree table: L_n(3), P_1");
      }
      break;
    case Family::Unitary:
      if (A.kind == ActionKind::P && A.m == 2 && n == 4 && (q == 2 || q == 3) && group_contains(G, "tau"))
        return exact(q * q * (q * q - 1), "minimal degree table: U_4(q), P_2");
      break;
    case Family::Symplectic:
      if (q == 2 && n >= 6) {
        if (A.kind == ActionKind::P && A.m == 1) return exact(P(2, n - 1), "minimal degree table: Sp_n(2), P_1");
        if (A.kind == ActionKind::OEpsilon)
          return exact(P(2, n / 2 - 1) * (P(2, n / 2 - 1) + A.eta), "minimal degree table: Sp_n(2), O_n^eps(2)");
      }
      break;
    case Family::OrthogonalOdd:
      if (q == 3 && A.kind == ActionKind::P && A.m == 1 && group_contains(G, "r+"))
        return exact(P(3, (n - 3) / 2) * (P(3, (n - 1) / 2) - 1), "minimal degree table: Omega_n(3), P_1");
      if (q == 3 && A.kind == ActionKind::N && A.m == 1 && A.eta == -1 && group_contains(G, "r-"))
        return exact(P(3, n - 2) - 2 * P(3, (n - 3) / 2) - 1, "minimal degree table: Omega_n(3), N_1^-");
      break;
    case Family::OrthogonalEven: {
      const long long h = n / 2, e = G.eps;
      if (A.kind == ActionKind::P && A.m == 1) {
        if (q == 2 && group_contains(G, "O"))
          return exact(P(2, h - 1) * (P(2, h - 1) + e), "minimal degree table: O_n^eps(2), P_1");
        if (q == 3 && e == -1 && group_contains(G, "r"))
          return exact(P(3, h - 1) * (P(3, h - 1) - 1), "minimal degree table: POmega_n^-(3), P_1");
      }
      if (A.kind == ActionKind::N1Nonsingular && q == 2 && group_contains(G, "O"))
        return exact(P(2, h - 1) * (P(2, h - 1) - e), "minimal degree table: O_n^eps(2), N_1");
      if (A.kind == ActionKind::N && A.m == 1 && q == 3) {
        if (e == 1 && group_contains(G, "rnsq"))
          return exact(P(3, h - 1) * (P(3, h - 1) - 1), "minimal degree table: POmega_n^+(3), N_1");
        if (e == -1 && group_contains(G, "rsq"))
          return exact(P(3, n - 2) - 1, "minimal degree table: POmega_n^-(3), N_1");
      }
      break;
    }
    case Family::Affine:
      if (G.p == 2 && G.d >= 2 && affine_has_transvection(G))
        return exact(P(2, G.d - 1), "affine group over GF(2) containing a transvection");
      break;
    case Family::Product: {
      auto comp = minimal_degree_formula(*G.component, component_action(G));
      if (comp.kind == DegreeResult::Kind::Exact)
        return exact(BigRational(ipow(comp.degree, G.k - 1)) * comp.value,
                     "product type: |Gamma|^(k-1) mu(L), assuming G contains L^k");
      break;
    }
    default: break;
  }
  res.kind = DegreeResult::Kind::ThresholdOnly;
  res.value = BigRational(2) * BigRational(m) / 3;
  res.source = "no listed case: mu(G) >= 2m/3";
  return res;
}

BigInt minimal_index_subset(long long n, long long l, bool alt) {
  if (n < 5) throw std::invalid_argument("n >= 5");
  if (l < 1 || 2 * l >= n) throw std::invalid_argument("1 <= l < n/2");
  if (!alt) return binomial(n - 2, l - 1);
  return (binomial(n, l) - binomial(n - 4, l) - 2 * binomial(n - 4, l - 2) - binomial(n - 4, l - 4)) / 2;
}

Json IndexResult::to_json() const {
  Json j;
  j["kind"] = kind == Kind::Exact ? "exact" : "range-only";
  if (kind == Kind::Exact) j["ind"] = value.str();
  else {
    j["lower"] = lower.str();
    j["upper"] = upper.str();
  }
  j["degree"] = degree.str();
  j["source"] = source;
  if (!notes.empty()) j["notes"] = notes;
  return j;
}

IndexResult minimal_index_formula(const GroupSpec& g, const ActionSpec& a) {
  if (auto v = validate(g, a); !v.empty()) throw BadSpec(v.front());
  if (g.family == Family::Affine && affine_odd_order(g))
    throw OddOrder(g.label() + " has odd order; use the odd-order index bounds");
  auto c = canonicalize(g, a);
  if (auto s = as_subset_action(c.group, c.action)) c = *s;
  const GroupSpec& G = c.group;
  const ActionSpec& A = c.action;
  if (!known_extension(G.extension)) throw UnknownFamily("unrecognized extension '" + G.extension + "'");

  IndexResult res;
  res.degree = action_degree(G, A);
  const BigInt m = res.degree;
  auto exact = [&](const BigRational& v, const std::string& src) {
    res.kind = IndexResult::Kind::Exact;
    res.value = v;
    res.source = src;
    return res;
  };
  const long long n = G.n, q = G.q;
  switch (G.family) {
    case Family::SymAlt:
      if (A.kind == ActionKind::Subsets && G.extension.empty() && n >= 5 && 2 * A.m < n)
        return exact(minimal_index_subset(n, A.m, G.alt), "subset action of S_n / A_n");
      break;
    case Family::Linear:
      if (A.kind == ActionKind::P && A.m == 1 && n == 2 && q == 8 && group_contains(G, "phi"))
        return exact(4, "L2(8):3 on 9 points");
      break;
    case Family::Unitary:
      if (A.kind == ActionKind::P && A.m == 2 && n == 4 && q == 2 && group_contains(G, "tau"))
        return exact(6, "minimal index table: U4(2).2, P_2");
      break;
    case Family::Symplectic:
      if (q == 2 && n >= 6 && A.kind == ActionKind::OEpsilon && A.eta == -1)
        return exact(P(2, n / 2 - 2) * (P(2, n / 2 - 1) - 1), "minimal index table: Sp_n(2), O_n^-(2)");
      break;
    case Family::OrthogonalEven:
      if (q == 2 && n >= 8 && group_contains(G, "O")) {
        BigInt v = P(2, n / 2 - 2) * (P(2, n / 2 - 1) - 1);
        if (G.eps == -1 && A.kind == ActionKind::P && A.m == 1) return exact(v, "minimal index table: O_n^-(2), P_1");
        if (G.eps == 1 && A.kind == ActionKind::N1Nonsingular) return exact(v, "minimal index table: O_n^+(2), N_1");
      }
      break;
    case Family::Product: {
      auto comp = minimal_index_formula(*G.component, component_action(G));
      if (comp.kind == IndexResult::Kind::Exact) {
        exact(BigRational(ipow(comp.degree, G.k - 1)) * comp.value, "product type: |Gamma|^(k-1) Ind(L)");
        res.notes.push_back("assumes G = L wr P with L^k in G (unchecked hypothesis)");
        return res;
      }
      break;
    }
    default: break;
  }
  res.kind = IndexResult::Kind::RangeOnly;
  res.lower = BigRational(m) / 4;
  res.upper = BigRational(m) / 2;
  res.source = "no listed case: m/4 <= Ind(G) <= m/2";
  return res;
}

BigRational ind_from_fpr_profile(const BigInt& m, unsigned order, const std::vector<BigRational>& fprs) {
  if (order == 0 || fprs.size() != order)
    throw std::invalid_argument("profile length " + std::to_string(fprs.size()) + " != order " + std::to_string(order));
  BigRational s = std::accumulate(fprs.begin(), fprs.end(), BigRational(0));
  return BigRational(m) * (1 - s / BigRational(static_cast<long long>(order)));
}

std::pair<BigRational, BigRational> odd_order_index_bounds(long long p, long long d, long long r, const BigInt& m) {
  if (p == 2) throw std::invalid_argument("p = 2: odd-order bounds need p odd");
  if (!prime_ll(p) || d < 1) throw std::invalid_argument("p odd prime, d >= 1");
  if (!prime_ll(r)) throw std::invalid_argument("r prime");
  if (m != P(p, d)) throw std::invalid_argument("m = p^d");
  BigRational M(m);
  BigRational a = M * (1 - Q(3, 2 * r + 1));
  BigRational b = M * (1 - Q(1, p)) * (1 - Q(1, p));
  return {std::min(a, b), M * (1 - Q(1, r))};
}

}  // namespace fpr
