#include "fpr/model.hpp"

#include <algorithm>
#include <sstream>

namespace fpr {

namespace {

const std::vector<std::pair<Family, std::string>>& family_names() {
  static const std::vector<std::pair<Family, std::string>> names = {
      {Family::SymAlt, "SymAlt"},
      {Family::Linear, "Linear"},
      {Family::Unitary, "Unitary"},
      {Family::Symplectic, "Symplectic"},
      {Family::OrthogonalOdd, "OrthogonalOdd"},
      {Family::OrthogonalEven, "OrthogonalEven"},
      {Family::Sporadic, "Sporadic"},
      {Family::Affine, "Affine"},
      {Family::Diagonal, "Diagonal"},
      {Family::Product, "Product"},
      {Family::TwistedWreath, "TwistedWreath"},
  };
  return names;
}

bool is_prime_power(unsigned q) {
  if (q < 2) return false;
  unsigned p = 2;
  while (q % p) ++p;
  while (q % p == 0) q /= p;
  return q == 1;
}

std::string sign_str(int e) { return e > 0 ? "+" : e < 0 ? "-" : ""; }

bool is_classical(Family f) {
  return f == Family::Linear || f == Family::Unitary || f == Family::Symplectic ||
         f == Family::OrthogonalOdd || f == Family::OrthogonalEven;
}

unsigned char_of(unsigned q) {
  unsigned p = 2;
  while (q % p) ++p;
  return p;
}

}  // namespace

std::string to_string(Family f) {
  for (const auto& [k, v] : family_names())
    if (k == f) return v;
  return "?";
}

Family family_from_string(const std::string& s) {
  static const std::map<std::string, Family> alias = {
      {"SymAlt", Family::SymAlt},        {"S", Family::SymAlt},
      {"A", Family::SymAlt},             {"Linear", Family::Linear},
      {"L", Family::Linear},             {"Unitary", Family::Unitary},
      {"U", Family::Unitary},            {"Symplectic", Family::Symplectic},
      {"Sp", Family::Symplectic},        {"OrthogonalOdd", Family::OrthogonalOdd},
      {"O", Family::OrthogonalOdd},      {"Omega", Family::OrthogonalOdd},
      {"OrthogonalEven", Family::OrthogonalEven}, {"Oeps", Family::OrthogonalEven},
      {"POmega", Family::OrthogonalEven}, {"Sporadic", Family::Sporadic},
      {"Affine", Family::Affine},        {"Diagonal", Family::Diagonal},
      {"Product", Family::Product},      {"TwistedWreath", Family::TwistedWreath},
  };
  auto it = alias.find(s);
  if (it == alias.end()) throw BadSpec("unknown family '" + s + "'");
  return it->second;
}

std::string GroupSpec::label() const {
  std::ostringstream os;
  switch (family) {
    case Family::SymAlt: os << (alt ? "A" : "S") << n; break;
    case Family::Linear: os << "L" << n << "(" << q << ")"; break;
    case Family::Unitary: os << "U" << n << "(" << q << ")"; break;
    case Family::Symplectic: os << "Sp" << n << "(" << q << ")"; break;
    case Family::OrthogonalOdd: os << "Omega" << n << "(" << q << ")"; break;
    case Family::OrthogonalEven: os << "Omega" << n << sign_str(eps) << "(" << q << ")"; break;
    case Family::Sporadic: os << name; break;
    case Family::Affine: os << p << "^" << d << ":" << name; break;
    case Family::Diagonal: os << "diag(" << name << "^" << k << ")"; break;
    case Family::Product:
      os << (component ? component->label() : std::string("?"));
      if (!component_action.empty()) os << "/" << component_action;
      os << " wr S" << k;
      break;
    case Family::TwistedWreath: os << "twr(" << name << "," << k << ")"; break;
  }
  if (!extension.empty()) os << "[" << extension << "]";
  return os.str();
}

std::string ActionSpec::label() const {
  switch (kind) {
    case ActionKind::Subsets: return "subsets:" + std::to_string(m);
    case ActionKind::Partitions: return "partitions";
    case ActionKind::P: return "P" + std::to_string(m);
    case ActionKind::PPair: return "P" + std::to_string(m) + "," + "n-" + std::to_string(m);
    case ActionKind::N: return "N" + std::to_string(m) + (eta ? ":" + sign_str(eta) : "");
    case ActionKind::N1Nonsingular: return "N1ns";
    case ActionKind::OEpsilon: return "Oeps:" + sign_str(eta);
    case ActionKind::NaturalPoints: return "natural";
    case ActionKind::Catalog: return "catalog:" + name;
  }
  return "?";
}

ActionSpec ActionSpec::parse(const std::string& s) {
  ActionSpec a;
  auto num = [&](const std::string& t) -> unsigned {
    if (t.empty() || !std::all_of(t.begin(), t.end(), ::isdigit)) throw BadSpec("bad action '" + s + "'");
    return static_cast<unsigned>(std::stoul(t));
  };
  auto sgn = [&](const std::string& t) -> int {
    if (t == "+" || t == "plus") return 1;
    if (t == "-" || t == "minus") return -1;
    throw BadSpec("bad sign in action '" + s + "'");
  };
  std::string head = s, tail;
  if (auto c = s.find(':'); c != std::string::npos) {
    head = s.substr(0, c);
    tail = s.substr(c + 1);
  }
  if (head == "subsets") {
    a.kind = ActionKind::Subsets;
    a.m = num(tail);
  } else if (head == "partitions") {
    a.kind = ActionKind::Partitions;
  } else if (head == "natural") {
    a.kind = ActionKind::NaturalPoints;
  } else if (head == "N1ns") {
    a.kind = ActionKind::N1Nonsingular;
    a.m = 1;
  } else if (head == "Oeps" || head == "O") {
    a.kind = ActionKind::OEpsilon;
    a.eta = sgn(tail);
  } else if (head == "catalog") {
    a.kind = ActionKind::Catalog;
    a.name = tail;
    if (tail.empty()) throw BadSpec("catalog action needs a name");
  } else if (head.size() >= 2 && head[0] == 'P' && head.find(',') != std::string::npos) {
    a.kind = ActionKind::PPair;  // "P1,n-1" or "P1,3"
    a.m = num(head.substr(1, head.find(',') - 1));
  } else if (head.size() >= 2 && head[0] == 'P') {
    a.kind = ActionKind::P;
    a.m = num(head.substr(1));
  } else if (head.size() >= 2 && head[0] == 'N') {
    a.kind = ActionKind::N;
    a.m = num(head.substr(1));
    if (!tail.empty()) a.eta = sgn(tail);
  } else {
    throw BadSpec("unknown action '" + s + "'");
  }
  return a;
}

unsigned ElementSpec::dim() const {
  unsigned d = 0;
  for (const auto& b : blocks) d += b.dim();
  return d;
}

bool ElementSpec::unipotent() const {
  if (blocks.empty()) return false;
  bool nontrivial = false;
  for (const auto& b : blocks) {
    if (b.kind != ElementBlock::Kind::Jordan && !(b.kind == ElementBlock::Kind::Scalar && b.power == 0))
      return false;
    if (b.kind == ElementBlock::Kind::Jordan && b.size > 1) nontrivial = true;
  }
  return nontrivial;
}

std::string ElementSpec::label() const {
  if (outer) return *outer == "field_aut" ? "phi" : "tau";
  std::ostringstream os;
  os << "(";
  bool first = true;
  for (const auto& b : blocks) {
    if (!first) os << ",";
    first = false;
    std::string body;
    switch (b.kind) {
      case ElementBlock::Kind::Jordan: body = "J" + std::to_string(b.size); break;
      case ElementBlock::Kind::Scalar:
        body = b.power == 0 ? "I" : (b.power == 1 ? "omega" : "omega^" + std::to_string(b.power));
        break;
      case ElementBlock::Kind::Irreducible: body = b.paired ? "Lambda,Lambda^-1" : "Lambda"; break;
      case ElementBlock::Kind::NegIdentity: body = "-I"; break;
    }
    if (b.kind == ElementBlock::Kind::Scalar || b.kind == ElementBlock::Kind::NegIdentity) {
      if (b.power == 0 && b.kind == ElementBlock::Kind::Scalar) body += std::to_string(b.mult);
      else if (b.kind == ElementBlock::Kind::NegIdentity) body += std::to_string(b.mult);
      else if (b.mult > 1) body += " I" + std::to_string(b.mult);
    } else if (b.mult > 1) {
      body += "^" + std::to_string(b.mult);
    }
    os << body;
  }
  os << ")";
  if (eigenspace_type) os << "^" << sign_str(*eigenspace_type);
  if (discriminant) os << "^" << (*discriminant == "square" ? "sq" : "nsq");
  if (involution_class) os << "[" << *involution_class << "]";
  return os.str();
}

ElementSpec ElementSpec::transvection(unsigned n, unsigned p) {
  ElementSpec e;
  e.order = p;
  e.blocks.push_back({ElementBlock::Kind::Jordan, 2, 1, 0, false});
  if (n > 2) e.blocks.push_back({ElementBlock::Kind::Jordan, 1, n - 2, 0, false});
  return e;
}

ElementSpec ElementSpec::scalar_on(unsigned n, unsigned a, unsigned r) {
  ElementSpec e;
  e.order = r;
  e.blocks.push_back({ElementBlock::Kind::Scalar, 1, a, 1, false});
  if (n > a) e.blocks.push_back({ElementBlock::Kind::Scalar, 1, n - a, 0, false});
  return e;
}

ElementSpec ElementSpec::irreducible(unsigned n, unsigned i, unsigned r) {
  ElementSpec e;
  e.order = r;
  e.blocks.push_back({ElementBlock::Kind::Irreducible, i, 1, 0, false});
  if (n > i) e.blocks.push_back({ElementBlock::Kind::Scalar, 1, n - i, 0, false});
  return e;
}

ElementSpec ElementSpec::neg_reflection(unsigned n) {
  ElementSpec e;
  e.order = 2;
  e.blocks.push_back({ElementBlock::Kind::NegIdentity, 1, n - 1, 0, false});
  e.blocks.push_back({ElementBlock::Kind::Scalar, 1, 1, 0, false});
  return e;
}

ElementSpec ElementSpec::outer_element(const std::string& kind, unsigned r) {
  ElementSpec e;
  e.order = r;
  e.outer = kind;
  return e;
}

unsigned nu_of_spec(const ElementSpec& spec) {
  // Eigenvalue keys: "1", "-1", "w<j>", "irr<k>" (each irreducible block has its own eigenvalues).
  std::map<std::string, unsigned> eig;
  unsigned n = 0, irr = 0;
  for (const auto& b : spec.blocks) {
    n += b.dim();
    switch (b.kind) {
      case ElementBlock::Kind::Jordan: eig["1"] += b.mult; break;
      case ElementBlock::Kind::Scalar: eig[b.power == 0 ? "1" : "w" + std::to_string(b.power)] += b.mult; break;
      case ElementBlock::Kind::NegIdentity: eig["-1"] += b.mult; break;
      case ElementBlock::Kind::Irreducible: eig["irr" + std::to_string(irr++)] += b.mult; break;
    }
  }
  unsigned best = 0;
  for (const auto& [k, v] : eig) best = std::max(best, v);
  return n - best;
}

std::vector<std::string> validate(const GroupSpec& g) {
  std::vector<std::string> v;
  auto need = [&](bool ok, const std::string& what) {
    if (!ok) v.push_back(what);
  };
  switch (g.family) {
    case Family::SymAlt: need(g.n >= 2, "n >= 2"); break;
    case Family::Linear:
      need(g.n >= 2, "n >= 2");
      need(is_prime_power(g.q), "q a prime power");
      break;
    case Family::Unitary:
      need(g.n >= 3, "n >= 3");
      need(is_prime_power(g.q), "q a prime power");
      break;
    case Family::Symplectic:
      need(g.n >= 4 && g.n % 2 == 0, "n >= 4 even");
      need(is_prime_power(g.q), "q a prime power");
      break;
    case Family::OrthogonalOdd:
      need(g.n >= 7 && g.n % 2 == 1, "n >= 7 odd");
      need(is_prime_power(g.q) && g.q % 2 == 1, "q odd");
      break;
    case Family::OrthogonalEven:
      need(g.n >= 8 && g.n % 2 == 0, "n >= 8 even");
      need(is_prime_power(g.q), "q a prime power");
      need(g.eps == 1 || g.eps == -1, "epsilon = +/-");
      break;
    case Family::Sporadic: need(!g.name.empty(), "sporadic name"); break;
    case Family::Affine:
      need(is_prime(g.p), "p prime");
      need(g.d >= 1, "d >= 1");
      break;
    case Family::Diagonal:
    case Family::TwistedWreath:
      need(g.k >= 2, "k >= 2");
      need(!g.name.empty(), "socle factor descriptor");
      break;
    case Family::Product:
      need(g.k >= 2, "k >= 2");
      need(static_cast<bool>(g.component), "component group");
      if (g.component) {
        for (auto& s : validate(*g.component)) v.push_back("component: " + s);
        try {
          auto ca = ActionSpec::parse(g.component_action.empty() ? "natural" : g.component_action);
          for (auto& s : validate(*g.component, ca)) v.push_back("component action: " + s);
        } catch (const BadSpec& e) {
          v.push_back(std::string("component action: ") + e.what());
        }
      }
      break;
  }
  return v;
}

std::vector<std::string> validate(const ActionSpec& a) {
  std::vector<std::string> v;
  switch (a.kind) {
    case ActionKind::Subsets:
    case ActionKind::P:
    case ActionKind::PPair:
    case ActionKind::N:
      if (a.m < 1) v.push_back("m >= 1");
      break;
    case ActionKind::OEpsilon:
      if (a.eta != 1 && a.eta != -1) v.push_back("epsilon = +/-");
      break;
    case ActionKind::Catalog:
      if (a.name.empty()) v.push_back("catalog name");
      break;
    default: break;
  }
  return v;
}

std::vector<std::string> validate(const GroupSpec& g, const ActionSpec& a) {
  auto v = validate(g);
  for (auto& s : validate(a)) v.push_back(s);
  auto need = [&](bool ok, const std::string& what) {
    if (!ok) v.push_back(what);
  };
  const unsigned n = g.n;
  switch (a.kind) {
    case ActionKind::Subsets:
      need(g.family == Family::SymAlt, "subset actions need S_n or A_n");
      need(a.m >= 1 && 2 * a.m < n, "1 <= l < n/2");
      break;
    case ActionKind::Partitions:
      need(g.family == Family::SymAlt, "partition actions need S_n or A_n");
      need(n % 2 == 0 && n >= 4, "n even");
      break;
    case ActionKind::P: {
      need(is_classical(g.family), "P_m needs a classical group");
      unsigned witt = n / 2;
      if (g.family == Family::OrthogonalOdd) witt = (n - 1) / 2;
      if (g.family == Family::OrthogonalEven && g.eps == -1) witt = n / 2 - 1;
      need(2 * a.m <= n, "m <= n/2");
      need(a.m <= witt, "m <= Witt index");
      break;
    }
    case ActionKind::PPair:
      need(g.family == Family::Linear, "P_{m,n-m} needs a linear group");
      need(2 * a.m < n, "1 <= m < n/2");
      break;
    case ActionKind::N:
      switch (g.family) {
        case Family::Unitary: need(2 * a.m < n, "1 <= m < n/2"); break;
        case Family::Symplectic: need(a.m >= 2 && a.m % 2 == 0 && 2 * a.m < n, "2 <= m < n/2, m even"); break;
        case Family::OrthogonalOdd:
          need(2 * a.m <= n, "m <= n/2");
          need(a.eta == 1 || a.eta == -1, "eta = +/-");
          break;
        case Family::OrthogonalEven:
          need(2 * a.m <= n, "1 <= m <= n/2");
          if (a.m % 2 == 0) need(a.eta == 1 || a.eta == -1, "eta = +/- for even m");
          else need(g.q % 2 == 1, "odd m needs q odd");
          if (2 * a.m == n) need(g.eps == -1 && a.eta == 1, "(epsilon,eta) = (-,+) when m = n/2");
          break;
        default: v.push_back("N_m needs a unitary, symplectic or orthogonal group");
      }
      break;
    case ActionKind::N1Nonsingular:
      need(g.family == Family::OrthogonalEven && g.q % 2 == 0, "nonsingular 1-spaces need n, q even");
      break;
    case ActionKind::OEpsilon:
      need(g.family == Family::Symplectic && g.q % 2 == 0, "O_eps cosets need Sp_n(q), q even");
      break;
    case ActionKind::NaturalPoints:
      need(g.family == Family::SymAlt || g.family == Family::Affine || g.family == Family::Sporadic ||
               g.family == Family::Diagonal || g.family == Family::Product,
           "natural action for this family");
      break;
    case ActionKind::Catalog: break;
  }
  return v;
}

std::vector<std::string> validate(const ElementSpec& e, const GroupSpec& g) {
  std::vector<std::string> v;
  if (!is_prime(e.order)) v.push_back("order is prime");
  if (is_classical(g.family)) {
    if (!e.outer && e.dim() != g.n) v.push_back("block dimensions sum to n");
    unsigned p = char_of(g.q);
    if (e.unipotent() && e.order != p) v.push_back("unipotent element needs r = p");
    if (!e.outer && !e.unipotent() && e.order == p) v.push_back("semisimple element needs r != p");
  }
  if (e.discriminant && *e.discriminant != "square" && *e.discriminant != "nonsquare")
    v.push_back("discriminant is square or nonsquare");
  if (e.involution_class && (*e.involution_class != "a" && *e.involution_class != "b" && *e.involution_class != "c"))
    v.push_back("involution class a, b or c");
  if (e.outer && *e.outer != "field_aut" && *e.outer != "graph_aut") v.push_back("outer is field_aut or graph_aut");
  return v;
}

long long Params::get(const std::string& k) const {
  auto it = v_.find(k);
  if (it == v_.end()) throw BadSpec("missing parameter '" + k + "'");
  return it->second;
}

Json Params::to_json() const {
  Json j = Json::object();
  for (const auto& [k, x] : v_) {
    if (k == "eps" || k == "eta") j[k] = x > 0 ? "+" : "-";
    else j[k] = x;
  }
  return j;
}

BigRational ExceptionRecord::eval(const Params& p) const {
  if (check)
    if (auto bad = check(p)) throw ConditionViolated(id + ": condition '" + *bad + "' fails");
  return value(p);
}

// ---------------------------------------------------------------------------

namespace {

const std::map<ActionKind, std::string>& action_kind_names() {
  static const std::map<ActionKind, std::string> m = {
      {ActionKind::Subsets, "Subsets"},       {ActionKind::Partitions, "Partitions"},
      {ActionKind::P, "P"},                   {ActionKind::PPair, "PPair"},
      {ActionKind::N, "N"},                   {ActionKind::N1Nonsingular, "N1Nonsingular"},
      {ActionKind::OEpsilon, "OEpsilon"},     {ActionKind::NaturalPoints, "NaturalPoints"},
      {ActionKind::Catalog, "Catalog"},
  };
  return m;
}

const std::map<ElementBlock::Kind, std::string>& block_kind_names() {
  static const std::map<ElementBlock::Kind, std::string> m = {
      {ElementBlock::Kind::Jordan, "Jordan"},
      {ElementBlock::Kind::Scalar, "Scalar"},
      {ElementBlock::Kind::Irreducible, "Irreducible"},
      {ElementBlock::Kind::NegIdentity, "NegIdentity"},
  };
  return m;
}

template <class K>
K key_from(const std::map<K, std::string>& m, const std::string& s) {
  for (const auto& [k, v] : m)
    if (v == s) return k;
  throw BadSpec("unknown kind '" + s + "'");
}

}  // namespace

Json to_json(const GroupSpec& g) {
  Json j;
  j["family"] = to_string(g.family);
  if (g.n) j["n"] = g.n;
  if (g.q) j["q"] = g.q;
  if (g.eps) j["eps"] = g.eps > 0 ? "+" : "-";
  if (g.alt) j["alt"] = true;
  if (g.p) j["p"] = g.p;
  if (g.d) j["d"] = g.d;
  if (g.k) j["k"] = g.k;
  if (!g.name.empty()) j["name"] = g.name;
  if (!g.extension.empty()) j["extension"] = g.extension;
  if (g.component) j["component"] = to_json(*g.component);
  if (!g.component_action.empty()) j["component_action"] = g.component_action;
  return j;
}

GroupSpec group_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("family")) throw BadSpec("group spec needs a family");
  GroupSpec g;
  g.family = family_from_string(j.at("family").get<std::string>());
  g.n = j.value("n", 0u);
  g.q = j.value("q", 0u);
  if (j.contains("eps")) {
    const auto& e = j.at("eps");
    if (e.is_string()) g.eps = e.get<std::string>() == "+" ? 1 : (e.get<std::string>() == "-" ? -1 : 0);
    else g.eps = e.get<int>();
    if (g.eps != 1 && g.eps != -1) throw BadSpec("eps must be + or -");
  }
  g.alt = j.value("alt", false);
  g.p = j.value("p", 0u);
  g.d = j.value("d", 0u);
  g.k = j.value("k", 0u);
  g.name = j.value("name", std::string());
  g.extension = j.value("extension", std::string());
  if (j.contains("component")) g.component = std::make_shared<GroupSpec>(group_from_json(j.at("component")));
  g.component_action = j.value("component_action", std::string());
  return g;
}

Json to_json(const ActionSpec& a) {
  Json j;
  j["kind"] = action_kind_names().at(a.kind);
  if (a.m) j["m"] = a.m;
  if (a.eta) j["eta"] = a.eta > 0 ? "+" : "-";
  if (!a.name.empty()) j["name"] = a.name;
  j["label"] = a.label();
  return j;
}

ActionSpec action_from_json(const Json& j) {
  if (j.is_string()) return ActionSpec::parse(j.get<std::string>());
  if (!j.is_object() || !j.contains("kind")) throw BadSpec("action spec needs a kind");
  ActionSpec a;
  a.kind = key_from(action_kind_names(), j.at("kind").get<std::string>());
  a.m = j.value("m", 0u);
  if (j.contains("eta")) {
    const auto& e = j.at("eta");
    a.eta = e.is_string() ? (e.get<std::string>() == "+" ? 1 : -1) : e.get<int>();
  }
  a.name = j.value("name", std::string());
  return a;
}

Json to_json(const ElementSpec& e) {
  Json j;
  j["order"] = e.order;
  Json blocks = Json::array();
  for (const auto& b : e.blocks) {
    Json bj;
    bj["kind"] = block_kind_names().at(b.kind);
    bj["size"] = b.size;
    bj["mult"] = b.mult;
    if (b.kind == ElementBlock::Kind::Scalar) bj["power"] = b.power;
    if (b.paired) bj["paired"] = true;
    blocks.push_back(bj);
  }
  j["blocks"] = blocks;
  if (e.discriminant) j["discriminant"] = *e.discriminant;
  if (e.eigenspace_type) j["eigenspace_type"] = *e.eigenspace_type > 0 ? "+" : "-";
  if (e.involution_class) j["involution_class"] = *e.involution_class;
  if (e.outer) j["outer"] = *e.outer;
  j["label"] = e.label();
  return j;
}

ElementSpec element_from_json(const Json& j) {
  if (!j.is_object()) throw BadSpec("element spec must be an object");
  ElementSpec e;
  e.order = j.value("order", 0u);
  if (j.contains("blocks"))
    for (const auto& bj : j.at("blocks")) {
      ElementBlock b;
      b.kind = key_from(block_kind_names(), bj.at("kind").get<std::string>());
      b.size = bj.value("size", 1u);
      b.mult = bj.value("mult", 1u);
      b.power = bj.value("power", 0u);
      b.paired = bj.value("paired", false);
      e.blocks.push_back(b);
    }
  if (j.contains("discriminant")) e.discriminant = j.at("discriminant").get<std::string>();
  if (j.contains("eigenspace_type")) {
    const auto& t = j.at("eigenspace_type");
    e.eigenspace_type = t.is_string() ? (t.get<std::string>() == "+" ? 1 : -1) : t.get<int>();
  }
  if (j.contains("involution_class")) e.involution_class = j.at("involution_class").get<std::string>();
  if (j.contains("outer")) e.outer = j.at("outer").get<std::string>();
  return e;
}

}  // namespace fpr
