// fpr: formulas, brute-force oracle, classification and verification suites.
//
// Exit codes: 0 ok, 1 verification failure, 2 bad spec or unknown id, 3 condition violated,
// 4 budget exceeded.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>

#include "fpr/classifier.hpp"
#include "fpr/formulas.hpp"
#include "fpr/harness.hpp"

using namespace fpr;

namespace {

struct BudgetError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct SpecFlags {
  std::string spec, family, name, ext, action, component_action;
  unsigned n = 0, q = 0, p = 0, d = 0, k = 0;
  std::string eps;
  bool alt = false;

  void add(CLI::App* c) {
    c->add_option("--spec", spec, "group spec as JSON text or file:<path>");
    c->add_option("--family", family, "SymAlt|S|A|L|U|Sp|O|Oeps|Sporadic|Affine|Diagonal|Product");
    c->add_option("--n", n);
    c->add_option("--q", q);
    c->add_option("--eps", eps, "+ or -");
    c->add_flag("--alt", alt, "alternating rather than symmetric");
    c->add_option("--p", p);
    c->add_option("--d", d);
    c->add_option("--k", k);
    c->add_option("--name", name, "sporadic name, affine H, diagonal T");
    c->add_option("--ext", ext, "extension between socle and Aut");
    c->add_option("--component-action", component_action);
    c->add_option("--action", action, "action label, e.g. subsets:2, P1, N1:-, Oeps:-, catalog:S5prim")->required();
  }

  GroupSpec group() const {
    if (!spec.empty()) {
      std::string text = spec;
      if (text.rfind("file:", 0) == 0) {
        std::ifstream in(text.substr(5));
        if (!in) throw BadSpec("cannot read " + text.substr(5));
        text.assign(std::istreambuf_iterator<char>(in), {});
      }
      try {
        return group_from_json(Json::parse(text));
      } catch (const Json::exception& e) {
        throw BadSpec(std::string("group spec: ") + e.what());
      }
    }
    if (family.empty()) throw BadSpec("give --family or --spec");
    GroupSpec g;
    g.family = family_from_string(family);
    g.alt = alt || family == "A";
    g.n = n;
    g.q = q;
    if (!eps.empty()) {
      if (eps == "+" || eps == "1" || eps == "+1") g.eps = 1;
      else if (eps == "-" || eps == "-1") g.eps = -1;
      else throw BadSpec("eps must be + or -");
    }
    g.p = p;
    g.d = d;
    g.k = k;
    g.name = name;
    g.extension = ext;
    g.component_action = component_action;
    return g;
  }
};

void check_valid(const GroupSpec& g, const ActionSpec& a) {
  auto v = validate(g, a);
  if (!v.empty()) {
    std::string msg;
    for (const auto& s : v) msg += (msg.empty() ? "" : "; ") + s;
    throw BadSpec(msg);
  }
}

// --key value pairs left over by the parser; eps accepts + and -.
Params params_from(const std::vector<std::string>& extras) {
  Params p;
  for (std::size_t i = 0; i < extras.size(); ++i) {
    const auto& k = extras[i];
    if (k.rfind("--", 0) != 0) throw BadSpec("unexpected argument '" + k + "'");
    std::string key = k.substr(2), val;
    if (auto eq = key.find('='); eq != std::string::npos) {
      val = key.substr(eq + 1);
      key = key.substr(0, eq);
    } else {
      if (i + 1 >= extras.size()) throw BadSpec("missing value for " + k);
      val = extras[++i];
    }
    if (val == "+") val = "1";
    if (val == "-") val = "-1";
    try {
      std::size_t used = 0;
      long long x = std::stoll(val, &used);
      if (used != val.size()) throw std::invalid_argument(val);
      p.set(key, x);
    } catch (const std::logic_error&) {
      throw BadSpec("parameter " + key + " needs an integer, got '" + val + "'");
    }
  }
  return p;
}

struct GroupInput {
  BuiltGroup built;
  std::string action;
  std::string name;
};

// catalog:<group id>[-<action>] or file:<path>
GroupInput load_group(const std::string& uri) {
  GroupInput in;
  if (uri.rfind("file:", 0) == 0) {
    std::ifstream f(uri.substr(5));
    if (!f) throw BadSpec("cannot read " + uri.substr(5));
    Json j;
    try {
      j = Json::parse(f);
    } catch (const Json::exception& e) {
      throw BadSpec(e.what());
    }
    if (!j.contains("degree") || !j.contains("generators")) throw BadSpec("group file needs degree and generators");
    const auto m = j.at("degree").get<std::size_t>();
    std::vector<Permutation> gens;
    for (const auto& g : j.at("generators")) {
      if (g.is_string()) gens.push_back(Permutation::from_cycles(g.get<std::string>(), m));
      else {
        auto img = g.get<std::vector<Point>>();
        if (img.size() != m || !is_bijection(img)) throw BadSpec("generator is not a permutation of degree " + std::to_string(m));
        gens.push_back(Permutation(img));
      }
    }
    in.name = j.value("name", std::string("file group"));
    in.built.base = PermGroup(m, std::move(gens), in.name);
    in.built.actions["natural"] = nullptr;
    in.action = "natural";
    return in;
  }
  if (uri.rfind("catalog:", 0) != 0) throw BadSpec("group URI must start with catalog: or file:");
  const std::string rest = uri.substr(8);
  const CatalogGroup* hit = nullptr;
  for (const auto& g : catalog_groups())
    if ((rest == g.id || rest.rfind(g.id + "-", 0) == 0) && (!hit || g.id.size() > hit->id.size())) hit = &g;
  if (!hit) throw BadSpec("unknown catalog group in '" + uri + "'");
  std::string action = rest.size() > hit->id.size() ? rest.substr(hit->id.size() + 1) : hit->actions.front();
  if (std::find(hit->actions.begin(), hit->actions.end(), action) == hit->actions.end()) {
    // the natural action of S_n / A_n is the action on 1-subsets
    if (action == "natural" && hit->spec.family == Family::SymAlt &&
        std::find(hit->actions.begin(), hit->actions.end(), "subsets:1") != hit->actions.end())
      action = "subsets:1";
    else
      throw BadSpec("catalog group " + hit->id + " has no action '" + action + "'");
  }
  in.built = build_group(hit->id);
  in.action = action;
  in.name = hit->id;
  return in;
}

std::size_t cap_from_env() { return default_closure_cap(); }

int cmd_brute(const std::string& uri, const std::string& element, bool scan, bool min_index, bool min_degree) {
  auto in = load_group(uri);
  auto& b = in.built;
  try {
    b.base.close(cap_from_env());
  } catch (const CapExceeded& e) {
    if (element.empty())
      throw BudgetError(std::string(e.what()) + "; the group is too large to close, use --element mode");
  }
  ActedGroup g = b.acted(in.action);
  const std::size_t m = g.degree();
  Json out;
  out["group"] = in.name;
  out["action"] = in.action;
  out["degree"] = m;
  if (b.base.is_closed()) out["order"] = b.base.order().str();
  if (!element.empty()) {
    Permutation x = b.element(element, std::nullopt, in.action);
    if (b.base.is_closed() && !b.base.contains(x)) throw BadSpec("element is not in the group");
    Permutation px = g.act(x);
    out["element"] = x.cycles();
    out["fixed"] = fixed_point_count(px);
    out["fpr"] = BigRational(fixed_point_count(px), m).str();
    out["ind"] = m - orbit_count(px);
    std::cout << out.dump() << "\n";
    return 0;
  }
  if (!scan && !min_index && !min_degree) scan = true;
  const auto& prof = b.profile(in.action);
  std::size_t mu = SIZE_MAX, ind = SIZE_MAX;
  std::set<std::uint64_t> witnesses;
  std::map<std::uint64_t, std::pair<BigRational, std::string>> best;
  for (const auto& c : prof) {
    if (c.fixed == m) continue;
    mu = std::min(mu, m - c.fixed);
    std::size_t i = m - c.orbits;
    if (i < ind) {
      ind = i;
      witnesses.clear();
    }
    if (i == ind) witnesses.insert(c.order);
    if (is_prime(c.order)) {
      BigRational f(c.fixed, m);
      auto it = best.find(c.order);
      if (it == best.end() || f > it->second.first) best[c.order] = {f, c.rep.cycles()};
    }
  }
  if (min_index && !scan && !min_degree) {
    std::cout << ind << "\n";
    return 0;
  }
  if (min_degree && !scan && !min_index) {
    std::cout << mu << "\n";
    return 0;
  }
  Json mx = Json::object();
  for (const auto& [r, v] : best) mx[std::to_string(r)] = {{"fpr", v.first.str()}, {"witness", v.second}};
  out["max_fpr"] = mx;
  out["classes"] = prof.size();
  out["minimal_degree"] = mu;
  out["minimal_index"] = ind;
  out["minimal_index_witness_orders"] = witnesses;
  std::cout << out.dump() << "\n";
  return 0;
}

void print_report_csv_header() { std::cout << "case,status,computed,expected,provenance,group_order,degree\n"; }

void print_report(const Report& r, const std::string& output, bool timing) {
  if (output == "csv") {
    std::cout << r.case_id << "," << r.status << "," << r.computed << "," << r.expected << "," << r.provenance << ","
              << r.group_order << "," << r.degree << "\n";
  } else if (output == "human") {
    std::cout << (r.passed() ? "PASS " : r.status == "infeasible" ? "SKIP " : "FAIL ") << r.case_id << "  "
              << r.computed << " vs " << r.expected;
    if (!r.passed() && !r.detail.empty()) std::cout << "  (" << r.detail << ")";
    std::cout << "\n";
  } else {
    std::cout << r.to_json(timing).dump() << "\n";
  }
  std::cout.flush();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"fixed point ratios of finite primitive permutation groups"};
  app.require_subcommand(1);
  std::string output = "json";
  app.add_option("--output", output, "json | csv | human")->check(CLI::IsMember({"json", "csv", "human"}));

  // formula
  auto* fcmd = app.add_subcommand("formula", "evaluate a formula: fpr formula <id> --n 6 --q 2 ... | fpr formula list");
  fcmd->allow_extras();
  std::string fid;
  fcmd->add_option("id", fid, "formula id, or 'list'")->required();

  // brute
  auto* bcmd = app.add_subcommand("brute", "brute-force fixed points on a concrete group");
  std::string uri, element;
  bool scan = false, want_index = false, want_degree = false;
  bcmd->add_option("--group", uri, "catalog:<id>[-<action>] or file:<path>")->required();
  bcmd->add_option("--element", element, "cycles:(0 1) | named:<key> | class:o<order>f<fixed>");
  bcmd->add_flag("--scan", scan, "per-prime max fpr, minimal degree and minimal index");
  bcmd->add_flag("--min-index", want_index);
  bcmd->add_flag("--min-degree", want_degree);

  // classify
  auto* ccmd = app.add_subcommand("classify", "list the exceptional rows for a group, action and prime");
  SpecFlags cflags;
  cflags.add(ccmd);
  long long prime = 0;
  std::string bound = "main";
  ccmd->add_option("--r", prime, "prime")->required();
  ccmd->add_option("--bound", bound, "main | sqrt | one-over-r");

  auto* dcmd = app.add_subcommand("mindeg", "minimal degree from the formulas");
  SpecFlags dflags;
  dflags.add(dcmd);
  auto* icmd = app.add_subcommand("minindex", "minimal index from the formulas");
  SpecFlags iflags;
  iflags.add(icmd);
  long long index_r = 0;
  icmd->add_option("--r", index_r, "smallest prime divisor of |G|, for odd-order bounds");

  // verify
  auto* vcmd = app.add_subcommand("verify", "run a verification suite");
  std::string suite = "all";
  unsigned parallelism = 1;
  bool no_timing = false;
  vcmd->add_option("suite", suite, "all | tables | subset | subspace | affine | diagonal | product | minindex | mindeg | "
                                   "burnside | exceptions | case:<id>");
  vcmd->add_option("--parallelism", parallelism)->check(CLI::PositiveNumber);
  vcmd->add_flag("--no-timing", no_timing, "omit the ms field");

  // catalog list
  auto* kcmd = app.add_subcommand("catalog", "catalog contents");
  auto* klist = kcmd->add_subcommand("list", "list catalog groups (or cases with --cases)");
  kcmd->require_subcommand(1);
  bool list_cases = false;
  klist->add_flag("--cases", list_cases);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    if (*fcmd) {
      if (fid == "list") {
        for (const auto& f : formula_list())
          std::cout << Json{{"id", f.id}, {"params", f.params}, {"anchor", f.anchor}, {"description", f.description}}.dump()
                    << "\n";
        return 0;
      }
      auto r = evaluate_formula(fid, params_from(fcmd->remaining()));
      if (output == "human") std::cout << r.value.str() << "\n";
      else std::cout << r.to_json().dump() << "\n";
      return 0;
    }
    if (*bcmd) return cmd_brute(uri, element, scan, want_index, want_degree);
    if (*ccmd) {
      GroupSpec g = cflags.group();
      ActionSpec a = ActionSpec::parse(cflags.action);
      check_valid(g, a);
      if (prime < 2 || !is_prime(static_cast<std::uint64_t>(prime))) throw BadSpec("--r must be a prime");
      std::cout << classify(g, a, prime, bound_from_string(bound)).to_json().dump() << "\n";
      return 0;
    }
    if (*dcmd) {
      GroupSpec g = dflags.group();
      ActionSpec a = ActionSpec::parse(dflags.action);
      check_valid(g, a);
      std::cout << minimal_degree_formula(g, a).to_json().dump() << "\n";
      return 0;
    }
    if (*icmd) {
      GroupSpec g = iflags.group();
      ActionSpec a = ActionSpec::parse(iflags.action);
      check_valid(g, a);
      try {
        std::cout << minimal_index_formula(g, a).to_json().dump() << "\n";
      } catch (const OddOrder& e) {
        if (index_r < 3) throw ConditionViolated(std::string(e.what()) + "; pass --r for the odd-order bounds");
        auto m = action_degree(g, a);
        auto [lo, hi] = odd_order_index_bounds(g.p, g.d, index_r, m);
        std::cout << Json{{"kind", "range"}, {"lower", lo.str()}, {"upper", hi.str()}, {"degree", m.str()},
                          {"source", "odd-order bounds"}}
                         .dump()
                  << "\n";
      }
      return 0;
    }
    if (*vcmd) {
      if (output == "csv") print_report_csv_header();
      if (suite.rfind("case:", 0) == 0) {
        auto r = run_case(find_case(suite.substr(5)));
        print_report(r, output, !no_timing);
        return r.passed() ? 0 : 1;
      }
      auto res = run_suite(suite, parallelism, [&](const Report& r) { print_report(r, output, !no_timing); });
      Json s = res.summary();
      if (no_timing) s.erase("ms");
      std::cerr << s.dump() << "\n";
      return res.all_pass() ? 0 : 1;
    }
    if (*klist) {
      if (list_cases) {
        for (const auto& c : catalog())
          std::cout << Json{{"case", c.id}, {"mode", to_string(c.mode)}, {"suites", c.suites}, {"provenance", c.provenance}}
                           .dump()
                    << "\n";
      } else {
        for (const auto& g : catalog_groups())
          std::cout << Json{{"id", g.id},
                            {"spec", to_json(g.spec)},
                            {"actions", g.actions},
                            {"closable", g.closable},
                            {"order", g.order.str()},
                            {"description", g.description}}
                           .dump()
                    << "\n";
      }
      return 0;
    }
  } catch (const BudgetError& e) {
    std::cerr << "budget: " << e.what() << "\n";
    return 4;
  } catch (const CapExceeded& e) {
    std::cerr << "budget: " << e.what() << "; use --element mode or raise FPR_CLOSURE_CAP\n";
    return 4;
  } catch (const PointBudgetExceeded& e) {
    std::cerr << "budget: " << e.what() << "\n";
    return 4;
  } catch (const ConditionViolated& e) {
    std::cerr << "condition violated: " << e.what() << "\n";
    return 3;
  } catch (const NotApplicable& e) {
    std::cerr << "not applicable: " << e.what() << "\n";
    return 3;
  } catch (const InfeasibleSpec& e) {
    std::cerr << "infeasible: " << e.what() << "\n";
    return 3;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::out_of_range& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
