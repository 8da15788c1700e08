#include "fpr/harness.hpp"

#include <algorithm>
#include <chrono>
#include <fstream>
#include <mutex>
#include <random>
#include <set>
#include <sstream>
#include <thread>

#include "fpr/classifier.hpp"
#include "fpr/formulas.hpp"

namespace fpr {

namespace {

Permutation cyc(const std::string& s, std::size_t m) { return Permutation::from_cycles(s, m); }

std::string cycle_text(unsigned from, unsigned to) {
  std::string s = "(";
  for (unsigned i = from; i <= to; ++i) s += (i == from ? "" : " ") + std::to_string(i);
  return s + ")";
}

std::vector<Permutation> sym_gens(unsigned n, bool alt) {
  if (!alt) return {cyc("(0 1)", n), cyc(cycle_text(0, n - 1), n)};
  return {cyc("(0 1 2)", n), cyc(n % 2 ? cycle_text(0, n - 1) : cycle_text(1, n - 1), n)};
}

GroupSpec symalt(unsigned n, bool alt, const std::string& ext = "") {
  GroupSpec g;
  g.family = Family::SymAlt;
  g.n = n;
  g.alt = alt;
  g.extension = ext;
  return g;
}

GroupSpec classical(Family f, unsigned n, unsigned q, int eps = 0, const std::string& ext = "") {
  GroupSpec g;
  g.family = f;
  g.n = n;
  g.q = q;
  g.eps = eps;
  g.extension = ext;
  return g;
}

GroupSpec affine(unsigned p, unsigned d, const std::string& h) {
  GroupSpec g;
  g.family = Family::Affine;
  g.p = p;
  g.d = d;
  g.name = h;
  return g;
}

std::string rat(const BigRational& v) { return v.str(); }

// ---------------------------------------------------------------------------
// Builders

BuiltGroup from_gens(std::size_t degree, std::vector<Permutation> gens, const std::string& name,
                     const std::string& base_action) {
  BuiltGroup b;
  b.base = PermGroup(degree, std::move(gens), name);
  b.actions[base_action] = nullptr;
  return b;
}

BuiltGroup build_symalt(unsigned n, bool alt, const std::vector<std::string>& actions) {
  BuiltGroup b;
  b.base = PermGroup(n, sym_gens(n, alt), (alt ? "A" : "S") + std::to_string(n));
  // PGL2(5) and PSL2(5) on the projective line {0..4, inf = 5}
  auto line_group = [](bool psl) {
    std::vector<Permutation> g = {cyc("(0 1 2 3 4)", 6), cyc("(0 5)(1 4)", 6)};
    g.push_back(psl ? cyc("(1 4)(2 3)", 6) : cyc("(1 2 4 3)", 6));
    return PermGroup(6, g);
  };
  for (const auto& label : actions) {
    ActionSpec a = ActionSpec::parse(label);
    if (a.kind == ActionKind::NaturalPoints) b.actions[label] = nullptr;
    else if (a.kind == ActionKind::Subsets) b.actions[label] = SetFamilyAction::subsets(n, a.m);
    else if (a.kind == ActionKind::Partitions) b.actions[label] = PartitionAction::uniform(n, n / 2);
    else if (label == "catalog:S2wrS3") b.actions[label] = PartitionAction::uniform(6, 2);
    else if (label == "catalog:S5prim" || label == "catalog:A5prim") {
      b.base.close();
      auto h = line_group(alt);
      h.close();
      b.actions[label] = std::make_shared<CosetAction>(b.base, h, label);
    } else {
      throw std::logic_error("no construction for " + label);
    }
  }
  return b;
}

// Points of the subspace spanned by the rows of B, as indices into the projective points.
std::vector<Point> points_of(const Field& F, const Matrix& B, const PointSet& pts) {
  std::set<Point> out;
  std::uint64_t total = 1;
  for (unsigned i = 0; i < B.rows; ++i) total *= F.q();
  for (std::uint64_t idx = 1; idx < total; ++idx) {
    Vec c = vector_from_index(F, B.rows, idx);
    Matrix v(1, B.cols);
    for (unsigned j = 0; j < B.cols; ++j) {
      Elt s = 0;
      for (unsigned i = 0; i < B.rows; ++i) s = F.add(s, F.mul(c[i], B.at(i, j)));
      v.at(0, j) = s;
    }
    out.insert(pts.find(subspace_key(F, v)));
  }
  return {out.begin(), out.end()};
}

// Classical group on all projective points of its natural module, closed from random isometries
// (plus the given extra generators) until the expected order is reached.
BuiltGroup build_classical(const GroupSpec& g, bool sh, const std::vector<SemilinearMap>& extra,
                           const BigInt& order, const std::vector<std::string>& actions) {
  BuiltGroup b;
  auto F = std::make_shared<Field>(natural_field(g));
  b.field = F;
  b.form = natural_form(*F, g, sh);
  std::vector<std::string> keys;
  for (auto& W : enumerate_subspaces(*F, g.n, 1)) keys.push_back(subspace_key(*F, W));
  auto pts = std::make_shared<PointSet>(make_point_set(std::move(keys), g.n, 1, PointSet::Kind::Subspaces));
  b.points = pts;

  GeneratorPool pool(*F, b.form);
  std::mt19937_64 rng(0x5eed0000 + g.n * 131 + g.q);
  std::vector<Permutation> gens;
  for (const auto& x : extra) gens.push_back(induced_permutation(*F, x, *pts, b.form));
  auto add_random = [&] {
    gens.push_back(induced_permutation(*F, SemilinearMap{pool.random_element(rng), 0}, *pts, b.form));
  };
  add_random();
  add_random();
  for (;;) {
    PermGroup G(pts->size(), gens, g.label());
    const auto& el = G.close();
    if (el.size() == order) {
      b.base = G;
      break;
    }
    if (el.size() > order || gens.size() > 10)
      throw std::logic_error(g.label() + ": generated order " + std::to_string(el.size()));
    add_random();
  }

  for (const auto& label : actions) {
    ActionSpec a = ActionSpec::parse(label);
    PointSet ps = enumerate_action_points(a, b.form, *F);
    if (ps.kind == PointSet::Kind::Subspaces && ps.dim == 1 && ps.size() == pts->size()) {
      b.actions[label] = nullptr;
      continue;
    }
    std::vector<std::vector<Point>> sets;
    sets.reserve(ps.size());
    for (std::size_t i = 0; i < ps.size(); ++i) {
      if (ps.kind == PointSet::Kind::Subspaces) {
        sets.push_back(points_of(*F, ps.basis(i), *pts));
        continue;
      }
      // a quadratic form is determined by its singular points
      Vec d(ps.keys[i].begin(), ps.keys[i].end());
      std::vector<Point> s;
      for (std::size_t j = 0; j < pts->size(); ++j)
        if (form_point_value(*F, b.form, d, pts->basis(j).row(0)) == 0) s.push_back(static_cast<Point>(j));
      sets.push_back(std::move(s));
    }
    b.actions[label] = std::make_shared<SetFamilyAction>(std::move(sets), label);
  }
  return b;
}

SemilinearMap frobenius(unsigned n) { return SemilinearMap{Matrix::identity(n), 1}; }

Matrix diagonal(unsigned n, Elt a) {
  Matrix M = Matrix::identity(n);
  M.at(0, 0) = a;
  return M;
}

// Affine groups on p^d points; a point is the integer sum v_i p^i of its coordinates.
std::uint32_t vec_index(const Vec& v, unsigned p) {
  std::uint32_t idx = 0;
  for (std::size_t i = v.size(); i-- > 0;) idx = idx * p + v[i];
  return idx;
}

Permutation affine_linear(const Field& F, unsigned d, const Matrix& M) {
  std::size_t m = 1;
  for (unsigned i = 0; i < d; ++i) m *= F.p();
  std::vector<Point> img(m);
  for (std::size_t idx = 0; idx < m; ++idx) img[idx] = vec_index(vec_mat(F, vector_from_index(F, d, idx), M), F.p());
  return Permutation(img);
}

Permutation affine_translation(const Field& F, unsigned d, unsigned coord) {
  std::size_t m = 1;
  for (unsigned i = 0; i < d; ++i) m *= F.p();
  std::vector<Point> img(m);
  for (std::size_t idx = 0; idx < m; ++idx) {
    Vec v = vector_from_index(F, d, idx);
    v[coord] = F.add(v[coord], 1);
    img[idx] = vec_index(v, F.p());
  }
  return Permutation(img);
}

// Field-type point stabilizer: maps x -> f(x) on GF(p^d), whose element encoding matches the points.
Permutation field_map(const Field& E, const std::function<Elt(Elt)>& f) {
  std::vector<Point> img(E.q());
  for (unsigned x = 0; x < E.q(); ++x) img[x] = f(static_cast<Elt>(x));
  return Permutation(img);
}

BuiltGroup build_affine_matrix(unsigned p, unsigned d, const std::vector<Matrix>& hgens, const std::string& name) {
  Field F(p, 1);
  std::vector<Permutation> gens;
  for (unsigned i = 0; i < d; ++i) gens.push_back(affine_translation(F, d, i));
  for (const auto& M : hgens) gens.push_back(affine_linear(F, d, M));
  std::size_t m = gens.front().degree();
  auto b = from_gens(m, gens, name, "natural");
  if (d >= 2) b.named["transvection"] = affine_linear(F, d, elementary_transvection(F, d, 0, 1, 1));
  return b;
}

BuiltGroup build_affine_field(unsigned p, unsigned d, const std::vector<std::function<Elt(const Field&, Elt)>>& hmaps,
                              const std::string& name) {
  Field E(p, d);
  std::vector<Permutation> gens = {field_map(E, [&](Elt x) { return E.add(x, 1); })};
  for (const auto& h : hmaps) gens.push_back(field_map(E, [&](Elt x) { return h(E, x); }));
  return from_gens(E.q(), gens, name, "natural");
}

// (T x T).2 on T = A5 by t -> a^-1 t b, with the swap t -> t^-1.
BuiltGroup build_diagonal() {
  PermGroup a5(5, sym_gens(5, true));
  const auto& el = a5.close();
  const std::size_t m = el.size();
  auto on_t = [&](const std::function<Permutation(const Permutation&)>& f) {
    std::vector<Point> img(m);
    for (std::size_t i = 0; i < m; ++i) img[i] = static_cast<Point>(el.find(f(el.at(i))));
    return Permutation(img);
  };
  auto left = [&](const Permutation& a) { return on_t([&](const Permutation& t) { return compose(inverse(a), t); }); };
  auto right = [&](const Permutation& c) { return on_t([&](const Permutation& t) { return compose(t, c); }); };
  std::vector<Permutation> gens;
  for (const auto& g : a5.generators()) {
    gens.push_back(left(g));
    gens.push_back(right(g));
  }
  Permutation swap = on_t([](const Permutation& t) { return inverse(t); });
  gens.push_back(swap);
  auto b = from_gens(m, gens, "A5^2.2", "natural");
  Permutation x = cyc("(0 1)(2 3)", 5);
  b.named["swap"] = swap;
  b.named["inner-involution"] = compose(left(x), right(x));
  b.named["left-involution"] = left(x);
  return b;
}

std::vector<Permutation> l28_3_gens() {
  auto b = build_classical(classical(Family::Linear, 2, 8, 0, ":3"), false, {frobenius(2)}, 1512, {});
  return b.base.generators();
}

Permutation block_swap(std::size_t n) {
  std::vector<Point> img(2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    img[i] = static_cast<Point>(i + n);
    img[i + n] = static_cast<Point>(i);
  }
  return Permutation(img);
}

Permutation on_first_block(const Permutation& x, std::size_t n) {
  std::vector<Point> img(2 * n);
  for (std::size_t i = 0; i < 2 * n; ++i) img[i] = static_cast<Point>(i < n ? x[i] : i);
  return Permutation(img);
}

BuiltGroup build_product(const std::vector<Permutation>& lgens, std::size_t n, const std::string& name) {
  BuiltGroup b;
  b.base = PermGroup(2 * n, wreath_generators(lgens, n, 2), name);
  b.actions["natural"] = std::make_shared<ProductAction>(n, 2);
  b.named["swap"] = block_swap(n);
  return b;
}

BuiltGroup build_m22() {
  BuiltGroup b;
  b.base = load_m22_2();
  b.actions["catalog:L3(4).2_2"] = nullptr;
  return b;
}

BuiltGroup build_a6_aut() {
  GroupSpec l29 = classical(Family::Linear, 2, 9, 0, "PGammaL");
  Field F = Field::of_order(9);
  auto b = build_classical(l29, false, {frobenius(2), SemilinearMap{diagonal(2, F.gen()), 0}}, 1440, {});
  b.actions.clear();
  b.actions["catalog:S3wrS2.2"] = nullptr;
  b.named["field-aut"] = induced_permutation(*b.field, frobenius(2), *b.points, b.form);
  return b;
}

struct Entry {
  CatalogGroup info;
  std::function<BuiltGroup()> build;
};

std::vector<std::string> subset_actions(unsigned n) {
  std::vector<std::string> a;
  for (unsigned l = 1; 2 * l < n; ++l) a.push_back("subsets:" + std::to_string(l));
  return a;
}

BigInt factorial(unsigned n) {
  BigInt f = 1;
  for (unsigned i = 2; i <= n; ++i) f *= i;
  return f;
}

std::vector<Entry> make_entries() {
  std::vector<Entry> v;
  auto add = [&](std::string id, GroupSpec spec, std::vector<std::string> actions, bool closable, BigInt order,
                 std::string description, std::function<BuiltGroup()> build) {
    v.push_back({{std::move(id), std::move(spec), std::move(actions), closable, std::move(order), std::move(description)},
                 std::move(build)});
  };

  for (unsigned n = 5; n <= 9; ++n)
    for (bool alt : {false, true}) {
      auto actions = subset_actions(n);
      if (n % 2 == 0 && n <= 8) actions.push_back("partitions");
      if (n == 6) {
        if (alt) actions.push_back("catalog:A5prim");
        else {
          actions.push_back("catalog:S5prim");
          actions.push_back("catalog:S2wrS3");
        }
      }
      std::string id = (alt ? "a" : "s") + std::to_string(n);
      BigInt order = factorial(n) / (alt ? 2 : 1);
      add(id, symalt(n, alt), actions, true, order, (alt ? "A" : "S") + std::to_string(n) + (n % 2 == 0 ? " on subsets and partitions" : " on subsets"),
          [n, alt, actions] { return build_symalt(n, alt, actions); });
    }
  add("s10", symalt(10, false), {"partitions"}, false, factorial(10), "S10 on bisections (element level)",
      [] { return build_symalt(10, false, {"partitions"}); });
  add("a6.2^2", symalt(6, true, "2^2"), {"catalog:S3wrS2.2"}, true, 1440, "Aut(A6) = PGammaL2(9) on 10 points",
      build_a6_aut);

  auto lin = [&](std::string id, unsigned n, unsigned q, std::string ext, std::vector<SemilinearMap> extra, BigInt order,
                 std::vector<std::string> actions) {
    GroupSpec g = classical(Family::Linear, n, q, 0, ext);
    add(id, g, actions, true, order, g.label() + " on projective points",
        [g, extra, order, actions] { return build_classical(g, false, extra, order, actions); });
  };
  lin("l2q7", 2, 7, "", {}, 168, {"P1"});
  lin("l2q8", 2, 8, "", {}, 504, {"P1"});
  lin("l2q8:3", 2, 8, ":3", {frobenius(2)}, 1512, {"P1"});
  lin("l3q2", 3, 2, "", {}, 168, {"P1"});
  lin("l3q3", 3, 3, "", {}, 5616, {"P1"});
  lin("l4q2", 4, 2, "", {}, 20160, {"P1", "P2"});

  {
    GroupSpec g = classical(Family::Unitary, 4, 2);
    add("u42", g, {"P1", "P2", "N1"}, true, 25920, "U4(2) on subspaces",
        [g] { return build_classical(g, true, {}, 25920, {"P1", "P2", "N1"}); });
    GroupSpec g2 = classical(Family::Unitary, 4, 2, 0, ".2");
    add("u42.2", g2, {"P1", "P2", "N1"}, true, 51840, "U4(2).2 on subspaces", [g2] {
      Field F = natural_field(g2);
      FormSpec form = natural_form(F, g2, true);
      SemilinearMap tau = build_element(ElementSpec::outer_element("graph_aut", 2), form, F);
      return build_classical(g2, true, {tau}, 51840, {"P1", "P2", "N1"});
    });
  }
  {
    GroupSpec g = classical(Family::Symplectic, 6, 2);
    std::vector<std::string> actions = {"P1", "P2", "P3", "Oeps:+", "Oeps:-"};
    add("sp6", g, actions, true, 1451520, "Sp6(2) on subspaces and quadratic forms",
        [g, actions] { return build_classical(g, false, {}, 1451520, actions); });
  }

  {
    Field F3(3, 1);
    add("affine/3^2:GL23", affine(3, 2, "GL2(3)"), {"natural"}, true, 9 * 48, "(C3)^2:GL2(3)", [F3] {
      return build_affine_matrix(3, 2,
                                 {elementary_transvection(F3, 2, 0, 1, 1), elementary_transvection(F3, 2, 1, 0, 1),
                                  diagonal(2, 2)},
                                 "3^2:GL2(3)");
    });
    Field F2(2, 1);
    add("affine/2^4:GL42", affine(2, 4, "GL4(2)"), {"natural"}, true, 16 * 20160, "(C2)^4:GL4(2)", [F2] {
      GeneratorPool pool(F2, standard_form(F2, FormKind::Linear, 4));
      return build_affine_matrix(2, 4, pool.pool(), "2^4:GL4(2)");
    });
    add("affine/2^4:Sp42", affine(2, 4, "Sp4(2)"), {"natural"}, true, 16 * 720, "(C2)^4:Sp4(2)", [F2] {
      GeneratorPool pool(F2, standard_form(F2, FormKind::Symplectic, 4));
      return build_affine_matrix(2, 4, pool.pool(), "2^4:Sp4(2)");
    });
    add("affine/2^4:GammaL116", affine(2, 4, "GammaL1(16)"), {"natural"}, true, 16 * 60, "(C2)^4:GammaL1(16)", [] {
      return build_affine_field(
          2, 4, {[](const Field& E, Elt x) { return E.mul(x, E.gen()); }, [](const Field& E, Elt x) { return E.frob(x); }},
          "2^4:GammaL1(16)");
    });
    struct Odd {
      const char* id;
      unsigned p, d, h;
    };
    for (Odd o : {Odd{"affine/7:3", 7, 1, 3}, Odd{"affine/11:5", 11, 1, 5}, Odd{"affine/13:3", 13, 1, 3},
                  Odd{"affine/5^2:3", 5, 2, 3}, Odd{"affine/3^3:13", 3, 3, 13}}) {
      unsigned q = 1;
      for (unsigned i = 0; i < o.d; ++i) q *= o.p;
      unsigned step = (q - 1) / o.h;
      add(o.id, affine(o.p, o.d, "C" + std::to_string(o.h)), {"natural"}, true, BigInt(q) * o.h,
          "odd-order affine group", [o, step] {
            return build_affine_field(o.p, o.d, {[step](const Field& E, Elt x) { return E.mul(x, E.pow(E.gen(), step)); }},
                                      std::string(o.id).substr(7));
          });
    }
  }

  {
    GroupSpec g;
    g.family = Family::Diagonal;
    g.name = "A5";
    g.k = 2;
    add("diag/A5/k2", g, {"natural"}, true, 7200, "(A5 x A5).2 on 60 points", build_diagonal);
  }
  {
    GroupSpec g;
    g.family = Family::Product;
    g.k = 2;
    g.component = std::make_shared<GroupSpec>(symalt(5, false));
    add("product/S5wrS2", g, {"natural"}, true, 28800, "S5 wr S2 in product action on 25 points", [] {
      auto b = build_product(sym_gens(5, false), 5, "S5 wr S2");
      b.named["x1-transposition"] = cyc("(0 1)", 10);
      b.named["x1-3cycle"] = cyc("(0 1 2)", 10);
      return b;
    });
    GroupSpec h;
    h.family = Family::Product;
    h.k = 2;
    h.component = std::make_shared<GroupSpec>(classical(Family::Linear, 2, 8, 0, ":3"));
    h.component_action = "P1";
    add("product/L28:3wrS2", h, {"natural"}, false, BigInt(1512) * 1512 * 2,
        "L2(8):3 wr S2 in product action on 81 points (element level)", [] {
          auto b = build_product(l28_3_gens(), 9, "L2(8):3 wr S2");
          GroupSpec l = classical(Family::Linear, 2, 8);
          Field F = natural_field(l);
          FormSpec form = natural_form(F, l);
          std::vector<std::string> keys;
          for (auto& W : enumerate_subspaces(F, 2, 1)) keys.push_back(subspace_key(F, W));
          PointSet pts = make_point_set(std::move(keys), 2, 1, PointSet::Kind::Subspaces);
          b.named["x1-field-aut"] = on_first_block(induced_permutation(F, frobenius(2), pts, form), 9);
          b.named["x1-unipotent"] =
              on_first_block(induced_permutation(F, SemilinearMap{elementary_transvection(F, 2, 0, 1, 1), 0}, pts, form), 9);
          return b;
        });
  }
  {
    GroupSpec g;
    g.family = Family::Sporadic;
    g.name = "M22:2";
    add("m22.2", g, {"catalog:L3(4).2_2"}, true, 887040, "M22:2 on 22 points from data/m22_2.json", build_m22);
  }
  return v;
}

const std::vector<Entry>& entries() {
  static const std::vector<Entry> e = make_entries();
  return e;
}

const Entry& entry(const std::string& id) {
  for (const auto& e : entries())
    if (e.info.id == id) return e;
  throw std::out_of_range("unknown catalog group '" + id + "'");
}

std::string suite_of_group(const std::string& id) {
  if (id[0] == 's' && std::isdigit(static_cast<unsigned char>(id[1]))) return "subset";
  if (id[0] == 'a' && std::isdigit(static_cast<unsigned char>(id[1]))) return "subset";
  if (id.rfind("affine/", 0) == 0) return "affine";
  if (id.rfind("diag/", 0) == 0) return "diagonal";
  if (id.rfind("product/", 0) == 0) return "product";
  if (id == "m22.2" || id == "a6.2^2") return "tables";
  return "subspace";
}

// ---------------------------------------------------------------------------
// Catalog of cases

BigRational brute_component_fpr(const Permutation& x) { return BigRational(fixed_point_count(x), x.degree()); }

std::vector<VerificationCase> make_catalog() {
  std::vector<VerificationCase> v;
  auto base = [](std::string id, std::vector<std::string> suites, CaseMode mode) {
    VerificationCase c;
    c.id = std::move(id);
    c.suites = std::move(suites);
    c.mode = mode;
    return c;
  };
  auto element = [&](std::string id, std::vector<std::string> suites, std::string group, std::string action,
                     std::string sel, std::string fid, Params p, std::optional<BigRational> value,
                     std::string prov) {
    auto c = base(std::move(id), std::move(suites), CaseMode::ElementFpr);
    c.group = std::move(group);
    c.action = std::move(action);
    c.element = std::move(sel);
    c.formula_id = std::move(fid);
    c.params = std::move(p);
    c.value = std::move(value);
    c.provenance = std::move(prov);
    v.push_back(c);
    return v.size() - 1;
  };
  const std::vector<std::string> T = {"tables"};

  // A6 special cases
  element("tab:a6/A6/A5prim/32", T, "a6", "catalog:A5prim", "cycles:(0 1 2)(3 4 5)", "tab:a6/A6/A5prim/32", {},
          BigRational(1, 2), "paper");
  element("tab:a6/S6/S5prim/23", T, "s6", "catalog:S5prim", "cycles:(0 1)(2 3)(4 5)", "tab:a6/S6/S5prim/23", {},
          BigRational(2, 3), "paper");
  element("tab:a6/S6/S5prim/32", T, "s6", "catalog:S5prim", "cycles:(0 1 2)(3 4 5)", "tab:a6/S6/S5prim/32", {},
          BigRational(1, 2), "paper");
  element("tab:a6/S6/S2wrS3/2", T, "s6", "catalog:S2wrS3", "cycles:(0 1)(2 3)(4 5)", "tab:a6/S6/S2wrS3/2", {},
          BigRational(7, 15), "paper");
  element("tab:a6/A6.2^2/S3wrS2.2/2", T, "a6.2^2", "catalog:S3wrS2.2", "named:field-aut", "tab:a6/A6.2^2/S3wrS2.2/2",
          {}, BigRational(2, 5), "paper");

  // subset and partition actions
  for (unsigned n : {6u, 8u, 10u})
    element("s" + std::to_string(n) + "/partitions/transposition", {"subset", "tables"}, "s" + std::to_string(n),
            "partitions", "cycles:(0 1)", "partition-transposition", {{"n", n}}, std::nullopt, "derived");
  for (unsigned n = 5; n <= 9; ++n)
    for (unsigned l = 1; 2 * l < n; ++l) {
      std::string act = "subsets:" + std::to_string(l);
      for (unsigned r = 2; r <= n; ++r) {
        if (!is_prime(r)) continue;
        std::string tail = act + "/cycle-r" + std::to_string(r);
        element("s" + std::to_string(n) + "/" + tail, {"subset"}, "s" + std::to_string(n), act,
                "cycles:" + cycle_text(0, r - 1), "subset-rcycle", {{"n", n}, {"l", l}, {"r", r}}, std::nullopt,
                "derived");
        for (bool alt : {false, true}) {
          auto c = base((alt ? "a" : "s") + std::to_string(n) + "/" + act + "/max-r" + std::to_string(r), {"subset"},
                        CaseMode::ClassScan);
          c.group = (alt ? "a" : "s") + std::to_string(n);
          c.action = act;
          c.formula_id = "subset-max";
          c.params = {{"n", n}, {"l", l}, {"r", r}, {"alt", alt ? 1 : 0}};
          v.push_back(c);
        }
      }
      element("a" + std::to_string(n) + "/" + act + "/double-transposition", {"subset"}, "a" + std::to_string(n), act,
              "cycles:(0 1)(2 3)", "subset-double-transposition", {{"n", n}, {"l", l}}, std::nullopt, "derived");
    }

  // classical groups, brute force on the closed group
  const std::vector<std::string> S = {"subspace", "tables"};
  auto cl = [&](std::string id, std::string group, std::string action, ElementSpec e, std::string fid, Params p,
                std::optional<BigRational> value) {
    auto i = element(std::move(id), S, std::move(group), std::move(action), "", std::move(fid), std::move(p),
                     std::move(value), "derived");
    v[i].espec = std::move(e);
  };
  cl("l3q2/P1/transvection", "l3q2", "P1", ElementSpec::transvection(3, 2), "tab:class/L/P1/transvection",
     {{"n", 3}, {"q", 2}}, BigRational(3, 7));
  cl("l3q3/P1/transvection", "l3q3", "P1", ElementSpec::transvection(3, 3), "tab:class/L/P1/transvection",
     {{"n", 3}, {"q", 3}}, std::nullopt);
  cl("l3q3/P1/omega", "l3q3", "P1", ElementSpec::scalar_on(3, 1, 2), "tab:class/L/P1/omega", {{"n", 3}, {"q", 3}},
     std::nullopt);
  cl("l4q2/P1/transvection", "l4q2", "P1", ElementSpec::transvection(4, 2), "tab:class/L/P1/transvection",
     {{"n", 4}, {"q", 2}}, BigRational(7, 15));
  cl("l2q8:3/P1/phi", "l2q8:3", "P1", ElementSpec::outer_element("field_aut", 3), "tab:class/L/P1/phi",
     {{"n", 2}, {"q", 8}}, std::nullopt);
  cl("l2q8/P1/torus", "l2q8", "P1", ElementSpec::scalar_on(2, 1, 7), "tab:class/L/P1/omega", {{"n", 2}, {"q", 8}},
     std::nullopt);
  cl("l2q8/P1/torus/dual", "l2q8", "P1", ElementSpec::scalar_on(2, 1, 7), "tab:subb2/L2/P1/torus",
     {{"n", 2}, {"q", 8}}, std::nullopt);
  cl("sp6/P1/transvection", "sp6", "P1", ElementSpec::transvection(6, 2), "tab:class/Sp/P1/transvection",
     {{"n", 6}, {"q", 2}}, std::nullopt);
  cl("sp6/Ominus/b1", "sp6", "Oeps:-", ElementSpec::transvection(6, 2), "tab:class/Sp/Oeps/b1",
     {{"n", 6}, {"q", 2}, {"eps", -1}}, BigRational(4, 7));
  cl("sp6/Ominus/b1/dual", "sp6", "Oeps:-", ElementSpec::transvection(6, 2), "tab:subb2/Sp/Ominus/b1",
     {{"n", 6}, {"q", 2}}, BigRational(4, 7));
  cl("sp6/Oplus/b1", "sp6", "Oeps:+", ElementSpec::transvection(6, 2), "tab:class/Sp/Oeps/b1",
     {{"n", 6}, {"q", 2}, {"eps", 1}}, std::nullopt);
  cl("sp6/Ominus/Lambda", "sp6", "Oeps:-", ElementSpec::irreducible(6, 2, 3), "tab:class/Sp/Ominus/Lambda",
     {{"n", 6}, {"q", 2}}, std::nullopt);
  cl("sp6/Ominus/Lambda/dual", "sp6", "Oeps:-", ElementSpec::irreducible(6, 2, 3), "tab:subb2/Sp/Ominus/Lambda",
     {{"n", 6}, {"q", 2}}, std::nullopt);
  cl("u42/P2/omegaI2", "u42", "P2", ElementSpec::scalar_on(4, 2, 3), "tab:class/U/P2/omegaI2", {{"n", 4}, {"q", 2}},
     std::nullopt);
  cl("u42/N1/omega", "u42", "N1", ElementSpec::scalar_on(4, 1, 3), "tab:class/U/N1/omega", {{"n", 4}, {"q", 2}},
     BigRational(13, 40));
  cl("u42.2/P2/tau", "u42.2", "P2", ElementSpec::outer_element("graph_aut", 2), "tab:class/U/P2/tau",
     {{"n", 4}, {"q", 2}}, BigRational(5, 9));
  cl("u42.2/P2/tau/dual", "u42.2", "P2", ElementSpec::outer_element("graph_aut", 2), "tab:subb2/U4/P2/tau",
     {{"n", 4}, {"q", 2}}, BigRational(5, 9));

  // classical groups too large to close: count fixed points of one element on the enumerated action
  {
    auto with = [](ElementSpec e, std::optional<std::string> disc, std::optional<int> type, bool b_class) {
      e.discriminant = disc;
      e.eigenspace_type = type;
      if (b_class) e.involution_class = "b";
      return e;
    };
    struct El {
      std::string id;
      GroupSpec g;
      std::string action;
      ElementSpec e;
      std::string fid;
    };
    const auto O = Family::OrthogonalEven;
    const auto b1 = with(ElementSpec::transvection(8, 2), std::nullopt, std::nullopt, true);
    std::vector<El> els = {
        {"o8+q2/P1/b1", classical(O, 8, 2, 1), "P1", b1, "tab:class/POmega/P1/b1"},
        {"o8-q2/P1/b1", classical(O, 8, 2, -1), "P1", b1, "tab:class/POmega/P1/b1"},
        {"o8-q2/P1/b1/dual", classical(O, 8, 2, -1), "P1", b1, "tab:subb2/Ominus/P1/b1"},
        {"o8+q2/N1/b1", classical(O, 8, 2, 1), "N1ns", b1, "tab:class/POmega/N1/b1"},
        {"o8+q2/N1/b1/dual", classical(O, 8, 2, 1), "N1ns", b1, "tab:subb2/Oplus/N1/b1"},
        {"o8-q2/N1/b1", classical(O, 8, 2, -1), "N1ns", b1, "tab:class/POmega/N1/b1"},
        {"o8-q2/P1/Lambda", classical(O, 8, 2, -1), "P1", ElementSpec::irreducible(8, 2, 3),
         "tab:class/POmega/P1/Lambda"},
        {"o8+q2/N1/Lambda", classical(O, 8, 2, 1), "N1ns", ElementSpec::irreducible(8, 2, 3),
         "tab:class/POmega/N1/Lambda"},
        {"o8-q3/P1/refl-sq", classical(O, 8, 3, -1), "P1",
         with(ElementSpec::neg_reflection(8), "square", std::nullopt, false), "tab:class/POmega/P1/refl"},
        {"o8-q3/P1/refl-nsq", classical(O, 8, 3, -1), "P1",
         with(ElementSpec::neg_reflection(8), "nonsquare", std::nullopt, false), "tab:class/POmega/P1/refl"},
        {"o8+q3/N1/refl-nsq", classical(O, 8, 3, 1), "N1",
         with(ElementSpec::neg_reflection(8), "nonsquare", std::nullopt, false), "tab:class/POmega/N1/refl-nsq"},
        {"o8-q3/N1/refl-sq", classical(O, 8, 3, -1), "N1",
         with(ElementSpec::neg_reflection(8), "square", std::nullopt, false), "tab:class/POmega/N1/refl-sq"},
        {"o7q3/P1/refl+", classical(Family::OrthogonalOdd, 7, 3), "P1",
         with(ElementSpec::neg_reflection(7), std::nullopt, 1, false), "tab:class/O/P1/refl+"},
        {"o7q3/N1-/refl-", classical(Family::OrthogonalOdd, 7, 3), "N1:-",
         with(ElementSpec::neg_reflection(7), std::nullopt, -1, false), "tab:class/O/N1-/refl-"},
        {"u5q2/P1/omega", classical(Family::Unitary, 5, 2), "P1", ElementSpec::scalar_on(5, 1, 3),
         "tab:class/U/P1/omega"},
        {"u4q3/P2/tau", classical(Family::Unitary, 4, 3), "P2", ElementSpec::outer_element("graph_aut", 2),
         "tab:class/U/P2/tau"},
        {"u6q2/N1/omega", classical(Family::Unitary, 6, 2), "N1", ElementSpec::scalar_on(6, 1, 3),
         "tab:class/U/N1/omega"},
        {"sp4q3/P1/transvection", classical(Family::Symplectic, 4, 3), "P1", ElementSpec::transvection(4, 3),
         "tab:class/Sp/P1/transvection"},
        {"sp8q2/Ominus/b1", classical(Family::Symplectic, 8, 2), "Oeps:-", ElementSpec::transvection(8, 2),
         "tab:class/Sp/Oeps/b1"},
        {"sp8q2/Ominus/Lambda", classical(Family::Symplectic, 8, 2), "Oeps:-", ElementSpec::irreducible(8, 2, 3),
         "tab:class/Sp/Ominus/Lambda"},
        {"l3q4/P1/omega", classical(Family::Linear, 3, 4), "P1", ElementSpec::scalar_on(3, 1, 3),
         "tab:class/L/P1/omega"},
        {"l3q5/P1/transvection", classical(Family::Linear, 3, 5), "P1", ElementSpec::transvection(3, 5),
         "tab:class/L/P1/transvection"},
    };
    for (auto& e : els) {
      auto c = base(e.id, S, CaseMode::ElementFpr);
      c.gspec = e.g;
      c.action = e.action;
      c.espec = e.e;
      c.formula_id = e.fid;
      c.params = {{"n", e.g.n}, {"q", e.g.q}};
      ActionSpec a = ActionSpec::parse(e.action);
      if (a.kind == ActionKind::OEpsilon) c.params.set("eps", a.eta);
      else if (e.g.eps) c.params.set("eps", e.g.eps);
      v.push_back(c);
    }
  }

  // affine
  const std::vector<std::string> A = {"affine"};
  element("affine/3^2:GL23/transvection", {"affine", "tables"}, "affine/3^2:GL23", "natural", "named:transvection",
          "affine-transvection", {{"p", 3}, {"d", 2}}, BigRational(1, 3), "paper");
  element("affine/2^4:GL42/transvection", A, "affine/2^4:GL42", "natural", "named:transvection", "affine-transvection",
          {{"p", 2}, {"d", 4}}, std::nullopt, "derived");
  element("affine/2^4:Sp42/transvection", A, "affine/2^4:Sp42", "natural", "named:transvection", "affine-transvection",
          {{"p", 2}, {"d", 4}}, std::nullopt, "derived");

  // diagonal: oracle counts in T = A5 feed the formulas
  {
    PermGroup a5(5, sym_gens(5, true));
    const auto& el = a5.close();
    long long inversions = 0, centralizer = 0;
    Permutation x = cyc("(0 1)(2 3)", 5);
    for (std::size_t i = 0; i < el.size(); ++i) {
      Permutation t = el.at(i);
      if (compose(t, t).is_identity()) ++inversions;
      if (compose(t, x) == compose(x, t)) ++centralizer;
    }
    const std::vector<std::string> D = {"diagonal"};
    element("diag/A5/k2/R1-identity-alpha", D, "diag/A5/k2", "natural", "named:swap", "diagonal-R1",
            {{"t", 60}, {"inv", inversions}}, BigRational(4, 15), "derived");
    element("diag/A5/k2/R2-inner-involution", D, "diag/A5/k2", "natural", "named:inner-involution", "diagonal-R2",
            {{"t", 60}, {"c", centralizer}, {"k", 2}}, BigRational(1, 15), "derived");
    auto c = base("diag/A5/k2/max-r2", D, CaseMode::ClassScan);
    c.group = "diag/A5/k2";
    c.action = "natural";
    c.params = {{"r", 2}};
    c.value = BigRational(4, 15);
    v.push_back(c);
  }

  // product action
  {
    const std::vector<std::string> P = {"product"};
    auto fp = [](const BigRational& f) {
      return Params{{"num", static_cast<long long>(f.num())}, {"den", static_cast<long long>(f.den())}};
    };
    BigRational t5 = brute_component_fpr(cyc("(0 1)", 5)), c5 = brute_component_fpr(cyc("(0 1 2)", 5));
    element("product/S5wrS2/x1-transposition", P, "product/S5wrS2", "natural", "named:x1-transposition", "product",
            fp(t5), std::nullopt, "derived");
    element("product/S5wrS2/x1-3cycle", P, "product/S5wrS2", "natural", "named:x1-3cycle", "product", fp(c5),
            std::nullopt, "derived");
    auto c = base("product/S5wrS2/pi-bound", P, CaseMode::PiBound);
    c.group = "product/S5wrS2";
    c.action = "natural";
    c.params = {{"gamma", 5}};
    v.push_back(c);
    // L2(8):3 components on 9 points: field automorphism fixes 3, unipotent fixes 1
    element("product/L28:3wrS2/x1-field-aut", P, "product/L28:3wrS2", "natural", "named:x1-field-aut", "product",
            fp(BigRational(3, 9)), std::nullopt, "derived");
    element("product/L28:3wrS2/x1-unipotent", P, "product/L28:3wrS2", "natural", "named:x1-unipotent", "product",
            fp(BigRational(1, 9)), std::nullopt, "derived");
    auto s = base("product/L28:3wrS2/swap", P, CaseMode::ElementBound);
    s.group = "product/L28:3wrS2";
    s.action = "natural";
    s.element = "named:swap";
    s.formula_id = "product-pi-bound";
    s.params = {{"gamma", 9}, {"h", 1}, {"r", 2}};
    v.push_back(s);
  }

  // M22:2
  element("m22.2/2B", {"tables"}, "m22.2", "catalog:L3(4).2_2", "class:o2f8", "m22.2/2B", {}, BigRational(4, 11),
          "paper");

  // per (group, action) scans
  std::map<std::string, std::pair<BigRational, std::vector<std::uint64_t>>> index_values = {
      {"l2q8:3/P1", {4, {2, 3}}}, {"u42.2/P2", {6, {}}}, {"sp6/Oeps:-", {6, {}}}};
  std::map<std::string, BigRational> degree_values = {{"m22.2/catalog:L3(4).2_2", 14}};
  for (const auto& e : entries()) {
    const auto& g = e.info;
    for (const auto& act : g.actions) {
      std::string key = g.id + "/" + act;
      std::string fam = suite_of_group(g.id);
      auto scan = [&](const std::string& what, const std::string& suite, CaseMode mode) {
        auto c = base(key + "/" + what, {suite}, mode);
        if (suite != fam) c.suites.push_back(fam);
        c.group = g.id;
        c.action = act;
        c.provenance = mode == CaseMode::Burnside || mode == CaseMode::FprIdentity || mode == CaseMode::DegreeOnly
                           ? "trivial"
                           : "derived";
        return c;
      };
      v.push_back(scan("degree", "burnside", CaseMode::DegreeOnly));
      if (!g.closable) continue;
      v.push_back(scan("burnside", "burnside", CaseMode::Burnside));
      v.push_back(scan("fpr-identity", "burnside", CaseMode::FprIdentity));
      v.push_back(scan("exceptions", "exceptions", CaseMode::ExceptionScan));
      auto mi = scan("minindex", "minindex", CaseMode::MinIndex);
      if (auto it = index_values.find(key); it != index_values.end()) {
        mi.value = it->second.first;
        mi.witness_orders = it->second.second;
        mi.provenance = "paper";
        mi.suites.push_back("tables");
      }
      v.push_back(mi);
      auto md = scan("mindeg", "mindeg", CaseMode::MinDegree);
      if (auto it = degree_values.find(key); it != degree_values.end()) {
        md.value = it->second;
        md.provenance = "paper";
        md.suites.push_back("tables");
      }
      v.push_back(md);
    }
  }

  std::sort(v.begin(), v.end(), [](const auto& a, const auto& b) { return a.id < b.id; });
  for (std::size_t i = 1; i < v.size(); ++i)
    if (v[i].id == v[i - 1].id) throw std::logic_error("duplicate case id " + v[i].id);
  return v;
}

// ---------------------------------------------------------------------------
// Running

struct Outcome {
  bool pass = false;
  std::string computed, expected, detail;
};

// Expected value from an explicit value and/or a formula; disagreement is reported in detail.
BigRational expected_value(const VerificationCase& c, std::string& detail) {
  std::optional<BigRational> f;
  if (!c.formula_id.empty()) f = evaluate_formula(c.formula_id, c.params).value;
  if (c.value && f && *c.value != *f)
    detail = "formula " + c.formula_id + " gives " + rat(*f) + " but the stated value is " + rat(*c.value);
  if (c.value) return *c.value;
  if (f) return *f;
  throw std::logic_error("case " + c.id + " has no expected value");
}

Outcome compare(const BigRational& computed, const BigRational& expected, std::string detail) {
  Outcome o;
  o.computed = rat(computed);
  o.expected = rat(expected);
  o.pass = computed == expected && detail.empty();
  o.detail = std::move(detail);
  return o;
}

std::vector<ClassProfile> nontrivial(const std::vector<ClassProfile>& prof, std::size_t degree) {
  std::vector<ClassProfile> out;
  for (const auto& c : prof)
    if (c.fixed < degree) out.push_back(c);
  return out;
}

std::string render_sets(const std::map<std::uint64_t, std::set<BigRational>>& m) {
  std::string s;
  for (const auto& [r, vals] : m) {
    if (!s.empty()) s += " ";
    s += std::to_string(r) + ":{";
    bool first = true;
    for (const auto& x : vals) {
      s += (first ? "" : ",") + rat(x);
      first = false;
    }
    s += "}";
  }
  return s;
}

Outcome run_element(const VerificationCase& c, BuiltGroup* b, Report& r) {
  BigRational computed;
  if (c.gspec) {
    auto ec = element_fixed_points(*c.gspec, ActionSpec::parse(c.action), *c.espec);
    r.degree = ec.degree;
    computed = ec.fpr();
  } else {
    Permutation x = b->element(c.element, c.espec, c.action);
    if (b->base.is_closed() && !b->base.contains(x)) return {false, "", "", "element is not in the group"};
    ActedGroup g = b->acted(c.action);
    Permutation px = g.act(x);
    r.degree = px.degree();
    computed = BigRational(fixed_point_count(px), px.degree());
  }
  std::string detail;
  BigRational expected = expected_value(c, detail);
  if (c.mode == CaseMode::ElementBound) {
    Outcome o;
    o.computed = rat(computed);
    o.expected = "<= " + rat(expected);
    o.pass = computed <= expected && detail.empty();
    o.detail = detail;
    return o;
  }
  return compare(computed, expected, detail);
}

Outcome run_class_scan(const VerificationCase& c, BuiltGroup& b, Report& r) {
  const auto& prof = b.profile(c.action);
  const std::size_t m = b.acted(c.action).degree();
  r.degree = m;
  const auto rr = static_cast<std::uint64_t>(c.params.get("r"));
  std::optional<BigRational> best;
  for (const auto& p : prof)
    if (p.order == rr) {
      BigRational f(p.fixed, m);
      if (!best || f > *best) best = f;
    }
  if (!best) return {false, "", "", "no element of order " + std::to_string(rr)};
  std::string detail;
  return compare(*best, expected_value(c, detail), detail);
}

Outcome run_exception_scan(const VerificationCase& c, BuiltGroup& b, Report& r) {
  const auto& spec = catalog_group(c.group).spec;
  ActionSpec a = ActionSpec::parse(c.action);
  const auto& prof = b.profile(c.action);
  const std::size_t m = b.acted(c.action).degree();
  r.degree = m;
  std::map<std::uint64_t, std::set<BigRational>> brute, listed;
  for (const auto& p : prof) {
    if (!is_prime(p.order)) continue;
    brute[p.order];
    BigRational f(p.fixed, m);
    if (!within_bound(f, static_cast<long long>(p.order), Bound::Main)) brute[p.order].insert(f);
  }
  for (const auto& [rr, vals] : brute) {
    auto& s = listed[rr];
    for (const auto& h : exceptions_for(spec, a, static_cast<long long>(rr))) s.insert(h.fpr);
  }
  Outcome o;
  o.computed = render_sets(brute);
  o.expected = render_sets(listed);
  o.pass = brute == listed;
  if (!o.pass)
    for (const auto& [rr, vals] : brute)
      if (vals != listed[rr]) {
        o.detail = "first difference at r = " + std::to_string(rr);
        break;
      }
  return o;
}

std::uint64_t smallest_prime_divisor(BigInt n) {
  for (std::uint64_t p = 2;; ++p)
    if (n % p == 0) return p;
}

Outcome run_min_index(const VerificationCase& c, BuiltGroup& b, Report& r) {
  const auto& spec = catalog_group(c.group).spec;
  ActionSpec a = ActionSpec::parse(c.action);
  const std::size_t m = b.acted(c.action).degree();
  r.degree = m;
  std::size_t best = SIZE_MAX;
  std::set<std::uint64_t> witnesses;
  for (const auto& p : nontrivial(b.profile(c.action), m)) {
    std::size_t ind = m - p.orbits;
    if (ind < best) {
      best = ind;
      witnesses.clear();
    }
    if (ind == best) witnesses.insert(p.order);
  }
  Outcome o;
  o.computed = std::to_string(best);
  std::string w;
  for (auto x : witnesses) w += (w.empty() ? "" : ",") + std::to_string(x);
  o.detail = "witness orders {" + w + "}";
  bool ok = std::all_of(witnesses.begin(), witnesses.end(), [](std::uint64_t x) { return is_prime(x); });
  if (!ok) o.detail += "; a witness has composite order";
  if (!c.witness_orders.empty() && std::set<std::uint64_t>(c.witness_orders.begin(), c.witness_orders.end()) != witnesses) {
    ok = false;
    o.detail += "; expected witness orders differ";
  }
  const BigRational computed(static_cast<long long>(best));
  std::optional<BigRational> exact;
  std::optional<std::pair<BigRational, BigRational>> range;
  try {
    auto res = minimal_index_formula(spec, a);
    if (res.kind == IndexResult::Kind::Exact) exact = res.value;
    else range = {res.lower, res.upper};
    o.detail += "; " + res.source;
  } catch (const OddOrder&) {
    auto order = b.base.order();
    range = odd_order_index_bounds(spec.p, spec.d, static_cast<long long>(smallest_prime_divisor(order)), m);
    o.detail += "; odd-order bounds";
  }
  if (c.value) {
    if (exact && *exact != *c.value) {
      ok = false;
      o.detail += "; formula gives " + rat(*exact);
    }
    exact = c.value;
  }
  if (exact) {
    o.expected = rat(*exact);
    o.pass = ok && computed == *exact;
  } else {
    o.expected = "[" + rat(range->first) + ", " + rat(range->second) + "]";
    o.pass = ok && range->first <= computed && computed <= range->second;
  }
  return o;
}

Outcome run_min_degree(const VerificationCase& c, BuiltGroup& b, Report& r) {
  const auto& spec = catalog_group(c.group).spec;
  ActionSpec a = ActionSpec::parse(c.action);
  const std::size_t m = b.acted(c.action).degree();
  r.degree = m;
  std::size_t best = SIZE_MAX;
  for (const auto& p : nontrivial(b.profile(c.action), m)) best = std::min(best, m - p.fixed);
  const BigRational computed(static_cast<long long>(best));
  auto res = minimal_degree_formula(spec, a);
  Outcome o;
  o.computed = rat(computed);
  o.detail = res.source;
  if (c.value && res.kind == DegreeResult::Kind::Exact && res.value != *c.value) {
    o.detail += "; formula gives " + rat(res.value);
    o.expected = rat(*c.value);
    return o;
  }
  if (c.value || res.kind == DegreeResult::Kind::Exact) {
    BigRational e = c.value ? *c.value : res.value;
    o.expected = rat(e);
    o.pass = computed == e;
  } else {
    o.expected = ">= " + rat(res.value);
    o.pass = computed >= res.value;
  }
  return o;
}

Outcome run_degree(const VerificationCase& c, BuiltGroup& b, Report& r) {
  const auto& g = catalog_group(c.group);
  const std::size_t m = b.acted(c.action).degree();
  r.degree = m;
  Outcome o;
  o.computed = "degree=" + std::to_string(m);
  o.expected = "degree=" + action_degree(g.spec, ActionSpec::parse(c.action)).str();
  if (g.closable) {
    b.base.close();
    o.computed += " order=" + b.base.order().str();
    o.expected += " order=" + g.order.str();
  }
  o.pass = o.computed == o.expected;
  return o;
}

Outcome run_burnside(const VerificationCase& c, BuiltGroup& b, Report& r) {
  const std::size_t m = b.acted(c.action).degree();
  r.degree = m;
  BigInt sum = 0;
  for (const auto& p : b.profile(c.action)) sum += BigInt(p.class_size) * p.fixed;
  // transitive catalog actions: one orbit
  return compare(BigRational(sum, b.base.order()), 1, "");
}

Outcome run_fpr_identity(const VerificationCase& c, BuiltGroup& b, Report& r) {
  ActedGroup g = b.acted(c.action);
  const std::size_t m = g.degree();
  r.degree = m;
  const auto& prof = b.profile(c.action);
  const auto& cls = *b.classes;
  const auto& el = b.base.elements();
  PermGroup h = acted_stabilizer(g, 0);
  std::vector<std::size_t> inside(cls.classes.size(), 0);
  const auto& hel = h.elements();
  for (std::size_t i = 0; i < hel.size(); ++i) ++inside[cls.class_of[el.find(hel.row(i))]];
  std::size_t agree = 0;
  std::string first;
  for (std::size_t k = 0; k < prof.size(); ++k) {
    BigRational lhs(prof[k].fixed, m), rhs(inside[k], prof[k].class_size);
    if (lhs == rhs) ++agree;
    else if (first.empty()) first = "class " + std::to_string(k) + ": " + rat(lhs) + " vs " + rat(rhs);
  }
  Outcome o = compare(BigRational(static_cast<long long>(agree)), BigRational(static_cast<long long>(prof.size())), "");
  o.detail = first;
  return o;
}

Outcome run_pi_bound(const VerificationCase& c, BuiltGroup& b, Report& r) {
  const auto gamma = static_cast<std::size_t>(c.params.get("gamma"));
  const std::size_t m = b.acted(c.action).degree();
  r.degree = m;
  const std::size_t k = b.base.degree() / gamma;
  Outcome o;
  o.pass = true;
  std::optional<BigRational> worst;
  std::size_t checked = 0;
  for (const auto& p : b.profile(c.action)) {
    if (!is_prime(p.order)) continue;
    // block permutation pi and its number of r-cycles
    std::vector<std::size_t> pi(k);
    for (std::size_t j = 0; j < k; ++j) pi[j] = p.rep[j * gamma] / gamma;
    std::size_t moved = 0;
    for (std::size_t j = 0; j < k; ++j) moved += pi[j] != j;
    if (!moved) continue;
    ++checked;
    long long h = static_cast<long long>(moved / p.order);
    BigRational f(p.fixed, m), bound = fpr_product_pi_bound(static_cast<long long>(gamma), h, static_cast<long long>(p.order));
    if (f > bound) o.pass = false;
    if (!worst || f / bound > *worst) {
      worst = f / bound;
      o.computed = rat(f);
      o.expected = "<= " + rat(bound);
    }
  }
  o.detail = std::to_string(checked) + " classes with pi != 1";
  if (!checked) o.pass = false;
  return o;
}

}  // namespace

std::string to_string(CaseMode m) {
  switch (m) {
    case CaseMode::ElementFpr: return "element_fpr";
    case CaseMode::ElementBound: return "element_bound";
    case CaseMode::ClassScan: return "class_scan";
    case CaseMode::ExceptionScan: return "exception_scan";
    case CaseMode::MinIndex: return "min_index";
    case CaseMode::MinDegree: return "min_degree";
    case CaseMode::DegreeOnly: return "degree_only";
    case CaseMode::Burnside: return "burnside";
    case CaseMode::FprIdentity: return "fpr_identity";
    case CaseMode::PiBound: return "pi_bound";
  }
  return "?";
}

Json Report::to_json(bool with_timing) const {
  Json j;
  j["case"] = case_id;
  j["status"] = status;
  j["computed"] = computed;
  j["expected"] = expected;
  j["provenance"] = provenance;
  if (!group_order.empty()) j["group_order"] = group_order;
  j["degree"] = degree;
  if (!detail.empty()) j["detail"] = detail;
  if (with_timing) j["ms"] = ms;
  return j;
}

const std::vector<CatalogGroup>& catalog_groups() {
  static const std::vector<CatalogGroup> g = [] {
    std::vector<CatalogGroup> out;
    for (const auto& e : entries()) out.push_back(e.info);
    return out;
  }();
  return g;
}

const CatalogGroup& catalog_group(const std::string& id) { return entry(id).info; }

BuiltGroup build_group(const std::string& id) { return entry(id).build(); }

ActedGroup BuiltGroup::acted(const std::string& action) const {
  auto it = actions.find(action);
  if (it == actions.end()) throw std::out_of_range("group " + base.name() + " has no action " + action);
  return {base, it->second};
}

const std::vector<ClassProfile>& BuiltGroup::profile(const std::string& action) {
  if (auto it = profiles.find(action); it != profiles.end()) return it->second;
  base.close();
  if (!classes) classes = conjugacy_classes(base);
  return profiles[action] = class_profile(acted(action), *classes);
}

Permutation BuiltGroup::element(const std::string& selector, const std::optional<ElementSpec>& espec,
                                const std::string& action) {
  if (selector.rfind("named:", 0) == 0) return named.at(selector.substr(6));
  if (selector.rfind("cycles:", 0) == 0) return Permutation::from_cycles(selector.substr(7), base.degree());
  if (selector.rfind("class:o", 0) == 0) {
    auto f = selector.find('f');
    std::uint64_t order = std::stoull(selector.substr(7, f - 7));
    std::size_t fixed = std::stoull(selector.substr(f + 1));
    for (const auto& p : profile(action))
      if (p.order == order && p.fixed == fixed) return p.rep;
    throw std::invalid_argument("no class of order " + std::to_string(order) + " with " + std::to_string(fixed) +
                                " fixed points");
  }
  if (selector.empty() && espec) {
    if (!field) throw std::invalid_argument("element specs need a classical group");
    return induced_permutation(*field, build_element(*espec, form, *field), *points, form);
  }
  throw std::invalid_argument("bad element selector '" + selector + "'");
}

PermGroup load_m22_2(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  Json j = Json::parse(in);
  const std::size_t degree = j.at("degree").get<std::size_t>();
  std::vector<Permutation> gens;
  for (const auto& g : j.at("generators")) gens.push_back(Permutation::from_cycles(g.get<std::string>(), degree));
  return PermGroup(degree, std::move(gens), "M22:2");
}

const std::vector<VerificationCase>& catalog() {
  static const std::vector<VerificationCase> c = make_catalog();
  return c;
}

const VerificationCase& find_case(const std::string& id) {
  for (const auto& c : catalog())
    if (c.id == id) return c;
  throw std::out_of_range("unknown case '" + id + "'");
}

namespace {

// Budget and feasibility errors make optional cases infeasible; anything else fails.
void record_error(const VerificationCase& c, std::exception_ptr err, const std::string& prefix, Report& r) {
  r.status = "fail";
  try {
    std::rethrow_exception(err);
  } catch (const InfeasibleSpec& e) {
    r.status = c.optional ? "infeasible" : "fail";
    r.detail = prefix + e.what();
  } catch (const PointBudgetExceeded& e) {
    r.status = c.optional ? "infeasible" : "fail";
    r.detail = prefix + e.what();
  } catch (const CapExceeded& e) {
    r.status = c.optional ? "infeasible" : "fail";
    r.detail = prefix + e.what();
  } catch (const std::exception& e) {
    r.detail = prefix + e.what();
  }
}

Report construction_failure(const VerificationCase& c, std::exception_ptr err) {
  Report r;
  r.case_id = c.id;
  r.provenance = c.provenance;
  record_error(c, err, "construction failed: ", r);
  return r;
}

}  // namespace

Report run_case(const VerificationCase& c) {
  if (c.group.empty()) return run_case(c, nullptr);
  std::optional<BuiltGroup> b;
  try {
    b = build_group(c.group);
  } catch (...) {
    return construction_failure(c, std::current_exception());
  }
  return run_case(c, &*b);
}

Report run_case(const VerificationCase& c, BuiltGroup* b) {
  Report r;
  r.case_id = c.id;
  r.provenance = c.provenance;
  const auto t0 = std::chrono::steady_clock::now();
  try {
    if (!c.group.empty() && !b) throw std::invalid_argument("case " + c.id + " needs its group");
    Outcome o;
    switch (c.mode) {
      case CaseMode::ElementFpr:
      case CaseMode::ElementBound: o = run_element(c, b, r); break;
      case CaseMode::ClassScan: o = run_class_scan(c, *b, r); break;
      case CaseMode::ExceptionScan: o = run_exception_scan(c, *b, r); break;
      case CaseMode::MinIndex: o = run_min_index(c, *b, r); break;
      case CaseMode::MinDegree: o = run_min_degree(c, *b, r); break;
      case CaseMode::DegreeOnly: o = run_degree(c, *b, r); break;
      case CaseMode::Burnside: o = run_burnside(c, *b, r); break;
      case CaseMode::FprIdentity: o = run_fpr_identity(c, *b, r); break;
      case CaseMode::PiBound: o = run_pi_bound(c, *b, r); break;
    }
    r.status = o.pass ? "pass" : "fail";
    r.computed = o.computed;
    r.expected = o.expected;
    r.detail = o.detail;
  } catch (...) {
    record_error(c, std::current_exception(), "", r);
  }
  if (b && b->base.is_closed()) r.group_order = b->base.order().str();
  r.ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  return r;
}

std::vector<std::string> suite_names() {
  return {"all", "tables", "subset", "subspace", "affine", "diagonal", "product", "minindex", "mindeg", "burnside",
          "exceptions"};
}

bool SuiteResult::all_pass() const {
  return std::all_of(reports.begin(), reports.end(), [](const Report& r) { return r.passed(); });
}

Json SuiteResult::summary() const {
  Json j;
  j["suite"] = suite;
  std::size_t pass = 0;
  for (const auto& r : reports) pass += r.passed();
  j["passed"] = pass;
  j["total"] = reports.size();
  Json per = Json::object();
  for (const auto& [s, pt] : per_suite) per[s] = {{"passed", pt.first}, {"total", pt.second}};
  j["per_suite"] = per;
  j["ms"] = ms;
  return j;
}

SuiteResult run_suite(const std::string& name, unsigned parallelism, const std::function<void(const Report&)>& on_report) {
  auto names = suite_names();
  if (std::find(names.begin(), names.end(), name) == names.end()) throw std::invalid_argument("unknown suite '" + name + "'");
  const auto t0 = std::chrono::steady_clock::now();
  std::vector<const VerificationCase*> cases;
  for (const auto& c : catalog())
    if (name == "all" || std::find(c.suites.begin(), c.suites.end(), name) != c.suites.end()) cases.push_back(&c);

  // Cases sharing a group run in one chunk so the group is built and closed once.
  std::vector<std::string> order;
  std::map<std::string, std::vector<std::size_t>> chunks;
  for (std::size_t i = 0; i < cases.size(); ++i) {
    const std::string key = cases[i]->group.empty() ? "#" + cases[i]->id : cases[i]->group;
    if (!chunks.count(key)) order.push_back(key);
    chunks[key].push_back(i);
  }
  std::vector<Report> reports(cases.size());
  std::vector<bool> done(cases.size(), false);
  std::size_t next_emit = 0;
  std::mutex mu;
  auto emit_ready = [&] {
    while (next_emit < cases.size() && done[next_emit]) {
      if (on_report) on_report(reports[next_emit]);
      ++next_emit;
    }
  };
  auto run_chunk = [&](const std::string& key) {
    const auto& idx = chunks.at(key);
    std::optional<BuiltGroup> built;
    std::exception_ptr build_error;
    if (key[0] != '#') {
      try {
        built = build_group(key);
      } catch (...) {
        build_error = std::current_exception();
      }
    }
    for (std::size_t i : idx) {
      Report r = build_error ? construction_failure(*cases[i], build_error)
                             : run_case(*cases[i], built ? &*built : nullptr);
      std::lock_guard<std::mutex> lock(mu);
      reports[i] = std::move(r);
      done[i] = true;
      emit_ready();
    }
  };
  if (parallelism <= 1) {
    for (const auto& key : order) run_chunk(key);
  } else {
    std::size_t next = 0;
    std::mutex qmu;
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < parallelism; ++t)
      pool.emplace_back([&] {
        for (;;) {
          std::string key;
          {
            std::lock_guard<std::mutex> lock(qmu);
            if (next >= order.size()) return;
            key = order[next++];
          }
          run_chunk(key);
        }
      });
    for (auto& th : pool) th.join();
  }

  SuiteResult res;
  res.suite = name;
  res.reports = std::move(reports);
  for (std::size_t i = 0; i < cases.size(); ++i)
    for (const auto& s : cases[i]->suites) {
      auto& pt = res.per_suite[s];
      pt.first += res.reports[i].passed();
      ++pt.second;
    }
  res.ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  return res;
}

}  // namespace fpr
