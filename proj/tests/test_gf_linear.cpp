#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <set>

#include "fpr/gf.hpp"

using namespace fpr;

namespace {

std::uint64_t upow(std::uint64_t b, unsigned e) {
  std::uint64_t r = 1;
  while (e--) r *= b;
  return r;
}

// Oracle: count m-subspaces by counting ordered bases of GF(q)^n and dividing by |GL_m(q)|.
std::uint64_t count_by_bases(unsigned n, unsigned m, std::uint64_t q) {
  std::uint64_t num = 1, den = 1;
  for (unsigned i = 0; i < m; ++i) {
    num *= upow(q, n) - upow(q, i);
    den *= upow(q, m) - upow(q, i);
  }
  return num / den;
}

// Oracle: totally singular m-spaces by filtering every m-space.
std::size_t brute_ts_count(const Field& F, const FormSpec& form, unsigned m) {
  std::size_t c = 0;
  for (auto& W : enumerate_subspaces(F, form.n, m))
    if (is_totally_singular(F, form, W)) ++c;
  return c;
}

unsigned fixed_dim(const Field& F, const Matrix& x) {
  Matrix y = x;
  for (unsigned i = 0; i < y.rows; ++i) y.at(i, i) = F.sub(y.at(i, i), 1);
  return y.rows - mat_rank(F, y);
}

Permutation on_points(const Field& F, const Matrix& x, const PointSet& pts, const FormSpec& form) {
  return induced_permutation(F, SemilinearMap{x, 0}, pts, form);
}

}  // namespace

TEST_CASE("field tables") {
  Field F8(2, 3);
  CHECK(F8.q() == 8);
  const Elt g = 2;  // the class of x
  CHECK(F8.pow(g, 3) == F8.add(g, 1));
  CHECK(F8.inv(1) == 1);
  Field F9(3, 2);
  std::set<unsigned> fixed;
  for (unsigned a = 0; a < 9; ++a)
    if (F9.frob(static_cast<Elt>(a)) == a) fixed.insert(a);
  CHECK(fixed == std::set<unsigned>{0, 1, 2});
  CHECK_THROWS(Field::of_order(6));
  CHECK_THROWS(F8.inv(0));

  for (unsigned q : {2u, 3u, 4u, 5u, 7u, 8u, 9u, 16u}) {
    Field F = Field::of_order(q);
    CHECK(F.mult_order(F.gen()) == q - 1);
    bool ok = true;
    for (unsigned a = 0; a < q; ++a)
      for (unsigned b = 0; b < q; ++b) {
        if (F.add(a, b) != F.add(b, a) || F.mul(a, b) != F.mul(b, a)) ok = false;
        for (unsigned c = 0; c < q; c += 3)
          if (F.mul(a, F.add(b, c)) != F.add(F.mul(a, b), F.mul(a, c))) ok = false;
        if (b && F.mul(F.div(a, b), b) != a) ok = false;
      }
    CHECK(ok);
  }
}

TEST_CASE("subspace enumeration matches gaussian binomials") {
  for (unsigned q : {2u, 3u}) {
    Field F = Field::of_order(q);
    for (unsigned n = 1; n <= 6; ++n)
      for (unsigned m = 0; m <= n; ++m) {
        auto spaces = enumerate_subspaces(F, n, m);
        CHECK(spaces.size() == count_by_bases(n, m, q));
        CHECK(BigInt(spaces.size()) == gaussian_binomial(n, m, BigInt(q)));
      }
  }
}

TEST_CASE("matrix helpers") {
  Field F = Field::of_order(3);
  std::mt19937_64 rng(7);
  for (int t = 0; t < 20; ++t) {
    Matrix A(4, 4);
    for (auto& x : A.a) x = static_cast<Elt>(rng() % 3);
    if (mat_rank(F, A) < 4) continue;
    CHECK(mat_mul(F, A, mat_inverse(F, A)) == Matrix::identity(4));
  }
  Matrix A(3, 2);
  A.at(0, 0) = 1;
  A.at(1, 0) = 1;
  A.at(2, 1) = 1;
  Matrix K = left_kernel(F, A);
  REQUIRE(K.rows == 1);
  Vec z = vec_mat(F, K.row(0), A);
  CHECK(z == Vec{0, 0});
}

TEST_CASE("semilinear maps") {
  Field F = Field::of_order(8);
  SemilinearMap phi{Matrix::identity(2), 1};
  CHECK(projective_order(F, phi) == 3);
  SemilinearMap x{Matrix::identity(2), 2};
  x.A.at(0, 1) = F.gen();
  SemilinearMap y = sl_compose(F, x, sl_inverse(F, x));
  CHECK(y.frob == 0);
  CHECK(y.A == Matrix::identity(2));
  Vec v{3, 5};
  CHECK(sl_compose(F, x, phi).apply(F, v) == phi.apply(F, x.apply(F, v)));
}

TEST_CASE("point counts") {
  {
    Field F = Field::of_order(2);
    auto form = standard_form(F, FormKind::Symplectic, 6);
    CHECK(enumerate_action_points(ActionSpec::parse("P1"), form, F).size() == 63);
    CHECK(enumerate_action_points(ActionSpec::parse("P2"), form, F).size() == brute_ts_count(F, form, 2));
    CHECK(enumerate_action_points(ActionSpec::parse("P3"), form, F).size() == 135);
    CHECK(enumerate_action_points(ActionSpec::parse("Oeps:-"), form, F).size() == 28);
    CHECK(enumerate_action_points(ActionSpec::parse("Oeps:+"), form, F).size() == 36);
  }
  {
    Field F = Field::of_order(4);
    auto form = standard_form(F, FormKind::Unitary, 4);
    CHECK(enumerate_action_points(ActionSpec::parse("N1"), form, F).size() == 40);
    CHECK(enumerate_action_points(ActionSpec::parse("P1"), form, F).size() == 45);
    CHECK(enumerate_action_points(ActionSpec::parse("P2"), form, F).size() == 27);
    CHECK(brute_ts_count(F, form, 2) == 27);
    auto sh = symplectic_hermitian_form(F, 4);
    CHECK(enumerate_action_points(ActionSpec::parse("P2"), sh, F).size() == 27);
  }
  {
    Field F = Field::of_order(2);
    auto minus6 = standard_form(F, FormKind::Quadratic, 6, -1);
    CHECK(enumerate_action_points(ActionSpec::parse("P1"), minus6, F).size() == 27);
    CHECK(enumerate_action_points(ActionSpec::parse("N1ns"), minus6, F).size() == 36);
    auto plus8 = standard_form(F, FormKind::Quadratic, 8, 1);
    CHECK(enumerate_action_points(ActionSpec::parse("P1"), plus8, F).size() == 135);
    CHECK(enumerate_action_points(ActionSpec::parse("P2"), plus8, F).size() == brute_ts_count(F, plus8, 2));
    CHECK(enumerate_action_points(ActionSpec::parse("N2:-"), plus8, F).size() == 1120);
  }
  {
    Field F = Field::of_order(3);
    auto o7 = standard_form(F, FormKind::Quadratic, 7);
    CHECK(enumerate_action_points(ActionSpec::parse("P1"), o7, F).size() == 364);
    CHECK(enumerate_action_points(ActionSpec::parse("N1:-"), o7, F).size() == 351);
    CHECK(enumerate_action_points(ActionSpec::parse("N1:+"), o7, F).size() == 378);
    auto plus8 = standard_form(F, FormKind::Quadratic, 8, 1);
    CHECK(enumerate_action_points(ActionSpec::parse("N1"), plus8, F).size() == 1080);
  }
  {
    Field F = Field::of_order(2);
    auto form = standard_form(F, FormKind::Symplectic, 6);
    CHECK_THROWS_AS(enumerate_action_points(ActionSpec::parse("P1"), form, F, 10), PointBudgetExceeded);
  }
}

TEST_CASE("element builders") {
  {
    Field F = Field::of_order(4);
    auto form = standard_form(F, FormKind::Unitary, 4);
    auto x = build_element(ElementSpec::scalar_on(4, 1, 3), form, F);
    CHECK(projective_order(F, x) == 3);
    CHECK(check_form_preservation(F, x, form));
    CHECK(fixed_dim(F, x.A) == 3);
  }
  {
    Field F = Field::of_order(2);
    auto form = standard_form(F, FormKind::Symplectic, 6);
    auto t = build_element(ElementSpec::transvection(6, 2), form, F);
    CHECK(fixed_dim(F, t.A) == 5);
    auto l = build_element(ElementSpec::irreducible(6, 2, 3), form, F);
    CHECK(fixed_dim(F, l.A) == 4);
    CHECK(projective_order(F, l) == 3);
  }
  {
    Field F = Field::of_order(3);
    auto form = standard_form(F, FormKind::Quadratic, 7);
    for (int eta : {1, -1}) {
      ElementSpec e = ElementSpec::neg_reflection(7);
      e.eigenspace_type = eta;
      auto x = build_element(e, form, F);
      CHECK(fixed_dim(F, x.A) == 1);
      CHECK(check_form_preservation(F, x, form));
    }
  }
  {
    Field F = Field::of_order(2);
    auto form = standard_form(F, FormKind::Quadratic, 8, 1);
    ElementSpec e;
    e.order = 2;
    e.involution_class = "a";
    e.blocks = {{ElementBlock::Kind::Jordan, 2, 2, 0, false}, {ElementBlock::Kind::Jordan, 1, 4, 0, false}};
    auto a2 = build_element(e, form, F);
    CHECK(fixed_dim(F, a2.A) == 6);
    CHECK(dickson_invariant(F, a2.A, form) == 0);
  }
  {
    Field F = Field::of_order(3);
    auto form = standard_form(F, FormKind::Quadratic, 8, 1);
    CHECK_THROWS_AS(build_element(ElementSpec::transvection(8, 3), form, F), InfeasibleSpec);
  }
  {
    Field F = Field::of_order(8);
    auto form = standard_form(F, FormKind::Linear, 2);
    auto phi = build_element(ElementSpec::outer_element("field_aut", 3), form, F);
    CHECK(phi.frob == 1);
  }
  {
    Field F = Field::of_order(9);
    auto form = symplectic_hermitian_form(F, 4);
    auto tau = build_element(ElementSpec::outer_element("graph_aut", 2), form, F);
    CHECK(projective_order(F, tau) == 2);
    CHECK(check_form_preservation(F, tau, form));
  }
}

TEST_CASE("Dickson invariant") {
  Field F = Field::of_order(2);
  auto minus6 = standard_form(F, FormKind::Quadratic, 6, -1);
  CHECK(dickson_invariant(F, Matrix::identity(6), minus6) == 0);
  CHECK(check_form_preservation(F, sl_identity(6), minus6));
  auto b1 = build_element(ElementSpec::transvection(6, 2), minus6, F);
  CHECK(dickson_invariant(F, b1.A, minus6) == 1);
  auto sp = standard_form(F, FormKind::Symplectic, 6);
  CHECK_THROWS(dickson_invariant(F, Matrix::identity(6), sp));
}

TEST_CASE("induced permutations") {
  Field F2 = Field::of_order(2);
  auto lin3 = standard_form(F2, FormKind::Linear, 3);
  auto pts = enumerate_action_points(ActionSpec::parse("P1"), lin3, F2);
  CHECK(on_points(F2, Matrix::identity(3), pts, lin3).is_identity());
  auto t = on_points(F2, elementary_transvection(F2, 3, 0, 1, 1), pts, lin3);
  CHECK(fixed_point_count(t) == 3);

  Field F4 = Field::of_order(4);
  auto lin2 = standard_form(F4, FormKind::Linear, 2);
  auto line = enumerate_action_points(ActionSpec::parse("P1"), lin2, F4);
  CHECK(on_points(F4, mat_scale(F4, Matrix::identity(2), F4.gen()), line, lin2).is_identity());
}

TEST_CASE("induced permutations are homomorphisms") {
  struct Case {
    unsigned q;
    FormKind kind;
    unsigned n;
    int eps;
    std::string action;
  };
  std::vector<Case> cases = {
      {2, FormKind::Symplectic, 6, 0, "P2"},  {2, FormKind::Symplectic, 6, 0, "Oeps:-"},
      {4, FormKind::Unitary, 4, 0, "N1"},     {2, FormKind::Quadratic, 8, 1, "N1ns"},
      {3, FormKind::Quadratic, 7, 0, "N1:-"}, {3, FormKind::Linear, 3, 0, "P1"},
  };
  std::mt19937_64 rng(2024);
  for (const auto& c : cases) {
    Field F = Field::of_order(c.q);
    auto form = standard_form(F, c.kind, c.n, c.eps);
    auto pts = enumerate_action_points(ActionSpec::parse(c.action), form, F);
    GeneratorPool pool(F, form);
    for (int t = 0; t < 50; ++t) {
      Matrix x = pool.random_element(rng, 6), y = pool.random_element(rng, 6);
      CHECK(check_form_preservation(F, SemilinearMap{x, 0}, form));
      auto px = on_points(F, x, pts, form), py = on_points(F, y, pts, form);
      CHECK(on_points(F, mat_mul(F, x, y), pts, form) == compose(px, py));
    }
  }
}

TEST_CASE("generator pools generate the full isometry groups") {
  {
    Field F = Field::of_order(2);
    auto form = standard_form(F, FormKind::Symplectic, 6);
    auto pts = enumerate_action_points(ActionSpec::parse("P1"), form, F);
    GeneratorPool pool(F, form);
    std::vector<Permutation> gens;
    for (const auto& M : pool.pool()) gens.push_back(on_points(F, M, pts, form));
    PermGroup G(pts.size(), gens, "Sp6(2)");
    G.close();
    CHECK(G.order() == 1451520);
  }
  {
    Field F = Field::of_order(4);
    auto form = standard_form(F, FormKind::Unitary, 4);
    auto pts = enumerate_action_points(ActionSpec::parse("P1"), form, F);
    GeneratorPool pool(F, form);
    std::vector<Permutation> gens;
    for (const auto& M : pool.pool()) gens.push_back(on_points(F, M, pts, form));
    PermGroup G(pts.size(), gens, "U4(2)");
    G.close();
    CHECK(G.order() == 25920);
  }
  {
    Field F = Field::of_order(2);
    auto form = standard_form(F, FormKind::Quadratic, 6, -1);
    auto pts = enumerate_action_points(ActionSpec::parse("N1ns"), form, F);
    GeneratorPool pool(F, form);
    std::vector<Permutation> gens;
    for (const auto& M : pool.pool()) gens.push_back(on_points(F, M, pts, form));
    PermGroup G(pts.size(), gens, "O6-(2)");
    G.close();
    CHECK(G.order() == 51840);
  }
}

TEST_CASE("fixed m-spaces of semisimple elements") {
  CHECK(fixed_mspaces_semisimple(2, 1, 2, 2, 2) == 2);
  CHECK(fixed_mspaces_semisimple(0, 2, 2, 2, 2) == 5);
  CHECK(fixed_mspaces_semisimple(3, 1, 2, 3, 2) == 8);
  CHECK_THROWS_AS(fixed_mspaces_semisimple(2, 2, 2, 4, 2), NotApplicable);
  CHECK_THROWS_AS(fixed_mspaces_semisimple(2, 1, 2, 1, 2), NotApplicable);

  // Exhaustive agreement: y = (C^a, I_e) for C the companion of an irreducible polynomial
  // of degree i other than x - 1.
  for (unsigned q : {2u, 3u}) {
    Field F = Field::of_order(q);
    for (unsigned i = 1; i <= 6; ++i)
      for (unsigned a = 1; a * i <= 6; ++a)
        for (unsigned e = 0; a * i + e <= 6; ++e) {
          const unsigned n = a * i + e;
          std::optional<Matrix> C;
          for (std::uint64_t t = 0; t < upow(q, i) && !C; ++t) {
            std::vector<unsigned> m(i + 1, 0);
            std::uint64_t x = t;
            for (unsigned k = 0; k < i; ++k) {
              m[k] = static_cast<unsigned>(x % q);
              x /= q;
            }
            m[i] = 1;
            if (!is_irreducible(q, m)) continue;
            if (i == 1 && F.neg(static_cast<Elt>(m[0])) == 1) continue;
            if (i == 1 && m[0] == 0) continue;
            Matrix c(i, i);
            for (unsigned k = 0; k + 1 < i; ++k) c.at(k, k + 1) = 1;
            for (unsigned k = 0; k < i; ++k) c.at(i - 1, k) = F.neg(static_cast<Elt>(m[k]));
            C = c;
          }
          if (!C) continue;
          Matrix y = Matrix::identity(n);
          for (unsigned b = 0; b < a; ++b)
            for (unsigned r = 0; r < i; ++r)
              for (unsigned s = 0; s < i; ++s) y.at(b * i + r, b * i + s) = C->at(r, s);
          for (unsigned m = i; m < 2 * i && m <= n; ++m) {
            CAPTURE(q);
            CAPTURE(i);
            CAPTURE(a);
            CAPTURE(e);
            CAPTURE(m);
            CHECK(BigInt(count_fixed_subspaces(F, y, m)) == fixed_mspaces_semisimple(e, a, i, m, q));
          }
        }
  }
}

TEST_CASE("nu of element specs") {
  CHECK(nu_of_spec(ElementSpec::transvection(6, 2)) == 1);
  CHECK(nu_of_spec(ElementSpec::scalar_on(6, 1, 3)) == 1);
  CHECK(nu_of_spec(ElementSpec::irreducible(6, 2, 3)) == 2);
  CHECK(nu_of_spec(ElementSpec::neg_reflection(7)) == 1);
}
