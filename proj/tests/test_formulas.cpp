#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <bit>
#include <cstdint>

#include "fpr/formulas.hpp"
#include "fpr/gf.hpp"

using namespace fpr;

namespace {

BigRational R(long long a, long long b) { return BigRational(a, b); }

GroupSpec G(Family f, unsigned n, unsigned q, int eps = 0) {
  GroupSpec g;
  g.family = f;
  g.n = n;
  g.q = q;
  g.eps = eps;
  return g;
}

// Oracle: fixed l-subsets of {0..n-1} under a permutation given by images.
BigRational brute_subset_fpr(const std::vector<int>& img, int l) {
  const int n = static_cast<int>(img.size());
  long long fixed = 0, total = 0;
  for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
    if (std::popcount(mask) != l) continue;
    ++total;
    std::uint32_t image = 0;
    for (int i = 0; i < n; ++i)
      if (mask >> i & 1) image |= 1u << img[i];
    fixed += image == mask;
  }
  return R(fixed, total);
}

std::vector<int> cycle_perm(int n, const std::vector<int>& cycle_lengths) {
  std::vector<int> img(n);
  for (int i = 0; i < n; ++i) img[i] = i;
  int start = 0;
  for (int len : cycle_lengths) {
    for (int j = 0; j < len; ++j) img[start + j] = start + (j + 1) % len;
    start += len;
  }
  return img;
}

// Oracle: bisections of {0..n-1} fixed by the transposition (0 1).
BigRational brute_partition_fpr(int n) {
  long long fixed = 0, total = 0;
  const std::uint32_t full = (1u << n) - 1;
  for (std::uint32_t mask = 0; mask <= full; ++mask) {
    if (std::popcount(mask) != n / 2 || !(mask & 1)) continue;  // block containing 0
    ++total;
    std::uint32_t swapped = (mask & ~3u) | ((mask & 1) << 1) | ((mask >> 1) & 1);
    fixed += swapped == mask || swapped == (full & ~mask);
  }
  return R(fixed, total);
}

ElementSpec with_disc(ElementSpec e, const char* d) {
  e.discriminant = d;
  return e;
}

ElementSpec with_type(ElementSpec e, int t) {
  e.eigenspace_type = t;
  return e;
}

ElementSpec b_involution(unsigned n) {
  ElementSpec e = ElementSpec::transvection(n, 2);
  e.involution_class = "b";
  return e;
}

BigRational row(const std::string& id, Params p) { return fpr_exception_row(exception_record(id), p); }

}  // namespace

TEST_CASE("subset r-cycle formula agrees with direct counting") {
  for (int n = 3; n <= 12; ++n)
    for (int l = 1; 2 * l < n; ++l)
      for (int r = 2; r <= n; ++r) {
        if (!is_prime(r)) continue;
        CHECK(fpr_subset_rcycle(n, l, r) == brute_subset_fpr(cycle_perm(n, {r}), l));
      }
  CHECK(fpr_subset_rcycle(7, 3, 5) == 0);
  CHECK(fpr_subset_rcycle(8, 1, 3) == R(5, 8));
  CHECK(fpr_subset_rcycle(6, 2, 2) == R(7, 15));
  CHECK_THROWS_AS(fpr_subset_rcycle(6, 3, 2), ConditionViolated);
  CHECK_THROWS_AS(fpr_subset_rcycle(6, 2, 4), ConditionViolated);
}

TEST_CASE("double transposition and subset maxima") {
  for (int n = 5; n <= 12; ++n)
    for (int l = 1; 2 * l < n; ++l)
      CHECK(fpr_subset_double_transposition(n, l) == brute_subset_fpr(cycle_perm(n, {2, 2}), l));
  GroupSpec a6;
  a6.n = 6;
  a6.alt = true;
  GroupSpec s6;
  s6.n = 6;
  CHECK(fpr_subset_max(a6, 1, 2) == R(1, 3));
  CHECK(fpr_subset_max(s6, 1, 2) == R(2, 3));
  // a double transposition fixes 3 of the 15 2-subsets
  CHECK(fpr_subset_max(a6, 2, 2) == R(1, 5));
  CHECK(fpr_subset_max(a6, 2, 3) == fpr_subset_rcycle(6, 2, 3));
}

TEST_CASE("subset formula: monotone, bounded, r = 2 lower bound") {
  for (int n = 3; n <= 20; ++n)
    for (int r = 2; r <= n; ++r) {
      if (!is_prime(r)) continue;
      for (int l = 1; 2 * l < n; ++l) {
        BigRational v = fpr_subset_rcycle(n, l, r);
        BigRational cap = BigRational(1) - R(r, n);
        CHECK(v <= cap);
        if (r < n) CHECK((v == cap) == (l == 1));
        if (2 * (l + 1) < n && r <= n - l) CHECK(fpr_subset_rcycle(n, l + 1, r) < v);
        if (r == 2) CHECK(v >= R(1, 2) - R(1, 2 * n));
      }
    }
}

TEST_CASE("partition formula agrees with direct counting") {
  for (int n : {6, 8, 10, 12}) CHECK(fpr_partition_transposition(n) == brute_partition_fpr(n));
  CHECK(fpr_partition_transposition(6) == R(2, 5));
  CHECK(fpr_partition_transposition(8) == R(3, 7));
  CHECK(fpr_partition_transposition(10) == R(4, 9));
  CHECK_THROWS_AS(fpr_partition_transposition(7), ConditionViolated);
}

TEST_CASE("small closed forms") {
  CHECK(fpr_affine(3, 2, 1) == R(1, 3));
  CHECK(fpr_affine(2, 4, 0) == R(1, 16));
  CHECK(fpr_affine(5, 3, 1) == R(1, 25));
  CHECK_THROWS_AS(fpr_affine(3, 2, 2), ConditionViolated);

  CHECK(fpr_psl2_borel(8, Psl2Element::Torus) == R(2, 9));
  CHECK(fpr_psl2_borel(8, Psl2Element::FieldAut, 3) == R(1, 3));
  CHECK(fpr_psl2_borel(7, Psl2Element::Unipotent) == R(1, 8));
  CHECK_THROWS_AS(fpr_psl2_borel(9, Psl2Element::Unipotent), ConditionViolated);
  CHECK_THROWS_AS(fpr_psl2_borel(16, Psl2Element::FieldAut, 3), ConditionViolated);

  CHECK(fpr_product({R(7, 15)}) == R(7, 15));
  CHECK(fpr_product({R(1, 3), R(1, 3)}) == R(1, 9));
  CHECK(fpr_product({}) == 1);
  CHECK(fpr_product_pi_bound(60, 1, 2) == R(1, 60));
  CHECK(fpr_product_pi_bound(5, 2, 3) == R(1, 625));
  CHECK(fpr_product_pi_bound(9, 1, 3) == R(1, 81));

  CHECK(fpr_diagonal(60, 4, 2, DiagonalCase::R2) == R(1, 15));
  CHECK(fpr_diagonal(60, 16, 2, DiagonalCase::R1Inversions) == R(4, 15));
  CHECK(fpr_diagonal(60, 4, 3, DiagonalCase::R2) == R(1, 225));
  CHECK_THROWS_AS(fpr_diagonal(60, 7, 2, DiagonalCase::R2), ConditionViolated);

  CHECK(twisted_wreath_bound(60, 2, 1) == R(1, 60));
  CHECK(twisted_wreath_bound(60, 3, 1) == R(1, 3600));
  CHECK(twisted_wreath_bound(168, 2, 0) == R(1, 168 * 168));
  CHECK_THROWS_AS(twisted_wreath_bound(60, 2, 2), ConditionViolated);
}

TEST_CASE("action degrees") {
  GroupSpec s6;
  s6.n = 6;
  CHECK(action_degree(s6, ActionSpec::parse("subsets:2")) == 15);
  CHECK(action_degree(s6, ActionSpec::parse("partitions")) == 10);
  GroupSpec s8;
  s8.n = 8;
  CHECK(action_degree(s8, ActionSpec::parse("partitions")) == 35);
  CHECK(action_degree(G(Family::Symplectic, 6, 2), ActionSpec::parse("Oeps:-")) == 28);
  CHECK(action_degree(G(Family::Unitary, 4, 2), ActionSpec::parse("P2")) == 27);
  CHECK(action_degree(G(Family::Linear, 4, 2), ActionSpec::parse("P1")) == 15);
  CHECK(action_degree(G(Family::Linear, 4, 2), ActionSpec::parse("P1,3")) == 105);
  CHECK(action_degree(G(Family::OrthogonalEven, 8, 4, 1), ActionSpec::parse("P2")) == 394485);

  // Oracle: enumerated point sets.
  struct Case {
    GroupSpec g;
    const char* action;
  };
  const Case cases[] = {
      {G(Family::Linear, 3, 3), "P1"},          {G(Family::Linear, 4, 2), "P2"},
      {G(Family::Linear, 3, 4), "P1"},          {G(Family::Symplectic, 6, 2), "P1"},
      {G(Family::Symplectic, 6, 2), "P2"},      {G(Family::Symplectic, 6, 2), "P3"},
      {G(Family::Symplectic, 6, 2), "Oeps:+"},  {G(Family::Symplectic, 6, 2), "Oeps:-"},
      {G(Family::Symplectic, 8, 2), "N2"},      {G(Family::Symplectic, 4, 3), "P2"},
      {G(Family::Unitary, 4, 2), "P1"},         {G(Family::Unitary, 4, 2), "N1"},
      {G(Family::Unitary, 5, 2), "P1"},         {G(Family::Unitary, 5, 2), "P2"},
      {G(Family::Unitary, 5, 2), "N2"},         {G(Family::Unitary, 4, 3), "P2"},
      {G(Family::OrthogonalOdd, 7, 3), "P1"},   {G(Family::OrthogonalOdd, 7, 3), "N1:-"},
      {G(Family::OrthogonalOdd, 7, 3), "N1:+"}, {G(Family::OrthogonalOdd, 7, 3), "N2:-"},
      {G(Family::OrthogonalEven, 8, 2, 1), "P1"},  {G(Family::OrthogonalEven, 8, 2, 1), "P2"},
      {G(Family::OrthogonalEven, 8, 2, -1), "P1"}, {G(Family::OrthogonalEven, 8, 2, 1), "N1ns"},
      {G(Family::OrthogonalEven, 8, 2, -1), "N1ns"}, {G(Family::OrthogonalEven, 8, 2, 1), "N2:-"},
      {G(Family::OrthogonalEven, 8, 2, -1), "N2:+"}, {G(Family::OrthogonalEven, 8, 3, 1), "N1"},
      {G(Family::OrthogonalEven, 8, 3, -1), "N1"},   {G(Family::OrthogonalEven, 8, 3, -1), "P1"},
  };
  for (const auto& c : cases) {
    ActionSpec a = ActionSpec::parse(c.action);
    Field F = natural_field(c.g);
    FormSpec form = natural_form(F, c.g);
    CAPTURE(c.g.label());
    CAPTURE(c.action);
    CHECK(action_degree(c.g, a) == BigInt(enumerate_action_points(a, form, F).size()));
  }
  CHECK_THROWS_AS(action_degree(G(Family::TwistedWreath, 2, 0), ActionSpec::parse("natural")), BadSpec);
}

TEST_CASE("exception registry shape") {
  const auto& recs = exception_records();
  CHECK(recs.size() == 36);
  std::map<std::string, int> per_table;
  std::set<std::string> ids;
  for (const auto& r : recs) {
    ++per_table[r.table];
    ids.insert(r.id);
    CHECK(static_cast<bool>(r.value));
    CHECK(static_cast<bool>(r.prime_of));
  }
  CHECK(ids.size() == recs.size());
  CHECK(per_table["class"] == 20);
  CHECK(per_table["subb2"] == 6);
  CHECK(per_table["a6"] == 5);
  CHECK(per_table["main"] == 5);
  CHECK_THROWS_AS(exception_record("tab:class/none"), UnknownFormula);
}

TEST_CASE("table rows at stated values") {
  CHECK(row("tab:class/L/P1/transvection", {{"n", 3}, {"q", 2}}) == R(3, 7));
  CHECK(row("tab:class/L/P1/transvection", {{"n", 4}, {"q", 2}}) == R(7, 15));
  CHECK(row("tab:class/Sp/Oeps/b1", {{"n", 6}, {"q", 2}, {"eps", -1}}) == R(4, 7));
  CHECK(row("tab:subb2/Sp/Ominus/b1", {{"n", 6}, {"q", 2}}) == R(4, 7));
  CHECK(row("tab:class/U/P2/tau", {{"n", 4}, {"q", 2}}) == R(5, 9));
  CHECK(row("tab:class/U/P2/tau", {{"n", 4}, {"q", 3}}) == R(5, 14));
  CHECK(row("tab:class/U/N1/omega", {{"n", 4}, {"q", 2}}) == R(13, 40));
  CHECK(row("tab:class/L/P1/omega", {{"n", 2}, {"q", 8}}) == R(2, 9));
  CHECK(row("tab:class/Sp/Ominus/Lambda", {{"n", 6}, {"q", 2}}) == R(5, 14));
  CHECK(row("tab:class/POmega/N1/refl-nsq", {{"n", 8}, {"q", 3}, {"eps", 1}}) == R(7, 20));
  CHECK(row("m22.2/2B", {}) == R(4, 11));
  CHECK(row("tab:a6/S6/S2wrS3/2", {}) == R(7, 15));

  CHECK_THROWS_AS(row("tab:class/L/P1/transvection", {{"n", 2}, {"q", 2}}), ConditionViolated);
  CHECK_THROWS_AS(row("tab:class/U/P2/tau", {{"n", 4}, {"q", 4}}), ConditionViolated);
  CHECK_THROWS_AS(row("tab:class/Sp/Oeps/b1", {{"n", 6}, {"q", 4}, {"eps", 1}}), ConditionViolated);
  try {
    row("tab:class/U/P1/omega", {{"n", 4}, {"q", 2}});
    FAIL("expected a condition violation");
  } catch (const ConditionViolated& e) {
    CHECK(std::string(e.what()).find("n >= 5 odd") != std::string::npos);
  }
}

TEST_CASE("rows exceed their thresholds wherever their conditions hold") {
  int evaluated = 0;
  for (const auto& rec : exception_records()) {
    if (rec.table != "class" && rec.table != "subb2") continue;
    for (long long n = 2; n <= 16; ++n)
      for (long long q : {2, 3, 4, 5, 7, 8, 9, 16, 32})
        for (long long eps : {-1, 1}) {
          Params p{{"n", n}, {"q", q}, {"eps", eps}};
          if (rec.check && rec.check(p)) continue;
          long long r = rec.prime_of(p);
          BigRational v = rec.eval(p);
          CAPTURE(rec.id);
          CAPTURE(n);
          CAPTURE(q);
          CHECK(is_prime(static_cast<std::uint64_t>(r)));
          CHECK(v <= 1);
          CHECK(v > (rec.table == "class" ? R(1, r + 1) : R(1, r)));
          ++evaluated;
        }
  }
  CHECK(evaluated > 100);
}

TEST_CASE("dual expressions agree") {
  for (long long n = 6; n <= 20; n += 2) {
    CHECK(row("tab:class/Sp/Oeps/b1", {{"n", n}, {"q", 2}, {"eps", -1}}) ==
          row("tab:subb2/Sp/Ominus/b1", {{"n", n}, {"q", 2}}));
    if (n < 8) continue;
    CHECK(row("tab:class/POmega/P1/b1", {{"n", n}, {"q", 2}, {"eps", -1}}) ==
          row("tab:subb2/Ominus/P1/b1", {{"n", n}, {"q", 2}, {"eps", -1}}));
    CHECK(row("tab:class/POmega/N1/b1", {{"n", n}, {"q", 2}, {"eps", 1}}) ==
          row("tab:subb2/Oplus/N1/b1", {{"n", n}, {"q", 2}, {"eps", 1}}));
  }
  for (long long q : {8, 32, 128})
    CHECK(row("tab:class/L/P1/omega", {{"n", 2}, {"q", q}}) == row("tab:subb2/L2/P1/torus", {{"n", 2}, {"q", q}}));
  CHECK(row("tab:class/L/P1/omega", {{"n", 2}, {"q", 8}}) == fpr_psl2_borel(8, Psl2Element::Torus));
  CHECK(row("tab:class/L/P1/phi", {{"n", 2}, {"q", 8}}) == fpr_psl2_borel(8, Psl2Element::FieldAut, 3));
}

TEST_CASE("table rows agree with element-level fixed point counts") {
  struct Case {
    const char* id;
    GroupSpec g;
    const char* action;
    ElementSpec e;
  };
  const std::vector<Case> cases = {
      {"tab:class/L/P1/transvection", G(Family::Linear, 3, 2), "P1", ElementSpec::transvection(3, 2)},
      {"tab:class/L/P1/transvection", G(Family::Linear, 4, 2), "P1", ElementSpec::transvection(4, 2)},
      {"tab:class/L/P1/transvection", G(Family::Linear, 3, 3), "P1", ElementSpec::transvection(3, 3)},
      {"tab:class/L/P1/transvection", G(Family::Linear, 3, 5), "P1", ElementSpec::transvection(3, 5)},
      {"tab:class/L/P1/omega", G(Family::Linear, 3, 3), "P1", ElementSpec::scalar_on(3, 1, 2)},
      {"tab:class/L/P1/omega", G(Family::Linear, 3, 4), "P1", ElementSpec::scalar_on(3, 1, 3)},
      {"tab:class/L/P1/omega", G(Family::Linear, 2, 8), "P1", ElementSpec::scalar_on(2, 1, 7)},
      {"tab:class/L/P1/phi", G(Family::Linear, 2, 8), "P1", ElementSpec::outer_element("field_aut", 3)},
      {"tab:class/U/P1/omega", G(Family::Unitary, 5, 2), "P1", ElementSpec::scalar_on(5, 1, 3)},
      {"tab:class/U/P2/tau", G(Family::Unitary, 4, 2), "P2", ElementSpec::outer_element("graph_aut", 2)},
      {"tab:class/U/P2/tau", G(Family::Unitary, 4, 3), "P2", ElementSpec::outer_element("graph_aut", 2)},
      {"tab:class/U/P2/omegaI2", G(Family::Unitary, 4, 2), "P2", ElementSpec::scalar_on(4, 2, 3)},
      {"tab:class/U/N1/omega", G(Family::Unitary, 4, 2), "N1", ElementSpec::scalar_on(4, 1, 3)},
      {"tab:class/U/N1/omega", G(Family::Unitary, 6, 2), "N1", ElementSpec::scalar_on(6, 1, 3)},
      {"tab:class/Sp/P1/transvection", G(Family::Symplectic, 6, 2), "P1", ElementSpec::transvection(6, 2)},
      {"tab:class/Sp/P1/transvection", G(Family::Symplectic, 4, 3), "P1", ElementSpec::transvection(4, 3)},
      {"tab:class/Sp/Oeps/b1", G(Family::Symplectic, 6, 2, -1), "Oeps:-", ElementSpec::transvection(6, 2)},
      {"tab:class/Sp/Oeps/b1", G(Family::Symplectic, 6, 2, 1), "Oeps:+", ElementSpec::transvection(6, 2)},
      {"tab:class/Sp/Oeps/b1", G(Family::Symplectic, 8, 2, -1), "Oeps:-", ElementSpec::transvection(8, 2)},
      {"tab:class/Sp/Ominus/Lambda", G(Family::Symplectic, 6, 2), "Oeps:-", ElementSpec::irreducible(6, 2, 3)},
      {"tab:class/Sp/Ominus/Lambda", G(Family::Symplectic, 8, 2), "Oeps:-", ElementSpec::irreducible(8, 2, 3)},
      {"tab:class/O/P1/refl+", G(Family::OrthogonalOdd, 7, 3), "P1", with_type(ElementSpec::neg_reflection(7), 1)},
      {"tab:class/O/N1-/refl-", G(Family::OrthogonalOdd, 7, 3), "N1:-",
       with_type(ElementSpec::neg_reflection(7), -1)},
      {"tab:class/POmega/P1/b1", G(Family::OrthogonalEven, 8, 2, 1), "P1", b_involution(8)},
      {"tab:class/POmega/P1/b1", G(Family::OrthogonalEven, 8, 2, -1), "P1", b_involution(8)},
      {"tab:class/POmega/P1/refl", G(Family::OrthogonalEven, 8, 3, -1), "P1",
       with_disc(ElementSpec::neg_reflection(8), "square")},
      {"tab:class/POmega/P1/refl", G(Family::OrthogonalEven, 8, 3, -1), "P1",
       with_disc(ElementSpec::neg_reflection(8), "nonsquare")},
      {"tab:class/POmega/P1/Lambda", G(Family::OrthogonalEven, 8, 2, -1), "P1", ElementSpec::irreducible(8, 2, 3)},
      {"tab:class/POmega/N1/refl-nsq", G(Family::OrthogonalEven, 8, 3, 1), "N1",
       with_disc(ElementSpec::neg_reflection(8), "nonsquare")},
      {"tab:class/POmega/N1/refl-sq", G(Family::OrthogonalEven, 8, 3, -1), "N1",
       with_disc(ElementSpec::neg_reflection(8), "square")},
      {"tab:class/POmega/N1/b1", G(Family::OrthogonalEven, 8, 2, 1), "N1ns", b_involution(8)},
      {"tab:class/POmega/N1/b1", G(Family::OrthogonalEven, 8, 2, -1), "N1ns", b_involution(8)},
      {"tab:class/POmega/N1/Lambda", G(Family::OrthogonalEven, 8, 2, 1), "N1ns", ElementSpec::irreducible(8, 2, 3)},
      {"tab:subb2/Sp/Ominus/b1", G(Family::Symplectic, 6, 2), "Oeps:-", ElementSpec::transvection(6, 2)},
      {"tab:subb2/Ominus/P1/b1", G(Family::OrthogonalEven, 8, 2, -1), "P1", b_involution(8)},
      {"tab:subb2/Oplus/N1/b1", G(Family::OrthogonalEven, 8, 2, 1), "N1ns", b_involution(8)},
  };
  for (const auto& c : cases) {
    CAPTURE(c.id);
    CAPTURE(c.g.label());
    Params p{{"n", c.g.n}, {"q", c.g.q}};
    ActionSpec a = ActionSpec::parse(c.action);
    GroupSpec g = c.g;
    if (a.kind == ActionKind::OEpsilon) {
      p.set("eps", a.eta);
      g.eps = 0;
    } else if (g.eps) {
      p.set("eps", g.eps);
    }
    auto count = element_fixed_points(g, a, c.e);
    CHECK(count.fpr() == row(c.id, p));
  }
}

TEST_CASE("formula list and dispatcher") {
  auto list = formula_list();
  CHECK(list.size() >= 36 + 8);
  for (const auto& f : list) {
    CHECK(!f.anchor.empty());
    CHECK(f.anchor.find("Theorem") == std::string::npos);
    CHECK(f.anchor.find("Prop") == std::string::npos);
  }
  CHECK(evaluate_formula("subset-rcycle", {{"n", 7}, {"l", 3}, {"r", 5}}).value == 0);
  CHECK(evaluate_formula("partition-transposition", {{"n", 6}}).value == R(2, 5));
  CHECK(evaluate_formula("tab:class/Sp/Oeps/b1", {{"n", 6}, {"q", 2}, {"eps", -1}}).value == R(4, 7));
  CHECK(evaluate_formula("psl2-borel", {{"q", 8}, {"kind", 2}, {"r", 3}}).value == R(1, 3));
  CHECK(evaluate_formula("product", {{"num", 2}, {"den", 9}}).value == R(2, 9));
  CHECK_THROWS_AS(evaluate_formula("nope", {}), UnknownFormula);
  CHECK_THROWS_AS(evaluate_formula("tab:class/Sp/Oeps/b1", {{"n", 6}}), BadSpec);
  auto res = evaluate_formula("affine", {{"p", 3}, {"d", 2}, {"e", 1}});
  CHECK(res.to_json()["value"] == "1/3");
}
