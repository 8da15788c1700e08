#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <array>
#include <random>

#include "fpr/perm.hpp"

using namespace fpr;

namespace {

Permutation cyc(const std::string& s, std::size_t m) { return Permutation::from_cycles(s, m); }

PermGroup symmetric(std::size_t n) {
  std::vector<Permutation> g{cyc("(0 1)", n)};
  std::string c = "(";
  for (std::size_t i = 0; i < n; ++i) c += (i ? " " : "") + std::to_string(i);
  g.push_back(cyc(c + ")", n));
  return PermGroup(n, g, "S" + std::to_string(n));
}

PermGroup alternating5() { return PermGroup(5, {cyc("(0 1 2)", 5), cyc("(0 1 2 3 4)", 5)}, "A5"); }

// GF(8) = GF(2)[a]/(a^3+a+1), elements as bit masks.
unsigned gf8_mul(unsigned x, unsigned y) {
  unsigned r = 0;
  for (int i = 0; i < 3; ++i)
    if (y & (1u << i)) r ^= x << i;
  for (int i = 4; i >= 3; --i)
    if (r & (1u << i)) r ^= 0b1011u << (i - 3);
  return r;
}

unsigned gf8_inv(unsigned x) {
  for (unsigned y = 1; y < 8; ++y)
    if (gf8_mul(x, y) == 1) return y;
  return 0;
}

// Projective line: points 0..7 are field elements, 8 is infinity.
PermGroup l2_8(bool with_frobenius) {
  std::vector<Point> t(9), m(9), inv(9), fr(9);
  for (unsigned x = 0; x < 8; ++x) {
    t[x] = x ^ 1u;
    m[x] = gf8_mul(x, 2);
    inv[x] = x == 0 ? 8 : gf8_inv(x);
    fr[x] = gf8_mul(x, x);
  }
  t[8] = m[8] = fr[8] = 8;
  inv[8] = 0;
  std::vector<Permutation> g{Permutation(t), Permutation(m), Permutation(inv)};
  if (with_frobenius) g.push_back(Permutation(fr));
  return PermGroup(9, g, with_frobenius ? "L2(8):3" : "L2(8)");
}

// GL_3(2) on the 7 nonzero vectors of GF(2)^3 (vector v is point v-1).
PermGroup l3_2() {
  auto mat = [](std::array<unsigned, 3> rows) {
    std::vector<Point> img(7);
    for (unsigned v = 1; v < 8; ++v) {
      unsigned w = 0;
      for (int i = 0; i < 3; ++i)
        if (v & (1u << i)) w ^= rows[i];
      img[v - 1] = w - 1;
    }
    return Permutation(img);
  };
  return PermGroup(7, {mat({0b011, 0b010, 0b100}), mat({0b010, 0b100, 0b001})}, "L3(2)");
}

// Sp_6(2) on the 63 nonzero vectors, generated by symplectic transvections.
// Coordinates (e1,f1,e2,f2,e3,f3) as bits 0..5.
PermGroup sp6_2() {
  auto form = [](unsigned u, unsigned v) {
    unsigned r = 0;
    for (int i = 0; i < 3; ++i) {
      unsigned ue = (u >> (2 * i)) & 1, uf = (u >> (2 * i + 1)) & 1;
      unsigned ve = (v >> (2 * i)) & 1, vf = (v >> (2 * i + 1)) & 1;
      r ^= (ue & vf) ^ (uf & ve);
    }
    return r;
  };
  auto transvection = [&](unsigned w) {
    std::vector<Point> img(63);
    for (unsigned v = 1; v < 64; ++v) img[v - 1] = (form(v, w) ? v ^ w : v) - 1;
    return Permutation(img);
  };
  std::vector<Permutation> gens;
  for (unsigned w : {0b000001u, 0b000010u, 0b000101u, 0b000100u, 0b001000u, 0b010100u, 0b010000u, 0b100000u})
    gens.push_back(transvection(w));
  return PermGroup(63, gens, "Sp6(2)");
}

}  // namespace

TEST_CASE("basic permutation operations") {
  auto a = cyc("(0 1 2)", 3);
  CHECK(compose(Permutation::identity(3), a) == a);
  CHECK(inverse(a) == cyc("(0 2 1)", 3));
  CHECK(element_order(cyc("(0 1)(2 3 4)", 5)) == 6);
  CHECK(small_order(cyc("(0 1)(2 3 4)", 5)) == 6);
  CHECK(compose(cyc("(0 1)", 3), cyc("(1 2)", 3)) == cyc("(0 2 1)", 3));
  CHECK_THROWS_AS(compose(a, Permutation::identity(4)), DegreeMismatch);
  CHECK(cyc("(0 1)(2 3 4)", 6).cycles() == "(0 1)(2 3 4)");
  CHECK(Permutation::identity(4).cycles() == "()");
  CHECK_THROWS(cyc("(0 1)(1 2)", 3));
  CHECK_THROWS(cyc("(0 5)", 3));
  CHECK_THROWS(Permutation(std::vector<Point>{0, 0}));
  CHECK(power(a, 2) == inverse(a));
  CHECK(power(a, -1) == inverse(a));
}

TEST_CASE("fixed points and orbits of single elements") {
  auto id = Permutation::identity(6);
  CHECK(fixed_point_count(id) == 6);
  CHECK(orbit_count(id) == 6);
  auto five = cyc("(0 1 2 3 4)", 5);
  CHECK(fixed_point_count(five) == 0);
  CHECK(orbit_count(five) == 1);
  auto t = cyc("(0 1)", 4);
  CHECK(fixed_point_count(t) == 2);
  CHECK(orbit_count(t) == 3);
  CHECK(brute_index(t) == 1);
  CHECK(cycle_type(cyc("(0 1)(2 3 4)", 6)) == std::vector<std::size_t>{3, 2, 1});
}

TEST_CASE("vector fixed-point kernel matches scalar reference") {
  std::mt19937_64 rng(7);
  for (std::size_t n : {1u, 7u, 15u, 16u, 17u, 31u, 63u, 64u, 100u, 1000u, 4097u}) {
    for (int trial = 0; trial < 20; ++trial) {
      std::vector<std::uint32_t> img(n);
      for (std::size_t j = 0; j < n; ++j) img[j] = static_cast<std::uint32_t>(j);
      std::shuffle(img.begin(), img.end(), rng);
      for (std::size_t j = 0; j < n; ++j)
        if (rng() % 3 == 0) img[j] = static_cast<std::uint32_t>(j);
      std::vector<std::uint16_t> img16(img.begin(), img.end());
      CHECK(count_fixed_u32(img.data(), n) == count_fixed_u32_scalar(img.data(), n));
      CHECK(count_fixed_u16(img16.data(), n) == count_fixed_u16_scalar(img16.data(), n));
    }
  }
}

TEST_CASE("closure") {
  auto s5 = symmetric(5);
  CHECK(s5.close().size() == 120);
  PermGroup c3(3, {cyc("(0 1 2)", 3)});
  CHECK(c3.close().size() == 3);
  CHECK_THROWS_AS(symmetric(6).close(100), CapExceeded);
  // Deterministic order: identity first, then generators.
  CHECK(s5.elements().at(0).is_identity());
  CHECK(s5.elements().at(1) == cyc("(0 1)", 5));
  CHECK_THROWS(PermGroup(3, {}));
  CHECK_THROWS_AS(PermGroup(3, {cyc("(0 1)", 4)}), DegreeMismatch);
}

TEST_CASE("Sp6(2) on 63 points") {
  auto g = sp6_2();
  CHECK(g.close().size() == 1451520);
  CHECK(is_transitive(g));
  auto h = point_stabilizer(g, 0);
  CHECK(h.elements().size() == 23040);
  CHECK(brute_minimal_degree(g) == 32);
  auto mi = brute_min_index(g);
  CHECK(mi.value == 16);
  for (auto o : mi.witness_orders) CHECK(is_prime(o));
}

TEST_CASE("orbits and stabilizers") {
  auto s5 = symmetric(5);
  CHECK(is_transitive(s5));
  CHECK(point_stabilizer(s5, 0).elements().size() == 24);
  PermGroup g(3, {cyc("(0 1)", 3)});
  auto o = orbits(g);
  REQUIRE(o.size() == 2);
  CHECK(o[0] == std::vector<Point>{0, 1});
  CHECK(o[1] == std::vector<Point>{2});
  CHECK_FALSE(is_transitive(g));
}

TEST_CASE("conjugacy classes") {
  auto s4 = symmetric(4);
  auto cp = conjugacy_classes(s4);
  std::vector<std::size_t> sizes;
  for (const auto& c : cp.classes) sizes.push_back(c.size);
  std::sort(sizes.begin(), sizes.end());
  CHECK(sizes == std::vector<std::size_t>{1, 3, 6, 6, 8});
  PermGroup c3(3, {cyc("(0 1 2)", 3)});
  CHECK(conjugacy_classes(c3).classes.size() == 3);
  CHECK(conjugacy_classes(alternating5()).classes.size() == 5);
  auto g = sp6_2();
  auto sp = conjugacy_classes(g);
  CHECK(sp.classes.size() == 30);
  std::size_t total = 0;
  for (const auto& c : sp.classes) total += c.size;
  CHECK(total == 1451520);
}

TEST_CASE("brute fpr") {
  auto s6 = symmetric(6);
  s6.close();
  auto pairs = SetFamilyAction::subsets(6, 2);
  CHECK(pairs->degree() == 15);
  auto t = pairs->apply(cyc("(0 1)", 6));
  PermGroup s6_pairs(15, {pairs->apply(s6.generators()[0]), pairs->apply(s6.generators()[1])});
  CHECK(brute_fpr(s6_pairs, t) == BigRational(7, 15));
  CHECK(brute_fpr(s6_pairs, Permutation::identity(15)) == 1);
  auto l = l2_8(false);
  CHECK(l.close().size() == 504);
  bool found = false;
  for (std::size_t i = 0; i < l.elements().size() && !found; ++i) {
    auto x = l.elements().at(i);
    if (small_order(x) == 7) {
      CHECK(brute_fpr(l, x) == BigRational(2, 9));
      found = true;
    }
  }
  CHECK(found);
  PermGroup intrans(3, {cyc("(0 1)", 3)});
  CHECK_THROWS(brute_fpr(intrans, cyc("(0 1)", 3)));
  CHECK_THROWS_AS(brute_fpr(s6, Permutation::identity(5)), DegreeMismatch);
}

TEST_CASE("fpr through class intersections") {
  auto s4 = symmetric(4);
  s4.close();
  auto h = point_stabilizer(s4, 0);
  CHECK(brute_fpr_via_classes(s4, h, cyc("(0 1)", 4)) == BigRational(1, 2));
  CHECK(brute_fpr_via_classes(s4, h, Permutation::identity(4)) == 1);
  auto l = l3_2();
  CHECK(l.close().size() == 168);
  auto hl = point_stabilizer(l, 0);
  // A transvection: an involution fixing 3 of the 7 points.
  for (std::size_t i = 0; i < l.elements().size(); ++i) {
    auto x = l.elements().at(i);
    if (small_order(x) == 2) {
      CHECK(brute_fpr_via_classes(l, hl, x) == BigRational(3, 7));
      CHECK(brute_fpr(l, x) == BigRational(3, 7));
      break;
    }
  }
  PermGroup not_sub(4, {cyc("(0 1)", 4)});
  CHECK_THROWS(brute_fpr_via_classes(alternating5(), PermGroup(5, {cyc("(0 1)", 5)}), cyc("(0 1 2)", 5)));
}

TEST_CASE("class intersections agree with the coset action") {
  for (auto g : {symmetric(5), alternating5(), l3_2(), l2_8(true)}) {
    g.close();
    auto h = point_stabilizer(g, 0);
    auto coset = std::make_shared<CosetAction>(g, h);
    CHECK(coset->degree() == g.degree());
    ActedGroup acted{g, coset};
    for (const auto& c : class_profile(acted)) {
      BigRational via = brute_fpr_via_classes(g, h, c.rep);
      BigRational direct(BigInt(c.fixed), BigInt(coset->degree()));
      CHECK(via == direct);
      CHECK(brute_fpr(g, c.rep) == direct);
    }
  }
}

TEST_CASE("minimal index and minimal degree") {
  auto a5 = alternating5();
  auto mi = brute_min_index(a5);
  CHECK(mi.value == 2);
  CHECK(mi.witness_orders == std::set<std::uint64_t>{2, 3});
  auto s6 = symmetric(6);
  auto pairs = SetFamilyAction::subsets(6, 2);
  PermGroup s6_pairs(15, {pairs->apply(s6.generators()[0]), pairs->apply(s6.generators()[1])});
  CHECK(brute_min_index(s6_pairs).value == 4);
  PermGroup c2(2, {cyc("(0 1)", 2)});
  CHECK(brute_min_index(c2).value == 1);
  PermGroup trivial(2, {Permutation::identity(2)});
  CHECK_THROWS(brute_min_index(trivial));
  for (std::size_t n = 3; n <= 7; ++n) CHECK(brute_minimal_degree(symmetric(n)) == 2);
}

TEST_CASE("maximal fpr per prime") {
  auto s6 = symmetric(6);
  auto bis = PartitionAction::uniform(6, 3);
  CHECK(bis->degree() == 10);
  PermGroup s6_bis(10, {bis->apply(s6.generators()[0]), bis->apply(s6.generators()[1])});
  auto m = brute_max_fpr_by_prime(s6_bis);
  CHECK(m.at(2).value == BigRational(2, 5));
  CHECK(brute_max_fpr_by_prime(alternating5()).at(5).value == 0);
  auto l = l2_8(true);
  CHECK(l.close().size() == 1512);
  auto ml = brute_max_fpr_by_prime(l);
  CHECK(ml.at(3).value == BigRational(1, 3));
  CHECK(ml.at(2).value == BigRational(1, 9));
  CHECK(ml.at(7).value == BigRational(2, 9));
  CHECK(small_order(ml.at(3).witness) == 3);
}

TEST_CASE("group invariants") {
  std::mt19937_64 rng(11);
  for (auto g : {symmetric(5), alternating5(), l3_2(), l2_8(true), symmetric(7)}) {
    const auto& el = g.close();
    std::size_t burnside = 0;
    for (std::size_t i = 0; i < el.size(); ++i) burnside += count_fixed_u16(el.row(i), el.degree());
    CHECK(burnside == el.size());
    for (int k = 0; k < 100; ++k) {
      auto x = el.at(rng() % el.size()), y = el.at(rng() % el.size());
      CHECK(fixed_point_count(conjugate(x, y)) == fixed_point_count(x));
    }
    BigInt fact = 1;
    for (std::size_t i = 2; i <= g.degree(); ++i) fact *= i;
    CHECK(fact % g.order() == 0);
    for (auto o : brute_min_index(g).witness_orders) CHECK(is_prime(o));
  }
}

TEST_CASE("derived actions") {
  auto s4 = symmetric(4);
  s4.close();
  auto sub = SetFamilyAction::subsets(4, 2);
  ActedGroup acted{s4, sub};
  CHECK(acted.degree() == 6);
  auto stab = acted_stabilizer(acted, 0);
  CHECK(stab.elements().size() == 4);
  // S3 wr S2 in product action on 9 points.
  auto s3 = symmetric(3);
  auto wg = wreath_generators(s3.generators(), 3, 2);
  PermGroup w(6, wg, "S3wrS2");
  CHECK(w.close().size() == 72);
  auto prod = std::make_shared<ProductAction>(3, 2);
  std::vector<Permutation> pg;
  for (const auto& x : wg) pg.push_back(prod->apply(x));
  PermGroup wp(9, pg);
  CHECK(is_transitive(wp));
  CHECK(wp.close().size() == 72);
  // Bisection count and synthemes.
  CHECK(PartitionAction::uniform(8, 4)->degree() == 35);
  CHECK(PartitionAction::uniform(6, 2)->degree() == 15);
  CHECK(generating_subset(s4.elements()).size() <= 4);
}
