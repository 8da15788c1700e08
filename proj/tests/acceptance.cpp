// Acceptance run: one PASS/FAIL line per criterion, exit status 0 iff all pass.

#include <chrono>
#include <functional>
#include <iomanip>
#include <iostream>

#include "fpr/formulas.hpp"
#include "fpr/harness.hpp"

using namespace fpr;

namespace {

struct Check {
  bool ok = true;
  std::string why;

  void require(bool cond, const std::string& what) {
    if (!cond && ok) {
      ok = false;
      why = what;
    }
  }
};

Report expect_case(Check& ck, const std::string& id, const std::string& value = "") {
  Report r = run_case(find_case(id));
  ck.require(r.passed(), id + ": " + r.status + " " + r.computed + " vs " + r.expected + " " + r.detail);
  if (!value.empty()) ck.require(r.computed == value, id + " computed " + r.computed + ", want " + value);
  return r;
}

void expect_cases(Check& ck, const std::function<bool(const VerificationCase&)>& pick, std::size_t at_least,
                  std::size_t& count) {
  std::map<std::string, BuiltGroup> built;
  for (const auto& c : catalog()) {
    if (!pick(c)) continue;
    ++count;
    if (!c.group.empty() && !built.count(c.group)) built.emplace(c.group, build_group(c.group));
    Report r = run_case(c, c.group.empty() ? nullptr : &built.at(c.group));
    ck.require(r.passed(), c.id + ": " + r.computed + " vs " + r.expected + " " + r.detail);
  }
  ck.require(count >= at_least, "only " + std::to_string(count) + " cases");
}

bool starts(const std::string& s, const std::string& p) { return s.rfind(p, 0) == 0; }
bool ends(const std::string& s, const std::string& p) {
  return s.size() >= p.size() && s.compare(s.size() - p.size(), p.size(), p) == 0;
}

// Every prime-order class of a closed group: fpr <= 1/(r+1) unless allowed(r, fpr).
void bound_scan(Check& ck, const std::string& gid, const std::string& action,
                const std::function<bool(std::uint64_t, const BigRational&)>& allowed) {
  auto b = build_group(gid);
  const std::size_t m = b.acted(action).degree();
  for (const auto& p : b.profile(action)) {
    if (!is_prime(p.order)) continue;
    BigRational f(p.fixed, m);
    if (f > BigRational(1, static_cast<long long>(p.order) + 1) && !allowed(p.order, f))
      ck.require(false, gid + ": class of order " + std::to_string(p.order) + " has fpr " + f.str());
  }
}

}  // namespace

int main() {
  struct Criterion {
    int n;
    std::string title;
    double limit_s;
    std::function<void(Check&)> body;
  };
  std::vector<Criterion> all = {
      {1, "A6 special cases: 1/2, 2/3, 1/2, 7/15, 2/5", 5,
       [](Check& ck) {
         expect_case(ck, "tab:a6/A6/A5prim/32", "1/2");
         expect_case(ck, "tab:a6/S6/S5prim/23", "2/3");
         expect_case(ck, "tab:a6/S6/S5prim/32", "1/2");
         expect_case(ck, "tab:a6/S6/S2wrS3/2", "7/15");
         expect_case(ck, "tab:a6/A6.2^2/S3wrS2.2/2", "2/5");
       }},
      {2, "transposition on bisections, n = 6, 8, 10", 30,
       [](Check& ck) {
         for (long long n : {6, 8, 10}) {
           auto r = expect_case(ck, "s" + std::to_string(n) + "/partitions/transposition");
           BigRational closed = BigRational(1, 3) + BigRational(n - 4, 6 * (n - 1));
           ck.require(r.computed == closed.str(), "n = " + std::to_string(n) + ": " + r.computed);
         }
       }},
      {3, "M22:2 on 22 points: order 887040, 8-point involutions (4/11), mu = 14", 60,
       [](Check& ck) {
         expect_case(ck, "m22.2/catalog:L3(4).2_2/degree", "degree=22 order=887040");
         expect_case(ck, "m22.2/2B", "4/11");
         expect_case(ck, "m22.2/catalog:L3(4).2_2/mindeg", "14");
       }},
      {4, "classical cross-checks: 3/7, 7/15, 4/7 three ways, 13/40, 5/9", 120,
       [](Check& ck) {
         expect_case(ck, "l3q2/P1/transvection", "3/7");
         expect_case(ck, "l4q2/P1/transvection", "7/15");
         auto brute = expect_case(ck, "sp6/Ominus/b1", "4/7");
         expect_case(ck, "sp6/Ominus/b1/dual", "4/7");
         ck.require(brute.degree == 28, "O6-(2) cosets: degree " + std::to_string(brute.degree));
         auto t5 = evaluate_formula("tab:class/Sp/Oeps/b1", {{"n", 6}, {"q", 2}, {"eps", -1}}).value;
         auto t1 = evaluate_formula("tab:subb2/Sp/Ominus/b1", {{"n", 6}, {"q", 2}}).value;
         ck.require(t5 == t1 && t1.str() == brute.computed, "three-way disagreement");
         expect_case(ck, "u42/N1/omega", "13/40");
         expect_case(ck, "u42.2/P2/tau", "5/9");
       }},
      {5, "r-cycles on l-subsets, n <= 9, all l and primes r <= n", 60,
       [](Check& ck) {
         std::size_t want = 0, count = 0;
         for (unsigned n = 5; n <= 9; ++n)
           for (unsigned l = 1; 2 * l < n; ++l)
             for (unsigned r = 2; r <= n; ++r) want += is_prime(r);
         expect_cases(ck, [](const VerificationCase& c) { return c.formula_id == "subset-rcycle"; }, want, count);
       }},
      {6, "affine 3^2:GL2(3): transvection 1/3, other prime classes <= 1/(r+1)", 5,
       [](Check& ck) {
         expect_case(ck, "affine/3^2:GL23/transvection", "1/3");
         bound_scan(ck, "affine/3^2:GL23", "natural",
                    [](std::uint64_t r, const BigRational& f) { return r == 3 && f == BigRational(1, 3); });
       }},
      {7, "diagonal A5, k = 2: max 4/15 at r = 2, inner involution 1/15, bound holds", 10,
       [](Check& ck) {
         expect_case(ck, "diag/A5/k2/max-r2", "4/15");
         expect_case(ck, "diag/A5/k2/R2-inner-involution", "1/15");
         expect_case(ck, "diag/A5/k2/R1-identity-alpha", "4/15");
         bound_scan(ck, "diag/A5/k2", "natural", [](std::uint64_t, const BigRational&) { return false; });
       }},
      {8, "S5 wr S2 on 25 points: (x,1) keeps fpr(x), factor-permuting classes bounded", 10,
       [](Check& ck) {
         expect_case(ck, "product/S5wrS2/x1-transposition", "3/5");
         expect_case(ck, "product/S5wrS2/x1-3cycle", "2/5");
         expect_case(ck, "product/S5wrS2/pi-bound");
       }},
      {9, "minimal index: subset actions, L2(8):3 = 4 with witnesses 2 and 3, Table values 6", 120,
       [](Check& ck) {
         std::size_t count = 0;
         expect_cases(
             ck,
             [](const VerificationCase& c) {
               return c.mode == CaseMode::MinIndex && (c.group[0] == 's' || c.group[0] == 'a') &&
                      c.action.find("subsets") != std::string::npos;
             },
             28, count);
         auto l = expect_case(ck, "l2q8:3/P1/minindex", "4");
         ck.require(l.detail.find("witness orders {2,3}") != std::string::npos, l.detail);
         expect_case(ck, "u42.2/P2/minindex", "6");
         expect_case(ck, "sp6/Oeps:-/minindex", "6");
         for (const auto& r : run_suite("minindex").reports) {
           ck.require(r.passed(), r.case_id + ": " + r.detail);
           ck.require(r.detail.find("composite") == std::string::npos, r.case_id + ": " + r.detail);
         }
       }},
      {10, "odd-order affine groups: brute Ind within the bounds", 30,
       [](Check& ck) {
         std::size_t count = 0;
         expect_cases(
             ck,
             [](const VerificationCase& c) {
               return c.mode == CaseMode::MinIndex && starts(c.group, "affine/") &&
                      catalog_group(c.group).order % 2 == 1;
             },
             3, count);
       }},
      {11, "exception scans equal exceptions_for on every closable group", 300,
       [](Check& ck) {
         std::size_t count = 0, closable_pairs = 0;
         for (const auto& g : catalog_groups())
           if (g.closable) closable_pairs += g.actions.size();
         expect_cases(ck, [](const VerificationCase& c) { return c.mode == CaseMode::ExceptionScan; }, closable_pairs,
                      count);
       }},
      {12, "Burnside and fpr-identity on the full catalog", 120,
       [](Check& ck) {
         auto res = run_suite("burnside");
         for (const auto& r : res.reports)
           ck.require(r.passed(), r.case_id + ": " + r.computed + " vs " + r.expected + " " + r.detail);
         std::size_t both = 0;
         for (const auto& r : res.reports) both += ends(r.case_id, "/burnside") || ends(r.case_id, "/fpr-identity");
         ck.require(both >= 100, "too few invariant cases");
       }},
  };

  bool all_ok = true;
  for (const auto& c : all) {
    Check ck;
    const auto t0 = std::chrono::steady_clock::now();
    try {
      c.body(ck);
    } catch (const std::exception& e) {
      ck.require(false, std::string("exception: ") + e.what());
    }
    const double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    ck.require(s < c.limit_s, "took " + std::to_string(s) + " s");
    all_ok = all_ok && ck.ok;
    std::cout << (ck.ok ? "PASS" : "FAIL") << "  criterion " << std::setw(2) << c.n << "  " << c.title << "  ("
              << std::fixed << std::setprecision(2) << s << " s, limit " << std::setprecision(0) << c.limit_s << " s)";
    if (!ck.ok) std::cout << "  -- " << ck.why;
    std::cout << std::endl;
  }
  return all_ok ? 0 : 1;
}
