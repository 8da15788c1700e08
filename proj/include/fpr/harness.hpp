#pragma once

#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "fpr/exact_math.hpp"
#include "fpr/gf.hpp"
#include "fpr/model.hpp"
#include "fpr/perm.hpp"

namespace fpr {

enum class CaseMode {
  ElementFpr,     // fpr of one element against an exact value
  ElementBound,   // fpr of one element against an upper bound
  ClassScan,      // max fpr over the classes of one prime order
  ExceptionScan,  // per-prime set of values above 1/(r+1) against exceptions_for
  MinIndex,
  MinDegree,
  DegreeOnly,  // degree of the action and order of the group
  Burnside,    // sum over classes of |x^G| fix(x) = |G| * (number of orbits)
  FprIdentity, // fix(x)/m = |x^G cap H| / |x^G| for every class
  PiBound      // product type: prime-order elements permuting the factors
};

std::string to_string(CaseMode m);

struct VerificationCase {
  std::string id;
  std::vector<std::string> suites;
  CaseMode mode = CaseMode::ElementFpr;

  // Built construction: a catalog group id and one of its action labels.
  std::string group;
  std::string action;
  // Element: "cycles:(0 1)" on the base points, "named:<key>", "class:o<order>f<fixed>", or espec.
  std::string element;
  std::optional<ElementSpec> espec;

  // Element-level construction without a closed group (classical groups only).
  std::optional<GroupSpec> gspec;

  // Expected side: an explicit value, a formula, or both (then they must agree).
  std::optional<BigRational> value;
  std::string formula_id;
  Params params;
  std::vector<std::uint64_t> witness_orders;  // MinIndex: required orders of minimal-index elements
  std::string provenance = "derived";         // paper | trivial | derived
  bool optional = false;
};

struct Report {
  std::string case_id;
  std::string status;  // pass | fail | infeasible
  std::string computed;
  std::string expected;
  std::string provenance;
  std::string detail;
  std::string group_order;  // empty when the group was not closed
  std::size_t degree = 0;
  double ms = 0;

  bool passed() const { return status == "pass"; }
  Json to_json(bool with_timing = true) const;
};

// A catalog group: a permutation group on base points with named derived actions.
struct CatalogGroup {
  std::string id;
  GroupSpec spec;
  std::vector<std::string> actions;  // ActionSpec labels
  bool closable = true;
  BigInt order;  // expected |G|
  std::string description;
};

const std::vector<CatalogGroup>& catalog_groups();
const CatalogGroup& catalog_group(const std::string& id);

struct BuiltGroup {
  PermGroup base{1, {Permutation::identity(1)}};
  std::map<std::string, std::shared_ptr<const Action>> actions;  // null: the base action
  std::map<std::string, Permutation> named;
  // classical context, for ElementSpec selectors
  std::shared_ptr<const Field> field;
  FormSpec form;
  std::shared_ptr<const PointSet> points;

  std::optional<ClassPartition> classes;
  std::map<std::string, std::vector<ClassProfile>> profiles;

  ActedGroup acted(const std::string& action) const;
  const std::vector<ClassProfile>& profile(const std::string& action);
  Permutation element(const std::string& selector, const std::optional<ElementSpec>& espec,
                      const std::string& action);
};

BuiltGroup build_group(const std::string& id);

// M22:2 on 22 points from the shipped generator file.
PermGroup load_m22_2(const std::string& path = std::string(FPR_DATA_DIR) + "/m22_2.json");

const std::vector<VerificationCase>& catalog();
const VerificationCase& find_case(const std::string& id);  // throws std::out_of_range

Report run_case(const VerificationCase& c);
Report run_case(const VerificationCase& c, BuiltGroup* built);

std::vector<std::string> suite_names();

struct SuiteResult {
  std::string suite;
  std::vector<Report> reports;
  std::map<std::string, std::pair<std::size_t, std::size_t>> per_suite;  // suite -> (passed, total)
  double ms = 0;

  bool all_pass() const;
  Json summary() const;
};

// Reports are ordered by case id; on_report sees them in that order.
SuiteResult run_suite(const std::string& name, unsigned parallelism = 1,
                      const std::function<void(const Report&)>& on_report = {});

}  // namespace fpr
