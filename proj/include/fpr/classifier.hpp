#pragma once

#include <string>
#include <utility>
#include <vector>

#include "fpr/exact_math.hpp"
#include "fpr/model.hpp"

namespace fpr {

// The spec lies outside the families the classification is encoded for.
class UnknownFamily : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class OddOrder : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

enum class Bound { Main, Sqrt, OneOverR };

std::string to_string(Bound b);
Bound bound_from_string(const std::string& s);

// Main: 1/(r+1); OneOverR: 1/r; Sqrt: 1/(r+1), compared against fpr^2.
BigRational threshold(long long r, Bound b);
bool within_bound(const BigRational& fpr, long long r, Bound b);

struct ExceptionHit {
  const ExceptionRecord* record = nullptr;
  Params params;
  BigRational fpr;
  std::vector<std::string> via;  // component record ids for product-type hits

  Json to_json() const;
};

struct Canonical {
  GroupSpec group;
  ActionSpec action;
  std::string note;  // empty when nothing was rewritten
};

// Rewrites the small exceptional isomorphisms to one representative.
Canonical canonicalize(const GroupSpec& g, const ActionSpec& a);

// Whether G (socle plus the named extension) contains the element named by token.
bool group_contains(const GroupSpec& g, const std::string& token);

std::vector<ExceptionHit> exceptions_for(const GroupSpec& g, const ActionSpec& a, long long r,
                                         Bound b = Bound::Main);

struct ClassificationReport {
  GroupSpec group;
  ActionSpec action;
  long long prime = 0;
  Bound bound = Bound::Main;
  BigRational threshold;
  std::vector<ExceptionHit> exceptions;
  std::vector<std::string> notes;

  bool no_exception() const { return exceptions.empty(); }
  Json to_json() const;
};

ClassificationReport classify(const GroupSpec& g, const ActionSpec& a, long long r, Bound b = Bound::Main);

struct DegreeResult {
  enum class Kind { Exact, ThresholdOnly };
  Kind kind = Kind::ThresholdOnly;
  BigRational value;  // mu(G), or the lower bound 2m/3
  BigInt degree;
  std::string source;

  Json to_json() const;
};

DegreeResult minimal_degree_formula(const GroupSpec& g, const ActionSpec& a);

BigInt minimal_index_subset(long long n, long long l, bool alt);

struct IndexResult {
  enum class Kind { Exact, RangeOnly };
  Kind kind = Kind::RangeOnly;
  BigRational value;         // exact Ind(G) when known
  BigRational lower, upper;  // m/4 and m/2 for RangeOnly
  BigInt degree;
  std::string source;
  std::vector<std::string> notes;

  Json to_json() const;
};

IndexResult minimal_index_formula(const GroupSpec& g, const ActionSpec& a);

// m(1 - (1/|x|) sum of fpr(y) over y in <x>).
BigRational ind_from_fpr_profile(const BigInt& m, unsigned order, const std::vector<BigRational>& fpr_of_powers);

std::pair<BigRational, BigRational> odd_order_index_bounds(long long p, long long d, long long r, const BigInt& m);

}  // namespace fpr
