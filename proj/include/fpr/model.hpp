#pragma once

#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "fpr/exact_math.hpp"

namespace fpr {

using Json = nlohmann::json;

class BadSpec : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

enum class Family {
  SymAlt,
  Linear,
  Unitary,
  Symplectic,
  OrthogonalOdd,
  OrthogonalEven,
  Sporadic,
  Affine,
  Diagonal,
  Product,
  TwistedWreath
};

std::string to_string(Family f);
Family family_from_string(const std::string& s);

struct GroupSpec {
  Family family = Family::SymAlt;
  unsigned n = 0;      // degree / dimension
  unsigned q = 0;      // field order
  int eps = 0;         // Witt type for even orthogonal groups (+1/-1)
  bool alt = false;    // A_n rather than S_n
  unsigned p = 0, d = 0;  // affine V = (C_p)^d
  unsigned k = 0;      // diagonal / product / twisted wreath multiplicity
  std::string name;    // sporadic name, affine H or diagonal T descriptor
  std::shared_ptr<GroupSpec> component;  // product-type component
  std::string component_action;          // action label of the component on Gamma; empty = natural
  std::string extension;  // which group between socle and Aut, e.g. "O", "SO", ".2"

  std::string label() const;
};

enum class ActionKind { Subsets, Partitions, P, PPair, N, N1Nonsingular, OEpsilon, NaturalPoints, Catalog };

struct ActionSpec {
  ActionKind kind = ActionKind::NaturalPoints;
  unsigned m = 0;     // subset size l, or subspace dimension m
  int eta = 0;        // type of N_m (or of the perp for odd m, odd n) / epsilon of O_eps
  std::string name;   // catalog coset action name

  std::string label() const;
  // "subsets:2", "partitions", "P1", "P2", "N1", "N2:+", "N1:-", "N1ns", "Oeps:-", "natural",
  // "catalog:<name>"
  static ActionSpec parse(const std::string& s);
};

struct ElementBlock {
  enum class Kind { Jordan, Scalar, Irreducible, NegIdentity };
  Kind kind = Kind::Jordan;
  unsigned size = 1;   // Jordan block size or irreducible degree i
  unsigned mult = 1;
  unsigned power = 0;  // Scalar: eigenvalue omega^power (0 means eigenvalue 1)
  bool paired = false;  // Irreducible: (Lambda, Lambda^-1) or (Lambda, Lambda^-q) pairs

  unsigned dim() const { return (kind == Kind::Irreducible ? size * (paired ? 2 : 1) : size) * mult; }
};

struct ElementSpec {
  std::vector<ElementBlock> blocks;
  unsigned order = 0;  // prime r
  std::optional<std::string> discriminant;    // "square" | "nonsquare"
  std::optional<int> eigenspace_type;         // +1 | -1
  std::optional<std::string> involution_class;  // "a" | "b" | "c" (characteristic 2)
  std::optional<std::string> outer;           // "field_aut" | "graph_aut"

  unsigned dim() const;
  bool unipotent() const;
  std::string label() const;

  // Frequently used shapes.
  static ElementSpec transvection(unsigned n, unsigned p);                   // (J2, J1^{n-2})
  static ElementSpec scalar_on(unsigned n, unsigned a, unsigned r);          // (omega I_a, I_{n-a})
  static ElementSpec irreducible(unsigned n, unsigned i, unsigned r);       // (Lambda, I_{n-i})
  static ElementSpec neg_reflection(unsigned n);                            // (-I_{n-1}, I_1)
  static ElementSpec outer_element(const std::string& kind, unsigned r);
};

unsigned nu_of_spec(const ElementSpec& spec);

// Violations are returned as data; empty means ok.
std::vector<std::string> validate(const GroupSpec& g);
std::vector<std::string> validate(const ActionSpec& a);
std::vector<std::string> validate(const GroupSpec& g, const ActionSpec& a);
std::vector<std::string> validate(const ElementSpec& e, const GroupSpec& g);

// Named integer parameters (eps stored as +1/-1) for formula evaluation.
class Params {
 public:
  Params() = default;
  Params(std::initializer_list<std::pair<const std::string, long long>> init) : v_(init) {}

  bool has(const std::string& k) const { return v_.count(k) != 0; }
  long long get(const std::string& k) const;
  Params& set(const std::string& k, long long x) {
    v_[k] = x;
    return *this;
  }
  const std::map<std::string, long long>& values() const { return v_; }
  Json to_json() const;

 private:
  std::map<std::string, long long> v_;
};

class ConditionViolated : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// One row of an exception table.
struct ExceptionRecord {
  std::string id;         // formula id, e.g. "tab:class/Sp/Oeps/b1"
  std::string table;      // "class" | "subb2" | "a6" | "main"
  Family family;
  ActionSpec action;
  std::string element;    // element pattern in table notation
  std::string prime;      // prime expression, e.g. "q", "q-1", "2"
  std::string conditions; // side conditions as text
  std::string anchor;     // descriptive location in the source tables
  // Element the row needs in G when it may lie outside the socle ("tau", "phi", "O", "omega", "r", "r+",
  // "r-", "rsq", "rnsq"); empty when the element always lies in the socle.
  std::string requires_element;
  std::function<bool(const GroupSpec&)> group_ok;  // extra match on the group itself; null accepts
  std::function<std::optional<std::string>(const Params&)> check;  // violated condition or nullopt
  std::function<BigRational(const Params&)> value;
  std::function<long long(const Params&)> prime_of;

  // Evaluates with the side conditions enforced.
  BigRational eval(const Params& p) const;
};

Json to_json(const GroupSpec& g);
Json to_json(const ActionSpec& a);
Json to_json(const ElementSpec& e);
GroupSpec group_from_json(const Json& j);
ActionSpec action_from_json(const Json& j);
ElementSpec element_from_json(const Json& j);

}  // namespace fpr
