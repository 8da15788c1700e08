#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "fpr/exact_math.hpp"

namespace fpr {

using Point = std::uint32_t;

// Image array on {0,...,m-1}; images[j] is the image of j.
struct Permutation {
  std::vector<Point> images;

  Permutation() = default;
  explicit Permutation(std::vector<Point> img);

  static Permutation identity(std::size_t m);
  // Cycle notation such as "(0 1)(2 3 4)"; "()" is the identity.
  static Permutation from_cycles(const std::string& text, std::size_t m);

  std::size_t degree() const { return images.size(); }
  Point operator[](std::size_t j) const { return images[j]; }
  bool is_identity() const;
  std::string cycles() const;

  friend bool operator==(const Permutation&, const Permutation&) = default;
  friend auto operator<=>(const Permutation&, const Permutation&) = default;
};

class DegreeMismatch : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class CapExceeded : public std::runtime_error {
 public:
  explicit CapExceeded(std::size_t cap);
  std::size_t cap;
};

bool is_bijection(const std::vector<Point>& images);

// compose(a, b) applies a first, then b (right action: j^(ab) = (j^a)^b).
Permutation compose(const Permutation& a, const Permutation& b);
Permutation inverse(const Permutation& a);
Permutation conjugate(const Permutation& x, const Permutation& g);  // g^-1 x g
Permutation power(const Permutation& a, long long e);
BigInt element_order(const Permutation& a);
std::uint64_t small_order(const Permutation& a);  // throws if it does not fit
std::size_t fixed_point_count(const Permutation& a);
std::size_t orbit_count(const Permutation& a);
std::vector<std::size_t> cycle_type(const Permutation& a);  // sorted descending, includes 1s

// Vectorized fixed-point counting with a scalar reference path.
std::size_t count_fixed_u16_scalar(const std::uint16_t* img, std::size_t n);
std::size_t count_fixed_u16(const std::uint16_t* img, std::size_t n);
std::size_t count_fixed_u32_scalar(const std::uint32_t* img, std::size_t n);
std::size_t count_fixed_u32(const std::uint32_t* img, std::size_t n);
bool simd_available();

std::size_t default_closure_cap();  // 5,000,000 or FPR_CLOSURE_CAP

// Compact element list (16-bit images) with hash lookup.
class ElementStore {
 public:
  explicit ElementStore(std::size_t degree);

  std::size_t degree() const { return degree_; }
  std::size_t size() const { return size_; }
  const std::uint16_t* row(std::size_t i) const { return data_.data() + i * degree_; }
  Permutation at(std::size_t i) const;

  // Returns index of the element, or npos.
  std::size_t find(const std::uint16_t* img) const;
  std::size_t find(const Permutation& p) const;
  // Inserts if absent; returns (index, inserted).
  std::pair<std::size_t, bool> insert(const std::uint16_t* img);

  static constexpr std::size_t npos = static_cast<std::size_t>(-1);

 private:
  std::uint64_t hash(const std::uint16_t* img) const;
  void grow();

  std::size_t degree_;
  std::size_t size_ = 0;
  std::vector<std::uint16_t> data_;
  std::vector<std::uint32_t> slots_;  // element index + 1, 0 = empty
};

class PermGroup {
 public:
  PermGroup(std::size_t degree, std::vector<Permutation> generators, std::string name = "");

  std::size_t degree() const { return degree_; }
  const std::vector<Permutation>& generators() const { return gens_; }
  const std::string& name() const { return name_; }

  // Breadth-first closure in generator order; idempotent.
  const ElementStore& close(std::size_t cap = default_closure_cap()) const;
  bool is_closed() const { return static_cast<bool>(elements_); }
  const ElementStore& elements() const;  // requires closure
  std::shared_ptr<const ElementStore> element_ptr() const;
  BigInt order() const;                  // requires closure
  bool contains(const Permutation& p) const;

  static PermGroup from_elements(std::size_t degree, std::shared_ptr<const ElementStore> store,
                                 std::string name = "");

 private:
  std::size_t degree_;
  std::vector<Permutation> gens_;
  std::string name_;
  mutable std::shared_ptr<const ElementStore> elements_;
};

std::vector<Permutation> generating_subset(const ElementStore& store);

std::vector<std::vector<Point>> orbits(const PermGroup& g);
bool is_transitive(const PermGroup& g);
PermGroup point_stabilizer(const PermGroup& g, Point pt);

struct ConjugacyClass {
  std::size_t rep;  // index into the element store
  std::size_t size;
  std::uint64_t order;
};

struct ClassPartition {
  std::vector<ConjugacyClass> classes;
  std::vector<std::uint32_t> class_of;  // per element index
};

ClassPartition conjugacy_classes(const PermGroup& g);
// Elements of the class of x, as store indices.
std::vector<std::size_t> class_members(const PermGroup& g, const Permutation& x);

BigRational brute_fpr(const PermGroup& g, const Permutation& x);
BigRational brute_fpr_via_classes(const PermGroup& g, const PermGroup& h, const Permutation& x);
std::size_t brute_index(const Permutation& x);

struct MinIndexResult {
  std::size_t value = 0;
  std::set<std::uint64_t> witness_orders;
};
MinIndexResult brute_min_index(const PermGroup& g);
std::size_t brute_minimal_degree(const PermGroup& g);

struct MaxFpr {
  BigRational value;
  Permutation witness;
};
std::map<std::uint64_t, MaxFpr> brute_max_fpr_by_prime(const PermGroup& g);

// ---------------------------------------------------------------------------
// Derived actions: a closed base group acting on another set through a map.

class Action {
 public:
  virtual ~Action() = default;
  virtual std::size_t degree() const = 0;
  virtual Permutation apply(const Permutation& base) const = 0;
  virtual Point image(const Permutation& base, Point pt) const = 0;
  virtual std::string describe() const = 0;
};

// Points are sets of base points (subsets, subspaces as point sets, forms as
// their singular sets); images are computed setwise.
class SetFamilyAction : public Action {
 public:
  explicit SetFamilyAction(std::vector<std::vector<Point>> sets, std::string label = "sets");
  static std::shared_ptr<SetFamilyAction> subsets(std::size_t n, std::size_t l);

  std::size_t degree() const override { return sets_.size(); }
  Permutation apply(const Permutation& base) const override;
  Point image(const Permutation& base, Point pt) const override;
  std::string describe() const override { return label_; }
  const std::vector<std::vector<Point>>& sets() const { return sets_; }

 private:
  Point lookup(std::vector<Point>& key) const;

  std::vector<std::vector<Point>> sets_;
  std::map<std::vector<Point>, Point> index_;
  std::string label_;
};

// Points are set partitions of the base points (e.g. bisections, synthemes).
class PartitionAction : public Action {
 public:
  explicit PartitionAction(std::vector<std::vector<std::vector<Point>>> parts, std::string label);
  // All partitions of {0..n-1} into blocks of size b.
  static std::shared_ptr<PartitionAction> uniform(std::size_t n, std::size_t b);

  std::size_t degree() const override { return parts_.size(); }
  Permutation apply(const Permutation& base) const override;
  Point image(const Permutation& base, Point pt) const override;
  std::string describe() const override { return label_; }

 private:
  std::vector<std::vector<std::vector<Point>>> parts_;
  std::map<std::vector<std::vector<Point>>, Point> index_;
  std::string label_;
};

// Right cosets of a subgroup h of a closed group g.
class CosetAction : public Action {
 public:
  CosetAction(const PermGroup& g, const PermGroup& h, std::string label = "cosets");
  std::size_t degree() const override { return reps_.size(); }
  Permutation apply(const Permutation& base) const override;
  Point image(const Permutation& base, Point pt) const override;
  std::string describe() const override { return label_; }

 private:
  const ElementStore* store_;
  std::shared_ptr<const ElementStore> keep_;
  std::vector<std::uint32_t> coset_of_;
  std::vector<std::size_t> reps_;
  std::string label_;
};

// Product action on Gamma^k from the imprimitive action on k blocks of size n.
class ProductAction : public Action {
 public:
  ProductAction(std::size_t n, std::size_t k);
  std::size_t degree() const override { return size_; }
  Permutation apply(const Permutation& base) const override;
  Point image(const Permutation& base, Point pt) const override;
  std::string describe() const override;

 private:
  std::size_t n_, k_, size_;
};

// Wreath product L wr S_k in imprimitive action on k*n points.
std::vector<Permutation> wreath_generators(const std::vector<Permutation>& lgens, std::size_t n,
                                           std::size_t k);

// A closed base group acting through an optional derived action.
struct ActedGroup {
  PermGroup base;
  std::shared_ptr<const Action> action;  // null: the base action itself

  std::size_t degree() const { return action ? action->degree() : base.degree(); }
  Permutation act(const Permutation& x) const { return action ? action->apply(x) : x; }
};

struct ClassProfile {
  Permutation rep;         // in the base action
  std::size_t class_size;  // in the base group
  std::uint64_t order;
  std::size_t fixed;   // on the acted domain
  std::size_t orbits;  // on the acted domain
};

std::vector<ClassProfile> class_profile(const ActedGroup& g);
std::vector<ClassProfile> class_profile(const ActedGroup& g, const ClassPartition& cp);

// Stabilizer of a point of the acted domain, as a subgroup of the base.
PermGroup acted_stabilizer(const ActedGroup& g, Point pt);

}  // namespace fpr
