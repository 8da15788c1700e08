#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <unordered_map>
#include <vector>

#include "fpr/exact_math.hpp"
#include "fpr/model.hpp"
#include "fpr/perm.hpp"

namespace fpr {

using Elt = std::uint8_t;
using Vec = std::vector<Elt>;

class InfeasibleSpec : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class NotApplicable : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

class PointBudgetExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct FieldSpec {
  unsigned p = 2;
  unsigned f = 1;
  std::vector<unsigned> modulus;  // low degree first, monic of degree f
};

// GF(p^f) in polynomial basis; an element is the integer sum c_i p^i of its coefficients.
class Field {
 public:
  Field(unsigned p, unsigned f);  // first primitive modulus in enumeration order
  explicit Field(const FieldSpec& spec);
  static Field of_order(unsigned q);

  unsigned p() const { return spec_.p; }
  unsigned f() const { return spec_.f; }
  unsigned q() const { return q_; }
  const FieldSpec& spec() const { return spec_; }

  Elt add(Elt a, Elt b) const { return add_[a * q_ + b]; }
  Elt sub(Elt a, Elt b) const { return add_[a * q_ + neg_[b]]; }
  Elt neg(Elt a) const { return neg_[a]; }
  Elt mul(Elt a, Elt b) const { return mul_[a * q_ + b]; }
  Elt inv(Elt a) const;
  Elt div(Elt a, Elt b) const { return mul(a, inv(b)); }
  Elt pow(Elt a, unsigned long long e) const;
  Elt frob(Elt a, unsigned k = 1) const;  // a^(p^k)
  Elt conj(Elt a) const;                  // a^(sqrt q); f must be even
  Elt gen() const { return gen_; }        // primitive element
  Elt from_int(long long v) const;
  bool is_square(Elt a) const;
  unsigned mult_order(Elt a) const;
  std::vector<unsigned> coeffs(Elt a) const;

 private:
  void build();

  FieldSpec spec_;
  unsigned q_ = 0;
  Elt gen_ = 0;
  std::vector<Elt> add_, mul_, neg_, inv_;
};

bool is_irreducible(unsigned p, const std::vector<unsigned>& monic);

// Dense row-major matrix over a field; vectors act on the left (v -> vA).
struct Matrix {
  unsigned rows = 0, cols = 0;
  std::vector<Elt> a;

  Matrix() = default;
  Matrix(unsigned r, unsigned c) : rows(r), cols(c), a(static_cast<std::size_t>(r) * c, 0) {}
  static Matrix identity(unsigned n);
  Elt& at(unsigned i, unsigned j) { return a[static_cast<std::size_t>(i) * cols + j]; }
  Elt at(unsigned i, unsigned j) const { return a[static_cast<std::size_t>(i) * cols + j]; }
  Vec row(unsigned i) const;

  friend bool operator==(const Matrix&, const Matrix&) = default;
};

Matrix mat_mul(const Field& F, const Matrix& A, const Matrix& B);
Matrix mat_transpose(const Matrix& A);
Matrix mat_frob(const Field& F, const Matrix& A, unsigned k);  // entrywise a -> a^(p^k)
Matrix mat_scale(const Field& F, const Matrix& A, Elt s);
Matrix mat_inverse(const Field& F, const Matrix& A);  // throws if singular
unsigned mat_rank(const Field& F, Matrix A);
unsigned rref(const Field& F, Matrix& A);  // in place; returns rank, zero rows removed
Vec vec_mat(const Field& F, const Vec& v, const Matrix& A);
Matrix left_kernel(const Field& F, const Matrix& A);  // rows span {v : vA = 0}
Matrix stack(const Matrix& top, const Matrix& bottom);
bool is_scalar(const Matrix& A);

// v -> (v^(p^frob)) A
struct SemilinearMap {
  Matrix A;
  unsigned frob = 0;

  Vec apply(const Field& F, const Vec& v) const;
};

SemilinearMap sl_compose(const Field& F, const SemilinearMap& x, const SemilinearMap& y);  // x then y
SemilinearMap sl_inverse(const Field& F, const SemilinearMap& x);
SemilinearMap sl_identity(unsigned n);
// Smallest k >= 1 with x^k scalar; 0 if larger than limit.
unsigned projective_order(const Field& F, const SemilinearMap& x, unsigned limit = 1000);

enum class FormKind { Linear, Symplectic, Unitary, Quadratic };

struct FormSpec {
  FormKind kind = FormKind::Linear;
  int epsilon = 0;  // Witt type for quadratic forms in even dimension
  unsigned n = 0;
  Matrix gram;  // bilinear / sesquilinear Gram matrix (polar form for quadratic)
  Matrix quad;  // upper triangular, Q(v) = v quad v^T (quadratic only)
  std::vector<std::pair<unsigned, unsigned>> hyperbolic;  // (e_i, f_i) coordinates
  std::vector<unsigned> anisotropic;                      // remaining coordinates
  bool symplectic_hermitian = false;  // unitary Gram zeta*Omega with zeta^q = -zeta
};

// Standard forms: hyperbolic pairs (2i, 2i+1); unitary uses antidiagonal 1s; minus-type quadratic
// forms carry an anisotropic 2-block on the last coordinates; odd dimension adds z^2 last.
// For unitary forms F is GF(q^2).
FormSpec standard_form(const Field& F, FormKind kind, unsigned n, int eps = 0);
// Unitary form whose Gram matrix is a multiple of the standard symplectic Gram.
FormSpec symplectic_hermitian_form(const Field& F, unsigned n);

Elt form_value(const Field& F, const FormSpec& form, const Vec& u, const Vec& v);  // B(u,v)
Elt quad_value(const Field& F, const FormSpec& form, const Vec& v);               // Q(v)
bool is_singular_vector(const Field& F, const FormSpec& form, const Vec& v);
bool is_totally_singular(const Field& F, const FormSpec& form, const Matrix& basis);
bool is_nondegenerate(const Field& F, const FormSpec& form, const Matrix& basis);
Matrix perp(const Field& F, const FormSpec& form, const Matrix& basis);
// Witt type (+1/-1) of a nondegenerate even-dimensional subspace of a quadratic space.
int subspace_type(const Field& F, const FormSpec& form, const Matrix& basis);

bool check_form_preservation(const Field& F, const SemilinearMap& x, const FormSpec& form);
int dickson_invariant(const Field& F, const Matrix& x, const FormSpec& form);

SemilinearMap build_element(const ElementSpec& spec, const FormSpec& form, const Field& F);

// Specific constructions used by builders and generator pools.
Matrix symplectic_transvection(const Field& F, const FormSpec& form, const Vec& w, Elt a);
Matrix orthogonal_reflection(const Field& F, const FormSpec& form, const Vec& w);
Matrix unitary_transvection(const Field& F, const FormSpec& form, const Vec& w, Elt a);
Matrix elementary_transvection(const Field& F, unsigned n, unsigned i, unsigned j, Elt a);

// Subspaces as canonical reduced row-echelon bases; OEpsilon points are quadratic forms on
// GF(q)^n polarizing to the symplectic form, stored as their diagonal values Q(e_i).
struct PointSet {
  enum class Kind { Subspaces, Forms };
  Kind kind = Kind::Subspaces;
  unsigned n = 0;
  unsigned dim = 0;  // subspace dimension
  std::vector<std::string> keys;  // sorted; key bytes are RREF rows (or form values)
  std::unordered_map<std::string, std::uint32_t> index;

  std::size_t size() const { return keys.size(); }
  Matrix basis(std::size_t i) const;
  std::uint32_t find(const std::string& key) const;
};

std::vector<Matrix> enumerate_subspaces(const Field& F, unsigned n, unsigned m);
PointSet make_point_set(std::vector<std::string> keys, unsigned n, unsigned dim, PointSet::Kind kind);
std::string subspace_key(const Field& F, Matrix basis);

// Value at v of the quadratic form with diagonal d polarizing to the symplectic form.
Elt form_point_value(const Field& F, const FormSpec& form, const Vec& d, const Vec& v);

PointSet enumerate_action_points(const ActionSpec& action, const FormSpec& form, const Field& F,
                                 std::size_t budget = std::size_t{1} << 24);
Permutation induced_permutation(const Field& F, const SemilinearMap& x, const PointSet& pts,
                                const FormSpec& form);

// Subspaces fixed by x, counted exhaustively.
std::size_t count_fixed_subspaces(const Field& F, const Matrix& x, unsigned m);
BigInt fixed_mspaces_semisimple(unsigned e, unsigned a, unsigned i, unsigned m, unsigned q);

// Random isometries built as products of transvections or reflections.
class GeneratorPool {
 public:
  GeneratorPool(const Field& F, const FormSpec& form);
  const std::vector<Matrix>& pool() const { return pool_; }
  Matrix random_element(std::mt19937_64& rng, unsigned length = 12) const;

 private:
  const Field* F_;
  std::vector<Matrix> pool_;
};

// Natural module of a classical GroupSpec: GF(q), or GF(q^2) for unitary groups.
Field natural_field(const GroupSpec& g);
// Standard form of the family; unitary groups use the symplectic-hermitian form when asked, which is
// the one the graph automorphism of U_4(q) preserves.
FormSpec natural_form(const Field& F, const GroupSpec& g, bool symplectic_hermitian = false);

struct ElementCount {
  std::size_t fixed = 0;
  std::size_t degree = 0;
  BigRational fpr() const { return BigRational(fixed, degree); }
};

// Builds the element and counts its fixed points on the enumerated action.
ElementCount element_fixed_points(const GroupSpec& g, const ActionSpec& a, const ElementSpec& e,
                                  std::size_t budget = std::size_t{1} << 24);

// Vectors of GF(q)^n in enumeration order (coordinate 0 least significant).
Vec vector_from_index(const Field& F, unsigned n, std::uint64_t idx);

}  // namespace fpr
