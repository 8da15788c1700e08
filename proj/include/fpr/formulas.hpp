#pragma once

#include <string>
#include <vector>

#include "fpr/exact_math.hpp"
#include "fpr/model.hpp"

namespace fpr {

class UnknownFormula : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class Unsupported : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct FormulaResult {
  BigRational value;
  std::string formula_id;
  Params inputs;
  std::string anchor;

  Json to_json() const;
};

struct FormulaInfo {
  std::string id;
  std::vector<std::string> params;
  std::string anchor;
  std::string description;
};

// |Omega| for a (group, action) pair.
BigInt action_degree(const GroupSpec& g, const ActionSpec& a);

// Orders of the classical isometry groups (full GU, Sp, GO), used for degree counts.
BigInt order_gu(unsigned n, const BigInt& q);
BigInt order_sp(unsigned n, const BigInt& q);
BigInt order_go(unsigned n, int eps, const BigInt& q);  // eps ignored for odd n

// Subset actions of S_n / A_n.
BigRational fpr_subset_rcycle(long long n, long long l, long long r);
BigRational fpr_subset_double_transposition(long long n, long long l);
// Element with c disjoint r-cycles (and n - rc fixed points).
BigRational fpr_subset_cycles(long long n, long long l, long long r, long long c);
BigRational fpr_subset_max(const GroupSpec& g, long long l, long long r);

BigRational fpr_partition_transposition(long long n);
BigRational fpr_affine(long long p, long long d, long long e);

enum class Psl2Element { Unipotent, Torus, FieldAut };
// fpr on the projective line of L_2(q); for FieldAut q = q0^r.
BigRational fpr_psl2_borel(long long q, Psl2Element kind, long long r = 0);

BigRational fpr_product(const std::vector<BigRational>& component_values);
BigRational fpr_product_pi_bound(long long gamma_size, long long h, long long r);

enum class DiagonalCase { R2, R1Inversions };
// R2: count is |C_T(alpha)|; R1Inversions (r = k = 2): count is |{t : t^alpha = t^-1}|.
BigRational fpr_diagonal(long long t_order, long long count, long long k, DiagonalCase c);
BigRational twisted_wreath_bound(long long t_order, long long k, long long l);

// Exception tables as data: the exceptional subspace table (20 rows), the 1/r table (6 rows),
// the A6 table (5 rows) and the five non-classical parts of the main classification.
const std::vector<ExceptionRecord>& exception_records();
const ExceptionRecord& exception_record(const std::string& id);
BigRational fpr_exception_row(const ExceptionRecord& rec, const Params& p);

std::vector<FormulaInfo> formula_list();
// Evaluates any listed formula id with named parameters.
FormulaResult evaluate_formula(const std::string& id, const Params& p);

}  // namespace fpr
