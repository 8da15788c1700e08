#include "fpr/gf.hpp"

namespace fpr {

Field natural_field(const GroupSpec& g) {
  switch (g.family) {
    case Family::Linear:
    case Family::Symplectic:
    case Family::OrthogonalOdd:
    case Family::OrthogonalEven: return Field::of_order(g.q);
    case Family::Unitary: return Field::of_order(g.q * g.q);
    default: throw BadSpec("not a classical group: " + g.label());
  }
}

FormSpec natural_form(const Field& F, const GroupSpec& g, bool symplectic_hermitian) {
  switch (g.family) {
    case Family::Linear: return standard_form(F, FormKind::Linear, g.n);
    case Family::Symplectic: return standard_form(F, FormKind::Symplectic, g.n);
    case Family::Unitary:
      return symplectic_hermitian ? symplectic_hermitian_form(F, g.n) : standard_form(F, FormKind::Unitary, g.n);
    case Family::OrthogonalOdd: return standard_form(F, FormKind::Quadratic, g.n);
    case Family::OrthogonalEven: return standard_form(F, FormKind::Quadratic, g.n, g.eps);
    default: throw BadSpec("not a classical group: " + g.label());
  }
}

ElementCount element_fixed_points(const GroupSpec& g, const ActionSpec& a, const ElementSpec& e,
                                  std::size_t budget) {
  if (auto v = validate(g, a); !v.empty()) throw BadSpec(v.front());
  if (auto v = validate(e, g); !v.empty()) throw BadSpec(v.front());
  Field F = natural_field(g);
  bool sh = g.family == Family::Unitary && e.outer && *e.outer == "graph_aut";
  FormSpec form = natural_form(F, g, sh);
  SemilinearMap x = build_element(e, form, F);
  PointSet pts = enumerate_action_points(a, form, F, budget);
  Permutation perm = induced_permutation(F, x, pts, form);
  return {fixed_point_count(perm), pts.size()};
}

}  // namespace fpr
