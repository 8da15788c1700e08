#include <algorithm>
#include <set>

#include "fpr/gf.hpp"

namespace fpr {

namespace {

Vec unit(unsigned n, unsigned i) {
  Vec v(n, 0);
  v[i] = 1;
  return v;
}

Matrix from_rows(const std::vector<Vec>& rows, unsigned n) {
  Matrix M(static_cast<unsigned>(rows.size()), n);
  for (unsigned i = 0; i < rows.size(); ++i)
    for (unsigned j = 0; j < n; ++j) M.at(i, j) = rows[i][j];
  return M;
}

Vec conj_vec(const Field& F, const FormSpec& form, const Vec& v) {
  if (form.kind != FormKind::Unitary) return v;
  Vec w = v;
  for (auto& x : w) x = F.conj(x);
  return w;
}

bool is_zero(const Vec& v) {
  return std::all_of(v.begin(), v.end(), [](Elt x) { return x == 0; });
}

// Linear combination sum c_i rows_i with c given by an enumeration index.
Vec combo(const Field& F, const Matrix& basis, std::uint64_t idx) {
  Vec v(basis.cols, 0);
  for (unsigned i = 0; i < basis.rows; ++i) {
    Elt c = static_cast<Elt>(idx % F.q());
    idx /= F.q();
    if (!c) continue;
    for (unsigned j = 0; j < basis.cols; ++j) v[j] = F.add(v[j], F.mul(c, basis.at(i, j)));
  }
  return v;
}

std::uint64_t upow(std::uint64_t b, unsigned e) {
  std::uint64_t r = 1;
  while (e--) r *= b;
  return r;
}

}  // namespace

// ---------------------------------------------------------------------------
// Forms

FormSpec standard_form(const Field& F, FormKind kind, unsigned n, int eps) {
  FormSpec form;
  form.kind = kind;
  form.n = n;
  form.gram = Matrix(n, n);
  switch (kind) {
    case FormKind::Linear:
      break;
    case FormKind::Symplectic:
      if (n % 2) throw std::invalid_argument("symplectic forms need even dimension");
      for (unsigned i = 0; i < n / 2; ++i) {
        form.gram.at(2 * i, 2 * i + 1) = 1;
        form.gram.at(2 * i + 1, 2 * i) = F.neg(1);
        form.hyperbolic.emplace_back(2 * i, 2 * i + 1);
      }
      break;
    case FormKind::Unitary:
      if (F.f() % 2) throw std::invalid_argument("unitary forms need a field of square order");
      for (unsigned i = 0; i < n; ++i) form.gram.at(i, n - 1 - i) = 1;
      for (unsigned i = 0; i < n / 2; ++i) form.hyperbolic.emplace_back(i, n - 1 - i);
      if (n % 2) form.anisotropic.push_back(n / 2);
      break;
    case FormKind::Quadratic: {
      form.quad = Matrix(n, n);
      if (n % 2 == 0 && eps != 1 && eps != -1) throw std::invalid_argument("even dimension needs a Witt type");
      form.epsilon = n % 2 ? 0 : eps;
      unsigned pairs = n % 2 ? (n - 1) / 2 : (eps == 1 ? n / 2 : n / 2 - 1);
      for (unsigned i = 0; i < pairs; ++i) {
        form.quad.at(2 * i, 2 * i + 1) = 1;
        form.hyperbolic.emplace_back(2 * i, 2 * i + 1);
      }
      if (n % 2) {
        form.quad.at(n - 1, n - 1) = 1;
        form.anisotropic.push_back(n - 1);
      } else if (eps == -1) {
        unsigned a = n - 2, b = n - 1;
        form.anisotropic = {a, b};
        if (F.p() == 2) {
          // x^2 + xy + c y^2 with no nontrivial zero
          Elt c = 0;
          for (unsigned t = 1; t < F.q() && !c; ++t) {
            bool root = false;
            for (unsigned x = 0; x < F.q(); ++x)
              if (F.add(F.add(F.mul(x, x), x), t) == 0) root = true;
            if (!root) c = static_cast<Elt>(t);
          }
          form.quad.at(a, a) = 1;
          form.quad.at(a, b) = 1;
          form.quad.at(b, b) = c;
        } else {
          Elt d = 0;
          for (unsigned t = 1; t < F.q() && !d; ++t)
            if (!F.is_square(static_cast<Elt>(t))) d = static_cast<Elt>(t);
          form.quad.at(a, a) = 1;
          form.quad.at(b, b) = F.neg(d);
        }
      }
      form.gram = Matrix(n, n);
      for (unsigned i = 0; i < n; ++i)
        for (unsigned j = 0; j < n; ++j) form.gram.at(i, j) = F.add(form.quad.at(i, j), form.quad.at(j, i));
      break;
    }
  }
  return form;
}

FormSpec symplectic_hermitian_form(const Field& F, unsigned n) {
  if (F.f() % 2 || n % 2) throw std::invalid_argument("needs GF(q^2) and even dimension");
  const unsigned q0 = static_cast<unsigned>(upow(F.p(), F.f() / 2));
  Elt zeta = F.p() == 2 ? 1 : F.pow(F.gen(), (q0 + 1) / 2);
  FormSpec form;
  form.kind = FormKind::Unitary;
  form.n = n;
  form.gram = Matrix(n, n);
  for (unsigned i = 0; i < n / 2; ++i) {
    form.gram.at(2 * i, 2 * i + 1) = zeta;
    form.gram.at(2 * i + 1, 2 * i) = F.neg(zeta);
    form.hyperbolic.emplace_back(2 * i, 2 * i + 1);
  }
  form.symplectic_hermitian = true;
  return form;
}

Elt form_value(const Field& F, const FormSpec& form, const Vec& u, const Vec& v) {
  if (form.kind == FormKind::Linear) return 0;
  Vec w = conj_vec(F, form, v);
  Elt s = 0;
  for (unsigned i = 0; i < form.n; ++i) {
    if (!u[i]) continue;
    for (unsigned j = 0; j < form.n; ++j)
      if (w[j] && form.gram.at(i, j)) s = F.add(s, F.mul(F.mul(u[i], form.gram.at(i, j)), w[j]));
  }
  return s;
}

Elt quad_value(const Field& F, const FormSpec& form, const Vec& v) {
  if (form.kind != FormKind::Quadratic) throw std::invalid_argument("not a quadratic form");
  Elt s = 0;
  for (unsigned i = 0; i < form.n; ++i) {
    if (!v[i]) continue;
    for (unsigned j = i; j < form.n; ++j)
      if (v[j] && form.quad.at(i, j)) s = F.add(s, F.mul(F.mul(v[i], form.quad.at(i, j)), v[j]));
  }
  return s;
}

bool is_singular_vector(const Field& F, const FormSpec& form, const Vec& v) {
  switch (form.kind) {
    case FormKind::Linear:
    case FormKind::Symplectic: return true;
    case FormKind::Unitary: return form_value(F, form, v, v) == 0;
    case FormKind::Quadratic: return quad_value(F, form, v) == 0;
  }
  return false;
}

bool is_totally_singular(const Field& F, const FormSpec& form, const Matrix& basis) {
  for (unsigned i = 0; i < basis.rows; ++i) {
    Vec u = basis.row(i);
    if (!is_singular_vector(F, form, u)) return false;
    for (unsigned j = i + 1; j < basis.rows; ++j)
      if (form_value(F, form, u, basis.row(j))) return false;
  }
  return true;
}

Matrix perp(const Field& F, const FormSpec& form, const Matrix& basis) {
  // u G conj(w)^T = 0 for each basis row w
  Matrix M(form.n, basis.rows);
  for (unsigned k = 0; k < basis.rows; ++k) {
    Vec w = conj_vec(F, form, basis.row(k));
    for (unsigned i = 0; i < form.n; ++i) {
      Elt s = 0;
      for (unsigned j = 0; j < form.n; ++j) s = F.add(s, F.mul(form.gram.at(i, j), w[j]));
      M.at(i, k) = s;
    }
  }
  return left_kernel(F, M);
}

bool is_nondegenerate(const Field& F, const FormSpec& form, const Matrix& basis) {
  const unsigned k = basis.rows;
  Matrix G(k, k);
  for (unsigned i = 0; i < k; ++i)
    for (unsigned j = 0; j < k; ++j) G.at(i, j) = form_value(F, form, basis.row(i), basis.row(j));
  unsigned rk = mat_rank(F, G);
  if (rk == k) return true;
  if (form.kind == FormKind::Quadratic && F.p() == 2 && rk + 1 == k) {
    // radical of the polar form is a line; nondegenerate when Q is nonzero on it
    Matrix rad = mat_mul(F, left_kernel(F, G), basis);
    return quad_value(F, form, rad.row(0)) != 0;
  }
  return false;
}

int subspace_type(const Field& F, const FormSpec& form, const Matrix& basis) {
  if (form.kind != FormKind::Quadratic || basis.rows % 2) throw std::invalid_argument("type needs an even quadratic subspace");
  const unsigned d = basis.rows, k = d / 2;
  const std::uint64_t total = upow(F.q(), d);
  std::uint64_t singular = 0;
  for (std::uint64_t idx = 0; idx < total; ++idx)
    if (quad_value(F, form, combo(F, basis, idx)) == 0) ++singular;
  const std::uint64_t plus = upow(F.q(), d - 1) + upow(F.q(), k) - upow(F.q(), k - 1);
  const std::uint64_t minus = upow(F.q(), d - 1) - upow(F.q(), k) + upow(F.q(), k - 1);
  if (singular == plus) return 1;
  if (singular == minus) return -1;
  throw std::invalid_argument("subspace is degenerate");
}

bool check_form_preservation(const Field& F, const SemilinearMap& x, const FormSpec& form) {
  if (x.A.rows != form.n || x.A.cols != form.n) return false;
  if (mat_rank(F, x.A) != form.n) return false;
  if (form.kind == FormKind::Linear) return true;
  std::vector<Vec> rows;
  for (unsigned i = 0; i < form.n; ++i) rows.push_back(x.A.row(i));
  for (unsigned i = 0; i < form.n; ++i) {
    for (unsigned j = 0; j < form.n; ++j)
      if (form_value(F, form, rows[i], rows[j]) != F.frob(form.gram.at(i, j), x.frob)) return false;
    if (form.kind == FormKind::Quadratic &&
        quad_value(F, form, rows[i]) != F.frob(form.quad.at(i, i), x.frob))
      return false;
  }
  return true;
}

int dickson_invariant(const Field& F, const Matrix& x, const FormSpec& form) {
  if (form.kind != FormKind::Quadratic || F.p() != 2) throw std::invalid_argument("Dickson invariant needs a quadratic form in characteristic 2");
  Matrix y = x;
  for (unsigned i = 0; i < y.rows; ++i) y.at(i, i) = F.add(y.at(i, i), 1);
  return static_cast<int>(mat_rank(F, y) % 2);
}

Matrix symplectic_transvection(const Field& F, const FormSpec& form, const Vec& w, Elt a) {
  // v -> v + a B(v,w) w
  Matrix X = Matrix::identity(form.n);
  for (unsigned i = 0; i < form.n; ++i) {
    Elt b = F.mul(a, form_value(F, form, unit(form.n, i), w));
    if (!b) continue;
    for (unsigned j = 0; j < form.n; ++j) X.at(i, j) = F.add(X.at(i, j), F.mul(b, w[j]));
  }
  return X;
}

Matrix unitary_transvection(const Field& F, const FormSpec& form, const Vec& w, Elt a) {
  return symplectic_transvection(F, form, w, a);
}

Matrix orthogonal_reflection(const Field& F, const FormSpec& form, const Vec& w) {
  // v -> v - B(v,w) Q(w)^-1 w
  Elt qw = quad_value(F, form, w);
  if (!qw) throw std::invalid_argument("reflection needs a nonsingular vector");
  return symplectic_transvection(F, form, w, F.neg(F.inv(qw)));
}

Matrix elementary_transvection(const Field& F, unsigned n, unsigned i, unsigned j, Elt a) {
  (void)F;
  Matrix X = Matrix::identity(n);
  X.at(i, j) = a;
  return X;
}

// ---------------------------------------------------------------------------
// Element builders

namespace {

struct Piece {
  Matrix basis;  // d x n
  Matrix M;      // d x d, the action in that basis
};

Matrix completion(const Field& F, const Matrix& W, unsigned n) {
  Matrix R = W;
  rref(F, R);
  std::vector<bool> pivot(n, false);
  for (unsigned i = 0; i < R.rows; ++i)
    for (unsigned c = 0; c < n; ++c)
      if (R.at(i, c)) {
        pivot[c] = true;
        break;
      }
  std::vector<Vec> rows;
  for (unsigned c = 0; c < n; ++c)
    if (!pivot[c]) rows.push_back(unit(n, c));
  return from_rows(rows, n);
}

class Builder {
 public:
  Builder(const Field& F, const FormSpec& form) : F_(F), form_(form), n_(form.n) {}

  Matrix assemble() const {
    Matrix W(0, n_);
    for (const auto& p : pieces_) W = stack(W, p.basis);
    Matrix C = form_.kind == FormKind::Linear ? completion(F_, W, n_) : perp(F_, form_, W);
    Matrix P = stack(W, C);
    if (P.rows != n_ || mat_rank(F_, P) != n_) throw InfeasibleSpec("element blocks do not fit the space");
    Matrix D(n_, n_);
    unsigned off = 0;
    for (const auto& p : pieces_) {
      for (unsigned i = 0; i < p.M.rows; ++i)
        for (unsigned j = 0; j < p.M.cols; ++j) D.at(off + i, off + j) = p.M.at(i, j);
      off += p.M.rows;
    }
    for (; off < n_; ++off) D.at(off, off) = 1;
    return mat_mul(F_, mat_mul(F_, mat_inverse(F_, P), D), P);
  }

  void add(Matrix basis, Matrix M) { pieces_.push_back({std::move(basis), std::move(M)}); }

  unsigned used_dim() const {
    unsigned d = 0;
    for (const auto& p : pieces_) d += p.basis.rows;
    return d;
  }

  Matrix used_basis() const {
    Matrix W(0, n_);
    for (const auto& p : pieces_) W = stack(W, p.basis);
    return W;
  }

  // Remaining coordinates for linear groups.
  std::vector<unsigned> take_coords(unsigned d) {
    if (next_coord_ + d > n_) throw InfeasibleSpec("element blocks exceed the dimension");
    std::vector<unsigned> c;
    for (unsigned i = 0; i < d; ++i) c.push_back(next_coord_++);
    return c;
  }

  std::pair<Vec, Vec> take_pair() {
    if (next_pair_ >= form_.hyperbolic.size()) throw InfeasibleSpec("not enough hyperbolic pairs");
    auto [e, f] = form_.hyperbolic[next_pair_++];
    return {unit(n_, e), unit(n_, f)};
  }
  unsigned pairs_left() const { return static_cast<unsigned>(form_.hyperbolic.size() - next_pair_); }

  // Orthogonal complement of everything placed so far.
  Matrix free_space() const {
    Matrix W = used_basis();
    if (W.rows == 0) return Matrix::identity(n_);
    return perp(F_, form_, W);
  }

 private:
  const Field& F_;
  const FormSpec& form_;
  unsigned n_;
  std::vector<Piece> pieces_;
  unsigned next_coord_ = 0;
  std::size_t next_pair_ = 0;
};

Matrix diag_scalar(unsigned d, Elt s) {
  Matrix M(d, d);
  for (unsigned i = 0; i < d; ++i) M.at(i, i) = s;
  return M;
}

Matrix mat_pow(const Field& F, const Matrix& A, unsigned e) {
  Matrix R = Matrix::identity(A.rows), B = A;
  while (e) {
    if (e & 1) R = mat_mul(F, R, B);
    B = mat_mul(F, B, B);
    e >>= 1;
  }
  return R;
}

// Companion matrix of the first irreducible monic degree-i polynomial whose roots have order r.
Matrix irreducible_block(const Field& F, unsigned i, unsigned r) {
  unsigned ord = 1;
  for (std::uint64_t qq = F.q() % r; qq != 1 && ord <= r; qq = qq * F.q() % r) ++ord;
  if (r == F.p() || ord != i) throw InfeasibleSpec("order of q modulo r differs from the block degree");
  const std::uint64_t count = upow(F.q(), i);
  for (std::uint64_t t = 0; t < count; ++t) {
    std::vector<unsigned> m(i + 1);
    std::uint64_t x = t;
    for (unsigned k = 0; k < i; ++k) {
      m[k] = static_cast<unsigned>(x % F.q());
      x /= F.q();
    }
    m[i] = 1;
    // with ord_r(q) = i every nontrivial C with C^r = I has an irreducible characteristic polynomial
    Matrix C(i, i);
    for (unsigned k = 0; k + 1 < i; ++k) C.at(k, k + 1) = 1;
    for (unsigned j = 0; j < i; ++j) C.at(i - 1, j) = F.neg(static_cast<Elt>(m[j]));
    if (mat_pow(F, C, r) == Matrix::identity(i) && C != Matrix::identity(i)) return C;
  }
  throw InfeasibleSpec("no irreducible block of the requested order");
}

// Does M (in the basis W) preserve the restricted form?
bool preserves_on(const Field& F, const FormSpec& form, const Matrix& W, const Matrix& M) {
  Matrix img = mat_mul(F, M, W);
  for (unsigned i = 0; i < W.rows; ++i) {
    for (unsigned j = 0; j < W.rows; ++j)
      if (form_value(F, form, img.row(i), img.row(j)) != form_value(F, form, W.row(i), W.row(j))) return false;
    if (form.kind == FormKind::Quadratic && quad_value(F, form, img.row(i)) != quad_value(F, form, W.row(i)))
      return false;
  }
  return true;
}

// Search a 2x2 isometry of order r without eigenvalues in GF(q) on the 2-space W.
Matrix order_r_isometry_2(const Field& F, const FormSpec& form, const Matrix& W, unsigned r) {
  const std::uint64_t total = upow(F.q(), 4);
  for (std::uint64_t t = 0; t < total; ++t) {
    Matrix M(2, 2);
    std::uint64_t x = t;
    for (auto& e : M.a) {
      e = static_cast<Elt>(x % F.q());
      x /= F.q();
    }
    if (M == Matrix::identity(2) || mat_pow(F, M, r) != Matrix::identity(2)) continue;
    bool eig = false;
    for (unsigned l = 0; l < F.q() && !eig; ++l) {
      Matrix N = M;
      N.at(0, 0) = F.sub(N.at(0, 0), static_cast<Elt>(l));
      N.at(1, 1) = F.sub(N.at(1, 1), static_cast<Elt>(l));
      if (mat_rank(F, N) < 2) eig = true;
    }
    if (eig || !preserves_on(F, form, W, M)) continue;
    return M;
  }
  throw InfeasibleSpec("no isometry of the requested order on a 2-space");
}

// First vector (enumeration order over the span of S) satisfying pred.
template <class Pred>
std::optional<Vec> search_vector(const Field& F, const Matrix& S, Pred pred) {
  const std::uint64_t total = upow(F.q(), S.rows);
  for (std::uint64_t idx = 1; idx < total; ++idx) {
    Vec v = combo(F, S, idx);
    if (pred(v)) return v;
  }
  return std::nullopt;
}

// Minus-type 2-space inside the span of S (quadratic forms).
Matrix minus_plane(const Field& F, const FormSpec& form, const Matrix& S) {
  auto anisotropic_plane = [&](const Vec& v, const Vec& w) {
    for (unsigned a = 0; a < F.q(); ++a)
      for (unsigned b = 0; b < F.q(); ++b) {
        if (!a && !b) continue;
        Vec u(form.n);
        for (unsigned j = 0; j < form.n; ++j) u[j] = F.add(F.mul(static_cast<Elt>(a), v[j]), F.mul(static_cast<Elt>(b), w[j]));
        if (is_zero(u) || quad_value(F, form, u) == 0) return false;
      }
    return true;
  };
  auto v = search_vector(F, S, [&](const Vec& u) { return quad_value(F, form, u) != 0; });
  if (!v) throw InfeasibleSpec("no nonsingular vector available");
  auto w = search_vector(F, S, [&](const Vec& u) { return anisotropic_plane(*v, u); });
  if (!w) throw InfeasibleSpec("no minus-type plane available");
  return from_rows({*v, *w}, form.n);
}

// Greedy orthogonal basis of a nondegenerate d-space made of anisotropic vectors.
Matrix anisotropic_frame(const Field& F, const FormSpec& form, const Matrix& S0, unsigned d,
                         const std::function<bool(const Vec&)>& first_ok = nullptr) {
  std::vector<Vec> rows;
  Matrix S = S0;
  for (unsigned k = 0; k < d; ++k) {
    auto v = search_vector(F, S, [&](const Vec& u) {
      bool aniso = form.kind == FormKind::Quadratic ? quad_value(F, form, u) != 0 : form_value(F, form, u, u) != 0;
      return aniso && (k > 0 || !first_ok || first_ok(u));
    });
    if (!v) throw InfeasibleSpec("no anisotropic vector available");
    rows.push_back(*v);
    // restrict S to v-perp
    Matrix vm = from_rows({*v}, form.n);
    Matrix P = perp(F, form, vm);
    // intersection of span(S) and span(P)
    Matrix stacked = stack(S, P);
    Matrix K = left_kernel(F, stacked);
    Matrix Ks(K.rows, S.rows);
    for (unsigned i = 0; i < K.rows; ++i)
      for (unsigned j = 0; j < S.rows; ++j) Ks.at(i, j) = K.at(i, j);
    Matrix inter = mat_mul(F, Ks, S);
    rref(F, inter);
    S = inter;
  }
  return from_rows(rows, form.n);
}

Elt unitary_trace_zero(const Field& F) {
  for (unsigned a = 1; a < F.q(); ++a)
    if (F.add(static_cast<Elt>(a), F.conj(static_cast<Elt>(a))) == 0) return static_cast<Elt>(a);
  throw std::logic_error("no trace-zero element");
}

}  // namespace

SemilinearMap build_element(const ElementSpec& spec, const FormSpec& form, const Field& F) {
  const unsigned n = form.n;
  const unsigned r = spec.order;
  if (r < 2 || !is_prime(r)) throw InfeasibleSpec("element order must be prime");

  if (spec.outer) {
    SemilinearMap x;
    if (*spec.outer == "field_aut") {
      if (F.f() % r) throw InfeasibleSpec("field automorphism order must divide f");
      x = {Matrix::identity(n), F.f() / r};
    } else if (*spec.outer == "graph_aut") {
      if (form.kind != FormKind::Unitary || !form.symplectic_hermitian || r != 2)
        throw InfeasibleSpec("graph automorphism needs a symplectic-type unitary form");
      const unsigned q0 = static_cast<unsigned>(upow(F.p(), F.f() / 2));
      Elt mu = F.p() == 2 ? 1 : F.pow(F.gen(), (q0 - 1) / 2);
      x = {diag_scalar(n, mu), F.f() / 2};
    } else {
      throw InfeasibleSpec("unknown outer automorphism '" + *spec.outer + "'");
    }
    if (!check_form_preservation(F, x, form)) throw InfeasibleSpec("outer automorphism does not preserve the form");
    if (projective_order(F, x) != r) throw InfeasibleSpec("outer automorphism has the wrong order");
    return x;
  }

  if (spec.dim() != n) throw InfeasibleSpec("block dimensions do not sum to n");
  const FormKind kind = form.kind;
  const bool char2 = F.p() == 2;
  Builder B(F, form);

  auto omega = [&](unsigned j) -> Elt {
    if ((F.q() - 1) % r) throw InfeasibleSpec("no r-th roots of unity in the field");
    return F.pow(F.pow(F.gen(), (F.q() - 1) / r), j);
  };

  auto place_neg = [&](unsigned mult) {
    if (char2) throw InfeasibleSpec("-1 equals 1 in characteristic 2");
    if (kind == FormKind::Symplectic) {
      if (mult % 2) throw InfeasibleSpec("-1 eigenspace of a symplectic element is even-dimensional");
      for (unsigned c = 0; c < mult / 2; ++c) {
        auto [e, f] = B.take_pair();
        B.add(from_rows({e, f}, n), diag_scalar(2, F.neg(1)));
      }
      return;
    }
    if (kind == FormKind::Quadratic && (spec.discriminant || spec.eigenspace_type) && B.used_dim() == 0 &&
        (mult == n - 1 || mult == 1)) {
      // pick the anisotropic vector v spanning the 1-dimensional eigenspace
      auto ok = [&](const Vec& v) {
        Elt qv = quad_value(F, form, v);
        if (!qv) return false;
        if (spec.discriminant && (F.is_square(qv) != (*spec.discriminant == "square"))) return false;
        if (spec.eigenspace_type && mult == n - 1 && (n - 1) % 2 == 0) {
          Matrix P = perp(F, form, from_rows({v}, n));
          if (subspace_type(F, form, P) != *spec.eigenspace_type) return false;
        }
        return true;
      };
      auto v = search_vector(F, Matrix::identity(n), ok);
      if (!v) throw InfeasibleSpec("no vector with the requested labels");
      Matrix vm = from_rows({*v}, n);
      if (mult == 1) B.add(vm, diag_scalar(1, F.neg(1)));
      else B.add(perp(F, form, vm), diag_scalar(n - 1, F.neg(1)));
      return;
    }
    Matrix W = anisotropic_frame(F, form, B.free_space(), mult);
    B.add(W, diag_scalar(mult, F.neg(1)));
  };

  // Blocks in order; Jordan size-1 and eigenvalue-1 scalars are the identity remainder.
  for (const auto& b : spec.blocks) {
    using K = ElementBlock::Kind;
    if ((b.kind == K::Jordan && b.size == 1) || (b.kind == K::Scalar && b.power % r == 0)) continue;

    if (kind == FormKind::Linear) {
      for (unsigned c = 0; c < b.mult; ++c) {
        switch (b.kind) {
          case K::Jordan: {
            auto co = B.take_coords(b.size);
            std::vector<Vec> rows;
            for (unsigned i : co) rows.push_back(unit(n, i));
            Matrix M = Matrix::identity(b.size);
            for (unsigned i = 0; i + 1 < b.size; ++i) M.at(i, i + 1) = 1;
            B.add(from_rows(rows, n), M);
            break;
          }
          case K::Scalar: {
            auto co = B.take_coords(1);
            B.add(from_rows({unit(n, co[0])}, n), diag_scalar(1, omega(b.power)));
            break;
          }
          case K::NegIdentity: {
            if (char2) throw InfeasibleSpec("-1 equals 1 in characteristic 2");
            auto co = B.take_coords(1);
            B.add(from_rows({unit(n, co[0])}, n), diag_scalar(1, F.neg(1)));
            break;
          }
          case K::Irreducible: {
            Matrix C = irreducible_block(F, b.size, r);
            auto co = B.take_coords(b.size);
            std::vector<Vec> rows;
            for (unsigned i : co) rows.push_back(unit(n, i));
            B.add(from_rows(rows, n), C);
            if (b.paired) {
              auto co2 = B.take_coords(b.size);
              std::vector<Vec> rows2;
              for (unsigned i : co2) rows2.push_back(unit(n, i));
              B.add(from_rows(rows2, n), mat_inverse(F, C));
            }
            break;
          }
        }
      }
      continue;
    }

    switch (b.kind) {
      case K::Jordan: {
        if (b.size != 2) throw InfeasibleSpec("only Jordan blocks of size at most 2 are realized with forms");
        std::string cls = spec.involution_class.value_or(b.mult % 2 ? "b" : "a");
        if (kind == FormKind::Quadratic && !char2 && b.mult % 2)
          throw InfeasibleSpec("an odd number of J2 blocks is impossible in odd-characteristic orthogonal groups");
        if (cls == "a" && b.mult % 2) throw InfeasibleSpec("a-type involutions have an even number of J2 blocks");
        if (cls == "b" && b.mult % 2 == 0) throw InfeasibleSpec("b-type involutions have an odd number of J2 blocks");
        unsigned singles = cls == "c" ? b.mult : (cls == "b" ? 1 : 0);
        unsigned doubles = (b.mult - singles) / 2;
        for (unsigned c = 0; c < doubles; ++c) {
          auto [e1, f1] = B.take_pair();
          auto [e2, f2] = B.take_pair();
          // f1 -> f1 + e2, f2 -> f2 + c e1 with B(f1 x, f2 x) = 0
          Elt bf1e1 = form_value(F, form, f1, e1), be2f2 = form_value(F, form, e2, f2);
          Elt cc = F.neg(F.div(be2f2, bf1e1));
          Matrix M = Matrix::identity(4);
          M.at(1, 2) = 1;
          M.at(3, 0) = cc;
          B.add(from_rows({e1, f1, e2, f2}, n), M);
        }
        for (unsigned c = 0; c < singles; ++c) {
          auto [e, f] = B.take_pair();
          Matrix M = Matrix::identity(2);
          if (kind == FormKind::Quadratic) {
            // reflection in e+f swaps e and f
            M = Matrix(2, 2);
            M.at(0, 1) = 1;
            M.at(1, 0) = 1;
          } else {
            Elt a = kind == FormKind::Unitary ? unitary_trace_zero(F) : 1;
            M.at(1, 0) = F.mul(a, form_value(F, form, f, e));
          }
          B.add(from_rows({e, f}, n), M);
        }
        break;
      }
      case K::Scalar: {
        if (kind == FormKind::Unitary) {
          const unsigned q0 = static_cast<unsigned>(upow(F.p(), F.f() / 2));
          if ((q0 + 1) % r) throw InfeasibleSpec("r does not divide q+1");
          Elt w = F.pow(F.pow(F.gen(), (F.q() - 1) / r), b.power);
          Matrix W = anisotropic_frame(F, form, B.free_space(), b.mult);
          B.add(W, diag_scalar(b.mult, w));
          break;
        }
        if (r == 2 && b.power % 2 == 1 && !char2) {
          place_neg(b.mult);
          break;
        }
        throw InfeasibleSpec("scalar blocks need eigenvalues fixed by the form");
      }
      case K::NegIdentity:
        place_neg(b.mult);
        break;
      case K::Irreducible: {
        if (kind == FormKind::Unitary) throw InfeasibleSpec("irreducible blocks are not realized for unitary forms");
        Matrix C = irreducible_block(F, b.size, r);
        for (unsigned c = 0; c < b.mult; ++c) {
          if (b.paired) {
            std::vector<Vec> es, fs;
            for (unsigned k = 0; k < b.size; ++k) {
              auto [e, f] = B.take_pair();
              es.push_back(e);
              fs.push_back(f);
            }
            B.add(from_rows(es, n), C);
            B.add(from_rows(fs, n), mat_transpose(mat_inverse(F, C)));
            continue;
          }
          if (b.size != 2) throw InfeasibleSpec("unpaired irreducible blocks are realized in degree 2 only");
          Matrix W;
          if (kind == FormKind::Symplectic) {
            auto [e, f] = B.take_pair();
            W = from_rows({e, f}, n);
          } else {
            W = minus_plane(F, form, B.free_space());
          }
          B.add(W, order_r_isometry_2(F, form, W, r));
        }
        break;
      }
    }
  }

  SemilinearMap x{B.assemble(), 0};
  if (!check_form_preservation(F, x, form)) throw std::logic_error("built element does not preserve the form");
  if (projective_order(F, x) != r) throw InfeasibleSpec("built element has projective order " +
                                                        std::to_string(projective_order(F, x)));
  return x;
}

}  // namespace fpr
