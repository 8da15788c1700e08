#include <algorithm>
#include <numeric>

#include "fpr/gf.hpp"

namespace fpr {

namespace {

// Polynomial remainder over GF(p); polynomials low degree first.
std::vector<unsigned> poly_mod(std::vector<unsigned> a, const std::vector<unsigned>& m, unsigned p) {
  const std::size_t dm = m.size() - 1;
  const unsigned lead_inv = [&] {
    for (unsigned x = 1; x < p; ++x)
      if (x * m.back() % p == 1) return x;
    return 1u;
  }();
  while (a.size() > dm) {
    unsigned c = a.back() * lead_inv % p;
    if (c) {
      std::size_t shift = a.size() - 1 - dm;
      for (std::size_t i = 0; i <= dm; ++i) a[shift + i] = (a[shift + i] + (p - c) * m[i] % p) % p;
    }
    a.pop_back();
  }
  return a;
}

unsigned ipow_u(unsigned b, unsigned e) {
  unsigned r = 1;
  while (e--) r *= b;
  return r;
}

}  // namespace

bool is_irreducible(unsigned p, const std::vector<unsigned>& monic) {
  const unsigned f = static_cast<unsigned>(monic.size()) - 1;
  if (f == 0) return false;
  if (f == 1) return true;
  for (unsigned d = 1; 2 * d <= f; ++d) {
    const unsigned count = ipow_u(p, d);
    for (unsigned t = 0; t < count; ++t) {
      std::vector<unsigned> g(d + 1);
      unsigned x = t;
      for (unsigned i = 0; i < d; ++i) {
        g[i] = x % p;
        x /= p;
      }
      g[d] = 1;
      auto r = poly_mod(monic, g, p);
      if (std::all_of(r.begin(), r.end(), [](unsigned c) { return c == 0; })) return false;
    }
  }
  return true;
}

Field::Field(unsigned p, unsigned f) {
  if (!is_prime(p)) throw std::invalid_argument("field characteristic must be prime");
  if (f < 1 || f > 8 || ipow_u(p, f) > 256) throw std::invalid_argument("field order must be at most 256");
  spec_.p = p;
  spec_.f = f;
  if (f == 1) {
    spec_.modulus = {0, 1};
    build();
    return;
  }
  const unsigned count = ipow_u(p, f);
  for (unsigned t = 0; t < count; ++t) {
    std::vector<unsigned> m(f + 1);
    unsigned x = t;
    for (unsigned i = 0; i < f; ++i) {
      m[i] = x % p;
      x /= p;
    }
    m[f] = 1;
    if (!is_irreducible(p, m)) continue;
    spec_.modulus = m;
    build();
    if (mult_order(static_cast<Elt>(p)) == q_ - 1) return;  // the class of x is primitive
  }
  throw std::logic_error("no primitive polynomial found");
}

Field::Field(const FieldSpec& spec) : spec_(spec) {
  if (!is_prime(spec.p)) throw std::invalid_argument("field characteristic must be prime");
  if (spec.f < 1 || spec.f > 8 || ipow_u(spec.p, spec.f) > 256)
    throw std::invalid_argument("field order must be at most 256");
  if (spec.f == 1 && spec.modulus.empty()) spec_.modulus = {0, 1};
  if (spec_.modulus.size() != spec.f + 1 || spec_.modulus.back() != 1)
    throw std::invalid_argument("modulus must be monic of degree f");
  for (unsigned c : spec_.modulus)
    if (c >= spec.p) throw std::invalid_argument("modulus coefficient out of range");
  if (!is_irreducible(spec.p, spec_.modulus)) throw std::invalid_argument("modulus is reducible");
  build();
}

Field Field::of_order(unsigned q) {
  if (q < 2) throw std::invalid_argument("field order must be at least 2");
  unsigned p = 2;
  while (q % p) ++p;
  unsigned f = 0, x = q;
  while (x % p == 0) {
    x /= p;
    ++f;
  }
  if (x != 1) throw std::invalid_argument("field order must be a prime power");
  return Field(p, f);
}

void Field::build() {
  const unsigned p = spec_.p, f = spec_.f;
  q_ = ipow_u(p, f);
  add_.assign(q_ * q_, 0);
  mul_.assign(q_ * q_, 0);
  neg_.assign(q_, 0);
  inv_.assign(q_, 0);
  std::vector<std::vector<unsigned>> co(q_, std::vector<unsigned>(f));
  for (unsigned e = 0; e < q_; ++e) {
    unsigned x = e;
    for (unsigned i = 0; i < f; ++i) {
      co[e][i] = x % p;
      x /= p;
    }
  }
  auto encode = [&](const std::vector<unsigned>& c) {
    unsigned e = 0;
    for (unsigned i = f; i-- > 0;) e = e * p + (i < c.size() ? c[i] : 0);
    return static_cast<Elt>(e);
  };
  for (unsigned a = 0; a < q_; ++a) {
    std::vector<unsigned> c(f);
    for (unsigned i = 0; i < f; ++i) c[i] = (p - co[a][i]) % p;
    neg_[a] = encode(c);
    for (unsigned b = 0; b < q_; ++b) {
      for (unsigned i = 0; i < f; ++i) c[i] = (co[a][i] + co[b][i]) % p;
      add_[a * q_ + b] = encode(c);
      std::vector<unsigned> prod(2 * f - 1, 0);
      for (unsigned i = 0; i < f; ++i)
        for (unsigned j = 0; j < f; ++j) prod[i + j] = (prod[i + j] + co[a][i] * co[b][j]) % p;
      mul_[a * q_ + b] = f == 1 ? static_cast<Elt>(prod[0]) : encode(poly_mod(prod, spec_.modulus, p));
    }
  }
  for (unsigned a = 1; a < q_; ++a)
    for (unsigned b = 1; b < q_; ++b)
      if (mul_[a * q_ + b] == 1) inv_[a] = static_cast<Elt>(b);
  gen_ = 0;
  for (unsigned a = 1; a < q_ && !gen_; ++a)
    if (mult_order(static_cast<Elt>(a)) == q_ - 1) gen_ = static_cast<Elt>(a);
}

Elt Field::inv(Elt a) const {
  if (a == 0) throw DivisionByZero();
  return inv_[a];
}

Elt Field::pow(Elt a, unsigned long long e) const {
  if (a == 0) return e == 0 ? 1 : 0;
  e %= (q_ - 1);
  Elt r = 1, b = a;
  while (e) {
    if (e & 1) r = mul(r, b);
    b = mul(b, b);
    e >>= 1;
  }
  return r;
}

Elt Field::frob(Elt a, unsigned k) const {
  for (unsigned i = 0; i < k % spec_.f; ++i) a = pow(a, spec_.p);
  return a;
}

Elt Field::conj(Elt a) const {
  if (spec_.f % 2) throw std::logic_error("conjugation needs a field of square order");
  return frob(a, spec_.f / 2);
}

Elt Field::from_int(long long v) const {
  long long p = spec_.p;
  return static_cast<Elt>(((v % p) + p) % p);
}

bool Field::is_square(Elt a) const {
  if (a == 0 || spec_.p == 2) return true;
  return pow(a, (q_ - 1) / 2) == 1;
}

unsigned Field::mult_order(Elt a) const {
  if (a == 0) return 0;
  Elt x = a;
  unsigned k = 1;
  while (x != 1) {
    x = mul(x, a);
    ++k;
  }
  return k;
}

std::vector<unsigned> Field::coeffs(Elt a) const {
  std::vector<unsigned> c(spec_.f);
  unsigned x = a;
  for (unsigned i = 0; i < spec_.f; ++i) {
    c[i] = x % spec_.p;
    x /= spec_.p;
  }
  return c;
}

Vec vector_from_index(const Field& F, unsigned n, std::uint64_t idx) {
  Vec v(n);
  for (unsigned i = 0; i < n; ++i) {
    v[i] = static_cast<Elt>(idx % F.q());
    idx /= F.q();
  }
  return v;
}

// ---------------------------------------------------------------------------

Matrix Matrix::identity(unsigned n) {
  Matrix m(n, n);
  for (unsigned i = 0; i < n; ++i) m.at(i, i) = 1;
  return m;
}

Vec Matrix::row(unsigned i) const {
  return Vec(a.begin() + static_cast<std::ptrdiff_t>(i) * cols, a.begin() + static_cast<std::ptrdiff_t>(i + 1) * cols);
}

Matrix mat_mul(const Field& F, const Matrix& A, const Matrix& B) {
  if (A.cols != B.rows) throw std::invalid_argument("matrix shapes do not match");
  Matrix C(A.rows, B.cols);
  for (unsigned i = 0; i < A.rows; ++i)
    for (unsigned k = 0; k < A.cols; ++k) {
      Elt aik = A.at(i, k);
      if (!aik) continue;
      for (unsigned j = 0; j < B.cols; ++j) C.at(i, j) = F.add(C.at(i, j), F.mul(aik, B.at(k, j)));
    }
  return C;
}

Matrix mat_transpose(const Matrix& A) {
  Matrix T(A.cols, A.rows);
  for (unsigned i = 0; i < A.rows; ++i)
    for (unsigned j = 0; j < A.cols; ++j) T.at(j, i) = A.at(i, j);
  return T;
}

Matrix mat_frob(const Field& F, const Matrix& A, unsigned k) {
  Matrix B = A;
  if (k % F.f() == 0) return B;
  for (auto& x : B.a) x = F.frob(x, k);
  return B;
}

Matrix mat_scale(const Field& F, const Matrix& A, Elt s) {
  Matrix B = A;
  for (auto& x : B.a) x = F.mul(x, s);
  return B;
}

unsigned rref(const Field& F, Matrix& A) {
  unsigned r = 0;
  for (unsigned c = 0; c < A.cols && r < A.rows; ++c) {
    unsigned piv = r;
    while (piv < A.rows && A.at(piv, c) == 0) ++piv;
    if (piv == A.rows) continue;
    if (piv != r)
      for (unsigned j = 0; j < A.cols; ++j) std::swap(A.at(piv, j), A.at(r, j));
    Elt s = F.inv(A.at(r, c));
    for (unsigned j = 0; j < A.cols; ++j) A.at(r, j) = F.mul(A.at(r, j), s);
    for (unsigned i = 0; i < A.rows; ++i) {
      if (i == r || A.at(i, c) == 0) continue;
      Elt t = F.neg(A.at(i, c));
      for (unsigned j = 0; j < A.cols; ++j) A.at(i, j) = F.add(A.at(i, j), F.mul(t, A.at(r, j)));
    }
    ++r;
  }
  A.a.resize(static_cast<std::size_t>(r) * A.cols);
  A.rows = r;
  return r;
}

unsigned mat_rank(const Field& F, Matrix A) { return rref(F, A); }

Matrix mat_inverse(const Field& F, const Matrix& A) {
  if (A.rows != A.cols) throw std::invalid_argument("inverse of a non-square matrix");
  const unsigned n = A.rows;
  Matrix M(n, 2 * n);
  for (unsigned i = 0; i < n; ++i) {
    for (unsigned j = 0; j < n; ++j) M.at(i, j) = A.at(i, j);
    M.at(i, n + i) = 1;
  }
  Matrix R = M;
  rref(F, R);
  if (R.rows < n) throw std::invalid_argument("matrix is singular");
  for (unsigned i = 0; i < n; ++i)
    if (R.at(i, i) != 1) throw std::invalid_argument("matrix is singular");
  Matrix inv(n, n);
  for (unsigned i = 0; i < n; ++i)
    for (unsigned j = 0; j < n; ++j) inv.at(i, j) = R.at(i, n + j);
  return inv;
}

Vec vec_mat(const Field& F, const Vec& v, const Matrix& A) {
  Vec out(A.cols, 0);
  for (unsigned k = 0; k < A.rows; ++k) {
    if (!v[k]) continue;
    for (unsigned j = 0; j < A.cols; ++j) out[j] = F.add(out[j], F.mul(v[k], A.at(k, j)));
  }
  return out;
}

Matrix left_kernel(const Field& F, const Matrix& A) {
  // v A = 0  <=>  A^T v^T = 0
  Matrix T = mat_transpose(A);
  rref(F, T);
  const unsigned n = A.rows;
  std::vector<int> pivot_of_col(n, -1);
  for (unsigned i = 0; i < T.rows; ++i)
    for (unsigned c = 0; c < n; ++c)
      if (T.at(i, c)) {
        pivot_of_col[c] = static_cast<int>(i);
        break;
      }
  std::vector<Vec> basis;
  for (unsigned free = 0; free < n; ++free) {
    if (pivot_of_col[free] >= 0) continue;
    Vec v(n, 0);
    v[free] = 1;
    for (unsigned c = 0; c < n; ++c)
      if (pivot_of_col[c] >= 0) v[c] = F.neg(T.at(static_cast<unsigned>(pivot_of_col[c]), free));
    basis.push_back(v);
  }
  Matrix K(static_cast<unsigned>(basis.size()), n);
  for (unsigned i = 0; i < basis.size(); ++i)
    for (unsigned j = 0; j < n; ++j) K.at(i, j) = basis[i][j];
  return K;
}

Matrix stack(const Matrix& top, const Matrix& bottom) {
  if (top.rows == 0) return bottom;
  if (bottom.rows == 0) return top;
  if (top.cols != bottom.cols) throw std::invalid_argument("stacking matrices of different widths");
  Matrix S(top.rows + bottom.rows, top.cols);
  std::copy(top.a.begin(), top.a.end(), S.a.begin());
  std::copy(bottom.a.begin(), bottom.a.end(), S.a.begin() + static_cast<std::ptrdiff_t>(top.a.size()));
  return S;
}

bool is_scalar(const Matrix& A) {
  for (unsigned i = 0; i < A.rows; ++i)
    for (unsigned j = 0; j < A.cols; ++j)
      if ((i != j && A.at(i, j)) || (i == j && A.at(i, i) != A.at(0, 0)) || A.at(0, 0) == 0) return false;
  return A.rows == A.cols;
}

Vec SemilinearMap::apply(const Field& F, const Vec& v) const {
  if (frob == 0) return vec_mat(F, v, A);
  Vec w = v;
  for (auto& x : w) x = F.frob(x, frob);
  return vec_mat(F, w, A);
}

SemilinearMap sl_compose(const Field& F, const SemilinearMap& x, const SemilinearMap& y) {
  // v -> ((v^s^a) A)^s^b B = v^s^(a+b) A^s^b B
  return {mat_mul(F, mat_frob(F, x.A, y.frob), y.A), (x.frob + y.frob) % F.f()};
}

SemilinearMap sl_inverse(const Field& F, const SemilinearMap& x) {
  unsigned k = (F.f() - x.frob % F.f()) % F.f();
  return {mat_frob(F, mat_inverse(F, x.A), k), k};
}

SemilinearMap sl_identity(unsigned n) { return {Matrix::identity(n), 0}; }

unsigned projective_order(const Field& F, const SemilinearMap& x, unsigned limit) {
  SemilinearMap y = x;
  for (unsigned k = 1; k <= limit; ++k) {
    if (y.frob == 0 && is_scalar(y.A)) return k;
    y = sl_compose(F, y, x);
  }
  return 0;
}

}  // namespace fpr
