#include <algorithm>
#include <set>
#include <unordered_map>
#include <unordered_set>

#include "fpr/gf.hpp"

namespace fpr {

namespace {

std::uint64_t upow(std::uint64_t b, unsigned e) {
  std::uint64_t r = 1;
  while (e--) r *= b;
  return r;
}

std::string bytes_of(const Matrix& M) { return std::string(M.a.begin(), M.a.end()); }

Matrix matrix_of(const std::string& key, unsigned rows, unsigned n) {
  Matrix M(rows, n);
  for (std::size_t i = 0; i < M.a.size(); ++i) M.a[i] = static_cast<Elt>(key[i]);
  return M;
}

int form_point_type(const Field& F, const FormSpec& form, const Vec& d) {
  const unsigned n = form.n, k = n / 2;
  const std::uint64_t total = upow(F.q(), n);
  std::uint64_t zeros = 0;
  for (std::uint64_t idx = 0; idx < total; ++idx)
    if (form_point_value(F, form, d, vector_from_index(F, n, idx)) == 0) ++zeros;
  return zeros == upow(F.q(), n - 1) + upow(F.q(), k) - upow(F.q(), k - 1) ? 1 : -1;
}

Elt discriminant_class(const Field& F, const FormSpec& form, const Matrix& W) {
  // determinant of the symmetric matrix of Q on W (the polar Gram halved)
  Matrix G(W.rows, W.rows);
  Elt half = F.inv(F.from_int(2));
  for (unsigned i = 0; i < W.rows; ++i)
    for (unsigned j = 0; j < W.rows; ++j) G.at(i, j) = F.mul(half, form_value(F, form, W.row(i), W.row(j)));
  // determinant by elimination
  Elt det = 1;
  for (unsigned c = 0; c < G.rows; ++c) {
    unsigned piv = c;
    while (piv < G.rows && G.at(piv, c) == 0) ++piv;
    if (piv == G.rows) return 0;
    if (piv != c) {
      for (unsigned j = 0; j < G.cols; ++j) std::swap(G.at(piv, j), G.at(c, j));
      det = F.neg(det);
    }
    det = F.mul(det, G.at(c, c));
    Elt inv = F.inv(G.at(c, c));
    for (unsigned i = c + 1; i < G.rows; ++i) {
      Elt t = F.mul(G.at(i, c), inv);
      if (!t) continue;
      for (unsigned j = c; j < G.cols; ++j) G.at(i, j) = F.sub(G.at(i, j), F.mul(t, G.at(c, j)));
    }
  }
  return det;
}

}  // namespace

// Q_d(v) = sum d_i v_i^2 + sum_{i<j} B_ij v_i v_j for the symplectic Gram B.
Elt form_point_value(const Field& F, const FormSpec& form, const Vec& d, const Vec& v) {
  Elt s = 0;
  for (unsigned i = 0; i < form.n; ++i) {
    if (!v[i]) continue;
    s = F.add(s, F.mul(d[i], F.mul(v[i], v[i])));
    for (unsigned j = i + 1; j < form.n; ++j)
      if (v[j] && form.gram.at(i, j)) s = F.add(s, F.mul(form.gram.at(i, j), F.mul(v[i], v[j])));
  }
  return s;
}

Matrix PointSet::basis(std::size_t i) const { return matrix_of(keys.at(i), dim, n); }

std::uint32_t PointSet::find(const std::string& key) const {
  auto it = index.find(key);
  if (it == index.end()) throw std::out_of_range("point not in the point set");
  return it->second;
}

PointSet make_point_set(std::vector<std::string> keys, unsigned n, unsigned dim, PointSet::Kind kind) {
  std::sort(keys.begin(), keys.end());
  keys.erase(std::unique(keys.begin(), keys.end()), keys.end());
  PointSet ps;
  ps.kind = kind;
  ps.n = n;
  ps.dim = dim;
  ps.keys = std::move(keys);
  ps.index.reserve(ps.keys.size() * 2);
  for (std::uint32_t i = 0; i < ps.keys.size(); ++i) ps.index.emplace(ps.keys[i], i);
  return ps;
}

std::string subspace_key(const Field& F, Matrix basis) {
  unsigned rows = basis.rows;
  if (rref(F, basis) != rows) throw std::invalid_argument("basis rows are dependent");
  return bytes_of(basis);
}

std::vector<Matrix> enumerate_subspaces(const Field& F, unsigned n, unsigned m) {
  std::vector<Matrix> out;
  if (m > n) return out;
  std::vector<unsigned> piv(m);
  for (unsigned i = 0; i < m; ++i) piv[i] = i;
  while (true) {
    // free entries: row r, column c > piv[r] not a pivot column
    std::vector<std::pair<unsigned, unsigned>> free;
    for (unsigned r = 0; r < m; ++r)
      for (unsigned c = piv[r] + 1; c < n; ++c)
        if (std::find(piv.begin(), piv.end(), c) == piv.end()) free.emplace_back(r, c);
    const std::uint64_t total = upow(F.q(), static_cast<unsigned>(free.size()));
    for (std::uint64_t idx = 0; idx < total; ++idx) {
      Matrix M(m, n);
      for (unsigned r = 0; r < m; ++r) M.at(r, piv[r]) = 1;
      std::uint64_t x = idx;
      for (auto [r, c] : free) {
        M.at(r, c) = static_cast<Elt>(x % F.q());
        x /= F.q();
      }
      out.push_back(std::move(M));
    }
    // next pivot combination
    int i = static_cast<int>(m) - 1;
    while (i >= 0 && piv[i] == n - m + static_cast<unsigned>(i)) --i;
    if (i < 0) break;
    ++piv[i];
    for (unsigned j = static_cast<unsigned>(i) + 1; j < m; ++j) piv[j] = piv[j - 1] + 1;
  }
  return out;
}

PointSet enumerate_action_points(const ActionSpec& action, const FormSpec& form, const Field& F,
                                 std::size_t budget) {
  const unsigned n = form.n;
  auto check_budget = [&](std::size_t count) {
    if (count > budget) throw PointBudgetExceeded("point count " + std::to_string(count) + " exceeds the budget");
  };
  auto all_spaces_budget = [&](unsigned m) {
    BigInt c = gaussian_binomial(n, m, BigInt(F.q()));
    if (c > BigInt(budget) * 4) throw PointBudgetExceeded("subspace enumeration exceeds the budget");
  };

  switch (action.kind) {
    case ActionKind::NaturalPoints:
    case ActionKind::P: {
      unsigned m = action.kind == ActionKind::NaturalPoints ? 1 : action.m;
      if (m < 1 || m > n) throw BadSpec("subspace dimension out of range");
      if (form.kind == FormKind::Linear) {
        all_spaces_budget(m);
        std::vector<std::string> keys;
        for (auto& M : enumerate_subspaces(F, n, m)) keys.push_back(bytes_of(M));
        check_budget(keys.size());
        return make_point_set(std::move(keys), n, m, PointSet::Kind::Subspaces);
      }
      all_spaces_budget(1);
      std::vector<Vec> points;
      for (auto& M : enumerate_subspaces(F, n, 1))
        if (is_singular_vector(F, form, M.row(0))) points.push_back(M.row(0));
      // c_p = G conj(p)^T so that B(u,p) = u . c_p
      std::vector<Vec> cols;
      for (const auto& p : points) {
        Vec c(n, 0);
        for (unsigned i = 0; i < n; ++i)
          for (unsigned j = 0; j < n; ++j)
            c[i] = F.add(c[i], F.mul(form.gram.at(i, j), form.kind == FormKind::Unitary ? F.conj(p[j]) : p[j]));
        cols.push_back(c);
      }
      auto dot = [&](const Vec& u, const Vec& c) {
        Elt s = 0;
        for (unsigned i = 0; i < n; ++i)
          if (u[i] && c[i]) s = F.add(s, F.mul(u[i], c[i]));
        return s;
      };
      std::unordered_map<std::string, std::uint32_t> point_index;
      for (std::uint32_t i = 0; i < points.size(); ++i) point_index.emplace(std::string(points[i].begin(), points[i].end()), i);
      // Largest point index inside a space; a space is reached from each hyperplane avoiding its
      // largest point, extended by a point beyond that hyperplane's own maximum.
      auto max_point = [&](const Matrix& S) {
        std::uint32_t best = 0;
        const std::uint64_t total = upow(F.q(), S.rows);
        for (std::uint64_t idx = 1; idx < total; ++idx) {
          Vec v(n, 0);
          std::uint64_t x = idx;
          for (unsigned r = 0; r < S.rows; ++r) {
            Elt c = static_cast<Elt>(x % F.q());
            x /= F.q();
            for (unsigned j = 0; c && j < n; ++j) v[j] = F.add(v[j], F.mul(c, S.at(r, j)));
          }
          unsigned lead = 0;
          while (v[lead] == 0) ++lead;
          if (v[lead] != 1) continue;  // one representative per point
          best = std::max(best, point_index.at(std::string(v.begin(), v.end())));
        }
        return best;
      };
      std::vector<std::string> level;
      for (const auto& p : points) level.emplace_back(p.begin(), p.end());
      for (unsigned d = 2; d <= m; ++d) {
        std::unordered_set<std::string> seen;
        for (const auto& key : level) {
          Matrix S = matrix_of(key, d - 1, n);
          const std::uint32_t top = max_point(S);
          for (std::uint32_t p = top + 1; p < points.size(); ++p) {
            bool ok = true;
            for (unsigned r = 0; r < S.rows && ok; ++r)
              if (dot(S.row(r), cols[p])) ok = false;
            if (!ok) continue;
            Matrix T = stack(S, Matrix(1, n));
            for (unsigned j = 0; j < n; ++j) T.at(d - 1, j) = points[p][j];
            rref(F, T);
            if (seen.insert(bytes_of(T)).second) check_budget(seen.size());
          }
        }
        level.assign(seen.begin(), seen.end());
      }
      return make_point_set(std::move(level), n, m, PointSet::Kind::Subspaces);
    }
    case ActionKind::N: {
      const unsigned m = action.m;
      if (form.kind == FormKind::Linear) throw BadSpec("nondegenerate subspaces need a form");
      if (m < 1 || m >= n) throw BadSpec("subspace dimension out of range");
      all_spaces_budget(m);
      std::vector<std::string> keys;
      for (auto& W : enumerate_subspaces(F, n, m)) {
        if (!is_nondegenerate(F, form, W)) continue;
        if (form.kind == FormKind::Quadratic) {
          if (F.p() == 2 && m % 2) continue;
          if (m % 2 == 0) {
            if (action.eta && subspace_type(F, form, W) != action.eta) continue;
          } else if (n % 2) {
            if (action.eta && subspace_type(F, form, perp(F, form, W)) != action.eta) continue;
          } else {
            if (!F.is_square(discriminant_class(F, form, W))) continue;  // square m-spaces
          }
        }
        keys.push_back(bytes_of(W));
      }
      check_budget(keys.size());
      return make_point_set(std::move(keys), n, m, PointSet::Kind::Subspaces);
    }
    case ActionKind::N1Nonsingular: {
      if (form.kind != FormKind::Quadratic) throw BadSpec("nonsingular points need a quadratic form");
      all_spaces_budget(1);
      std::vector<std::string> keys;
      for (auto& W : enumerate_subspaces(F, n, 1))
        if (quad_value(F, form, W.row(0)) != 0) keys.push_back(bytes_of(W));
      check_budget(keys.size());
      return make_point_set(std::move(keys), n, 1, PointSet::Kind::Subspaces);
    }
    case ActionKind::OEpsilon: {
      if (form.kind != FormKind::Symplectic || F.p() != 2) throw BadSpec("O_eps points need a symplectic form in characteristic 2");
      const std::uint64_t total = upow(F.q(), n);
      check_budget(static_cast<std::size_t>(total));
      std::vector<std::string> keys;
      for (std::uint64_t idx = 0; idx < total; ++idx) {
        Vec d = vector_from_index(F, n, idx);
        if (form_point_type(F, form, d) == action.eta) keys.emplace_back(d.begin(), d.end());
      }
      return make_point_set(std::move(keys), n, 0, PointSet::Kind::Forms);
    }
    default:
      throw BadSpec("action " + action.label() + " is not a subspace action");
  }
}

Permutation induced_permutation(const Field& F, const SemilinearMap& x, const PointSet& pts, const FormSpec& form) {
  Permutation perm;
  perm.images.resize(pts.size());
  if (pts.kind == PointSet::Kind::Forms) {
    if (x.frob % F.f()) throw std::invalid_argument("form points need a linear map");
    Matrix ginv = mat_inverse(F, x.A);
    std::vector<Vec> rows;
    for (unsigned i = 0; i < pts.n; ++i) rows.push_back(ginv.row(i));
    for (std::size_t i = 0; i < pts.size(); ++i) {
      Vec d(pts.keys[i].begin(), pts.keys[i].end());
      std::string key(pts.n, '\0');
      for (unsigned j = 0; j < pts.n; ++j) key[j] = static_cast<char>(form_point_value(F, form, d, rows[j]));
      perm.images[i] = pts.find(key);
    }
    return perm;
  }
  for (std::size_t i = 0; i < pts.size(); ++i) {
    Matrix B = pts.basis(i);
    Matrix img(B.rows, B.cols);
    for (unsigned r = 0; r < B.rows; ++r) {
      Vec v = x.apply(F, B.row(r));
      for (unsigned j = 0; j < B.cols; ++j) img.at(r, j) = v[j];
    }
    auto it = pts.index.find(subspace_key(F, img));
    if (it == pts.index.end()) throw std::invalid_argument("element maps a point outside the point set");
    perm.images[i] = it->second;
  }
  return perm;
}

std::size_t count_fixed_subspaces(const Field& F, const Matrix& x, unsigned m) {
  std::size_t count = 0;
  for (auto& W : enumerate_subspaces(F, x.rows, m)) {
    Matrix img = mat_mul(F, W, x);
    if (mat_rank(F, stack(W, img)) == m) ++count;
  }
  return count;
}

BigInt fixed_mspaces_semisimple(unsigned e, unsigned a, unsigned i, unsigned m, unsigned q) {
  if (i == 0 || m < i || m - i >= i) throw NotApplicable("needs 0 <= m - i < i");
  const unsigned k = m - i;
  BigInt Q(q);
  return gaussian_binomial(e, m, Q) + gaussian_binomial(e, k, Q) * ((ipow(Q, i * a) - 1) / (ipow(Q, i) - 1));
}

// ---------------------------------------------------------------------------

GeneratorPool::GeneratorPool(const Field& F, const FormSpec& form) : F_(&F) {
  const unsigned n = form.n;
  std::set<std::string> seen;
  auto push = [&](Matrix M) {
    if (seen.insert(bytes_of(M)).second) pool_.push_back(std::move(M));
  };
  // short vectors: first nonzero coordinate 1, at most `support` nonzero entries
  auto short_vectors = [&](unsigned support) {
    std::vector<Vec> out;
    for (auto& W : enumerate_subspaces(F, n, 1)) {
      Vec v = W.row(0);
      unsigned nz = static_cast<unsigned>(std::count_if(v.begin(), v.end(), [](Elt c) { return c != 0; }));
      if (nz <= support) out.push_back(v);
    }
    return out;
  };
  switch (form.kind) {
    case FormKind::Linear:
      for (unsigned i = 0; i < n; ++i)
        for (unsigned j = 0; j < n; ++j) {
          if (i == j) continue;
          push(elementary_transvection(F, n, i, j, 1));
          if (F.f() > 1) push(elementary_transvection(F, n, i, j, F.gen()));
        }
      break;
    case FormKind::Symplectic:
      for (const auto& w : short_vectors(2)) {
        push(symplectic_transvection(F, form, w, 1));
        if (F.f() > 1) push(symplectic_transvection(F, form, w, F.gen()));
      }
      break;
    case FormKind::Unitary: {
      Elt a = 0;
      for (unsigned t = 1; t < F.q() && !a; ++t)
        if (F.add(static_cast<Elt>(t), F.conj(static_cast<Elt>(t))) == 0) a = static_cast<Elt>(t);
      for (const auto& w : short_vectors(2))
        if (is_singular_vector(F, form, w)) {
          push(unitary_transvection(F, form, w, a));
          // scalar multiples of w give the other norms
          for (unsigned c = 2; c < F.q(); ++c) {
            Vec cw = w;
            for (auto& x : cw) x = F.mul(x, static_cast<Elt>(c));
            push(unitary_transvection(F, form, cw, a));
          }
        }
      break;
    }
    case FormKind::Quadratic:
      for (const auto& w : short_vectors(3))
        if (quad_value(F, form, w) != 0) push(orthogonal_reflection(F, form, w));
      break;
  }
}

Matrix GeneratorPool::random_element(std::mt19937_64& rng, unsigned length) const {
  std::uniform_int_distribution<std::size_t> pick(0, pool_.size() - 1);
  Matrix M = pool_[pick(rng)];
  for (unsigned i = 1; i < length; ++i) M = mat_mul(*F_, M, pool_[pick(rng)]);
  return M;
}

}  // namespace fpr
