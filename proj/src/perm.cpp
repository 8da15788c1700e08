#include "fpr/perm.hpp"

#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <deque>
#include <numeric>
#include <sstream>

namespace fpr {

namespace {

void require_same_degree(const Permutation& a, const Permutation& b) {
  if (a.degree() != b.degree()) throw DegreeMismatch("permutation degrees differ");
}

std::uint64_t gcd64(std::uint64_t a, std::uint64_t b) { return std::gcd(a, b); }

template <class T>
std::vector<std::size_t> cycle_lengths(const T* img, std::size_t n) {
  std::vector<std::size_t> out;
  std::vector<char> seen(n, 0);
  for (std::size_t s = 0; s < n; ++s) {
    if (seen[s]) continue;
    std::size_t len = 0;
    for (std::size_t j = s; !seen[j]; j = img[j]) {
      seen[j] = 1;
      ++len;
    }
    out.push_back(len);
  }
  return out;
}

template <class T>
std::uint64_t order_of(const T* img, std::size_t n) {
  std::uint64_t o = 1;
  for (std::size_t len : cycle_lengths(img, n)) {
    std::uint64_t g = gcd64(o, len);
    std::uint64_t step = len / g;
    if (o > UINT64_MAX / step) throw std::overflow_error("element order exceeds 64 bits");
    o *= step;
  }
  return o;
}

Permutation from_row(const std::uint16_t* row, std::size_t n) {
  Permutation p;
  p.images.assign(row, row + n);
  return p;
}

std::vector<std::uint16_t> to_row(const Permutation& p) {
  return std::vector<std::uint16_t>(p.images.begin(), p.images.end());
}

}  // namespace

Permutation::Permutation(std::vector<Point> img) : images(std::move(img)) {
  if (!is_bijection(images)) throw std::invalid_argument("image array is not a bijection");
}

Permutation Permutation::identity(std::size_t m) {
  Permutation p;
  p.images.resize(m);
  std::iota(p.images.begin(), p.images.end(), Point{0});
  return p;
}

Permutation Permutation::from_cycles(const std::string& text, std::size_t m) {
  std::vector<Point> img(m);
  std::iota(img.begin(), img.end(), Point{0});
  std::vector<char> used(m, 0);
  std::size_t i = 0;
  auto skip = [&] {
    while (i < text.size() && (std::isspace(static_cast<unsigned char>(text[i])) || text[i] == ','))
      ++i;
  };
  skip();
  while (i < text.size()) {
    if (text[i] != '(') throw std::invalid_argument("expected '(' in cycle notation");
    ++i;
    std::vector<Point> cyc;
    for (;;) {
      skip();
      if (i >= text.size()) throw std::invalid_argument("unterminated cycle");
      if (text[i] == ')') {
        ++i;
        break;
      }
      if (!std::isdigit(static_cast<unsigned char>(text[i])))
        throw std::invalid_argument("bad character in cycle notation");
      std::size_t v = 0;
      while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i])))
        v = v * 10 + static_cast<std::size_t>(text[i++] - '0');
      if (v >= m) throw std::invalid_argument("cycle entry out of range");
      if (used[v]) throw std::invalid_argument("point repeated in cycle notation");
      used[v] = 1;
      cyc.push_back(static_cast<Point>(v));
    }
    for (std::size_t k = 0; k < cyc.size(); ++k) img[cyc[k]] = cyc[(k + 1) % cyc.size()];
    skip();
  }
  return Permutation(std::move(img));
}

bool Permutation::is_identity() const {
  return fixed_point_count(*this) == images.size();
}

std::string Permutation::cycles() const {
  std::ostringstream os;
  std::vector<char> seen(images.size(), 0);
  bool any = false;
  for (std::size_t s = 0; s < images.size(); ++s) {
    if (seen[s] || images[s] == s) continue;
    any = true;
    os << '(';
    for (std::size_t j = s; !seen[j]; j = images[j]) {
      seen[j] = 1;
      if (j != s) os << ' ';
      os << j;
    }
    os << ')';
  }
  if (!any) os << "()";
  return os.str();
}

CapExceeded::CapExceeded(std::size_t c)
    : std::runtime_error("group closure exceeded cap of " + std::to_string(c) + " elements"),
      cap(c) {}

bool is_bijection(const std::vector<Point>& images) {
  std::vector<char> hit(images.size(), 0);
  for (Point v : images) {
    if (v >= images.size() || hit[v]) return false;
    hit[v] = 1;
  }
  return true;
}

Permutation compose(const Permutation& a, const Permutation& b) {
  require_same_degree(a, b);
  Permutation r;
  r.images.resize(a.degree());
  for (std::size_t j = 0; j < a.degree(); ++j) r.images[j] = b.images[a.images[j]];
  return r;
}

Permutation inverse(const Permutation& a) {
  Permutation r;
  r.images.resize(a.degree());
  for (std::size_t j = 0; j < a.degree(); ++j) r.images[a.images[j]] = static_cast<Point>(j);
  return r;
}

Permutation conjugate(const Permutation& x, const Permutation& g) {
  return compose(compose(inverse(g), x), g);
}

Permutation power(const Permutation& a, long long e) {
  Permutation base = e < 0 ? inverse(a) : a;
  unsigned long long k = e < 0 ? static_cast<unsigned long long>(-e) : static_cast<unsigned long long>(e);
  Permutation r = Permutation::identity(a.degree());
  while (k) {
    if (k & 1) r = compose(r, base);
    base = compose(base, base);
    k >>= 1;
  }
  return r;
}

BigInt element_order(const Permutation& a) {
  BigInt o = 1;
  for (std::size_t len : cycle_lengths(a.images.data(), a.degree()))
    o = boost::multiprecision::lcm(o, BigInt(len));
  return o;
}

std::uint64_t small_order(const Permutation& a) { return order_of(a.images.data(), a.degree()); }

std::size_t fixed_point_count(const Permutation& a) {
  return count_fixed_u32(a.images.data(), a.degree());
}

std::size_t orbit_count(const Permutation& a) {
  return cycle_lengths(a.images.data(), a.degree()).size();
}

std::vector<std::size_t> cycle_type(const Permutation& a) {
  auto v = cycle_lengths(a.images.data(), a.degree());
  std::sort(v.rbegin(), v.rend());
  return v;
}

std::size_t default_closure_cap() {
  if (const char* env = std::getenv("FPR_CLOSURE_CAP")) {
    try {
      auto v = std::stoull(env);
      if (v > 0) return static_cast<std::size_t>(v);
    } catch (const std::exception&) {
    }
  }
  return 5'000'000;
}

// ---------------------------------------------------------------------------

ElementStore::ElementStore(std::size_t degree) : degree_(degree), slots_(1024, 0) {
  if (degree > 65536) throw std::invalid_argument("element store supports degree <= 65536");
}

Permutation ElementStore::at(std::size_t i) const { return from_row(row(i), degree_); }

std::uint64_t ElementStore::hash(const std::uint16_t* img) const {
  std::uint64_t h = 0x9e3779b97f4a7c15ULL;
  for (std::size_t j = 0; j < degree_; ++j) {
    h ^= img[j];
    h *= 0x100000001b3ULL;
    h ^= h >> 29;
  }
  return h;
}

std::size_t ElementStore::find(const std::uint16_t* img) const {
  const std::size_t mask = slots_.size() - 1;
  for (std::size_t s = hash(img) & mask;; s = (s + 1) & mask) {
    std::uint32_t e = slots_[s];
    if (e == 0) return npos;
    if (std::equal(img, img + degree_, row(e - 1))) return e - 1;
  }
}

std::size_t ElementStore::find(const Permutation& p) const {
  if (p.degree() != degree_) throw DegreeMismatch("permutation degree does not match group");
  auto r = to_row(p);
  return find(r.data());
}

void ElementStore::grow() {
  std::vector<std::uint32_t> fresh(slots_.size() * 2, 0);
  const std::size_t mask = fresh.size() - 1;
  for (std::size_t i = 0; i < size_; ++i) {
    std::size_t s = hash(row(i)) & mask;
    while (fresh[s]) s = (s + 1) & mask;
    fresh[s] = static_cast<std::uint32_t>(i + 1);
  }
  slots_.swap(fresh);
}

std::pair<std::size_t, bool> ElementStore::insert(const std::uint16_t* img) {
  if (2 * (size_ + 1) > slots_.size()) grow();
  const std::size_t mask = slots_.size() - 1;
  std::size_t s = hash(img) & mask;
  for (;; s = (s + 1) & mask) {
    std::uint32_t e = slots_[s];
    if (e == 0) break;
    if (std::equal(img, img + degree_, row(e - 1))) return {e - 1, false};
  }
  data_.insert(data_.end(), img, img + degree_);
  slots_[s] = static_cast<std::uint32_t>(++size_);
  return {size_ - 1, true};
}

// ---------------------------------------------------------------------------

PermGroup::PermGroup(std::size_t degree, std::vector<Permutation> generators, std::string name)
    : degree_(degree), gens_(std::move(generators)), name_(std::move(name)) {
  if (degree == 0) throw std::invalid_argument("degree must be positive");
  if (gens_.empty()) throw std::invalid_argument("generator list is empty");
  for (const auto& g : gens_)
    if (g.degree() != degree_) throw DegreeMismatch("generator degree differs from group degree");
}

PermGroup PermGroup::from_elements(std::size_t degree, std::shared_ptr<const ElementStore> store,
                                   std::string name) {
  PermGroup g(degree, generating_subset(*store), std::move(name));
  g.elements_ = std::move(store);
  return g;
}

namespace {

std::shared_ptr<ElementStore> bfs_closure(std::size_t degree, const std::vector<Permutation>& gens,
                                          std::size_t cap) {
  auto store = std::make_shared<ElementStore>(degree);
  std::vector<std::uint16_t> cur(degree), next(degree);
  std::iota(cur.begin(), cur.end(), std::uint16_t{0});
  store->insert(cur.data());
  std::vector<std::vector<std::uint16_t>> g16;
  for (const auto& g : gens) g16.push_back(to_row(g));
  for (std::size_t i = 0; i < store->size(); ++i) {
    std::copy(store->row(i), store->row(i) + degree, cur.begin());
    for (const auto& g : g16) {
      for (std::size_t j = 0; j < degree; ++j) next[j] = g[cur[j]];
      if (store->insert(next.data()).second && store->size() > cap) throw CapExceeded(cap);
    }
  }
  return store;
}

}  // namespace

const ElementStore& PermGroup::close(std::size_t cap) const {
  if (!elements_) elements_ = bfs_closure(degree_, gens_, cap);
  return *elements_;
}

const ElementStore& PermGroup::elements() const {
  if (!elements_) throw std::logic_error("group elements are not cached; call close() first");
  return *elements_;
}

std::shared_ptr<const ElementStore> PermGroup::element_ptr() const {
  elements();
  return elements_;
}

BigInt PermGroup::order() const { return BigInt(elements().size()); }

bool PermGroup::contains(const Permutation& p) const {
  if (p.degree() != degree_) return false;
  return elements().find(p) != ElementStore::npos;
}

std::vector<Permutation> generating_subset(const ElementStore& store) {
  const std::size_t n = store.degree();
  std::vector<Permutation> gens;
  std::shared_ptr<ElementStore> sub;
  for (std::size_t i = 0; i < store.size(); ++i) {
    if (sub && sub->size() == store.size()) break;
    if (sub && sub->find(store.row(i)) != ElementStore::npos) continue;
    Permutation p = store.at(i);
    if (p.is_identity()) continue;
    gens.push_back(std::move(p));
    sub = bfs_closure(n, gens, store.size());
  }
  if (gens.empty()) gens.push_back(Permutation::identity(n));
  return gens;
}

std::vector<std::vector<Point>> orbits(const PermGroup& g) {
  const std::size_t n = g.degree();
  std::vector<Point> parent(n);
  std::iota(parent.begin(), parent.end(), Point{0});
  auto find = [&](Point v) {
    while (parent[v] != v) v = parent[v] = parent[parent[v]];
    return v;
  };
  for (const auto& gen : g.generators())
    for (std::size_t j = 0; j < n; ++j) {
      Point a = find(static_cast<Point>(j)), b = find(gen[j]);
      if (a != b) parent[std::max(a, b)] = std::min(a, b);
    }
  std::map<Point, std::vector<Point>> by_root;
  for (std::size_t j = 0; j < n; ++j) by_root[find(static_cast<Point>(j))].push_back(static_cast<Point>(j));
  std::vector<std::vector<Point>> out;
  for (auto& [r, v] : by_root) out.push_back(std::move(v));
  return out;
}

bool is_transitive(const PermGroup& g) { return orbits(g).size() == 1; }

PermGroup point_stabilizer(const PermGroup& g, Point pt) {
  if (pt >= g.degree()) throw std::out_of_range("point out of range");
  const auto& el = g.close();
  auto store = std::make_shared<ElementStore>(g.degree());
  for (std::size_t i = 0; i < el.size(); ++i)
    if (el.row(i)[pt] == pt) store->insert(el.row(i));
  std::size_t orbit_len = 0;
  for (const auto& o : orbits(g))
    if (std::find(o.begin(), o.end(), pt) != o.end()) orbit_len = o.size();
  if (orbit_len * store->size() != el.size())
    throw std::logic_error("orbit-stabilizer check failed");
  return PermGroup::from_elements(g.degree(), std::move(store), g.name() + "_" + std::to_string(pt));
}

// ---------------------------------------------------------------------------

namespace {

struct Conjugators {
  std::vector<std::vector<std::uint16_t>> g, ginv;
};

Conjugators conjugators(const PermGroup& g) {
  Conjugators c;
  for (const auto& x : g.generators()) {
    c.g.push_back(to_row(x));
    c.ginv.push_back(to_row(inverse(x)));
  }
  return c;
}

template <class F>
void conjugacy_bfs(const ElementStore& el, const Conjugators& c, std::size_t start, F&& visit) {
  const std::size_t n = el.degree();
  std::vector<std::uint16_t> buf(n);
  std::vector<std::size_t> queue{start};
  std::set<std::size_t> seen{start};
  visit(start);
  for (std::size_t qi = 0; qi < queue.size(); ++qi) {
    const std::uint16_t* y = el.row(queue[qi]);
    for (std::size_t k = 0; k < c.g.size(); ++k) {
      for (std::size_t j = 0; j < n; ++j) buf[j] = c.g[k][y[c.ginv[k][j]]];
      std::size_t idx = el.find(buf.data());
      if (idx == ElementStore::npos) throw std::logic_error("conjugate not found in group");
      if (seen.insert(idx).second) {
        queue.push_back(idx);
        visit(idx);
      }
    }
  }
}

}  // namespace

ClassPartition conjugacy_classes(const PermGroup& g) {
  const auto& el = g.close();
  const auto c = conjugators(g);
  ClassPartition out;
  const std::uint32_t unset = UINT32_MAX;
  out.class_of.assign(el.size(), unset);
  const std::size_t n = el.degree();
  std::vector<std::uint16_t> buf(n);
  std::vector<std::size_t> queue;
  for (std::size_t i = 0; i < el.size(); ++i) {
    if (out.class_of[i] != unset) continue;
    const auto id = static_cast<std::uint32_t>(out.classes.size());
    queue.assign(1, i);
    out.class_of[i] = id;
    for (std::size_t qi = 0; qi < queue.size(); ++qi) {
      const std::uint16_t* y = el.row(queue[qi]);
      for (std::size_t k = 0; k < c.g.size(); ++k) {
        for (std::size_t j = 0; j < n; ++j) buf[j] = c.g[k][y[c.ginv[k][j]]];
        std::size_t idx = el.find(buf.data());
        if (idx == ElementStore::npos) throw std::logic_error("conjugate not found in group");
        if (out.class_of[idx] == unset) {
          out.class_of[idx] = id;
          queue.push_back(idx);
        }
      }
    }
    out.classes.push_back({i, queue.size(), order_of(el.row(i), n)});
  }
  return out;
}

std::vector<std::size_t> class_members(const PermGroup& g, const Permutation& x) {
  const auto& el = g.close();
  std::size_t start = el.find(x);
  if (start == ElementStore::npos) throw std::invalid_argument("element is not in the group");
  std::vector<std::size_t> out;
  conjugacy_bfs(el, conjugators(g), start, [&](std::size_t i) { out.push_back(i); });
  std::sort(out.begin(), out.end());
  return out;
}

BigRational brute_fpr(const PermGroup& g, const Permutation& x) {
  if (x.degree() != g.degree()) throw DegreeMismatch("element degree differs from group degree");
  if (!is_transitive(g)) throw std::invalid_argument("group is not transitive");
  return BigRational(BigInt(fixed_point_count(x)), BigInt(x.degree()));
}

BigRational brute_fpr_via_classes(const PermGroup& g, const PermGroup& h, const Permutation& x) {
  if (h.degree() != g.degree()) throw DegreeMismatch("subgroup degree differs");
  g.close();
  const auto& hel = h.close();
  for (std::size_t i = 0; i < hel.size(); ++i)
    if (g.elements().find(hel.row(i)) == ElementStore::npos)
      throw std::invalid_argument("h is not a subgroup of g");
  auto members = class_members(g, x);
  std::size_t inside = 0;
  for (std::size_t i : members)
    if (hel.find(g.elements().row(i)) != ElementStore::npos) ++inside;
  return BigRational(BigInt(inside), BigInt(members.size()));
}

std::size_t brute_index(const Permutation& x) { return x.degree() - orbit_count(x); }

MinIndexResult brute_min_index(const PermGroup& g) {
  const auto& el = g.close();
  if (el.size() < 2) throw std::invalid_argument("trivial group has no minimal index");
  const std::size_t n = el.degree();
  MinIndexResult r;
  r.value = SIZE_MAX;
  for (std::size_t i = 0; i < el.size(); ++i) {
    const std::uint16_t* row = el.row(i);
    if (count_fixed_u16(row, n) == n) continue;
    std::size_t ind = n - cycle_lengths(row, n).size();
    if (ind < r.value) {
      r.value = ind;
      r.witness_orders.clear();
    }
    if (ind == r.value) r.witness_orders.insert(order_of(row, n));
  }
  return r;
}

std::size_t brute_minimal_degree(const PermGroup& g) {
  const auto& el = g.close();
  if (el.size() < 2) throw std::invalid_argument("trivial group has no minimal degree");
  const std::size_t n = el.degree();
  std::size_t best = SIZE_MAX;
  for (std::size_t i = 0; i < el.size(); ++i) {
    std::size_t f = count_fixed_u16(el.row(i), n);
    if (f != n) best = std::min(best, n - f);
  }
  return best;
}

std::map<std::uint64_t, MaxFpr> brute_max_fpr_by_prime(const PermGroup& g) {
  if (!is_transitive(g)) throw std::invalid_argument("group is not transitive");
  const auto& el = g.close();
  const std::size_t n = el.degree();
  std::map<std::uint64_t, std::pair<std::size_t, std::size_t>> best;  // prime -> (fixed, index)
  for (std::size_t i = 0; i < el.size(); ++i) {
    std::uint64_t o = order_of(el.row(i), n);
    if (o < 2 || !is_prime(o)) continue;
    std::size_t f = count_fixed_u16(el.row(i), n);
    auto it = best.find(o);
    if (it == best.end() || f > it->second.first) best[o] = {f, i};
  }
  std::map<std::uint64_t, MaxFpr> out;
  for (auto& [r, fi] : best)
    out.emplace(r, MaxFpr{BigRational(BigInt(fi.first), BigInt(n)), el.at(fi.second)});
  return out;
}

// ---------------------------------------------------------------------------

SetFamilyAction::SetFamilyAction(std::vector<std::vector<Point>> sets, std::string label)
    : sets_(std::move(sets)), label_(std::move(label)) {
  for (std::size_t i = 0; i < sets_.size(); ++i) {
    std::sort(sets_[i].begin(), sets_[i].end());
    if (!index_.emplace(sets_[i], static_cast<Point>(i)).second)
      throw std::invalid_argument("duplicate set in family");
  }
}

std::shared_ptr<SetFamilyAction> SetFamilyAction::subsets(std::size_t n, std::size_t l) {
  std::vector<std::vector<Point>> all;
  std::vector<Point> cur;
  auto rec = [&](auto&& self, Point start) -> void {
    if (cur.size() == l) {
      all.push_back(cur);
      return;
    }
    for (Point v = start; v + (l - cur.size()) <= n; ++v) {
      cur.push_back(v);
      self(self, v + 1);
      cur.pop_back();
    }
  };
  rec(rec, 0);
  return std::make_shared<SetFamilyAction>(std::move(all), std::to_string(l) + "-subsets");
}

Point SetFamilyAction::lookup(std::vector<Point>& key) const {
  std::sort(key.begin(), key.end());
  auto it = index_.find(key);
  if (it == index_.end()) throw std::invalid_argument("set family is not invariant");
  return it->second;
}

Point SetFamilyAction::image(const Permutation& base, Point pt) const {
  std::vector<Point> key;
  key.reserve(sets_[pt].size());
  for (Point v : sets_[pt]) key.push_back(base[v]);
  return lookup(key);
}

Permutation SetFamilyAction::apply(const Permutation& base) const {
  Permutation r;
  r.images.resize(sets_.size());
  for (std::size_t i = 0; i < sets_.size(); ++i) r.images[i] = image(base, static_cast<Point>(i));
  return r;
}

namespace {

void canon_partition(std::vector<std::vector<Point>>& p) {
  for (auto& b : p) std::sort(b.begin(), b.end());
  std::sort(p.begin(), p.end());
}

}  // namespace

PartitionAction::PartitionAction(std::vector<std::vector<std::vector<Point>>> parts, std::string label)
    : parts_(std::move(parts)), label_(std::move(label)) {
  for (std::size_t i = 0; i < parts_.size(); ++i) {
    canon_partition(parts_[i]);
    if (!index_.emplace(parts_[i], static_cast<Point>(i)).second)
      throw std::invalid_argument("duplicate partition");
  }
}

std::shared_ptr<PartitionAction> PartitionAction::uniform(std::size_t n, std::size_t b) {
  if (b == 0 || n % b != 0) throw std::invalid_argument("block size must divide n");
  std::vector<std::vector<std::vector<Point>>> all;
  std::vector<std::vector<Point>> cur;
  std::vector<char> used(n, 0);
  auto rec = [&](auto&& self) -> void {
    std::size_t first = 0;
    while (first < n && used[first]) ++first;
    if (first == n) {
      all.push_back(cur);
      return;
    }
    std::vector<Point> block{static_cast<Point>(first)};
    used[first] = 1;
    auto fill = [&](auto&& fself, std::size_t from) -> void {
      if (block.size() == b) {
        cur.push_back(block);
        self(self);
        cur.pop_back();
        return;
      }
      for (std::size_t v = from; v < n; ++v) {
        if (used[v]) continue;
        used[v] = 1;
        block.push_back(static_cast<Point>(v));
        fself(fself, v + 1);
        block.pop_back();
        used[v] = 0;
      }
    };
    fill(fill, first + 1);
    used[first] = 0;
  };
  rec(rec);
  return std::make_shared<PartitionAction>(
      std::move(all), "partitions into " + std::to_string(n / b) + " blocks of size " + std::to_string(b));
}

Point PartitionAction::image(const Permutation& base, Point pt) const {
  auto key = parts_[pt];
  for (auto& blk : key)
    for (auto& v : blk) v = base[v];
  canon_partition(key);
  auto it = index_.find(key);
  if (it == index_.end()) throw std::invalid_argument("partition family is not invariant");
  return it->second;
}

Permutation PartitionAction::apply(const Permutation& base) const {
  Permutation r;
  r.images.resize(parts_.size());
  for (std::size_t i = 0; i < parts_.size(); ++i) r.images[i] = image(base, static_cast<Point>(i));
  return r;
}

CosetAction::CosetAction(const PermGroup& g, const PermGroup& h, std::string label)
    : label_(std::move(label)) {
  keep_ = g.element_ptr();
  store_ = keep_.get();
  const auto& hel = h.close();
  const std::size_t n = store_->degree();
  if (h.degree() != n) throw DegreeMismatch("subgroup degree differs");
  const std::uint32_t unset = UINT32_MAX;
  coset_of_.assign(store_->size(), unset);
  std::vector<std::uint16_t> buf(n);
  for (std::size_t i = 0; i < store_->size(); ++i) {
    if (coset_of_[i] != unset) continue;
    const auto c = static_cast<std::uint32_t>(reps_.size());
    reps_.push_back(i);
    const std::uint16_t* gi = store_->row(i);
    for (std::size_t k = 0; k < hel.size(); ++k) {
      const std::uint16_t* hk = hel.row(k);
      for (std::size_t j = 0; j < n; ++j) buf[j] = gi[hk[j]];
      std::size_t idx = store_->find(buf.data());
      if (idx == ElementStore::npos) throw std::invalid_argument("h is not a subgroup of g");
      coset_of_[idx] = c;
    }
  }
}

Point CosetAction::image(const Permutation& base, Point pt) const {
  const std::size_t n = store_->degree();
  const std::uint16_t* r = store_->row(reps_[pt]);
  std::vector<std::uint16_t> buf(n);
  for (std::size_t j = 0; j < n; ++j) buf[j] = static_cast<std::uint16_t>(base[r[j]]);
  std::size_t idx = store_->find(buf.data());
  if (idx == ElementStore::npos) throw std::invalid_argument("element is not in the group");
  return coset_of_[idx];
}

Permutation CosetAction::apply(const Permutation& base) const {
  Permutation r;
  r.images.resize(reps_.size());
  for (std::size_t i = 0; i < reps_.size(); ++i) r.images[i] = image(base, static_cast<Point>(i));
  return r;
}

ProductAction::ProductAction(std::size_t n, std::size_t k) : n_(n), k_(k), size_(1) {
  for (std::size_t i = 0; i < k; ++i) size_ *= n;
}

std::string ProductAction::describe() const {
  return "product action on " + std::to_string(n_) + "^" + std::to_string(k_) + " points";
}

Point ProductAction::image(const Permutation& base, Point pt) const {
  if (base.degree() != n_ * k_) throw DegreeMismatch("product action expects degree n*k");
  std::size_t t = pt, out = 0;
  for (std::size_t i = 0; i < k_; ++i) {
    std::size_t gamma = t % n_;
    t /= n_;
    Point img = base[i * n_ + gamma];
    std::size_t blk = img / n_, val = img % n_;
    std::size_t w = 1;
    for (std::size_t s = 0; s < blk; ++s) w *= n_;
    out += val * w;
  }
  return static_cast<Point>(out);
}

Permutation ProductAction::apply(const Permutation& base) const {
  Permutation r;
  r.images.resize(size_);
  for (std::size_t i = 0; i < size_; ++i) r.images[i] = image(base, static_cast<Point>(i));
  return r;
}

std::vector<Permutation> wreath_generators(const std::vector<Permutation>& lgens, std::size_t n,
                                           std::size_t k) {
  std::vector<Permutation> out;
  for (const auto& l : lgens) {
    if (l.degree() != n) throw DegreeMismatch("component generator degree differs");
    auto p = Permutation::identity(n * k);
    for (std::size_t j = 0; j < n; ++j) p.images[j] = l[j];
    out.push_back(std::move(p));
  }
  if (k >= 2) {
    auto swap01 = Permutation::identity(n * k);
    for (std::size_t j = 0; j < n; ++j) {
      swap01.images[j] = static_cast<Point>(n + j);
      swap01.images[n + j] = static_cast<Point>(j);
    }
    out.push_back(std::move(swap01));
  }
  if (k >= 3) {
    auto cyc = Permutation::identity(n * k);
    for (std::size_t b = 0; b < k; ++b)
      for (std::size_t j = 0; j < n; ++j) cyc.images[b * n + j] = static_cast<Point>(((b + 1) % k) * n + j);
    out.push_back(std::move(cyc));
  }
  return out;
}

std::vector<ClassProfile> class_profile(const ActedGroup& g) { return class_profile(g, conjugacy_classes(g.base)); }

std::vector<ClassProfile> class_profile(const ActedGroup& g, const ClassPartition& cp) {
  const auto& el = g.base.elements();
  std::vector<ClassProfile> out;
  out.reserve(cp.classes.size());
  for (const auto& c : cp.classes) {
    Permutation rep = el.at(c.rep);
    Permutation acted = g.act(rep);
    out.push_back({rep, c.size, c.order, fixed_point_count(acted), orbit_count(acted)});
  }
  return out;
}

PermGroup acted_stabilizer(const ActedGroup& g, Point pt) {
  if (!g.action) return point_stabilizer(g.base, pt);
  const auto& el = g.base.close();
  auto store = std::make_shared<ElementStore>(el.degree());
  for (std::size_t i = 0; i < el.size(); ++i) {
    Permutation p = el.at(i);
    if (g.action->image(p, pt) == pt) store->insert(el.row(i));
  }
  return PermGroup::from_elements(el.degree(), std::move(store), g.base.name() + "_stab");
}

}  // namespace fpr
