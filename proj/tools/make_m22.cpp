// Writes data/m22_2.json: generators of M22:2 on 22 points.
//
// M24 acts on GF(23) u {inf} (inf = 23) preserving the extended quadratic residue code; M22:2 is
// the setwise stabilizer of {0, inf}, acting on the other 22 points.

#include <bitset>
#include <fstream>
#include <iostream>
#include <random>
#include <set>

#include "fpr/harness.hpp"

using namespace fpr;

namespace {

constexpr unsigned P = 23, INF = 23, N = 24;

unsigned md(long long v) { return static_cast<unsigned>(((v % P) + P) % P); }

unsigned inv_mod(unsigned a) {
  for (unsigned b = 1; b < P; ++b)
    if (a * b % P == 1) return b;
  throw std::logic_error("no inverse");
}

bool is_qr(unsigned a) {
  for (unsigned b = 1; b < P; ++b)
    if (b * b % P == a) return true;
  return false;
}

using Word = std::bitset<N>;

// Row-reduced basis of the span.
std::vector<Word> span_basis(std::vector<Word> rows) {
  std::vector<Word> basis;
  for (unsigned bit = 0; bit < N; ++bit) {
    auto it = std::find_if(rows.begin(), rows.end(), [&](const Word& w) { return w[bit]; });
    if (it == rows.end()) continue;
    Word pivot = *it;
    rows.erase(it);
    for (auto& w : rows)
      if (w[bit]) w ^= pivot;
    for (auto& w : basis)
      if (w[bit]) w ^= pivot;
    basis.push_back(pivot);
  }
  return basis;
}

std::set<unsigned long> codewords(const std::vector<Word>& basis) {
  std::set<unsigned long> out;
  for (unsigned long mask = 0; mask < (1ul << basis.size()); ++mask) {
    Word w;
    for (std::size_t i = 0; i < basis.size(); ++i)
      if (mask >> i & 1) w ^= basis[i];
    out.insert(w.to_ulong());
  }
  return out;
}

Permutation from_map(const std::function<unsigned(unsigned)>& f) {
  std::vector<Point> img(N);
  for (unsigned t = 0; t < N; ++t) img[t] = f(t);
  return Permutation(img);
}

bool preserves(const Permutation& g, const std::set<unsigned long>& code) {
  for (unsigned long c : code) {
    Word w(c), img;
    for (unsigned i = 0; i < N; ++i)
      if (w[i]) img[g[i]] = true;
    if (!code.count(img.to_ulong())) return false;
  }
  return true;
}

}  // namespace

int main(int argc, char** argv) {
  const std::string out = argc > 1 ? argv[1] : std::string(FPR_DATA_DIR) + "/m22_2.json";

  // translates of the non-residues, extended by an overall parity bit at inf
  std::vector<Word> rows;
  for (unsigned s = 0; s < P; ++s) {
    Word w;
    for (unsigned t = 1; t < P; ++t)
      if (!is_qr(t)) w[md(t + s)] = true;
    w[INF] = w.count() % 2;
    rows.push_back(w);
  }
  Word all;
  all.set();
  rows.push_back(all);
  auto basis = span_basis(rows);
  auto code = codewords(basis);
  std::size_t min_weight = N;
  for (unsigned long c : code)
    if (c) min_weight = std::min(min_weight, Word(c).count());
  if (basis.size() != 12 || min_weight != 8) {
    std::cerr << "code has dimension " << basis.size() << " and minimum weight " << min_weight << "\n";
    return 1;
  }

  auto lift = [](const std::function<unsigned(unsigned)>& f, unsigned at_inf, unsigned to_inf) {
    return from_map([=](unsigned t) { return t == INF ? at_inf : (t == to_inf ? INF : f(t)); });
  };
  const unsigned i9 = inv_mod(9);
  std::vector<Permutation> m24 = {
      lift([](unsigned t) { return md(t + 1); }, INF, P),
      lift([](unsigned t) { return md(2 * t); }, INF, P),
      lift([](unsigned t) { return md(-static_cast<long long>(inv_mod(t))); }, 0, 0),
      lift([=](unsigned t) { return t == 0 ? 0 : is_qr(t) ? md(t * t * t * i9) : md(9 * t * t * t); }, INF, P),
  };
  for (const auto& g : m24)
    if (!is_bijection(g.images) || !preserves(g, code)) {
      std::cerr << "generator " << g.cycles() << " does not preserve the code\n";
      return 1;
    }

  // random walk in M24; keep elements stabilizing {0, inf}
  std::mt19937_64 rng(22);
  Permutation x = Permutation::identity(N);
  std::vector<Permutation> gens;
  for (;;) {
    for (unsigned step = 0; step < 5000; ++step) {
      x = compose(x, m24[rng() % m24.size()]);
      std::set<Point> pair = {x[0], x[INF]};
      if (pair != std::set<Point>{0, INF}) continue;
      std::vector<Point> img(22);
      for (unsigned t = 1; t < P; ++t) img[t - 1] = x[t] - 1;
      gens.push_back(Permutation(img));
      break;
    }
    if (gens.size() < 2) continue;
    PermGroup g(22, gens, "M22:2");
    const auto order = g.close().size();
    std::cerr << gens.size() << " generators: order " << order << "\n";
    if (order == 887040) break;
    if (gens.size() > 12) return 1;
  }

  Json j;
  j["group"] = "M22:2";
  j["degree"] = 22;
  j["order"] = "887040";
  j["note"] =
      "stabilizer of {0, inf} in M24, the automorphism group of the extended binary quadratic residue code of "
      "length 24; points 1..22 of GF(23) renumbered 0..21";
  j["generators"] = Json::array();
  for (const auto& g : gens) j["generators"].push_back(g.cycles());
  std::ofstream(out) << j.dump(2) << "\n";
  std::cout << "wrote " << out << "\n";
}
