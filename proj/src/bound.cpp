#include "stbc/bound.hpp"

#include <bit>
#include <functional>

namespace stbc {

CMatrix PauliGroupElement::materialize() const {
  static const CMatrix basis[4] = {pauli::identity2(), pauli::sigma1(), pauli::sigma2(), pauli::sigma3()};
  CMatrix m = identity(1);
  for (int f : factors) m = kron(m, basis[f]);
  static const cplx phases[4] = {1.0, kJ, -1.0, -kJ};
  return phases[phase & 3] * m;
}

std::string PauliGroupElement::to_string() const {
  static const char* ph[4] = {"", "j", "-", "-j"};
  static const char* names[4] = {"I", "s1", "s2", "s3"};
  std::string s = ph[phase & 3];
  for (std::size_t k = 0; k < factors.size(); ++k) s += (k ? "(x)" : "") + std::string(names[factors[k]]);
  return s;
}

std::vector<PauliGroupElement> pauli_universe(int a) {
  if (a < 1 || a > 3) throw precondition_error("pauli_universe: a must be in [1, 3]");
  const int words = 1 << (2 * a);
  std::vector<PauliGroupElement> out;
  for (int phase = 0; phase < 2; ++phase) {
    for (int w = 0; w < words; ++w) {
      PauliGroupElement e;
      e.phase = phase;
      for (int k = a - 1; k >= 0; --k) e.factors.push_back((w >> (2 * k)) & 3);
      out.push_back(e);
    }
  }
  return out;
}

namespace {

// Per-universe relation tables. skew[x][y]: X^H Y is skew-Hermitian, i.e.
// X^H Y + Y^H X = 0 (sign representatives do not matter).
struct Tables {
  std::vector<PauliGroupElement> elems;
  std::vector<CMatrix> mats;
  std::vector<std::vector<char>> skew;
  std::vector<char> skew_hermitian;
  int size() const { return static_cast<int>(elems.size()); }
};

Tables make_tables(int a) {
  Tables t;
  t.elems = pauli_universe(a);
  for (const auto& e : t.elems) t.mats.push_back(e.materialize());
  const int u = t.size();
  t.skew.assign(static_cast<std::size_t>(u), std::vector<char>(static_cast<std::size_t>(u), 0));
  for (int x = 0; x < u; ++x) {
    t.skew_hermitian.push_back(is_skew_hermitian(t.mats[static_cast<std::size_t>(x)]));
    for (int y = 0; y < u; ++y) {
      const CMatrix p = t.mats[static_cast<std::size_t>(x)].adjoint() * t.mats[static_cast<std::size_t>(y)];
      t.skew[static_cast<std::size_t>(x)][static_cast<std::size_t>(y)] = is_skew_hermitian(p);
    }
  }
  return t;
}

bool sk(const Tables& t, int x, int y) { return t.skew[static_cast<std::size_t>(x)][static_cast<std::size_t>(y)]; }

// The cross conditions between symbols (aI, aQ) and (bI, bQ).
bool compatible(const Tables& t, int ai, int aq, int bi, int bq) {
  return sk(t, ai, bi) && sk(t, aq, bq) && sk(t, ai, bq) && sk(t, bi, aq);
}

class Bitset {
 public:
  explicit Bitset(int n = 0) : w_(static_cast<std::size_t>((n + 63) / 64), 0) {}
  void set(int i) { w_[static_cast<std::size_t>(i / 64)] |= std::uint64_t{1} << (i % 64); }
  int count() const {
    int c = 0;
    for (auto x : w_) c += std::popcount(x);
    return c;
  }
  Bitset operator&(const Bitset& o) const {
    Bitset r;
    r.w_.resize(w_.size());
    for (std::size_t k = 0; k < w_.size(); ++k) r.w_[k] = w_[k] & o.w_[k];
    return r;
  }
  // Clears bits 0..i.
  void clear_through(int i) {
    for (int k = 0; k <= i / 64; ++k) {
      if (k < i / 64) {
        w_[static_cast<std::size_t>(k)] = 0;
      } else {
        const int b = i % 64;
        w_[static_cast<std::size_t>(k)] &= (b == 63) ? 0 : ~((std::uint64_t{2} << b) - 1);
      }
    }
  }
  template <class F>
  void for_each(F f) const {
    for (std::size_t k = 0; k < w_.size(); ++k) {
      for (std::uint64_t x = w_[k]; x; x &= x - 1) f(static_cast<int>(k * 64) + std::countr_zero(x));
    }
  }

 private:
  std::vector<std::uint64_t> w_;
};

}  // namespace

MaxFamilyResult max_ssd_family(int a) {
  if (a < 1 || a > 2) throw precondition_error("max_ssd_family: a must be 1 or 2");
  const Tables t = make_tables(a);
  const int u = t.size();

  // Vertex = (I element, Q element), I != Q, ordered by (I, Q).
  std::vector<std::pair<int, int>> verts;
  for (int x = 0; x < u; ++x) {
    for (int y = 0; y < u; ++y) {
      if (x != y) verts.emplace_back(x, y);
    }
  }
  const int V = static_cast<int>(verts.size());
  std::vector<Bitset> adj(static_cast<std::size_t>(V), Bitset(V));
  MaxFamilyResult res;
  res.a = a;
  res.vertices = V;
  for (int p = 0; p < V; ++p) {
    for (int q = p + 1; q < V; ++q) {
      const auto [ai, aq] = verts[static_cast<std::size_t>(p)];
      const auto [bi, bq] = verts[static_cast<std::size_t>(q)];
      if (compatible(t, ai, aq, bi, bq)) {
        adj[static_cast<std::size_t>(p)].set(q);
        adj[static_cast<std::size_t>(q)].set(p);
        ++res.edges;
      }
    }
  }

  // Only cliques whose least vertex has the identity as in-phase weight.
  std::vector<int> roots;
  for (int p = 0; p < V; ++p) {
    if (verts[static_cast<std::size_t>(p)].first == 0) roots.push_back(p);
  }

  std::vector<int> clique;
  int best = 0;
  // mode 0: find the maximum size; mode 1: stop at the first UW-SSD clique of size best.
  std::vector<int> found;
  std::function<bool(const Bitset&, int)> dfs = [&](const Bitset& cand, int mode) -> bool {
    ++res.nodes_visited;
    const int sz = static_cast<int>(clique.size());
    if (mode == 0) {
      best = std::max(best, sz);
    } else if (sz == best) {
      std::vector<CMatrix> wI, wQ;
      for (int p : clique) {
        wI.push_back(t.mats[static_cast<std::size_t>(verts[static_cast<std::size_t>(p)].first)]);
        wQ.push_back(t.mats[static_cast<std::size_t>(verts[static_cast<std::size_t>(p)].second)]);
      }
      const LinearDispersionCode code(wI, wQ);
      if (classify(code).class_name == CodeClass::UW_SSD) {
        found = clique;
        return true;
      }
      return false;
    }
    std::vector<int> order;
    cand.for_each([&](int v) { order.push_back(v); });
    for (std::size_t k = 0; k < order.size(); ++k) {
      const int reachable = sz + static_cast<int>(order.size() - k);
      if (mode == 0 ? reachable <= best : reachable < best) break;
      Bitset next = cand & adj[static_cast<std::size_t>(order[k])];
      next.clear_through(order[k]);
      clique.push_back(order[k]);
      const bool done = dfs(next, mode);
      clique.pop_back();
      if (done) return true;
    }
    return false;
  };

  for (int mode = 0; mode < 2; ++mode) {
    for (int r : roots) {
      Bitset cand = adj[static_cast<std::size_t>(r)];
      cand.clear_through(r);
      clique = {r};
      if (dfs(cand, mode)) break;
    }
  }
  res.k_max = best;
  if (!found.empty()) {
    std::vector<CMatrix> wI, wQ;
    for (int p : found) {
      const auto [x, y] = verts[static_cast<std::size_t>(p)];
      res.witness_elements.emplace_back(x, y);
      wI.push_back(t.mats[static_cast<std::size_t>(x)]);
      wQ.push_back(t.mats[static_cast<std::size_t>(y)]);
    }
    res.witness.emplace(std::move(wI), std::move(wQ), "pauli-witness(a=" + std::to_string(a) + ")");
  }
  return res;
}

namespace {

// Anticommuting skew-Hermitian families of the given size, each extended by
// every admissible choice of quadrature weights.
ClaimCheck check_size(const Tables& t, int family_size) {
  ClaimCheck c;
  c.family_size = family_size;
  c.K = family_size + 1;
  const int u = t.size();
  std::vector<int> skewers;
  for (int x = 1; x < u; ++x) {
    if (t.skew_hermitian[static_cast<std::size_t>(x)]) skewers.push_back(x);
  }
  auto anti = [&](int x, int y) {
    return anticommutes(t.mats[static_cast<std::size_t>(x)], t.mats[static_cast<std::size_t>(y)]);
  };

  std::vector<int> fam;
  std::vector<int> inphase, quad;
  // Backtrack over quadrature weights, symbol by symbol.
  std::function<bool(std::size_t)> complete = [&](std::size_t i) -> bool {
    if (i == inphase.size()) return true;
    for (int y = 0; y < u; ++y) {
      if (y == inphase[i]) continue;
      bool ok = true;
      for (std::size_t j = 0; j < i && ok; ++j) ok = compatible(t, inphase[j], quad[j], inphase[i], y);
      if (!ok) continue;
      quad.push_back(y);
      if (complete(i + 1)) return true;
      quad.pop_back();
    }
    return false;
  };
  std::function<void(std::size_t)> choose = [&](std::size_t start) {
    if (static_cast<int>(fam.size()) == family_size) {
      ++c.families;
      inphase = {0};
      inphase.insert(inphase.end(), fam.begin(), fam.end());
      quad.clear();
      if (complete(0)) ++c.completions;
      return;
    }
    for (std::size_t k = start; k < skewers.size(); ++k) {
      bool ok = true;
      for (int f : fam) ok = ok && anti(f, skewers[k]);
      if (!ok) continue;
      fam.push_back(skewers[k]);
      choose(k + 1);
      fam.pop_back();
    }
  };
  choose(0);
  return c;
}

}  // namespace

ClaimsReport verify_claims(int a) {
  if (a < 1 || a > 2) throw precondition_error("verify_claims: a must be 1 or 2");
  const Tables t = make_tables(a);
  ClaimsReport r;
  r.a = a;
  r.universe_size = t.size();
  r.k_2a_plus_2 = check_size(t, 2 * a + 1);
  r.k_2a_plus_1 = check_size(t, 2 * a);
  return r;
}

}  // namespace stbc
