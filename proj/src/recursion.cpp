// Independence polynomial of the residual conflict graph: branch on a vertex of
// maximum degree, split into connected components, memoize on a relabelled
// adjacency matrix.

#include <algorithm>
#include <string>
#include <unordered_map>

#include "bits.hpp"
#include "engine.hpp"

namespace plr::detail {

class RecursionMemo {
 public:
  static constexpr std::size_t kMaxEntries = 1 << 20;

  const Spectrum* find(const std::string& key) const {
    auto it = table_.find(key);
    return it == table_.end() ? nullptr : &it->second;
  }
  void insert(std::string key, const Spectrum& value) {
    if (table_.size() >= kMaxEntries) table_.clear();
    table_.emplace(std::move(key), value);
  }
  std::size_t size() const { return table_.size(); }

 private:
  std::unordered_map<std::string, Spectrum> table_;
};

std::unique_ptr<RecursionMemo, void (*)(RecursionMemo*)> make_recursion_memo() {
  return {new RecursionMemo(), [](RecursionMemo* m) { delete m; }};
}

namespace {

Spectrum multiply(const Spectrum& a, const Spectrum& b) {
  Spectrum out(a.size() + b.size() - 1);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].is_zero()) continue;
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  }
  return out;
}

std::uint64_t mix(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

template <int W>
struct IndependenceSolver {
  const std::vector<Bits<W>>& adj;
  RecursionMemo* memo;

  Spectrum solve(const Bits<W>& S) {
    if (S.none()) return {1};
    Bits<W> comp = component(S, S.first());
    if (comp == S) return connected(S);
    return multiply(connected(comp), solve(S.andnot(comp)));
  }

  Bits<W> component(const Bits<W>& S, int start) const {
    Bits<W> seen, frontier;
    seen.set(start);
    frontier.set(start);
    while (!frontier.none()) {
      Bits<W> next;
      frontier.for_each([&](int v) { next |= adj[v]; });
      next &= S;
      frontier = next.andnot(seen);
      seen |= frontier;
    }
    return seen;
  }

  std::string key(const std::vector<int>& verts, const Bits<W>& S) const {
    const int k = static_cast<int>(verts.size());
    std::vector<int> deg(k);
    for (int a = 0; a < k; ++a) deg[a] = (adj[verts[a]] & S).count();
    std::vector<std::uint64_t> fp(k, 0);
    std::vector<int> pos_of(kMaxVars, -1);
    for (int a = 0; a < k; ++a) pos_of[verts[a]] = a;
    for (int a = 0; a < k; ++a)
      (adj[verts[a]] & S).for_each([&](int u) { fp[a] += mix(static_cast<std::uint64_t>(deg[pos_of[u]])); });
    std::vector<int> order(k);
    for (int a = 0; a < k; ++a) order[a] = a;
    std::sort(order.begin(), order.end(), [&](int x, int y) {
      if (deg[x] != deg[y]) return deg[x] < deg[y];
      if (fp[x] != fp[y]) return fp[x] < fp[y];
      return x < y;
    });
    std::vector<int> rank(k);
    for (int a = 0; a < k; ++a) rank[order[a]] = a;
    const int row_bytes = (k + 7) / 8;
    std::string out(2 + static_cast<std::size_t>(k) * row_bytes, '\0');
    out[0] = static_cast<char>(k & 0xff);
    out[1] = static_cast<char>(k >> 8);
    for (int a = 0; a < k; ++a) {
      char* row = &out[2 + static_cast<std::size_t>(a) * row_bytes];
      (adj[verts[order[a]]] & S).for_each([&](int u) {
        int b = rank[pos_of[u]];
        row[b >> 3] = static_cast<char>(row[b >> 3] | (1 << (b & 7)));
      });
    }
    return out;
  }

  Spectrum connected(const Bits<W>& S) {
    const int k = S.count();
    if (k == 1) return {1, 1};
    std::vector<int> verts;
    verts.reserve(k);
    S.for_each([&](int v) { verts.push_back(v); });
    std::string memo_key;
    if (memo) {
      memo_key = key(verts, S);
      if (const Spectrum* hit = memo->find(memo_key)) return *hit;
    }
    int best = verts.front(), best_deg = -1;
    for (int v : verts) {
      int d = (adj[v] & S).count();
      if (d > best_deg) {
        best = v;
        best_deg = d;
      }
    }
    if (best_deg == k - 1 && k > 1) {
      // A complete graph: only the empty set and singletons.
      bool clique = true;
      for (int v : verts)
        if ((adj[v] & S).count() != k - 1) {
          clique = false;
          break;
        }
      if (clique) {
        Spectrum out{1, k};
        if (memo) memo->insert(std::move(memo_key), out);
        return out;
      }
    }
    Bits<W> without = S;
    without.reset(best);
    Spectrum out = solve(without);
    Spectrum with = solve(without.andnot(adj[best]));
    if (out.size() < with.size() + 1) out.resize(with.size() + 1);
    for (std::size_t i = 0; i < with.size(); ++i) out[i + 1] += with[i];
    while (out.size() > 1 && out.back().is_zero()) out.pop_back();
    if (memo) memo->insert(std::move(memo_key), out);
    return out;
  }
};

}  // namespace

Spectrum recursion_spectrum(const ConstraintSystem& sys, RecursionMemo* memo) {
  if (sys.has_cardinality())
    fail(ErrorKind::UnsupportedConstraint, "the recursion backend handles conflicts and fixings only");
  const int V = sys.dims.num_vars();
  Spectrum result(sys.dims.cells() + 1);
  if (sys.infeasible) return result;
  return dispatch_words(V, [&](auto wc) -> Spectrum {
    constexpr int W = decltype(wc)::value;
    std::vector<Bits<W>> adj(V);
    for (auto [a, b] : sys.conflicts) {
      adj[a].set(b);
      adj[b].set(a);
    }
    Bits<W> S;
    for (int v = 0; v < V; ++v) S.set(v);
    for (int v : sys.fixed_zero) S.reset(v);
    for (int v : sys.fixed_one) {
      if (!S.test(v)) return result;  // fixed to both values, or conflicting ones
      S.reset(v);
      S = S.andnot(adj[v]);
    }
    for (int v : sys.fixed_one)
      for (int u : sys.fixed_one)
        if (adj[v].test(u)) return result;
    IndependenceSolver<W> solver{adj, memo};
    Spectrum poly = solver.solve(S);
    const std::size_t shift = sys.fixed_one.size();
    if (result.size() < poly.size() + shift) result.resize(poly.size() + shift);
    for (std::size_t i = 0; i < poly.size(); ++i) result[i + shift] = poly[i];
    return result;
  });
}

}  // namespace plr::detail
