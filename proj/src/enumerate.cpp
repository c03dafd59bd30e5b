// Cell-by-cell depth-first search over conflict systems.

#include <algorithm>
#include <climits>
#include <numeric>

#include "bits.hpp"
#include "engine.hpp"
#include "plr/parallel.hpp"

namespace plr::detail {

namespace {

using u128 = unsigned __int128;

BigInt to_bigint(u128 v) {
  BigInt hi = static_cast<std::uint64_t>(v >> 64);
  hi <<= 64;
  hi += static_cast<std::uint64_t>(v);
  return hi;
}

// Fixed data that does not depend on the bitset width.
struct Layout {
  Dims d;
  int cells = 0;
  int n = 0;
  bool card = false;
  bool has_target = false;
  int target = 0;
  bool dead = false;
  std::vector<int> forced;         // per cell: 0-based symbol or -1
  std::vector<int> forced_suffix;  // forced cells with index >= c
  std::vector<int> row_need, col_need, sym_need;
};

template <int W>
struct Model {
  Layout L;
  std::vector<Bits<W>> adj;
  Bits<W> blocked0;
};

template <int W>
Model<W> build(const ConstraintSystem& sys) {
  Model<W> M;
  Layout& L = M.L;
  L.d = sys.dims;
  L.cells = sys.dims.cells();
  L.n = sys.dims.n;
  if (L.n > 64) fail(ErrorKind::BackendUnavailable, "more than 64 symbols");
  const int V = sys.dims.num_vars();
  M.adj.assign(V, Bits<W>{});
  for (auto [a, b] : sys.conflicts) {
    M.adj[a].set(b);
    M.adj[b].set(a);
  }
  for (int v : sys.fixed_zero) M.blocked0.set(v);
  L.forced.assign(L.cells, -1);
  L.dead = sys.infeasible;
  for (int v : sys.fixed_one) {
    int c = v / L.n;
    if (L.forced[c] >= 0 || M.blocked0.test(v)) L.dead = true;
    L.forced[c] = v % L.n;
  }
  for (int v : sys.fixed_one) M.blocked0 |= M.adj[v];
  for (int v : sys.fixed_one)
    if (M.blocked0.test(v)) L.dead = true;
  L.forced_suffix.assign(L.cells + 1, 0);
  for (int c = L.cells - 1; c >= 0; --c) L.forced_suffix[c] = L.forced_suffix[c + 1] + (L.forced[c] >= 0 ? 1 : 0);
  if (sys.cardinality) {
    L.card = true;
    L.row_need = sys.cardinality->R.values;
    L.col_need = sys.cardinality->C.values;
    L.sym_need = sys.cardinality->S.values;
  }
  if (sys.total_size) {
    L.has_target = true;
    L.target = *sys.total_size;
  }
  return M;
}

template <int W>
struct FrontierState {
  int c = 0;
  int size = 0;
  Bits<W> blocked;
  std::vector<int> rn, cn, sn;
  std::vector<Entry> path;
};

// Visitor kinds for the walker.
struct CountSink {
  std::vector<u128> counts;
  void leaf(int size) { ++counts[size]; }
  void leaves(int size, int filled) {
    ++counts[size];
    counts[size + 1] += filled;
  }
};

template <int W, bool Card, bool Track, class Sink>
struct Walker {
  const Model<W>& M;
  Sink& sink;
  std::vector<int> rn, cn, sn;
  std::uint64_t sym_mask = 0;  // symbols with positive need
  std::vector<Entry> path;
  int stop_at = INT_MAX;
  std::vector<FrontierState<W>>* frontier = nullptr;
  bool stopped = false;

  Walker(const Model<W>& m, Sink& s) : M(m), sink(s) {
    if constexpr (Card) {
      rn = M.L.row_need;
      cn = M.L.col_need;
      sn = M.L.sym_need;
      refresh_mask();
    }
  }

  void refresh_mask() {
    sym_mask = 0;
    for (int k = 0; k < M.L.n; ++k)
      if (sn[k] > 0) sym_mask |= std::uint64_t{1} << k;
  }

  void restore(const FrontierState<W>& st) {
    if constexpr (Card) {
      rn = st.rn;
      cn = st.cn;
      sn = st.sn;
      refresh_mask();
    }
    if constexpr (Track) path = st.path;
  }

  bool needs_clear() const {
    if constexpr (Card) {
      for (int v : rn)
        if (v) return false;
      for (int v : cn)
        if (v) return false;
      for (int v : sn)
        if (v) return false;
    }
    return true;
  }

  void emit(int size) {
    if constexpr (Track)
      sink.leaf(size, path);
    else
      sink.leaf(size);
  }

  void place(int i, int j, int k) {
    if constexpr (Card) {
      --rn[i];
      --cn[j];
      if (--sn[k] == 0) sym_mask &= ~(std::uint64_t{1} << k);
    }
    if constexpr (Track) path.push_back({i + 1, j + 1, k + 1});
  }
  void unplace(int i, int j, int k) {
    if constexpr (Card) {
      ++rn[i];
      ++cn[j];
      if (sn[k]++ == 0) sym_mask |= std::uint64_t{1} << k;
    }
    if constexpr (Track) path.pop_back();
  }

  void dfs(int c, const Bits<W>& blocked, int size) {
    const Layout& L = M.L;
    if (L.has_target) {
      if (size + L.forced_suffix[c] > L.target) return;
      if (size + (L.cells - c) < L.target) return;
    }
    const int s = L.d.s, r = L.d.r, n = L.n;
    const int i = c / s, j = c % s;
    if constexpr (Card) {
      if (c < L.cells && j == 0) {
        for (int k = 0; k < n; ++k)
          if (sn[k] > r - i) return;
      }
    }
    if (c >= stop_at) {
      FrontierState<W> st;
      st.c = c;
      st.size = size;
      st.blocked = blocked;
      if constexpr (Card) {
        st.rn = rn;
        st.cn = cn;
        st.sn = sn;
      }
      if constexpr (Track) st.path = path;
      frontier->push_back(std::move(st));
      return;
    }
    if (c == L.cells) {
      if (L.has_target && size != L.target) return;
      if (!needs_clear()) return;
      emit(size);
      return;
    }
    if constexpr (Card) {
      if (j == 0 && rn[i] == 0) {
        if (L.forced_suffix[c] != L.forced_suffix[c + s]) return;
        dfs(c + s, blocked, size);
        return;
      }
      if (rn[i] > s - j || cn[j] > r - i) return;
    }
    const int f = L.forced[c];
    if (f >= 0) {
      if constexpr (Card) {
        if (!rn[i] || !cn[j] || !sn[f]) return;
      }
      place(i, j, f);
      dfs(c + 1, blocked | M.adj[c * n + f], size + 1);
      unplace(i, j, f);
      return;
    }
    std::uint64_t avail = ~blocked.field(c * n, n);
    if (n < 64) avail &= (std::uint64_t{1} << n) - 1;
    if constexpr (Card) {
      avail = (rn[i] && cn[j]) ? avail & sym_mask : 0;
    }
    if constexpr (!Card && !Track) {
      if (!L.has_target && c == L.cells - 1 && stop_at == INT_MAX) {
        sink.leaves(size, std::popcount(avail));
        return;
      }
    }
    bool empty_ok = true;
    if constexpr (Card) empty_ok = rn[i] <= s - 1 - j && cn[j] <= r - 1 - i;
    if (empty_ok) dfs(c + 1, blocked, size);
    while (avail) {
      int k = std::countr_zero(avail);
      avail &= avail - 1;
      place(i, j, k);
      dfs(c + 1, blocked | M.adj[c * n + k], size + 1);
      unplace(i, j, k);
    }
  }

  // Emits solutions in lexicographic order of their entry lists: the empty
  // completion first, then completions by their next entry.
  void ordered(int c, const Bits<W>& blocked, int size) {
    const Layout& L = M.L;
    if (stopped) return;
    if (L.forced_suffix[c] == 0 && needs_clear() && (!L.has_target || size == L.target)) {
      emit(size);
      if (stopped) return;
    }
    const int s = L.d.s, r = L.d.r, n = L.n;
    for (int cc = c; cc < L.cells; ++cc) {
      const int i = cc / s, j = cc % s;
      if (L.has_target && size + (L.cells - cc) < L.target) return;
      if (L.has_target && size + L.forced_suffix[cc] > L.target) return;
      if constexpr (Card) {
        if (j == 0)
          for (int k = 0; k < n; ++k)
            if (sn[k] > r - i) return;
        if (rn[i] > s - j || cn[j] > r - i) return;
      }
      const int f = L.forced[cc];
      std::uint64_t avail;
      if (f >= 0) {
        avail = blocked.test(cc * n + f) ? 0 : std::uint64_t{1} << f;
      } else {
        avail = ~blocked.field(cc * n, n);
        if (n < 64) avail &= (std::uint64_t{1} << n) - 1;
      }
      if constexpr (Card) avail = (rn[i] && cn[j]) ? avail & sym_mask : 0;
      while (avail) {
        int k = std::countr_zero(avail);
        avail &= avail - 1;
        place(i, j, k);
        ordered(cc + 1, blocked | M.adj[cc * n + k], size + 1);
        unplace(i, j, k);
        if (stopped) return;
      }
      if (f >= 0) return;
      if constexpr (Card) {
        if (!(rn[i] <= s - 1 - j && cn[j] <= r - 1 - i)) return;
      }
    }
  }
};

template <int W, bool Card, bool Track, class Sink>
std::vector<FrontierState<W>> split(const Model<W>& M, int goal) {
  std::vector<FrontierState<W>> out;
  for (int depth = 1;; ++depth) {
    out.clear();
    Sink dummy{};
    Walker<W, Card, Track, Sink> w(M, dummy);
    w.stop_at = depth;
    w.frontier = &out;
    w.dfs(0, M.blocked0, 0);
    if (static_cast<int>(out.size()) >= goal || depth >= M.L.cells) return out;
  }
}

template <int W, bool Card>
Spectrum count_spectrum(const Model<W>& M, int jobs) {
  const int len = M.L.cells + 1;
  Spectrum result(len);
  if (M.L.dead) return result;
  if (jobs <= 1) {
    CountSink sink{std::vector<u128>(len + 1, 0)};
    Walker<W, Card, false, CountSink> w(M, sink);
    w.dfs(0, M.blocked0, 0);
    for (int m = 0; m < len; ++m) result[m] = to_bigint(sink.counts[m]);
    return result;
  }
  auto tasks = split<W, Card, false, CountSink>(M, jobs * 16);
  std::vector<std::vector<u128>> partial(tasks.size());
  parallel_for(tasks.size(), jobs, [&](std::size_t t, std::size_t) {
    CountSink sink{std::vector<u128>(len + 1, 0)};
    Walker<W, Card, false, CountSink> w(M, sink);
    w.restore(tasks[t]);
    w.dfs(tasks[t].c, tasks[t].blocked, tasks[t].size);
    partial[t] = std::move(sink.counts);
  });
  std::vector<u128> sum(len + 1, 0);
  for (const auto& p : partial)
    for (int m = 0; m <= len; ++m) sum[m] += p[m];
  for (int m = 0; m < len; ++m) result[m] = to_bigint(sum[m]);
  return result;
}

// Generic fallback for systems that lack the per-cell exclusions: branch on
// each variable in index order.
struct VarSearch {
  const ConstraintSystem& sys;
  std::vector<std::vector<int>> adj;
  std::vector<int> state;  // -1 free, 0, 1
  std::vector<int> blocked_by;
  std::vector<int> ones;
  std::function<void(const std::vector<int>&)> leaf;

  explicit VarSearch(const ConstraintSystem& s) : sys(s) {
    const int V = s.dims.num_vars();
    adj.resize(V);
    for (auto [a, b] : s.conflicts) {
      adj[a].push_back(b);
      adj[b].push_back(a);
    }
    blocked_by.assign(V, 0);
  }

  bool accept() const {
    if (sys.total_size && static_cast<int>(ones.size()) != *sys.total_size) return false;
    if (sys.cardinality) {
      std::vector<int> r(sys.dims.r), c(sys.dims.s), k(sys.dims.n);
      for (int v : ones) {
        Entry e = var_entry(sys.dims, v);
        ++r[e.row - 1];
        ++c[e.col - 1];
        ++k[e.sym - 1];
      }
      if (r != sys.cardinality->R.values || c != sys.cardinality->C.values || k != sys.cardinality->S.values)
        return false;
    }
    return true;
  }

  void run(int v) {
    const int V = sys.dims.num_vars();
    if (v == V) {
      if (accept()) leaf(ones);
      return;
    }
    bool must_one = sys.is_fixed_one(v);
    bool must_zero = sys.is_fixed_zero(v) || blocked_by[v] > 0;
    if (must_one && must_zero) return;
    if (!must_one) run(v + 1);
    if (!must_zero) {
      ones.push_back(v);
      for (int u : adj[v]) ++blocked_by[u];
      run(v + 1);
      for (int u : adj[v]) --blocked_by[u];
      ones.pop_back();
    }
  }
};

Spectrum fallback_spectrum(const ConstraintSystem& sys) {
  Spectrum out(sys.dims.cells() + 1);
  if (sys.infeasible) return out;
  VarSearch search(sys);
  search.leaf = [&](const std::vector<int>& ones) {
    if (ones.size() >= out.size()) out.resize(ones.size() + 1);
    out[ones.size()] += 1;
  };
  search.run(0);
  return out;
}

}  // namespace

bool has_cell_conflicts(const ConstraintSystem& sys) {
  const Dims& d = sys.dims;
  if (d.n == 1) return true;
  std::size_t need = static_cast<std::size_t>(d.cells()) * d.n * (d.n - 1) / 2;
  std::size_t found = 0;
  for (auto [a, b] : sys.conflicts)
    if (a / d.n == b / d.n) ++found;
  return found == need;
}

Spectrum enumeration_spectrum(const ConstraintSystem& sys, int jobs) {
  if (!has_cell_conflicts(sys)) return fallback_spectrum(sys);
  return dispatch_words(sys.dims.num_vars(), [&](auto wc) -> Spectrum {
    constexpr int W = decltype(wc)::value;
    auto M = build<W>(sys);
    if (M.L.card) return count_spectrum<W, true>(M, jobs);
    return count_spectrum<W, false>(M, jobs);
  });
}

}  // namespace plr::detail

namespace plr {

namespace {

struct PathSink {
  const std::function<bool(const std::vector<Entry>&)>* fn;
  bool* stop;
  void leaf(int, const std::vector<Entry>& path) {
    if (!(*fn)(path)) *stop = true;
  }
};

template <int W, bool Card>
void run_ordered(const detail::Model<W>& M, const std::function<bool(const std::vector<Entry>&)>& fn) {
  if (M.L.dead) return;
  bool stop = false;
  PathSink sink{&fn, &stop};
  struct Bridge {
    PathSink* inner;
    detail::Walker<W, Card, true, Bridge>* walker = nullptr;
    void leaf(int size, const std::vector<Entry>& path) {
      inner->leaf(size, path);
      if (*inner->stop) walker->stopped = true;
    }
  } bridge{&sink};
  detail::Walker<W, Card, true, Bridge> w(M, bridge);
  bridge.walker = &w;
  w.ordered(0, M.blocked0, 0);
}

struct TaskSink {
  const std::function<void(std::size_t, const std::vector<Entry>&)>* fn;
  std::size_t task;
  void leaf(int, const std::vector<Entry>& path) { (*fn)(task, path); }
};

}  // namespace

void enumerate_solutions(const ConstraintSystem& sys, const std::function<bool(const Plr&)>& visit,
                         std::uint64_t limit) {
  std::uint64_t seen = 0;
  std::function<bool(const std::vector<Entry>&)> fn = [&](const std::vector<Entry>& path) {
    if (++seen > limit)
      fail(ErrorKind::LimitExceeded, "more than " + std::to_string(limit) + " solutions");
    return visit(Plr::trusted(sys.dims, path));
  };
  if (!detail::has_cell_conflicts(sys)) {
    if (sys.infeasible) return;
    std::vector<std::vector<Entry>> all;
    detail::VarSearch search(sys);
    search.leaf = [&](const std::vector<int>& ones) {
      std::vector<Entry> e;
      for (int v : ones) e.push_back(var_entry(sys.dims, v));
      all.push_back(std::move(e));
    };
    search.run(0);
    std::sort(all.begin(), all.end());
    for (const auto& e : all)
      if (!fn(e)) return;
    return;
  }
  detail::dispatch_words(sys.dims.num_vars(), [&](auto wc) {
    constexpr int W = decltype(wc)::value;
    auto M = detail::build<W>(sys);
    if (M.L.card)
      run_ordered<W, true>(M, fn);
    else
      run_ordered<W, false>(M, fn);
  });
}

std::vector<Plr> solutions(const ConstraintSystem& sys, std::uint64_t limit) {
  std::vector<Plr> out;
  enumerate_solutions(sys, [&](const Plr& p) {
    out.push_back(p);
    return true;
  }, limit);
  return out;
}

void for_each_solution_parallel(const ConstraintSystem& sys, int jobs,
                                const std::function<void(std::size_t)>& on_split,
                                const std::function<void(std::size_t, const std::vector<Entry>&)>& visit) {
  if (!detail::has_cell_conflicts(sys)) {
    on_split(1);
    enumerate_solutions(sys, [&](const Plr& p) {
      visit(0, p.entries());
      return true;
    });
    return;
  }
  detail::dispatch_words(sys.dims.num_vars(), [&](auto wc) {
    constexpr int W = decltype(wc)::value;
    auto M = detail::build<W>(sys);
    auto body = [&](auto card_tag) {
      constexpr bool Card = decltype(card_tag)::value;
      if (M.L.dead) {
        on_split(0);
        return;
      }
      auto tasks = detail::split<W, Card, true, TaskSink>(M, std::max(1, jobs) * 16);
      on_split(tasks.size());
      parallel_for(tasks.size(), jobs, [&](std::size_t t, std::size_t) {
        TaskSink sink{&visit, t};
        detail::Walker<W, Card, true, TaskSink> w(M, sink);
        w.restore(tasks[t]);
        w.dfs(tasks[t].c, tasks[t].blocked, tasks[t].size);
      });
    };
    if (M.L.card)
      body(std::true_type{});
    else
      body(std::false_type{});
  });
}

}  // namespace plr
