// Lexicographically smallest relabelling of a PLR.
//
// Connected components (entries linked by a shared row, column or symbol) are
// laid out contiguously in the minimum, so each component is minimised on its
// own and the blocks are then sorted. Inside a component, rows are chosen
// greedily: each candidate row yields a forced label list except for entries
// whose column and symbol are both new, whose order is branched over.

#include "plr/canonical.hpp"

#include <algorithm>
#include <array>
#include <numeric>

namespace plr {

namespace {

using Triple = std::array<int, 3>;
using Pair = std::pair<int, int>;

// Lexicographic on pairs; a proper prefix compares greater, since the longer
// row continues with a smaller label where the shorter one starts a new row.
template <class T>
int prefix_cmp(const std::vector<T>& a, const std::vector<T>& b) {
  const std::size_t k = std::min(a.size(), b.size());
  for (std::size_t i = 0; i < k; ++i) {
    if (a[i] < b[i]) return -1;
    if (b[i] < a[i]) return 1;
  }
  if (a.size() == b.size()) return 0;
  return a.size() > b.size() ? -1 : 1;
}

struct Component {
  std::vector<int> rows, cols, syms;                // global 0-based ids
  std::vector<std::vector<Pair>> row_entries;       // local (col, sym)
};

struct Best {
  std::vector<std::vector<Pair>> rows;  // label lists per output row
  std::vector<int> row_order;           // local row per output row
  std::vector<int> col_lab, sym_lab;    // local id -> 0-based label
};

class ComponentSearch {
 public:
  explicit ComponentSearch(const Component& c)
      : C_(c),
        nr_(static_cast<int>(c.rows.size())),
        col_lab_(c.cols.size(), -1),
        sym_lab_(c.syms.size(), -1),
        used_(nr_, 0) {}

  Best run() {
    if (nr_ == 1) {
      // A single row: every order of its entries gives the same list.
      Best b;
      b.row_order = {0};
      b.col_lab.assign(C_.cols.size(), -1);
      b.sym_lab.assign(C_.syms.size(), -1);
      std::vector<Pair> list;
      int q = 0;
      for (auto [c, s] : C_.row_entries[0]) {
        b.col_lab[c] = q;
        b.sym_lab[s] = q;
        list.emplace_back(q, q);
        ++q;
      }
      b.rows.push_back(std::move(list));
      return b;
    }
    search(0, true);
    return best_;
  }

 private:
  struct Candidate {
    int row;
    std::vector<Pair> list;
    std::vector<int> new_syms;  // symbols of labelled columns, by column label
    std::vector<int> a_cols;    // new columns with labelled symbols, by symbol label
    std::vector<Pair> b;        // new column and new symbol
  };

  Candidate build(int row) const {
    Candidate cd;
    cd.row = row;
    std::vector<std::pair<int, int>> labelled;  // (col label, sym local)
    std::vector<std::pair<int, int>> a_part;    // (sym label, col local)
    for (auto [c, s] : C_.row_entries[row]) {
      if (col_lab_[c] >= 0)
        labelled.emplace_back(col_lab_[c], s);
      else if (sym_lab_[s] >= 0)
        a_part.emplace_back(sym_lab_[s], c);
      else
        cd.b.emplace_back(c, s);
    }
    std::sort(labelled.begin(), labelled.end());
    std::sort(a_part.begin(), a_part.end());
    int ns = next_sym_;
    for (auto [cl, s] : labelled) {
      if (sym_lab_[s] >= 0) {
        cd.list.emplace_back(cl, sym_lab_[s]);
      } else {
        cd.list.emplace_back(cl, ns++);
        cd.new_syms.push_back(s);
      }
    }
    int nc = next_col_;
    for (auto [sl, c] : a_part) {
      cd.list.emplace_back(nc++, sl);
      cd.a_cols.push_back(c);
    }
    for (std::size_t q = 0; q < cd.b.size(); ++q) cd.list.emplace_back(nc++, ns++);
    return cd;
  }

  void search(int depth, bool tied) {
    if (depth == nr_) {
      if (!have_best_ || !tied) {
        best_.rows = cur_;
        best_.row_order = order_;
        best_.col_lab = col_lab_;
        best_.sym_lab = sym_lab_;
        have_best_ = true;
        ++version_;
      }
      return;
    }
    std::vector<Candidate> cands;
    cands.reserve(nr_ - depth);
    for (int row = 0; row < nr_; ++row)
      if (!used_[row]) cands.push_back(build(row));
    std::size_t min_i = 0;
    for (std::size_t i = 1; i < cands.size(); ++i)
      if (prefix_cmp(cands[i].list, cands[min_i].list) < 0) min_i = i;
    const std::vector<Pair> min_list = cands[min_i].list;
    if (have_best_ && tied) {
      int c = prefix_cmp(min_list, best_.rows[depth]);
      if (c > 0) return;
      if (c < 0) tied = false;
    }
    for (auto& cd : cands) {
      if (prefix_cmp(cd.list, min_list) != 0) continue;
      apply_and_recurse(cd, depth, tied);
    }
  }

  void apply_and_recurse(Candidate& cd, int depth, bool& tied) {
    const int saved_col = next_col_, saved_sym = next_sym_;
    for (int s : cd.new_syms) sym_lab_[s] = next_sym_++;
    for (int c : cd.a_cols) col_lab_[c] = next_col_++;
    used_[cd.row] = 1;
    order_.push_back(cd.row);
    cur_.push_back(cd.list);
    std::vector<int> perm(cd.b.size());
    std::iota(perm.begin(), perm.end(), 0);
    const int base_col = next_col_, base_sym = next_sym_;
    do {
      for (std::size_t q = 0; q < perm.size(); ++q) {
        col_lab_[cd.b[perm[q]].first] = base_col + static_cast<int>(q);
        sym_lab_[cd.b[perm[q]].second] = base_sym + static_cast<int>(q);
      }
      next_col_ = base_col + static_cast<int>(perm.size());
      next_sym_ = base_sym + static_cast<int>(perm.size());
      unsigned before = version_;
      search(depth + 1, tied);
      if (version_ != before) tied = true;
    } while (std::next_permutation(perm.begin(), perm.end()));
    for (auto [c, s] : cd.b) {
      col_lab_[c] = -1;
      sym_lab_[s] = -1;
    }
    cur_.pop_back();
    order_.pop_back();
    used_[cd.row] = 0;
    for (int s : cd.new_syms) sym_lab_[s] = -1;
    for (int c : cd.a_cols) col_lab_[c] = -1;
    next_col_ = saved_col;
    next_sym_ = saved_sym;
  }

  const Component& C_;
  int nr_;
  std::vector<int> col_lab_, sym_lab_;
  std::vector<char> used_;
  int next_col_ = 0, next_sym_ = 0;
  std::vector<std::vector<Pair>> cur_;
  std::vector<int> order_;
  Best best_;
  bool have_best_ = false;
  unsigned version_ = 0;
};

std::vector<Component> components(const Plr& p) {
  const Dims& d = p.dims();
  const auto& es = p.entries();
  // Union-find over rows, columns and symbols as one vertex set.
  std::vector<int> parent(d.r + d.s + d.n);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  auto unite = [&](int a, int b) { parent[find(a)] = find(b); };
  for (const auto& e : es) {
    unite(e.row - 1, d.r + e.col - 1);
    unite(e.row - 1, d.r + d.s + e.sym - 1);
  }
  std::vector<int> comp_of_root(parent.size(), -1);
  std::vector<Component> comps;
  std::vector<int> lrow(d.r, -1), lcol(d.s, -1), lsym(d.n, -1);
  for (const auto& e : es) {
    int root = find(e.row - 1);
    if (comp_of_root[root] < 0) {
      comp_of_root[root] = static_cast<int>(comps.size());
      comps.emplace_back();
    }
    Component& c = comps[comp_of_root[root]];
    int i = e.row - 1, j = e.col - 1, k = e.sym - 1;
    if (lrow[i] < 0) {
      lrow[i] = static_cast<int>(c.rows.size());
      c.rows.push_back(i);
      c.row_entries.emplace_back();
    }
    if (lcol[j] < 0) {
      lcol[j] = static_cast<int>(c.cols.size());
      c.cols.push_back(j);
    }
    if (lsym[k] < 0) {
      lsym[k] = static_cast<int>(c.syms.size());
      c.syms.push_back(k);
    }
    c.row_entries[lrow[i]].emplace_back(lcol[j], lsym[k]);
  }
  return comps;
}

struct Solved {
  const Component* comp;
  Best best;
  std::vector<Triple> block;  // 1-based local triples
};

std::vector<Solved> solve_all(const std::vector<Component>& comps) {
  std::vector<Solved> out;
  out.reserve(comps.size());
  for (const auto& c : comps) {
    Solved s{&c, ComponentSearch(c).run(), {}};
    for (std::size_t t = 0; t < s.best.rows.size(); ++t)
      for (auto [cl, sl] : s.best.rows[t]) s.block.push_back({static_cast<int>(t) + 1, cl + 1, sl + 1});
    out.push_back(std::move(s));
  }
  std::stable_sort(out.begin(), out.end(),
                   [](const Solved& a, const Solved& b) { return prefix_cmp(a.block, b.block) < 0; });
  return out;
}

}  // namespace

std::vector<Parastrophe> valid_parastrophisms(Dims dims) {
  std::vector<Parastrophe> out;
  for (const auto& pi : Parastrophe::all())
    if (admissible(pi, dims)) out.push_back(pi);
  return out;
}

Plr canonical_isotopism(const Plr& p) {
  auto comps = components(p);
  auto solved = solve_all(comps);
  std::vector<Entry> out;
  out.reserve(p.size());
  int ro = 0, co = 0, so = 0;
  for (const auto& s : solved) {
    for (const auto& t : s.block) out.push_back({t[0] + ro, t[1] + co, t[2] + so});
    ro += static_cast<int>(s.comp->rows.size());
    co += static_cast<int>(s.comp->cols.size());
    so += static_cast<int>(s.comp->syms.size());
  }
  return Plr::trusted(p.dims(), std::move(out));
}

Isotopism canonical_labelling(const Plr& p) {
  const Dims& d = p.dims();
  auto comps = components(p);
  auto solved = solve_all(comps);
  std::vector<int> a(d.r, 0), b(d.s, 0), g(d.n, 0);
  int ro = 0, co = 0, so = 0;
  for (const auto& s : solved) {
    const Component& c = *s.comp;
    for (std::size_t t = 0; t < s.best.row_order.size(); ++t) a[c.rows[s.best.row_order[t]]] = ro + static_cast<int>(t) + 1;
    for (std::size_t j = 0; j < c.cols.size(); ++j) b[c.cols[j]] = co + s.best.col_lab[j] + 1;
    for (std::size_t k = 0; k < c.syms.size(); ++k) g[c.syms[k]] = so + s.best.sym_lab[k] + 1;
    ro += static_cast<int>(c.rows.size());
    co += static_cast<int>(c.cols.size());
    so += static_cast<int>(c.syms.size());
  }
  auto fill = [](std::vector<int>& v, int next) {
    for (auto& x : v)
      if (x == 0) x = ++next;
  };
  fill(a, ro);
  fill(b, co);
  fill(g, so);
  return {Permutation(a), Permutation(b), Permutation(g)};
}

Plr canonical_paratopism(const Plr& p) {
  std::optional<Plr> best;
  for (const auto& pi : valid_parastrophisms(p.dims())) {
    Plr c = canonical_isotopism(parastrophe_unchecked(p, pi));
    if (!best || c.entries() < best->entries()) best = std::move(c);
  }
  return *best;
}

Plr canonical_form(const Plr& p, const GroupSpec& g) {
  if (p.dims() != g.dims)
    fail(ErrorKind::DimensionMismatch, "PLR dims " + p.dims().to_string() + " differ from group dims " + g.dims.to_string());
  return g.kind == GroupKind::Isotopism ? canonical_isotopism(p) : canonical_paratopism(p);
}

}  // namespace plr
