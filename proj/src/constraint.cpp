#include "plr/constraint.hpp"

#include <algorithm>
#include <functional>
#include <mutex>
#include <set>

#include <json.hpp>

#include "engine.hpp"
#include "plr/parallel.hpp"

namespace plr {

Entry var_entry(const Dims& d, int idx) {
  int k = idx % d.n;
  int cell = idx / d.n;
  return {cell / d.s + 1, cell % d.s + 1, k + 1};
}

bool ConstraintSystem::is_fixed_one(int v) const { return std::binary_search(fixed_one.begin(), fixed_one.end(), v); }
bool ConstraintSystem::is_fixed_zero(int v) const { return std::binary_search(fixed_zero.begin(), fixed_zero.end(), v); }

namespace {

void normalize(std::vector<int>& v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
}

void refresh_feasibility(ConstraintSystem& sys) {
  if (sys.infeasible) return;
  for (int v : sys.fixed_one)
    if (sys.is_fixed_zero(v)) {
      sys.infeasible = true;
      return;
    }
  const auto& cf = sys.conflicts;
  for (std::size_t a = 0; a < sys.fixed_one.size(); ++a)
    for (std::size_t b = a + 1; b < sys.fixed_one.size(); ++b)
      if (std::binary_search(cf.begin(), cf.end(), std::make_pair(sys.fixed_one[a], sys.fixed_one[b]))) {
        sys.infeasible = true;
        return;
      }
  if (sys.total_size && static_cast<int>(sys.fixed_one.size()) > *sys.total_size) sys.infeasible = true;
}

}  // namespace

ConstraintSystem latin_system(Dims dims) {
  ConstraintSystem sys;
  sys.dims = make_dims(dims.r, dims.s, dims.n);
  const Dims& d = sys.dims;
  for (int i = 1; i <= d.r; ++i)
    for (int j = 1; j <= d.s; ++j)
      for (int k = 1; k <= d.n; ++k) {
        int v = var_index(d, i, j, k);
        for (int i2 = i + 1; i2 <= d.r; ++i2) sys.conflicts.emplace_back(v, var_index(d, i2, j, k));
        for (int j2 = j + 1; j2 <= d.s; ++j2) sys.conflicts.emplace_back(v, var_index(d, i, j2, k));
        for (int k2 = k + 1; k2 <= d.n; ++k2) sys.conflicts.emplace_back(v, var_index(d, i, j, k2));
      }
  std::sort(sys.conflicts.begin(), sys.conflicts.end());
  return sys;
}

ConstraintSystem with_type(ConstraintSystem sys, const CountTuple& R, const CountTuple& C, const CountTuple& S) {
  const Dims& d = sys.dims;
  if (R.size() != d.r || C.size() != d.s || S.size() != d.n)
    fail(ErrorKind::LengthMismatch, "type lengths " + std::to_string(R.size()) + "," + std::to_string(C.size()) + "," +
                                        std::to_string(S.size()) + " vs dims " + d.to_string());
  if (R.weight() != C.weight() || C.weight() != S.weight())
    fail(ErrorKind::WeightMismatch, "type components have different weights");
  for (const auto* t : {&R, &C, &S})
    for (int v : t->values)
      if (v < 0) fail(ErrorKind::InvalidArgument, "negative count in type");
  sys.cardinality = Cardinality{R, C, S};
  return sys;
}

ConstraintSystem with_regularity(ConstraintSystem sys, const CountTuple& R, const CountTuple& C, const CountTuple& S) {
  const Dims& d = sys.dims;
  if (!d.is_square()) fail(ErrorKind::NotSquare, "regularity needs square dims, got " + d.to_string());
  if (R.size() != d.r || C.size() != d.s || S.size() != d.n)
    fail(ErrorKind::LengthMismatch, "type lengths do not match dims " + d.to_string());
  for (int i = 1; i <= d.r; ++i)
    for (int j = 1; j <= d.s; ++j)
      for (int k = 1; k <= d.n; ++k) {
        bool ri = R[i - 1] == 1, cj = C[j - 1] == 1, sk = S[k - 1] == 1;
        if ((ri && cj) || (ri && sk) || (cj && sk)) sys.fixed_zero.push_back(var_index(d, i, j, k));
      }
  normalize(sys.fixed_zero);
  refresh_feasibility(sys);
  return sys;
}

ConstraintSystem with_size(ConstraintSystem sys, int m) {
  if (m < 0 || m > sys.dims.cells())
    fail(ErrorKind::SizeOutOfRange, "size " + std::to_string(m) + " outside 0.." + std::to_string(sys.dims.cells()));
  sys.total_size = m;
  refresh_feasibility(sys);
  return sys;
}

ConstraintSystem with_fixings(ConstraintSystem sys, const std::vector<int>& ones, const std::vector<int>& zeros) {
  const int V = sys.dims.num_vars();
  for (int v : ones)
    if (v < 0 || v >= V) fail(ErrorKind::IndexOutOfRange, "variable " + std::to_string(v));
  for (int v : zeros)
    if (v < 0 || v >= V) fail(ErrorKind::IndexOutOfRange, "variable " + std::to_string(v));
  sys.fixed_one.insert(sys.fixed_one.end(), ones.begin(), ones.end());
  sys.fixed_zero.insert(sys.fixed_zero.end(), zeros.begin(), zeros.end());
  normalize(sys.fixed_one);
  normalize(sys.fixed_zero);
  refresh_feasibility(sys);
  return sys;
}

ConstraintSystem with_conflicts(ConstraintSystem sys, const std::vector<std::pair<int, int>>& extra) {
  const int V = sys.dims.num_vars();
  for (auto [a, b] : extra) {
    if (a < 0 || b < 0 || a >= V || b >= V) fail(ErrorKind::IndexOutOfRange, "conflict outside variable range");
    if (a == b) fail(ErrorKind::InvalidArgument, "a variable cannot conflict with itself");
    sys.conflicts.emplace_back(std::min(a, b), std::max(a, b));
  }
  std::sort(sys.conflicts.begin(), sys.conflicts.end());
  sys.conflicts.erase(std::unique(sys.conflicts.begin(), sys.conflicts.end()), sys.conflicts.end());
  refresh_feasibility(sys);
  return sys;
}

// ---- first-row decomposition -------------------------------------------------

namespace {

std::string entries_text(const std::vector<Entry>& es) {
  std::string out = "[";
  for (std::size_t i = 0; i < es.size(); ++i) {
    if (i) out += ",";
    out += "(" + std::to_string(es[i].row) + "," + std::to_string(es[i].col) + "," + std::to_string(es[i].sym) + ")";
  }
  return out + "]";
}

void insert_sorted(std::vector<Entry>& v, const Entry& e) {
  auto it = std::lower_bound(v.begin(), v.end(), e);
  if (it == v.end() || *it != e) v.insert(it, e);
}

bool contains(const std::vector<Entry>& v, const Entry& e) { return std::binary_search(v.begin(), v.end(), e); }

void lex_adaptive(int k, std::vector<int> free_cols, const TriangularCell& cur, std::vector<TriangularCell>& out) {
  const int n = cur.dims.n;
  TriangularCell absent = cur;
  for (int j : free_cols) insert_sorted(absent.zeros, {1, j, k});
  out.push_back(std::move(absent));
  for (auto it = free_cols.rbegin(); it != free_cols.rend(); ++it) {
    const int j = *it;
    TriangularCell placed = cur;
    insert_sorted(placed.ones, {1, j, k});
    for (int j2 : free_cols)
      if (j2 != j) insert_sorted(placed.zeros, {1, j2, k});
    for (int k2 = 1; k2 <= n; ++k2) {
      Entry e{1, j, k2};
      if (k2 != k && !contains(placed.ones, e)) insert_sorted(placed.zeros, e);
    }
    std::vector<int> rest;
    for (int j2 : free_cols)
      if (j2 != j) rest.push_back(j2);
    if (j == free_cols.front() && k + 1 <= n && rest.size() >= 2)
      lex_adaptive(k + 1, std::move(rest), placed, out);
    else
      out.push_back(std::move(placed));
  }
}

void full_assignment(int j, std::vector<char>& used, TriangularCell& cur, std::vector<TriangularCell>& out) {
  const Dims& d = cur.dims;
  if (j > d.s) {
    TriangularCell cell = cur;
    for (int jj = 1; jj <= d.s; ++jj)
      for (int k = 1; k <= d.n; ++k)
        if (!contains(cell.ones, {1, jj, k})) cell.zeros.push_back({1, jj, k});
    std::sort(cell.zeros.begin(), cell.zeros.end());
    out.push_back(std::move(cell));
    return;
  }
  full_assignment(j + 1, used, cur, out);
  for (int k = 1; k <= d.n; ++k) {
    if (used[k]) continue;
    used[k] = 1;
    insert_sorted(cur.ones, {1, j, k});
    full_assignment(j + 1, used, cur, out);
    cur.ones.erase(std::find(cur.ones.begin(), cur.ones.end(), Entry{1, j, k}));
    used[k] = 0;
  }
}

}  // namespace

std::string TriangularCell::trace() const {
  return "row=" + std::to_string(row) + " ones=" + entries_text(ones) + " zeros=" + entries_text(zeros);
}

int TriangularCell::max_row_size() const {
  // Maximum matching between columns and symbols over the unfixed-to-zero
  // pairs, honouring the fixed ones.
  const int s = dims.s, n = dims.n;
  std::vector<std::vector<char>> allowed(s + 1, std::vector<char>(n + 1, 1));
  for (const auto& e : zeros) allowed[e.col][e.sym] = 0;
  for (const auto& e : ones) {
    for (int k = 1; k <= n; ++k)
      if (k != e.sym) allowed[e.col][k] = 0;
    for (int j = 1; j <= s; ++j)
      if (j != e.col) allowed[j][e.sym] = 0;
  }
  std::vector<int> match_sym(n + 1, 0);
  std::function<bool(int, std::vector<char>&)> augment = [&](int j, std::vector<char>& seen) {
    for (int k = 1; k <= n; ++k) {
      if (!allowed[j][k] || seen[k]) continue;
      seen[k] = 1;
      if (!match_sym[k] || augment(match_sym[k], seen)) {
        match_sym[k] = j;
        return true;
      }
    }
    return false;
  };
  int size = 0;
  for (int j = 1; j <= s; ++j) {
    std::vector<char> seen(n + 1, 0);
    if (augment(j, seen)) ++size;
  }
  return size;
}

Strategy parse_strategy(const std::string& name) {
  if (name == "lex-adaptive") return Strategy::LexAdaptive;
  if (name == "full-assignment") return Strategy::FullAssignment;
  fail(ErrorKind::UnknownStrategy, "unknown decomposition strategy '" + name + "'");
}

std::string strategy_name(Strategy s) { return s == Strategy::LexAdaptive ? "lex-adaptive" : "full-assignment"; }

std::vector<TriangularCell> decompose_first_row(Dims dims, Strategy strategy) {
  dims = make_dims(dims.r, dims.s, dims.n);
  std::vector<TriangularCell> out;
  TriangularCell root;
  root.dims = dims;
  root.row = 1;
  if (strategy == Strategy::LexAdaptive) {
    std::vector<int> cols(dims.s);
    for (int j = 0; j < dims.s; ++j) cols[j] = j + 1;
    lex_adaptive(1, cols, root, out);
  } else if (strategy == Strategy::FullAssignment) {
    std::vector<char> used(dims.n + 1, 0);
    full_assignment(1, used, root, out);
  } else {
    fail(ErrorKind::UnknownStrategy, "unknown decomposition strategy");
  }
  return out;
}

TriangularCell shift_cell(const TriangularCell& cell, int row) {
  if (row < 1 || row > cell.dims.r)
    fail(ErrorKind::IndexOutOfRange, "row " + std::to_string(row) + " outside 1.." + std::to_string(cell.dims.r));
  TriangularCell out = cell;
  out.row = row;
  for (auto& e : out.ones) e.row = row;
  for (auto& e : out.zeros) e.row = row;
  return out;
}

ConstraintSystem assemble_K(Dims dims, const std::vector<TriangularCell>& cells) {
  if (static_cast<int>(cells.size()) != dims.r)
    fail(ErrorKind::RowMismatch, "expected " + std::to_string(dims.r) + " cells, got " + std::to_string(cells.size()));
  ConstraintSystem sys = latin_system(dims);
  std::vector<int> ones, zeros;
  for (int t = 0; t < dims.r; ++t) {
    const auto& cell = cells[t];
    if (cell.row != t + 1) fail(ErrorKind::RowMismatch, "cell " + std::to_string(t) + " is for row " + std::to_string(cell.row));
    if (cell.dims != dims) fail(ErrorKind::DimensionMismatch, "cell dims differ from " + dims.to_string());
    for (const auto& e : cell.ones) {
      if (e.row != t + 1) fail(ErrorKind::RowMismatch, "cell fixes a variable outside its row");
      ones.push_back(var_index(dims, e));
    }
    for (const auto& e : cell.zeros) {
      if (e.row != t + 1) fail(ErrorKind::RowMismatch, "cell fixes a variable outside its row");
      zeros.push_back(var_index(dims, e));
    }
  }
  return with_fixings(std::move(sys), ones, zeros);
}

int forced_size(const ConstraintSystem& sys) {
  if (sys.infeasible) fail(ErrorKind::InfeasibleSystem, "system has conflicting fixings");
  return static_cast<int>(sys.fixed_one.size());
}

// ---- spectra ---------------------------------------------------------------

Spectrum weight_spectrum(const ConstraintSystem& sys, const SolveOptions& opts) {
  if (opts.backend == Backend::Recursion) {
    auto memo = detail::make_recursion_memo();
    return detail::recursion_spectrum(sys, memo.get());
  }
  return detail::enumeration_spectrum(sys, opts.jobs);
}

Spectrum hilbert_function(const ConstraintSystem& sys, const SolveOptions& opts) {
  const int f = forced_size(sys);
  Spectrum sp = weight_spectrum(sys, opts);
  return Spectrum(sp.begin() + std::min<std::size_t>(f, sp.size()), sp.end());
}

namespace {

struct Multiset {
  std::vector<int> cells;  // 0-based, non-decreasing
  BigInt multiplicity;
};

std::vector<Multiset> cell_multisets(const std::vector<TriangularCell>& cells, int r, std::optional<int> size) {
  const int t = static_cast<int>(cells.size());
  std::vector<int> cap(t), forced(t);
  for (int c = 0; c < t; ++c) {
    cap[c] = cells[c].max_row_size();
    forced[c] = static_cast<int>(cells[c].ones.size());
  }
  std::vector<Multiset> out;
  std::vector<int> cur;
  const BigInt rfact = factorial(r);
  std::function<void(int, int, int)> rec = [&](int from, int cap_sum, int forced_sum) {
    const int placed = static_cast<int>(cur.size());
    if (size) {
      if (forced_sum > *size) return;
      int best_rest = 0;
      for (int c = from; c < t; ++c) best_rest = std::max(best_rest, cap[c]);
      if (cap_sum + (r - placed) * best_rest < *size) return;
    }
    if (placed == r) {
      BigInt denom = 1;
      for (int a = 0; a < r;) {
        int b = a;
        while (b < r && cur[b] == cur[a]) ++b;
        denom *= factorial(b - a);
        a = b;
      }
      out.push_back({cur, rfact / denom});
      return;
    }
    for (int c = from; c < t; ++c) {
      cur.push_back(c);
      rec(c, cap_sum + cap[c], forced_sum + forced[c]);
      cur.pop_back();
    }
  };
  rec(0, 0, 0);
  return out;
}

}  // namespace

std::vector<Prop1Term> prop1_terms(Dims dims, const Prop1Options& opts) {
  dims = make_dims(dims.r, dims.s, dims.n);
  if (opts.size && (*opts.size < 0 || *opts.size > dims.cells()))
    fail(ErrorKind::SizeOutOfRange, "size outside 0.." + std::to_string(dims.cells()));
  const auto cells = decompose_first_row(dims, opts.strategy);
  const auto sets = cell_multisets(cells, dims.r, opts.size);
  std::vector<Prop1Term> terms(sets.size());
  std::vector<char> keep(sets.size(), 0);
  const int jobs = std::max(1, opts.jobs);
  std::vector<std::unique_ptr<detail::RecursionMemo, void (*)(detail::RecursionMemo*)>> memos;
  for (int w = 0; w < worker_count(sets.size(), jobs); ++w) memos.push_back(detail::make_recursion_memo());
  parallel_for(sets.size(), jobs, [&](std::size_t idx, std::size_t worker) {
    const auto& ms = sets[idx];
    std::vector<TriangularCell> row_cells;
    row_cells.reserve(dims.r);
    for (int t = 0; t < dims.r; ++t) row_cells.push_back(shift_cell(cells[ms.cells[t]], t + 1));
    ConstraintSystem K = assemble_K(dims, row_cells);
    if (K.infeasible) return;
    Prop1Term term;
    for (int c : ms.cells) term.cells.push_back(c + 1);
    term.multiplicity = ms.multiplicity;
    term.forced = forced_size(K);
    if (opts.size) {
      if (term.forced > *opts.size) return;
      if (opts.inner == Backend::Recursion) {
        term.spectrum = detail::recursion_spectrum(K, memos[worker].get());
      } else {
        Spectrum one = detail::enumeration_spectrum(with_size(K, *opts.size), 1);
        term.spectrum.assign(dims.cells() + 1, 0);
        term.spectrum[*opts.size] = one[*opts.size];
      }
    } else {
      term.spectrum = opts.inner == Backend::Recursion ? detail::recursion_spectrum(K, memos[worker].get())
                                                       : detail::enumeration_spectrum(K, 1);
    }
    terms[idx] = std::move(term);
    keep[idx] = 1;
  });
  std::vector<Prop1Term> out;
  for (std::size_t i = 0; i < terms.size(); ++i)
    if (keep[i]) out.push_back(std::move(terms[i]));
  return out;
}

Spectrum prop1_spectrum(Dims dims, const Prop1Options& opts) {
  auto terms = prop1_terms(dims, opts);
  Spectrum total(dims.cells() + 1);
  for (const auto& t : terms) {
    if (opts.size) {
      if (static_cast<std::size_t>(*opts.size) < t.spectrum.size()) total[*opts.size] += t.multiplicity * t.spectrum[*opts.size];
    } else {
      accumulate(total, t.spectrum, t.multiplicity);
    }
  }
  total.resize(dims.cells() + 1);
  return total;
}

// ---- serialization -------------------------------------------------------------

std::string spectrum_json(const Spectrum& sp) {
  nlohmann::json j = nlohmann::json::array();
  for (const auto& v : sp) j.push_back(v.str());
  return j.dump();
}

Spectrum spectrum_from_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const std::exception& e) {
    fail(ErrorKind::ParseError, std::string("bad spectrum json: ") + e.what());
  }
  if (!j.is_array()) fail(ErrorKind::ParseError, "spectrum json must be an array");
  Spectrum sp;
  for (const auto& v : j) {
    if (!v.is_string()) fail(ErrorKind::ParseError, "spectrum entries must be decimal strings");
    sp.push_back(parse_bigint(v.get<std::string>()));
  }
  return sp;
}

}  // namespace plr
