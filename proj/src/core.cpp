#include "plr/core.hpp"

#include <algorithm>
#include <charconv>
#include <map>
#include <numeric>
#include <sstream>

#include "plr/bigint.hpp"

namespace plr {

const char* kind_name(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorKind::LatinViolation: return "LatinViolation";
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::InvalidParastrophe: return "InvalidParastrophe";
    case ErrorKind::WeightMismatch: return "WeightMismatch";
    case ErrorKind::NotSquare: return "NotSquare";
    case ErrorKind::LengthMismatch: return "LengthMismatch";
    case ErrorKind::UnknownStrategy: return "UnknownStrategy";
    case ErrorKind::RowMismatch: return "RowMismatch";
    case ErrorKind::InfeasibleSystem: return "InfeasibleSystem";
    case ErrorKind::UnsupportedConstraint: return "UnsupportedConstraint";
    case ErrorKind::BackendUnavailable: return "BackendUnavailable";
    case ErrorKind::MissingRho: return "MissingRho";
    case ErrorKind::SizeOutOfRange: return "SizeOutOfRange";
    case ErrorKind::NonIntegerResult: return "NonIntegerResult";
    case ErrorKind::LimitExceeded: return "LimitExceeded";
    case ErrorKind::NotSeminetSource: return "NotSeminetSource";
    case ErrorKind::RankOutOfRange: return "RankOutOfRange";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
  }
  return "Error";
}

// ---- big integer helpers --------------------------------------------------

BigInt parse_bigint(const std::string& text) {
  if (text.empty() || !std::all_of(text.begin(), text.end(), [](char c) { return c >= '0' && c <= '9'; }))
    fail(ErrorKind::ParseError, "not a non-negative integer: '" + text + "'");
  return BigInt(text);
}

BigInt factorial(int n) {
  BigInt f = 1;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

BigInt falling(int n, int k) {
  if (k < 0 || k > n) return 0;
  BigInt f = 1;
  for (int i = 0; i < k; ++i) f *= (n - i);
  return f;
}

BigInt binomial(int n, int k) {
  if (k < 0 || n < 0 || k > n) return 0;
  k = std::min(k, n - k);
  BigInt b = 1;
  for (int i = 1; i <= k; ++i) {
    b *= (n - k + i);
    b /= i;
  }
  return b;
}

BigInt total(const Spectrum& sp) {
  BigInt t = 0;
  for (const auto& v : sp) t += v;
  return t;
}

void accumulate(Spectrum& into, const Spectrum& add, const BigInt& factor) {
  if (into.size() < add.size()) into.resize(add.size());
  for (std::size_t i = 0; i < add.size(); ++i)
    if (!add[i].is_zero()) into[i] += add[i] * factor;
}

// ---- dims and PLR -----------------------------------------------------------

std::string Dims::to_string() const {
  return std::to_string(r) + "x" + std::to_string(s) + "x" + std::to_string(n);
}

Dims make_dims(int r, int s, int n) {
  if (r < 1 || s < 1 || n < 1)
    fail(ErrorKind::InvalidArgument, "dimensions must be positive, got " + std::to_string(r) + "," +
                                         std::to_string(s) + "," + std::to_string(n));
  return Dims{r, s, n};
}

namespace {

std::string entry_text(const Entry& e) {
  return "(" + std::to_string(e.row) + "," + std::to_string(e.col) + "," + std::to_string(e.sym) + ")";
}

void validate(const Dims& d, const std::vector<Entry>& entries) {
  if (d.r < 1 || d.s < 1 || d.n < 1) fail(ErrorKind::InvalidArgument, "dimensions must be positive");
  std::vector<char> cell(d.r * d.s, 0), rowsym(d.r * d.n, 0), colsym(d.s * d.n, 0);
  for (const auto& e : entries) {
    if (e.row < 1 || e.row > d.r || e.col < 1 || e.col > d.s || e.sym < 1 || e.sym > d.n)
      fail(ErrorKind::IndexOutOfRange, entry_text(e) + " outside " + d.to_string());
    char& c = cell[(e.row - 1) * d.s + e.col - 1];
    char& rs = rowsym[(e.row - 1) * d.n + e.sym - 1];
    char& cs = colsym[(e.col - 1) * d.n + e.sym - 1];
    if (c) fail(ErrorKind::LatinViolation, "cell (" + std::to_string(e.row) + "," + std::to_string(e.col) + ") filled twice");
    if (rs) fail(ErrorKind::LatinViolation, "symbol " + std::to_string(e.sym) + " repeated in row " + std::to_string(e.row));
    if (cs) fail(ErrorKind::LatinViolation, "symbol " + std::to_string(e.sym) + " repeated in column " + std::to_string(e.col));
    c = rs = cs = 1;
  }
}

int parse_int(std::string_view& sv) {
  while (!sv.empty() && sv.front() == ' ') sv.remove_prefix(1);
  int v = 0;
  auto [ptr, ec] = std::from_chars(sv.data(), sv.data() + sv.size(), v);
  if (ec != std::errc()) fail(ErrorKind::ParseError, "expected integer near '" + std::string(sv) + "'");
  sv.remove_prefix(ptr - sv.data());
  return v;
}

void expect(std::string_view& sv, char c) {
  while (!sv.empty() && sv.front() == ' ') sv.remove_prefix(1);
  if (sv.empty() || sv.front() != c)
    fail(ErrorKind::ParseError, std::string("expected '") + c + "' near '" + std::string(sv) + "'");
  sv.remove_prefix(1);
}

}  // namespace

Plr::Plr(Dims dims, std::vector<Entry> entries) : dims_(dims), entries_(std::move(entries)) {
  validate(dims_, entries_);
  std::sort(entries_.begin(), entries_.end());
}

Plr Plr::trusted(Dims dims, std::vector<Entry> entries) {
  Plr p;
  p.dims_ = dims;
  p.entries_ = std::move(entries);
  return p;
}

std::optional<int> Plr::at(int row, int col) const {
  auto it = std::lower_bound(entries_.begin(), entries_.end(), Entry{row, col, 0});
  if (it != entries_.end() && it->row == row && it->col == col) return it->sym;
  return std::nullopt;
}

bool Plr::operator<(const Plr& other) const {
  auto a = std::array<int, 3>{dims_.r, dims_.s, dims_.n};
  auto b = std::array<int, 3>{other.dims_.r, other.dims_.s, other.dims_.n};
  if (a != b) return a < b;
  return entries_ < other.entries_;
}

std::string Plr::to_text() const {
  std::string out = std::to_string(dims_.r) + " " + std::to_string(dims_.s) + " " + std::to_string(dims_.n) + " :";
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    out += i == 0 ? " " : ";";
    out += entry_text(entries_[i]);
  }
  return out;
}

Plr Plr::from_text(std::string_view text) {
  std::string_view sv = text;
  Dims d;
  d.r = parse_int(sv);
  d.s = parse_int(sv);
  d.n = parse_int(sv);
  expect(sv, ':');
  std::vector<Entry> entries;
  auto skip_ws = [&] { while (!sv.empty() && (sv.front() == ' ' || sv.front() == '\n' || sv.front() == '\t')) sv.remove_prefix(1); };
  skip_ws();
  while (!sv.empty()) {
    expect(sv, '(');
    Entry e;
    e.row = parse_int(sv);
    expect(sv, ',');
    e.col = parse_int(sv);
    expect(sv, ',');
    e.sym = parse_int(sv);
    expect(sv, ')');
    entries.push_back(e);
    skip_ws();
    if (!sv.empty() && sv.front() == ';') sv.remove_prefix(1);
    skip_ws();
  }
  return Plr(d, std::move(entries));
}

// ---- permutations and isotopisms -------------------------------------------

Permutation::Permutation(std::vector<int> images) : images_(std::move(images)) {
  std::vector<char> seen(images_.size() + 1, 0);
  for (int v : images_) {
    if (v < 1 || v > size() || seen[v]) fail(ErrorKind::InvalidArgument, "not a permutation");
    seen[v] = 1;
  }
}

Permutation Permutation::identity(int size) {
  std::vector<int> v(size);
  std::iota(v.begin(), v.end(), 1);
  return Permutation(std::move(v));
}

Permutation Permutation::inverse() const {
  std::vector<int> inv(images_.size());
  for (int i = 0; i < size(); ++i) inv[images_[i] - 1] = i + 1;
  Permutation p;
  p.images_ = std::move(inv);
  return p;
}

Permutation Permutation::operator*(const Permutation& b) const {
  if (size() != b.size()) fail(ErrorKind::DimensionMismatch, "composing permutations of different sizes");
  Permutation p;
  p.images_.resize(images_.size());
  for (int i = 1; i <= size(); ++i) p.images_[i - 1] = (*this)(b(i));
  return p;
}

Isotopism Isotopism::identity(Dims dims) {
  return {Permutation::identity(dims.r), Permutation::identity(dims.s), Permutation::identity(dims.n)};
}

Plr apply(const Isotopism& g, const Plr& p) {
  const Dims& d = p.dims();
  if (g.alpha.size() != d.r || g.beta.size() != d.s || g.gamma.size() != d.n)
    fail(ErrorKind::DimensionMismatch, "isotopism sizes do not match " + d.to_string());
  std::vector<Entry> out;
  out.reserve(p.size());
  for (const auto& e : p.entries()) out.push_back({g.alpha(e.row), g.beta(e.col), g.gamma(e.sym)});
  std::sort(out.begin(), out.end());
  return Plr::trusted(d, std::move(out));
}

Isotopism compose(const Isotopism& g, const Isotopism& h) {
  return {g.alpha * h.alpha, g.beta * h.beta, g.gamma * h.gamma};
}

Isotopism inverse(const Isotopism& g) { return {g.alpha.inverse(), g.beta.inverse(), g.gamma.inverse()}; }

// ---- parastrophes -----------------------------------------------------------

const std::array<Parastrophe, 6>& Parastrophe::all() {
  static const std::array<Parastrophe, 6> list = {
      Parastrophe({0, 1, 2}), Parastrophe({1, 0, 2}), Parastrophe({2, 1, 0}),
      Parastrophe({0, 2, 1}), Parastrophe({1, 2, 0}), Parastrophe({2, 0, 1})};
  return list;
}

Parastrophe Parastrophe::operator*(const Parastrophe& b) const {
  return Parastrophe({images_[b(0)], images_[b(1)], images_[b(2)]});
}

Parastrophe Parastrophe::inverse() const {
  std::array<int, 3> inv{};
  for (int a = 0; a < 3; ++a) inv[images_[a]] = a;
  return Parastrophe(inv);
}

std::string Parastrophe::name() const {
  if (is_identity()) return "id";
  std::string out;
  std::array<bool, 3> done{};
  for (int a = 0; a < 3; ++a) {
    if (done[a] || images_[a] == a) continue;
    out += "(";
    for (int b = a; !done[b]; b = images_[b]) {
      done[b] = true;
      out += static_cast<char>('1' + b);
    }
    out += ")";
  }
  return out;
}

Parastrophe Parastrophe::from_name(std::string_view name) {
  for (const auto& p : all())
    if (p.name() == name) return p;
  fail(ErrorKind::InvalidArgument, "unknown parastrophe '" + std::string(name) + "'");
}

Dims apply(const Parastrophe& pi, Dims dims) {
  Dims out;
  for (int a = 0; a < 3; ++a) out[pi(a)] = dims[a];
  return out;
}

bool admissible(const Parastrophe& pi, Dims dims) {
  Dims t = apply(pi, dims);
  return t.r <= t.s && t.s <= t.n;
}

Plr parastrophe_unchecked(const Plr& p, const Parastrophe& pi) {
  std::vector<Entry> out;
  out.reserve(p.size());
  for (const auto& e : p.entries()) {
    Entry q;
    for (int a = 0; a < 3; ++a) q[pi(a)] = e[a];
    out.push_back(q);
  }
  std::sort(out.begin(), out.end());
  return Plr::trusted(apply(pi, p.dims()), std::move(out));
}

Plr parastrophe(const Plr& p, const Parastrophe& pi) {
  if (!admissible(pi, p.dims()))
    fail(ErrorKind::InvalidParastrophe, pi.name() + " maps " + p.dims().to_string() + " to " +
                                            apply(pi, p.dims()).to_string());
  return parastrophe_unchecked(p, pi);
}

Plr apply(const Paratopism& g, const Plr& p) { return apply(g.iso, parastrophe(p, g.pi)); }

// ---- types and structures ---------------------------------------------------

int CountTuple::weight() const { return std::accumulate(values.begin(), values.end(), 0); }

std::string CountTuple::to_string() const {
  std::string out = "(";
  for (std::size_t i = 0; i < values.size(); ++i) out += (i ? "," : "") + std::to_string(values[i]);
  return out + ")";
}

Structure::Structure(std::vector<int> p) : parts(std::move(p)) {
  parts.erase(std::remove(parts.begin(), parts.end(), 0), parts.end());
  for (int v : parts)
    if (v < 0) fail(ErrorKind::InvalidArgument, "negative part in structure");
  std::sort(parts.begin(), parts.end(), std::greater<>());
}

Structure Structure::of(const CountTuple& t) { return Structure(t.values); }

Structure Structure::parse(std::string_view text) {
  std::vector<int> parts;
  std::string s(text);
  if (s.find('^') == std::string::npos && s.find(',') != std::string::npos) {
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
      std::string_view sv = tok;
      parts.push_back(parse_int(sv));
    }
  } else {
    std::stringstream ss(s);
    std::string tok;
    while (ss >> tok) {
      auto caret = tok.find('^');
      std::string_view base = std::string_view(tok).substr(0, caret);
      int b = parse_int(base);
      int e = 1;
      if (caret != std::string::npos) {
        std::string_view ex = std::string_view(tok).substr(caret + 1);
        e = parse_int(ex);
      }
      for (int i = 0; i < e; ++i) parts.push_back(b);
    }
  }
  if (parts.empty()) fail(ErrorKind::ParseError, "empty structure '" + s + "'");
  return Structure(std::move(parts));
}

int Structure::weight() const { return std::accumulate(parts.begin(), parts.end(), 0); }

CountTuple Structure::as_tuple(int length) const {
  if (length < this->length()) fail(ErrorKind::LengthMismatch, "structure longer than " + std::to_string(length));
  std::vector<int> v(parts);
  v.resize(length, 0);
  return CountTuple(std::move(v));
}

std::string Structure::to_string() const {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) out += (i ? "," : "") + std::to_string(parts[i]);
  return out;
}

std::string Structure::to_compact() const {
  std::string out;
  for (std::size_t i = 0; i < parts.size();) {
    std::size_t j = i;
    while (j < parts.size() && parts[j] == parts[i]) ++j;
    if (!out.empty()) out += " ";
    out += std::to_string(parts[i]);
    if (j - i > 1) out += "^" + std::to_string(j - i);
    i = j;
  }
  return out;
}

std::string StructureTriple::to_string() const {
  return "(" + z1.to_compact() + " | " + z2.to_compact() + " | " + z3.to_compact() + ")";
}

TypeTriple type_of(const Plr& p) {
  const Dims& d = p.dims();
  std::vector<int> r(d.r, 0), c(d.s, 0), s(d.n, 0);
  for (const auto& e : p.entries()) {
    ++r[e.row - 1];
    ++c[e.col - 1];
    ++s[e.sym - 1];
  }
  return {CountTuple(std::move(r)), CountTuple(std::move(c)), CountTuple(std::move(s))};
}

StructureTriple structure_of(const Plr& p) {
  TypeTriple t = type_of(p);
  return {Structure::of(t.R), Structure::of(t.C), Structure::of(t.S)};
}

CountTuple conjugate(const CountTuple& t) {
  int m = t.weight();
  std::vector<int> out(m, 0);
  for (int v : t.values)
    for (int i = 0; i < v && i < m; ++i) ++out[i];
  return CountTuple(std::move(out));
}

bool dominates(const CountTuple& t, const CountTuple& u) {
  if (t.weight() != u.weight())
    fail(ErrorKind::WeightMismatch, t.to_string() + " and " + u.to_string() + " have different weights");
  std::size_t len = std::max(t.values.size(), u.values.size());
  long long st = 0, su = 0;
  for (std::size_t i = 0; i < len; ++i) {
    st += i < t.values.size() ? t.values[i] : 0;
    su += i < u.values.size() ? u.values[i] : 0;
    if (st > su) return false;
  }
  return true;
}

std::vector<std::vector<int>> shape(const Plr& p) {
  std::vector<std::vector<int>> b(p.dims().r, std::vector<int>(p.dims().s, 0));
  for (const auto& e : p.entries()) b[e.row - 1][e.col - 1] = 1;
  return b;
}

namespace {
void require_square(const Plr& p) {
  if (!p.dims().is_square()) fail(ErrorKind::NotSquare, "expected a partial Latin square, got " + p.dims().to_string());
}
bool all_positive(const CountTuple& t) {
  return std::all_of(t.values.begin(), t.values.end(), [](int v) { return v > 0; });
}
}  // namespace

bool is_noncompressible(const Plr& p) {
  require_square(p);
  TypeTriple t = type_of(p);
  return all_positive(t.R) || all_positive(t.C) || all_positive(t.S);
}

bool is_regular(const Plr& p) {
  require_square(p);
  TypeTriple t = type_of(p);
  for (const auto& e : p.entries()) {
    bool lone_row = t.R[e.row - 1] == 1;
    bool lone_col = t.C[e.col - 1] == 1;
    if (lone_row && lone_col) return false;
    if ((lone_row || lone_col) && t.S[e.sym - 1] < 2) return false;
  }
  return true;
}

// ---- tripartite view --------------------------------------------------------

TripartiteGraph to_tripartite(const Plr& p) {
  TripartiteGraph g;
  g.dims = p.dims();
  for (const auto& e : p.entries()) {
    int idx = static_cast<int>(g.row_col.size());
    g.row_col.emplace_back(e.row, e.col);
    g.row_sym.emplace_back(e.row, e.sym);
    g.col_sym.emplace_back(e.col, e.sym);
    g.triangles.push_back({idx, idx, idx});
  }
  return g;
}

bool TripartiteGraph::is_uniform() const {
  std::vector<int> rc(dims.r + 1), rs(dims.r + 1), cr(dims.s + 1), cs(dims.s + 1), sr(dims.n + 1), sc(dims.n + 1);
  for (auto [a, b] : row_col) { ++rc[a]; ++cr[b]; }
  for (auto [a, b] : row_sym) { ++rs[a]; ++sr[b]; }
  for (auto [a, b] : col_sym) { ++cs[a]; ++sc[b]; }
  return rc == rs && cr == cs && sr == sc;
}

bool TripartiteGraph::triangles_partition_edges() const {
  std::vector<int> u1(row_col.size()), u2(row_sym.size()), u3(col_sym.size());
  for (const auto& t : triangles) {
    if (t[0] < 0 || t[0] >= (int)u1.size() || t[1] < 0 || t[1] >= (int)u2.size() || t[2] < 0 || t[2] >= (int)u3.size())
      return false;
    auto [r1, c1] = row_col[t[0]];
    auto [r2, s2] = row_sym[t[1]];
    auto [c3, s3] = col_sym[t[2]];
    if (r1 != r2 || c1 != c3 || s2 != s3) return false;
    ++u1[t[0]];
    ++u2[t[1]];
    ++u3[t[2]];
  }
  auto once = [](const std::vector<int>& v) { return std::all_of(v.begin(), v.end(), [](int x) { return x == 1; }); };
  return once(u1) && once(u2) && once(u3);
}

std::vector<std::vector<int>> TripartiteGraph::biadjacency(int axis_a, int axis_b) const {
  if (axis_a > axis_b) std::swap(axis_a, axis_b);
  const std::vector<std::pair<int, int>>* edges =
      axis_a == kRow ? (axis_b == kCol ? &row_col : &row_sym) : &col_sym;
  std::vector<std::vector<int>> m(dims[axis_a], std::vector<int>(dims[axis_b], 0));
  for (auto [a, b] : *edges) m[a - 1][b - 1] = 1;
  return m;
}

}  // namespace plr
