#include "plr/seminet.hpp"

#include <algorithm>
#include <map>
#include <numeric>

#include <json.hpp>

#include "plr/canonical.hpp"
#include "plr/classify.hpp"
#include "plr/counting.hpp"

namespace plr {

Seminet seminet_from_pls(const Plr& p) {
  if (p.empty()) fail(ErrorKind::NotSeminetSource, "empty square has no points");
  if (!p.dims().is_square()) fail(ErrorKind::NotSeminetSource, "not square: " + p.dims().to_string());
  if (!is_noncompressible(p)) fail(ErrorKind::NotSeminetSource, "not non-compressible");
  if (!is_regular(p)) fail(ErrorKind::NotSeminetSource, "not regular");
  Seminet s;
  s.source = p;
  s.points = p.entries();
  for (int axis = 0; axis < 3; ++axis) {
    std::vector<int> line_of(p.dims()[axis] + 1, -1);
    for (const auto& e : s.points) line_of[e[axis]] = 0;
    int next = 0;
    for (int label = 1; label <= p.dims()[axis]; ++label)
      if (line_of[label] == 0) {
        line_of[label] = next++;
        s.labels[axis].push_back(label);
      }
    s.lines[axis].assign(next, {});
    for (std::size_t q = 0; q < s.points.size(); ++q)
      s.lines[axis][line_of[s.points[q][axis]]].push_back(static_cast<int>(q));
  }
  return s;
}

int point_rank(const Seminet& s) { return static_cast<int>(s.points.size()); }

int l_order(const Seminet& s) {
  std::size_t best = 0;
  for (const auto& cls : s.lines) best = std::max(best, cls.size());
  return static_cast<int>(best);
}

bool is_n_regular(const Seminet& s, int n) {
  for (const auto& cls : s.lines)
    for (const auto& line : cls)
      if (static_cast<int>(line.size()) != n) return false;
  return true;
}

bool is_connected(const Seminet& s) {
  const int np = point_rank(s);
  if (np == 0) return true;
  std::vector<int> parent(np);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (const auto& cls : s.lines)
    for (const auto& line : cls)
      for (std::size_t q = 1; q < line.size(); ++q) parent[find(line[q])] = find(line[0]);
  const int root = find(0);
  for (int q = 1; q < np; ++q)
    if (find(q) != root) return false;
  return true;
}

int min_line_size(const Seminet& s) {
  std::size_t best = s.points.size();
  for (const auto& cls : s.lines)
    for (const auto& line : cls) best = std::min(best, line.size());
  return static_cast<int>(best);
}

bool is_configuration(const Seminet& s) { return point_rank(s) >= 4 && min_line_size(s) >= 2 && is_connected(s); }

bool satisfies_axioms(const Seminet& s) {
  const int np = point_rank(s);
  std::array<std::vector<int>, 3> line_of;
  for (int axis = 0; axis < 3; ++axis) {
    line_of[axis].assign(np, -1);
    for (std::size_t l = 0; l < s.lines[axis].size(); ++l)
      for (int q : s.lines[axis][l]) {
        if (q < 0 || q >= np || line_of[axis][q] >= 0) return false;
        line_of[axis][q] = static_cast<int>(l);
      }
    for (int q = 0; q < np; ++q)
      if (line_of[axis][q] < 0) return false;
  }
  // Two points sharing lines of two distinct classes would be one cell or a
  // repeated symbol.
  for (int a = 0; a < 3; ++a)
    for (int b = a + 1; b < 3; ++b) {
      std::map<std::pair<int, int>, int> seen;
      for (int q = 0; q < np; ++q)
        if (++seen[{line_of[a][q], line_of[b][q]}] > 1) return false;
    }
  return true;
}

Plr reconstruct(const Seminet& s) {
  const int np = point_rank(s);
  std::vector<Entry> es(np);
  for (int axis = 0; axis < 3; ++axis)
    for (std::size_t l = 0; l < s.lines[axis].size(); ++l)
      for (int q : s.lines[axis][l]) es[q][axis] = s.labels[axis][l];
  return Plr(s.source.dims(), std::move(es));
}

Plr plr_from_grid(std::string_view grid) {
  std::vector<Entry> es;
  int row = 1, col = 0, width = 0, max_sym = 0;
  for (char ch : grid) {
    if (ch == '/') {
      ++row;
      col = 0;
      continue;
    }
    ++col;
    width = std::max(width, col);
    if (ch == '.' || ch == ' ') continue;
    if (ch < '1' || ch > '9') fail(ErrorKind::ParseError, std::string("bad grid character '") + ch + "'");
    es.push_back({row, col, ch - '0'});
    max_sym = std::max(max_sym, ch - '0');
  }
  const int order = std::max({row, width, max_sym});
  return Plr({order, order, order}, std::move(es));
}

Plr compress(const Plr& p) {
  std::array<std::vector<int>, 3> relabel;
  std::array<int, 3> used{};
  for (int axis = 0; axis < 3; ++axis) {
    relabel[axis].assign(p.dims()[axis] + 1, 0);
    for (const auto& e : p.entries()) relabel[axis][e[axis]] = 1;
    for (int label = 1; label <= p.dims()[axis]; ++label)
      if (relabel[axis][label]) relabel[axis][label] = ++used[axis];
  }
  std::vector<Entry> es;
  es.reserve(p.size());
  for (const auto& e : p.entries()) es.push_back({relabel[0][e.row], relabel[1][e.col], relabel[2][e.sym]});
  std::sort(es.begin(), es.end());
  Dims d{std::max(used[0], 1), std::max(used[1], 1), std::max(used[2], 1)};
  return Plr::trusted(d, std::move(es));
}

Plr main_class_key(const Plr& p) {
  Plr c = compress(p);
  const Dims& d = c.dims();
  return canonical_paratopism(pad_to_order(c, std::max({d.r, d.s, d.n})));
}

const std::vector<NamedGrid>& named_grids() {
  static const std::vector<NamedGrid> grids = {
      {"H", "123/2.1/31."},
      {"C1", "123/21./3.1"},
      {"C2", "123/21./3.2"},
      {"F1", "12../34../..12/..34"},
      {"F2", "1234/34../..12/...."},
      {"F3", "1234/2143/..../...."},
      {"F4", "1234/..43/21../...."},
      {"F5", "123./214./34../...."},
      {"F6", "1234/24../..13/...."},
      {"F7", "1234/.1.3/4.2./...."},
      {"F8", ".2.4/4.1./..23/13.."},
      {"F9", ".2.4/4.1./..23/31.."},
      {"F10", ".2.4/1.3./..43/21.."},
      {"F11", ".2.4/3.1./..43/21.."},
      {"F12", "324./132./41../...."},
      {"F13", "4132/2341/..../...."},
      {"F14", "342./123./41../...."},
      {"F15", "132/321/21."},
      {"F16", ".423/321./1..4/...."},
      {"F17", ".243/213./1..4/...."},
      {"F18", ".234/132./4..1/...."},
      {"F19", ".342/123./4..1/...."},
      {"F20", ".342/213./4..1/...."},
      {"F21", ".432/321./4..1/...."},
      {"F22", "12../..21/3.4./.4.3"},
      {"F23", "12../..34/4.2./.3.1"},
      {"Sem8", "12../21../..34/..43"},
  };
  return grids;
}

std::optional<std::string> named_match(const Plr& p) {
  static const std::vector<std::pair<Plr, std::string>> keys = [] {
    std::vector<std::pair<Plr, std::string>> out;
    for (const auto& g : named_grids()) out.emplace_back(main_class_key(plr_from_grid(g.grid)), g.label);
    return out;
  }();
  const Plr key = main_class_key(p);
  for (const auto& [k, label] : keys)
    if (k == key) return label;
  return std::nullopt;
}

std::vector<CensusRecord> census_rank(int rank, int jobs) {
  if (rank < 1 || rank > 8) fail(ErrorKind::RankOutOfRange, "rank must be in 1..8, got " + std::to_string(rank));
  std::vector<CensusRecord> out;
  ClassifyOptions opts;
  opts.jobs = jobs;
  opts.keep_representatives = true;
  for (const auto& zt : unordered_triples(rank, rank)) {
    // Each point lies on at most one single-point line in a regular square.
    int singles = 0;
    for (int axis = 0; axis < 3; ++axis)
      for (int part : zt[axis].parts) singles += part == 1;
    if (singles > rank) continue;
    ClassReport rep = classify_structure_triple(zt, true, opts);
    for (const auto& p : rep.representatives) {
      Seminet s = seminet_from_pls(p);
      CensusRecord rec;
      rec.rank = rank;
      rec.triple = zt;
      rec.representative = p;
      rec.connected = is_connected(s);
      rec.min_line_size = min_line_size(s);
      rec.configuration = is_configuration(s);
      rec.l_order = l_order(s);
      rec.named_match = named_match(p);
      out.push_back(std::move(rec));
    }
  }
  std::sort(out.begin(), out.end(), [](const CensusRecord& a, const CensusRecord& b) {
    if (a.triple != b.triple) return a.triple > b.triple;
    return a.representative < b.representative;
  });
  return out;
}

std::vector<CensusRecord> census(int max_rank, int jobs) {
  if (max_rank < 1 || max_rank > 8)
    fail(ErrorKind::RankOutOfRange, "max rank must be in 1..8, got " + std::to_string(max_rank));
  std::vector<CensusRecord> out;
  for (int m = 1; m <= max_rank; ++m) {
    auto part = census_rank(m, jobs);
    out.insert(out.end(), std::make_move_iterator(part.begin()), std::make_move_iterator(part.end()));
  }
  return out;
}

std::string census_record_json(const CensusRecord& rec) {
  nlohmann::ordered_json j;
  j["rank"] = rec.rank;
  j["structure"] = {rec.triple.z1.to_string(), rec.triple.z2.to_string(), rec.triple.z3.to_string()};
  j["representative"] = rec.representative.to_text();
  j["is_configuration"] = rec.configuration;
  j["is_connected"] = rec.connected;
  j["min_line_size"] = rec.min_line_size;
  j["l_order"] = rec.l_order;
  j["named_match"] = rec.named_match ? nlohmann::ordered_json(*rec.named_match) : nlohmann::ordered_json(nullptr);
  return j.dump();
}

std::string census_jsonl(const std::vector<CensusRecord>& records) {
  std::string out;
  for (const auto& r : records) out += census_record_json(r) + "\n";
  return out;
}

}  // namespace plr
