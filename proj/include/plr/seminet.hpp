#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "plr/core.hpp"

namespace plr {

// Points are the entries of the source square; each parallel class groups
// them by row, column or symbol.
struct Seminet {
  Plr source;
  std::vector<Entry> points;
  // lines[axis][l] lists point indices; labels[axis][l] is the 1-based row,
  // column or symbol that line came from.
  std::array<std::vector<std::vector<int>>, 3> lines;
  std::array<std::vector<int>, 3> labels;
};

// Requires a square, non-compressible, regular, non-empty P. Throws
// NotSeminetSource naming the first predicate that fails.
Seminet seminet_from_pls(const Plr& p);

int point_rank(const Seminet& s);
// Largest number of lines in one parallel class.
int l_order(const Seminet& s);
bool is_n_regular(const Seminet& s, int n);
bool is_connected(const Seminet& s);
int min_line_size(const Seminet& s);
// At least four points, connected, and every line has two or more points.
bool is_configuration(const Seminet& s);

// Every point on one line per class, lines of a class pairwise disjoint,
// lines of distinct classes meeting in at most one point.
bool satisfies_axioms(const Seminet& s);

// Rebuilds the entry set from the incidences alone.
Plr reconstruct(const Seminet& s);

// Grid text: rows separated by '/', one character per cell, '.' for empty
// and 1-9 for symbols. The result is square of the largest dimension used.
Plr plr_from_grid(std::string_view grid);
// Drops empty rows, columns and symbols, keeping relative order.
Plr compress(const Plr& p);
// Paratopism canonical form of the compressed square padded to its largest
// dimension. Equal keys mean equal main classes.
Plr main_class_key(const Plr& p);

struct NamedGrid {
  std::string label;
  std::string grid;
};
// Fixture grids: H, C1, C2, F1..F23 and the disconnected rank-8 example Sem8.
const std::vector<NamedGrid>& named_grids();
std::optional<std::string> named_match(const Plr& p);

struct CensusRecord {
  int rank = 0;
  StructureTriple triple;  // unordered
  Plr representative;      // paratopism canonical, order = longest structure
  bool configuration = false;
  bool connected = false;
  int min_line_size = 0;
  int l_order = 0;
  std::optional<std::string> named_match;
};

// Main classes of regular non-compressible squares for ranks 1..max_rank,
// sorted by rank, triple and representative. Throws RankOutOfRange unless
// 1 <= max_rank <= 8.
std::vector<CensusRecord> census(int max_rank, int jobs = 1);
// Classes of one rank only.
std::vector<CensusRecord> census_rank(int rank, int jobs = 1);

std::string census_record_json(const CensusRecord& rec);
std::string census_jsonl(const std::vector<CensusRecord>& records);

}  // namespace plr
