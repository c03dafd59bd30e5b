#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "plr/error.hpp"

namespace plr {

// Axis indices for the three coordinates of an entry.
inline constexpr int kRow = 0;
inline constexpr int kCol = 1;
inline constexpr int kSym = 2;

struct Dims {
  int r = 0;
  int s = 0;
  int n = 0;

  int operator[](int axis) const { return axis == kRow ? r : axis == kCol ? s : n; }
  int& operator[](int axis) { return axis == kRow ? r : axis == kCol ? s : n; }
  bool operator==(const Dims&) const = default;
  bool is_square() const { return r == s && s == n; }
  int cells() const { return r * s; }
  int num_vars() const { return r * s * n; }
  std::string to_string() const;
};

// Throws InvalidArgument unless all three are positive.
Dims make_dims(int r, int s, int n);

// One filled cell, all coordinates 1-based.
struct Entry {
  int row = 0;
  int col = 0;
  int sym = 0;

  int operator[](int axis) const { return axis == kRow ? row : axis == kCol ? col : sym; }
  int& operator[](int axis) { return axis == kRow ? row : axis == kCol ? col : sym; }
  auto operator<=>(const Entry&) const = default;
};

// A partial Latin rectangle: entries kept sorted by (row, col, sym).
class Plr {
 public:
  Plr() = default;
  // Validates ranges and the Latin property.
  Plr(Dims dims, std::vector<Entry> entries);

  // Skips validation; entries must already be sorted and Latin.
  static Plr trusted(Dims dims, std::vector<Entry> entries);

  const Dims& dims() const { return dims_; }
  const std::vector<Entry>& entries() const { return entries_; }
  std::size_t size() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }
  std::optional<int> at(int row, int col) const;

  bool operator==(const Plr&) const = default;
  bool operator<(const Plr& other) const;

  // Text form "r s n : (i,j,k);(i,j,k)".
  std::string to_text() const;
  static Plr from_text(std::string_view text);

 private:
  Dims dims_;
  std::vector<Entry> entries_;
};

class Permutation {
 public:
  Permutation() = default;
  // 1-based images; throws InvalidArgument unless a bijection of {1..size}.
  explicit Permutation(std::vector<int> images);
  static Permutation identity(int size);

  int size() const { return static_cast<int>(images_.size()); }
  int operator()(int i) const { return images_[i - 1]; }
  const std::vector<int>& images() const { return images_; }
  Permutation inverse() const;
  // (a * b)(i) = a(b(i)).
  Permutation operator*(const Permutation& b) const;
  bool operator==(const Permutation&) const = default;

 private:
  std::vector<int> images_;
};

struct Isotopism {
  Permutation alpha;  // rows
  Permutation beta;   // columns
  Permutation gamma;  // symbols

  static Isotopism identity(Dims dims);
  const Permutation& operator[](int axis) const {
    return axis == kRow ? alpha : axis == kCol ? beta : gamma;
  }
};

// Throws DimensionMismatch if the permutation sizes differ from P's dims.
Plr apply(const Isotopism& g, const Plr& p);
// compose(g, h) acts as g(h(P)).
Isotopism compose(const Isotopism& g, const Isotopism& h);
Isotopism inverse(const Isotopism& g);

// Permutation of the three coordinates. Component a of every entry moves to
// position image(a), so (P^pi)^sigma equals P^(sigma*pi).
class Parastrophe {
 public:
  constexpr Parastrophe() : images_{0, 1, 2} {}
  constexpr explicit Parastrophe(std::array<int, 3> images) : images_(images) {}

  static const std::array<Parastrophe, 6>& all();
  static Parastrophe from_name(std::string_view name);

  int operator()(int axis) const { return images_[axis]; }
  bool is_identity() const { return images_ == std::array<int, 3>{0, 1, 2}; }
  Parastrophe operator*(const Parastrophe& b) const;
  Parastrophe inverse() const;
  bool operator==(const Parastrophe&) const = default;
  // Cycle notation on 1..3, "id" for the identity.
  std::string name() const;

 private:
  std::array<int, 3> images_;
};

Dims apply(const Parastrophe& pi, Dims dims);
bool admissible(const Parastrophe& pi, Dims dims);
// Throws InvalidParastrophe unless the target dimensions stay non-decreasing.
Plr parastrophe(const Plr& p, const Parastrophe& pi);
// Any coordinate permutation, with no ordering requirement on the dims.
Plr parastrophe_unchecked(const Plr& p, const Parastrophe& pi);

struct Paratopism {
  Parastrophe pi;
  Isotopism iso;  // applied after the parastrophe
};
Plr apply(const Paratopism& g, const Plr& p);

// Counts per row, column or symbol. Entries are non-negative.
struct CountTuple {
  std::vector<int> values;

  CountTuple() = default;
  explicit CountTuple(std::vector<int> v) : values(std::move(v)) {}
  int weight() const;
  int size() const { return static_cast<int>(values.size()); }
  int operator[](int i) const { return values[i]; }
  bool operator==(const CountTuple&) const = default;
  bool operator<(const CountTuple& o) const { return values < o.values; }
  std::string to_string() const;
};

// Non-increasing positive parts of a count tuple.
struct Structure {
  std::vector<int> parts;

  Structure() = default;
  explicit Structure(std::vector<int> p);  // sorts and drops zeros
  static Structure of(const CountTuple& t);
  // Accepts "3,2,2" or exponent notation "3 2^2".
  static Structure parse(std::string_view text);

  int weight() const;
  int length() const { return static_cast<int>(parts.size()); }
  int max_part() const { return parts.empty() ? 0 : parts.front(); }
  // Non-increasing tuple of the given length, zero padded.
  CountTuple as_tuple(int length) const;
  bool operator==(const Structure&) const = default;
  auto operator<=>(const Structure& o) const { return parts <=> o.parts; }
  // Comma separated parts, e.g. "3,2,2".
  std::string to_string() const;
  // Exponent notation, e.g. "3 2^2".
  std::string to_compact() const;
};

struct TypeTriple {
  CountTuple R, C, S;
  const CountTuple& operator[](int axis) const { return axis == kRow ? R : axis == kCol ? C : S; }
};

struct StructureTriple {
  Structure z1, z2, z3;
  const Structure& operator[](int axis) const { return axis == kRow ? z1 : axis == kCol ? z2 : z3; }
  bool operator==(const StructureTriple&) const = default;
  auto operator<=>(const StructureTriple&) const = default;
  std::string to_string() const;
};

TypeTriple type_of(const Plr& p);
StructureTriple structure_of(const Plr& p);
CountTuple conjugate(const CountTuple& t);
// T dominated by U on zero-padded prefix sums; WeightMismatch if weights differ.
bool dominates(const CountTuple& t, const CountTuple& u);

// Binary r x s array marking the filled cells.
std::vector<std::vector<int>> shape(const Plr& p);

// Both predicates require a square P (NotSquare otherwise).
bool is_noncompressible(const Plr& p);
bool is_regular(const Plr& p);

// Edges of the tripartite graph between each pair of parts. Vertex ids are the
// 1-based row, column and symbol labels.
struct TripartiteGraph {
  Dims dims;
  std::vector<std::pair<int, int>> row_col;
  std::vector<std::pair<int, int>> row_sym;
  std::vector<std::pair<int, int>> col_sym;
  // Per entry, indices of its three edges in the lists above.
  std::vector<std::array<int, 3>> triangles;

  std::size_t edge_count() const { return row_col.size() + row_sym.size() + col_sym.size(); }
  // Each vertex has equal degree into both opposite parts.
  bool is_uniform() const;
  // The triangle list uses every edge exactly once.
  bool triangles_partition_edges() const;
  // Bi-adjacency matrix between two parts, indexed [u-1][v-1].
  std::vector<std::vector<int>> biadjacency(int axis_a, int axis_b) const;
};

TripartiteGraph to_tripartite(const Plr& p);

}  // namespace plr
