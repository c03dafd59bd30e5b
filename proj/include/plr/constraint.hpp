#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "plr/bigint.hpp"
#include "plr/core.hpp"

namespace plr {

// Dense variable index of x_{ijk}: ((i-1)s + (j-1))n + (k-1).
inline int var_index(const Dims& d, int i, int j, int k) { return ((i - 1) * d.s + (j - 1)) * d.n + (k - 1); }
inline int var_index(const Dims& d, const Entry& e) { return var_index(d, e.row, e.col, e.sym); }
Entry var_entry(const Dims& d, int idx);

struct Cardinality {
  CountTuple R, C, S;
};

// Boolean conflict system over the variables x_{ijk}. A solution is a 0/1
// assignment with no conflicting pair both set, matching every fixing and
// every optional cardinality constraint.
struct ConstraintSystem {
  Dims dims;
  std::vector<std::pair<int, int>> conflicts;  // a < b, sorted, unique
  std::vector<int> fixed_one;                  // sorted, unique
  std::vector<int> fixed_zero;                 // sorted, unique
  std::optional<Cardinality> cardinality;      // per row, column, symbol sums
  std::optional<int> total_size;               // exact number of ones
  bool infeasible = false;

  bool has_cardinality() const { return cardinality.has_value() || total_size.has_value(); }
  bool is_fixed_one(int v) const;
  bool is_fixed_zero(int v) const;
};

ConstraintSystem latin_system(Dims dims);
// Throws WeightMismatch or LengthMismatch.
ConstraintSystem with_type(ConstraintSystem sys, const CountTuple& R, const CountTuple& C, const CountTuple& S);
// Zeroes every variable that would put two lone lines through one entry.
// Throws NotSquare.
ConstraintSystem with_regularity(ConstraintSystem sys, const CountTuple& R, const CountTuple& C, const CountTuple& S);
// Restricts solutions to exactly m ones.
ConstraintSystem with_size(ConstraintSystem sys, int m);
ConstraintSystem with_fixings(ConstraintSystem sys, const std::vector<int>& ones, const std::vector<int>& zeros);
ConstraintSystem with_conflicts(ConstraintSystem sys, const std::vector<std::pair<int, int>>& extra);

// Partial fixing of the variables of one row.
struct TriangularCell {
  Dims dims;
  int row = 1;
  std::vector<Entry> ones;   // sorted
  std::vector<Entry> zeros;  // sorted

  bool operator==(const TriangularCell&) const = default;
  // "row=<i> ones=[(i,j,k)...] zeros=[(i,j,k)...]"
  std::string trace() const;
  // Upper bound on the number of entries any solution can have in this row.
  int max_row_size() const;
};

enum class Strategy { LexAdaptive, FullAssignment };
// Accepts "lex-adaptive" and "full-assignment"; throws UnknownStrategy.
Strategy parse_strategy(const std::string& name);
std::string strategy_name(Strategy s);

std::vector<TriangularCell> decompose_first_row(Dims dims, Strategy strategy);
// Throws IndexOutOfRange unless 1 <= row <= r.
TriangularCell shift_cell(const TriangularCell& cell, int row);
// cells[t] must fix row t+1 only; throws RowMismatch otherwise.
ConstraintSystem assemble_K(Dims dims, const std::vector<TriangularCell>& cells);
// Throws InfeasibleSystem for an infeasible system.
int forced_size(const ConstraintSystem& sys);

enum class Backend { Enumeration, Recursion };

struct SolveOptions {
  Backend backend = Backend::Enumeration;
  int jobs = 1;
};

// counts[m] = number of solutions with m ones, m = 0..rs.
Spectrum weight_spectrum(const ConstraintSystem& sys, const SolveOptions& opts = {});
// weight_spectrum shifted down by forced_size: the Hilbert function of K.
Spectrum hilbert_function(const ConstraintSystem& sys, const SolveOptions& opts = {});

struct Prop1Options {
  Strategy strategy = Strategy::LexAdaptive;
  Backend inner = Backend::Enumeration;
  int jobs = 1;
  std::optional<int> size;  // only compute this coefficient
};

// Sum over multisets of first-row cells of the spectra of the assembled systems.
Spectrum prop1_spectrum(Dims dims, const Prop1Options& opts = {});

// One term of the sum above: the cell tuple, its multiplicity and spectrum.
struct Prop1Term {
  std::vector<int> cells;  // 1-based cell indices, non-decreasing
  BigInt multiplicity;
  int forced = 0;
  Spectrum spectrum;  // full weight spectrum of K (forced ones included)
};
std::vector<Prop1Term> prop1_terms(Dims dims, const Prop1Options& opts = {});

// Calls visit for each solution in lexicographic order of the entry list;
// visit returns false to stop. Throws LimitExceeded beyond limit solutions.
void enumerate_solutions(const ConstraintSystem& sys, const std::function<bool(const Plr&)>& visit,
                         std::uint64_t limit = UINT64_MAX);
std::vector<Plr> solutions(const ConstraintSystem& sys, std::uint64_t limit = UINT64_MAX);

// Splits the search into independent tasks. on_split(task_count) runs once
// before any visit; visit(task, entries) may run concurrently for distinct
// tasks but is sequential within a task, in lexicographic order.
void for_each_solution_parallel(const ConstraintSystem& sys, int jobs,
                                const std::function<void(std::size_t)>& on_split,
                                const std::function<void(std::size_t, const std::vector<Entry>&)>& visit);

std::string spectrum_json(const Spectrum& sp);
Spectrum spectrum_from_json(const std::string& text);

}  // namespace plr
