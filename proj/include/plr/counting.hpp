#pragma once

#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "plr/bigint.hpp"
#include "plr/constraint.hpp"
#include "plr/core.hpp"

namespace plr {

enum class CountBackend { Direct, Decomposition, Aggregate, Formula };
CountBackend parse_count_backend(const std::string& name);
std::string backend_name(CountBackend b);

struct CountOptions {
  CountBackend backend = CountBackend::Direct;
  int jobs = 1;
  // Aggregate backend: largest size whose structure counts are computed.
  int aggregate_max_size = 16;
};

// |R_{r,s,n:m}| for m = 0..rs. Throws BackendUnavailable when the backend
// cannot cover every size.
Spectrum size_spectrum(Dims dims, const CountOptions& opts = {});
// A single coefficient of the spectrum.
BigInt size_count(Dims dims, int m, const CountOptions& opts = {});

// C dominated by R*, S by C*, R by S*. Throws WeightMismatch.
bool feasibility_precheck(const CountTuple& R, const CountTuple& C, const CountTuple& S);

BigInt count_type(const CountTuple& R, const CountTuple& C, const CountTuple& S, int jobs = 1);
// Pads to a square order equal to the longest tuple.
BigInt count_type_regular(const CountTuple& R, const CountTuple& C, const CountTuple& S, int jobs = 1);

// Pads three tuples with zeros to a common length.
std::array<CountTuple, 3> pad_square(const CountTuple& R, const CountTuple& C, const CountTuple& S);

// Unordered key of a structure triple: the three structures sorted.
StructureTriple unordered(const StructureTriple& zt);

// Count for the representative type of the triple, cached per unordered
// triple and regular flag. Throws WeightMismatch.
BigInt rho(const StructureTriple& zt, bool regular, int jobs = 1);
void clear_rho_cache();

// Partitions of m into at most max_len parts, each at most max_part, in
// reverse lexicographic order.
std::vector<Structure> partitions(int m, int max_len, int max_part);

// Every role-labelled structure triple of weight m fitting inside dims.
std::vector<StructureTriple> structure_triples(Dims dims, int m);
// Unordered triples of weight m with lengths and parts bounded by `order`.
std::vector<StructureTriple> unordered_triples(int m, int order);

class RhoTable {
 public:
  void set(const StructureTriple& zt, const BigInt& value);
  std::optional<BigInt> get(const StructureTriple& zt) const;
  std::size_t size() const { return table_.size(); }
  const std::map<StructureTriple, BigInt>& entries() const { return table_; }

 private:
  std::map<StructureTriple, BigInt> table_;  // keyed by unordered triple
};

// Computes rho for every triple needed by aggregate_size(dims, m).
RhoTable build_rho_table(Dims dims, int m, int jobs = 1);
// Throws MissingRho when a needed triple is absent.
BigInt aggregate_size(Dims dims, int m, const RhoTable& table);

// CSV "m,z1,z2,z3,count,regular".
std::string rho_table_csv(const RhoTable& table, bool regular);

struct SymExpTriple {
  int a = 0, b = 0, c = 0;
};
// Sum of r^x s^y n^z over the distinct permutations (x,y,z) of {a,b,c}.
BigInt sym_poly(const SymExpTriple& e, Dims dims);

// Closed forms for m <= 6. Throws SizeOutOfRange or NonIntegerResult.
BigInt closed_form_count(Dims dims, int m);
BigInt closed_form_diagonal(int n, int m);

// The diagonal polynomial with its coefficients exactly as tabulated, and
// the same with one linear-factor coefficient sign flipped; used to locate
// transcription errors. Returns m! times the count as a rational.
BigRational diagonal_numerator(int n, int m, bool as_tabulated);

struct TermDiagnosis {
  int m = 0;
  bool tabulated_matches = false;
  std::string offending_term;  // empty when the tabulated form matches
};
// Compares the tabulated diagonal polynomial against the general closed form
// for n = 1..12 and, on mismatch, finds the single coefficient whose sign
// flip restores agreement.
TermDiagnosis diagnose_diagonal(int m);

// n!^t t!^n / t^(tn).
BigRational plex_lower_bound(int t, int n);

}  // namespace plr
