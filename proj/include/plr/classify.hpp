#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "plr/bigint.hpp"
#include "plr/canonical.hpp"
#include "plr/core.hpp"

namespace plr {

struct ClassifyOptions {
  int jobs = 1;
  std::uint64_t limit = 50'000'000;  // maximum number of solutions enumerated
  bool keep_representatives = false;
};

struct ClassReport {
  StructureTriple triple;
  bool regular = false;
  BigInt count;
  BigInt ic;
  BigInt mc;
  // Paratopism canonical forms at the padded square order, sorted.
  std::vector<Plr> representatives;
  // Isotopism canonical forms with the number of solutions in each class.
  std::map<Plr, std::uint64_t> iso_classes;
};

// Square order used for main classes: the longest structure.
int main_class_order(const StructureTriple& zt);
// Adds empty rows, columns and symbols up to order N.
Plr pad_to_order(const Plr& p, int N);

// Enumerates the representative type and buckets solutions by canonical
// form. Throws LimitExceeded when more than opts.limit solutions exist.
ClassReport classify_structure_triple(const StructureTriple& zt, bool regular, const ClassifyOptions& opts = {});

// One canonical representative per class, sorted by serialized form.
std::vector<Plr> class_representatives(const StructureTriple& zt, bool regular, GroupKind kind,
                                       const ClassifyOptions& opts = {});

// CSV "m,z1,z2,z3,regular,count,ic,mc".
std::string class_report_csv(const std::vector<ClassReport>& reports);

}  // namespace plr
