#pragma once

#include <optional>
#include <string>
#include <vector>

#include "plr/bigint.hpp"
#include "plr/core.hpp"

namespace plr {

// One tabulated size count; m is empty for the per-dims total.
struct SizeRow {
  int table = 0;  // 1..4
  Dims dims;
  std::optional<int> m;
  BigInt count;
  std::string key() const;  // "r,s,n,m" or "r,s,n,TOTAL"
};

// One row of the structure tables; table 5 carries ic, table 6 does not.
struct ClassRow {
  int table = 0;  // 5 or 6
  int m = 0;
  StructureTriple triple;
  BigInt count;
  std::optional<BigInt> ic;
  BigInt mc;
  std::string key() const;  // "z1|z2|z3"
};

// Table holding the counts of R_{r,s,n}: n <= 4 in 1, n = 5 in 2, n = 6 split
// by r <= 3 (3) and r >= 4 (4).
int size_table_of(Dims dims);

// Directory holding the fixture CSVs: $PLR_DATA_DIR or the build default.
std::string data_dir();

// Throws ParseError on a malformed file.
std::vector<SizeRow> load_size_rows(const std::string& path);
std::vector<ClassRow> load_class_rows(const std::string& path, int table);

enum class IssueKind {
  FormatOnly,  // tabulated digits are grouped oddly; value is checked as usual
  Skip,        // tabulated value is not trusted; computed value is only reported
  Duplicate,   // row tabulated twice; both copies are checked
};

struct KnownIssue {
  int table;
  std::string key;
  std::string field;  // "count", "ic", "mc"
  IssueKind kind;
  std::string note;
};

const std::vector<KnownIssue>& known_issues();
std::optional<KnownIssue> find_issue(int table, const std::string& key, const std::string& field);

}  // namespace plr
