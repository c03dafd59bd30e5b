#include "plr/fixtures.hpp"

#include <cstdlib>
#include <fstream>

namespace plr {

namespace {

// Splits one CSV line; fields may be double-quoted and then contain commas.
std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  bool quoted = false;
  for (char ch : line) {
    if (ch == '"') {
      quoted = !quoted;
    } else if (ch == ',' && !quoted) {
      out.push_back(std::move(cur));
      cur.clear();
    } else if (ch != '\r') {
      cur += ch;
    }
  }
  out.push_back(std::move(cur));
  return out;
}

std::vector<std::vector<std::string>> read_csv(const std::string& path, std::size_t columns) {
  std::ifstream in(path);
  if (!in) fail(ErrorKind::ParseError, "cannot open fixture file " + path);
  std::vector<std::vector<std::string>> rows;
  std::string line;
  bool header = true;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line == "\r") continue;
    auto f = split_csv(line);
    if (f.size() != columns)
      fail(ErrorKind::ParseError, path + ":" + std::to_string(lineno) + ": expected " + std::to_string(columns) + " fields");
    if (header) {
      header = false;
      continue;
    }
    rows.push_back(std::move(f));
  }
  return rows;
}

int to_int(const std::string& s) {
  try {
    std::size_t pos = 0;
    int v = std::stoi(s, &pos);
    if (pos != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    fail(ErrorKind::ParseError, "bad integer '" + s + "'");
  }
}

}  // namespace

std::string SizeRow::key() const {
  return std::to_string(dims.r) + "," + std::to_string(dims.s) + "," + std::to_string(dims.n) + "," +
         (m ? std::to_string(*m) : std::string("TOTAL"));
}

std::string ClassRow::key() const {
  return triple.z1.to_string() + "|" + triple.z2.to_string() + "|" + triple.z3.to_string();
}

int size_table_of(Dims dims) {
  if (dims.n <= 4) return 1;
  if (dims.n == 5) return 2;
  return dims.r <= 3 ? 3 : 4;
}

std::string data_dir() {
  if (const char* env = std::getenv("PLR_DATA_DIR"); env && *env) return env;
  return PLR_DEFAULT_DATA_DIR;
}

std::vector<SizeRow> load_size_rows(const std::string& path) {
  std::vector<SizeRow> out;
  for (const auto& f : read_csv(path, 5)) {
    SizeRow row;
    row.dims = make_dims(to_int(f[0]), to_int(f[1]), to_int(f[2]));
    if (f[3] != "TOTAL") row.m = to_int(f[3]);
    row.count = parse_bigint(f[4]);
    row.table = size_table_of(row.dims);
    out.push_back(std::move(row));
  }
  return out;
}

std::vector<ClassRow> load_class_rows(const std::string& path, int table) {
  if (table != 5 && table != 6) fail(ErrorKind::InvalidArgument, "structure tables are 5 and 6");
  std::vector<ClassRow> out;
  for (const auto& f : read_csv(path, table == 5 ? 7 : 6)) {
    ClassRow row;
    row.table = table;
    row.m = to_int(f[0]);
    row.triple = {Structure::parse(f[1]), Structure::parse(f[2]), Structure::parse(f[3])};
    row.count = parse_bigint(f[4]);
    if (table == 5) {
      row.ic = parse_bigint(f[5]);
      row.mc = parse_bigint(f[6]);
    } else {
      row.mc = parse_bigint(f[5]);
    }
    out.push_back(std::move(row));
  }
  return out;
}

const std::vector<KnownIssue>& known_issues() {
  static const std::vector<KnownIssue> issues = {
      {3, "4,4,6,4", "count", IssueKind::FormatOnly, "tabulated as 15,384,24; read as 1538424"},
      {4, "6,6,6,6", "count", IssueKind::FormatOnly, "tabulated as 423,57,620,160; read as 42357620160"},
      {4, "6,6,6,TOTAL", "count", IssueKind::FormatOnly, "total tabulated with broken digit grouping"},
      {5, "3,2,1|3,1,1,1|2,2,2", "count", IssueKind::Duplicate, "row tabulated twice with identical values"},
      {6, "3,3,1,1|3,2,2,1|3,2,1,1,1", "mc", IssueKind::Skip,
       "tabulated MC 240 is out of line with its count of 1344; computed value reported"},
  };
  return issues;
}

std::optional<KnownIssue> find_issue(int table, const std::string& key, const std::string& field) {
  for (const auto& i : known_issues())
    if (i.table == table && i.key == key && i.field == field) return i;
  return std::nullopt;
}

}  // namespace plr
