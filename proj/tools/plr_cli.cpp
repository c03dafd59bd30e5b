#include <CLI11.hpp>
#include <json.hpp>

#include <cstdint>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

#include "plr/cache.hpp"
#include "plr/classify.hpp"
#include "plr/counting.hpp"
#include "plr/fixtures.hpp"
#include "plr/seminet.hpp"

using namespace plr;
using json = nlohmann::ordered_json;

namespace {

enum Exit { kOk = 0, kUsage = 1, kVerifyFailed = 2, kResourceLimit = 3 };

struct Common {
  int jobs = 1;
  std::string format = "text";
  bool no_cache = false;
};

std::vector<int> parse_ints(const std::string& text) {
  std::vector<int> out;
  std::stringstream ss(text);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    try {
      std::size_t pos = 0;
      int v = std::stoi(tok, &pos);
      if (pos != tok.size()) throw std::invalid_argument(tok);
      out.push_back(v);
    } catch (const std::exception&) {
      fail(ErrorKind::ParseError, "bad integer list '" + text + "'");
    }
  }
  return out;
}

Dims parse_dims(const std::string& text) {
  auto v = parse_ints(text);
  if (v.size() != 3) fail(ErrorKind::ParseError, "dims must be r,s,n");
  return make_dims(v[0], v[1], v[2]);
}

StructureTriple parse_triple(const std::string& text) {
  std::vector<std::string> parts;
  std::stringstream ss(text);
  std::string tok;
  while (std::getline(ss, tok, '|')) parts.push_back(tok);
  if (parts.size() != 3) fail(ErrorKind::ParseError, "structures must be z1|z2|z3");
  return {Structure::parse(parts[0]), Structure::parse(parts[1]), Structure::parse(parts[2])};
}

json str_array(const Spectrum& sp) {
  json a = json::array();
  for (const auto& x : sp) a.push_back(x.str());
  return a;
}

// Runs `compute` unless the cache holds the payload for this request.
std::string cached(const Common& c, const std::string& kind, const std::string& params,
                   const std::function<std::string()>& compute) {
  ResultCache cache(!c.no_cache);
  const std::string digest = request_digest(kind, params + "|format=" + c.format);
  if (auto hit = cache.get(digest)) return *hit;
  std::string payload = compute();
  cache.put(digest, payload);
  return payload;
}

void check_format(const Common& c) {
  if (c.format != "text" && c.format != "json" && c.format != "csv")
    fail(ErrorKind::InvalidArgument, "format must be text, json or csv");
}

// ---- count ---------------------------------------------------------------

std::string run_count(const Common& c, const std::string& dims_text, std::optional<int> size, const std::string& backend) {
  const Dims d = parse_dims(dims_text);
  CountOptions opts;
  opts.backend = parse_count_backend(backend);
  opts.jobs = c.jobs;
  std::ostringstream out;
  if (size) {
    BigInt v = size_count(d, *size, opts);
    if (c.format == "json")
      out << json{{"dims", d.to_string()}, {"m", *size}, {"count", v.str()}}.dump() << "\n";
    else if (c.format == "csv")
      out << "r,s,n,m,count\n" << d.r << "," << d.s << "," << d.n << "," << *size << "," << v.str() << "\n";
    else
      out << v.str() << "\n";
    return out.str();
  }
  Spectrum sp = size_spectrum(d, opts);
  if (c.format == "json") {
    out << json{{"dims", d.to_string()}, {"spectrum", str_array(sp)}, {"total", total(sp).str()}}.dump() << "\n";
  } else if (c.format == "csv") {
    out << "r,s,n,m,count\n";
    for (std::size_t m = 0; m < sp.size(); ++m) out << d.r << "," << d.s << "," << d.n << "," << m << "," << sp[m].str() << "\n";
    out << d.r << "," << d.s << "," << d.n << ",TOTAL," << total(sp).str() << "\n";
  } else {
    for (std::size_t m = 0; m < sp.size(); ++m) out << (m ? " " : "") << sp[m].str();
    out << "\n";
  }
  return out.str();
}

// ---- count-type / rho ------------------------------------------------------

std::string single_value(const Common& c, const std::string& name, const BigInt& v, const json& key) {
  std::ostringstream out;
  if (c.format == "json") {
    json j = key;
    j[name] = v.str();
    out << j.dump() << "\n";
  } else if (c.format == "csv") {
    std::string header, row;
    for (auto it = key.begin(); it != key.end(); ++it) {
      header += it.key() + ",";
      row += "\"" + (it->is_string() ? it->get<std::string>() : it->dump()) + "\",";
    }
    out << header << name << "\n" << row << v.str() << "\n";
  } else {
    out << v.str() << "\n";
  }
  return out.str();
}

// ---- classify --------------------------------------------------------------

std::string run_classify(const Common& c, const StructureTriple& zt, bool regular, const std::string& group,
                         bool reps, std::uint64_t limit) {
  if (group != "isotopism" && group != "paratopism") fail(ErrorKind::InvalidArgument, "group must be isotopism or paratopism");
  ClassifyOptions opts;
  opts.jobs = c.jobs;
  opts.limit = limit;
  opts.keep_representatives = reps;
  ClassReport r = classify_structure_triple(zt, regular, opts);
  std::vector<Plr> list;
  if (reps) {
    if (group == "paratopism")
      list = r.representatives;
    else
      for (const auto& [k, v] : r.iso_classes) list.push_back(k);
  }
  std::ostringstream out;
  if (c.format == "json") {
    json j{{"structures", {zt.z1.to_string(), zt.z2.to_string(), zt.z3.to_string()}},
           {"regular", regular},
           {"count", r.count.str()},
           {"ic", r.ic.str()},
           {"mc", r.mc.str()}};
    if (reps) {
      json a = json::array();
      for (const auto& p : list) a.push_back(p.to_text());
      j["representatives"] = a;
    }
    out << j.dump() << "\n";
  } else if (c.format == "csv") {
    out << class_report_csv({r});
  } else {
    out << "count " << r.count.str() << "\nic " << r.ic.str() << "\nmc " << r.mc.str() << "\n";
    for (const auto& p : list) out << p.to_text() << "\n";
  }
  return out.str();
}

// ---- seminet-census --------------------------------------------------------

std::string run_census(const Common& c, int max_rank, bool configs_only) {
  auto records = census(max_rank, c.jobs);
  if (configs_only) std::erase_if(records, [](const CensusRecord& r) { return !r.configuration; });
  std::ostringstream out;
  if (c.format == "text") {
    std::map<int, std::pair<int, int>> per_rank;
    for (const auto& r : records) {
      per_rank[r.rank].first++;
      per_rank[r.rank].second += r.configuration;
    }
    for (int m = 1; m <= max_rank; ++m)
      out << "rank " << m << ": " << per_rank[m].first << " main classes, " << per_rank[m].second << " configurations\n";
  } else if (c.format == "csv") {
    out << "rank,z1,z2,z3,representative,is_configuration,is_connected,min_line_size,l_order,named_match\n";
    for (const auto& r : records)
      out << r.rank << ",\"" << r.triple.z1.to_string() << "\",\"" << r.triple.z2.to_string() << "\",\""
          << r.triple.z3.to_string() << "\",\"" << r.representative.to_text() << "\"," << (r.configuration ? "true" : "false")
          << "," << (r.connected ? "true" : "false") << "," << r.min_line_size << "," << r.l_order << ","
          << r.named_match.value_or("") << "\n";
  } else {
    out << census_jsonl(records);
  }
  return out.str();
}

// ---- formula ---------------------------------------------------------------

std::string run_formula(const Common& c, const std::string& dims_text, int m) {
  const Dims d = parse_dims(dims_text);
  BigInt v = closed_form_count(d, m);
  std::ostringstream out;
  std::optional<BigInt> diag;
  if (d.is_square()) diag = closed_form_diagonal(d.n, m);
  if (c.format == "json") {
    json j{{"dims", d.to_string()}, {"m", m}, {"count", v.str()}};
    if (diag) j["diagonal"] = diag->str();
    out << j.dump() << "\n";
  } else if (c.format == "csv") {
    out << "r,s,n,m,count\n" << d.r << "," << d.s << "," << d.n << "," << m << "," << v.str() << "\n";
  } else {
    out << v.str() << "\n";
  }
  return out.str();
}

std::string run_diagnose(int m) {
  TermDiagnosis t = diagnose_diagonal(m);
  if (t.tabulated_matches) return "m=" + std::to_string(m) + ": tabulated diagonal polynomial agrees\n";
  return "m=" + std::to_string(m) + ": " + t.offending_term + "\n";
}

// ---- verify ----------------------------------------------------------------

enum class Status { Pass, Fail, Skipped, Deferred };

const char* status_name(Status s) {
  switch (s) {
    case Status::Pass: return "PASS";
    case Status::Fail: return "FAIL";
    case Status::Skipped: return "SKIPPED";
    case Status::Deferred: return "DEFERRED";
  }
  return "?";
}

struct Outcome {
  int table;
  std::string key, field;
  Status status;
  std::string expected, computed, method, note;
};

struct VerifyOptions {
  int jobs = 1;
  BigInt max_enumeration = BigInt(2'000'000'000);  // largest total enumerated outright
  BigInt max_latin = BigInt(10'000'000'000ULL);    // largest full-size count run through the decomposition
};

Outcome judge(int table, const std::string& key, const std::string& field, const BigInt& expected,
              const std::optional<BigInt>& computed, const std::string& method) {
  Outcome o{table, key, field, Status::Deferred, expected.str(), "", method, ""};
  auto issue = find_issue(table, key, field);
  if (issue) o.note = issue->note;
  if (!computed) return o;
  o.computed = computed->str();
  if (issue && issue->kind == IssueKind::Skip)
    o.status = Status::Skipped;
  else
    o.status = *computed == expected ? Status::Pass : Status::Fail;
  return o;
}

void verify_size_tables(const std::vector<int>& tables, const VerifyOptions& vo, const std::string& dir,
                        std::vector<Outcome>& out) {
  auto rows = load_size_rows(dir + "/table1_4.csv");
  std::map<std::array<int, 3>, std::vector<SizeRow>> by_dims;
  for (auto& r : rows)
    if (std::find(tables.begin(), tables.end(), r.table) != tables.end())
      by_dims[{r.dims.r, r.dims.s, r.dims.n}].push_back(r);
  for (auto& [key, group] : by_dims) {
    const Dims d{key[0], key[1], key[2]};
    std::optional<BigInt> expected_total;
    for (const auto& r : group)
      if (!r.m) expected_total = r.count;
    CountOptions opts;
    opts.backend = CountBackend::Decomposition;
    opts.jobs = vo.jobs;
    std::optional<Spectrum> sp;
    if (expected_total && *expected_total <= vo.max_enumeration) sp = size_spectrum(d, opts);
    BigInt sum = 0;
    bool all_rows = true;
    for (const auto& r : group) {
      if (!r.m) continue;
      std::optional<BigInt> got;
      std::string method;
      if (sp) {
        got = *r.m < static_cast<int>(sp->size()) ? (*sp)[*r.m] : BigInt(0);
        method = "enumeration";
      } else if (*r.m <= 6) {
        got = closed_form_count(d, *r.m);
        method = "closed-form";
      } else if (*r.m == d.r * d.s && r.count <= vo.max_latin) {
        got = size_count(d, *r.m, opts);
        method = "latin-decomposition";
      } else {
        method = "beyond-budget";
      }
      if (got)
        sum += *got;
      else
        all_rows = false;
      out.push_back(judge(r.table, r.key(), "count", r.count, got, method));
    }
    for (const auto& r : group) {
      if (r.m) continue;
      std::optional<BigInt> got;
      if (all_rows) got = sum;
      out.push_back(judge(r.table, r.key(), "count", r.count, got, all_rows ? "row-sum" : "beyond-budget"));
    }
  }
}

void verify_class_table(int table, const VerifyOptions& vo, const std::string& dir, std::vector<Outcome>& out) {
  auto rows = load_class_rows(dir + (table == 5 ? "/table5.csv" : "/table6.csv"), table);
  ClassifyOptions opts;
  opts.jobs = vo.jobs;
  const std::string method = table == 5 ? "enumeration" : "enumeration-regular";
  for (const auto& r : rows) {
    ClassReport rep = classify_structure_triple(r.triple, table == 6, opts);
    out.push_back(judge(table, r.key(), "count", r.count, rep.count, method));
    if (r.ic) out.push_back(judge(table, r.key(), "ic", *r.ic, rep.ic, method));
    out.push_back(judge(table, r.key(), "mc", r.mc, rep.mc, method));
  }
}

int run_verify(const Common& c, const std::string& which, const std::string& fixtures, const VerifyOptions& vo_in) {
  VerifyOptions vo = vo_in;
  vo.jobs = c.jobs;
  std::vector<int> tables;
  if (which == "all")
    tables = {1, 2, 3, 4, 5, 6};
  else
    tables = parse_ints(which);
  for (int t : tables)
    if (t < 1 || t > 6) fail(ErrorKind::InvalidArgument, "tables are numbered 1 to 6");
  const std::string dir = fixtures.empty() ? data_dir() : fixtures;
  std::vector<Outcome> outcomes;
  std::vector<int> size_tables;
  for (int t : tables)
    if (t <= 4) size_tables.push_back(t);
  if (!size_tables.empty()) verify_size_tables(size_tables, vo, dir, outcomes);
  for (int t : tables)
    if (t >= 5) verify_class_table(t, vo, dir, outcomes);

  std::map<int, std::array<int, 4>> summary;
  for (const auto& o : outcomes) summary[o.table][static_cast<int>(o.status)]++;
  if (c.format == "json") {
    for (const auto& o : outcomes)
      std::cout << json{{"table", o.table},   {"key", o.key},       {"field", o.field},   {"status", status_name(o.status)},
                        {"expected", o.expected}, {"computed", o.computed}, {"method", o.method}, {"note", o.note}}
                       .dump()
                << "\n";
  } else if (c.format == "csv") {
    std::cout << "table,key,field,status,expected,computed,method,note\n";
    for (const auto& o : outcomes)
      std::cout << o.table << ",\"" << o.key << "\"," << o.field << "," << status_name(o.status) << "," << o.expected << ","
                << o.computed << "," << o.method << ",\"" << o.note << "\"\n";
  } else {
    for (const auto& o : outcomes) {
      std::cout << status_name(o.status) << " table " << o.table << " " << o.key << " " << o.field << " expected "
                << o.expected;
      if (!o.computed.empty()) std::cout << " computed " << o.computed;
      std::cout << " [" << o.method << "]";
      if (!o.note.empty()) std::cout << " (" << o.note << ")";
      std::cout << "\n";
    }
    for (const auto& [t, s] : summary)
      std::cout << "table " << t << ": " << s[0] << " pass, " << s[1] << " fail, " << s[2] << " skipped, " << s[3]
                << " deferred\n";
  }
  bool any_fail = false, any_deferred = false;
  for (const auto& [t, s] : summary) {
    any_fail |= s[1] > 0;
    any_deferred |= s[3] > 0;
  }
  if (any_fail) return kVerifyFailed;
  if (any_deferred) return kResourceLimit;
  return kOk;
}

int exit_code_for(const Error& e) {
  switch (e.kind()) {
    case ErrorKind::LimitExceeded:
    case ErrorKind::BackendUnavailable: return kResourceLimit;
    default: return kUsage;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact counting and classification of partial Latin rectangles"};
  app.require_subcommand(1);
  app.fallthrough();
  Common common;
  app.add_option("--jobs,-j", common.jobs, "Worker threads")->check(CLI::PositiveNumber);
  app.add_option("--format", common.format, "Output format: text, json or csv");
  app.add_flag("--no-cache", common.no_cache, "Bypass the result cache in $PLR_CACHE_DIR");

  std::string dims, backend = "direct", row, col, sym, structures, group = "paratopism", table = "all", fixtures, out_path;
  std::optional<int> size;
  int m = 0, max_rank = 6, diagnose = 0;
  bool regular = false, reps = false, configs_only = false;
  std::uint64_t limit = 50'000'000;
  std::string max_enum = "2000000000", max_latin = "10000000000";

  auto* count = app.add_subcommand("count", "Size spectrum or a single size count of R_{r,s,n}");
  count->add_option("--dims", dims, "r,s,n")->required();
  count->add_option("--size", size, "Single size m");
  count->add_option("--backend", backend, "direct, decomposition, aggregate or formula");

  auto* count_type_cmd = app.add_subcommand("count-type", "Number of PLRs of a given type");
  count_type_cmd->add_option("--row", row, "Row type, comma separated")->required();
  count_type_cmd->add_option("--col", col, "Column type")->required();
  count_type_cmd->add_option("--sym", sym, "Symbol type")->required();
  count_type_cmd->add_flag("--regular", regular, "Count regular squares, padding to a common order");

  auto* rho_cmd = app.add_subcommand("rho", "Count for the representative type of a structure triple");
  rho_cmd->add_option("--structures", structures, "z1|z2|z3, parts comma separated")->required();
  rho_cmd->add_flag("--regular", regular, "Regular squares of order the longest structure");

  auto* classify = app.add_subcommand("classify", "Isotopism and main class counts for a structure triple");
  classify->add_option("--structures", structures, "z1|z2|z3")->required();
  classify->add_flag("--regular", regular, "Regular squares of order the longest structure");
  classify->add_option("--group", group, "Representatives to list: isotopism or paratopism");
  classify->add_flag("--representatives", reps, "List one canonical representative per class");
  classify->add_option("--limit", limit, "Maximum number of enumerated solutions");

  auto* census_cmd = app.add_subcommand("seminet-census", "Main classes of seminets up to a point rank");
  census_cmd->add_option("--max-rank", max_rank, "Largest point rank, at most 8");
  census_cmd->add_option("--out", out_path, "Write the records here instead of stdout");
  census_cmd->add_flag("--configurations-only", configs_only, "Keep configurations only");

  auto* formula = app.add_subcommand("formula", "Closed form count for m <= 6");
  formula->add_option("--dims", dims, "r,s,n");
  formula->add_option("--size", m, "Size m");
  formula->add_option("--diagnose", diagnose, "Check the tabulated diagonal polynomial for this m");

  auto* verify = app.add_subcommand("verify", "Recompute fixture tables and report per row");
  verify->add_option("--table", table, "1-6, a comma list, or all");
  verify->add_option("--fixtures", fixtures, "Directory with the fixture CSVs");
  verify->add_option("--max-enumeration", max_enum, "Largest total counted by full enumeration");
  verify->add_option("--max-latin", max_latin, "Largest full-size count computed by decomposition");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? kOk : kUsage;
  }

  try {
    check_format(common);
    std::string payload;
    if (*count) {
      if (!count->count("--size")) size.reset();
      std::string params = dims + "|" + backend + "|" + (size ? std::to_string(*size) : "all");
      payload = cached(common, "count", params, [&] { return run_count(common, dims, size, backend); });
    } else if (*count_type_cmd) {
      CountTuple R(parse_ints(row)), C(parse_ints(col)), S(parse_ints(sym));
      std::string params = row + "|" + col + "|" + sym + "|" + (regular ? "reg" : "all");
      payload = cached(common, "count-type", params, [&] {
        BigInt v = regular ? count_type_regular(R, C, S, common.jobs) : count_type(R, C, S, common.jobs);
        return single_value(common, "count", v, json{{"row", row}, {"col", col}, {"sym", sym}, {"regular", regular}});
      });
    } else if (*rho_cmd) {
      StructureTriple zt = parse_triple(structures);
      std::string params = zt.z1.to_string() + "|" + zt.z2.to_string() + "|" + zt.z3.to_string() + "|" + (regular ? "reg" : "all");
      payload = cached(common, "rho", params, [&] {
        BigInt v = rho(zt, regular, common.jobs);
        return single_value(common, "rho", v,
                            json{{"z1", zt.z1.to_string()}, {"z2", zt.z2.to_string()}, {"z3", zt.z3.to_string()}, {"regular", regular}});
      });
    } else if (*classify) {
      StructureTriple zt = parse_triple(structures);
      std::string params = zt.z1.to_string() + "|" + zt.z2.to_string() + "|" + zt.z3.to_string() + "|" + (regular ? "reg" : "all") +
                           "|" + group + "|" + (reps ? "reps" : "") + "|" + std::to_string(limit);
      payload = cached(common, "classify", params, [&] { return run_classify(common, zt, regular, group, reps, limit); });
    } else if (*census_cmd) {
      std::string params = std::to_string(max_rank) + "|" + (configs_only ? "configs" : "all");
      payload = cached(common, "seminet-census", params, [&] { return run_census(common, max_rank, configs_only); });
      if (!out_path.empty()) {
        std::ofstream f(out_path);
        if (!f) fail(ErrorKind::InvalidArgument, "cannot write " + out_path);
        f << payload;
        return kOk;
      }
    } else if (*formula) {
      if (formula->count("--diagnose")) {
        payload = run_diagnose(diagnose);
      } else {
        if (dims.empty()) fail(ErrorKind::InvalidArgument, "formula needs --dims and --size, or --diagnose");
        payload = run_formula(common, dims, m);
      }
    } else if (*verify) {
      VerifyOptions vo;
      vo.max_enumeration = parse_bigint(max_enum);
      vo.max_latin = parse_bigint(max_latin);
      return run_verify(common, table, fixtures, vo);
    }
    std::cout << payload;
    return kOk;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_code_for(e);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }
}
