// Acceptance report: one PASS/FAIL line per criterion, with the failing items
// listed underneath. Exit status is 0 when every failure is one of the
// documented table discrepancies below, 1 otherwise.
#include <chrono>
#include <functional>
#include <iostream>
#include <map>
#include <set>
#include <sstream>

#include "plr/classify.hpp"
#include "plr/constraint.hpp"
#include "plr/counting.hpp"
#include "plr/fixtures.hpp"
#include "plr/seminet.hpp"
#include "properties.hpp"

using namespace plr;

namespace {

struct Result {
  std::string summary;                // short, deterministic
  std::string report;                 // full computed output, deterministic
  std::vector<std::string> failures;  // empty on PASS
  std::vector<std::string> notes;
  double time_limit = 0;  // seconds; 0 for none
};

// Tabulated values that exhaustive recomputation contradicts, keyed
// "table key field" with the computed value.
const std::map<std::string, std::string>& documented_table_errors() {
  static const std::map<std::string, std::string> m = {
      {"6 3,2,1|2,2,1,1|2,2,1,1 count", "112"},
      {"6 2,2,2|3,1,1,1|2,2,1,1 mc", "1"},
      {"6 3,3,2|2,2,2,2|2,2,2,2 mc", "6"},
      {"6 3,3,2|2,2,2,1,1|2,2,1,1,1,1 count", "34848"},
      {"6 3,3,2|2,2,2,1,1|2,2,1,1,1,1 mc", "36"},
      {"6 3,2,2,1|3,2,1,1,1|3,2,1,1,1 count", "4068"},
  };
  return m;
}

// Rank-6 main classes: the tabulated column sum is one short
// because of the entries above and two untabulated triples.
const std::map<std::string, std::string>& documented_census_errors() {
  static const std::map<std::string, std::string> m = {{"rank 6 classes", "56"}};
  return m;
}

std::string join(const Spectrum& sp) {
  std::string out;
  for (const auto& v : sp) out += (out.empty() ? "" : " ") + v.str();
  return out;
}

Spectrum trimmed(Spectrum sp) {
  while (sp.size() > 1 && sp.back() == 0) sp.pop_back();
  return sp;
}

const std::vector<SizeRow>& size_rows() {
  static const auto rows = load_size_rows(data_dir() + "/table1_4.csv");
  return rows;
}

// Tabulated spectrum (zero-filled up to rs) and total for dims.
std::pair<Spectrum, BigInt> tabulated(Dims d) {
  Spectrum sp(d.cells() + 1, 0);
  BigInt tot = -1;
  for (const auto& r : size_rows())
    if (r.dims == d) {
      if (r.m)
        sp[*r.m] = r.count;
      else
        tot = r.count;
    }
  return {sp, tot};
}

BigInt tabulated_at(Dims d, int m) { return tabulated(d).first[m]; }

Result check_spectra_against_table(const std::vector<Dims>& dims, const std::vector<CountBackend>& backends, int jobs,
                                   double limit_per_backend, Result& res) {
  for (CountBackend b : backends) {
    auto t0 = std::chrono::steady_clock::now();
    for (Dims d : dims) {
      CountOptions o;
      o.backend = b;
      o.jobs = jobs;
      Spectrum sp = size_spectrum(d, o);
      sp.resize(d.cells() + 1, 0);
      auto [want, tot] = tabulated(d);
      res.report += backend_name(b) + " " + d.to_string() + ": " + join(sp) + " total " + total(sp).str() + "\n";
      if (sp != want) res.failures.push_back(backend_name(b) + " " + d.to_string() + " spectrum differs from table");
      if (total(sp) != tot) res.failures.push_back(backend_name(b) + " " + d.to_string() + " total " + total(sp).str());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (limit_per_backend > 0 && secs > limit_per_backend)
      res.failures.push_back(backend_name(b) + " took " + std::to_string(secs) + " s");
  }
  return res;
}

Result criterion1(int jobs) {
  Result res;
  const std::vector<Dims> dims = {{2, 2, 2}, {3, 3, 3}, {2, 3, 4}, {3, 3, 4}};
  check_spectra_against_table(dims, {CountBackend::Direct, CountBackend::Decomposition}, jobs, 5.0, res);
  res.summary = "4 spectra, direct and decomposition backends, against the tabulated columns";
  return res;
}

Result criterion2(int jobs) {
  Result res;
  res.time_limit = 600;
  Spectrum a, b;
  for (CountBackend be : {CountBackend::Direct, CountBackend::Decomposition}) {
    CountOptions o;
    o.backend = be;
    o.jobs = jobs;
    (be == CountBackend::Direct ? a : b) = size_spectrum({4, 4, 4}, o);
  }
  auto [want, tot] = tabulated({4, 4, 4});
  res.report = "direct: " + join(a) + "\ndecomposition: " + join(b) + "\n";
  if (a != b) res.failures.push_back("backends disagree");
  if (a != want) res.failures.push_back("spectrum differs from table");
  if (total(a) != 127545137 || tot != 127545137) res.failures.push_back("total " + total(a).str());
  res.summary = "(4,4,4) total " + total(a).str() + ", backends agree entrywise";
  return res;
}

Result criterion3(int jobs) {
  Result res;
  CountOptions o;
  o.backend = CountBackend::Decomposition;
  o.jobs = jobs;
  const BigInt five = size_count({5, 5, 5}, 25, o), six = size_count({6, 6, 6}, 36, o);
  res.report = "R(5,5,5:25) = " + five.str() + "\nR(6,6,6:36) = " + six.str() + "\n";
  if (five != 161280 || five != tabulated_at({5, 5, 5}, 25)) res.failures.push_back("order 5: " + five.str());
  if (six != 812851200 || six != tabulated_at({6, 6, 6}, 36)) res.failures.push_back("order 6: " + six.str());
  res.summary = "Latin squares of order 5 and 6 by decomposition with a target size: " + five.str() + ", " + six.str();
  res.notes.push_back("full (5,5,5) and (6,6,6) spectra are out of budget; the m = rs entries are checked instead");
  return res;
}

Result criterion4(int jobs) {
  Result res;
  int cases = 0;
  for (int r = 1; r <= 3; ++r)
    for (int s = r; s <= 3; ++s)
      for (int n = s; n <= 3; ++n) {
        Dims d{r, s, n};
        CountOptions direct;
        direct.jobs = jobs;
        Spectrum e = trimmed(size_spectrum(d, direct));
        Spectrum rec = trimmed(weight_spectrum(latin_system(d), {Backend::Recursion, jobs}));
        Prop1Options lex, full;
        lex.jobs = full.jobs = jobs;
        full.strategy = Strategy::FullAssignment;
        Spectrum pl = trimmed(prop1_spectrum(d, lex)), pf = trimmed(prop1_spectrum(d, full));
        res.report += d.to_string() + ": " + join(e) + "\n";
        if (rec != e || pl != e || pf != e) res.failures.push_back(d.to_string());
        ++cases;
      }
  res.summary = std::to_string(cases) + " dims, direct = recursion = decomposition (both strategies)";
  return res;
}

Result criterion5(int jobs) {
  Result res;
  res.time_limit = 60;
  std::map<std::array<int, 3>, Spectrum> spectra;
  int checks = 0;
  for (int r = 1; r <= 4; ++r)
    for (int s = 1; s <= 4; ++s)
      for (int n = 1; n <= 4; ++n) {
        std::array<int, 3> key{r, s, n};
        std::sort(key.begin(), key.end());
        if (!spectra.count(key)) {
          CountOptions o;
          o.backend = CountBackend::Decomposition;
          o.jobs = jobs;
          spectra[key] = size_spectrum({key[0], key[1], key[2]}, o);
        }
        const Spectrum& sp = spectra[key];
        for (int m = 0; m <= std::min(6, r * s); ++m) {
          ++checks;
          const BigInt cf = closed_form_count({r, s, n}, m);
          const BigInt want = m < static_cast<int>(sp.size()) ? sp[m] : BigInt(0);
          if (cf != want)
            res.failures.push_back("closed form " + Dims{r, s, n}.to_string() + " m=" + std::to_string(m) + ": " +
                                   cf.str() + " vs " + want.str());
        }
      }
  for (int n = 1; n <= 6; ++n)
    for (int m = 0; m <= std::min(6, n * n); ++m) {
      ++checks;
      const BigInt dg = closed_form_diagonal(n, m);
      res.report += "diag n=" + std::to_string(n) + " m=" + std::to_string(m) + ": " + dg.str() + "\n";
      BigInt ref = n <= 4 ? spectra[{n, n, n}][m] : tabulated_at({n, n, n}, m);
      if (dg != closed_form_count({n, n, n}, m) || dg != ref)
        res.failures.push_back("diagonal n=" + std::to_string(n) + " m=" + std::to_string(m));
    }
  for (int m = 1; m <= 6; ++m) {
    TermDiagnosis dx = diagnose_diagonal(m);
    std::string line = "tabulated diagonal form m=" + std::to_string(m) + ": ";
    line += dx.tabulated_matches ? "agrees with the general form" : "offending term " + dx.offending_term;
    res.report += line + "\n";
    if (!dx.tabulated_matches) res.notes.push_back(line);
  }
  res.summary = std::to_string(checks) + " closed-form values equal enumeration and tabulated counts";
  return res;
}

struct ClassCheck {
  std::string table_key;
  std::string field;
  BigInt expected, computed;
};

Result criterion6(int jobs) {
  Result res;
  res.time_limit = 1800;
  ClassifyOptions o;
  o.jobs = jobs;
  const auto rows = load_class_rows(data_dir() + "/table5.csv", 5);
  for (const auto& row : rows) {
    ClassReport rep = classify_structure_triple(row.triple, false, o);
    res.report += row.key() + " " + rep.count.str() + " " + rep.ic.str() + " " + rep.mc.str() + "\n";
    if (rep.count != row.count) res.failures.push_back(row.key() + " count " + rep.count.str() + " tabulated " + row.count.str());
    if (rep.ic != *row.ic) res.failures.push_back(row.key() + " ic " + rep.ic.str() + " tabulated " + row.ic->str());
    if (rep.mc != row.mc) res.failures.push_back(row.key() + " mc " + rep.mc.str() + " tabulated " + row.mc.str());
  }
  res.summary = std::to_string(rows.size()) + " rows, count/IC/MC recomputed";
  return res;
}

// Regular counts for every unordered triple of weight 3..8, shared by
// criteria 7 and 8's cross-checks.
std::map<StructureTriple, ClassReport> regular_reports(int jobs) {
  std::map<StructureTriple, ClassReport> out;
  ClassifyOptions o;
  o.jobs = jobs;
  for (int m = 3; m <= 8; ++m)
    for (const auto& zt : unordered_triples(m, m)) {
      int singles = 0;
      for (int a = 0; a < 3; ++a)
        for (int p : zt[a].parts) singles += p == 1;
      if (singles > m) continue;
      out.emplace(zt, classify_structure_triple(zt, true, o));
    }
  return out;
}

Result criterion7(int jobs) {
  Result res;
  res.time_limit = 7200;
  const auto reports = regular_reports(jobs);
  const auto rows = load_class_rows(data_dir() + "/table6.csv", 6);
  std::set<StructureTriple> tabulated_triples;
  std::size_t skipped = 0;
  for (const auto& row : rows) {
    const StructureTriple key = unordered(row.triple);
    tabulated_triples.insert(key);
    const ClassReport& rep = reports.at(key);
    res.report += row.key() + " " + rep.count.str() + " " + rep.mc.str() + "\n";
    auto check = [&](const std::string& field, const BigInt& want, const BigInt& got) {
      if (auto issue = find_issue(6, row.key(), field); issue && issue->kind == IssueKind::Skip) {
        ++skipped;
        res.notes.push_back("skip-listed " + row.key() + " " + field + ": tabulated " + want.str() + ", computed " +
                            got.str());
        return;
      }
      if (want != got)
        res.failures.push_back("6 " + row.key() + " " + field + " computed " + got.str() + " tabulated " + want.str());
    };
    check("count", row.count, rep.count);
    check("mc", row.mc, rep.mc);
  }
  std::size_t untabulated = 0;
  for (const auto& [zt, rep] : reports)
    if (rep.count != 0 && !tabulated_triples.count(zt)) {
      ++untabulated;
      res.notes.push_back("not tabulated: " + zt.to_string() + " count " + rep.count.str() + " mc " + rep.mc.str());
      res.report += "untabulated " + zt.to_string() + " " + rep.count.str() + " " + rep.mc.str() + "\n";
    }
  res.summary = std::to_string(rows.size()) + " rows, regular count and MC recomputed (" + std::to_string(skipped) +
                " skip-listed field, " + std::to_string(untabulated) + " non-empty triples not tabulated)";
  return res;
}

std::string triple_key(const char* a, const char* b, const char* c) {
  return unordered({Structure::parse(a), Structure::parse(b), Structure::parse(c)}).to_string();
}

Result criterion8(int jobs) {
  Result res;
  const auto records = census(8, jobs);
  res.report = census_jsonl(records);
  std::map<int, int> per_rank;
  for (const auto& r : records) ++per_rank[r.rank];

  std::map<int, BigInt> column_sum;
  for (const auto& row : load_class_rows(data_dir() + "/table6.csv", 6)) column_sum[row.m] += row.mc;
  std::string counts;
  for (int m = 3; m <= 6; ++m) {
    counts += (m > 3 ? ", " : "") + std::to_string(per_rank[m]);
    if (per_rank[m] != column_sum[m])
      res.failures.push_back("rank " + std::to_string(m) + " classes " + std::to_string(per_rank[m]) +
                             " column sum " + column_sum[m].str());
  }
  res.notes.push_back("rank 7: " + std::to_string(per_rank[7]) + " classes, rank 8: " + std::to_string(per_rank[8]) +
                      " classes (column sums " + column_sum[7].str() + ", " + column_sum[8].str() + ")");

  std::set<std::string> seven;
  int seven_configs = 0;
  std::map<std::string, int> eight;
  int eight_configs = 0;
  std::map<std::string, int> named8;
  for (const auto& r : records) {
    if (r.rank == 7 && r.configuration) {
      ++seven_configs;
      seven.insert(r.named_match.value_or("?"));
    }
    if (r.rank == 8 && r.configuration) {
      ++eight_configs;
      ++eight[r.triple.to_string()];
    }
    if (r.rank == 8 && r.named_match) ++named8[*r.named_match];
  }
  if (seven_configs != 3 || seven != std::set<std::string>{"H", "C1", "C2"})
    res.failures.push_back("rank-7 configurations: " + std::to_string(seven_configs));
  const std::map<std::string, int> want8 = {
      {triple_key("4,4", "2^4", "2^4"), 2},        {triple_key("4,2,2", "2^4", "2^4"), 4},
      {triple_key("3,3,2", "3,3,2", "3,3,2"), 1}, {triple_key("3,3,2", "3,3,2", "2^4"), 3},
      {triple_key("3,3,2", "2^4", "2^4"), 6},      {triple_key("2^4", "2^4", "2^4"), 7},
  };
  if (eight_configs != 23 || eight != want8) res.failures.push_back("rank-8 configurations: " + std::to_string(eight_configs));
  if (named8["F22"] != 1 || named8["F23"] != 1) res.failures.push_back("F22/F23 not matched as distinct classes");
  Seminet sem8 = seminet_from_pls(plr_from_grid("12../21../..34/..43"));
  if (is_configuration(sem8) || named8["Sem8"] != 1) res.failures.push_back("Sem8 grid misclassified");

  res.summary = "ranks 3-6: " + counts + " classes; rank 7: " + std::to_string(seven_configs) +
                " configurations (H, C1, C2); rank 8: " + std::to_string(eight_configs) +
                " configurations (2,4,1,3,6,7), F22 != F23, Sem8 is not a configuration";
  return res;
}

Result criterion9(int) {
  Result res;
  const std::vector<std::pair<std::string, std::function<props::Outcome()>>> suites = {
      {"precheck necessity", [] { return props::precheck_necessity(6); }},
      {"regular-count rules", [] { return props::regular_count_rules(); }},
      {"representative independence", [] { return props::representative_independence(); }},
      {"plex bound", [] { return props::plex_bound(); }},
      {"orbit invariance", [] { return props::orbit_invariance(); }},
      {"parastrophe involution", [] { return props::parastrophe_involution(); }},
  };
  for (const auto& [name, run] : suites) {
    props::Outcome o = run();
    res.report += name + ": " + o.summary + "\n";
    if (!o.ok) res.failures.push_back(name + ": " + o.first_failure);
  }
  res.summary = std::to_string(suites.size()) + " property suites";
  return res;
}

// A failure is documented when its item and computed value match one of
// the lists above exactly.
bool documented(int id, const std::string& failure) {
  if (id == 7)
    for (const auto& [k, v] : documented_table_errors())
      if (failure.rfind(k + " computed " + v + " ", 0) == 0) return true;
  if (id == 8)
    for (const auto& [k, v] : documented_census_errors())
      if (failure.rfind(k + " " + v + " ", 0) == 0) return true;
  return false;
}

const char* kTitles[] = {"",
                         "size spectra, small dims",
                         "size spectrum (4,4,4)",
                         "Latin-square anchors",
                         "backend equivalence",
                         "closed forms",
                         "structure table without regularity",
                         "structure table with regularity",
                         "seminet census",
                         "property suites",
                         "determinism across worker counts"};

}  // namespace

int main() {
  const std::vector<std::function<Result(int)>> criteria = {criterion1, criterion2, criterion3, criterion4,
                                                             criterion5, criterion6, criterion7, criterion8};
  bool unexplained = false;
  std::vector<std::string> reports;
  auto print = [&](int id, const Result& r, double secs) {
    bool timed_out = r.time_limit > 0 && secs > r.time_limit;
    const bool pass = r.failures.empty() && !timed_out;
    std::ostringstream line;
    line.setf(std::ios::fixed);
    line.precision(1);
    line << (pass ? "PASS" : "FAIL") << " [" << id << "] " << kTitles[id] << ": " << r.summary << " (" << secs << " s)";
    std::cout << line.str() << "\n";
    for (const auto& n : r.notes) std::cout << "    note: " << n << "\n";
    for (const auto& f : r.failures) {
      const bool doc = documented(id, f);
      unexplained |= !doc;
      std::cout << "    " << (doc ? "documented: " : "failure: ") << f << "\n";
    }
    if (timed_out) {
      unexplained = true;
      std::cout << "    failure: over the " << r.time_limit << " s budget\n";
    }
    std::cout.flush();
  };

  for (std::size_t i = 0; i < criteria.size(); ++i) {
    auto t0 = std::chrono::steady_clock::now();
    Result r;
    try {
      r = criteria[i](1);
    } catch (const std::exception& e) {
      r.summary = "error";
      r.failures.push_back(e.what());
    }
    print(static_cast<int>(i) + 1, r, std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count());
    reports.push_back(r.report);
  }
  {
    auto t0 = std::chrono::steady_clock::now();
    Result r = criterion9(1);
    print(9, r, std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count());
  }
  {
    auto t0 = std::chrono::steady_clock::now();
    Result r;
    for (int jobs : {4, 8}) {
      for (std::size_t i = 0; i < criteria.size(); ++i) {
        std::string other;
        try {
          other = criteria[i](jobs).report;
        } catch (const std::exception& e) {
          other = e.what();
        }
        if (other != reports[i])
          r.failures.push_back("criterion " + std::to_string(i + 1) + " differs with " + std::to_string(jobs) + " workers");
      }
    }
    r.summary = "criteria 1-8 rerun with 4 and 8 workers, outputs byte-identical to 1 worker";
    print(10, r, std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count());
  }
  return unexplained ? 1 : 0;
}
