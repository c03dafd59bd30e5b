#include "plr/counting.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

#include "plr/parallel.hpp"

namespace plr {

CountBackend parse_count_backend(const std::string& name) {
  if (name == "direct") return CountBackend::Direct;
  if (name == "decomposition") return CountBackend::Decomposition;
  if (name == "aggregate") return CountBackend::Aggregate;
  if (name == "formula") return CountBackend::Formula;
  fail(ErrorKind::UnknownStrategy, "unknown backend '" + name + "'");
}

std::string backend_name(CountBackend b) {
  switch (b) {
    case CountBackend::Direct: return "direct";
    case CountBackend::Decomposition: return "decomposition";
    case CountBackend::Aggregate: return "aggregate";
    case CountBackend::Formula: return "formula";
  }
  return "direct";
}

// ---- type counts -------------------------------------------------------------

bool feasibility_precheck(const CountTuple& R, const CountTuple& C, const CountTuple& S) {
  if (R.weight() != C.weight() || C.weight() != S.weight())
    fail(ErrorKind::WeightMismatch, "type components have different weights");
  return dominates(C, conjugate(R)) && dominates(S, conjugate(C)) && dominates(R, conjugate(S));
}

BigInt count_type(const CountTuple& R, const CountTuple& C, const CountTuple& S, int jobs) {
  if (!feasibility_precheck(R, C, S)) return 0;
  if (R.weight() == 0) return 1;
  Dims d = make_dims(R.size(), C.size(), S.size());
  ConstraintSystem sys = with_type(latin_system(d), R, C, S);
  Spectrum sp = weight_spectrum(sys, {Backend::Enumeration, jobs});
  return sp[R.weight()];
}

std::array<CountTuple, 3> pad_square(const CountTuple& R, const CountTuple& C, const CountTuple& S) {
  int N = std::max({R.size(), C.size(), S.size(), 1});
  std::array<CountTuple, 3> out{R, C, S};
  for (auto& t : out) t.values.resize(N, 0);
  return out;
}

BigInt count_type_regular(const CountTuple& R, const CountTuple& C, const CountTuple& S, int jobs) {
  if (!feasibility_precheck(R, C, S)) return 0;
  if (R.weight() == 0) return 1;
  auto [Rp, Cp, Sp] = pad_square(R, C, S);
  const int N = Rp.size();
  ConstraintSystem sys = latin_system(make_dims(N, N, N));
  sys = with_type(std::move(sys), Rp, Cp, Sp);
  sys = with_regularity(std::move(sys), Rp, Cp, Sp);
  Spectrum sp = weight_spectrum(sys, {Backend::Enumeration, jobs});
  return sp[R.weight()];
}

StructureTriple unordered(const StructureTriple& zt) {
  std::array<Structure, 3> z{zt.z1, zt.z2, zt.z3};
  std::sort(z.begin(), z.end(), std::greater<>());
  return {z[0], z[1], z[2]};
}

namespace {

std::mutex& rho_mutex() {
  static std::mutex m;
  return m;
}
std::map<std::pair<StructureTriple, bool>, BigInt>& rho_cache() {
  static std::map<std::pair<StructureTriple, bool>, BigInt> cache;
  return cache;
}

}  // namespace

void clear_rho_cache() {
  std::lock_guard<std::mutex> lock(rho_mutex());
  rho_cache().clear();
}

BigInt rho(const StructureTriple& zt, bool regular, int jobs) {
  if (zt.z1.weight() != zt.z2.weight() || zt.z2.weight() != zt.z3.weight())
    fail(ErrorKind::WeightMismatch, "structures " + zt.to_string() + " have different weights");
  auto key = std::make_pair(unordered(zt), regular);
  {
    std::lock_guard<std::mutex> lock(rho_mutex());
    auto it = rho_cache().find(key);
    if (it != rho_cache().end()) return it->second;
  }
  BigInt value;
  if (zt.z1.weight() == 0) {
    value = 1;
  } else {
    CountTuple R = zt.z1.as_tuple(zt.z1.length());
    CountTuple C = zt.z2.as_tuple(zt.z2.length());
    CountTuple S = zt.z3.as_tuple(zt.z3.length());
    value = regular ? count_type_regular(R, C, S, jobs) : count_type(R, C, S, jobs);
  }
  std::lock_guard<std::mutex> lock(rho_mutex());
  rho_cache().emplace(key, value);
  return value;
}

// ---- structures ----------------------------------------------------------------

std::vector<Structure> partitions(int m, int max_len, int max_part) {
  std::vector<Structure> out;
  std::vector<int> cur;
  std::function<void(int, int)> rec = [&](int left, int cap) {
    if (left == 0) {
      out.emplace_back(cur);
      return;
    }
    if (static_cast<int>(cur.size()) == max_len) return;
    for (int p = std::min(left, cap); p >= 1; --p) {
      cur.push_back(p);
      rec(left - p, p);
      cur.pop_back();
    }
  };
  if (m == 0) {
    out.emplace_back(std::vector<int>{});
    return out;
  }
  rec(m, max_part);
  return out;
}

std::vector<StructureTriple> structure_triples(Dims dims, int m) {
  auto z1s = partitions(m, dims.r, std::min(dims.s, dims.n));
  auto z2s = partitions(m, dims.s, std::min(dims.r, dims.n));
  auto z3s = partitions(m, dims.n, std::min(dims.r, dims.s));
  std::vector<StructureTriple> out;
  for (const auto& a : z1s)
    for (const auto& b : z2s)
      for (const auto& c : z3s) out.push_back({a, b, c});
  return out;
}

std::vector<StructureTriple> unordered_triples(int m, int order) {
  auto ps = partitions(m, order, order);
  std::sort(ps.begin(), ps.end(), std::greater<>());
  std::vector<StructureTriple> out;
  for (std::size_t a = 0; a < ps.size(); ++a)
    for (std::size_t b = a; b < ps.size(); ++b)
      for (std::size_t c = b; c < ps.size(); ++c) out.push_back({ps[a], ps[b], ps[c]});
  return out;
}

void RhoTable::set(const StructureTriple& zt, const BigInt& value) { table_[unordered(zt)] = value; }

std::optional<BigInt> RhoTable::get(const StructureTriple& zt) const {
  auto it = table_.find(unordered(zt));
  if (it == table_.end()) return std::nullopt;
  return it->second;
}

RhoTable build_rho_table(Dims dims, int m, int jobs) {
  auto triples = structure_triples(dims, m);
  std::vector<StructureTriple> keys;
  for (const auto& t : triples) keys.push_back(unordered(t));
  std::sort(keys.begin(), keys.end());
  keys.erase(std::unique(keys.begin(), keys.end()), keys.end());
  std::vector<BigInt> values(keys.size());
  parallel_for(keys.size(), jobs, [&](std::size_t i, std::size_t) { values[i] = rho(keys[i], false, 1); });
  RhoTable table;
  for (std::size_t i = 0; i < keys.size(); ++i) table.set(keys[i], values[i]);
  return table;
}

namespace {

// Number of tuples of length len with the given structure.
BigInt arrangements(const Structure& z, int len) {
  BigInt denom = 1;
  int zeros = len - z.length();
  denom *= factorial(zeros);
  for (int a = 0; a < z.length();) {
    int b = a;
    while (b < z.length() && z.parts[b] == z.parts[a]) ++b;
    denom *= factorial(b - a);
    a = b;
  }
  return factorial(len) / denom;
}

}  // namespace

BigInt aggregate_size(Dims dims, int m, const RhoTable& table) {
  if (m == 0) return 1;
  BigInt sum = 0;
  for (const auto& zt : structure_triples(dims, m)) {
    auto v = table.get(zt);
    if (!v) fail(ErrorKind::MissingRho, "no count for " + zt.to_string());
    if (v->is_zero()) continue;
    sum += arrangements(zt.z1, dims.r) * arrangements(zt.z2, dims.s) * arrangements(zt.z3, dims.n) * *v;
  }
  return sum;
}

std::string rho_table_csv(const RhoTable& table, bool regular) {
  std::ostringstream out;
  out << "m,z1,z2,z3,count,regular\n";
  for (const auto& [zt, v] : table.entries())
    out << zt.z1.weight() << ",\"" << zt.z1.to_string() << "\",\"" << zt.z2.to_string() << "\",\"" << zt.z3.to_string()
        << "\"," << v.str() << "," << (regular ? "true" : "false") << "\n";
  return out.str();
}

// ---- size spectra ----------------------------------------------------------------

BigInt size_count(Dims dims, int m, const CountOptions& opts) {
  dims = make_dims(dims.r, dims.s, dims.n);
  if (m < 0 || m > dims.cells()) fail(ErrorKind::SizeOutOfRange, "size outside 0.." + std::to_string(dims.cells()));
  switch (opts.backend) {
    case CountBackend::Direct: {
      auto sp = weight_spectrum(with_size(latin_system(dims), m), {Backend::Enumeration, opts.jobs});
      return sp[m];
    }
    case CountBackend::Decomposition: {
      Prop1Options p;
      p.jobs = opts.jobs;
      p.size = m;
      return prop1_spectrum(dims, p)[m];
    }
    case CountBackend::Aggregate: {
      if (m > opts.aggregate_max_size)
        fail(ErrorKind::BackendUnavailable, "aggregate backend limited to m <= " + std::to_string(opts.aggregate_max_size));
      return aggregate_size(dims, m, build_rho_table(dims, m, opts.jobs));
    }
    case CountBackend::Formula:
      if (m > 6) fail(ErrorKind::BackendUnavailable, "closed forms cover m <= 6 only");
      return closed_form_count(dims, m);
  }
  fail(ErrorKind::UnknownStrategy, "unknown backend");
}

Spectrum size_spectrum(Dims dims, const CountOptions& opts) {
  dims = make_dims(dims.r, dims.s, dims.n);
  switch (opts.backend) {
    case CountBackend::Direct:
      return weight_spectrum(latin_system(dims), {Backend::Enumeration, opts.jobs});
    case CountBackend::Decomposition: {
      Prop1Options p;
      p.jobs = opts.jobs;
      return prop1_spectrum(dims, p);
    }
    case CountBackend::Aggregate:
    case CountBackend::Formula: {
      const int limit = opts.backend == CountBackend::Formula ? 6 : opts.aggregate_max_size;
      if (dims.cells() > limit)
        fail(ErrorKind::BackendUnavailable, backend_name(opts.backend) + " backend covers m <= " + std::to_string(limit) +
                                                " but " + dims.to_string() + " needs m <= " + std::to_string(dims.cells()));
      Spectrum sp(dims.cells() + 1);
      for (int m = 0; m <= dims.cells(); ++m) sp[m] = size_count(dims, m, opts);
      return sp;
    }
  }
  fail(ErrorKind::UnknownStrategy, "unknown backend");
}

}  // namespace plr
