#include "plr/classify.hpp"

#include <algorithm>
#include <atomic>
#include <set>
#include <sstream>

#include "plr/constraint.hpp"
#include "plr/counting.hpp"

namespace plr {

namespace {

// Lines of one axis that share a count can be permuted freely: the group of
// such permutations acts without fixed points on the solutions, and every
// orbit lies inside one isotopism class. Only the solution in which the lines
// of each block appear in increasing content order is canonicalised; counts
// are scaled back by the block factorials.
struct LineSymmetry {
  int axis = -1;
  std::vector<int> block;  // per 1-based label, block id or -1
  BigInt factor = 1;
};

LineSymmetry pick_symmetry(const std::array<CountTuple, 3>& types) {
  LineSymmetry best;
  for (int axis = 0; axis < 3; ++axis) {
    const auto& t = types[axis].values;
    std::map<int, int> sizes;
    for (int v : t)
      if (v > 0) ++sizes[v];
    BigInt f = 1;
    for (auto [v, d] : sizes) f *= factorial(d);
    if (f > best.factor) {
      best.axis = axis;
      best.factor = f;
      best.block.assign(t.size() + 1, -1);
      for (std::size_t i = 0; i < t.size(); ++i)
        if (t[i] > 0 && sizes[t[i]] > 1) best.block[i + 1] = t[i];
    }
  }
  return best;
}

bool is_block_ordered(const LineSymmetry& sym, const std::vector<Entry>& entries) {
  if (sym.axis < 0) return true;
  const int a = sym.axis, b = (a + 1) % 3, c = (a + 2) % 3;
  std::vector<std::vector<std::pair<int, int>>> content(sym.block.size());
  for (const auto& e : entries)
    if (sym.block[e[a]] >= 0) content[e[a]].emplace_back(e[b], e[c]);
  for (auto& v : content) std::sort(v.begin(), v.end());
  std::map<int, int> last;  // block id -> previous label
  for (std::size_t label = 1; label < sym.block.size(); ++label) {
    int blk = sym.block[label];
    if (blk < 0) continue;
    auto it = last.find(blk);
    if (it != last.end() && !(content[it->second] < content[label])) return false;
    last[blk] = static_cast<int>(label);
  }
  return true;
}

}  // namespace

int main_class_order(const StructureTriple& zt) {
  return std::max({zt.z1.length(), zt.z2.length(), zt.z3.length(), 1});
}

Plr pad_to_order(const Plr& p, int N) {
  const Dims& d = p.dims();
  if (d.r > N || d.s > N || d.n > N) fail(ErrorKind::DimensionMismatch, "cannot pad " + d.to_string() + " to order " + std::to_string(N));
  return Plr::trusted({N, N, N}, p.entries());
}

ClassReport classify_structure_triple(const StructureTriple& zt, bool regular, const ClassifyOptions& opts) {
  const int m = zt.z1.weight();
  if (zt.z2.weight() != m || zt.z3.weight() != m)
    fail(ErrorKind::WeightMismatch, "structures " + zt.to_string() + " have different weights");
  ClassReport rep;
  rep.triple = zt;
  rep.regular = regular;
  const int N = main_class_order(zt);
  if (m == 0) {
    Plr empty = Plr::trusted({1, 1, 1}, {});
    rep.count = rep.ic = rep.mc = 1;
    rep.iso_classes[empty] = 1;
    if (opts.keep_representatives) rep.representatives.push_back(empty);
    return rep;
  }
  CountTuple R = zt.z1.as_tuple(zt.z1.length());
  CountTuple C = zt.z2.as_tuple(zt.z2.length());
  CountTuple S = zt.z3.as_tuple(zt.z3.length());
  rep.count = rep.ic = rep.mc = 0;
  if (!feasibility_precheck(R, C, S)) return rep;

  ConstraintSystem sys;
  std::array<CountTuple, 3> types;
  if (regular) {
    types = pad_square(R, C, S);
    sys = with_regularity(with_type(latin_system({N, N, N}), types[0], types[1], types[2]), types[0], types[1], types[2]);
  } else {
    types = {R, C, S};
    sys = with_type(latin_system(make_dims(R.size(), C.size(), S.size())), R, C, S);
  }
  const LineSymmetry symmetry = pick_symmetry(types);

  std::vector<std::map<Plr, std::uint64_t>> per_task;
  std::atomic<std::uint64_t> seen{0};
  const Dims dims = sys.dims;
  for_each_solution_parallel(
      sys, opts.jobs, [&](std::size_t tasks) { per_task.assign(tasks, {}); },
      [&](std::size_t task, const std::vector<Entry>& entries) {
        if (seen.fetch_add(1) + 1 > opts.limit)
          fail(ErrorKind::LimitExceeded, zt.to_string() + " has more than " + std::to_string(opts.limit) + " solutions");
        if (!is_block_ordered(symmetry, entries)) return;
        ++per_task[task][canonical_isotopism(Plr::trusted(dims, entries))];
      });
  const auto scale = static_cast<std::uint64_t>(symmetry.factor);
  BigInt total = 0;
  for (auto& t : per_task)
    for (auto& [k, v] : t) {
      rep.iso_classes[k] += v * scale;
      total += v;
    }
  total *= symmetry.factor;
  rep.count = total;
  rep.ic = rep.iso_classes.size();
  std::set<Plr> mains;
  for (const auto& [k, v] : rep.iso_classes) mains.insert(canonical_paratopism(pad_to_order(k, N)));
  rep.mc = mains.size();
  if (opts.keep_representatives) rep.representatives.assign(mains.begin(), mains.end());
  return rep;
}

std::vector<Plr> class_representatives(const StructureTriple& zt, bool regular, GroupKind kind,
                                       const ClassifyOptions& opts) {
  ClassifyOptions o = opts;
  o.keep_representatives = true;
  ClassReport rep = classify_structure_triple(zt, regular, o);
  if (kind == GroupKind::Paratopism) return rep.representatives;
  std::vector<Plr> out;
  for (const auto& [k, v] : rep.iso_classes) out.push_back(k);
  return out;
}

std::string class_report_csv(const std::vector<ClassReport>& reports) {
  std::ostringstream out;
  out << "m,z1,z2,z3,regular,count,ic,mc\n";
  for (const auto& r : reports)
    out << r.triple.z1.weight() << ",\"" << r.triple.z1.to_string() << "\",\"" << r.triple.z2.to_string() << "\",\""
        << r.triple.z3.to_string() << "\"," << (r.regular ? "true" : "false") << "," << r.count.str() << ","
        << r.ic.str() << "," << r.mc.str() << "\n";
  return out.str();
}

}  // namespace plr
