#include <algorithm>
#include <array>
#include <set>

#include "plr/counting.hpp"

namespace plr {

namespace {

struct Term {
  long long coeff;
  SymExpTriple exps;
};

// m! |R_{r,s,n:m}| = rsn * sum(coeff * Sym(exps)) for 2 <= m <= 6.
const std::vector<Term>& general_terms(int m) {
  static const std::array<std::vector<Term>, 7> table = {{
      {},
      {},
      {{1, {1, 1, 1}}, {-1, {1, 0, 0}}, {2, {0, 0, 0}}},
      {{1, {2, 2, 2}}, {-3, {2, 1, 1}}, {6, {1, 1, 1}}, {6, {1, 1, 0}}, {2, {2, 0, 0}}, {-12, {1, 0, 0}}, {14, {0, 0, 0}}},
      {{1, {3, 3, 3}}, {-6, {3, 2, 2}}, {12, {2, 2, 2}}, {11, {3, 1, 1}}, {30, {2, 2, 1}}, {-60, {2, 1, 1}},
       {-6, {3, 0, 0}}, {-36, {2, 1, 0}}, {-28, {1, 1, 1}}, {72, {2, 0, 0}}, {198, {1, 1, 0}}, {-228, {1, 0, 0}},
       {198, {0, 0, 0}}},
      {{1, {4, 4, 4}},     {-10, {4, 3, 3}},  {20, {3, 3, 3}},    {35, {4, 2, 2}},   {90, {3, 3, 2}},
       {-180, {3, 2, 2}},  {-50, {4, 1, 1}},  {-260, {3, 2, 1}},  {-460, {2, 2, 2}}, {520, {3, 1, 1}},
       {1350, {2, 2, 1}},  {24, {4, 0, 0}},   {240, {3, 1, 0}},   {480, {2, 2, 0}},  {-320, {2, 1, 1}},
       {-480, {3, 0, 0}},  {-2520, {2, 1, 0}}, {-5090, {1, 1, 1}}, {2880, {2, 0, 0}}, {7440, {1, 1, 0}},
       {-6360, {1, 0, 0}}, {4512, {0, 0, 0}}},
      {{1, {5, 5, 5}},        {-15, {5, 4, 4}},     {30, {4, 4, 4}},      {85, {5, 3, 3}},
       {210, {4, 4, 3}},      {-420, {4, 3, 3}},    {-225, {5, 2, 2}},    {-1065, {4, 3, 2}},
       {-2150, {3, 3, 3}},    {2130, {4, 2, 2}},    {5310, {3, 3, 2}},    {274, {5, 1, 1}},
       {2310, {4, 2, 1}},     {4400, {3, 3, 1}},    {4800, {3, 2, 2}},    {-4620, {4, 1, 1}},
       {-22170, {3, 2, 1}},   {-49500, {2, 2, 2}},  {-120, {5, 0, 0}},    {-1800, {4, 1, 0}},
       {-6000, {3, 2, 0}},    {10460, {3, 1, 1}},   {34980, {2, 2, 1}},   {3600, {4, 0, 0}},
       {30600, {3, 1, 0}},    {58440, {2, 2, 0}},   {88710, {2, 1, 1}},   {-34800, {3, 0, 0}},
       {-165480, {2, 1, 0}},  {-364268, {1, 1, 1}}, {140040, {2, 0, 0}},  {344520, {1, 1, 0}},
       {-240720, {1, 0, 0}},  {146400, {0, 0, 0}}},
  }};
  return table[m];
}

// m! |R_{n,n,n:m}| = n^3 (n-1)^2 (n-2)^e * inner(n), inner in descending powers.
struct Diagonal {
  int e;
  std::vector<long long> inner;
};

const Diagonal& diagonal_tabulated(int m) {
  static const std::array<Diagonal, 7> table = {{
      {0, {}},
      {0, {}},
      {0, {1, 2}},
      {0, {1, 2, -6, -8, 14}},
      {0, {1, 2, -15, -20, 98, 36, -288, 198}},
      {2, {1, 6, -7, -88, 6, 532, -84, 1386, 1128}},
      {2, {1, 6, -22, -168, 231, 2022, -2014, -12606, 16168, 32250, -70740, 36600}},
  }};
  return table[m];
}

// The tabulated quintic has the wrong sign on its linear coefficient; the
// general m = 5 form fixes it at -1386.
Diagonal diagonal_corrected(int m) {
  Diagonal d = diagonal_tabulated(m);
  if (m == 5) d.inner[7] = -1386;
  return d;
}

BigInt pow(const BigInt& base, int e) {
  BigInt out = 1;
  for (int i = 0; i < e; ++i) out *= base;
  return out;
}

BigInt eval_diagonal(const Diagonal& d, int n) {
  BigInt v = 0;
  for (long long c : d.inner) v = v * n + c;
  return pow(BigInt(n), 3) * pow(BigInt(n - 1), 2) * pow(BigInt(n - 2), d.e) * v;
}

BigInt divide_exact(const BigInt& num, int m, const std::string& what) {
  BigInt f = factorial(m);
  if (num % f != 0) fail(ErrorKind::NonIntegerResult, what + " is not divisible by " + std::to_string(m) + "!");
  return num / f;
}

}  // namespace

BigInt sym_poly(const SymExpTriple& e, Dims dims) {
  std::array<int, 3> x{e.a, e.b, e.c};
  std::sort(x.begin(), x.end());
  BigInt sum = 0;
  do {
    sum += pow(BigInt(dims.r), x[0]) * pow(BigInt(dims.s), x[1]) * pow(BigInt(dims.n), x[2]);
  } while (std::next_permutation(x.begin(), x.end()));
  return sum;
}

BigInt closed_form_count(Dims dims, int m) {
  if (m < 0 || m > 6) fail(ErrorKind::SizeOutOfRange, "closed forms cover 0 <= m <= 6");
  if (m == 0) return 1;
  BigInt rsn = BigInt(dims.r) * dims.s * dims.n;
  if (m == 1) return rsn;
  BigInt inner = 0;
  for (const auto& t : general_terms(m)) inner += t.coeff * sym_poly(t.exps, dims);
  return divide_exact(rsn * inner, m, "closed form at m=" + std::to_string(m));
}

BigRational diagonal_numerator(int n, int m, bool as_tabulated) {
  if (m < 0 || m > 6) fail(ErrorKind::SizeOutOfRange, "closed forms cover 0 <= m <= 6");
  if (m == 0) return 1;
  if (m == 1) return BigRational(pow(BigInt(n), 3));
  Diagonal d = as_tabulated ? diagonal_tabulated(m) : diagonal_corrected(m);
  return BigRational(eval_diagonal(d, n));
}

BigInt closed_form_diagonal(int n, int m) {
  if (m < 0 || m > 6) fail(ErrorKind::SizeOutOfRange, "closed forms cover 0 <= m <= 6");
  if (n < 1) fail(ErrorKind::InvalidArgument, "order must be positive");
  if (m <= 1) return m == 0 ? BigInt(1) : pow(BigInt(n), 3);
  return divide_exact(eval_diagonal(diagonal_corrected(m), n), m, "diagonal form at m=" + std::to_string(m));
}

TermDiagnosis diagnose_diagonal(int m) {
  TermDiagnosis out;
  out.m = m;
  if (m < 2 || m > 6) {
    out.tabulated_matches = true;
    return out;
  }
  auto agrees = [&](const Diagonal& d) {
    for (int n = 1; n <= 12; ++n) {
      BigInt target = closed_form_count({n, n, n}, m) * factorial(m);
      if (eval_diagonal(d, n) != target) return false;
    }
    return true;
  };
  const Diagonal& tabulated = diagonal_tabulated(m);
  out.tabulated_matches = agrees(tabulated);
  if (out.tabulated_matches) return out;
  const int deg = static_cast<int>(tabulated.inner.size()) - 1;
  for (int i = 0; i <= deg; ++i) {
    Diagonal trial = tabulated;
    trial.inner[i] = -trial.inner[i];
    if (agrees(trial)) {
      int power = deg - i;
      out.offending_term = std::to_string(tabulated.inner[i]) + (power == 0 ? "" : power == 1 ? "n" : "n^" + std::to_string(power)) +
                           " should be " + std::to_string(-tabulated.inner[i]) +
                           (power == 0 ? "" : power == 1 ? "n" : "n^" + std::to_string(power));
      return out;
    }
  }
  out.offending_term = "no single sign flip reconciles the tabulated polynomial";
  return out;
}

BigRational plex_lower_bound(int t, int n) {
  if (t < 1 || n < 1) fail(ErrorKind::InvalidArgument, "t and n must be positive");
  BigInt num = pow(factorial(n), t) * pow(factorial(t), n);
  BigInt den = pow(BigInt(t), t * n);
  return BigRational(num, den);
}

}  // namespace plr
