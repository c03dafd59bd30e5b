#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>
#include <vector>

namespace plr {

using BigInt = boost::multiprecision::cpp_int;
using BigRational = boost::multiprecision::cpp_rational;

// Coefficient vector indexed by size.
using Spectrum = std::vector<BigInt>;

inline std::string to_string(const BigInt& v) { return v.str(); }

BigInt parse_bigint(const std::string& text);

BigInt factorial(int n);
BigInt binomial(int n, int k);
BigInt falling(int n, int k);

// Sum of all coefficients.
BigInt total(const Spectrum& sp);

// Elementwise sum, resizing to the longer length.
void accumulate(Spectrum& into, const Spectrum& add, const BigInt& factor = 1);

}  // namespace plr
