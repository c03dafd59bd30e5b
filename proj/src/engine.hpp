#pragma once

#include <memory>

#include "plr/constraint.hpp"

namespace plr::detail {

Spectrum enumeration_spectrum(const ConstraintSystem& sys, int jobs);

// Memo table for the recursion backend. One per worker; not thread safe.
class RecursionMemo;
std::unique_ptr<RecursionMemo, void (*)(RecursionMemo*)> make_recursion_memo();
Spectrum recursion_spectrum(const ConstraintSystem& sys, RecursionMemo* memo);

// True when every pair x_{ijk}, x_{ijk'} is a conflict, so the cell-wise
// search applies.
bool has_cell_conflicts(const ConstraintSystem& sys);

}  // namespace plr::detail
