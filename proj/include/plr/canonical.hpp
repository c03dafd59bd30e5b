#pragma once

#include <vector>

#include "plr/core.hpp"

namespace plr {

enum class GroupKind { Isotopism, Paratopism };

struct GroupSpec {
  GroupKind kind = GroupKind::Isotopism;
  Dims dims;
};

// Parastrophes that keep the dimensions non-decreasing.
std::vector<Parastrophe> valid_parastrophisms(Dims dims);

// Smallest sorted entry list in the orbit of P. Throws DimensionMismatch if
// P's dims differ from g.dims.
Plr canonical_form(const Plr& p, const GroupSpec& g);
Plr canonical_isotopism(const Plr& p);
Plr canonical_paratopism(const Plr& p);

// An isotopism mapping P onto its isotopism canonical form.
Isotopism canonical_labelling(const Plr& p);

}  // namespace plr
