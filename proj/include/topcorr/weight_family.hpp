#pragma once

#include <vector>

#include "topcorr/rational.hpp"

namespace topcorr {

/// Strictly positive weights on the fibers of a surjection carrier -> base.
struct WeightFamily {
  std::vector<Index> target;
  std::size_t base_size = 0;
  std::vector<Rational> weight;

  std::size_t size() const { return target.size(); }

  std::vector<Index> fiber(Index b) const {
    std::vector<Index> out;
    for (Index p = 0; p < target.size(); ++p)
      if (target[p] == b) out.push_back(p);
    return out;
  }

  Rational mass(Index b) const {
    Rational m = 0;
    for (Index p = 0; p < target.size(); ++p)
      if (target[p] == b) m += weight[p];
    return m;
  }

  bool operator==(const WeightFamily&) const = default;
};

/// Shape and positivity; throws SchemaError.
inline void require_well_formed(const WeightFamily& w) {
  if (w.weight.size() != w.target.size())
    throw SchemaError("weight family: weight count differs from carrier size");
  for (Index p = 0; p < w.target.size(); ++p) {
    if (w.target[p] >= w.base_size)
      throw SchemaError("weight family: target out of range at point " + std::to_string(p));
    if (w.weight[p] <= 0)
      throw SchemaError("weight family: non-positive weight at point " + std::to_string(p));
  }
}

}  // namespace topcorr
