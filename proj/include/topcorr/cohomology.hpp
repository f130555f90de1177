#pragma once

#include <deque>
#include <string>
#include <vector>

#include "topcorr/actions.hpp"
#include "topcorr/measures.hpp"

namespace topcorr {

/// Positive function on the units (carrier points) of a transformation groupoid.
using ZeroCochain = std::vector<Rational>;
/// Positive function on its arrows.
using OneCocycle = std::vector<Rational>;

/// d⁰(b)(k) = b(src k) / b(rng k)
inline OneCocycle d0(const ZeroCochain& b, const TransformationGroupoid& t) {
  if (b.size() != t.unit_count()) throw MismatchError("d0: cochain size differs from carrier");
  OneCocycle d(t.arrow_count());
  for (Index k = 0; k < t.arrow_count(); ++k) d[k] = b[t.src(k)] / b[t.rng(k)];
  return d;
}

inline ValidationReport verify_cocycle(const OneCocycle& d, const TransformationGroupoid& t) {
  ValidationReport r;
  if (d.size() != t.arrow_count()) {
    r.fail("shape", "cocycle size differs from arrow count");
    return r;
  }
  for (Index z = 0; z < t.unit_count(); ++z)
    if (d[t.unit_arrow(z)] != 1) r.fail("unit", "point " + std::to_string(z));
  for (Index k = 0; k < t.arrow_count(); ++k) {
    auto [b, e] = t.arrows_at(t.src(k));
    for (Index l = b; l < e; ++l)
      if (d[t.compose(k, l)] != d[k] * d[l])
        r.fail("multiplicativity", "arrows " + std::to_string(k) + "," + std::to_string(l));
  }
  return r;
}

/// b with d⁰(b) = D, normalized to 1 at the least point of each orbit. Points related by one of
/// the extra actions are forced to share a value, which makes b invariant under them. The result
/// is certified on every arrow; a failure means D is not a coboundary (nontrivial isotropy).
inline ZeroCochain solve_coboundary(const OneCocycle& d, const TransformationGroupoid& t,
                                    const std::vector<const RightAction*>& invariances = {}) {
  if (d.size() != t.arrow_count()) throw MismatchError("solve_coboundary: cocycle size differs from arrow count");
  const std::size_t n = t.unit_count();
  for (const RightAction* a : invariances)
    if (a->size() != n) throw MismatchError("solve_coboundary: invariance acts on a different carrier");
  ZeroCochain b(n, Rational(0));
  std::vector<bool> set(n, false);
  for (Index start = 0; start < n; ++start) {
    if (set[start]) continue;
    b[start] = 1;
    set[start] = true;
    std::deque<Index> queue{start};
    while (!queue.empty()) {
      Index z = queue.front();
      queue.pop_front();
      auto [lo, hi] = t.arrows_at(z);
      for (Index k = lo; k < hi; ++k) {
        Index s = t.src(k);
        if (!set[s]) {
          b[s] = b[z] * d[k];
          set[s] = true;
          queue.push_back(s);
        }
      }
      for (const RightAction* act : invariances)
        for (Index a : act->groupoid().range_fiber(act->moment(z))) {
          Index s = act->act(z, a);
          if (!set[s]) {
            b[s] = b[z];
            set[s] = true;
            queue.push_back(s);
          }
        }
    }
  }
  for (Index k = 0; k < t.arrow_count(); ++k)
    if (b[t.src(k)] != b[t.rng(k)] * d[k])
      throw NotACoboundary("d0(b) differs from D at arrow " + std::to_string(k) + " (point " +
                           std::to_string(t.point(k)) + ", " + t.acting().arrow_name(t.group_arrow(k)) + ")");
  for (const RightAction* act : invariances)
    for (Index z = 0; z < n; ++z)
      for (Index a : act->groupoid().range_fiber(act->moment(z)))
        if (b[act->act(z, a)] != b[z])
          throw NotACoboundary("no solution invariant under " + act->groupoid().name() + " at point " +
                               std::to_string(z));
  return b;
}

/// c = [b'/b] on the orbit space, for two cochains with the same coboundary.
inline std::vector<Rational> cochain_quotient(const ZeroCochain& b, const ZeroCochain& b2,
                                              const TransformationGroupoid& t, const Quotient& q) {
  if (d0(b, t) != d0(b2, t)) throw MismatchError("cochain_quotient: coboundaries differ");
  return invariant_function_descends(ratio(b2, b), t, q);
}

}  // namespace topcorr
