#pragma once

#include <algorithm>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "topcorr/measures.hpp"

namespace topcorr {

/// Pair groupoid × cyclic group acting on k copies of a union of cycles, with a scaled Haar
/// system, two invariant measures, three families along the moment map and two fiber-preserving
/// bijections.
struct MeasureInstance {
  std::uint64_t seed = 0;
  GroupoidPtr groupoid;
  HaarSystem haar;
  RightAction action;
  TransformationGroupoid t;
  Quotient orbits;
  std::vector<Rational> m, m2;
  WeightFamily w1, w2, w3;
  std::vector<Index> a1, a2;
};

namespace detail {

inline Rational random_rational(std::mt19937_64& rng, int num_max, int den_max) {
  std::uniform_int_distribution<int> num(1, num_max), den(1, den_max);
  return Rational(num(rng), den(rng));
}

/// A bijection of the carrier preserving every fiber of target.
inline std::vector<Index> fiber_permutation(std::mt19937_64& rng, const std::vector<Index>& target,
                                            std::size_t base) {
  std::vector<Index> f(target.size());
  for (Index u = 0; u < base; ++u) {
    std::vector<Index> fiber;
    for (Index p = 0; p < target.size(); ++p)
      if (target[p] == u) fiber.push_back(p);
    std::vector<Index> img = fiber;
    std::shuffle(img.begin(), img.end(), rng);
    for (Index i = 0; i < fiber.size(); ++i) f[fiber[i]] = img[i];
  }
  return f;
}

}  // namespace detail

inline MeasureInstance random_measure_instance(std::uint64_t seed, std::size_t max_points = 12) {
  std::mt19937_64 rng(seed);
  MeasureInstance mi;
  mi.seed = seed;
  std::uniform_int_distribution<int> units_d(1, 3), order_d(1, 4);
  const std::size_t k = units_d(rng);
  const std::size_t n = order_d(rng);
  std::vector<std::size_t> divisors;
  for (std::size_t d = 1; d <= n; ++d)
    if (n % d == 0) divisors.push_back(d);
  // cycles with lengths dividing n, at most max_points in total over the k copies
  std::vector<std::size_t> cycles;
  std::size_t per_copy = 0;
  std::uniform_int_distribution<std::size_t> pick(0, divisors.size() - 1);
  std::uniform_int_distribution<int> count_d(1, 3);
  for (int c = count_d(rng); c > 0; --c) {
    std::size_t d = divisors[pick(rng)];
    if ((per_copy + d) * k > max_points) break;
    cycles.push_back(d);
    per_copy += d;
  }
  if (cycles.empty()) {
    cycles.push_back(1);
    per_copy = 1;
  }
  Groupoid pair = pair_groupoid(k);
  Groupoid cyc = cyclic_group(n);
  mi.groupoid = std::make_shared<const Groupoid>(product_groupoid(pair, cyc));
  const Groupoid& g = *mi.groupoid;
  std::vector<Rational> scale(g.unit_count());
  for (auto& s : scale) s = detail::random_rational(rng, 3, 2);
  mi.haar = scaled_haar(g, scale);

  // point (i, c, s) has index i·per_copy + offset(c) + s
  std::vector<std::size_t> offset(cycles.size(), 0);
  for (Index c = 1; c < cycles.size(); ++c) offset[c] = offset[c - 1] + cycles[c - 1];
  std::vector<Index> moment(k * per_copy);
  for (Index p = 0; p < moment.size(); ++p) moment[p] = p / per_copy;
  mi.action = RightAction::generate(mi.groupoid, moment, [&](Index p, Index a) {
    Index pa = a / n, rot = a % n;
    Index i = pair.src(pa);
    Index local = p % per_copy;
    Index c = 0;
    while (c + 1 < cycles.size() && local >= offset[c + 1]) ++c;
    Index s = local - offset[c];
    return i * per_copy + offset[c] + (s + rot) % cycles[c];
  });
  mi.t = TransformationGroupoid(mi.action, mi.haar);
  mi.orbits = orbit_quotient(mi.action);

  // invariant: m / scale∘moment is orbit-constant
  mi.m.resize(moment.size());
  mi.m2.resize(moment.size());
  std::vector<Rational> f(mi.orbits.size()), f2(mi.orbits.size());
  for (Index c = 0; c < f.size(); ++c) {
    f[c] = detail::random_rational(rng, 5, 3);
    f2[c] = detail::random_rational(rng, 5, 3);
  }
  for (Index p = 0; p < moment.size(); ++p) {
    mi.m[p] = f[mi.orbits.cls[p]] * scale[moment[p]];
    mi.m2[p] = f2[mi.orbits.cls[p]] * scale[moment[p]];
  }

  auto family = [&]() {
    WeightFamily w{moment, g.unit_count(), {}};
    for (Index p = 0; p < moment.size(); ++p) w.weight.push_back(detail::random_rational(rng, 6, 4));
    return w;
  };
  mi.w1 = family();
  mi.w2 = family();
  mi.w3 = family();
  mi.a1 = detail::fiber_permutation(rng, moment, g.unit_count());
  mi.a2 = detail::fiber_permutation(rng, moment, g.unit_count());
  return mi;
}

/// Reflexivity, chain rule, pushforward functoriality, parts (i)-(iii) of the quotient lemma for
/// equivalent invariant measures, and the disintegration identity.
inline ValidationReport check_measure_calculus(const MeasureInstance& mi) {
  ValidationReport r;
  const std::string tag = "seed " + std::to_string(mi.seed);
  r.merge(validate_action(mi.action), "action");
  r.merge(check_measure_invariance(mi.m, mi.t), "m");
  r.merge(check_measure_invariance(mi.m2, mi.t), "m2");

  RadonNikodym d12 = equivalence(mi.w1, mi.w2), d21 = equivalence(mi.w2, mi.w1);
  for (Index p = 0; p < d12.size(); ++p)
    if (d12[p] * d21[p] != 1) r.fail("reflexivity", tag + " point " + std::to_string(p));

  // d(a2∘a1)_*λ1/dλ3 = (d a2_*λ2/dλ3) · (d a1_*λ1/dλ2 ∘ a2⁻¹)
  std::vector<Index> a21(mi.a1.size());
  for (Index p = 0; p < a21.size(); ++p) a21[p] = mi.a2[mi.a1[p]];
  std::vector<Index> a2inv = inverse_map(mi.a2);
  RadonNikodym lhs = equivalence(pushforward(a21, mi.w1, mi.w3.target), mi.w3);
  RadonNikodym first = equivalence(pushforward(mi.a2, mi.w2, mi.w3.target), mi.w3);
  RadonNikodym second = equivalence(pushforward(mi.a1, mi.w1, mi.w2.target), mi.w2);
  for (Index p = 0; p < lhs.size(); ++p)
    if (lhs[p] != first[p] * second[a2inv[p]]) r.fail("chain_rule", tag + " point " + std::to_string(p));

  WeightFamily once = pushforward(a21, mi.w1);
  WeightFamily twice = pushforward(mi.a2, pushforward(mi.a1, mi.w1));
  if (once.weight != twice.weight || once.target != twice.target) r.fail("pushforward_functoriality", tag);

  RadonNikodym dm = ratio(mi.m, mi.m2);
  auto inv_side = ratio(measure_along_inverse_haar(mi.m, mi.t), measure_along_inverse_haar(mi.m2, mi.t));
  auto fwd_side = ratio(measure_along_haar(mi.m, mi.t), measure_along_haar(mi.m2, mi.t));
  for (Index k = 0; k < mi.t.arrow_count(); ++k) {
    if (inv_side[k] != dm[mi.t.src(k)]) r.fail("quotient_lemma_i_source", tag + " arrow " + std::to_string(k));
    if (fwd_side[k] != dm[mi.t.rng(k)]) r.fail("quotient_lemma_i_range", tag + " arrow " + std::to_string(k));
  }
  std::vector<Rational> cls;
  try {
    cls = invariant_function_descends(dm, mi.t, mi.orbits);
  } catch (const NotInvariant& e) {
    r.fail("quotient_lemma_ii", tag + " " + e.what());
    return r;
  }
  WeightFamily lam = orbit_family(mi.t, mi.orbits);
  std::vector<Rational> mu = descend_measure(mi.m, mi.t, lam);
  std::vector<Rational> mu2 = descend_measure(mi.m2, mi.t, lam);
  for (Index c = 0; c < mu.size(); ++c)
    if (mu[c] / mu2[c] != cls[c]) r.fail("quotient_lemma_iii", tag + " class " + std::to_string(c));

  std::vector<Rational> e = cutoff(lam);
  for (const Rational& v : fiber_integrate(lam, e))
    if (v != 1) r.fail("cutoff", tag);
  for (Index z = 0; z < mi.m.size(); ++z)
    if (mu[mi.orbits.cls[z]] * lam.weight[z] != mi.m[z]) r.fail("disintegration", tag + " point " + std::to_string(z));
  return r;
}

}  // namespace topcorr
