#pragma once

#include <string>
#include <vector>

#include "topcorr/actions.hpp"
#include "topcorr/weight_family.hpp"

namespace topcorr {

/// Pointwise positive function; the derivative of one family with respect to another.
using RadonNikodym = std::vector<Rational>;

/// Function on G⋉X, stored densely over (arrow, point) and meaningful where src(arrow) == rho(point).
struct ArrowPointFunction {
  std::size_t points = 0;
  std::vector<Rational> value;

  const Rational& operator()(Index a, Index p) const { return value[a * points + p]; }
  Rational& at(Index a, Index p) { return value[a * points + p]; }
  bool operator==(const ArrowPointFunction&) const = default;
};

inline void require_bijection(const std::vector<Index>& f, std::size_t n) {
  if (f.size() != n) throw MismatchError("map is not total on its carrier");
  std::vector<bool> hit(n, false);
  for (Index v : f) {
    if (v >= n || hit[v]) throw MismatchError("map is not a bijection");
    hit[v] = true;
  }
}

inline std::vector<Index> inverse_map(const std::vector<Index>& f) {
  std::vector<Index> inv(f.size(), npos);
  for (Index i = 0; i < f.size(); ++i) inv[f[i]] = i;
  return inv;
}

/// f_*(w) for a bijection f of carriers; the new family lives on target π₁∘f⁻¹.
inline WeightFamily pushforward(const std::vector<Index>& f, const WeightFamily& w) {
  require_bijection(f, w.size());
  WeightFamily out;
  out.base_size = w.base_size;
  out.target.assign(w.size(), npos);
  out.weight.assign(w.size(), Rational(0));
  for (Index x = 0; x < w.size(); ++x) {
    out.target[f[x]] = w.target[x];
    out.weight[f[x]] = w.weight[x];
  }
  return out;
}

/// Same, insisting that f commutes with the given target map on the codomain.
inline WeightFamily pushforward(const std::vector<Index>& f, const WeightFamily& w,
                                const std::vector<Index>& codomain_target) {
  WeightFamily out = pushforward(f, w);
  if (out.target != codomain_target) throw MismatchError("pushforward: map does not commute with targets");
  return out;
}

/// dw1/dw2.
inline RadonNikodym equivalence(const WeightFamily& w1, const WeightFamily& w2) {
  if (w1.target != w2.target || w1.base_size != w2.base_size)
    throw MismatchError("equivalence: families live on different target maps");
  RadonNikodym r(w1.size());
  for (Index p = 0; p < w1.size(); ++p) {
    if (w2.weight[p] == 0) throw MismatchError("equivalence: zero weight");
    r[p] = w1.weight[p] / w2.weight[p];
  }
  return r;
}

inline std::vector<Rational> ratio(const std::vector<Rational>& a, const std::vector<Rational>& b) {
  if (a.size() != b.size()) throw MismatchError("ratio: size mismatch");
  std::vector<Rational> r(a.size());
  for (Index i = 0; i < a.size(); ++i) r[i] = a[i] / b[i];
  return r;
}

inline std::vector<Rational> product(const std::vector<Rational>& a, const std::vector<Rational>& b) {
  if (a.size() != b.size()) throw MismatchError("product: size mismatch");
  std::vector<Rational> r(a.size());
  for (Index i = 0; i < a.size(); ++i) r[i] = a[i] * b[i];
  return r;
}

/// Invariance of a family along the moment of a right action: w(x·h) == w(x).
inline ValidationReport check_invariance(const WeightFamily& w, const RightAction& act,
                                         const std::vector<std::string>& names = {}) {
  ValidationReport r;
  if (w.target != act.moments()) {
    r.fail("family_along_moment", "target map differs from the action moment");
    return r;
  }
  const Groupoid& h = act.groupoid();
  auto nm = [&](Index p) { return names.empty() ? std::to_string(p) : names[p]; };
  for (Index x = 0; x < act.size(); ++x)
    for (Index a : h.range_fiber(act.moment(x))) {
      Index y = act.act(x, a);
      if (w.weight[y] != w.weight[x]) r.fail("invariance", nm(x) + "." + h.arrow_name(a));
    }
  return r;
}

/// Closed form of the adjoining function:
/// Δ(γ, y) = α(γ⁻¹) λ(y) / (α(γ) λ(γy)).
inline ArrowPointFunction modular_closed_form(const WeightFamily& w, const LeftAction& left,
                                              const HaarSystem& haar) {
  const Groupoid& g = left.groupoid();
  ArrowPointFunction d{left.size(), std::vector<Rational>(g.arrow_count() * left.size(), Rational(0))};
  for (Index a = 0; a < g.arrow_count(); ++a)
    for (Index y = 0; y < left.size(); ++y) {
      Index gy = left.act(a, y);
      if (gy == npos) continue;
      d.at(a, y) = haar.weight[g.inv(a)] * w.weight[y] / (haar.weight[a] * w.weight[gy]);
    }
  return d;
}

/// Both sides of the quasi-invariance identity for a test function F on G ×_{G0} X at base point u:
///   Σ_x λ_u(x) Σ_{γ∈G^{ρ(x)}} α(γ) F(γ⁻¹, x)   and   Σ_x λ_u(x) Σ_γ α(γ) F(γ, γ⁻¹x) Δ(γ, γ⁻¹x).
template <class F>
std::pair<Rational, Rational> integral_identity_sides(const WeightFamily& w, const LeftAction& left,
                                                      const HaarSystem& haar,
                                                      const ArrowPointFunction& delta, Index u,
                                                      F&& test) {
  const Groupoid& g = left.groupoid();
  Rational lhs = 0, rhs = 0;
  for (Index x = 0; x < left.size(); ++x) {
    if (w.target[x] != u) continue;
    for (Index a : g.range_fiber(left.moment(x))) {
      Index ai = g.inv(a);
      lhs += w.weight[x] * haar.weight[a] * Rational(test(ai, x));
      Index y = left.act(ai, x);
      rhs += w.weight[x] * haar.weight[a] * Rational(test(a, y)) * delta(a, y);
    }
  }
  return {lhs, rhs};
}

/// Δ read off the defining identity, one Dirac test function at a time. For F = δ_(γ,y) the
/// right side is a single multiple of Δ(γ, y), so this is an independent derivation.
inline ArrowPointFunction modular_from_identity(const WeightFamily& w, const LeftAction& left,
                                                const HaarSystem& haar) {
  const Groupoid& g = left.groupoid();
  ArrowPointFunction ones{left.size(), std::vector<Rational>(g.arrow_count() * left.size(), Rational(1))};
  ArrowPointFunction d{left.size(), std::vector<Rational>(g.arrow_count() * left.size(), Rational(0))};
  for (Index a = 0; a < g.arrow_count(); ++a)
    for (Index y = 0; y < left.size(); ++y) {
      if (g.src(a) != left.moment(y)) continue;
      auto dirac = [&](Index b, Index x) { return (b == a && x == y) ? 1 : 0; };
      std::optional<Rational> found;
      for (Index u = 0; u < w.base_size; ++u) {
        auto [lhs, coeff] = integral_identity_sides(w, left, haar, ones, u, dirac);
        if (coeff == 0) {
          if (lhs != 0)
            throw NotQuasiInvariant("no adjoining value at (" + g.arrow_name(a) + "," + std::to_string(y) + ")");
          continue;
        }
        Rational v = lhs / coeff;
        if (found && *found != v)
          throw NotQuasiInvariant("adjoining value differs across fibers at (" + g.arrow_name(a) + "," +
                                  std::to_string(y) + ")");
        found = v;
      }
      if (!found) throw NotQuasiInvariant("adjoining value undetermined at (" + g.arrow_name(a) + ")");
      d.at(a, y) = *found;
    }
  return d;
}

/// Closed form certified against the integral identity over every Dirac test function.
inline ArrowPointFunction quasi_invariance_modular(const WeightFamily& w, const LeftAction& left,
                                                   const HaarSystem& haar) {
  require_well_formed(w);
  ArrowPointFunction closed = modular_closed_form(w, left, haar);
  ArrowPointFunction certified = modular_from_identity(w, left, haar);
  const Groupoid& g = left.groupoid();
  for (Index a = 0; a < g.arrow_count(); ++a)
    for (Index y = 0; y < left.size(); ++y)
      if (closed(a, y) != certified(a, y))
        throw NotQuasiInvariant("closed form disagrees with the integral identity at (" +
                                g.arrow_name(a) + "," + std::to_string(y) + ")");
  return closed;
}

inline std::vector<Rational> fiber_integrate(const WeightFamily& w, const std::vector<Rational>& f) {
  std::vector<Rational> out(w.base_size, Rational(0));
  for (Index p = 0; p < w.size(); ++p) out[w.target[p]] += f[p] * w.weight[p];
  return out;
}

/// e(z) = 1 / mass of the fiber through z.
inline std::vector<Rational> cutoff(const WeightFamily& w) {
  std::vector<Rational> mass(w.base_size, Rational(0));
  for (Index p = 0; p < w.size(); ++p) mass[w.target[p]] += w.weight[p];
  std::vector<Rational> e(w.size());
  for (Index p = 0; p < w.size(); ++p) e[p] = 1 / mass[w.target[p]];
  return e;
}

/// The family λ^ω along Z -> Z/G: the weight of z' is Σ α(γ) over γ ∈ G^{moment(rep)} with rep·γ = z'.
inline WeightFamily orbit_family(const TransformationGroupoid& t, const Quotient& q) {
  WeightFamily w;
  w.base_size = q.size();
  w.target = q.cls;
  w.weight.assign(t.unit_count(), Rational(0));
  for (Index c = 0; c < q.size(); ++c) {
    auto [b, e] = t.arrows_at(q.rep(c));
    for (Index k = b; k < e; ++k) w.weight[t.src(k)] += t.haar(k);
  }
  return w;
}

/// m(r(k)) χ(k) / (m(s(k)) χ(k⁻¹)); equal to 1 everywhere iff m is invariant.
inline std::vector<Rational> modular_cocycle(const std::vector<Rational>& m, const TransformationGroupoid& t) {
  std::vector<Rational> d(t.arrow_count());
  for (Index k = 0; k < t.arrow_count(); ++k)
    d[k] = m[t.rng(k)] * t.haar(k) / (m[t.src(k)] * t.haar(t.inverse(k)));
  return d;
}

inline ValidationReport check_measure_invariance(const std::vector<Rational>& m, const TransformationGroupoid& t) {
  ValidationReport r;
  for (Index k = 0; k < t.arrow_count(); ++k)
    if (m[t.rng(k)] * t.haar(k) != m[t.src(k)] * t.haar(t.inverse(k)))
      r.fail("invariance", "arrow " + std::to_string(k));
  return r;
}

/// (m∘χ)(k) = m(r(k)) χ(k)
inline std::vector<Rational> measure_along_haar(const std::vector<Rational>& m, const TransformationGroupoid& t) {
  std::vector<Rational> out(t.arrow_count());
  for (Index k = 0; k < t.arrow_count(); ++k) out[k] = m[t.rng(k)] * t.haar(k);
  return out;
}

/// (m∘χ⁻¹)(k) = m(s(k)) χ(k⁻¹)
inline std::vector<Rational> measure_along_inverse_haar(const std::vector<Rational>& m,
                                                        const TransformationGroupoid& t) {
  std::vector<Rational> out(t.arrow_count());
  for (Index k = 0; k < t.arrow_count(); ++k) out[k] = m[t.src(k)] * t.haar(t.inverse(k));
  return out;
}

/// μ(ω) = Σ_{z∈ω} m(z) e(z) for an invariant m; certified against μ∘(fiber integration) = m.
inline std::vector<Rational> descend_measure(const std::vector<Rational>& m, const TransformationGroupoid& t,
                                             const WeightFamily& family) {
  for (Index k = 0; k < t.arrow_count(); ++k)
    if (m[t.rng(k)] * t.haar(k) != m[t.src(k)] * t.haar(t.inverse(k)))
      throw NotInvariant("measure not invariant along arrow " + std::to_string(k));
  std::vector<Rational> e = cutoff(family);
  std::vector<Rational> mu(family.base_size, Rational(0));
  for (Index z = 0; z < m.size(); ++z) mu[family.target[z]] += m[z] * e[z];
  for (Index z = 0; z < m.size(); ++z)
    if (mu[family.target[z]] * family.weight[z] != m[z])
      throw Error("disintegration identity fails at point " + std::to_string(z));
  return mu;
}

/// [fn] on the quotient when fn is constant along every arrow; throws NotInvariant otherwise.
inline std::vector<Rational> invariant_function_descends(const std::vector<Rational>& fn,
                                                         const TransformationGroupoid& t, const Quotient& q) {
  for (Index k = 0; k < t.arrow_count(); ++k)
    if (fn[t.src(k)] != fn[t.rng(k)])
      throw NotInvariant("function is not orbit-constant along arrow " + std::to_string(k));
  std::vector<Rational> out(q.size());
  for (Index c = 0; c < q.size(); ++c) out[c] = fn[q.rep(c)];
  return out;
}

}  // namespace topcorr
