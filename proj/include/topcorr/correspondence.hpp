#pragma once

#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "topcorr/actions.hpp"
#include "topcorr/cohomology.hpp"
#include "topcorr/measures.hpp"

namespace topcorr {

/// A topological correspondence (X, λ) from (G, α) to (H, β) on finite data. λ is stored one weight
/// per point; the fiber of a point is sigma(point). The adjoining function is the closed form and is
/// certified by validate_correspondence.
class Correspondence {
 public:
  Correspondence() = default;
  Correspondence(std::string name, HaarGroupoid left, HaarGroupoid right, Bispace space,
                 std::vector<Rational> lambda)
      : name_(std::move(name)),
        left_(std::move(left)),
        right_(std::move(right)),
        space_(std::move(space)),
        lambda_(std::move(lambda)) {
    if (!(space_.left_groupoid() == left_.g()) || !(space_.right_groupoid() == right_.g()))
      throw MismatchError("correspondence " + name_ + ": bispace groupoids differ from declared objects");
    require_haar_shape(left_.g(), left_.haar);
    require_haar_shape(right_.g(), right_.haar);
    if (lambda_.size() != space_.size())
      throw SchemaError("correspondence " + name_ + ": weight family does not cover every point");
    for (Index p = 0; p < lambda_.size(); ++p)
      if (lambda_[p] <= 0) throw SchemaError("correspondence " + name_ + ": non-positive weight at " + space_.name(p));
    delta_ = modular_closed_form(family(), space_.left(), left_.haar);
  }

  const std::string& name() const { return name_; }
  const HaarGroupoid& left() const { return left_; }
  const HaarGroupoid& right() const { return right_; }
  const Bispace& space() const { return space_; }
  std::size_t size() const { return space_.size(); }
  const std::vector<Rational>& lambda() const { return lambda_; }
  const Rational& lambda(Index p) const { return lambda_[p]; }
  const ArrowPointFunction& delta() const { return delta_; }
  const Rational& delta(Index a, Index p) const { return delta_(a, p); }

  /// λ as a family along sigma.
  WeightFamily family() const {
    return WeightFamily{space_.right().moments(), right_.g().unit_count(), lambda_};
  }

  Correspondence renamed(std::string n) const {
    Correspondence c = *this;
    c.name_ = std::move(n);
    return c;
  }

 private:
  std::string name_;
  HaarGroupoid left_, right_;
  Bispace space_;
  std::vector<Rational> lambda_;
  ArrowPointFunction delta_;
};

/// Same objects, same points, same momenta and actions, same weights. Names are ignored.
inline bool same_correspondence(const Correspondence& a, const Correspondence& b) {
  if (!same_object(a.left(), b.left()) || !same_object(a.right(), b.right())) return false;
  if (a.size() != b.size() || a.lambda() != b.lambda()) return false;
  const Bispace& x = a.space();
  const Bispace& y = b.space();
  const Groupoid& g = a.left().g();
  const Groupoid& h = a.right().g();
  for (Index p = 0; p < x.size(); ++p) {
    if (x.rho(p) != y.rho(p) || x.sigma(p) != y.sigma(p)) return false;
    for (Index c = 0; c < g.arrow_count(); ++c)
      if (x.left_act(c, p) != y.left_act(c, p)) return false;
    for (Index c = 0; c < h.arrow_count(); ++c)
      if (x.right_act(p, c) != y.right_act(p, c)) return false;
  }
  return true;
}

inline ValidationReport validate_correspondence(const Correspondence& c) {
  ValidationReport r;
  r.merge(validate_groupoid(c.left().g()), "left_groupoid");
  r.merge(validate_groupoid(c.right().g()), "right_groupoid");
  if (!r.ok()) return r;
  r.merge(validate_haar(c.left().g(), c.left().haar), "left_haar");
  r.merge(validate_haar(c.right().g(), c.right().haar), "right_haar");
  r.merge(validate_bispace(c.space()), "bispace");
  if (!r.ok()) return r;
  r.merge(check_invariance(c.family(), c.space().right(), c.space().names()), "lambda");
  try {
    ArrowPointFunction d = quasi_invariance_modular(c.family(), c.space().left(), c.left().haar);
    if (d != c.delta()) r.fail("delta_cache", c.name());
  } catch (const NotQuasiInvariant& e) {
    r.fail("quasi_invariance", e.what());
  }
  const Groupoid& g = c.left().g();
  const Groupoid& h = c.right().g();
  const Bispace& x = c.space();
  for (Index a = 0; a < g.arrow_count(); ++a)
    for (Index p = 0; p < x.size(); ++p) {
      if (g.src(a) != x.rho(p)) continue;
      for (Index b : h.range_fiber(x.sigma(p)))
        if (c.delta(a, x.right_act(p, b)) != c.delta(a, p))
          r.fail("delta_right_invariant", g.arrow_name(a) + "," + x.name(p) + "," + h.arrow_name(b));
    }
  return r;
}

/// (G, α⁻¹): G acting on itself by multiplication on both sides.
inline Correspondence identity_correspondence(const HaarGroupoid& obj, std::string name = {}) {
  const Groupoid& g = obj.g();
  if (name.empty()) name = "id_" + g.name();
  std::vector<Index> rng, src;
  for (Index a = 0; a < g.arrow_count(); ++a) {
    rng.push_back(g.rng(a));
    src.push_back(g.src(a));
  }
  auto left = LeftAction::generate(obj.groupoid, rng, [&](Index a, Index x) { return g.compose(a, x); });
  auto right = RightAction::generate(obj.groupoid, src, [&](Index x, Index b) { return g.compose(x, b); });
  WeightFamily inv = invert_haar(g, obj.haar);
  return Correspondence(std::move(name), obj, obj, Bispace(g.arrow_names(), left, right), inv.weight);
}

/// X∘Y together with every intermediate object of its construction.
struct Composite {
  Correspondence first, second;
  FibreProduct fibre;              // Z = X ×_{H0} Y
  TransformationGroupoid middle;   // Z ⋊ H, diagonal action
  std::vector<Rational> mass;      // m(x,y) = λ(x) τ(y)
  OneCocycle cocycle;              // D((x,y), h) = Δ_Y(h⁻¹, y)
  ZeroCochain cochain;             // b with d⁰(b) = D
  WeightFamily orbit_weights;      // λ^ω along Z -> Ω
  std::vector<Rational> cut;       // e
  Quotient quotient;               // Ω = Z / H
  Correspondence result;

  /// Ω point of the pair (x, y).
  Index class_of(Index x, Index y) const { return quotient.cls[fibre.find(x, y)]; }
  std::pair<Index, Index> rep(Index w) const { return fibre.pairs[quotient.rep(w)]; }
};

/// D((x,y),h) = Δ_Y(h⁻¹, y) on the arrows of Z ⋊ H.
inline OneCocycle composition_cocycle(const Correspondence& y, const FibreProduct& z,
                                      const TransformationGroupoid& t) {
  const Groupoid& h = t.acting();
  OneCocycle d(t.arrow_count());
  for (Index k = 0; k < t.arrow_count(); ++k) {
    Index q = z.pairs[t.point(k)].second;
    d[k] = y.delta(h.inv(t.group_arrow(k)), q);
  }
  return d;
}

inline Composite compose(const Correspondence& x, const Correspondence& y,
                         const std::optional<ZeroCochain>& cochain = std::nullopt, std::string name = {}) {
  if (!same_object(x.right(), y.left()))
    throw MismatchError("compose: " + x.name() + " and " + y.name() + " do not share the middle groupoid");
  if (name.empty()) name = "(" + x.name() + "." + y.name() + ")";
  Composite c{x, y, fibre_product(x.space(), y.space()), {}, {}, {}, {}, {}, {}, {}, {}};
  const FibreProduct& z = c.fibre;
  c.middle = TransformationGroupoid(z.diagonal, x.right().haar);
  c.cocycle = composition_cocycle(y, z, c.middle);
  RightAction left_as_right = as_right(z.outer_left);
  if (cochain) {
    if (cochain->size() != z.size()) throw MismatchError("compose: cochain does not cover the fibre product");
    for (const Rational& v : *cochain)
      if (v <= 0) throw MismatchError("compose: cochain must be strictly positive");
    if (d0(*cochain, c.middle) != c.cocycle)
      throw MismatchError("compose: supplied cochain has the wrong coboundary");
    for (Index k = 0; k < z.size(); ++k)
      for (Index a : z.outer_right.groupoid().range_fiber(z.outer_right.moment(k)))
        if ((*cochain)[z.outer_right.act(k, a)] != (*cochain)[k])
          throw MismatchError("compose: supplied cochain is not invariant under " + y.right().g().name());
    c.cochain = *cochain;
  } else {
    c.cochain = solve_coboundary(c.cocycle, c.middle, {&z.outer_right, &left_as_right});
  }
  c.mass.resize(z.size());
  for (Index k = 0; k < z.size(); ++k) c.mass[k] = x.lambda(z.pairs[k].first) * y.lambda(z.pairs[k].second);
  c.quotient = orbit_quotient(z.diagonal);
  c.orbit_weights = orbit_family(c.middle, c.quotient);
  c.cut = cutoff(c.orbit_weights);
  std::vector<Rational> mu = descend_measure(product(c.cochain, c.mass), c.middle, c.orbit_weights);

  const Quotient& q = c.quotient;
  std::vector<std::string> names;
  std::vector<Index> rho, sigma;
  for (Index w = 0; w < q.size(); ++w) {
    auto [p, r] = z.pairs[q.rep(w)];
    names.push_back("[" + x.space().name(p) + "," + y.space().name(r) + "]");
    rho.push_back(x.space().rho(p));
    sigma.push_back(y.space().sigma(r));
  }
  auto left = LeftAction::generate(x.left().groupoid, rho, [&](Index a, Index w) {
    return q.cls[z.outer_left.act(a, q.rep(w))];
  });
  auto right = RightAction::generate(y.right().groupoid, sigma, [&](Index w, Index b) {
    return q.cls[z.outer_right.act(q.rep(w), b)];
  });
  c.result = Correspondence(std::move(name), x.left(), y.right(), Bispace(names, left, right), mu);
  return c;
}

/// Δ(η,[x,y]) = b(ηx,y)⁻¹ Δ_X(η,x) b(x,y), evaluated at every representative; throws if it
/// depends on the representative.
inline ArrowPointFunction composite_delta_formula(const Composite& c) {
  const Groupoid& g = c.first.left().g();
  const FibreProduct& z = c.fibre;
  ArrowPointFunction d{c.quotient.size(),
                       std::vector<Rational>(g.arrow_count() * c.quotient.size(), Rational(0))};
  std::vector<bool> seen(d.value.size(), false);
  for (Index k = 0; k < z.size(); ++k) {
    auto [x, y] = z.pairs[k];
    Index w = c.quotient.cls[k];
    for (Index a : g.source_fiber(c.first.space().rho(x))) {
      Index moved = z.outer_left.act(a, k);
      Rational v = c.first.delta(a, x) * c.cochain[k] / c.cochain[moved];
      if (seen[a * d.points + w] && d(a, w) != v)
        throw Error("composite adjoining formula depends on the representative");
      d.at(a, w) = v;
      seen[a * d.points + w] = true;
    }
  }
  return d;
}

// ---- isomorphisms -----------------------------------------------------------

/// A 2-arrow t: X -> X'. derivative is M = dτ/dt_*(λ) on the points of the target.
struct CorrIso {
  Correspondence source, target;
  std::vector<Index> map;
  RadonNikodym derivative;

  /// dt_*(λ)/dτ = 1/M
  RadonNikodym pushforward_derivative() const {
    RadonNikodym r(derivative.size());
    for (Index i = 0; i < r.size(); ++i) r[i] = 1 / derivative[i];
    return r;
  }
};

inline ValidationReport check_iso_map(const Correspondence& s, const Correspondence& t,
                                      const std::vector<Index>& map) {
  ValidationReport r;
  if (!same_object(s.left(), t.left()) || !same_object(s.right(), t.right())) {
    r.fail("parallel", s.name() + " vs " + t.name());
    return r;
  }
  if (map.size() != s.size() || s.size() != t.size()) {
    r.fail("bijective", "size mismatch");
    return r;
  }
  std::vector<bool> hit(t.size(), false);
  for (Index p = 0; p < map.size(); ++p) {
    if (map[p] >= t.size() || hit[map[p]]) {
      r.fail("bijective", s.space().name(p));
      return r;
    }
    hit[map[p]] = true;
  }
  const Bispace& x = s.space();
  const Bispace& y = t.space();
  const Groupoid& g = s.left().g();
  const Groupoid& h = s.right().g();
  for (Index p = 0; p < x.size(); ++p) {
    Index q = map[p];
    if (x.rho(p) != y.rho(q) || x.sigma(p) != y.sigma(q)) r.fail("momenta", x.name(p));
    for (Index a : g.source_fiber(x.rho(p)))
      if (map[x.left_act(a, p)] != y.left_act(a, q)) r.fail("left_equivariance", g.arrow_name(a) + "." + x.name(p));
    for (Index b : h.range_fiber(x.sigma(p)))
      if (map[x.right_act(p, b)] != y.right_act(q, b)) r.fail("right_equivariance", x.name(p) + "." + h.arrow_name(b));
  }
  return r;
}

/// M = dτ/dt_*(λ) computed directly from the weights.
inline RadonNikodym iso_derivative(const Correspondence& s, const Correspondence& t,
                                   const std::vector<Index>& map) {
  WeightFamily pushed = pushforward(map, s.family(), t.family().target);
  return equivalence(t.family(), pushed);
}

inline CorrIso make_iso(const Correspondence& s, const Correspondence& t, std::vector<Index> map) {
  ValidationReport r = check_iso_map(s, t, map);
  if (!r.ok()) throw MismatchError("not an isomorphism " + s.name() + " -> " + t.name() + ": " + r.summary());
  RadonNikodym m = iso_derivative(s, t, map);
  return CorrIso{s, t, std::move(map), std::move(m)};
}

inline ValidationReport validate_iso(const CorrIso& iso) {
  ValidationReport r = check_iso_map(iso.source, iso.target, iso.map);
  if (!r.ok()) return r;
  if (iso_derivative(iso.source, iso.target, iso.map) != iso.derivative) r.fail("derivative", "stored M differs");
  const Bispace& y = iso.target.space();
  const Groupoid& g = iso.source.left().g();
  const Groupoid& h = iso.source.right().g();
  const auto& m = iso.derivative;
  for (Index q = 0; q < y.size(); ++q)
    for (Index b : h.range_fiber(y.sigma(q)))
      if (m[y.right_act(q, b)] != m[q]) r.fail("derivative_invariant", y.name(q) + "." + h.arrow_name(b));
  const Bispace& x = iso.source.space();
  for (Index p = 0; p < x.size(); ++p)
    for (Index a : g.source_fiber(x.rho(p))) {
      Index tp = iso.map[p];
      Index tap = iso.map[x.left_act(a, p)];
      if (iso.source.delta(a, p) != m[tap] / m[tp] * iso.target.delta(a, tp))
        r.fail("adjoining_transport", g.arrow_name(a) + "," + x.name(p));
    }
  return r;
}

inline CorrIso identity_iso(const Correspondence& c) {
  std::vector<Index> id(c.size());
  for (Index i = 0; i < id.size(); ++i) id[i] = i;
  return make_iso(c, c, std::move(id));
}

inline CorrIso inverse_iso(const CorrIso& t) { return make_iso(t.target, t.source, inverse_map(t.map)); }

/// t∘s, with the derivative assembled by the chain rule M_{ts} = M_t · (M_s∘t⁻¹).
inline CorrIso compose_iso_vertical(const CorrIso& s, const CorrIso& t) {
  if (!same_correspondence(s.target, t.source))
    throw MismatchError("vertical composition: codomain of first differs from domain of second");
  std::vector<Index> map(s.map.size());
  for (Index p = 0; p < map.size(); ++p) map[p] = t.map[s.map[p]];
  std::vector<Index> tinv = inverse_map(t.map);
  RadonNikodym m(map.size());
  for (Index q = 0; q < m.size(); ++q) m[q] = t.derivative[q] * s.derivative[tinv[q]];
  return CorrIso{s.source, t.target, std::move(map), std::move(m)};
}

/// [φ×ψ]: from.result -> to.result, [x,y] ↦ [φx, ψy].
inline CorrIso compose_iso_horizontal(const CorrIso& phi, const CorrIso& psi, const Composite& from,
                                      const Composite& to) {
  if (!same_correspondence(phi.source, from.first) || !same_correspondence(psi.source, from.second) ||
      !same_correspondence(phi.target, to.first) || !same_correspondence(psi.target, to.second))
    throw MismatchError("horizontal composition: isomorphisms do not match the composites");
  std::vector<Index> map(from.quotient.size());
  for (Index w = 0; w < map.size(); ++w) {
    auto [x, y] = from.rep(w);
    map[w] = to.class_of(phi.map[x], psi.map[y]);
  }
  return make_iso(from.result, to.result, std::move(map));
}

/// Descended (dφ_*λ/dκ)(dψ_*λ'/dκ')(b₁/b₂) on the points of to.result.
inline RadonNikodym horizontal_derivative_formula(const CorrIso& phi, const CorrIso& psi, const Composite& from,
                                                  const Composite& to) {
  auto pf = phi.pushforward_derivative();
  auto ps = psi.pushforward_derivative();
  std::vector<Index> phinv = inverse_map(phi.map), psinv = inverse_map(psi.map);
  std::vector<Rational> fn(to.fibre.size());
  for (Index k = 0; k < to.fibre.size(); ++k) {
    auto [y, y2] = to.fibre.pairs[k];
    Index src = from.fibre.find(phinv[y], psinv[y2]);
    fn[k] = pf[y] * ps[y2] * from.cochain[src] / to.cochain[k];
  }
  return invariant_function_descends(fn, to.middle, to.quotient);
}

/// Search over equivariant bijections; candidates for a point keep its momenta, the orbit of each
/// choice is propagated before branching again. The identity is tried first.
inline std::optional<CorrIso> find_iso(const Correspondence& s, const Correspondence& t) {
  if (!same_object(s.left(), t.left()) || !same_object(s.right(), t.right())) return std::nullopt;
  if (s.size() != t.size()) return std::nullopt;
  const Bispace& x = s.space();
  const Bispace& y = t.space();
  const Groupoid& g = s.left().g();
  const Groupoid& h = s.right().g();
  const std::size_t n = x.size();
  std::vector<Index> map(n, npos), back(n, npos);

  auto assign = [&](Index p, Index q, std::vector<Index>& trail) -> bool {
    std::vector<std::pair<Index, Index>> stack{{p, q}};
    while (!stack.empty()) {
      auto [a, b] = stack.back();
      stack.pop_back();
      if (map[a] != npos) {
        if (map[a] != b) return false;
        continue;
      }
      if (back[b] != npos) return false;
      if (x.rho(a) != y.rho(b) || x.sigma(a) != y.sigma(b)) return false;
      map[a] = b;
      back[b] = a;
      trail.push_back(a);
      for (Index c : g.source_fiber(x.rho(a))) stack.emplace_back(x.left_act(c, a), y.left_act(c, b));
      for (Index c : h.range_fiber(x.sigma(a))) stack.emplace_back(x.right_act(a, c), y.right_act(b, c));
    }
    return true;
  };
  auto undo = [&](std::vector<Index>& trail) {
    for (Index a : trail) {
      back[map[a]] = npos;
      map[a] = npos;
    }
    trail.clear();
  };
  std::function<bool()> search = [&]() -> bool {
    Index p = 0;
    while (p < n && map[p] != npos) ++p;
    if (p == n) return true;
    std::vector<Index> order;
    if (back[p] == npos) order.push_back(p);
    for (Index q = 0; q < n; ++q)
      if (q != p && back[q] == npos) order.push_back(q);
    for (Index q : order) {
      std::vector<Index> trail;
      if (assign(p, q, trail) && search()) return true;
      undo(trail);
    }
    return false;
  };
  if (!search()) return std::nullopt;
  return make_iso(s, t, map);
}

}  // namespace topcorr
