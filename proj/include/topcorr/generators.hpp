#pragma once

#include <memory>
#include <string>
#include <vector>

#include "topcorr/correspondence.hpp"

namespace topcorr {

inline HaarGroupoid make_object(Groupoid g) {
  HaarSystem h = counting_haar(g);
  return HaarGroupoid{std::make_shared<const Groupoid>(std::move(g)), std::move(h)};
}

inline HaarGroupoid make_object(Groupoid g, HaarSystem h) {
  require_haar_shape(g, h);
  return HaarGroupoid{std::make_shared<const Groupoid>(std::move(g)), std::move(h)};
}

/// A space as a groupoid with counting Haar (every fiber is a single unit arrow).
inline HaarGroupoid space_object(const std::vector<std::string>& points, std::string name) {
  return make_object(space_groupoid(points, std::move(name)));
}

/// Quiver X <-b- Z -f-> Y with λ along f, as a correspondence from X to Y.
inline Correspondence from_quiver(const HaarGroupoid& x, const HaarGroupoid& y, std::vector<std::string> edges,
                                  const std::vector<Index>& b, const std::vector<Index>& f,
                                  std::vector<Rational> lambda, std::string name) {
  const std::size_t n = edges.size();
  if (b.size() != n || f.size() != n || lambda.size() != n) throw SchemaError("quiver: map sizes differ from edge count");
  for (Index e = 0; e < n; ++e)
    if (b[e] >= x.g().unit_count() || f[e] >= y.g().unit_count()) throw SchemaError("quiver: map value out of range");
  if (x.g().arrow_count() != x.g().unit_count() || y.g().arrow_count() != y.g().unit_count())
    throw SchemaError("quiver: vertex groupoids must be spaces");
  auto left = LeftAction::generate(x.groupoid, b, [](Index, Index p) { return p; });
  auto right = RightAction::generate(y.groupoid, f, [](Index p, Index) { return p; });
  return Correspondence(std::move(name), x, y, Bispace(std::move(edges), left, right), std::move(lambda));
}

/// f: X -> Y gives the correspondence from X to Y carried by X, with ρ = id, σ = f and the
/// family of point masses along f.
inline Correspondence from_space_map(const HaarGroupoid& x, const HaarGroupoid& y, const std::vector<Index>& f,
                                     std::string name) {
  std::vector<Index> id(x.g().unit_count());
  for (Index i = 0; i < id.size(); ++i) id[i] = i;
  return from_quiver(x, y, x.g().unit_names(), id, f, std::vector<Rational>(id.size(), Rational(1)),
                     std::move(name));
}

/// A homomorphism φ: G -> H of groups gives (H, β⁻¹) with G acting through φ.
inline Correspondence from_group_hom(const HaarGroupoid& g, const HaarGroupoid& h, const std::vector<Index>& phi,
                                     std::string name) {
  const Groupoid& G = g.g();
  const Groupoid& H = h.g();
  if (G.unit_count() != 1 || H.unit_count() != 1) throw SchemaError("group homomorphism: groups expected");
  if (phi.size() != G.arrow_count()) throw SchemaError("group homomorphism: map not total");
  for (Index a = 0; a < G.arrow_count(); ++a) {
    if (phi[a] >= H.arrow_count()) throw SchemaError("group homomorphism: value out of range");
    for (Index b = 0; b < G.arrow_count(); ++b)
      if (phi[G.compose(a, b)] != H.compose(phi[a], phi[b]))
        throw SchemaError("group homomorphism: not multiplicative at " + G.arrow_name(a) + "," + G.arrow_name(b));
  }
  std::vector<Index> zero(H.arrow_count(), 0);
  auto left = LeftAction::generate(g.groupoid, zero, [&](Index a, Index x) { return H.compose(phi[a], x); });
  auto right = RightAction::generate(h.groupoid, zero, [&](Index x, Index b) { return H.compose(x, b); });
  WeightFamily inv = invert_haar(H, h.haar);
  return Correspondence(std::move(name), g, h, Bispace(H.arrow_names(), left, right), inv.weight);
}

/// Z/2 swapping {p,q} over the trivial group, λ = (1, 2).
inline Correspondence swap_example(std::string name = "swap") {
  HaarGroupoid z2 = make_object(cyclic_group(2));
  HaarGroupoid one = make_object(trivial_group());
  auto left = LeftAction::generate(z2.groupoid, {0, 0}, [](Index a, Index p) { return a == 0 ? p : 1 - p; });
  auto right = RightAction::generate(one.groupoid, {0, 0}, [](Index p, Index) { return p; });
  return Correspondence(std::move(name), z2, one, Bispace({"p", "q"}, left, right), {Rational(1), Rational(2)});
}

}  // namespace topcorr
