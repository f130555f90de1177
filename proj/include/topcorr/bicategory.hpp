#pragma once

#include <array>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "topcorr/correspondence.hpp"

namespace topcorr {

/// The associator (X∘Y)∘Z -> X∘(Y∘Z) and everything used to build and certify it.
struct Associator {
  CorrIso iso;
  /// [B'/B''] ∘ a''⁻¹ on the points of X∘(Y∘Z); orientation d a_*μ / dμ'.
  RadonNikodym expected;
  std::vector<std::array<Index, 3>> triples;
  GroupoidPtr acting;              // G2 × G3
  TransformationGroupoid t;        // triples ⋊ (G2 × G3)
  Quotient classes;                // X123
  OneCocycle d, d_right, d_modular;
  ZeroCochain b_left, b_right, p;  // B', B'', b12·b23
  std::vector<Index> to_left, to_right;  // class of X123 -> point of (XY)Z, of X(YZ)
  ValidationReport report;
};

struct Unitor {
  CorrIso iso;
  /// Orientation dl_*μ/dλ on the points of X.
  RadonNikodym expected;
};

/// Memoizes composites and coherence isomorphisms so every check reuses the same cochains.
class Bicategory {
 public:
  const Composite& compose(const Correspondence& a, const Correspondence& b) {
    std::string key = a.name() + "|" + b.name();
    auto it = composites_.find(key);
    if (it == composites_.end()) it = composites_.emplace(key, std::make_unique<Composite>(topcorr::compose(a, b))).first;
    return *it->second;
  }

  const Correspondence& identity(const HaarGroupoid& obj) {
    std::string key = "id_" + obj.g().name();
    auto it = identities_.find(key);
    if (it == identities_.end())
      it = identities_.emplace(key, std::make_unique<Correspondence>(identity_correspondence(obj, key))).first;
    return *it->second;
  }

  const Associator& associator(const Correspondence& x, const Correspondence& y, const Correspondence& z);
  const Unitor& left_unitor(const Correspondence& x);
  const Unitor& right_unitor(const Correspondence& x);

 private:
  std::map<std::string, std::unique_ptr<Composite>> composites_;
  std::map<std::string, std::unique_ptr<Correspondence>> identities_;
  std::map<std::string, std::unique_ptr<Associator>> associators_;
  std::map<std::string, std::unique_ptr<Unitor>> unitors_;
};

/// Builds a = a''∘a'⁻¹ through the triple quotient X123 = (X×Y×Z)/(G2×G3).
inline Associator make_associator(const Composite& xy, const Composite& xy_z, const Composite& yz,
                                  const Composite& x_yz) {
  const Correspondence& x = xy.first;
  const Correspondence& y = xy.second;
  const Correspondence& z = yz.second;
  if (!same_correspondence(yz.first, y) || !same_correspondence(x_yz.first, x) ||
      !same_correspondence(xy_z.second, z) || !same_correspondence(xy_z.first, xy.result) ||
      !same_correspondence(x_yz.second, yz.result))
    throw MismatchError("associator: composites do not fit together");
  const Bispace& X = x.space();
  const Bispace& Y = y.space();
  const Bispace& Z = z.space();
  const Groupoid& g2 = y.left().g();
  const Groupoid& g3 = z.left().g();
  Associator A;
  std::vector<Index> lookup(X.size() * Y.size() * Z.size(), npos);
  auto key = [&](Index a, Index b, Index c) { return (a * Y.size() + b) * Z.size() + c; };
  for (Index a = 0; a < X.size(); ++a)
    for (Index b = 0; b < Y.size(); ++b)
      for (Index c = 0; c < Z.size(); ++c)
        if (X.sigma(a) == Y.rho(b) && Y.sigma(b) == Z.rho(c)) {
          lookup[key(a, b, c)] = A.triples.size();
          A.triples.push_back({a, b, c});
        }
  A.acting = std::make_shared<const Groupoid>(product_groupoid(g2, g3));
  const std::size_t n3 = g3.arrow_count(), u3 = g3.unit_count();
  std::vector<Index> moment;
  for (auto& tr : A.triples) moment.push_back(X.sigma(tr[0]) * u3 + Y.sigma(tr[1]));
  auto act = RightAction::generate(A.acting, moment, [&](Index k, Index arrow) {
    auto [a, b, c] = A.triples[k];
    Index gm = arrow / n3, et = arrow % n3;
    Index b2 = Y.right_act(Y.left_act(g2.inv(gm), b), et);
    return lookup[key(X.right_act(a, gm), b2, Z.left_act(g3.inv(et), c))];
  });
  A.t = TransformationGroupoid(act, product_haar(g2, y.left().haar, g3, z.left().haar));
  A.classes = orbit_quotient(act);
  const auto& T = A.t;
  const std::size_t nt = A.triples.size();

  auto p12 = [&](Index a, Index b) { return xy.class_of(a, b); };
  auto p23 = [&](Index b, Index c) { return yz.class_of(b, c); };
  A.b_left.resize(nt);
  A.b_right.resize(nt);
  A.p.resize(nt);
  std::vector<Rational> m(nt);
  for (Index k = 0; k < nt; ++k) {
    auto [a, b, c] = A.triples[k];
    Rational b12 = xy.cochain[xy.fibre.find(a, b)];
    Rational b23 = yz.cochain[yz.fibre.find(b, c)];
    A.b_left[k] = b12 * xy_z.cochain[xy_z.fibre.find(p12(a, b), c)];
    A.b_right[k] = b23 * x_yz.cochain[x_yz.fibre.find(a, p23(b, c))];
    A.p[k] = b12 * b23;
    m[k] = x.lambda(a) * y.lambda(b) * z.lambda(c);
  }

  auto& rep = A.report;
  A.d.resize(T.arrow_count());
  A.d_right.resize(T.arrow_count());
  for (Index k = 0; k < T.arrow_count(); ++k) {
    auto [a, b, c] = A.triples[T.point(k)];
    Index gm = T.group_arrow(k) / n3, et = T.group_arrow(k) % n3;
    // left route: act by gm first, then et
    Index zk = xy.fibre.find(a, b);
    Rational dl = xy.cocycle[xy.middle.find(zk, gm)];
    Index a1 = X.right_act(a, gm), b1 = Y.left_act(g2.inv(gm), b);
    Index zk2 = xy_z.fibre.find(p12(a1, b1), c);
    dl *= xy_z.cocycle[xy_z.middle.find(zk2, et)];
    // right route: act by et first, then gm
    Index wk = yz.fibre.find(b, c);
    Rational dr = yz.cocycle[yz.middle.find(wk, et)];
    Index b2 = Y.right_act(b, et), c2 = Z.left_act(g3.inv(et), c);
    Index wk2 = x_yz.fibre.find(a, p23(b2, c2));
    dr *= x_yz.cocycle[x_yz.middle.find(wk2, gm)];
    A.d[k] = dl;
    A.d_right[k] = dr;
  }
  A.d_modular = modular_cocycle(m, T);
  if (!verify_cocycle(A.d, T).ok()) rep.fail("D_cocycle", "left-route cocycle is not multiplicative");
  for (Index k = 0; k < T.arrow_count(); ++k) {
    if (A.d[k] != A.d_right[k]) rep.fail("D_equals_D_R", "arrow " + std::to_string(k));
    if (A.d[k] != A.d_modular[k]) rep.fail("D_is_modular", "arrow " + std::to_string(k));
  }
  if (d0(A.b_left, T) != A.d) rep.fail("d0_B_left", "B' is not a solution");
  if (d0(A.b_right, T) != A.d) rep.fail("d0_B_right", "B'' is not a solution");
  if (d0(A.p, T) != A.d) rep.fail("d0_P", "b12*b23 is not a solution");

  const std::size_t nc = A.classes.size();
  A.to_left.assign(nc, npos);
  A.to_right.assign(nc, npos);
  for (Index k = 0; k < nt; ++k) {
    auto [a, b, c] = A.triples[k];
    Index l = xy_z.class_of(p12(a, b), c);
    Index r = x_yz.class_of(a, p23(b, c));
    Index cl = A.classes.cls[k];
    if (A.to_left[cl] == npos) A.to_left[cl] = l;
    if (A.to_right[cl] == npos) A.to_right[cl] = r;
    if (A.to_left[cl] != l || A.to_right[cl] != r) rep.fail("class_maps_well_defined", "triple " + std::to_string(k));
  }
  if (nc != xy_z.result.size() || nc != x_yz.result.size())
    throw Error("associator: triple quotient has the wrong size");
  std::vector<Index> left_inv = inverse_map(A.to_left);
  require_bijection(A.to_right, nc);
  std::vector<Index> a(nc);
  for (Index w = 0; w < nc; ++w) a[w] = A.to_right[left_inv[w]];
  A.iso = make_iso(xy_z.result, x_yz.result, a);

  std::vector<Rational> quot = invariant_function_descends(ratio(A.b_left, A.b_right), T, A.classes);
  std::vector<Index> right_inv = inverse_map(A.to_right);
  A.expected.resize(nc);
  for (Index w = 0; w < nc; ++w) A.expected[w] = quot[right_inv[w]];

  // Both routes descend the same triple measure: B'·m gives μ_(12)3, B''·m gives μ_1(23).
  WeightFamily fam = orbit_family(T, A.classes);
  std::vector<Rational> mu_l = descend_measure(product(A.b_left, m), T, fam);
  std::vector<Rational> mu_r = descend_measure(product(A.b_right, m), T, fam);
  for (Index cl = 0; cl < nc; ++cl) {
    if (mu_l[cl] != xy_z.result.lambda(A.to_left[cl])) rep.fail("left_measure_descends", "class " + std::to_string(cl));
    if (mu_r[cl] != x_yz.result.lambda(A.to_right[cl])) rep.fail("right_measure_descends", "class " + std::to_string(cl));
  }
  // Fiber integration in two stages equals integration over X123.
  for (Index k0 = 0; k0 < nt; ++k0) {
    std::vector<Rational> f(nt, Rational(0));
    f[k0] = 1;
    std::vector<Rational> one_stage = fiber_integrate(fam, f);
    std::vector<Rational> stage1(xy_z.fibre.size(), Rational(0));
    for (Index k = 0; k < nt; ++k) {
      auto [aa, bb, cc] = A.triples[k];
      Index zk = xy.fibre.find(aa, bb);
      stage1[xy_z.fibre.find(xy.quotient.cls[zk], cc)] += xy.orbit_weights.weight[zk] * f[k];
    }
    std::vector<Rational> two_stage = fiber_integrate(xy_z.orbit_weights, stage1);
    for (Index cl = 0; cl < nc; ++cl)
      if (two_stage[A.to_left[cl]] != one_stage[cl]) rep.fail("vertical_measures", "dirac " + std::to_string(k0));
  }
  return A;
}

inline Unitor make_left_unitor(const Composite& c) {
  const Correspondence& x = c.second;
  if (!same_correspondence(c.first, identity_correspondence(x.left())))
    throw MismatchError("left unitor: first factor is not the identity correspondence");
  const Bispace& X = x.space();
  const Groupoid& g = x.left().g();
  std::vector<Index> map(c.quotient.size());
  for (Index w = 0; w < map.size(); ++w) {
    auto [gm, p] = c.rep(w);
    map[w] = X.left_act(gm, p);
  }
  Unitor u{make_iso(c.result, x, std::move(map)), {}};
  for (Index p = 0; p < X.size(); ++p) u.expected.push_back(c.cochain[c.fibre.find(g.identity(X.rho(p)), p)]);
  return u;
}

inline Unitor make_right_unitor(const Composite& c) {
  const Correspondence& x = c.first;
  if (!same_correspondence(c.second, identity_correspondence(x.right())))
    throw MismatchError("right unitor: second factor is not the identity correspondence");
  const Bispace& X = x.space();
  const Groupoid& h = x.right().g();
  std::vector<Index> map(c.quotient.size());
  for (Index w = 0; w < map.size(); ++w) {
    auto [p, eta] = c.rep(w);
    map[w] = X.right_act(p, eta);
  }
  std::vector<Rational> cls = invariant_function_descends(c.cochain, c.middle, c.quotient);
  Unitor u{make_iso(c.result, x, std::move(map)), {}};
  for (Index p = 0; p < X.size(); ++p) u.expected.push_back(cls[c.class_of(p, h.identity(X.sigma(p)))]);
  return u;
}

inline const Associator& Bicategory::associator(const Correspondence& x, const Correspondence& y,
                                                const Correspondence& z) {
  std::string key = x.name() + "|" + y.name() + "|" + z.name();
  auto it = associators_.find(key);
  if (it != associators_.end()) return *it->second;
  const Composite& xy = compose(x, y);
  const Composite& yz = compose(y, z);
  const Composite& xy_z = compose(xy.result, z);
  const Composite& x_yz = compose(x, yz.result);
  auto a = std::make_unique<Associator>(make_associator(xy, xy_z, yz, x_yz));
  return *associators_.emplace(key, std::move(a)).first->second;
}

inline const Unitor& Bicategory::left_unitor(const Correspondence& x) {
  std::string key = "l|" + x.name();
  auto it = unitors_.find(key);
  if (it != unitors_.end()) return *it->second;
  const Composite& c = compose(identity(x.left()), x);
  return *unitors_.emplace(key, std::make_unique<Unitor>(make_left_unitor(c))).first->second;
}

inline const Unitor& Bicategory::right_unitor(const Correspondence& x) {
  std::string key = "r|" + x.name();
  auto it = unitors_.find(key);
  if (it != unitors_.end()) return *it->second;
  const Composite& c = compose(x, identity(x.right()));
  return *unitors_.emplace(key, std::make_unique<Unitor>(make_right_unitor(c))).first->second;
}

inline void compare_isos(ValidationReport& r, const std::string& what, const CorrIso& a, const CorrIso& b) {
  if (a.map.size() != b.map.size()) {
    r.fail(what, "different carriers");
    return;
  }
  for (Index p = 0; p < a.map.size(); ++p)
    if (a.map[p] != b.map[p]) {
      r.fail(what, "point " + a.source.space().name(p));
      return;
    }
  if (a.derivative != b.derivative) r.fail(what + "_derivative", "chain-rule derivatives differ");
}

/// Both ways around the pentagon from ((X1 X2) X3) X4 to X1 (X2 (X3 X4)) agree pointwise.
inline ValidationReport check_pentagon(Bicategory& bc, const Correspondence& x1, const Correspondence& x2,
                                       const Correspondence& x3, const Correspondence& x4) {
  const Correspondence& c12 = bc.compose(x1, x2).result;
  const Correspondence& c23 = bc.compose(x2, x3).result;
  const Correspondence& c34 = bc.compose(x3, x4).result;
  const Correspondence& c12_3 = bc.compose(c12, x3).result;
  const Correspondence& c1_23 = bc.compose(x1, c23).result;
  const Correspondence& c23_4 = bc.compose(c23, x4).result;
  const Correspondence& c2_34 = bc.compose(x2, c34).result;

  const CorrIso& a1 = bc.associator(c12, x3, x4).iso;
  const CorrIso& a2 = bc.associator(x1, x2, c34).iso;
  CorrIso top = compose_iso_vertical(a1, a2);

  CorrIso h3 = compose_iso_horizontal(bc.associator(x1, x2, x3).iso, identity_iso(x4), bc.compose(c12_3, x4),
                                      bc.compose(c1_23, x4));
  const CorrIso& a4 = bc.associator(x1, c23, x4).iso;
  CorrIso h5 = compose_iso_horizontal(identity_iso(x1), bc.associator(x2, x3, x4).iso, bc.compose(x1, c23_4),
                                      bc.compose(x1, c2_34));
  CorrIso bottom = compose_iso_vertical(compose_iso_vertical(h3, a4), h5);
  ValidationReport r;
  compare_isos(r, "pentagon", top, bottom);
  return r;
}

/// (S∘I)∘T -> S∘(I∘T) -> S∘T equals r×1 : (S∘I)∘T -> S∘T.
inline ValidationReport check_triangle(Bicategory& bc, const Correspondence& s, const Correspondence& t) {
  const Correspondence& id = bc.identity(s.right());
  const Composite& si = bc.compose(s, id);
  const Composite& it = bc.compose(id, t);
  const CorrIso& a = bc.associator(s, id, t).iso;
  CorrIso h1 = compose_iso_horizontal(identity_iso(s), bc.left_unitor(t).iso, bc.compose(s, it.result),
                                      bc.compose(s, t));
  CorrIso h2 = compose_iso_horizontal(bc.right_unitor(s).iso, identity_iso(t), bc.compose(si.result, t),
                                      bc.compose(s, t));
  ValidationReport r;
  compare_isos(r, "triangle", compose_iso_vertical(a, h1), h2);
  return r;
}

}  // namespace topcorr
