#include <gtest/gtest.h>

#include "oracle.hpp"
#include "topcorr/bicategory.hpp"
#include "topcorr/catalog.hpp"

using namespace topcorr;

namespace {

std::vector<std::string> positive_generators() {
  std::vector<std::string> out;
  for (const auto& [name, make] : catalog::generators())
    if (name != "broken-haar") out.push_back(name);
  return out;
}

/// λ^ω(z) summed directly over the arrows of the middle groupoid leaving the first point of z's orbit.
std::vector<Rational> orbit_weights_by_hand(const Composite& c) {
  const FibreProduct& z = c.fibre;
  const Groupoid& h = c.first.right().g();
  std::vector<Rational> out(z.size(), Rational(0));
  for (Index k = 0; k < z.size(); ++k) {
    Index first = k;
    for (Index j = 0; j < z.size(); ++j)
      if (c.quotient.cls[j] == c.quotient.cls[k]) {
        first = j;
        break;
      }
    for (Index a = 0; a < h.arrow_count(); ++a)
      if (h.rng(a) == z.diagonal.moment(first) && z.diagonal.act(first, a) == k) out[k] += c.first.right().alpha(a);
  }
  return out;
}

/// Composite whose second factor has a middle-invariant cochain scaled by its joint orbit index.
ZeroCochain scaled_cochain(const Composite& c) {
  Quotient q = joint_orbits(c.fibre.size(), {&c.fibre.diagonal, &c.fibre.outer_right});
  ZeroCochain b(c.cochain.size());
  for (Index k = 0; k < b.size(); ++k) b[k] = c.cochain[k] * Rational(static_cast<long long>(2 * q.cls[k] + 3), 2);
  return b;
}

}  // namespace

TEST(Correspondence, EveryGeneratorValidates) {
  for (const auto& name : positive_generators()) {
    io::Instance inst = catalog::gen(name);
    for (const Correspondence& c : inst.all_correspondences())
      EXPECT_TRUE(validate_correspondence(c).ok()) << name << " " << c.name() << ": "
                                                   << validate_correspondence(c).summary();
  }
}

TEST(Correspondence, GroupHomRequiresMultiplicativeMap) {
  HaarGroupoid z4 = make_object(cyclic_group(4)), z2 = make_object(cyclic_group(2));
  EXPECT_NO_THROW(from_group_hom(z4, z2, {0, 1, 0, 1}, "mod2"));
  EXPECT_THROW(from_group_hom(z4, z2, {0, 1, 1, 0}, "bad"), SchemaError);
}

TEST(Correspondence, QuiverIsValidForAnyPositiveWeights) {
  HaarGroupoid u = space_object({"u1", "u2"}, "U");
  Correspondence q = from_quiver(u, u, {"l", "m"}, {0, 0}, {0, 1}, {Rational(9), Rational(1, 9)}, "loop");
  EXPECT_TRUE(validate_correspondence(q).ok());
  for (const Rational& v : q.delta().value) EXPECT_TRUE(v == 0 || v == 1);
  EXPECT_THROW(from_quiver(u, u, {"l"}, {0}, {2}, {Rational(1)}, "bad"), SchemaError);
}

TEST(Composition, EveryBundledPairValidates) {
  for (const auto& name : positive_generators()) {
    io::Instance inst = catalog::gen(name);
    for (const auto& chain : inst.chains)
      for (std::size_t i = 0; i + 1 < chain.size(); ++i) {
        Composite c = compose(inst.correspondence(chain[i]), inst.correspondence(chain[i + 1]));
        EXPECT_TRUE(validate_correspondence(c.result).ok()) << name << " " << c.result.name();
        EXPECT_EQ(composite_delta_formula(c), c.result.delta()) << c.result.name();
        for (const auto& [key, v] : oracle::delta_by_dirac(c.result))
          EXPECT_EQ(c.result.delta(key.first, key.second), v) << c.result.name();
      }
  }
}

TEST(Composition, DisintegrationOfCompositeMeasure) {
  for (const auto& name : positive_generators()) {
    io::Instance inst = catalog::gen(name);
    for (const auto& chain : inst.chains)
      for (std::size_t i = 0; i + 1 < chain.size(); ++i) {
        Composite c = compose(inst.correspondence(chain[i]), inst.correspondence(chain[i + 1]));
        std::vector<Rational> lam = orbit_weights_by_hand(c);
        for (Index k = 0; k < c.fibre.size(); ++k) {
          auto [x, y] = c.fibre.pairs[k];
          Rational m = c.first.lambda(x) * c.second.lambda(y);
          EXPECT_EQ(c.result.lambda(c.quotient.cls[k]) * lam[k], c.cochain[k] * m) << c.result.name();
        }
      }
  }
}

TEST(Composition, CochainSolvesCocycle) {
  Correspondence s = swap_example();
  Composite c = compose(identity_correspondence(s.left()), s);
  EXPECT_EQ(d0(c.cochain, c.middle), c.cocycle);
  EXPECT_TRUE(verify_cocycle(c.cocycle, c.middle).ok());
}

TEST(Composition, MismatchedObjectsThrow) {
  Correspondence s = swap_example();
  EXPECT_THROW(compose(s, s), MismatchError);
}

TEST(Composition, SuppliedCochainMustSolveCocycle) {
  Correspondence s = swap_example();
  Composite c = compose(identity_correspondence(s.left()), s);
  ZeroCochain wrong(c.cochain.size(), Rational(1));
  EXPECT_THROW(compose(c.first, c.second, wrong), MismatchError);
  ZeroCochain negative = c.cochain;
  negative[0] = -negative[0];
  EXPECT_THROW(compose(c.first, c.second, negative), MismatchError);
}

TEST(Composition, SpaceMapsComposeToComposite) {
  io::Instance inst = catalog::gen("space-chain");
  Composite c = compose(inst.correspondence("f"), inst.correspondence("g"));
  for (const Rational& b : c.cochain) EXPECT_EQ(b, 1);
  auto iso = find_iso(c.result, inst.correspondence("gf"));
  ASSERT_TRUE(iso.has_value());
  for (const Rational& m : iso->derivative) EXPECT_EQ(m, 1);
  EXPECT_TRUE(validate_iso(*iso).ok());
}

TEST(Composition, LiftedCochainsGiveIsomorphicComposites) {
  for (const auto& name : positive_generators()) {
    io::Instance inst = catalog::gen(name);
    for (const auto& chain : inst.chains)
      for (std::size_t i = 0; i + 1 < chain.size(); ++i) {
        const Correspondence x = inst.correspondence(chain[i]), y = inst.correspondence(chain[i + 1]);
        Composite c = compose(x, y);
        ZeroCochain b2 = scaled_cochain(c);
        Composite c2 = compose(x, y, b2);
        auto found = find_iso(c.result, c2.result);
        ASSERT_TRUE(found.has_value()) << c.result.name();
        EXPECT_TRUE(validate_iso(*found).ok());
        std::vector<Index> id(c.result.size());
        for (Index k = 0; k < id.size(); ++k) id[k] = k;
        CorrIso t = make_iso(c.result, c2.result, id);
        // the derivative read off the weights equals the descended b'/b
        std::vector<Rational> by_hand(c.quotient.size());
        for (Index k = 0; k < c.fibre.size(); ++k) by_hand[c.quotient.cls[k]] = b2[k] / c.cochain[k];
        EXPECT_EQ(t.derivative, by_hand) << c.result.name();
        EXPECT_EQ(t.derivative, cochain_quotient(c.cochain, b2, c.middle, c.quotient));
      }
  }
}

TEST(Isomorphism, RescaleHasDerivativeFour) {
  io::Instance inst = catalog::gen("rescale");
  Correspondence id = inst.correspondence(inst.isos[0].source), big = inst.correspondence("id4");
  CorrIso t = make_iso(id, big, {0, 1});
  EXPECT_EQ(t.derivative, (RadonNikodym{Rational(4), Rational(4)}));
  EXPECT_EQ(t.pushforward_derivative(), (RadonNikodym{Rational(1, 4), Rational(1, 4)}));
  EXPECT_TRUE(validate_iso(t).ok());
  CorrIso back = inverse_iso(t);
  EXPECT_EQ(back.derivative, (RadonNikodym{Rational(1, 4), Rational(1, 4)}));
  CorrIso round = compose_iso_vertical(t, back);
  EXPECT_EQ(round.derivative, (RadonNikodym{Rational(1), Rational(1)}));
  EXPECT_EQ(round.derivative, iso_derivative(round.source, round.target, round.map));
}

TEST(Isomorphism, ReweightedSwapIsIsomorphic) {
  Correspondence s = swap_example();
  Correspondence s3("swap3", s.left(), s.right(), s.space(), {Rational(1), Rational(3)});
  auto t = find_iso(s, s3);
  ASSERT_TRUE(t.has_value());
  EXPECT_EQ(t->derivative, (RadonNikodym{Rational(1), Rational(3, 2)}));
  EXPECT_TRUE(validate_iso(*t).ok());
}

TEST(Isomorphism, DifferentActionsAreNotIsomorphic) {
  Correspondence s = swap_example();
  auto left = LeftAction::generate(s.left().groupoid, {0, 0}, [](Index, Index p) { return p; });
  Correspondence fixed("fixed", s.left(), s.right(), Bispace({"p", "q"}, left, s.space().right()),
                       {Rational(1), Rational(2)});
  EXPECT_FALSE(find_iso(s, fixed).has_value());
  EXPECT_THROW(make_iso(s, fixed, {0, 1}), MismatchError);
}

TEST(Isomorphism, VerticalChainRule) {
  Correspondence s = swap_example();
  Correspondence a("a", s.left(), s.right(), s.space(), {Rational(2), Rational(4)});
  Correspondence b("b", s.left(), s.right(), s.space(), {Rational(5), Rational(10)});
  CorrIso st = make_iso(s, a, {0, 1}), at = make_iso(a, b, {0, 1});
  CorrIso both = compose_iso_vertical(st, at);
  EXPECT_EQ(both.derivative, iso_derivative(s, b, {0, 1}));
  EXPECT_EQ(both.derivative, (RadonNikodym{Rational(5), Rational(5)}));
}

TEST(Isomorphism, HorizontalDerivativeFormula) {
  io::Instance inst = catalog::gen("rescale");
  Correspondence id = inst.correspondence(inst.isos[0].source), big = inst.correspondence("id4");
  CorrIso t = make_iso(id, big, {0, 1});
  Composite from = compose(id, id), to = compose(big, big);
  CorrIso h = compose_iso_horizontal(t, t, from, to);
  EXPECT_TRUE(validate_iso(h).ok());
  RadonNikodym formula = horizontal_derivative_formula(t, t, from, to);
  EXPECT_EQ(h.pushforward_derivative(), formula);
}

TEST(Bicategory, LeftUnitorOfSwapByHand) {
  Bicategory bc;
  Correspondence s = swap_example();
  const Unitor& l = bc.left_unitor(s);
  // b(1, p) = 1 and b(1, q) = Δ(g, p) = 1/2 for the bi-invariant cochain on Z2 ×_{pt} {p, q}
  EXPECT_EQ(l.expected, (RadonNikodym{Rational(1), Rational(1, 2)}));
  EXPECT_EQ(l.iso.pushforward_derivative(), l.expected);
  EXPECT_TRUE(validate_iso(l.iso).ok());
}

TEST(Bicategory, UnitorsMatchCochainsEverywhere) {
  for (const auto& name : positive_generators()) {
    io::Instance inst = catalog::gen(name);
    for (const Correspondence& c : inst.all_correspondences()) {
      Bicategory bc;
      const Unitor& l = bc.left_unitor(c);
      const Unitor& r = bc.right_unitor(c);
      EXPECT_EQ(l.iso.pushforward_derivative(), l.expected) << c.name();
      EXPECT_EQ(r.iso.pushforward_derivative(), r.expected) << c.name();
      EXPECT_TRUE(validate_iso(l.iso).ok());
      EXPECT_TRUE(validate_iso(r.iso).ok());
    }
  }
}

TEST(Bicategory, AssociatorOnEveryBundledTriple) {
  for (const auto& name : positive_generators()) {
    io::Instance inst = catalog::gen(name);
    for (const auto& chain : inst.chains)
      for (std::size_t i = 0; i + 2 < chain.size(); ++i) {
        Bicategory bc;
        const Associator& a = bc.associator(inst.correspondence(chain[i]), inst.correspondence(chain[i + 1]),
                                            inst.correspondence(chain[i + 2]));
        EXPECT_TRUE(a.report.ok()) << name << ": " << a.report.summary();
        EXPECT_EQ(a.d, a.d_right);
        EXPECT_EQ(d0(a.p, a.t), a.d);
        EXPECT_EQ(a.iso.pushforward_derivative(), a.expected) << name;
        EXPECT_TRUE(validate_iso(a.iso).ok());
      }
  }
}

TEST(Bicategory, PentagonAndTriangle) {
  for (const auto& name : positive_generators()) {
    io::Instance inst = catalog::gen(name);
    for (const auto& chain : inst.chains) {
      for (std::size_t i = 0; i + 3 < chain.size(); ++i) {
        Bicategory bc;
        ValidationReport r = check_pentagon(bc, inst.correspondence(chain[i]), inst.correspondence(chain[i + 1]),
                                            inst.correspondence(chain[i + 2]), inst.correspondence(chain[i + 3]));
        EXPECT_TRUE(r.ok()) << name << ": " << r.summary();
      }
      for (std::size_t i = 0; i + 1 < chain.size(); ++i) {
        Bicategory bc;
        ValidationReport r = check_triangle(bc, inst.correspondence(chain[i]), inst.correspondence(chain[i + 1]));
        EXPECT_TRUE(r.ok()) << name << ": " << r.summary();
      }
    }
  }
}

TEST(Bicategory, SpaceMapAssociatorIsTrivial) {
  io::Instance inst = catalog::gen("space-chain");
  Bicategory bc;
  const Associator& a = bc.associator(inst.correspondence("f"), inst.correspondence("g"), inst.correspondence("h"));
  for (const Rational& v : a.expected) EXPECT_EQ(v, 1);
}
