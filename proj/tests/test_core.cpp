#include <gtest/gtest.h>

#include "oracle.hpp"
#include "topcorr/catalog.hpp"
#include "topcorr/cohomology.hpp"
#include "topcorr/measure_calculus.hpp"

using namespace topcorr;

namespace {

std::shared_ptr<const Groupoid> ptr(Groupoid g) { return std::make_shared<const Groupoid>(std::move(g)); }

RightAction swap_right(const GroupoidPtr& z2) {
  return RightAction::generate(z2, {0, 0}, [](Index p, Index a) { return a == 0 ? p : 1 - p; });
}

Index point(const Correspondence& c, const std::string& n) { return *c.space().find(n); }
Index arrow(const Correspondence& c, const std::string& n) { return *c.left().g().find_arrow(n); }

}  // namespace

TEST(Groupoid, StandardGroupoidsValidate) {
  for (std::size_t n = 1; n <= 5; ++n) EXPECT_TRUE(validate_groupoid(cyclic_group(n)).ok()) << n;
  EXPECT_TRUE(validate_groupoid(symmetric_group3()).ok());
  for (std::size_t n = 1; n <= 4; ++n) EXPECT_TRUE(validate_groupoid(pair_groupoid(n)).ok()) << n;
  EXPECT_TRUE(validate_groupoid(space_groupoid({"a", "b", "c"}, "X")).ok());
  EXPECT_TRUE(validate_groupoid(product_groupoid(pair_groupoid(2), cyclic_group(3))).ok());
}

TEST(Groupoid, CyclicCompositionAndInverse) {
  Groupoid z4 = cyclic_group(4);
  for (Index a = 0; a < 4; ++a) {
    for (Index b = 0; b < 4; ++b) EXPECT_EQ(z4.compose(a, b), (a + b) % 4);
    EXPECT_EQ(z4.compose(a, z4.inv(a)), z4.identity(0));
  }
}

TEST(Groupoid, BrokenTablesAreReported) {
  Groupoid z2 = cyclic_group(2);
  // g*g = g breaks the inverse law
  Groupoid bad("Bad", {"u"}, {"e", "g"}, {0, 0}, {0, 0}, {0}, {0, 1}, {0, 1, 1, 1});
  ValidationReport r = validate_groupoid(bad);
  ASSERT_FALSE(r.ok());
  EXPECT_NE(r.summary().find("inverse_law"), std::string::npos);
  EXPECT_THROW(Groupoid("Short", {"u"}, {"e"}, {0}, {0}, {0}, {0}, {0, 0}), SchemaError);
  EXPECT_TRUE(validate_groupoid(z2).ok());
}

TEST(Groupoid, SymmetricGroupIsNonAbelian) {
  Groupoid s3 = symmetric_group3();
  bool commutes = true;
  for (Index a = 0; a < 6; ++a)
    for (Index b = 0; b < 6; ++b)
      if (s3.compose(a, b) != s3.compose(b, a)) commutes = false;
  EXPECT_FALSE(commutes);
}

TEST(Haar, ScaledSystemsAreLeftInvariant) {
  Groupoid p3 = pair_groupoid(3);
  EXPECT_TRUE(validate_haar(p3, scaled_haar(p3, {Rational(1), Rational(2, 3), Rational(5)})).ok());
  EXPECT_TRUE(validate_haar(p3, counting_haar(p3)).ok());
}

TEST(Haar, BrokenWeightNamesWitness) {
  io::Instance inst = catalog::gen("broken-haar");
  const HaarGroupoid& o = inst.object("Pair2");
  ValidationReport r = validate_haar(o.g(), o.haar);
  ASSERT_FALSE(r.ok());
  EXPECT_NE(r.summary().find("left_invariance"), std::string::npos);
}

TEST(Haar, NonPositiveWeightFails) {
  Groupoid z2 = cyclic_group(2);
  EXPECT_FALSE(validate_haar(z2, HaarSystem{{Rational(1), Rational(0)}}).ok());
  EXPECT_THROW(validate_haar(z2, HaarSystem{{Rational(1)}}), SchemaError);
}

TEST(Haar, InversionRoundTrip) {
  Groupoid p2 = pair_groupoid(2);
  HaarSystem h = scaled_haar(p2, {Rational(2), Rational(7)});
  EXPECT_EQ(haar_from_inverted(p2, invert_haar(p2, h)), h);
}

TEST(Actions, SwapActionValidates) {
  auto z2 = ptr(cyclic_group(2));
  EXPECT_TRUE(validate_action(swap_right(z2)).ok());
  // sending everything to p is not an action
  auto bad = RightAction::generate(z2, {0, 0}, [](Index, Index) { return Index(0); });
  EXPECT_FALSE(validate_action(bad).ok());
}

TEST(Actions, OrbitsOfNonFreeAction) {
  io::Instance inst = catalog::gen("non-free");
  Correspondence c = inst.correspondence("fix");
  Quotient q = orbit_quotient(as_right(c.space().left()));
  EXPECT_EQ(q.size(), 2u);
  EXPECT_EQ(q.cls[0], q.cls[1]);
  EXPECT_NE(q.cls[0], q.cls[2]);
}

TEST(Actions, FibreProductSizes) {
  io::Instance inst = catalog::gen("space-chain");
  Correspondence f = inst.correspondence("f"), g = inst.correspondence("g");
  // X -> Y -> Z through bispaces X and Y: pairs (x, y) with f(x) = y
  FibreProduct z = fibre_product(f.space(), g.space());
  EXPECT_EQ(z.size(), 4u);
}

// Adjoining function: closed form against the brute-force Dirac oracle.

TEST(Adjoining, SwapValuesFromOracle) {
  Correspondence s = swap_example();
  auto d = oracle::delta_by_dirac(s);
  Index g = arrow(s, "g"), e = arrow(s, "e"), p = point(s, "p"), q = point(s, "q");
  EXPECT_EQ(d.at({g, p}), Rational(1, 2));
  EXPECT_EQ(d.at({g, q}), Rational(2));
  EXPECT_EQ(d.at({e, p}), Rational(1));
  EXPECT_EQ(s.delta(g, p), Rational(1, 2));
  EXPECT_EQ(s.delta(g, q), Rational(2));
}

TEST(Adjoining, NonFreeValuesFromOracle) {
  Correspondence c = catalog::gen("non-free").correspondence("fix");
  auto d = oracle::delta_by_dirac(c);
  Index g = arrow(c, "g");
  EXPECT_EQ(d.at({g, point(c, "p")}), Rational(1, 3));
  EXPECT_EQ(d.at({g, point(c, "q")}), Rational(3));
  EXPECT_EQ(d.at({g, point(c, "r")}), Rational(1));
}

TEST(Adjoining, RotationValuesFromOracle) {
  Correspondence c = catalog::gen("rotation").correspondence("rot");
  auto d = oracle::delta_by_dirac(c);
  Index g1 = arrow(c, "g1"), g2 = arrow(c, "g2");
  Index a = point(c, "a"), b = point(c, "b"), cc = point(c, "c");
  EXPECT_EQ(d.at({g1, a}), Rational(1, 2));
  EXPECT_EQ(d.at({g1, b}), Rational(1, 2));
  EXPECT_EQ(d.at({g1, cc}), Rational(4));
  EXPECT_EQ(d.at({g2, a}), Rational(1, 4));
  EXPECT_EQ(d.at({g2, b}), Rational(2));
  EXPECT_EQ(d.at({g2, cc}), Rational(2));
}

TEST(Adjoining, ClosedFormMatchesOracleOnEveryBundledCorrespondence) {
  for (const auto& [name, make] : catalog::generators()) {
    if (name == "broken-haar") continue;
    io::Instance inst = make({});
    for (const Correspondence& c : inst.all_correspondences()) {
      auto d = oracle::delta_by_dirac(c);
      for (const auto& [key, v] : d) EXPECT_EQ(c.delta(key.first, key.second), v) << name << " " << c.name();
      EXPECT_EQ(modular_from_identity(c.family(), c.space().left(), c.left().haar), c.delta()) << c.name();
    }
  }
}

TEST(Adjoining, IdentityCorrespondenceIsOne) {
  for (const char* g : {"1", "Z2", "Z4", "S3", "Pair3"}) {
    Correspondence id = identity_correspondence(catalog::named_object(g));
    for (const auto& [key, v] : oracle::delta_by_dirac(id)) EXPECT_EQ(v, 1) << g;
  }
  Groupoid p2 = pair_groupoid(2);
  Correspondence scaled = identity_correspondence(make_object(p2, scaled_haar(p2, {Rational(3), Rational(1, 5)})));
  for (const auto& [key, v] : oracle::delta_by_dirac(scaled)) EXPECT_EQ(v, 1);
}

TEST(Adjoining, IntegralIdentityHoldsForGenericTestFunctions) {
  Correspondence c = catalog::gen("rotation").correspondence("rot");
  auto f = [](Index a, Index x) { return Rational(static_cast<long long>(3 * a + x * x + 1), 7); };
  auto delta = [&](Index a, Index x) { return c.delta(a, x); };
  for (Index u = 0; u < c.right().g().unit_count(); ++u) {
    auto [lhs, rhs] = oracle::identity_sides(c, u, f, delta);
    EXPECT_EQ(lhs, rhs);
  }
  // a wrong candidate violates it
  auto ones = [](Index, Index) { return Rational(1); };
  auto [lhs, rhs] = oracle::identity_sides(c, 0, f, ones);
  EXPECT_NE(lhs, rhs);
}

TEST(Adjoining, MalformedFamilyRejected) {
  Correspondence s = swap_example();
  WeightFamily w = s.family();
  ArrowPointFunction d = modular_closed_form(w, s.space().left(), s.left().haar);
  EXPECT_EQ(d(arrow(s, "g"), point(s, "p")), Rational(1, 2));
  EXPECT_THROW(require_well_formed(WeightFamily{{0, 0}, 1, {Rational(1), Rational(-1)}}), SchemaError);
}

// Measures

TEST(Measures, PushforwardAndRadonNikodym) {
  WeightFamily w{{0, 0, 1}, 2, {Rational(1), Rational(2), Rational(3)}};
  WeightFamily pushed = pushforward({1, 0, 2}, w);
  EXPECT_EQ(pushed.weight, (std::vector<Rational>{Rational(2), Rational(1), Rational(3)}));
  EXPECT_THROW(pushforward({2, 0, 1}, w, w.target), MismatchError);
  RadonNikodym r = equivalence(w, pushed);
  EXPECT_EQ(r, (RadonNikodym{Rational(1, 2), Rational(2), Rational(1)}));
  EXPECT_THROW(pushforward({0, 0, 1}, w), MismatchError);
}

TEST(Measures, ChainRuleByHand) {
  WeightFamily w1{{0, 0, 0}, 1, {Rational(1), Rational(2), Rational(3)}};
  WeightFamily w2{{0, 0, 0}, 1, {Rational(5), Rational(1, 2), Rational(4)}};
  WeightFamily w3{{0, 0, 0}, 1, {Rational(2), Rational(2), Rational(1, 3)}};
  std::vector<Index> a1{1, 2, 0}, a2{2, 0, 1};
  std::vector<Index> a21{a2[a1[0]], a2[a1[1]], a2[a1[2]]};
  RadonNikodym lhs = equivalence(pushforward(a21, w1), w3);
  RadonNikodym first = equivalence(pushforward(a2, w2), w3);
  RadonNikodym second = equivalence(pushforward(a1, w1), w2);
  std::vector<Index> a2inv = inverse_map(a2);
  for (Index p = 0; p < 3; ++p) EXPECT_EQ(lhs[p], first[p] * second[a2inv[p]]);
}

TEST(Measures, InvarianceAlongRightAction) {
  auto z2 = ptr(cyclic_group(2));
  RightAction act = swap_right(z2);
  EXPECT_TRUE(check_invariance(WeightFamily{{0, 0}, 1, {Rational(2), Rational(2)}}, act).ok());
  EXPECT_FALSE(check_invariance(WeightFamily{{0, 0}, 1, {Rational(1), Rational(2)}}, act).ok());
}

TEST(Measures, CutoffIntegratesToOne) {
  WeightFamily w{{0, 0, 1}, 2, {Rational(1), Rational(3), Rational(2)}};
  std::vector<Rational> e = cutoff(w);
  EXPECT_EQ(e, (std::vector<Rational>{Rational(1, 4), Rational(1, 4), Rational(1, 2)}));
  for (const Rational& v : fiber_integrate(w, e)) EXPECT_EQ(v, 1);
}

TEST(Measures, DescendOnFreeSwap) {
  auto z2 = ptr(cyclic_group(2));
  TransformationGroupoid t(swap_right(z2), counting_haar(*z2));
  Quotient q = orbit_quotient(t.action());
  WeightFamily lam = orbit_family(t, q);
  EXPECT_EQ(lam.weight, (std::vector<Rational>{Rational(1), Rational(1)}));
  std::vector<Rational> mu = descend_measure({Rational(3), Rational(3)}, t, lam);
  ASSERT_EQ(mu.size(), 1u);
  EXPECT_EQ(mu[0], 3);
  EXPECT_THROW(descend_measure({Rational(1), Rational(2)}, t, lam), NotInvariant);
}

TEST(Measures, InvariantFunctionDescends) {
  auto z2 = ptr(cyclic_group(2));
  TransformationGroupoid t(swap_right(z2), counting_haar(*z2));
  Quotient q = orbit_quotient(t.action());
  EXPECT_EQ(invariant_function_descends({Rational(5), Rational(5)}, t, q), std::vector<Rational>{Rational(5)});
  EXPECT_THROW(invariant_function_descends({Rational(5), Rational(4)}, t, q), NotInvariant);
}

TEST(Measures, QuotientLemmaByHand) {
  // pair groupoid on two units with scales (1, 2) acting on itself's unit space from the right
  auto p2 = ptr(pair_groupoid(2));
  HaarSystem h = scaled_haar(*p2, {Rational(1), Rational(2)});
  RightAction act = RightAction::generate(p2, {0, 1}, [&](Index, Index a) { return p2->src(a); });
  TransformationGroupoid t(act, h);
  std::vector<Rational> m{Rational(1), Rational(2)}, m2{Rational(3), Rational(6)};
  EXPECT_TRUE(check_measure_invariance(m, t).ok());
  EXPECT_TRUE(check_measure_invariance(m2, t).ok());
  Quotient q = orbit_quotient(act);
  WeightFamily lam = orbit_family(t, q);
  std::vector<Rational> mu = descend_measure(m, t, lam), mu2 = descend_measure(m2, t, lam);
  std::vector<Rational> cls = invariant_function_descends(ratio(m, m2), t, q);
  EXPECT_EQ(mu[0] / mu2[0], cls[0]);
  EXPECT_EQ(cls[0], Rational(1, 3));
}

TEST(Measures, RandomBatteryPasses) {
  for (std::uint64_t seed = 1; seed <= 100; ++seed) {
    MeasureInstance mi = random_measure_instance(seed);
    EXPECT_LE(mi.m.size(), 12u);
    ValidationReport r = check_measure_calculus(mi);
    EXPECT_TRUE(r.ok()) << "seed " << seed << ": " << r.summary();
  }
}

TEST(Measures, RandomInstancesAreDeterministic) {
  MeasureInstance a = random_measure_instance(17), b = random_measure_instance(17);
  EXPECT_EQ(a.m, b.m);
  EXPECT_EQ(a.w1, b.w1);
  EXPECT_EQ(a.a2, b.a2);
}

// Cohomology

TEST(Cohomology, SolveRecoversCochain) {
  auto z2 = ptr(cyclic_group(2));
  TransformationGroupoid t(swap_right(z2), counting_haar(*z2));
  ZeroCochain b{Rational(1), Rational(3)};
  OneCocycle d = d0(b, t);
  EXPECT_TRUE(verify_cocycle(d, t).ok());
  EXPECT_EQ(solve_coboundary(d, t), b);
}

TEST(Cohomology, NonCocycleIsNotACoboundary) {
  auto z2 = ptr(cyclic_group(2));
  RightAction fixed = RightAction::generate(z2, {0}, [](Index p, Index) { return p; });
  TransformationGroupoid t(fixed, counting_haar(*z2));
  OneCocycle d(t.arrow_count(), Rational(1));
  d[t.find(0, 1)] = 2;
  EXPECT_FALSE(verify_cocycle(d, t).ok());
  EXPECT_THROW(solve_coboundary(d, t), NotACoboundary);
}

TEST(Cohomology, TwoSolutionsDifferByOrbitConstant) {
  auto z2 = ptr(cyclic_group(2));
  RightAction two_orbits = RightAction::generate(z2, {0, 0, 0, 0}, [](Index p, Index a) {
    return a == 0 ? p : (p ^ 1);
  });
  TransformationGroupoid t(two_orbits, counting_haar(*z2));
  ZeroCochain b{Rational(1), Rational(2), Rational(5), Rational(1, 2)};
  ZeroCochain b2{Rational(3), Rational(6), Rational(1), Rational(1, 10)};
  Quotient q = orbit_quotient(two_orbits);
  std::vector<Rational> c = cochain_quotient(b, b2, t, q);
  EXPECT_EQ(c, (std::vector<Rational>{Rational(3), Rational(1, 5)}));
  EXPECT_THROW(cochain_quotient(b, {Rational(1), Rational(1), Rational(1), Rational(1)}, t, q), MismatchError);
}
