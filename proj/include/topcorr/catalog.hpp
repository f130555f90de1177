#pragma once

#include <map>
#include <string>
#include <vector>

#include "topcorr/generators.hpp"
#include "topcorr/io/instance.hpp"

namespace topcorr::catalog {

using Params = std::map<std::string, std::string>;

inline std::string param(const Params& p, const std::string& key, const std::string& fallback) {
  auto it = p.find(key);
  return it == p.end() ? fallback : it->second;
}

inline std::size_t size_param(const Params& p, const std::string& key, std::size_t fallback, std::size_t lo,
                              std::size_t hi) {
  std::string v = param(p, key, std::to_string(fallback));
  std::size_t n = 0;
  try {
    n = std::stoul(v);
  } catch (const std::exception&) {
    throw SchemaError("parameter " + key + ": expected an integer, got '" + v + "'");
  }
  if (n < lo || n > hi)
    throw SchemaError("parameter " + key + " must lie in [" + std::to_string(lo) + "," + std::to_string(hi) + "]");
  return n;
}

/// Z<n>, S3, Pair<n> or 1.
inline HaarGroupoid named_object(const std::string& name) {
  if (name == "1") return make_object(trivial_group());
  if (name == "S3") return make_object(symmetric_group3());
  if (name.size() > 1 && name[0] == 'Z') return make_object(cyclic_group(std::stoul(name.substr(1))));
  if (name.size() > 4 && name.rfind("Pair", 0) == 0) return make_object(pair_groupoid(std::stoul(name.substr(4))));
  throw SchemaError("unknown groupoid '" + name + "' (expected Z<n>, S3, Pair<n> or 1)");
}

inline std::vector<std::string> labels(const std::string& prefix, std::size_t n) {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < n; ++i) out.push_back(prefix + std::to_string(i + 1));
  return out;
}

/// Identity correspondence of a group or pair groupoid; chain of four copies.
inline io::Instance identity(const Params& p) {
  HaarGroupoid g = named_object(param(p, "group", "Z2"));
  Correspondence id = identity_correspondence(g);
  return io::instance_from("identity-" + g.g().name(), {id}, {{id.name(), id.name(), id.name(), id.name()}});
}

/// Pair groupoid on two units acting on its units; an equivalence with the trivial group.
inline io::Instance pair(const Params& p) {
  const std::size_t n = size_param(p, "n", 2, 1, 4);
  std::vector<Rational> scale;
  std::string sc = param(p, "scales", "");
  for (std::size_t i = 0, start = 0; i < n; ++i) {
    std::size_t comma = sc.find(',', start);
    std::string tok = sc.empty() ? "1" : sc.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
    scale.push_back(parse_rational(tok));
    if (scale.back() <= 0) throw SchemaError("parameter scales: weights must be positive");
    start = comma == std::string::npos ? sc.size() : comma + 1;
  }
  Groupoid pg = pair_groupoid(n, sc.empty() ? "Pair" + std::to_string(n) : "WPair" + std::to_string(n));
  HaarGroupoid obj = make_object(pg, scaled_haar(pg, scale));
  HaarGroupoid one = make_object(trivial_group());
  const Groupoid& g = obj.g();
  std::vector<Index> units(n), zero(n, 0);
  for (Index i = 0; i < n; ++i) units[i] = i;
  auto left = LeftAction::generate(obj.groupoid, units, [&](Index a, Index) { return g.rng(a); });
  auto right = RightAction::generate(one.groupoid, zero, [](Index x, Index) { return x; });
  Correspondence eq("unit_space", obj, one, Bispace(g.unit_names(), left, right), scale);
  Correspondence id = identity_correspondence(obj);
  Correspondence id1 = identity_correspondence(one);
  std::string name = sc.empty() ? "pair" : "weighted-pair";
  return io::instance_from(name, {id, eq, id1}, {{id.name(), id.name(), eq.name(), id1.name()}});
}

/// Z/2 swapping {p,q} over the trivial group, then a quiver into a two-point space.
inline io::Instance swap(const Params&) {
  Correspondence s = swap_example();
  HaarGroupoid z2 = s.left();
  HaarGroupoid one = s.right();
  HaarGroupoid y = space_object({"a", "b"}, "Y");
  Correspondence q = from_quiver(one, y, {"e1", "e2", "e3"}, {0, 0, 0}, {0, 1, 1},
                                 {Rational(1), Rational(1, 2), Rational(3)}, "q");
  Correspondence id = identity_correspondence(z2);
  Correspondence idy = identity_correspondence(y);
  return io::instance_from("swap", {id, s, q, idy}, {{id.name(), s.name(), q.name(), idy.name()}});
}

/// Illustration of space maps: f: X -> Y, identities on both sides.
inline io::Instance space_map(const Params& p) {
  const std::size_t nx = size_param(p, "X", 2, 1, 12), ny = size_param(p, "Y", 1, 1, 12);
  HaarGroupoid x = space_object(labels("x", nx), "X");
  HaarGroupoid y = space_object(labels("y", ny), "Y");
  std::vector<Index> f(nx);
  for (Index i = 0; i < nx; ++i) f[i] = i % ny;
  Correspondence cf = from_space_map(x, y, f, "f");
  Correspondence idx = identity_correspondence(x);
  Correspondence idy = identity_correspondence(y);
  return io::instance_from("space-map", {idx, cf, idy}, {{idx.name(), cf.name(), idy.name()}});
}

/// X -f-> Y -g-> Z -h-> W together with the composite maps g∘f and h∘g.
inline io::Instance space_chain(const Params&) {
  HaarGroupoid x = space_object({"x1", "x2", "x3", "x4"}, "X");
  HaarGroupoid y = space_object({"y1", "y2", "y3"}, "Y");
  HaarGroupoid z = space_object({"z1", "z2"}, "Z");
  HaarGroupoid w = space_object({"w"}, "W");
  Correspondence f = from_space_map(x, y, {0, 0, 1, 2}, "f");
  Correspondence g = from_space_map(y, z, {0, 1, 1}, "g");
  Correspondence h = from_space_map(z, w, {0, 0}, "h");
  Correspondence gf = from_space_map(x, z, {0, 0, 1, 1}, "gf");
  Correspondence hg = from_space_map(y, w, {0, 0, 0}, "hg");
  io::Instance inst = io::instance_from("space-chain", {f, g, h, gf, hg}, {{"f", "g", "h"}});
  inst.chains.push_back({"gf", "h"});
  inst.chains.push_back({"f", "hg"});
  return inst;
}

/// Quivers between two- and three-vertex graphs with weighted edges.
inline io::Instance quiver(const Params&) {
  HaarGroupoid u = space_object({"u1", "u2"}, "U");
  HaarGroupoid v = space_object({"v1", "v2", "v3"}, "V");
  Correspondence a = from_quiver(u, v, {"a1", "a2", "a3"}, {0, 0, 1}, {0, 1, 2},
                                 {Rational(1), Rational(2), Rational(1, 3)}, "A");
  Correspondence b = from_quiver(v, u, {"b1", "b2", "b3"}, {0, 1, 2}, {1, 1, 0},
                                 {Rational(3), Rational(1), Rational(5, 2)}, "B");
  Correspondence c = from_quiver(u, u, {"c1", "c2"}, {0, 1}, {1, 0}, {Rational(2), Rational(7)}, "C");
  return io::instance_from("quiver", {a, b, c}, {{"A", "B", "C", "A"}, {"C", "C", "A"}});
}

/// Z4 -> Z2 -> 1 through reduction mod 2 and the trivial map.
inline io::Instance group_hom(const Params&) {
  HaarGroupoid z4 = make_object(cyclic_group(4));
  HaarGroupoid z2 = make_object(cyclic_group(2));
  HaarGroupoid one = make_object(trivial_group());
  Correspondence phi = from_group_hom(z4, z2, {0, 1, 0, 1}, "mod2");
  Correspondence psi = from_group_hom(z2, one, {0, 0}, "trivial");
  Correspondence id4 = identity_correspondence(z4);
  Correspondence id1 = identity_correspondence(one);
  return io::instance_from("group-hom", {id4, phi, psi, id1}, {{id4.name(), phi.name(), psi.name(), id1.name()}});
}

/// The sign map of S3 followed by the swap example.
inline io::Instance sign(const Params&) {
  HaarGroupoid s3 = make_object(symmetric_group3());
  Correspondence s = swap_example();
  Correspondence sg = from_group_hom(s3, s.left(), {0, 1, 1, 1, 0, 0}, "sign");
  Correspondence id = identity_correspondence(s3);
  return io::instance_from("sign", {id, sg, s}, {{id.name(), sg.name(), s.name()}});
}

/// Z2 acting on {p,q,r} by swapping p and q and fixing r.
inline io::Instance non_free(const Params&) {
  HaarGroupoid z2 = make_object(cyclic_group(2));
  HaarGroupoid one = make_object(trivial_group());
  auto left = LeftAction::generate(z2.groupoid, {0, 0, 0}, [](Index a, Index x) { return a == 0 || x == 2 ? x : 1 - x; });
  auto right = RightAction::generate(one.groupoid, {0, 0, 0}, [](Index x, Index) { return x; });
  Correspondence nf("fix", z2, one, Bispace({"p", "q", "r"}, left, right), {Rational(1), Rational(3), Rational(5)});
  Correspondence id = identity_correspondence(z2);
  Correspondence id1 = identity_correspondence(one);
  return io::instance_from("non-free", {id, nf, id1}, {{id.name(), id.name(), nf.name(), id1.name()}});
}

/// Z3 rotating {a,b,c}, and Z3 acting on itself on both sides with the left Haar scaled.
inline io::Instance rotation(const Params&) {
  HaarGroupoid z3 = make_object(cyclic_group(3));
  HaarGroupoid one = make_object(trivial_group());
  auto left = LeftAction::generate(z3.groupoid, {0, 0, 0}, [](Index a, Index x) { return (a + x) % 3; });
  auto right = RightAction::generate(one.groupoid, {0, 0, 0}, [](Index x, Index) { return x; });
  Correspondence rot("rot", z3, one, Bispace({"a", "b", "c"}, left, right), {Rational(1), Rational(2), Rational(4)});
  Correspondence id = identity_correspondence(z3);
  return io::instance_from("rotation", {id, rot}, {{id.name(), id.name(), rot.name()}});
}

/// id_Z2 and the same bispace with λ ≡ 4, related by the identity map.
inline io::Instance rescale(const Params&) {
  HaarGroupoid z2 = make_object(cyclic_group(2));
  Correspondence id = identity_correspondence(z2);
  Correspondence big("id4", z2, z2, id.space(), {Rational(4), Rational(4)});
  io::Instance inst = io::instance_from("rescale", {id, big}, {{"id4", id.name(), "id4", id.name()}});
  inst.isos.push_back({"scale", id.name(), "id4", {{"e", "e"}, {"g", "g"}}});
  return inst;
}

/// Pair groupoid with a weight system that is not left invariant.
inline io::Instance broken_haar(const Params&) {
  io::Instance inst = pair({{"n", "2"}});
  inst.name = "broken-haar";
  for (auto& o : inst.objects)
    if (o.name == "Pair2") {
      HaarSystem h = o.object.haar;
      h.weight[1] = Rational(2);  // (1,2)
      o.object = HaarGroupoid{o.object.groupoid, h};
    }
  return inst;
}

inline const std::map<std::string, io::Instance (*)(const Params&)>& generators() {
  static const std::map<std::string, io::Instance (*)(const Params&)> table = {
      {"identity", &identity},   {"pair", &pair},           {"swap", &swap},
      {"space-map", &space_map}, {"space-chain", &space_chain}, {"quiver", &quiver},
      {"group-hom", &group_hom}, {"sign", &sign},           {"non-free", &non_free},
      {"rotation", &rotation},   {"rescale", &rescale},     {"broken-haar", &broken_haar},
  };
  return table;
}

inline io::Instance gen(const std::string& name, const Params& p = {}) {
  auto it = generators().find(name);
  if (it == generators().end()) throw SchemaError("unknown generator '" + name + "'");
  return it->second(p);
}

}  // namespace topcorr::catalog
