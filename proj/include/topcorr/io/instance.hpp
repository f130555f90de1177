#pragma once

#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include <json.hpp>

#include "topcorr/correspondence.hpp"

namespace topcorr::io {

using Json = nlohmann::ordered_json;

inline constexpr std::size_t max_points = 12;
inline constexpr std::size_t max_arrows = 16;
inline constexpr std::size_t max_module_dim = 24;

struct NamedObject {
  std::string name;
  HaarGroupoid object;
};

struct NamedBispace {
  std::string name, left, right;
  Bispace space;
};

struct NamedWeights {
  std::string name;
  std::vector<std::pair<std::string, Rational>> values;
};

struct CorrespondenceEntry {
  std::string name, space, weights;
};

/// Values of a 0-cochain on the fibre product of two named correspondences.
struct CochainEntry {
  std::string name, first, second;
  std::vector<std::tuple<std::string, std::string, Rational>> values;
};

struct IsoEntry {
  std::string name, source, target;
  std::vector<std::pair<std::string, std::string>> map;
};

struct Instance {
  std::string name, description;
  std::vector<NamedObject> objects;
  std::vector<NamedBispace> bispaces;
  std::vector<NamedWeights> weights;
  std::vector<CorrespondenceEntry> correspondences;
  std::vector<CochainEntry> cochains;
  std::vector<IsoEntry> isos;
  /// Sequences of composable correspondences, by name.
  std::vector<std::vector<std::string>> chains;

  const HaarGroupoid& object(const std::string& n) const {
    for (const auto& o : objects)
      if (o.name == n) return o.object;
    throw SchemaError("unknown groupoid '" + n + "'");
  }
  const NamedBispace& bispace(const std::string& n) const {
    for (const auto& b : bispaces)
      if (b.name == n) return b;
    throw SchemaError("unknown bispace '" + n + "'");
  }
  const NamedWeights& weight(const std::string& n) const {
    for (const auto& w : weights)
      if (w.name == n) return w;
    throw SchemaError("unknown weight family '" + n + "'");
  }
  const CochainEntry& cochain(const std::string& n) const {
    for (const auto& c : cochains)
      if (c.name == n) return c;
    throw SchemaError("unknown cochain '" + n + "'");
  }

  Correspondence correspondence(const std::string& n) const {
    for (const auto& c : correspondences)
      if (c.name == n) {
        const NamedBispace& b = bispace(c.space);
        const NamedWeights& w = weight(c.weights);
        std::vector<Rational> lambda(b.space.size(), Rational(0));
        std::vector<bool> seen(b.space.size(), false);
        for (const auto& [p, q] : w.values) {
          auto i = b.space.find(p);
          if (!i) throw SchemaError("weights." + w.name + ": '" + p + "' is not a point of " + b.name);
          lambda[*i] = q;
          seen[*i] = true;
        }
        for (Index i = 0; i < seen.size(); ++i)
          if (!seen[i]) throw SchemaError("weights." + w.name + ": no weight for " + b.space.name(i));
        return Correspondence(c.name, object(b.left), object(b.right), b.space, std::move(lambda));
      }
    throw SchemaError("unknown correspondence '" + n + "'");
  }

  std::vector<Correspondence> all_correspondences() const {
    std::vector<Correspondence> out;
    for (const auto& c : correspondences) out.push_back(correspondence(c.name));
    return out;
  }
};

/// The cochain entry as a function on the fibre product of a composite.
inline ZeroCochain cochain_on(const CochainEntry& e, const Composite& c) {
  ZeroCochain b(c.fibre.size(), Rational(0));
  std::vector<bool> seen(b.size(), false);
  const Bispace& x = c.first.space();
  const Bispace& y = c.second.space();
  for (const auto& [xn, yn, q] : e.values) {
    auto i = x.find(xn);
    auto j = y.find(yn);
    if (!i || !j) throw SchemaError("cochains." + e.name + ": unknown point (" + xn + "," + yn + ")");
    Index k = c.fibre.find(*i, *j);
    if (k == npos) throw SchemaError("cochains." + e.name + ": (" + xn + "," + yn + ") is not in the fibre product");
    b[k] = q;
    seen[k] = true;
  }
  for (Index k = 0; k < seen.size(); ++k)
    if (!seen[k])
      throw SchemaError("cochains." + e.name + ": no value at (" + x.name(c.fibre.pairs[k].first) + "," +
                        y.name(c.fibre.pairs[k].second) + ")");
  return b;
}

inline CochainEntry cochain_entry(std::string name, const Composite& c, const ZeroCochain& b) {
  CochainEntry e{std::move(name), c.first.name(), c.second.name(), {}};
  for (Index k = 0; k < c.fibre.size(); ++k) {
    auto [x, y] = c.fibre.pairs[k];
    e.values.emplace_back(c.first.space().name(x), c.second.space().name(y), b[k]);
  }
  return e;
}

namespace detail {

inline std::string line_column(const std::string& text, std::size_t byte) {
  std::size_t line = 1, col = 1;
  for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return "line " + std::to_string(line) + ", column " + std::to_string(col);
}

inline const Json& field(const Json& j, const std::string& key, const std::string& path) {
  if (!j.is_object() || !j.contains(key)) throw SchemaError(path + ": missing field '" + key + "'");
  return j.at(key);
}

inline std::string str(const Json& j, const std::string& path) {
  if (!j.is_string()) throw SchemaError(path + ": expected a string");
  return j.get<std::string>();
}

inline Rational rational(const Json& j, const std::string& path) {
  if (!j.is_string()) throw SchemaError(path + ": rationals are written as strings");
  try {
    return parse_rational(j.get<std::string>());
  } catch (const ParseError& e) {
    throw ParseError(path + ": " + e.what());
  }
}

inline Rational positive(const Json& j, const std::string& path) {
  Rational q = rational(j, path);
  if (q <= 0) throw SchemaError(path + ": weight must be strictly positive");
  return q;
}

inline const Json& array(const Json& j, const std::string& path) {
  if (!j.is_array()) throw SchemaError(path + ": expected an array");
  return j;
}

inline const Json& object(const Json& j, const std::string& path) {
  if (!j.is_object()) throw SchemaError(path + ": expected an object");
  return j;
}

template <class F>
Index lookup(const F& find, const std::string& n, const std::string& what, const std::string& path) {
  auto i = find(n);
  if (!i) throw SchemaError(path + ": unknown " + what + " '" + n + "'");
  return *i;
}

inline std::vector<std::string> tuple_of(const Json& j, std::size_t n, const std::string& path) {
  if (!j.is_array() || j.size() != n)
    throw SchemaError(path + ": expected an array of " + std::to_string(n) + " names");
  std::vector<std::string> out;
  for (std::size_t i = 0; i < n; ++i) out.push_back(str(j[i], path + "[" + std::to_string(i) + "]"));
  return out;
}

inline NamedObject parse_groupoid(const std::string& name, const Json& j, const std::string& path) {
  object(j, path);
  std::vector<std::string> units, arrows, unit_identity;
  for (std::size_t i = 0; i < array(field(j, "units", path), path + ".units").size(); ++i) {
    std::string p = path + ".units[" + std::to_string(i) + "]";
    units.push_back(str(field(j["units"][i], "name", p), p + ".name"));
    unit_identity.push_back(str(field(j["units"][i], "identity", p), p + ".identity"));
  }
  const Json& ja = array(field(j, "arrows", path), path + ".arrows");
  if (ja.size() > max_arrows)
    throw CapExceeded(path + ": " + std::to_string(ja.size()) + " arrows exceed the cap of " +
                      std::to_string(max_arrows));
  auto find_in = [](const std::vector<std::string>& v) {
    return [&v](const std::string& n) -> std::optional<Index> {
      for (Index i = 0; i < v.size(); ++i)
        if (v[i] == n) return i;
      return std::nullopt;
    };
  };
  std::vector<Index> src, rng;
  for (std::size_t i = 0; i < ja.size(); ++i) {
    std::string p = path + ".arrows[" + std::to_string(i) + "]";
    arrows.push_back(str(field(ja[i], "name", p), p + ".name"));
  }
  for (std::size_t i = 0; i < ja.size(); ++i) {
    std::string p = path + ".arrows[" + std::to_string(i) + "]";
    src.push_back(lookup(find_in(units), str(field(ja[i], "src", p), p + ".src"), "unit", p + ".src"));
    rng.push_back(lookup(find_in(units), str(field(ja[i], "rng", p), p + ".rng"), "unit", p + ".rng"));
  }
  for (std::size_t i = 0; i < arrows.size(); ++i)
    for (std::size_t k = 0; k < i; ++k)
      if (arrows[i] == arrows[k]) throw SchemaError(path + ".arrows: duplicate arrow '" + arrows[i] + "'");
  std::vector<Index> identity;
  for (std::size_t u = 0; u < units.size(); ++u)
    identity.push_back(lookup(find_in(arrows), unit_identity[u], "arrow", path + ".units[" + std::to_string(u) + "]"));
  const std::size_t na = arrows.size();
  std::vector<Index> table(na * na, npos), inverse(na, npos);
  const Json& jc = array(field(j, "compose", path), path + ".compose");
  for (std::size_t i = 0; i < jc.size(); ++i) {
    std::string p = path + ".compose[" + std::to_string(i) + "]";
    auto t = tuple_of(jc[i], 3, p);
    Index a = lookup(find_in(arrows), t[0], "arrow", p);
    Index b = lookup(find_in(arrows), t[1], "arrow", p);
    Index c = lookup(find_in(arrows), t[2], "arrow", p);
    if (src[a] != rng[b]) throw SchemaError(p + ": " + t[0] + " and " + t[1] + " are not composable");
    table[a * na + b] = c;
  }
  const Json& ji = array(field(j, "inverse", path), path + ".inverse");
  for (std::size_t i = 0; i < ji.size(); ++i) {
    std::string p = path + ".inverse[" + std::to_string(i) + "]";
    auto t = tuple_of(ji[i], 2, p);
    inverse[lookup(find_in(arrows), t[0], "arrow", p)] = lookup(find_in(arrows), t[1], "arrow", p);
  }
  for (Index a = 0; a < na; ++a)
    if (inverse[a] == npos) throw SchemaError(path + ".inverse: no inverse for '" + arrows[a] + "'");
  HaarSystem haar{std::vector<Rational>(na, Rational(1))};
  if (j.contains("haar")) {
    const Json& jh = object(j["haar"], path + ".haar");
    std::vector<bool> seen(na, false);
    for (const auto& [k, v] : jh.items()) {
      Index a = lookup(find_in(arrows), k, "arrow", path + ".haar");
      haar.weight[a] = positive(v, path + ".haar." + k);
      seen[a] = true;
    }
    for (Index a = 0; a < na; ++a)
      if (!seen[a]) throw SchemaError(path + ".haar: no weight for '" + arrows[a] + "'");
  }
  Groupoid g(name, std::move(units), std::move(arrows), std::move(src), std::move(rng), std::move(identity),
             std::move(inverse), std::move(table));
  return NamedObject{name, HaarGroupoid{std::make_shared<const Groupoid>(std::move(g)), std::move(haar)}};
}

inline NamedBispace parse_bispace(const Instance& inst, const std::string& name, const Json& j,
                                  const std::string& path) {
  object(j, path);
  std::string ln = str(field(j, "left", path), path + ".left");
  std::string rn = str(field(j, "right", path), path + ".right");
  const HaarGroupoid* lo = nullptr;
  const HaarGroupoid* ro = nullptr;
  for (const auto& o : inst.objects) {
    if (o.name == ln) lo = &o.object;
    if (o.name == rn) ro = &o.object;
  }
  if (!lo) throw SchemaError(path + ".left: unknown groupoid '" + ln + "'");
  if (!ro) throw SchemaError(path + ".right: unknown groupoid '" + rn + "'");
  const Groupoid& G = lo->g();
  const Groupoid& H = ro->g();
  std::vector<std::string> points;
  const Json& jp = array(field(j, "points", path), path + ".points");
  if (jp.size() > max_points)
    throw CapExceeded(path + ": " + std::to_string(jp.size()) + " points exceed the cap of " +
                      std::to_string(max_points));
  for (std::size_t i = 0; i < jp.size(); ++i) points.push_back(str(jp[i], path + ".points[" + std::to_string(i) + "]"));
  for (std::size_t i = 0; i < points.size(); ++i)
    for (std::size_t k = 0; k < i; ++k)
      if (points[i] == points[k]) throw SchemaError(path + ".points: duplicate point '" + points[i] + "'");
  auto point = [&](const std::string& n) -> std::optional<Index> {
    for (Index i = 0; i < points.size(); ++i)
      if (points[i] == n) return i;
    return std::nullopt;
  };
  auto units_of = [&](const Groupoid& g, const std::string& key) {
    const Json& jm = array(field(j, key, path), path + "." + key);
    if (jm.size() != points.size()) throw SchemaError(path + "." + key + ": one unit per point expected");
    std::vector<Index> m;
    for (std::size_t i = 0; i < jm.size(); ++i) {
      std::string p = path + "." + key + "[" + std::to_string(i) + "]";
      m.push_back(lookup([&](const std::string& n) { return g.find_unit(n); }, str(jm[i], p), "unit", p));
    }
    return m;
  };
  std::vector<Index> rho = units_of(G, "rho"), sigma = units_of(H, "sigma");
  std::vector<Index> lt(points.size() * G.arrow_count(), npos), rt(points.size() * H.arrow_count(), npos);
  const Json& jl = array(field(j, "left_action", path), path + ".left_action");
  for (std::size_t i = 0; i < jl.size(); ++i) {
    std::string p = path + ".left_action[" + std::to_string(i) + "]";
    auto t = tuple_of(jl[i], 3, p);
    Index a = lookup([&](const std::string& n) { return G.find_arrow(n); }, t[0], "arrow", p);
    Index x = lookup(point, t[1], "point", p);
    Index y = lookup(point, t[2], "point", p);
    if (G.src(a) != rho[x]) throw SchemaError(p + ": " + t[0] + " cannot act on " + t[1]);
    lt[x * G.arrow_count() + a] = y;
  }
  const Json& jr = array(field(j, "right_action", path), path + ".right_action");
  for (std::size_t i = 0; i < jr.size(); ++i) {
    std::string p = path + ".right_action[" + std::to_string(i) + "]";
    auto t = tuple_of(jr[i], 3, p);
    Index x = lookup(point, t[0], "point", p);
    Index b = lookup([&](const std::string& n) { return H.find_arrow(n); }, t[1], "arrow", p);
    Index y = lookup(point, t[2], "point", p);
    if (H.rng(b) != sigma[x]) throw SchemaError(p + ": " + t[1] + " cannot act on " + t[0]);
    rt[x * H.arrow_count() + b] = y;
  }
  for (Index x = 0; x < points.size(); ++x) {
    for (Index a = 0; a < G.arrow_count(); ++a)
      if (G.src(a) == rho[x] && lt[x * G.arrow_count() + a] == npos)
        throw SchemaError(path + ".left_action: " + G.arrow_name(a) + " on " + points[x] + " is missing");
    for (Index b = 0; b < H.arrow_count(); ++b)
      if (H.rng(b) == sigma[x] && rt[x * H.arrow_count() + b] == npos)
        throw SchemaError(path + ".right_action: " + points[x] + " by " + H.arrow_name(b) + " is missing");
  }
  LeftAction left(lo->groupoid, std::move(rho), std::move(lt));
  RightAction right(ro->groupoid, std::move(sigma), std::move(rt));
  return NamedBispace{name, ln, rn, Bispace(std::move(points), std::move(left), std::move(right))};
}

template <class T>
void require_unique(const std::vector<T>& v, const std::string& section) {
  for (std::size_t i = 0; i < v.size(); ++i)
    for (std::size_t k = 0; k < i; ++k)
      if (v[i].name == v[k].name) throw SchemaError(section + ": duplicate name '" + v[i].name + "'");
}

}  // namespace detail

inline Instance from_json(const Json& j) {
  using namespace detail;
  object(j, "$");
  Instance inst;
  if (j.contains("name")) inst.name = str(j["name"], "name");
  if (j.contains("description")) inst.description = str(j["description"], "description");
  for (const auto& [k, v] : object(field(j, "groupoids", "$"), "groupoids").items())
    inst.objects.push_back(parse_groupoid(k, v, "groupoids." + k));
  if (j.contains("bispaces"))
    for (const auto& [k, v] : object(j["bispaces"], "bispaces").items())
      inst.bispaces.push_back(parse_bispace(inst, k, v, "bispaces." + k));
  if (j.contains("weights"))
    for (const auto& [k, v] : object(j["weights"], "weights").items()) {
      NamedWeights w{k, {}};
      for (const auto& [p, q] : object(v, "weights." + k).items())
        w.values.emplace_back(p, positive(q, "weights." + k + "." + p));
      inst.weights.push_back(std::move(w));
    }
  if (j.contains("correspondences"))
    for (const auto& [k, v] : object(j["correspondences"], "correspondences").items()) {
      std::string p = "correspondences." + k;
      CorrespondenceEntry c{k, str(field(v, "space", p), p + ".space"), str(field(v, "weights", p), p + ".weights")};
      inst.bispace(c.space);
      inst.weight(c.weights);
      inst.correspondences.push_back(std::move(c));
    }
  require_unique(inst.correspondences, "correspondences");
  auto has_corr = [&](const std::string& n) {
    for (const auto& c : inst.correspondences)
      if (c.name == n) return true;
    return false;
  };
  if (j.contains("cochains"))
    for (const auto& [k, v] : object(j["cochains"], "cochains").items()) {
      std::string p = "cochains." + k;
      CochainEntry c{k, str(field(v, "first", p), p + ".first"), str(field(v, "second", p), p + ".second"), {}};
      if (!has_corr(c.first)) throw SchemaError(p + ".first: unknown correspondence '" + c.first + "'");
      if (!has_corr(c.second)) throw SchemaError(p + ".second: unknown correspondence '" + c.second + "'");
      const Json& jv = array(field(v, "values", p), p + ".values");
      for (std::size_t i = 0; i < jv.size(); ++i) {
        std::string pi = p + ".values[" + std::to_string(i) + "]";
        if (!jv[i].is_array() || jv[i].size() != 3) throw SchemaError(pi + ": expected [x, y, value]");
        c.values.emplace_back(str(jv[i][0], pi), str(jv[i][1], pi), positive(jv[i][2], pi));
      }
      inst.cochains.push_back(std::move(c));
    }
  if (j.contains("isos"))
    for (const auto& [k, v] : object(j["isos"], "isos").items()) {
      std::string p = "isos." + k;
      IsoEntry e{k, str(field(v, "source", p), p + ".source"), str(field(v, "target", p), p + ".target"), {}};
      if (!has_corr(e.source)) throw SchemaError(p + ".source: unknown correspondence '" + e.source + "'");
      if (!has_corr(e.target)) throw SchemaError(p + ".target: unknown correspondence '" + e.target + "'");
      for (const auto& [a, b] : object(field(v, "map", p), p + ".map").items())
        e.map.emplace_back(a, str(b, p + ".map." + a));
      inst.isos.push_back(std::move(e));
    }
  if (j.contains("chains")) {
    const Json& jc = array(j["chains"], "chains");
    for (std::size_t i = 0; i < jc.size(); ++i) {
      std::string p = "chains[" + std::to_string(i) + "]";
      std::vector<std::string> chain;
      for (std::size_t k = 0; k < array(jc[i], p).size(); ++k) {
        chain.push_back(str(jc[i][k], p));
        if (!has_corr(chain.back())) throw SchemaError(p + ": unknown correspondence '" + chain.back() + "'");
      }
      inst.chains.push_back(std::move(chain));
    }
  }
  require_unique(inst.objects, "groupoids");
  require_unique(inst.bispaces, "bispaces");
  require_unique(inst.weights, "weights");
  require_unique(inst.cochains, "cochains");
  require_unique(inst.isos, "isos");
  return inst;
}

inline Instance parse_instance(const std::string& text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError("syntax error at " + detail::line_column(text, e.byte == 0 ? 0 : e.byte - 1) + ": " +
                     e.what());
  }
  return from_json(j);
}

inline Instance load_instance(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  try {
    return parse_instance(ss.str());
  } catch (const ParseError& e) {
    throw ParseError(path + ": " + e.what());
  }
}

inline Json groupoid_json(const HaarGroupoid& obj) {
  const Groupoid& g = obj.g();
  Json j;
  j["units"] = Json::array();
  for (Index u = 0; u < g.unit_count(); ++u)
    j["units"].push_back({{"name", g.unit_name(u)}, {"identity", g.arrow_name(g.identity(u))}});
  j["arrows"] = Json::array();
  for (Index a = 0; a < g.arrow_count(); ++a)
    j["arrows"].push_back(
        {{"name", g.arrow_name(a)}, {"src", g.unit_name(g.src(a))}, {"rng", g.unit_name(g.rng(a))}});
  j["compose"] = Json::array();
  for (Index a = 0; a < g.arrow_count(); ++a)
    for (Index b = 0; b < g.arrow_count(); ++b)
      if (g.src(a) == g.rng(b) && g.compose(a, b) != npos)
        j["compose"].push_back({g.arrow_name(a), g.arrow_name(b), g.arrow_name(g.compose(a, b))});
  j["inverse"] = Json::array();
  for (Index a = 0; a < g.arrow_count(); ++a) j["inverse"].push_back({g.arrow_name(a), g.arrow_name(g.inv(a))});
  j["haar"] = Json::object();
  for (Index a = 0; a < g.arrow_count(); ++a) j["haar"][g.arrow_name(a)] = to_string(obj.haar.weight[a]);
  return j;
}

inline Json bispace_json(const NamedBispace& b) {
  const Bispace& x = b.space;
  const Groupoid& G = x.left().groupoid();
  const Groupoid& H = x.right().groupoid();
  Json j;
  j["left"] = b.left;
  j["right"] = b.right;
  j["points"] = x.names();
  j["rho"] = Json::array();
  j["sigma"] = Json::array();
  for (Index p = 0; p < x.size(); ++p) {
    j["rho"].push_back(G.unit_name(x.rho(p)));
    j["sigma"].push_back(H.unit_name(x.sigma(p)));
  }
  j["left_action"] = Json::array();
  for (Index p = 0; p < x.size(); ++p)
    for (Index a : G.source_fiber(x.rho(p))) j["left_action"].push_back({G.arrow_name(a), x.name(p), x.name(x.left_act(a, p))});
  j["right_action"] = Json::array();
  for (Index p = 0; p < x.size(); ++p)
    for (Index e : H.range_fiber(x.sigma(p))) j["right_action"].push_back({x.name(p), H.arrow_name(e), x.name(x.right_act(p, e))});
  return j;
}

inline Json to_json(const Instance& inst) {
  Json j;
  if (!inst.name.empty()) j["name"] = inst.name;
  if (!inst.description.empty()) j["description"] = inst.description;
  j["groupoids"] = Json::object();
  for (const auto& o : inst.objects) j["groupoids"][o.name] = groupoid_json(o.object);
  j["bispaces"] = Json::object();
  for (const auto& b : inst.bispaces) j["bispaces"][b.name] = bispace_json(b);
  j["weights"] = Json::object();
  for (const auto& w : inst.weights) {
    Json v = Json::object();
    for (const auto& [p, q] : w.values) v[p] = to_string(q);
    j["weights"][w.name] = v;
  }
  j["correspondences"] = Json::object();
  for (const auto& c : inst.correspondences) j["correspondences"][c.name] = {{"space", c.space}, {"weights", c.weights}};
  if (!inst.cochains.empty()) {
    j["cochains"] = Json::object();
    for (const auto& c : inst.cochains) {
      Json v = Json::array();
      for (const auto& [x, y, q] : c.values) v.push_back({x, y, to_string(q)});
      j["cochains"][c.name] = {{"first", c.first}, {"second", c.second}, {"values", v}};
    }
  }
  if (!inst.isos.empty()) {
    j["isos"] = Json::object();
    for (const auto& e : inst.isos) {
      Json m = Json::object();
      for (const auto& [a, b] : e.map) m[a] = b;
      j["isos"][e.name] = {{"source", e.source}, {"target", e.target}, {"map", m}};
    }
  }
  if (!inst.chains.empty()) j["chains"] = inst.chains;
  return j;
}

inline std::string dump_instance(const Instance& inst) { return to_json(inst).dump(2) + "\n"; }

inline void save_instance(const Instance& inst, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path);
  out << dump_instance(inst);
}

/// Collects the groupoids, bispaces and weights of the given correspondences into one instance.
inline Instance instance_from(std::string name, const std::vector<Correspondence>& cs,
                              std::vector<std::vector<std::string>> chains = {}) {
  Instance inst;
  inst.name = std::move(name);
  auto add_object = [&](const HaarGroupoid& o) {
    for (const auto& e : inst.objects)
      if (e.name == o.g().name()) {
        if (!same_object(e.object, o)) throw SchemaError("two different groupoids named '" + o.g().name() + "'");
        return;
      }
    inst.objects.push_back({o.g().name(), o});
  };
  for (const auto& c : cs) {
    add_object(c.left());
    add_object(c.right());
    inst.bispaces.push_back({c.name(), c.left().g().name(), c.right().g().name(), c.space()});
    NamedWeights w{c.name(), {}};
    for (Index p = 0; p < c.size(); ++p) w.values.emplace_back(c.space().name(p), c.lambda(p));
    inst.weights.push_back(std::move(w));
    inst.correspondences.push_back({c.name(), c.name(), c.name()});
  }
  detail::require_unique(inst.correspondences, "correspondences");
  inst.chains = std::move(chains);
  return inst;
}

/// Structural equality of two instances.
inline bool same_instance(const Instance& a, const Instance& b) { return to_json(a) == to_json(b); }

}  // namespace topcorr::io
