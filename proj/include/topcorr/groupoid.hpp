#pragma once

#include <array>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "topcorr/errors.hpp"
#include "topcorr/rational.hpp"
#include "topcorr/report.hpp"
#include "topcorr/weight_family.hpp"

namespace topcorr {

/// Finite groupoid given by explicit tables. Composition compose(a, b) is the
/// arrow "a after b" and is looked up only when src(a) == rng(b).
class Groupoid {
 public:
  Groupoid() = default;

  Groupoid(std::string name, std::vector<std::string> unit_names,
           std::vector<std::string> arrow_names, std::vector<Index> src,
           std::vector<Index> rng, std::vector<Index> identity,
           std::vector<Index> inverse, std::vector<Index> table)
      : name_(std::move(name)),
        unit_names_(std::move(unit_names)),
        arrow_names_(std::move(arrow_names)),
        src_(std::move(src)),
        rng_(std::move(rng)),
        identity_(std::move(identity)),
        inverse_(std::move(inverse)),
        table_(std::move(table)) {
    const std::size_t nu = unit_names_.size(), na = arrow_names_.size();
    if (src_.size() != na || rng_.size() != na || inverse_.size() != na)
      throw SchemaError("groupoid " + name_ + ": arrow table size mismatch");
    if (identity_.size() != nu)
      throw SchemaError("groupoid " + name_ + ": identity table size mismatch");
    if (table_.size() != na * na)
      throw SchemaError("groupoid " + name_ + ": composition table size mismatch");
    for (Index a = 0; a < na; ++a) {
      if (src_[a] >= nu || rng_[a] >= nu)
        throw SchemaError("groupoid " + name_ + ": arrow " + arrow_names_[a] + " has unknown unit");
      if (inverse_[a] >= na)
        throw SchemaError("groupoid " + name_ + ": arrow " + arrow_names_[a] + " has no inverse");
    }
    for (Index u = 0; u < nu; ++u)
      if (identity_[u] >= na)
        throw SchemaError("groupoid " + name_ + ": unit " + unit_names_[u] + " has no identity arrow");
    for (Index t : table_)
      if (t != npos && t >= na) throw SchemaError("groupoid " + name_ + ": composition out of range");
    range_fibers_.resize(nu);
    source_fibers_.resize(nu);
    for (Index a = 0; a < na; ++a) {
      range_fibers_[rng_[a]].push_back(a);
      source_fibers_[src_[a]].push_back(a);
    }
  }

  /// Builds the table from a multiplication rule evaluated on composable pairs.
  static Groupoid generate(std::string name, std::vector<std::string> unit_names,
                           std::vector<std::string> arrow_names, std::vector<Index> src,
                           std::vector<Index> rng, std::vector<Index> identity,
                           std::vector<Index> inverse,
                           const std::function<Index(Index, Index)>& mul) {
    const std::size_t na = arrow_names.size();
    std::vector<Index> table(na * na, npos);
    for (Index a = 0; a < na; ++a)
      for (Index b = 0; b < na; ++b)
        if (src[a] == rng[b]) table[a * na + b] = mul(a, b);
    return Groupoid(std::move(name), std::move(unit_names), std::move(arrow_names),
                    std::move(src), std::move(rng), std::move(identity), std::move(inverse),
                    std::move(table));
  }

  const std::string& name() const { return name_; }
  std::size_t unit_count() const { return unit_names_.size(); }
  std::size_t arrow_count() const { return arrow_names_.size(); }
  const std::string& unit_name(Index u) const { return unit_names_[u]; }
  const std::string& arrow_name(Index a) const { return arrow_names_[a]; }
  const std::vector<std::string>& unit_names() const { return unit_names_; }
  const std::vector<std::string>& arrow_names() const { return arrow_names_; }

  Index src(Index a) const { return src_[a]; }
  Index rng(Index a) const { return rng_[a]; }
  Index inv(Index a) const { return inverse_[a]; }
  Index identity(Index u) const { return identity_[u]; }
  bool composable(Index a, Index b) const { return src_[a] == rng_[b]; }

  /// a after b, or npos when src(a) != rng(b).
  Index compose(Index a, Index b) const {
    if (src_[a] != rng_[b]) return npos;
    return table_[a * arrow_count() + b];
  }
  Index raw_compose(Index a, Index b) const { return table_[a * arrow_count() + b]; }

  /// G^u
  std::span<const Index> range_fiber(Index u) const { return range_fibers_[u]; }
  /// G_u
  std::span<const Index> source_fiber(Index u) const { return source_fibers_[u]; }

  bool is_identity(Index a) const { return identity_[src_[a]] == a; }

  std::optional<Index> find_unit(const std::string& n) const {
    for (Index u = 0; u < unit_names_.size(); ++u)
      if (unit_names_[u] == n) return u;
    return std::nullopt;
  }
  std::optional<Index> find_arrow(const std::string& n) const {
    for (Index a = 0; a < arrow_names_.size(); ++a)
      if (arrow_names_[a] == n) return a;
    return std::nullopt;
  }

  /// Structural equality; the name is ignored.
  bool operator==(const Groupoid& o) const {
    return unit_names_ == o.unit_names_ && arrow_names_ == o.arrow_names_ && src_ == o.src_ &&
           rng_ == o.rng_ && identity_ == o.identity_ && inverse_ == o.inverse_ &&
           table_ == o.table_;
  }

 private:
  std::string name_;
  std::vector<std::string> unit_names_, arrow_names_;
  std::vector<Index> src_, rng_, identity_, inverse_, table_;
  std::vector<std::vector<Index>> range_fibers_, source_fibers_;
};

using GroupoidPtr = std::shared_ptr<const Groupoid>;

/// weight[a] is the weight of arrow a inside its range fiber G^{rng(a)}.
struct HaarSystem {
  std::vector<Rational> weight;
  bool operator==(const HaarSystem&) const = default;
};

/// An object of the bicategory: a groupoid together with a Haar system.
struct HaarGroupoid {
  GroupoidPtr groupoid;
  HaarSystem haar;

  const Groupoid& g() const { return *groupoid; }
  const Rational& alpha(Index a) const { return haar.weight[a]; }
};

inline bool same_object(const HaarGroupoid& a, const HaarGroupoid& b) {
  return (a.groupoid == b.groupoid || *a.groupoid == *b.groupoid) && a.haar == b.haar;
}

inline ValidationReport validate_groupoid(const Groupoid& g) {
  ValidationReport r;
  const auto an = [&](Index a) { return g.arrow_name(a); };
  for (Index u = 0; u < g.unit_count(); ++u) {
    Index e = g.identity(u);
    if (g.src(e) != u || g.rng(e) != u) r.fail("unit_arrow", "unit=" + g.unit_name(u));
  }
  for (Index a = 0; a < g.arrow_count(); ++a) {
    for (Index b = 0; b < g.arrow_count(); ++b) {
      if (!g.composable(a, b)) continue;
      Index ab = g.compose(a, b);
      if (ab == npos) {
        r.fail("comp_total", an(a) + "*" + an(b));
        continue;
      }
      if (g.rng(ab) != g.rng(a) || g.src(ab) != g.src(b))
        r.fail("comp_endpoints", an(a) + "*" + an(b));
    }
  }
  if (!r.ok()) return r;
  for (Index a = 0; a < g.arrow_count(); ++a) {
    if (g.compose(g.identity(g.rng(a)), a) != a || g.compose(a, g.identity(g.src(a))) != a)
      r.fail("identity_law", an(a));
    Index ia = g.inv(a);
    if (g.inv(ia) != a) r.fail("involution", an(a));
    if (g.rng(ia) != g.src(a) || g.src(ia) != g.rng(a)) {
      r.fail("inverse_endpoints", an(a));
      continue;
    }
    if (g.compose(a, ia) != g.identity(g.rng(a)) || g.compose(ia, a) != g.identity(g.src(a)))
      r.fail("inverse_law", an(a));
  }
  for (Index a = 0; a < g.arrow_count(); ++a)
    for (Index b : g.range_fiber(g.src(a)))
      for (Index c : g.range_fiber(g.src(b)))
        if (g.compose(g.compose(a, b), c) != g.compose(a, g.compose(b, c)))
          r.fail("associativity", an(a) + "," + an(b) + "," + an(c));
  return r;
}

/// Throws SchemaError when the weight table does not cover every arrow.
inline void require_haar_shape(const Groupoid& g, const HaarSystem& h) {
  if (h.weight.size() != g.arrow_count())
    throw SchemaError("haar system on " + g.name() + ": missing weight entries");
}

inline ValidationReport validate_haar(const Groupoid& g, const HaarSystem& h) {
  require_haar_shape(g, h);
  ValidationReport r;
  for (Index a = 0; a < g.arrow_count(); ++a)
    if (h.weight[a] <= 0) r.fail("positivity", g.arrow_name(a));
  for (Index gamma = 0; gamma < g.arrow_count(); ++gamma) {
    Index gi = g.inv(gamma);
    for (Index eta : g.range_fiber(g.rng(gamma))) {
      Index t = g.compose(gi, eta);
      if (t == npos) continue;
      if (h.weight[t] != h.weight[eta])
        r.fail("left_invariance", "gamma=" + g.arrow_name(gamma) + ",eta=" + g.arrow_name(eta));
    }
  }
  return r;
}

inline HaarSystem counting_haar(const Groupoid& g) {
  return HaarSystem{std::vector<Rational>(g.arrow_count(), Rational(1))};
}

/// alpha(gamma) = scale(src(gamma)); every left invariant system on a finite groupoid has this form.
inline HaarSystem scaled_haar(const Groupoid& g, const std::vector<Rational>& unit_scale) {
  HaarSystem h;
  h.weight.reserve(g.arrow_count());
  for (Index a = 0; a < g.arrow_count(); ++a) h.weight.push_back(unit_scale.at(g.src(a)));
  return h;
}

/// alpha^{-1}: family along src with weight of gamma = alpha(inv gamma).
inline WeightFamily invert_haar(const Groupoid& g, const HaarSystem& h) {
  WeightFamily w;
  w.base_size = g.unit_count();
  for (Index a = 0; a < g.arrow_count(); ++a) {
    w.target.push_back(g.src(a));
    w.weight.push_back(h.weight[g.inv(a)]);
  }
  return w;
}

/// The Haar system read back from a family along src (inverse of invert_haar).
inline HaarSystem haar_from_inverted(const Groupoid& g, const WeightFamily& w) {
  HaarSystem h;
  for (Index a = 0; a < g.arrow_count(); ++a) h.weight.push_back(w.weight[g.inv(a)]);
  return h;
}

/// Family of the Haar system itself, along rng.
inline WeightFamily haar_family(const Groupoid& g, const HaarSystem& h) {
  WeightFamily w;
  w.base_size = g.unit_count();
  w.target.assign(g.arrow_count(), 0);
  for (Index a = 0; a < g.arrow_count(); ++a) w.target[a] = g.rng(a);
  w.weight = h.weight;
  return w;
}

// ---- standard groupoids -------------------------------------------------

inline Groupoid cyclic_group(std::size_t n, std::string name = {}) {
  if (name.empty()) name = "Z" + std::to_string(n);
  std::vector<std::string> arrows;
  for (std::size_t k = 0; k < n; ++k) arrows.push_back(k == 0 ? "e" : "g" + std::to_string(k));
  if (n == 2) arrows[1] = "g";
  std::vector<Index> zero(n, 0), inv(n);
  for (std::size_t k = 0; k < n; ++k) inv[k] = (n - k) % n;
  return Groupoid::generate(name, {"*"}, arrows, zero, zero, {0}, inv,
                            [n](Index a, Index b) { return (a + b) % n; });
}

inline Groupoid trivial_group(std::string name = "1") { return cyclic_group(1, std::move(name)); }

/// Symmetric group on three letters; arrows listed as permutations in one-line notation.
inline Groupoid symmetric_group3(std::string name = "S3") {
  const std::vector<std::array<int, 3>> perms = {{0, 1, 2}, {1, 0, 2}, {0, 2, 1},
                                                 {2, 1, 0}, {1, 2, 0}, {2, 0, 1}};
  auto find = [&](const std::array<int, 3>& p) -> Index {
    for (Index i = 0; i < perms.size(); ++i)
      if (perms[i] == p) return i;
    return npos;
  };
  std::vector<std::string> names;
  for (auto& p : perms)
    names.push_back("p" + std::to_string(p[0]) + std::to_string(p[1]) + std::to_string(p[2]));
  names[0] = "e";
  std::vector<Index> inv(6);
  for (Index i = 0; i < 6; ++i) {
    std::array<int, 3> q{};
    for (int k = 0; k < 3; ++k) q[perms[i][k]] = k;
    inv[i] = find(q);
  }
  std::vector<Index> zero(6, 0);
  return Groupoid::generate(name, {"*"}, names, zero, zero, {0}, inv, [&](Index a, Index b) {
    std::array<int, 3> c{};
    for (int k = 0; k < 3; ++k) c[k] = perms[a][perms[b][k]];
    return find(c);
  });
}

/// Pair groupoid on n units; arrow (i,j) has rng i and src j.
inline Groupoid pair_groupoid(std::size_t n, std::string name = {}) {
  if (name.empty()) name = "Pair" + std::to_string(n);
  std::vector<std::string> units, arrows;
  std::vector<Index> src, rng, inv, id(n);
  for (std::size_t i = 0; i < n; ++i) units.push_back(std::to_string(i + 1));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      arrows.push_back("(" + units[i] + "," + units[j] + ")");
      rng.push_back(i);
      src.push_back(j);
      inv.push_back(j * n + i);
      if (i == j) id[i] = i * n + j;
    }
  return Groupoid::generate(name, units, arrows, src, rng, id, inv,
                            [n](Index a, Index b) { return (a / n) * n + (b % n); });
}

/// A set viewed as a groupoid with only unit arrows.
inline Groupoid space_groupoid(const std::vector<std::string>& points, std::string name) {
  const std::size_t n = points.size();
  std::vector<Index> idx(n);
  for (Index i = 0; i < n; ++i) idx[i] = i;
  return Groupoid::generate(std::move(name), points, points, idx, idx, idx, idx,
                            [](Index a, Index) { return a; });
}

/// Product groupoid; arrow (a,b) has index a * |H| + b, unit (u,v) index u * |H0| + v.
inline Groupoid product_groupoid(const Groupoid& g, const Groupoid& h) {
  const std::size_t ga = g.arrow_count(), ha = h.arrow_count(), hu = h.unit_count();
  std::vector<std::string> units, arrows;
  std::vector<Index> src, rng, inv, id;
  for (Index u = 0; u < g.unit_count(); ++u)
    for (Index v = 0; v < hu; ++v) {
      units.push_back("(" + g.unit_name(u) + "," + h.unit_name(v) + ")");
      id.push_back(g.identity(u) * ha + h.identity(v));
    }
  for (Index a = 0; a < ga; ++a)
    for (Index b = 0; b < ha; ++b) {
      arrows.push_back("(" + g.arrow_name(a) + "," + h.arrow_name(b) + ")");
      src.push_back(g.src(a) * hu + h.src(b));
      rng.push_back(g.rng(a) * hu + h.rng(b));
      inv.push_back(g.inv(a) * ha + h.inv(b));
    }
  return Groupoid::generate(g.name() + "x" + h.name(), units, arrows, src, rng, id, inv,
                            [&](Index x, Index y) {
                              return g.compose(x / ha, y / ha) * ha + h.compose(x % ha, y % ha);
                            });
}

inline HaarSystem product_haar(const Groupoid& g, const HaarSystem& a, const Groupoid& h,
                               const HaarSystem& b) {
  HaarSystem out;
  for (Index x = 0; x < g.arrow_count(); ++x)
    for (Index y = 0; y < h.arrow_count(); ++y) out.weight.push_back(a.weight[x] * b.weight[y]);
  return out;
}

}  // namespace topcorr
