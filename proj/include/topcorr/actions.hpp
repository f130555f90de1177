#pragma once

#include <algorithm>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "topcorr/groupoid.hpp"

namespace topcorr {

/// Right action x·a of a groupoid on a finite set, defined when moment(x) == rng(a).
class RightAction {
 public:
  RightAction() = default;
  RightAction(GroupoidPtr g, std::vector<Index> moment, std::vector<Index> table)
      : g_(std::move(g)), moment_(std::move(moment)), table_(std::move(table)) {
    if (table_.size() != moment_.size() * g_->arrow_count())
      throw SchemaError("right action: table size mismatch");
    for (Index m : moment_)
      if (m >= g_->unit_count()) throw SchemaError("right action: moment out of range");
    for (Index t : table_)
      if (t != npos && t >= moment_.size()) throw SchemaError("right action: image out of range");
  }

  static RightAction generate(GroupoidPtr g, std::vector<Index> moment,
                              const std::function<Index(Index, Index)>& act) {
    const std::size_t n = moment.size(), na = g->arrow_count();
    std::vector<Index> table(n * na, npos);
    for (Index p = 0; p < n; ++p)
      for (Index a = 0; a < na; ++a)
        if (moment[p] == g->rng(a)) table[p * na + a] = act(p, a);
    return RightAction(std::move(g), std::move(moment), std::move(table));
  }

  const Groupoid& groupoid() const { return *g_; }
  const GroupoidPtr& groupoid_ptr() const { return g_; }
  std::size_t size() const { return moment_.size(); }
  Index moment(Index p) const { return moment_[p]; }
  const std::vector<Index>& moments() const { return moment_; }

  Index act(Index p, Index a) const {
    if (moment_[p] != g_->rng(a)) return npos;
    return table_[p * g_->arrow_count() + a];
  }

 private:
  GroupoidPtr g_;
  std::vector<Index> moment_;
  std::vector<Index> table_;
};

/// Left action a·x, defined when src(a) == moment(x).
class LeftAction {
 public:
  LeftAction() = default;
  LeftAction(GroupoidPtr g, std::vector<Index> moment, std::vector<Index> table)
      : g_(std::move(g)), moment_(std::move(moment)), table_(std::move(table)) {
    if (table_.size() != moment_.size() * g_->arrow_count())
      throw SchemaError("left action: table size mismatch");
    for (Index m : moment_)
      if (m >= g_->unit_count()) throw SchemaError("left action: moment out of range");
    for (Index t : table_)
      if (t != npos && t >= moment_.size()) throw SchemaError("left action: image out of range");
  }

  static LeftAction generate(GroupoidPtr g, std::vector<Index> moment,
                             const std::function<Index(Index, Index)>& act) {
    const std::size_t n = moment.size(), na = g->arrow_count();
    std::vector<Index> table(n * na, npos);
    for (Index p = 0; p < n; ++p)
      for (Index a = 0; a < na; ++a)
        if (moment[p] == g->src(a)) table[p * na + a] = act(a, p);
    return LeftAction(std::move(g), std::move(moment), std::move(table));
  }

  const Groupoid& groupoid() const { return *g_; }
  const GroupoidPtr& groupoid_ptr() const { return g_; }
  std::size_t size() const { return moment_.size(); }
  Index moment(Index p) const { return moment_[p]; }
  const std::vector<Index>& moments() const { return moment_; }

  Index act(Index a, Index p) const {
    if (moment_[p] != g_->src(a)) return npos;
    return table_[p * g_->arrow_count() + a];
  }

 private:
  GroupoidPtr g_;
  std::vector<Index> moment_;
  std::vector<Index> table_;
};

/// x·a := a⁻¹·x
inline RightAction as_right(const LeftAction& l) {
  const Groupoid& g = l.groupoid();
  return RightAction::generate(l.groupoid_ptr(), l.moments(),
                               [&](Index p, Index a) { return l.act(g.inv(a), p); });
}

inline ValidationReport validate_action(const RightAction& act) {
  ValidationReport r;
  const Groupoid& g = act.groupoid();
  for (Index p = 0; p < act.size(); ++p) {
    for (Index a : g.range_fiber(act.moment(p))) {
      Index q = act.act(p, a);
      if (q == npos) {
        r.fail("action_total", std::to_string(p) + "." + g.arrow_name(a));
        continue;
      }
      if (act.moment(q) != g.src(a))
        r.fail("moment_equivariance", std::to_string(p) + "." + g.arrow_name(a));
    }
    if (act.act(p, g.identity(act.moment(p))) != p) r.fail("unit_acts_trivially", std::to_string(p));
  }
  if (!r.ok()) return r;
  for (Index p = 0; p < act.size(); ++p)
    for (Index a : g.range_fiber(act.moment(p)))
      for (Index b : g.range_fiber(g.src(a)))
        if (act.act(act.act(p, a), b) != act.act(p, g.compose(a, b)))
          r.fail("action_associativity",
                 std::to_string(p) + "," + g.arrow_name(a) + "," + g.arrow_name(b));
  return r;
}

inline ValidationReport validate_action(const LeftAction& act) { return validate_action(as_right(act)); }

/// Finite G-H bispace with named points.
class Bispace {
 public:
  Bispace() = default;
  Bispace(std::vector<std::string> names, LeftAction left, RightAction right)
      : names_(std::move(names)), left_(std::move(left)), right_(std::move(right)) {
    if (left_.size() != names_.size() || right_.size() != names_.size())
      throw SchemaError("bispace: action carrier size differs from point count");
  }

  std::size_t size() const { return names_.size(); }
  const std::string& name(Index p) const { return names_[p]; }
  const std::vector<std::string>& names() const { return names_; }
  std::optional<Index> find(const std::string& n) const {
    for (Index p = 0; p < names_.size(); ++p)
      if (names_[p] == n) return p;
    return std::nullopt;
  }

  const LeftAction& left() const { return left_; }
  const RightAction& right() const { return right_; }
  const Groupoid& left_groupoid() const { return left_.groupoid(); }
  const Groupoid& right_groupoid() const { return right_.groupoid(); }

  Index rho(Index p) const { return left_.moment(p); }
  Index sigma(Index p) const { return right_.moment(p); }
  Index left_act(Index a, Index p) const { return left_.act(a, p); }
  Index right_act(Index p, Index a) const { return right_.act(p, a); }

 private:
  std::vector<std::string> names_;
  LeftAction left_;
  RightAction right_;
};

inline ValidationReport validate_bispace(const Bispace& x) {
  ValidationReport r;
  r.merge(validate_action(x.left()), "left");
  r.merge(validate_action(x.right()), "right");
  if (!r.ok()) return r;
  const Groupoid& g = x.left_groupoid();
  const Groupoid& h = x.right_groupoid();
  for (Index p = 0; p < x.size(); ++p) {
    for (Index a : g.source_fiber(x.rho(p)))
      if (x.sigma(x.left_act(a, p)) != x.sigma(p))
        r.fail("sigma_left_invariant", g.arrow_name(a) + "." + x.name(p));
    for (Index b : h.range_fiber(x.sigma(p)))
      if (x.rho(x.right_act(p, b)) != x.rho(p))
        r.fail("rho_right_invariant", x.name(p) + "." + h.arrow_name(b));
  }
  if (!r.ok()) return r;
  for (Index p = 0; p < x.size(); ++p)
    for (Index a : g.source_fiber(x.rho(p)))
      for (Index b : h.range_fiber(x.sigma(p)))
        if (x.right_act(x.left_act(a, p), b) != x.left_act(a, x.right_act(p, b)))
          r.fail("actions_commute", g.arrow_name(a) + "," + x.name(p) + "," + h.arrow_name(b));
  return r;
}

/// Orbit partition; classes are numbered by their least member, which is also the representative.
struct Quotient {
  std::vector<Index> cls;
  std::vector<std::vector<Index>> members;

  std::size_t size() const { return members.size(); }
  Index rep(Index c) const { return members[c][0]; }
  Index operator()(Index p) const { return cls[p]; }
};

/// Orbits of the union of several right actions on the same carrier.
inline Quotient joint_orbits(std::size_t n, const std::vector<const RightAction*>& actions) {
  Quotient q;
  q.cls.assign(n, npos);
  for (Index start = 0; start < n; ++start) {
    if (q.cls[start] != npos) continue;
    Index c = q.members.size();
    q.members.emplace_back();
    std::vector<Index> stack{start};
    q.cls[start] = c;
    while (!stack.empty()) {
      Index p = stack.back();
      stack.pop_back();
      q.members[c].push_back(p);
      for (const RightAction* act : actions) {
        const Groupoid& g = act->groupoid();
        for (Index a : g.range_fiber(act->moment(p))) {
          Index t = act->act(p, a);
          if (t != npos && q.cls[t] == npos) {
            q.cls[t] = c;
            stack.push_back(t);
          }
        }
      }
    }
    std::sort(q.members[c].begin(), q.members[c].end());
  }
  return q;
}

inline Quotient orbit_quotient(const RightAction& act) { return joint_orbits(act.size(), {&act}); }

/// Transformation groupoid Z⋊G of a right action. Arrow (z, a) has rng z and src z·a;
/// arrows are ordered by z, then by the position of a in G^{moment(z)}.
class TransformationGroupoid {
 public:
  TransformationGroupoid() = default;
  TransformationGroupoid(RightAction action, HaarSystem haar)
      : action_(std::move(action)), haar_(std::move(haar)) {
    const Groupoid& g = action_.groupoid();
    require_haar_shape(g, haar_);
    offset_.assign(action_.size() + 1, 0);
    pos_.assign(g.arrow_count(), npos);
    for (Index u = 0; u < g.unit_count(); ++u) {
      auto f = g.range_fiber(u);
      for (Index i = 0; i < f.size(); ++i) pos_[f[i]] = i;
    }
    for (Index z = 0; z < action_.size(); ++z) {
      offset_[z] = point_.size();
      for (Index a : g.range_fiber(action_.moment(z))) {
        if (action_.act(z, a) == npos) throw SchemaError("transformation groupoid: partial action");
        point_.push_back(z);
        arrow_.push_back(a);
      }
    }
    offset_[action_.size()] = point_.size();
  }

  const RightAction& action() const { return action_; }
  const Groupoid& acting() const { return action_.groupoid(); }
  const HaarSystem& acting_haar() const { return haar_; }

  std::size_t unit_count() const { return action_.size(); }
  std::size_t arrow_count() const { return point_.size(); }

  Index point(Index k) const { return point_[k]; }
  Index group_arrow(Index k) const { return arrow_[k]; }
  Index rng(Index k) const { return point_[k]; }
  Index src(Index k) const { return action_.act(point_[k], arrow_[k]); }
  const Rational& haar(Index k) const { return haar_.weight[arrow_[k]]; }

  /// Arrows with rng z, i.e. T^z.
  std::pair<Index, Index> arrows_at(Index z) const { return {offset_[z], offset_[z + 1]}; }

  Index find(Index z, Index a) const {
    if (action_.moment(z) != acting().rng(a)) return npos;
    return offset_[z] + pos_[a];
  }
  Index unit_arrow(Index z) const { return find(z, acting().identity(action_.moment(z))); }
  Index inverse(Index k) const { return find(src(k), acting().inv(arrow_[k])); }
  /// k after l: defined when src(k) == rng(l).
  Index compose(Index k, Index l) const {
    if (src(k) != rng(l)) return npos;
    return find(point_[k], acting().compose(arrow_[k], arrow_[l]));
  }

  std::string arrow_label(Index k, const std::vector<std::string>& point_names) const {
    return "(" + point_names[point_[k]] + "," + acting().arrow_name(arrow_[k]) + ")";
  }

  Groupoid materialize(const std::vector<std::string>& point_names, std::string name = "T") const {
    std::vector<std::string> arrows;
    std::vector<Index> src_v, rng_v, inv_v, id;
    for (Index k = 0; k < arrow_count(); ++k) {
      arrows.push_back(arrow_label(k, point_names));
      src_v.push_back(src(k));
      rng_v.push_back(rng(k));
      inv_v.push_back(inverse(k));
    }
    for (Index z = 0; z < unit_count(); ++z) id.push_back(unit_arrow(z));
    return Groupoid::generate(std::move(name), point_names, arrows, src_v, rng_v, id, inv_v,
                              [this](Index k, Index l) { return compose(k, l); });
  }

  HaarSystem induced_haar() const {
    HaarSystem h;
    for (Index k = 0; k < arrow_count(); ++k) h.weight.push_back(haar(k));
    return h;
  }

 private:
  RightAction action_;
  HaarSystem haar_;
  std::vector<Index> point_, arrow_, offset_, pos_;
};

/// X ×_{H0} Y with the diagonal right H action (x,y)·h = (x·h, h⁻¹·y) and the outer actions.
struct FibreProduct {
  std::vector<std::pair<Index, Index>> pairs;
  std::vector<Index> lookup;
  std::size_t ny = 0;
  RightAction diagonal;
  LeftAction outer_left;
  RightAction outer_right;

  std::size_t size() const { return pairs.size(); }
  Index find(Index x, Index y) const { return lookup[x * ny + y]; }
};

inline FibreProduct fibre_product(const Bispace& x, const Bispace& y) {
  if (!(x.right_groupoid() == y.left_groupoid()))
    throw MismatchError("fibre product: right groupoid of first factor differs from left groupoid of second");
  FibreProduct z;
  z.ny = y.size();
  z.lookup.assign(x.size() * y.size(), npos);
  for (Index p = 0; p < x.size(); ++p)
    for (Index q = 0; q < y.size(); ++q)
      if (x.sigma(p) == y.rho(q)) {
        z.lookup[p * z.ny + q] = z.pairs.size();
        z.pairs.emplace_back(p, q);
      }
  const Groupoid& h = x.right_groupoid();
  std::vector<Index> mid, lm, rm;
  for (auto [p, q] : z.pairs) {
    mid.push_back(x.sigma(p));
    lm.push_back(x.rho(p));
    rm.push_back(y.sigma(q));
  }
  z.diagonal = RightAction::generate(x.right().groupoid_ptr(), mid, [&](Index k, Index a) {
    auto [p, q] = z.pairs[k];
    return z.find(x.right_act(p, a), y.left_act(h.inv(a), q));
  });
  z.outer_left = LeftAction::generate(x.left().groupoid_ptr(), lm, [&](Index a, Index k) {
    auto [p, q] = z.pairs[k];
    return z.find(x.left_act(a, p), q);
  });
  z.outer_right = RightAction::generate(y.right().groupoid_ptr(), rm, [&](Index k, Index a) {
    auto [p, q] = z.pairs[k];
    return z.find(p, y.right_act(q, a));
  });
  return z;
}

}  // namespace topcorr
