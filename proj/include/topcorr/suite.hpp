#pragma once

#include <chrono>
#include <functional>
#include <future>
#include <iomanip>
#include <set>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "topcorr/bicategory.hpp"
#include "topcorr/cstar/functor.hpp"
#include "topcorr/io/instance.hpp"
#include "topcorr/measure_calculus.hpp"

namespace topcorr {

enum class Status { pass, fail, skip };

inline const char* status_name(Status s) {
  switch (s) {
    case Status::pass: return "pass";
    case Status::fail: return "fail";
    case Status::skip: return "skip";
  }
  return "?";
}

struct CheckResult {
  std::string suite, check, subject;
  Status status = Status::pass;
  std::string detail;
  double residual = -1.0;  // negative when the check is exact
  double millis = 0.0;
};

struct Report {
  std::string instance;
  std::vector<CheckResult> checks;

  std::size_t failures() const {
    std::size_t n = 0;
    for (const auto& c : checks)
      if (c.status == Status::fail) ++n;
    return n;
  }
  bool ok() const { return failures() == 0; }
  void append(const Report& other) { checks.insert(checks.end(), other.checks.begin(), other.checks.end()); }
};

enum class Suite { definition, composition, bicategory, functor, measures, all };

inline std::optional<Suite> parse_suite(const std::string& s) {
  if (s == "definition") return Suite::definition;
  if (s == "composition") return Suite::composition;
  if (s == "bicategory") return Suite::bicategory;
  if (s == "functor") return Suite::functor;
  if (s == "measures") return Suite::measures;
  if (s == "all") return Suite::all;
  return std::nullopt;
}

struct SuiteOptions {
  double tolerance = 1e-9;
  std::size_t random_instances = 100;
  std::uint64_t seed = 1;
  bool parallel = true;
};

namespace suite_detail {

using Task = std::function<std::vector<CheckResult>()>;

inline CheckResult make(const std::string& suite, const std::string& check, const std::string& subject,
                        const ValidationReport& r) {
  return {suite, check, subject, r.ok() ? Status::pass : Status::fail, r.ok() ? "" : r.summary()};
}

inline CheckResult make(const std::string& suite, const std::string& check, const std::string& subject, bool ok,
                        std::string detail = {}) {
  return {suite, check, subject, ok ? Status::pass : Status::fail, std::move(detail)};
}

inline CheckResult make(const std::string& suite, const std::string& check, const std::string& subject,
                        const cstar::Residual& r, double tol) {
  CheckResult c{suite, check, subject, r.within(tol) ? Status::pass : Status::fail, {}, r.value};
  if (!r.within(tol)) c.detail = "worst at " + r.where;
  return c;
}

/// Runs tasks, concurrently if asked, and concatenates their results in task order.
inline std::vector<CheckResult> run_tasks(const std::string& suite, const std::vector<Task>& tasks, bool parallel) {
  auto guarded = [&suite](const Task& t) {
    auto start = std::chrono::steady_clock::now();
    std::vector<CheckResult> out;
    try {
      out = t();
    } catch (const std::exception& e) {
      out.push_back({suite, "exception", "", Status::fail, e.what()});
    }
    double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    for (auto& c : out) c.millis = ms / static_cast<double>(std::max<std::size_t>(out.size(), 1));
    return out;
  };
  std::vector<std::vector<CheckResult>> parts(tasks.size());
  if (parallel && tasks.size() > 1) {
    const std::size_t width = std::max(1u, std::thread::hardware_concurrency());
    for (std::size_t begin = 0; begin < tasks.size(); begin += width) {
      std::vector<std::future<std::vector<CheckResult>>> fs;
      for (std::size_t i = begin; i < std::min(tasks.size(), begin + width); ++i)
        fs.push_back(std::async(std::launch::async, guarded, std::cref(tasks[i])));
      for (std::size_t i = 0; i < fs.size(); ++i) parts[begin + i] = fs[i].get();
    }
  } else {
    for (std::size_t i = 0; i < tasks.size(); ++i) parts[i] = guarded(tasks[i]);
  }
  std::vector<CheckResult> out;
  for (auto& p : parts) out.insert(out.end(), p.begin(), p.end());
  return out;
}

inline std::string delta_table(const Correspondence& c) {
  std::string s;
  const Groupoid& g = c.left().g();
  const Bispace& x = c.space();
  for (Index a = 0; a < g.arrow_count(); ++a)
    for (Index p = 0; p < x.size(); ++p)
      if (g.src(a) == x.rho(p)) {
        if (!s.empty()) s += " ";
        s += "(" + g.arrow_name(a) + "," + x.name(p) + ")=" + to_string(c.delta(a, p));
      }
  return s;
}

/// Objects, bispaces and correspondences that passed their structural checks.
struct Prepared {
  std::vector<Correspondence> usable;
  std::vector<std::pair<std::string, std::string>> rejected;  // name, reason
  std::set<std::string> good_objects;

  const Correspondence* find(const std::string& n) const {
    for (const auto& c : usable)
      if (c.name() == n) return &c;
    return nullptr;
  }
};

inline bool object_ok(const HaarGroupoid& o) {
  if (!validate_groupoid(o.g()).ok()) return false;
  if (o.haar.weight.size() != o.g().arrow_count()) return false;
  return validate_haar(o.g(), o.haar).ok();
}

inline Prepared prepare(const io::Instance& inst) {
  Prepared p;
  for (const auto& o : inst.objects)
    if (object_ok(o.object)) p.good_objects.insert(o.name);
  for (const auto& e : inst.correspondences) {
    const auto& b = inst.bispace(e.space);
    if (!p.good_objects.count(b.left) || !p.good_objects.count(b.right)) {
      p.rejected.emplace_back(e.name, "groupoid " + (p.good_objects.count(b.left) ? b.right : b.left) + " is invalid");
      continue;
    }
    if (!validate_bispace(b.space).ok()) {
      p.rejected.emplace_back(e.name, "bispace " + b.name + " is invalid");
      continue;
    }
    try {
      Correspondence c = inst.correspondence(e.name);
      ValidationReport r = validate_correspondence(c);
      if (!r.ok()) {
        p.rejected.emplace_back(e.name, r.summary());
        continue;
      }
      p.usable.push_back(std::move(c));
    } catch (const Error& ex) {
      p.rejected.emplace_back(e.name, ex.what());
    }
  }
  return p;
}

/// Adjacent windows of the given length over every chain, without repeats.
inline std::vector<std::vector<std::string>> windows(const io::Instance& inst, std::size_t len) {
  std::vector<std::vector<std::string>> out;
  std::set<std::vector<std::string>> seen;
  for (const auto& chain : inst.chains)
    for (std::size_t i = 0; i + len <= chain.size(); ++i) {
      std::vector<std::string> w(chain.begin() + i, chain.begin() + i + len);
      if (seen.insert(w).second) out.push_back(std::move(w));
    }
  return out;
}

inline std::string join(const std::vector<std::string>& v, const std::string& sep = ".") {
  std::string s;
  for (const auto& x : v) s += (s.empty() ? "" : sep) + x;
  return s;
}

/// Resolves a window to usable correspondences, or explains why not.
inline std::optional<std::vector<Correspondence>> resolve(const Prepared& p, const std::vector<std::string>& w,
                                                          std::string& why) {
  std::vector<Correspondence> out;
  for (const auto& n : w) {
    const Correspondence* c = p.find(n);
    if (!c) {
      why = n + " did not pass validation";
      return std::nullopt;
    }
    out.push_back(*c);
  }
  for (std::size_t i = 0; i + 1 < out.size(); ++i)
    if (!same_object(out[i].right(), out[i + 1].left())) {
      why = out[i].name() + " and " + out[i + 1].name() + " are not composable";
      return std::nullopt;
    }
  return out;
}

/// A window with an invalid member is skipped; its failure is reported by the definition suite.
inline CheckResult unresolved(const std::string& suite, const std::string& subject, const std::string& why) {
  bool invalid = why.find("did not pass validation") != std::string::npos;
  return {suite, "composable", subject, invalid ? Status::skip : Status::fail, why};
}

inline void require_module_cap(const Correspondence& c) {
  if (c.size() > io::max_module_dim)
    throw CapExceeded(c.name() + ": module dimension " + std::to_string(c.size()) + " exceeds the cap of " +
                      std::to_string(io::max_module_dim));
}

/// A second cochain for X∘Y: b times a function of the orbits of H and the outer right groupoid.
inline ZeroCochain alternative_cochain(const Composite& c) {
  Quotient q = joint_orbits(c.fibre.size(), {&c.fibre.diagonal, &c.fibre.outer_right});
  ZeroCochain b2(c.cochain.size());
  for (Index z = 0; z < b2.size(); ++z) b2[z] = c.cochain[z] * Rational(static_cast<long long>(q.cls[z]) + 2);
  return b2;
}

inline std::optional<ZeroCochain> supplied_cochain(const io::Instance& inst, const Composite& c) {
  for (const auto& e : inst.cochains)
    if (e.first == c.first.name() && e.second == c.second.name()) return io::cochain_on(e, c);
  return std::nullopt;
}

inline CorrIso identity_map_iso(const Correspondence& s, const Correspondence& t) {
  std::vector<Index> id(s.size());
  for (Index i = 0; i < id.size(); ++i) id[i] = i;
  return make_iso(s, t, std::move(id));
}

}  // namespace suite_detail

/// Exact checks that the identity module reproduces convolution and f**g, plus the algebra laws.
inline ValidationReport check_identity_module_exact(const HaarGroupoid& obj) {
  ValidationReport r;
  Correspondence id = identity_correspondence(obj);
  cstar::HilbertBimodule<Rational> m(id);
  const auto& A = m.left_algebra();
  const Groupoid& g = obj.g();
  const std::size_t n = A.dim();
  std::vector<std::vector<Rational>> probes;
  for (Index a = 0; a < n; ++a) probes.push_back(A.dirac(a));
  std::vector<Rational> ramp(n), other(n);
  for (Index a = 0; a < n; ++a) {
    ramp[a] = Rational(static_cast<long long>(a) + 1, 2);
    other[a] = Rational(1, static_cast<long long>(a) + 2);
  }
  probes.push_back(ramp);
  probes.push_back(other);
  auto label = [&](Index i) { return i < n ? g.arrow_name(i) : std::string(i == n ? "ramp" : "other"); };
  for (Index i = 0; i < probes.size(); ++i)
    for (Index j = 0; j < probes.size(); ++j) {
      const auto& f = probes[i];
      const auto& h = probes[j];
      auto fh = A.convolve(f, h);
      if (m.right(f, h) != fh) r.fail("right_action_is_convolution", label(i) + "," + label(j));
      if (m.left(f, h) != fh) r.fail("left_action_is_convolution", label(i) + "," + label(j));
      if (m.inner(f, h) != A.convolve(A.involute(f), h)) r.fail("inner_is_involution_product", label(i) + "," + label(j));
      if (A.involute(fh) != A.convolve(A.involute(h), A.involute(f))) r.fail("involution_antihomomorphism", label(i) + "," + label(j));
      for (Index k = 0; k < probes.size(); ++k)
        if (A.convolve(fh, probes[k]) != A.convolve(f, A.convolve(h, probes[k])))
          r.fail("associativity", label(i) + "," + label(j) + "," + label(k));
    }
  auto u = A.unit();
  for (Index i = 0; i < probes.size(); ++i)
    if (A.convolve(u, probes[i]) != probes[i] || A.convolve(probes[i], u) != probes[i]) r.fail("unit", label(i));
  return r;
}

inline Report run_definition(const io::Instance& inst, const SuiteOptions& opt) {
  using namespace suite_detail;
  const std::string S = "definition";
  std::vector<Task> tasks;
  for (const auto& o : inst.objects)
    tasks.push_back([&o, S]() {
      std::vector<CheckResult> out;
      ValidationReport gr = validate_groupoid(o.object.g());
      out.push_back(make(S, "groupoid_axioms", o.name, gr));
      if (!gr.ok()) return out;
      ValidationReport hr = validate_haar(o.object.g(), o.object.haar);
      out.push_back(make(S, "haar_system", o.name, hr));
      if (!hr.ok()) return out;
      Correspondence id = identity_correspondence(o.object);
      bool ones = true;
      for (const Rational& v : id.delta().value)
        if (v != 0 && v != 1) ones = false;
      out.push_back(make(S, "identity_adjoining_is_one", o.name, ones));
      return out;
    });
  for (const auto& b : inst.bispaces)
    tasks.push_back([&inst, &b, S]() {
      std::vector<CheckResult> out;
      if (!object_ok(inst.object(b.left)) || !object_ok(inst.object(b.right))) {
        out.push_back({S, "bispace", b.name, Status::skip, "groupoid invalid"});
        return out;
      }
      out.push_back(make(S, "bispace", b.name, validate_bispace(b.space)));
      return out;
    });
  for (const auto& e : inst.correspondences)
    tasks.push_back([&inst, &e, S]() {
      std::vector<CheckResult> out;
      const auto& b = inst.bispace(e.space);
      if (!object_ok(inst.object(b.left)) || !object_ok(inst.object(b.right)) || !validate_bispace(b.space).ok()) {
        out.push_back({S, "correspondence", e.name, Status::skip, "depends on an invalid groupoid or bispace"});
        return out;
      }
      Correspondence c = inst.correspondence(e.name);
      out.push_back(make(S, "correspondence", e.name, validate_correspondence(c)));
      bool agree = false;
      std::string why;
      try {
        agree = modular_from_identity(c.family(), c.space().left(), c.left().haar) == c.delta();
        if (!agree) why = "closed form differs from the integral identity";
      } catch (const Error& ex) {
        why = ex.what();
      }
      out.push_back(make(S, "adjoining_certified", e.name, agree, agree ? delta_table(c) : why));
      return out;
    });
  Report r{inst.name, run_tasks(S, tasks, opt.parallel)};
  return r;
}

inline Report run_composition(const io::Instance& inst, const SuiteOptions& opt) {
  using namespace suite_detail;
  const std::string S = "composition";
  Prepared p = prepare(inst);
  std::vector<Task> tasks;
  for (const auto& w : windows(inst, 2))
    tasks.push_back([&inst, &p, w, S]() {
      std::vector<CheckResult> out;
      std::string subject = join(w), why;
      auto cs = resolve(p, w, why);
      if (!cs) {
        out.push_back(unresolved(S, subject, why));
        return out;
      }
      const Correspondence& x = (*cs)[0];
      const Correspondence& y = (*cs)[1];
      Composite c = compose(x, y);
      require_module_cap(c.result);
      out.push_back(make(S, "composite_valid", subject, validate_correspondence(c.result)));
      bool formula = false;
      std::string detail;
      try {
        formula = composite_delta_formula(c) == c.result.delta();
        if (!formula) detail = "composite adjoining function differs from the closed form";
      } catch (const Error& ex) {
        detail = ex.what();
      }
      out.push_back(make(S, "composite_adjoining_formula", subject, formula, detail));

      auto supplied = supplied_cochain(inst, c);
      ZeroCochain b2 = supplied ? *supplied : alternative_cochain(c);
      Composite c2 = compose(x, y, b2);
      auto found = find_iso(c.result, c2.result);
      out.push_back(make(S, "lifted_cochains_isomorphic", subject, found.has_value(),
                         found ? "" : "no isomorphism between the two composites"));
      CorrIso iso = identity_map_iso(c.result, c2.result);
      ValidationReport vr = validate_iso(iso);
      if (found) vr.merge(validate_iso(*found), "found");
      out.push_back(make(S, "lifted_cochains_iso_valid", subject, vr));
      std::vector<Rational> cq = cochain_quotient(c.cochain, b2, c.middle, c.quotient);
      out.push_back(make(S, "lifted_cochains_derivative", subject, iso.derivative == cq,
                         iso.derivative == cq ? "" : "derivative differs from the descended b'/b"));
      return out;
    });
  Report r{inst.name, run_tasks(S, tasks, opt.parallel)};
  for (const auto& [n, why] : p.rejected) r.checks.push_back({S, "prerequisites", n, Status::skip, why});
  return r;
}

inline Report run_bicategory(const io::Instance& inst, const SuiteOptions& opt) {
  using namespace suite_detail;
  const std::string S = "bicategory";
  Prepared p = prepare(inst);
  std::vector<Task> tasks;
  for (const auto& w : windows(inst, 3))
    tasks.push_back([&p, w, S]() {
      std::vector<CheckResult> out;
      std::string subject = join(w), why;
      auto cs = resolve(p, w, why);
      if (!cs) {
        out.push_back(unresolved(S, subject, why));
        return out;
      }
      Bicategory bc;
      const Associator& a = bc.associator((*cs)[0], (*cs)[1], (*cs)[2]);
      out.push_back(make(S, "associator_construction", subject, a.report));
      out.push_back(make(S, "associator_valid", subject, validate_iso(a.iso)));
      bool rn = a.iso.pushforward_derivative() == a.expected;
      out.push_back(make(S, "associator_derivative", subject, rn, rn ? "" : "differs from [B'/B'']∘a''⁻¹"));
      return out;
    });
  for (const auto& w : windows(inst, 4))
    tasks.push_back([&p, w, S]() {
      std::vector<CheckResult> out;
      std::string subject = join(w), why;
      auto cs = resolve(p, w, why);
      if (!cs) {
        out.push_back(unresolved(S, subject, why));
        return out;
      }
      Bicategory bc;
      out.push_back(make(S, "pentagon", subject, check_pentagon(bc, (*cs)[0], (*cs)[1], (*cs)[2], (*cs)[3])));
      return out;
    });
  for (const auto& w : windows(inst, 2))
    tasks.push_back([&p, w, S]() {
      std::vector<CheckResult> out;
      std::string subject = join(w), why;
      auto cs = resolve(p, w, why);
      if (!cs) {
        out.push_back(unresolved(S, subject, why));
        return out;
      }
      Bicategory bc;
      out.push_back(make(S, "triangle", subject, check_triangle(bc, (*cs)[0], (*cs)[1])));
      return out;
    });
  for (const auto& c : p.usable)
    tasks.push_back([&c, S]() {
      std::vector<CheckResult> out;
      Bicategory bc;
      const Unitor& l = bc.left_unitor(c);
      const Unitor& r = bc.right_unitor(c);
      out.push_back(make(S, "left_unitor_valid", c.name(), validate_iso(l.iso)));
      out.push_back(make(S, "left_unitor_derivative", c.name(), l.iso.pushforward_derivative() == l.expected));
      out.push_back(make(S, "right_unitor_valid", c.name(), validate_iso(r.iso)));
      out.push_back(make(S, "right_unitor_derivative", c.name(), r.iso.pushforward_derivative() == r.expected));
      out.push_back(make(S, "triangle_left_identity", c.name(), check_triangle(bc, bc.identity(c.left()), c)));
      out.push_back(make(S, "triangle_right_identity", c.name(), check_triangle(bc, c, bc.identity(c.right()))));
      return out;
    });
  Report r{inst.name, run_tasks(S, tasks, opt.parallel)};
  for (const auto& [n, why] : p.rejected) r.checks.push_back({S, "prerequisites", n, Status::skip, why});
  return r;
}

inline Report run_functor(const io::Instance& inst, const SuiteOptions& opt) {
  using namespace suite_detail;
  using namespace cstar;
  const std::string S = "functor";
  const double tol = opt.tolerance;
  Prepared p = prepare(inst);
  std::vector<Task> tasks;
  for (const auto& o : inst.objects)
    tasks.push_back([&o, &p, S]() {
      std::vector<CheckResult> out;
      if (!p.good_objects.count(o.name)) {
        out.push_back({S, "identity_module_exact", o.name, Status::skip, "groupoid invalid"});
        return out;
      }
      out.push_back(make(S, "identity_module_exact", o.name, check_identity_module_exact(o.object)));
      return out;
    });
  for (const auto& c : p.usable)
    tasks.push_back([&c, S, tol]() {
      std::vector<CheckResult> out;
      require_module_cap(c);
      BuiltModule m = build_module(c);
      AxiomResiduals ax = check_module_axioms(m.matrices, m.module.left_algebra(), m.module.right_algebra());
      out.push_back(make(S, "left_action_homomorphism", c.name(), ax.left_homomorphism, tol));
      out.push_back(make(S, "left_action_adjointable", c.name(), ax.left_adjointable, tol));
      out.push_back(make(S, "right_action_module", c.name(), ax.right_module, tol));
      out.push_back(make(S, "actions_commute", c.name(), ax.actions_commute, tol));
      out.push_back(make(S, "inner_right_linear", c.name(), ax.inner_right_linear, tol));
      out.push_back(make(S, "inner_hermitian", c.name(), ax.inner_hermitian, tol));
      out.push_back(make(S, "gram_positive", c.name(), ax.positivity, tol));
      Bicategory bc;
      IdentityCoherence ic = check_identity_coherence(bc, c);
      out.push_back(make(S, "identity_coherence_left", c.name(), ic.left, tol));
      out.push_back(make(S, "identity_coherence_right", c.name(), ic.right, tol));
      InducedUnitary ti = unitary_from_iso(identity_iso(c));
      Residual idr;
      idr.update(scaled_difference(ti.t, Matrix::Identity(c.size(), c.size())), c.name());
      out.push_back(make(S, "unitary_of_identity", c.name(), idr, tol));
      const CorrIso& l = bc.left_unitor(c).iso;
      out.push_back(make(S, "unitary_left_unitor", c.name(), Residual{check_unitary(l, unitary_from_iso(l)).max(), c.name()}, tol));
      const CorrIso& r = bc.right_unitor(c).iso;
      out.push_back(make(S, "unitary_right_unitor", c.name(), Residual{check_unitary(r, unitary_from_iso(r)).max(), c.name()}, tol));
      out.push_back(make(S, "unitary_functorial", c.name(), check_unitary_functoriality(l, inverse_iso(l)), tol));
      return out;
    });
  for (const auto& w : windows(inst, 2))
    tasks.push_back([&inst, &p, w, S, tol]() {
      std::vector<CheckResult> out;
      std::string subject = join(w), why;
      auto cs = resolve(p, w, why);
      if (!cs) {
        out.push_back(unresolved(S, subject, why));
        return out;
      }
      Composite c = compose((*cs)[0], (*cs)[1]);
      require_module_cap(c.result);
      PhiReport ph = check_phi(c, tol);
      out.push_back(make(S, "phi_well_defined", subject, ph.well_defined, tol));
      out.push_back(make(S, "phi_isometric", subject, ph.isometry, tol));
      out.push_back(make(S, "phi_left_intertwining", subject, ph.left, tol));
      out.push_back(make(S, "phi_right_intertwining", subject, ph.right, tol));
      out.push_back(make(S, "phi_onto", subject, ph.onto() && ph.quotient_unitary.within(tol),
                         "omega " + std::to_string(ph.omega) + ", tensor rank " + std::to_string(ph.tensor_rank) +
                             ", image rank " + std::to_string(ph.image_rank)));
      auto supplied = supplied_cochain(inst, c);
      Composite c2 = compose((*cs)[0], (*cs)[1], supplied ? *supplied : alternative_cochain(c));
      CorrIso t = identity_map_iso(c.result, c2.result);
      CorrIso back = inverse_iso(t);
      UnitaryReport ur = check_unitary(t, unitary_from_iso(t));
      out.push_back(make(S, "unitary_lifted_cochains", subject, Residual{ur.max(), subject}, tol));
      Residual fr = check_unitary_functoriality(t, back);
      Residual fr2 = check_unitary_functoriality(compose_iso_vertical(t, back), t);
      fr.update(std::max(fr.value, fr2.value), subject);
      out.push_back(make(S, "unitary_functorial", subject, fr, tol));
      return out;
    });
  for (const auto& w : windows(inst, 3))
    tasks.push_back([&p, w, S, tol]() {
      std::vector<CheckResult> out;
      std::string subject = join(w), why;
      auto cs = resolve(p, w, why);
      if (!cs) {
        out.push_back(unresolved(S, subject, why));
        return out;
      }
      Bicategory bc;
      out.push_back(make(S, "functor_pentagon", subject, check_functor_pentagon(bc, (*cs)[0], (*cs)[1], (*cs)[2]), tol));
      const CorrIso& a = bc.associator((*cs)[0], (*cs)[1], (*cs)[2]).iso;
      out.push_back(make(S, "unitary_associator", subject, Residual{check_unitary(a, unitary_from_iso(a)).max(), subject}, tol));
      return out;
    });
  for (const auto& e : inst.isos)
    tasks.push_back([&p, &e, S, tol]() {
      std::vector<CheckResult> out;
      const Correspondence* s = p.find(e.source);
      const Correspondence* t = p.find(e.target);
      if (!s || !t) {
        out.push_back(make(S, "iso", e.name, false, "source or target did not pass validation"));
        return out;
      }
      std::vector<Index> map(s->size(), npos);
      for (const auto& [a, b] : e.map) {
        auto i = s->space().find(a);
        auto j = t->space().find(b);
        if (!i || !j) throw SchemaError("isos." + e.name + ": unknown point " + a + " or " + b);
        map[*i] = *j;
      }
      ValidationReport mr = check_iso_map(*s, *t, map);
      out.push_back(make(S, "iso_valid", e.name, mr));
      if (!mr.ok()) return out;
      CorrIso iso = make_iso(*s, *t, map);
      out.push_back(make(S, "iso_valid_derivative", e.name, validate_iso(iso)));
      out.push_back(make(S, "unitary_iso", e.name, Residual{check_unitary(iso, unitary_from_iso(iso)).max(), e.name}, tol));
      out.push_back(make(S, "unitary_functorial", e.name, check_unitary_functoriality(iso, inverse_iso(iso)), tol));
      return out;
    });
  Report r{inst.name, run_tasks(S, tasks, opt.parallel)};
  for (const auto& [n, why] : p.rejected) r.checks.push_back({S, "prerequisites", n, Status::skip, why});
  return r;
}

/// The randomized measure-calculus battery; independent of any instance.
inline Report run_measures(const SuiteOptions& opt) {
  using namespace suite_detail;
  const std::string S = "measures";
  std::vector<Task> tasks;
  for (std::size_t i = 0; i < opt.random_instances; ++i) {
    std::uint64_t seed = opt.seed + i;
    tasks.push_back([seed, S]() {
      MeasureInstance mi = random_measure_instance(seed);
      return std::vector<CheckResult>{make(S, "measure_calculus", "seed " + std::to_string(seed), check_measure_calculus(mi))};
    });
  }
  return Report{"random", run_tasks(S, tasks, opt.parallel)};
}

inline Report run_suite(const io::Instance& inst, Suite suite, const SuiteOptions& opt = {}) {
  Report r{inst.name, {}};
  if (suite == Suite::definition || suite == Suite::all) r.append(run_definition(inst, opt));
  if (suite == Suite::composition || suite == Suite::all) r.append(run_composition(inst, opt));
  if (suite == Suite::bicategory || suite == Suite::all) r.append(run_bicategory(inst, opt));
  if (suite == Suite::functor || suite == Suite::all) r.append(run_functor(inst, opt));
  if (suite == Suite::measures) r.append(run_measures(opt));
  if (suite != Suite::definition && suite != Suite::measures && suite != Suite::all) {
    // structural failures are otherwise only visible to the definition suite
    suite_detail::Prepared p = suite_detail::prepare(inst);
    if (!p.rejected.empty())
      r.checks.push_back({"prerequisites", "instance_valid", inst.name, Status::fail,
                          std::to_string(p.rejected.size()) + " correspondence(s) failed validation"});
  }
  return r;
}

// ---- rendering ----------------------------------------------------------

inline std::string format_residual(double r) {
  if (r < 0) return "exact";
  std::ostringstream s;
  s << std::scientific << std::setprecision(2) << r;
  return s.str();
}

inline std::string render_text(const Report& r, bool timings = false) {
  std::size_t w_suite = 5, w_check = 5, w_subject = 7;
  for (const auto& c : r.checks) {
    w_suite = std::max(w_suite, c.suite.size());
    w_check = std::max(w_check, c.check.size());
    w_subject = std::max(w_subject, c.subject.size());
  }
  std::ostringstream s;
  s << "instance " << (r.instance.empty() ? "-" : r.instance) << "\n";
  auto pad = [](const std::string& x, std::size_t w) { return x + std::string(w > x.size() ? w - x.size() : 0, ' '); };
  s << pad("suite", w_suite) << "  " << pad("check", w_check) << "  " << pad("subject", w_subject)
    << "  status  residual";
  if (timings) s << "  ms";
  s << "\n";
  for (const auto& c : r.checks) {
    s << pad(c.suite, w_suite) << "  " << pad(c.check, w_check) << "  " << pad(c.subject, w_subject) << "  "
      << pad(status_name(c.status), 6) << "  " << pad(format_residual(c.residual), 8);
    if (timings) s << "  " << std::fixed << std::setprecision(2) << c.millis;
    if (!c.detail.empty()) s << "  " << c.detail;
    s << "\n";
  }
  s << (r.ok() ? "PASS" : "FAIL") << " (" << r.checks.size() << " checks, " << r.failures() << " failed)\n";
  return s.str();
}

inline io::Json render_json(const Report& r, bool timings = false) {
  io::Json j;
  j["instance"] = r.instance;
  j["ok"] = r.ok();
  j["failures"] = r.failures();
  j["checks"] = io::Json::array();
  for (const auto& c : r.checks) {
    io::Json e{{"suite", c.suite}, {"check", c.check}, {"subject", c.subject}, {"status", status_name(c.status)}};
    if (c.residual >= 0) e["residual"] = c.residual;
    if (!c.detail.empty()) e["detail"] = c.detail;
    if (timings) e["millis"] = c.millis;
    j["checks"].push_back(std::move(e));
  }
  return j;
}

}  // namespace topcorr
