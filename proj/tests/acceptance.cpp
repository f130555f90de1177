// Acceptance run over the bundled instances: one line per criterion, exit status 0 iff all pass.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <string>
#include <vector>

#include "topcorr/catalog.hpp"
#include "topcorr/suite.hpp"

using namespace topcorr;
namespace fs = std::filesystem;

namespace {

struct Bundled {
  std::string file;
  io::Instance inst;
  bool negative = false;
};

std::vector<Bundled> load_bundled() {
  std::vector<fs::path> paths;
  for (const auto& e : fs::directory_iterator(TOPCORR_INSTANCE_DIR))
    if (e.path().extension() == ".json") paths.push_back(e.path());
  std::sort(paths.begin(), paths.end());
  std::vector<Bundled> out;
  for (const auto& p : paths) {
    io::Instance inst = io::load_instance(p.string());
    bool negative = inst.name == "broken-haar";
    out.push_back({p.filename().string(), std::move(inst), negative});
  }
  return out;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

struct Outcome {
  bool ok = true;
  std::string detail;
  void fail(const std::string& why) {
    if (ok) detail = why;
    ok = false;
  }
};

std::string first_failure(const Report& r) {
  for (const auto& c : r.checks)
    if (c.status == Status::fail) return r.instance + " " + c.check + " " + c.subject + " " + c.detail;
  return {};
}

/// Runs one suite over every positive instance; fails on any failed check or when over budget.
Outcome suite_over(const std::vector<Bundled>& all, Suite s, double budget, std::size_t& checks, double& elapsed) {
  Outcome o;
  checks = 0;
  auto t0 = std::chrono::steady_clock::now();
  for (const auto& b : all) {
    if (b.negative) continue;
    Report r = run_suite(b.inst, s);
    checks += r.checks.size();
    if (!r.ok()) o.fail(first_failure(r));
  }
  elapsed = seconds_since(t0);
  if (elapsed >= budget) o.fail("runtime " + std::to_string(elapsed) + " s over budget");
  return o;
}

void print(int n, const std::string& title, const Outcome& o, const std::string& summary) {
  std::printf("criterion %d %-28s %s  %s%s%s\n", n, title.c_str(), o.ok ? "PASS" : "FAIL", summary.c_str(),
              o.ok ? "" : "  ", o.detail.c_str());
}

std::string fmt(const char* f, double a, double b = 0, double c = 0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, a, b, c);
  return buf;
}

}  // namespace

int main() {
  std::vector<Bundled> all = load_bundled();
  bool ok = true;

  // 1. adjoining function: closed form equals the certified one, identity gives 1
  {
    Outcome o;
    std::size_t instances = 0, corrs = 0;
    auto t0 = std::chrono::steady_clock::now();
    for (const auto& b : all) {
      if (b.negative) {
        if (run_suite(b.inst, Suite::definition).ok()) o.fail(b.file + " should be rejected");
        continue;
      }
      ++instances;
      for (const auto& sp : b.inst.bispaces)
        if (sp.space.size() > io::max_points) o.fail(b.file + " exceeds the point cap");
      for (const Correspondence& c : b.inst.all_correspondences()) {
        ++corrs;
        if (modular_from_identity(c.family(), c.space().left(), c.left().haar) != c.delta())
          o.fail(b.file + " " + c.name() + ": closed form differs");
      }
      for (const auto& obj : b.inst.objects) {
        Correspondence id = identity_correspondence(obj.object);
        const Groupoid& g = obj.object.g();
        for (Index a = 0; a < g.arrow_count(); ++a)
          for (Index p = 0; p < id.size(); ++p)
            if (g.src(a) == id.space().rho(p) && id.delta(a, p) != 1) o.fail(b.file + " id_" + obj.name + " Δ ≠ 1");
      }
      if (!run_suite(b.inst, Suite::definition).ok()) o.fail(b.file + " definition suite failed");
    }
    double t = seconds_since(t0);
    if (instances < 10) o.fail("fewer than 10 instances");
    if (t >= 1.0) o.fail("runtime over 1 s");
    print(1, "definition", o, fmt("%.0f instances, %.0f correspondences, %.3f s", instances, corrs, t));
    ok = ok && o.ok;
  }

  // 2-3, 5. suites over the bundled instances
  struct Row {
    int n;
    const char* title;
    Suite s;
    double budget;
  };
  for (const Row& row : {Row{2, "composition", Suite::composition, 5.0}, Row{3, "bicategory", Suite::bicategory, 10.0},
                         Row{5, "C*-functor", Suite::functor, 10.0}}) {
    std::size_t checks = 0;
    double t = 0;
    Outcome o = suite_over(all, row.s, row.budget, checks, t);
    if (checks == 0) o.fail("no checks ran");
    print(row.n, row.title, o, fmt("%.0f checks, %.3f s", checks, t));
    ok = ok && o.ok;
    if (row.n == 3) {
      // 4. randomized measure calculus
      auto t0 = std::chrono::steady_clock::now();
      SuiteOptions opt;
      opt.random_instances = 100;
      Report r = run_suite(io::Instance{}, Suite::measures, opt);
      double tm = seconds_since(t0);
      Outcome m;
      if (!r.ok()) m.fail(first_failure(r));
      if (r.checks.size() != 100) m.fail("expected 100 instances");
      if (tm >= 5.0) m.fail("runtime over 5 s");
      print(4, "measure calculus", m, fmt("%.0f seeded instances, %.3f s", r.checks.size(), tm));
      ok = ok && m.ok;
    }
  }

  // 6. illustrations
  {
    Outcome o;
    io::Instance chain = catalog::gen("space-chain");
    Composite c = compose(chain.correspondence("f"), chain.correspondence("g"));
    for (const Rational& b : c.cochain)
      if (b != 1) o.fail("space-map cochain is not 1");
    auto iso = find_iso(c.result, chain.correspondence("gf"));
    if (!iso) {
      o.fail("f∘g is not isomorphic to gf");
    } else {
      for (const Rational& m : iso->derivative)
        if (m != 1) o.fail("space-map derivative is not 1");
      if (!validate_iso(*iso).ok()) o.fail("space-map iso invalid");
    }
    for (const char* name : {"quiver", "group-hom", "space-map"}) {
      io::Instance inst = catalog::gen(name);
      for (const Correspondence& x : inst.all_correspondences())
        if (!validate_correspondence(x).ok()) o.fail(std::string(name) + " " + x.name() + " invalid");
      Report r = run_suite(inst, Suite::all);
      if (!r.ok()) o.fail(first_failure(r));
    }
    if (!run_suite(io::Instance{}, Suite::measures).ok()) o.fail("measure suite");
    print(6, "illustrations", o, "space maps, quiver, group-hom");
    ok = ok && o.ok;
  }

  std::printf("%s\n", ok ? "ACCEPTANCE PASS" : "ACCEPTANCE FAIL");
  return ok ? 0 : 1;
}
