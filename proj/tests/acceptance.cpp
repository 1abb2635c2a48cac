// Acceptance runner: one PASS/FAIL line per criterion, exit status 1 when any
// criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "generators.hpp"
#include "invariants.hpp"
#include "lattice_oracle.hpp"
#include "skorokhod.hpp"

namespace sk = skorokhod;

namespace {

struct Verdict {
  bool pass;
  std::string detail;
};

const std::vector<double> kThetas{4, 8, 16, 32, 64};

Verdict cauchy_bound() {
  double worst = -1e300;
  for (double a : kThetas) {
    for (double b : kThetas) {
      if (a >= b) continue;
      const auto c = sk::rho_bounds(sk::g_theta_family(a), sk::g_theta_family(b), 1e-4);
      worst = std::max(worst, c.upper - std::abs(1 / a - 1 / b));
    }
  }
  return {worst <= 1e-4, "max(upper - |1/a - 1/b|) = " + std::to_string(worst)};
}

Verdict limit_bound() {
  double worst = -1e300;
  for (double th : kThetas) {
    const auto c = sk::rho_plus_bounds(sk::embed(sk::g_theta_family(th)), sk::paper_limit(), 1e-4);
    worst = std::max(worst, c.upper - 1 / th);
  }
  return {worst <= 1e-4, "max(upper - 1/theta) = " + std::to_string(worst)};
}

Verdict isometry() {
  gen::Rng rng(2001);
  int bad = 0;
  double worst = 0.0;
  for (int k = 0; k < 100; ++k) {
    const auto f = gen::step(rng, 8), g = gen::step(rng, 8);
    const double exact = sk::rho_step_exact(f, g).upper;
    const auto c = sk::rho_plus_bounds(sk::embed(f), sk::embed(g), 1e-5);
    const double miss = std::max(c.lower - exact, exact - c.upper);
    worst = std::max(worst, miss);
    if (miss > 1e-5 || c.upper - c.lower > 1e-5) ++bad;
  }
  return {bad == 0, std::to_string(bad) + "/100 outside, worst miss " + std::to_string(worst)};
}

Verdict triangle() {
  gen::Rng rng(2002);
  int bad = 0;
  for (int k = 0; k < 100; ++k) {
    const auto x = gen::turbo(rng), y = gen::turbo(rng), z = gen::turbo(rng);
    const double xz = sk::rho_plus_bounds(x, z, 1e-6).lower;
    const double xy = sk::rho_plus_bounds(x, y, 1e-6).upper;
    const double yz = sk::rho_plus_bounds(y, z, 1e-6).upper;
    if (xz > xy + yz + 1e-9) ++bad;
  }
  return {bad == 0, std::to_string(bad) + "/100 violations"};
}

Verdict flat_equivalence() {
  const auto one = sk::CadlagFunction::constant(1.0);
  const sk::Turbofunction plain = sk::embed(one);
  const sk::Turbofunction flat(one, sk::sigma_limit());
  const auto r = sk::is_equivalent(plain, flat);
  const double up = sk::rho_plus_bounds(plain, flat, 1e-6).upper;
  return {r.decision == sk::Equivalence::equivalent && up <= 1e-6,
          std::string(sk::to_string(r.decision)) + ", upper " + std::to_string(up)};
}

Verdict completeness() {
  std::vector<sk::Turbofunction> items;
  for (int k = 2; k <= 10; ++k) items.push_back(sk::embed(sk::g_theta_family(std::ldexp(1.0, k))));
  const sk::CauchySequence seq(items, 1e-6);
  const auto rep = sk::cauchy_limit(seq, 1e-3);
  const double up = sk::rho_plus_bounds(rep.limit, sk::paper_limit(), 1e-3).upper;
  return {up <= 2e-3 && rep.continuous,
          "upper " + std::to_string(up) + ", continuous " + (rep.continuous ? "true" : "false")};
}

Verdict visualization() {
  const auto lim = sk::paper_limit();
  const double sup = sk::sup_distance(sk::visualize(lim), sk::CadlagFunction::constant(0.0));
  const auto inst = sk::instantons(lim);
  const bool one = inst.size() == 1 && std::abs(inst[0].s - 0.5) <= 1e-12 && inst[0].value_min == 0.0 &&
                   inst[0].value_max == 1.0;
  return {sup <= 1e-12 && one, "sup " + std::to_string(sup) + ", instantons " + std::to_string(inst.size())};
}

Verdict pointwise() {
  std::vector<sk::Turbofunction> items;
  for (double th : kThetas) items.push_back(sk::embed(sk::g_theta_family(th)));
  const sk::CauchySequence seq(items, 1e-6);
  const auto rows = sk::pointwise_check(seq, sk::paper_limit(), {0.1, 0.25, 0.4, 0.5, 0.75, 1.0});
  bool ok = true;
  std::string detail;
  for (const auto& r : rows) {
    const bool want_exc = r.s == 0.5;
    if (want_exc) {
      ok = ok && r.cls == sk::PointClass::exceptional;
    } else {
      ok = ok && r.cls != sk::PointClass::exceptional && r.converges && r.deviations.back() <= 1e-6;
    }
    detail += sk::detail::fmt(r.s) + ":" + sk::to_string(r.cls) + " ";
  }
  return {ok, detail};
}

Verdict oracle_agreement() {
  gen::Rng rng(2009);
  int bad = 0;
  double worst = 0.0;
  for (int k = 0; k < 50; ++k) {
    const auto f = gen::step(rng, 4, 8), g = gen::step(rng, 4, 8);
    const double exact = sk::rho_step_exact(f, g).upper;
    const auto o = oracle::lattice_step_distance(f, g, 64);
    worst = std::max(worst, o.value - exact);
    if (exact > o.value + 1e-12 || o.value - exact > o.slack) ++bad;
  }
  return {bad == 0, std::to_string(bad) + "/50 disagree, max oracle - exact " + std::to_string(worst)};
}

Verdict invariants() {
  int cases = 0, failures = 0;
  std::string first;
  for (const auto& o : inv::all_suites(2010)) {
    cases += o.cases;
    failures += o.failures;
    if (o.failures > 0 && first.empty()) first = " first: " + o.name;
  }
  return {failures == 0 && cases >= 10000,
          std::to_string(cases) + " cases, " + std::to_string(failures) + " failures" + first};
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* name;
    double budget_s;
    std::function<Verdict()> run;
  };
  const std::vector<Criterion> all{
      {1, "family Cauchy bound", 60, cauchy_bound},
      {2, "family to limit bound", 60, limit_bound},
      {3, "step isometry", 300, isometry},
      {4, "triangle inequality", 600, triangle},
      {5, "flat time change equivalence", 10, flat_equivalence},
      {6, "completion construction", 120, completeness},
      {7, "limit visualization", 1, visualization},
      {8, "pointwise behavior", 30, pointwise},
      {9, "lattice oracle agreement", 600, oracle_agreement},
      {10, "invariant suites", 900, invariants},
  };
  int failed = 0;
  for (const auto& c : all) {
    const auto t0 = std::chrono::steady_clock::now();
    Verdict v{false, ""};
    try {
      v = c.run();
    } catch (const std::exception& e) {
      v = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const bool pass = v.pass && secs <= c.budget_s;
    failed += pass ? 0 : 1;
    std::printf("%s criterion %d (%s): %s [%.2fs / %.0fs]\n", pass ? "PASS" : "FAIL", c.id, c.name,
                v.detail.c_str(), secs, c.budget_s);
    std::fflush(stdout);
  }
  return failed == 0 ? 0 : 1;
}
