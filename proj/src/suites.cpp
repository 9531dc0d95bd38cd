#include "ogk/suites.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <future>
#include <map>
#include <memory>
#include <mutex>

#include "ogk/convalg.hpp"
#include "ogk/convolutor.hpp"
#include "ogk/errors.hpp"
#include "ogk/fieldlab.hpp"
#include "ogk/ideals.hpp"
#include "ogk/orlicz.hpp"
#include "ogk/rng.hpp"
#include "ogk/young.hpp"

namespace ogk {

namespace {

int n_or(const SuiteConfig& cfg, int def) { return cfg.trials > 0 ? cfg.trials : def; }

std::vector<double> weighted_masses(const FiniteGroupoid& g) {
  std::vector<double> m;
  m.reserve(static_cast<std::size_t>(g.unit_count()));
  for (int i = 0; i < g.unit_count(); ++i) m.push_back(1.0 + 0.5 * i);
  return m;
}

HaarSystem haar_for(const FiniteGroupoid& g, bool weighted) {
  return weighted ? HaarSystem::from_unit_masses(g, weighted_masses(g))
                  : HaarSystem::counting(g);
}

std::vector<std::string> convolution_groupoids(const SuiteConfig& cfg) {
  if (!cfg.groupoid_only.empty()) return {cfg.groupoid_only};
  return {"pair:2", "pair:3", "bundle:z2+z3", "trans:z2swap"};
}

std::vector<std::string> zoo_groupoids(const SuiteConfig& cfg) {
  if (!cfg.groupoid_only.empty()) return {cfg.groupoid_only};
  return zoo::groupoid_ids();
}

// Cells for the convolutor and ideal suites honor the CLI restriction while
// keeping their structured anchors.
std::vector<std::pair<std::string, std::string>> restricted_cells(
    const SuiteConfig& cfg, std::vector<std::pair<std::string, std::string>> defaults) {
  if (cfg.groupoid_only.empty() && cfg.young_only.empty()) return defaults;
  const std::string gid = cfg.groupoid_only.empty() ? defaults.front().first
                                                    : cfg.groupoid_only;
  const std::string yid = cfg.young_only.empty() ? defaults.front().second
                                                 : cfg.young_only;
  return {{gid, yid}};
}

std::vector<std::string> delta2_pairs(const SuiteConfig& cfg) {
  if (!cfg.young_only.empty()) return {cfg.young_only};
  return {"power:2", "power:3", "npower:2", "npower:1.5", "xlogx"};
}

std::vector<std::string> both_delta2_pairs(const SuiteConfig& cfg) {
  if (!cfg.young_only.empty()) return {cfg.young_only};
  return {"power:2", "power:3", "npower:2", "npower:1.5"};
}

std::vector<std::string> all_pairs(const SuiteConfig& cfg) {
  if (!cfg.young_only.empty()) return {cfg.young_only};
  return zoo::young_ids();
}

ConvolutionContext make_ctx(const std::string& gid, const std::string& yid,
                            const SuiteConfig& cfg, bool weighted = false) {
  FiniteGroupoid g = zoo::groupoid_by_id(gid);
  HaarSystem h = haar_for(g, weighted);
  return ConvolutionContext(std::move(g), std::move(h), zoo::young_pair(yid), cfg.tol);
}

// A single group fiber of the given size: the "plain vector space" carrier
// for the norm-engine checks. Suites run concurrently, hence the lock; the
// pointees never move once created.
const FiniteGroupoid& vector_groupoid(int len) {
  static std::mutex mu;
  static std::map<int, std::unique_ptr<FiniteGroupoid>> cache;
  const std::scoped_lock lock(mu);
  auto& slot = cache[len];
  if (!slot)
    slot = std::make_unique<FiniteGroupoid>(zoo::group_bundle({zoo::cyclic(len)}));
  return *slot;
}

FiberFunction random_vector(Rng& rng, const FiniteGroupoid& g, double amplitude = 10.0) {
  FiberFunction f{g.units()[0], std::vector<cplx>(g.fiber(g.units()[0]).size())};
  for (auto& v : f.values) v = amplitude * rng.uniform() * rng.complex_gaussian();
  return f;
}

FiberFunction random_fiber(Rng& rng, const FiniteGroupoid& g, int unit,
                           double amplitude = 1.0) {
  FiberFunction f{unit, std::vector<cplx>(g.fiber(unit).size())};
  for (auto& v : f.values) v = amplitude * rng.complex_gaussian();
  return f;
}

YoungFunction strip_closed_form(const YoungFunction& f) {
  return YoungFunction(f.name() + "~", [f](double x) { return f(x); }, f.is_n_function());
}

// Rebuild a copy of the Z4 bundle with one product entry corrupted
// (1+1 remapped to 3): breaks associativity and cancellation while keeping
// range/domain tables consistent.
FiniteGroupoid corrupted_bundle() {
  const FiniteGroupoid g = zoo::group_bundle({zoo::cyclic(4)});
  std::vector<int> r, d, inv;
  for (int x = 0; x < g.size(); ++x) {
    r.push_back(g.r(x));
    d.push_back(g.d(x));
    inv.push_back(g.inverse(x));
  }
  auto triples = g.product_triples();
  for (auto& t : triples)
    if (t[0] == 1 && t[1] == 1) t[2] = 3;
  return FiniteGroupoid(g.size(), std::move(r), std::move(d), std::move(inv),
                        std::move(triples), g.units());
}

// ---------------------------------------------------------------------------
// young.invariants
// ---------------------------------------------------------------------------

SuiteReport suite_young(const SuiteConfig& cfg) {
  SuiteReport rep;
  rep.suite = "young.invariants";
  Rng rng(Rng::mix(cfg.seed, rep.suite));

  for (const auto& id : all_pairs(cfg)) {
    const auto pair = zoo::young_pair(id, cfg.tol);
    rep.add_flag(id + "/phi_young_battery", validate_young(pair.phi, cfg.tol).ok());
    rep.add_flag(id + "/psi_young_battery", validate_young(pair.psi, cfg.tol).ok());

    // Fenchel-Young on random (x, y); ranges keep exp-type conjugates finite.
    const bool exp_conjugate = id == "xlogx";
    const double xmax = exp_conjugate ? 50.0 : (id == "cosh" ? 30.0 : 1e3);
    const double ymax = exp_conjugate ? 20.0 : 1e3;
    double worst = 1e300;
    const int fy_trials = n_or(cfg, 1000);
    for (int t = 0; t < fy_trials; ++t) {
      const double x = rng.uniform(0.0, xmax);
      const double y = rng.uniform(0.0, ymax);
      worst = std::min(worst, pair.phi(x) + pair.psi(y) - x * y);
    }
    rep.add_slack(id + "/fenchel_young", worst, cfg.tol.slack);

    // Biconjugation returns Phi, fully through the numeric path.
    const YoungFunction phi_plain = strip_closed_form(pair.phi);
    const YoungFunction psi_numeric(
        "conj", [phi_plain, &cfg](double y) { return conjugate(phi_plain, y, cfg.tol); },
        true);
    double bi_err = 0.0;
    for (const double x : log_grid(0.1, 20.0, 3)) {
      const double back = conjugate(psi_numeric, x, cfg.tol);
      bi_err = std::max(bi_err, std::abs(back - pair.phi(x)) / std::max(1.0, pair.phi(x)));
    }
    rep.add_deviation(id + "/biconjugate", bi_err, 1e-8);

    // Conjugate is nondecreasing.
    double prev = 0.0;
    bool monotone = true;
    for (const double y : log_grid(1e-3, exp_conjugate ? 20.0 : 1e3, 4)) {
      const double v = conjugate(pair.phi, y, cfg.tol);
      if (v < prev - 1e-12 * std::max(1.0, prev)) monotone = false;
      prev = v;
    }
    rep.add_flag(id + "/conjugate_monotone", monotone);

    // psi_tilde(., 1, .) = 1 for every pair (ratios are identically 1).
    const double tilde_one = psi_tilde(pair.phi, pair.psi, 1.0, default_ratio_grid());
    rep.add_deviation(id + "/psi_tilde_at_one", std::abs(tilde_one - 1.0), 1e-12);
  }

  // Delta2 anchors.
  const auto grid = default_delta2_grid(cfg.tol);
  const auto d2_p2 = delta2_estimate(zoo::power(2.0), grid);
  rep.add_deviation("delta2/power:2", std::abs(d2_p2.constant - 4.0), 1e-12,
                    d2_p2.diverged ? "unexpected divergence flag" : "");
  const auto d2_p3 = delta2_estimate(zoo::power(3.0), grid);
  rep.add_deviation("delta2/power:3", std::abs(d2_p3.constant - 8.0), 1e-12,
                    d2_p3.diverged ? "unexpected divergence flag" : "");
  const auto d2_xlx = delta2_estimate(zoo::x_log_x(), grid);
  rep.add_flag("delta2/xlogx_in_range",
               !d2_xlx.diverged && d2_xlx.constant > 3.9 && d2_xlx.constant <= 4.0);
  const auto d2_cosh = delta2_estimate(zoo::cosh_minus_one(), grid);
  rep.add_flag("delta2/cosh_diverges", d2_cosh.diverged);

  // psi_tilde anchors: power pairs have constant ratios a^p and a^q.
  {
    const auto p2 = zoo::young_pair("power:2", cfg.tol);
    const double v = psi_tilde(p2.phi, p2.psi, 3.0, default_ratio_grid());
    rep.add_deviation("psi_tilde/power:2_a3", std::abs(v - 9.0), 1e-9);
    const auto p3 = zoo::young_pair("power:3", cfg.tol);
    const double w = psi_tilde(p3.phi, p3.psi, 2.0, default_ratio_grid());
    rep.add_deviation("psi_tilde/power:3_a2", std::abs(w - 8.0), 1e-9);
    bool threw = false;
    try {
      const auto ch = zoo::young_pair("cosh", cfg.tol);
      psi_tilde(ch.phi, ch.psi, 2.0, default_ratio_grid());
    } catch (const DivergentRatio&) {
      threw = true;
    }
    rep.add_flag("psi_tilde/cosh_divergent_ratio", threw);
  }

  // Inverse anchors.
  rep.add_deviation("inverse/power:2_9", std::abs(inverse(zoo::power(2.0), 9.0, cfg.tol) - 3.0),
                    1e-11);
  rep.add_deviation("inverse/npower:3_9",
                    std::abs(inverse(zoo::normalized_power(3.0), 9.0, cfg.tol) - 3.0), 1e-11);
  rep.add_deviation("inverse/at_zero", inverse(zoo::power(2.0), 0.0, cfg.tol), 0.0);

  // Conjugate anchors: self-conjugate x^2/2, npower:3 at 2, power:2 at 4.
  {
    const YoungFunction half_sq("half_square", [](double x) { return 0.5 * x * x; }, true);
    rep.add_deviation("conjugate/self_conjugate",
                      std::abs(conjugate(half_sq, 3.0, cfg.tol) - 4.5), 1e-10);
    const double v = conjugate(strip_closed_form(zoo::normalized_power(3.0)), 2.0, cfg.tol);
    rep.add_deviation("conjugate/npower:3_at_2",
                      std::abs(v - std::pow(2.0, 1.5) * (2.0 / 3.0)), 1e-10);
    const double w = conjugate(strip_closed_form(zoo::power(2.0)), 4.0, cfg.tol);
    rep.add_deviation("conjugate/power:2_at_4", std::abs(w - 4.0), 1e-10);
    bool threw = false;
    try {
      // Linear growth: conjugate is infinite past the slope.
      const YoungFunction linearish("linearish", [](double x) { return x; }, false);
      conjugate(linearish, 2.0, cfg.tol);
    } catch (const UnboundedConjugate&) {
      threw = true;
    }
    rep.add_flag("conjugate/unbounded_detected", threw);
  }
  return rep;
}

// ---------------------------------------------------------------------------
// groupoid.axioms
// ---------------------------------------------------------------------------

SuiteReport suite_groupoid(const SuiteConfig& cfg) {
  SuiteReport rep;
  rep.suite = "groupoid.axioms";

  for (const auto& gid : zoo::groupoid_ids()) {
    const FiniteGroupoid g = zoo::groupoid_by_id(gid);
    const auto grep = validate_groupoid(g);
    rep.add_flag(gid + "/axioms", grep.ok(), grep.ok() ? "" : grep.summary());
    const auto hrep = validate_haar(g, HaarSystem::counting(g), cfg.tol);
    rep.add_flag(gid + "/haar_counting", hrep.ok(), hrep.ok() ? "" : hrep.summary());
    const auto wrep =
        validate_haar(g, HaarSystem::from_unit_masses(g, weighted_masses(g)), cfg.tol);
    rep.add_flag(gid + "/haar_weighted", wrep.ok(), wrep.ok() ? "" : wrep.summary());

    // r and d fix units; inversion bijects G^u onto G_u; left translation
    // bijects G^{d(x)} onto G^{r(x)}.
    bool unit_fix = true;
    for (const int u : g.units()) unit_fix = unit_fix && g.r(u) == u && g.d(u) == u;
    rep.add_flag(gid + "/units_fixed", unit_fix);

    bool inv_bijects = true;
    for (const int u : g.units()) {
      std::vector<int> image;
      for (const int x : g.fiber(u)) image.push_back(g.inverse(x));
      std::sort(image.begin(), image.end());
      inv_bijects = inv_bijects && image == g.cofiber(u);
    }
    rep.add_flag(gid + "/inverse_bijects_fibers", inv_bijects);

    bool translation_bijects = true;
    for (int x = 0; x < g.size() && translation_bijects; ++x) {
      std::vector<int> image;
      for (const int y : g.fiber(g.d(x))) image.push_back(g.product(x, y));
      std::sort(image.begin(), image.end());
      translation_bijects = image == g.fiber(g.r(x));
    }
    rep.add_flag(gid + "/translation_bijects", translation_bijects);
  }

  // Size anchors.
  rep.add_flag("counts/pair:3", zoo::pair_groupoid(3).size() == 9 &&
                                    zoo::pair_groupoid(3).unit_count() == 3);
  rep.add_flag("counts/bundle:z2+z3",
               zoo::groupoid_by_id("bundle:z2+z3").size() == 5 &&
                   zoo::groupoid_by_id("bundle:z2+z3").unit_count() == 2);

  // The validator must catch a corrupted product table.
  const auto bad = validate_groupoid(corrupted_bundle());
  bool assoc_named = false;
  for (const auto& v : bad.violations) assoc_named = assoc_named || v.axiom == "associativity";
  rep.add_flag("validator/catches_corrupted_product", !bad.ok() && assoc_named);

  // And a Haar system that breaks left invariance (pair groupoid weights
  // must be constant along columns).
  {
    const FiniteGroupoid g = zoo::pair_groupoid(2);
    HaarSystem broken(std::vector<std::vector<double>>{{1.0, 2.0}, {1.0, 1.0}});
    rep.add_flag("validator/catches_broken_haar", !validate_haar(g, broken, cfg.tol).ok());
  }

  // Injected fault: the corrupted table is reported as if it were a zoo
  // member, so the run fails with a witness.
  if (cfg.inject_fault == "assoc") {
    const auto injected = validate_groupoid(corrupted_bundle());
    rep.add_flag("inject/bundle:z4_axioms", injected.ok(), injected.summary());
  }
  return rep;
}

// ---------------------------------------------------------------------------
// orlicz.norms
// ---------------------------------------------------------------------------

SuiteReport suite_orlicz_norms(const SuiteConfig& cfg) {
  SuiteReport rep;
  rep.suite = "orlicz.norms";
  Rng rng(Rng::mix(cfg.seed, rep.suite));
  const int trials = n_or(cfg, 10000);
  rep.trials = trials;

  const std::vector<double> ps = {1.5, 2.0, 3.0};
  std::vector<YoungFunction> phis;
  for (const double p : ps) phis.push_back(zoo::power(p));

  double worst_rel[3] = {0.0, 0.0, 0.0};
  double worst_orlicz = 0.0;
  for (int t = 0; t < trials; ++t) {
    const int len = 1 + rng.index(64);
    const FiniteGroupoid& g = vector_groupoid(len);
    const HaarSystem h = HaarSystem::counting(g);
    const FiberFunction f = random_vector(rng, g);
    for (std::size_t i = 0; i < ps.size(); ++i) {
      double mod = 0.0;
      for (const auto& v : f.values) mod += std::pow(std::abs(v), ps[i]);
      const double pnorm = std::pow(mod, 1.0 / ps[i]);
      const double gauge = gauge_norm(phis[i], g, h, f, cfg.tol);
      worst_rel[i] = std::max(worst_rel[i], std::abs(gauge - pnorm) / pnorm);
    }
    double l2 = 0.0;
    for (const auto& v : f.values) l2 += std::norm(v);
    l2 = std::sqrt(l2);
    const double orl = orlicz_norm(phis[1], g, h, f, cfg.tol).value;
    worst_orlicz = std::max(worst_orlicz, std::abs(orl - 2.0 * l2) / (2.0 * l2));
  }
  for (std::size_t i = 0; i < ps.size(); ++i)
    rep.add_deviation("gauge_matches_p_norm/p=" + std::to_string(ps[i]), worst_rel[i], 1e-9);
  rep.add_deviation("orlicz_is_twice_l2/p=2", worst_orlicz, 1e-8);

  // Homogeneity and triangle inequality across the zoo.
  double worst_homog = 0.0;
  double worst_triangle = 1e300;
  double worst_boundary = 0.0;
  const int prop_trials = std::min(n_or(cfg, 1000), trials);
  for (const auto& id : all_pairs(cfg)) {
    const auto pair = zoo::young_pair(id, cfg.tol);
    for (int t = 0; t < prop_trials; ++t) {
      const int len = 1 + rng.index(16);
      const FiniteGroupoid& g = vector_groupoid(len);
      const HaarSystem h = HaarSystem::counting(g);
      const FiberFunction f = random_vector(rng, g, 3.0);
      if (f.is_zero()) continue;
      const FiberFunction f2 = random_vector(rng, g, 3.0);
      const double c = rng.uniform(-4.0, 4.0);
      FiberFunction cf = f;
      for (auto& v : cf.values) v *= c;
      const double gf = gauge_norm(pair.phi, g, h, f, cfg.tol);
      const double gcf = gauge_norm(pair.phi, g, h, cf, cfg.tol);
      worst_homog =
          std::max(worst_homog, std::abs(gcf - std::abs(c) * gf) / std::max(1.0, gcf));
      FiberFunction sum = f;
      for (std::size_t j = 0; j < sum.values.size(); ++j) sum.values[j] += f2.values[j];
      const double gsum = gauge_norm(pair.phi, g, h, sum, cfg.tol);
      const double g2 = gauge_norm(pair.phi, g, h, f2, cfg.tol);
      worst_triangle = std::min(worst_triangle, gf + g2 - gsum + 1e-10 * std::max(1.0, gsum));

      // Boundary: gauge <= 1 iff modular <= 1 (skip the knife edge).
      const double m = modular(pair.phi, g, h, f);
      if (std::abs(m - 1.0) > 1e-9) {
        const bool modular_in = m <= 1.0;
        const bool gauge_in = gf <= 1.0;
        if (modular_in != gauge_in) worst_boundary = 1.0;
      }
    }
  }
  rep.add_deviation("gauge_homogeneity", worst_homog, 1e-10);
  rep.add_slack("gauge_triangle", worst_triangle, 0.0);
  rep.add_deviation("gauge_boundary_iff_modular", worst_boundary, 0.0);
  return rep;
}

// ---------------------------------------------------------------------------
// orlicz.sandwich
// ---------------------------------------------------------------------------

SuiteReport suite_orlicz_sandwich(const SuiteConfig& cfg) {
  SuiteReport rep;
  rep.suite = "orlicz.sandwich";
  Rng rng(Rng::mix(cfg.seed, rep.suite));
  const auto gids = convolution_groupoids(cfg);
  const auto yids = all_pairs(cfg);
  const int cells = static_cast<int>(gids.size() * yids.size() * 2);
  const int per_cell = std::max(1, (n_or(cfg, 10000) + cells - 1) / cells);
  rep.trials = per_cell * cells;

  double lower = 1e300;
  double upper = 1e300;
  double duality = 1e300;
  for (const auto& gid : gids) {
    const FiniteGroupoid g = zoo::groupoid_by_id(gid);
    for (const bool weighted : {false, true}) {
      const HaarSystem h = haar_for(g, weighted);
      for (const auto& yid : yids) {
        const auto pair = zoo::young_pair(yid, cfg.tol);
        const bool closed_psi = pair.phi.has_closed_conjugate();
        for (int t = 0; t < per_cell; ++t) {
          const int u = g.units()[static_cast<std::size_t>(rng.index(g.unit_count()))];
          const FiberFunction f = random_fiber(rng, g, u, rng.uniform(0.1, 5.0));
          if (f.is_zero()) continue;
          const double gauge = gauge_norm(pair.phi, g, h, f, cfg.tol);
          const double orlicz = orlicz_norm(pair.phi, g, h, f, cfg.tol).value;
          const double scale = std::max(1.0, orlicz);
          lower = std::min(lower, (orlicz - gauge) / scale);
          upper = std::min(upper, (2.0 * gauge - orlicz) / scale);

          // Duality lower bound for the Amemiya value on a subsample.
          if (closed_psi && t % 20 == 0) {
            for (int s = 0; s < 8; ++s) {
              FiberFunction probe = random_fiber(rng, g, u);
              for (auto& v : probe.values) v = std::abs(v);
              const double pg = gauge_norm(pair.psi, g, h, probe, cfg.tol);
              if (pg <= 0.0) continue;
              double sum = 0.0;
              const auto& w = h.weights()[static_cast<std::size_t>(g.unit_index(u))];
              for (std::size_t j = 0; j < probe.values.size(); ++j)
                sum += std::abs(f.values[j]) * (probe.values[j].real() / pg) * w[j];
              duality = std::min(duality, (orlicz - sum) / scale);
            }
          }
        }
      }
    }
  }
  rep.add_slack("orlicz_ge_gauge", lower, 1e-8);
  rep.add_slack("orlicz_le_twice_gauge", upper, 1e-8);
  rep.add_slack("amemiya_ge_duality_sample", duality, 1e-9);
  return rep;
}

// ---------------------------------------------------------------------------
// orlicz.holder_fenchel
// ---------------------------------------------------------------------------

SuiteReport suite_holder(const SuiteConfig& cfg) {
  SuiteReport rep;
  rep.suite = "orlicz.holder_fenchel";
  Rng rng(Rng::mix(cfg.seed, rep.suite));
  const auto gids = convolution_groupoids(cfg);

  // Holder across closed-conjugate pairs carries the bulk; the numeric
  // conjugate of xlogx is exercised at a smaller count.
  double worst = 1e300;
  const int total = n_or(cfg, 10000);
  std::vector<std::string> yids = all_pairs(cfg);
  for (const auto& yid : yids) {
    const auto pair = zoo::young_pair(yid, cfg.tol);
    const bool closed = pair.phi.has_closed_conjugate();
    const int count = closed ? total / 5 : 50;
    for (int t = 0; t < count; ++t) {
      const auto& gid = gids[static_cast<std::size_t>(rng.index(static_cast<int>(gids.size())))];
      const FiniteGroupoid g = zoo::groupoid_by_id(gid);
      const HaarSystem h = haar_for(g, t % 2 == 0);
      const int u = g.units()[static_cast<std::size_t>(rng.index(g.unit_count()))];
      const FiberFunction f = random_fiber(rng, g, u, rng.uniform(0.1, 4.0));
      const FiberFunction gf = random_fiber(rng, g, u, rng.uniform(0.1, 4.0));
      worst = std::min(worst, holder_slack(pair.phi, pair.psi, g, h, f, gf, cfg.tol));
      if (t == 0) {
        FiberFunction zero = gf;
        for (auto& v : zero.values) v = 0.0;
        const double boundary = holder_slack(pair.phi, pair.psi, g, h, f, zero, cfg.tol);
        worst = std::min(worst, boundary);
      }
    }
  }
  rep.add_slack("holder", worst, cfg.tol.check_slack);

  // Fenchel-Young at suite scale.
  double fy = 1e300;
  for (const auto& yid : yids) {
    const auto pair = zoo::young_pair(yid, cfg.tol);
    const double xmax = yid == "xlogx" ? 50.0 : (yid == "cosh" ? 30.0 : 1e3);
    const double ymax = yid == "xlogx" ? 20.0 : 1e3;
    for (int t = 0; t < total / 5; ++t) {
      const double x = rng.uniform(0.0, xmax);
      const double y = rng.uniform(0.0, ymax);
      fy = std::min(fy, pair.phi(x) + pair.psi(y) - x * y);
    }
  }
  rep.add_slack("fenchel_young", fy, cfg.tol.check_slack);

  // Worked anchor: f=(3,4), g=(4,3), counting, power:2 pair.
  {
    const FiniteGroupoid g = vector_groupoid(2);
    const HaarSystem h = HaarSystem::counting(g);
    const auto pair = zoo::young_pair("power:2", cfg.tol);
    const FiberFunction f{g.units()[0], {cplx{3, 0}, cplx{4, 0}}};
    const FiberFunction gf{g.units()[0], {cplx{4, 0}, cplx{3, 0}}};
    const double slack = holder_slack(pair.phi, pair.psi, g, h, f, gf, cfg.tol);
    rep.add_deviation("holder_anchor_3443", std::abs(slack - 1.0), 1e-8);
  }
  return rep;
}

// ---------------------------------------------------------------------------
// orlicz.jensen
// ---------------------------------------------------------------------------

SuiteReport suite_jensen(const SuiteConfig& cfg) {
  SuiteReport rep;
  rep.suite = "orlicz.jensen";
  Rng rng(Rng::mix(cfg.seed, rep.suite));
  const int trials = n_or(cfg, 10000);
  rep.trials = trials;

  double worst = 1e300;
  const auto yids = zoo::young_ids();
  for (int t = 0; t < trials; ++t) {
    const auto& yid = yids[static_cast<std::size_t>(rng.index(static_cast<int>(yids.size())))];
    const auto pair = zoo::young_pair(yid, cfg.tol);
    const int len = 1 + rng.index(16);
    std::vector<double> f(static_cast<std::size_t>(len)), nu(static_cast<std::size_t>(len));
    double total = 0.0;
    for (auto& w : nu) {
      w = rng.uniform();
      total += w;
    }
    for (auto& w : nu) w /= total;
    for (auto& v : f) v = rng.uniform(-10.0, 10.0);
    worst = std::min(worst, jensen_slack(pair.phi, f, nu));
  }
  rep.add_slack("jensen_random", worst, 1e-12);

  // Constants give equality.
  {
    const auto pair = zoo::young_pair("power:3", cfg.tol);
    const std::vector<double> f(5, 2.75), nu(5, 0.2);
    rep.add_deviation("jensen_constant_equality", std::abs(jensen_slack(pair.phi, f, nu)),
                      1e-12);
    const std::vector<double> f2{0.0, 2.0}, nu2{0.5, 0.5};
    rep.add_deviation("jensen_anchor",
                      std::abs(jensen_slack(zoo::power(2.0), f2, nu2) - 1.0), 1e-12);
  }
  return rep;
}

// ---------------------------------------------------------------------------
// orlicz.l1_embedding
// ---------------------------------------------------------------------------

SuiteReport suite_l1(const SuiteConfig& cfg) {
  SuiteReport rep;
  rep.suite = "orlicz.l1_embedding";
  Rng rng(Rng::mix(cfg.seed, rep.suite));
  const int trials = n_or(cfg, 300);
  rep.trials = trials;

  double worst = 1e300;
  for (const auto& gid : convolution_groupoids(cfg)) {
    const FiniteGroupoid g = zoo::groupoid_by_id(gid);
    for (const bool weighted : {false, true}) {
      const HaarSystem h = haar_for(g, weighted);
      for (const auto& yid : all_pairs(cfg)) {
        const auto pair = zoo::young_pair(yid, cfg.tol);
        const double d = l1_embedding_constant(pair.phi, pair.psi, g, h, cfg.tol);
        for (int t = 0; t < trials; ++t) {
          Section s = Section::zeros(g);
          for (auto& fib : s.fibers)
            for (auto& v : fib) v = 3.0 * rng.complex_gaussian();
          const double slack =
              d * sup_gauge(pair.phi, g, h, s, cfg.tol) - sup_l1(g, h, s);
          worst = std::min(worst, slack);
        }
      }
    }
  }
  rep.add_slack("l1_le_d_times_gauge", worst, cfg.tol.check_slack);

  // Anchor: counting fibers of sizes 2 and 3 under the power:2 pair give
  // d = sqrt(3) (duality oracle: sup over the L2 unit ball of sum |g|).
  {
    const FiniteGroupoid g = zoo::group_bundle({zoo::cyclic(2), zoo::cyclic(3)});
    const HaarSystem h = HaarSystem::counting(g);
    const auto pair = zoo::young_pair("power:2", cfg.tol);
    const double d = l1_embedding_constant(pair.phi, pair.psi, g, h, cfg.tol);
    rep.add_deviation("anchor_sqrt3", std::abs(d - std::sqrt(3.0)), 1e-9);
  }
  return rep;
}

// ---------------------------------------------------------------------------
// convalg.matrix
// ---------------------------------------------------------------------------

SuiteReport suite_matrix(const SuiteConfig& cfg) {
  SuiteReport rep;
  rep.suite = "convalg.matrix";
  Rng rng(Rng::mix(cfg.seed, rep.suite));

  const auto matmul_dev = [](const FiniteGroupoid& g, const HaarSystem& h, int n,
                             const Section& a, const Section& b) {
    const Section conv = convolve(g, h, a, b);
    double dev = 0.0;
    for (int i = 0; i < n; ++i)
      for (int k = 0; k < n; ++k) {
        cplx acc{};
        for (int j = 0; j < n; ++j) acc += a.at(g, i * n + j) * b.at(g, j * n + k);
        dev = std::max(dev, std::abs(acc - conv.at(g, i * n + k)));
      }
    return dev;
  };

  double exhaustive = 0.0;
  for (int n = 2; n <= 6; ++n) {
    const FiniteGroupoid g = zoo::pair_groupoid(n);
    const HaarSystem h = HaarSystem::counting(g);
    // Delta-basis pairs decide the bilinear identity exactly.
    for (int x = 0; x < g.size(); ++x)
      for (int y = 0; y < g.size(); ++y) {
        if (!g.composable(x, y)) continue;
        Section a = Section::zeros(g);
        a.set(g, x, cplx{1.0, 0.0});
        Section b = Section::zeros(g);
        b.set(g, y, cplx{1.0, 0.0});
        exhaustive = std::max(exhaustive, matmul_dev(g, h, n, a, b));
        const Section conv = convolve(g, h, a, b);
        Section expected = Section::zeros(g);
        expected.set(g, g.product(x, y), cplx{1.0, 0.0});
        exhaustive = std::max(exhaustive, conv.max_abs_diff(expected));
      }
    for (int t = 0; t < 10; ++t) {
      Section a = Section::zeros(g);
      Section b = Section::zeros(g);
      for (auto& fib : a.fibers)
        for (auto& v : fib) v = rng.complex_gaussian();
      for (auto& fib : b.fibers)
        for (auto& v : fib) v = rng.complex_gaussian();
      exhaustive = std::max(exhaustive, matmul_dev(g, h, n, a, b));
    }
  }
  rep.add_deviation("pair_groupoid_matmul_n_le_6", exhaustive, 1e-12);

  // Worked 2x2 anchor from the matrix correspondence.
  {
    const FiniteGroupoid g = zoo::pair_groupoid(2);
    const HaarSystem h = HaarSystem::counting(g);
    Section a = Section::zeros(g), b = Section::zeros(g);
    // a = [[1,2],[3,4]], b = [[0,1],[1,0]] with element id = row*2+col
    a.set(g, 0, 1.0);
    a.set(g, 1, 2.0);
    a.set(g, 2, 3.0);
    a.set(g, 3, 4.0);
    b.set(g, 1, 1.0);
    b.set(g, 2, 1.0);
    const Section conv = convolve(g, h, a, b);
    Section want = Section::zeros(g);
    want.set(g, 0, 2.0);
    want.set(g, 1, 1.0);
    want.set(g, 2, 4.0);
    want.set(g, 3, 3.0);
    rep.add_deviation("anchor_2x2", conv.max_abs_diff(want), 1e-14);
  }

  double randomized = 0.0;
  {
    const int n = 32;
    const FiniteGroupoid g = zoo::pair_groupoid(n);
    const HaarSystem h = HaarSystem::counting(g);
    for (int t = 0; t < 5; ++t) {
      Section a = Section::zeros(g);
      Section b = Section::zeros(g);
      for (auto& fib : a.fibers)
        for (auto& v : fib) v = rng.complex_gaussian();
      for (auto& fib : b.fibers)
        for (auto& v : fib) v = rng.complex_gaussian();
      randomized = std::max(randomized, matmul_dev(g, h, n, a, b));
    }
  }
  rep.add_deviation("pair_groupoid_matmul_n_32", randomized, 1e-12);
  return rep;
}

// ---------------------------------------------------------------------------
// convalg.isometry
// ---------------------------------------------------------------------------

SuiteReport suite_isometry(const SuiteConfig& cfg) {
  SuiteReport rep;
  rep.suite = "convalg.isometry";
  Rng rng(Rng::mix(cfg.seed, rep.suite));
  const int per_element = n_or(cfg, 100);
  rep.trials = per_element;

  double worst = 0.0;
  for (const auto& gid : zoo_groupoids(cfg)) {
    const FiniteGroupoid g = zoo::groupoid_by_id(gid);
    for (const bool weighted : {false, true}) {
      const HaarSystem h = haar_for(g, weighted);
      const auto pair = zoo::young_pair("power:2", cfg.tol);
      for (int x = 0; x < g.size(); ++x) {
        for (int t = 0; t < per_element; ++t) {
          const FiberFunction f = random_fiber(rng, g, g.d(x), rng.uniform(0.2, 3.0));
          // Translate through the raw tables (no context needed here).
          const auto& target = g.fiber(g.r(x));
          FiberFunction moved{g.r(x), std::vector<cplx>(target.size())};
          const int xin = g.inverse(x);
          for (std::size_t j = 0; j < target.size(); ++j) {
            const int pre = g.product(xin, target[j]);
            moved.values[j] = f.values[static_cast<std::size_t>(g.fiber_position(pre))];
          }
          const double a = gauge_norm(pair.phi, g, h, f, cfg.tol);
          const double b = gauge_norm(pair.phi, g, h, moved, cfg.tol);
          worst = std::max(worst, std::abs(a - b) / std::max(1.0, a));
        }
      }
    }
  }
  rep.add_deviation("left_translation_isometry", worst, 1e-12);

  // Composition and unit laws of the representation (through a context).
  {
    const auto ctx = make_ctx("pair:3", "power:2", cfg);
    const FiniteGroupoid& g = ctx.groupoid();
    double dev = 0.0;
    for (int x = 0; x < g.size(); ++x)
      for (int y = 0; y < g.size(); ++y) {
        if (!g.composable(x, y)) continue;
        const FiberFunction f = random_fiber(rng, g, g.d(y));
        const FiberFunction once = ctx.left_translate(g.product(x, y), f);
        const FiberFunction twice = ctx.left_translate(x, ctx.left_translate(y, f));
        for (std::size_t j = 0; j < once.values.size(); ++j)
          dev = std::max(dev, std::abs(once.values[j] - twice.values[j]));
      }
    for (const int u : g.units()) {
      const FiberFunction f = random_fiber(rng, g, u);
      const FiberFunction same = ctx.left_translate(u, f);
      for (std::size_t j = 0; j < f.values.size(); ++j)
        dev = std::max(dev, std::abs(same.values[j] - f.values[j]));
    }
    // L_{x^-1} L_x = identity.
    for (int x = 0; x < g.size(); ++x) {
      const FiberFunction f = random_fiber(rng, g, g.d(x));
      const FiberFunction back = ctx.left_translate(g.inverse(x), ctx.left_translate(x, f));
      for (std::size_t j = 0; j < f.values.size(); ++j)
        dev = std::max(dev, std::abs(back.values[j] - f.values[j]));
    }
    rep.add_deviation("representation_laws", dev, 0.0);
  }
  return rep;
}

// ---------------------------------------------------------------------------
// convalg.associativity
// ---------------------------------------------------------------------------

SuiteReport suite_associativity(const SuiteConfig& cfg) {
  SuiteReport rep;
  rep.suite = "convalg.associativity";
  Rng rng(Rng::mix(cfg.seed, rep.suite));
  const int trials = n_or(cfg, 100);
  rep.trials = trials;

  double assoc = 0.0;
  double covariance = 0.0;
  double bilinear = 0.0;
  for (const auto& gid : convolution_groupoids(cfg)) {
    const auto ctx = make_ctx(gid, "power:2", cfg, false);
    const auto wctx = make_ctx(gid, "power:2", cfg, true);
    for (const auto* c : {&ctx, &wctx}) {
      for (int t = 0; t < trials; ++t) {
        const Section f = c->random_section(rng);
        const Section g = c->random_section(rng);
        const Section k = c->random_section(rng);
        assoc = std::max(assoc,
                         c->convolve(c->convolve(f, g), k)
                             .max_abs_diff(c->convolve(f, c->convolve(g, k))));
        // Bilinearity spot check.
        const cplx a = rng.complex_gaussian();
        bilinear = std::max(bilinear, c->convolve(a * f + g, k)
                                          .max_abs_diff(a * c->convolve(f, k) +
                                                        c->convolve(g, k)));
      }
      // Translation covariance L_z (f*g)^{d(z)} = (L_z f * g)^{r(z)}.
      const FiniteGroupoid& g = c->groupoid();
      for (int z = 0; z < g.size(); ++z) {
        const Section f = c->random_section(rng);
        const Section gs = c->random_section(rng);
        const Section fg = c->convolve(f, gs);
        const FiberFunction lhs = c->left_translate(z, fg.fiber(g, g.d(z)));
        Section f_tilde = f;
        const FiberFunction moved = c->left_translate(z, f.fiber(g, g.d(z)));
        f_tilde.fibers[static_cast<std::size_t>(g.unit_index(g.r(z)))] = moved.values;
        const FiberFunction rhs = c->convolve(f_tilde, gs).fiber(g, g.r(z));
        for (std::size_t j = 0; j < lhs.values.size(); ++j)
          covariance = std::max(covariance, std::abs(lhs.values[j] - rhs.values[j]));
      }
    }
  }
  rep.add_deviation("convolution_associative", assoc, 1e-12);
  rep.add_deviation("convolution_bilinear", bilinear, 1e-12);
  rep.add_deviation("translation_covariance", covariance, 1e-12);
  return rep;
}

// ---------------------------------------------------------------------------
// convalg.banach_bound
// ---------------------------------------------------------------------------

SuiteReport suite_banach_bound(const SuiteConfig& cfg) {
  SuiteReport rep;
  rep.suite = "convalg.banach_bound";
  Rng rng(Rng::mix(cfg.seed, rep.suite));
  const int trials = n_or(cfg, 1000);
  rep.trials = trials;

  double conv_slack = 1e300;
  double submult_slack = 1e300;
  for (const auto& gid : convolution_groupoids(cfg)) {
    for (const auto& yid : delta2_pairs(cfg)) {
      for (const bool weighted : {false, true}) {
        const auto ctx = make_ctx(gid, yid, cfg, weighted);
        const int count = weighted ? std::max(trials / 10, 10) : trials;
        for (int t = 0; t < count; ++t) {
          const Section f = ctx.random_section(rng, rng.uniform(0.2, 2.0));
          const Section g = ctx.random_section(rng, rng.uniform(0.2, 2.0));
          const auto s = ctx.banach_algebra_bound_slack(f, g);
          conv_slack = std::min(conv_slack, s.convolution_slack);
          submult_slack = std::min(submult_slack, s.submultiplicative_slack);
        }
        // Zero boundary.
        const auto s = ctx.banach_algebra_bound_slack(ctx.zero_section(),
                                                      ctx.random_section(rng));
        conv_slack = std::min(conv_slack, s.convolution_slack);
      }
    }
  }
  rep.add_slack("convolution_bound", conv_slack, cfg.tol.check_slack);
  rep.add_slack("submultiplicative_rescaled", submult_slack, cfg.tol.check_slack);

  // Commutative group bundles commute...
  {
    const auto ctx = make_ctx("bundle:z2+z3", "power:2", cfg);
    double dev = 0.0;
    for (int t = 0; t < std::min(trials, 200); ++t)
      dev = std::max(dev, ctx.commutativity_deviation(ctx.random_section(rng),
                                                      ctx.random_section(rng)));
    rep.add_deviation("commutative_bundle", dev, 1e-12);
  }
  // ...the pair groupoid refuses the question...
  {
    const auto ctx = make_ctx("pair:2", "power:2", cfg);
    bool threw = false;
    try {
      ctx.commutativity_deviation(ctx.random_section(rng), ctx.random_section(rng));
    } catch (const NotGroupBundle&) {
      threw = true;
    }
    rep.add_flag("pair_not_group_bundle", threw);
  }
  // ...and S3 produces an honest witness.
  {
    const auto ctx = make_ctx("bundle:s3", "power:2", cfg);
    double best = 0.0;
    std::string witness;
    const FiniteGroupoid& g = ctx.groupoid();
    for (int x = 0; x < g.size() && best < 0.5; ++x)
      for (int y = 0; y < g.size() && best < 0.5; ++y) {
        const double dev =
            ctx.commutativity_deviation(ctx.delta_section(x), ctx.delta_section(y));
        if (dev > best) {
          best = dev;
          witness = "delta pair (" + std::to_string(x) + "," + std::to_string(y) + ")";
        }
      }
    rep.add_flag("s3_noncommutative_witness", best > 0.5, witness);
  }
  return rep;
}

// ---------------------------------------------------------------------------
// convalg.convolver_bounds
// ---------------------------------------------------------------------------

SuiteReport suite_convolver_bounds(const SuiteConfig& cfg) {
  SuiteReport rep;
  rep.suite = "convalg.convolver_bounds";
  Rng rng(Rng::mix(cfg.seed, rep.suite));
  const int trials = n_or(cfg, 1000);
  rep.trials = trials;

  double left = 1e300;
  double right = 1e300;
  bool tilde_convex = true;
  for (const auto& gid : convolution_groupoids(cfg)) {
    for (const auto& yid : both_delta2_pairs(cfg)) {
      const auto ctx = make_ctx(gid, yid, cfg);
      // ||L_f|| <= ||f||_1 on a random f (full trials), the unit indicator
      // (exact identity, slack 0) and the zero section.
      left = std::min(left, ctx.left_convolver_norm_slack(ctx.random_section(rng), rng,
                                                          trials));
      left = std::min(left,
                      ctx.left_convolver_norm_slack(ctx.indicator_of_units(), rng, 50));
      left = std::min(left, ctx.left_convolver_norm_slack(ctx.zero_section(), rng, 10));

      // ||R_F|| <= 2 K_F^2. A pair failing the "both Delta2" hypothesis
      // (possible under --phi restriction) is recorded as refused rather
      // than crashing the suite.
      try {
        const auto r1 =
            ctx.right_convolver_bound_check(ctx.random_section(rng), rng, trials);
        right = std::min(right, r1.slack);
        tilde_convex = tilde_convex && r1.psi_tilde_convex_on_sample;
        const auto r2 = ctx.right_convolver_bound_check(ctx.indicator_of_units(), rng, 50);
        right = std::min(right, r2.slack);
        const auto r0 = ctx.right_convolver_bound_check(ctx.zero_section(), rng, 5);
        if (std::abs(r0.k_f) > 0 || std::abs(r0.norm_estimate) > 0)
          rep.add_flag(gid + "/" + yid + "/zero_F_degenerate", false,
                       "K_F or estimate nonzero for F = 0");
      } catch (const DivergentRatio& e) {
        rep.add_flag(gid + "/" + yid + "/right_convolver_refused",
                     !(ctx.phi_delta2() && ctx.psi_delta2()), e.what());
      }
    }
  }
  rep.add_slack("left_convolver_bound", left, cfg.tol.check_slack);
  rep.add_slack("right_convolver_bound", right, cfg.tol.check_slack);
  rep.add_flag("psi_tilde_convex_on_sample", tilde_convex);

  // The non-Delta2 pair is refused.
  {
    const auto ctx = make_ctx("bundle:z2", "cosh", cfg);
    bool threw = false;
    try {
      ctx.right_convolver_bound_check(ctx.random_section(rng), rng, 5);
    } catch (const DivergentRatio&) {
      threw = true;
    }
    rep.add_flag("cosh_pair_refused", threw);
  }
  return rep;
}

// ---------------------------------------------------------------------------
// convalg.identity
// ---------------------------------------------------------------------------

SuiteReport suite_identity(const SuiteConfig& cfg) {
  SuiteReport rep;
  rep.suite = "convalg.identity";
  Rng rng(Rng::mix(cfg.seed, rep.suite));
  const int trials = n_or(cfg, 100);
  rep.trials = trials;

  double dev = 0.0;
  double l1_dev = 0.0;
  for (const auto& gid : zoo_groupoids(cfg)) {
    for (const bool weighted : {false, true}) {
      const auto ctx = make_ctx(gid, "power:2", cfg, weighted);
      std::vector<Section> probes;
      probes.push_back(ctx.zero_section());
      for (int t = 0; t < trials; ++t) probes.push_back(ctx.random_section(rng));
      const auto idrep = ctx.approximate_identity_check(probes);
      dev = std::max(dev, idrep.max_deviation);
      l1_dev = std::max(l1_dev, std::abs(idrep.l1 - 1.0));
    }
  }
  rep.add_deviation("exact_identity", dev, 1e-12);
  rep.add_deviation("identity_l1_is_one", l1_dev, 1e-12);
  return rep;
}

// ---------------------------------------------------------------------------
// ideals.theorem
// ---------------------------------------------------------------------------

SuiteReport suite_ideals(const SuiteConfig& cfg) {
  SuiteReport rep;
  rep.suite = "ideals.theorem";
  Rng rng(Rng::mix(cfg.seed, rep.suite));
  const int bundles = n_or(cfg, 200);
  rep.trials = bundles;

  const auto cells = restricted_cells(
      cfg, {{"pair:2", "power:2"}, {"bundle:z2+z3", "power:2"}, {"trans:z2swap", "npower:2"}});

  int disagreements = 0;
  int checked = 0;
  for (const auto& [gid, yid] : cells) {
    const auto ctx = make_ctx(gid, yid, cfg);
    const int per_cell = (bundles + static_cast<int>(cells.size()) - 1) /
                         static_cast<int>(cells.size());
    for (int t = 0; t < per_cell; ++t) {
      const Subbundle sub = Subbundle::random(ctx.groupoid(), rng);
      const auto verdict = theorem_equivalence(sub, ctx, rng, 20);
      ++checked;
      if (!verdict.agree) ++disagreements;
    }
    // Structured invariant family: orbit spans.
    for (int t = 0; t < 8; ++t) {
      const Subbundle sub = Subbundle::orbit_span(ctx, rng);
      const auto verdict = theorem_equivalence(sub, ctx, rng, 20);
      ++checked;
      if (!(verdict.agree && verdict.invariant && verdict.left_ideal)) ++disagreements;
    }
    // Zero and full bundles are two-sided fixed points.
    for (const Subbundle& sub :
         {Subbundle::zero(ctx.groupoid()), Subbundle::full(ctx.groupoid())}) {
      const auto verdict = theorem_equivalence(sub, ctx, rng, 10);
      ++checked;
      if (!(verdict.agree && verdict.invariant && verdict.left_ideal)) ++disagreements;
    }
  }

  // The structured counterexample: full fiber over the first unit of the
  // pair groupoid, zero over the second — not invariant, not an ideal.
  {
    const auto ctx = make_ctx("pair:2", "power:2", cfg);
    const FiniteGroupoid& g = ctx.groupoid();
    std::vector<std::vector<std::vector<cplx>>> per(static_cast<std::size_t>(g.unit_count()));
    per[0].push_back({cplx{1, 0}, cplx{0, 0}});
    per[0].push_back({cplx{0, 0}, cplx{1, 0}});
    const Subbundle sub(g, per);
    const auto inv = is_invariant(sub, ctx);
    const auto ideal = is_left_ideal(sub, ctx, rng, 20);
    rep.add_flag("pair_rank10_not_invariant", !inv.invariant,
                 inv.witness.value_or(""));
    rep.add_flag("pair_rank10_not_ideal", !ideal.left_ideal, ideal.witness.value_or(""));
    ++checked;
    if (inv.invariant != ideal.left_ideal) ++disagreements;
    // Group bundle analogue IS invariant (translations stay fiberwise).
    const auto bctx = make_ctx("bundle:z2+z3", "power:2", cfg);
    const FiniteGroupoid& bg = bctx.groupoid();
    std::vector<std::vector<std::vector<cplx>>> bper(static_cast<std::size_t>(bg.unit_count()));
    bper[0].push_back({cplx{1, 0}, cplx{0, 0}});
    bper[0].push_back({cplx{0, 0}, cplx{1, 0}});
    const Subbundle bsub(bg, bper);
    const auto binv = is_invariant(bsub, bctx);
    const auto bideal = is_left_ideal(bsub, bctx, rng, 20);
    rep.add_flag("bundle_per_fiber_invariant", binv.invariant, binv.witness.value_or(""));
    rep.add_flag("bundle_per_fiber_ideal", bideal.left_ideal, bideal.witness.value_or(""));
  }

  rep.add_deviation("equivalence_disagreements", disagreements, 0.0,
                    "checked " + std::to_string(checked) + " subbundles");
  return rep;
}

// ---------------------------------------------------------------------------
// convolutor.suite
// ---------------------------------------------------------------------------

SuiteReport suite_convolutor(const SuiteConfig& cfg) {
  SuiteReport rep;
  rep.suite = "convolutor.suite";
  Rng rng(Rng::mix(cfg.seed, rep.suite));
  const int trials = n_or(cfg, 1000);
  rep.trials = trials;

  const auto identity_op = [] {
    return SectionOperator{"identity", [](const Section& s) { return s; }, std::nullopt};
  };

  const auto cells = restricted_cells(cfg, {{"bundle:z2", "power:2"}, {"pair:2", "npower:2"}});

  double convolutor_dev = 0.0;
  double null_rep = 0.0;
  double module_dev = 0.0;
  double cost_slack = 1e300;
  double rep_invariant = 0.0;
  for (const auto& [gid, yid] : cells) {
    const auto ctx = make_ctx(gid, yid, cfg);
    const FiniteGroupoid& g = ctx.groupoid();

    // Positive cases: identity, left convolutions, the b o r module action.
    std::vector<SectionOperator> ops;
    ops.push_back(identity_op());
    for (int i = 0; i < 2; ++i) {
      auto h = std::make_shared<Section>(ctx.random_section(rng));
      ops.push_back(SectionOperator{"L_h" + std::to_string(i),
                                    [&ctx, h](const Section& s) { return ctx.convolve(*h, s); },
                                    std::nullopt});
    }
    {
      auto b = std::make_shared<std::vector<cplx>>();
      for (int ui = 0; ui < g.unit_count(); ++ui)
        b->push_back(cplx{1.0 + 0.5 * ui, 0.25 * ui});
      ops.push_back(SectionOperator{"mult_b_of_r",
                                    [&g, b](const Section& s) {
                                      Section out = s;
                                      for (int ui = 0; ui < g.unit_count(); ++ui)
                                        for (auto& v : out.fibers[static_cast<std::size_t>(ui)])
                                          v *= (*b)[static_cast<std::size_t>(ui)];
                                      return out;
                                    },
                                    std::nullopt});
    }
    for (const auto& op : ops) {
      // The left convolutions take the full random-trial budget; the rest
      // get a lighter pass on top of the exhaustive delta pairs.
      const int count = op.name.rfind("L_h", 0) == 0 ? std::min(trials, 1000) : 50;
      const auto crep = is_convolutor(ctx, op, rng, count);
      if (!crep.pass)
        rep.add_flag(gid + "/" + op.name + "/is_convolutor", false,
                     crep.witness.value_or(""));
      convolutor_dev = std::max(convolutor_dev, crep.max_deviation);
      rep.add_deviation(gid + "/" + op.name + "/linearity",
                        linearity_deviation(ctx, op, rng, 20), 1e-10);
    }

    // Negative case: multiplication by a non-constant function of d(x) mixes
    // columns and fails T(f*g) = Tf*g on the pair groupoid.
    if (gid == "pair:2") {
      SectionOperator bad{"mult_b_of_d",
                          [&g](const Section& s) {
                            Section out = s;
                            for (int x = 0; x < g.size(); ++x)
                              out.set(g, x, s.at(g, x) *
                                                cplx{1.0 + g.unit_index(g.d(x)), 0.0});
                            return out;
                          },
                          std::nullopt};
      const auto crep = is_convolutor(ctx, bad, rng, 20);
      rep.add_flag("pair:2/mult_b_of_d_rejected", !crep.pass,
                   crep.witness.value_or("no witness found"));
    }

    // Null representations and well-definedness.
    for (int t = 0; t < std::min(trials, 100); ++t) {
      const Section f = ctx.random_section(rng);
      const Section g1 = ctx.random_section(rng);
      const Section g2 = ctx.random_section(rng);
      const Section gsum = g1 + g2;
      const ARepresentation null_r = ARepresentation::from_terms(
          ctx, {{gsum, f}, {cplx{-1, 0} * g1, f}, {cplx{-1, 0} * g2, f}});
      rep_invariant = std::max(rep_invariant, null_r.value.max_abs());
      for (const auto& op : {ops[0], ops[1]}) {
        null_rep = std::max(null_rep, sup_abs(phi_T(ctx, op, null_r)));
      }
    }

    // Right-module identity phi_T(h b) = phi_T(h) b and the cost bound.
    for (int t = 0; t < std::min(trials, 100); ++t) {
      std::vector<std::pair<Section, Section>> terms;
      const int k = 1 + rng.index(2);
      for (int i = 0; i < k; ++i)
        terms.emplace_back(ctx.random_section(rng), ctx.random_section(rng));
      const ARepresentation h = ARepresentation::from_terms(ctx, std::move(terms));
      rep_invariant = std::max(rep_invariant, h.recompute_deviation(ctx));
      std::vector<cplx> b;
      double bmax = 0.0;
      for (int ui = 0; ui < g.unit_count(); ++ui) {
        b.push_back(rng.complex_gaussian());
        bmax = std::max(bmax, std::abs(b.back()));
      }
      const auto actions = module_actions(ctx, b, h);
      module_dev = std::max({module_dev, actions.pointwise_deviation_bh,
                             actions.pointwise_deviation_hb});
      cost_slack = std::min(cost_slack, bmax * h.cost - actions.hb.cost);
      cost_slack = std::min(cost_slack, bmax * h.cost - actions.bh.cost);

      const auto lhs = phi_T(ctx, ops[1], actions.hb);
      auto rhs = phi_T(ctx, ops[1], h);
      for (int ui = 0; ui < g.unit_count(); ++ui)
        rhs[static_cast<std::size_t>(ui)] *= b[static_cast<std::size_t>(ui)];
      double dev = 0.0;
      for (std::size_t i = 0; i < lhs.size(); ++i)
        dev = std::max(dev, std::abs(lhs[i] - rhs[i]));
      module_dev = std::max(module_dev, dev);

      // b == 1 leaves everything unchanged.
      const std::vector<cplx> ones(static_cast<std::size_t>(g.unit_count()), cplx{1, 0});
      const auto same = module_actions(ctx, ones, h);
      module_dev = std::max(module_dev, same.hb.value.max_abs_diff(h.value));
      module_dev = std::max(module_dev, same.bh.value.max_abs_diff(h.value));
    }

    // Pairing bound.
    double pair_slack = 1e300;
    for (int t = 0; t < 200; ++t)
      pair_slack = std::min(pair_slack, pairing_bound_slack(ctx, ctx.random_section(rng),
                                                            ctx.random_section(rng)));
    rep.add_slack(gid + "/pairing_bound", pair_slack, cfg.tol.check_slack);

    // Truncation through the exact identity.
    const auto trep = truncation_check(ctx, ops[1], rng, 50);
    rep.add_deviation(gid + "/truncation_exact", trep.max_deviation, 1e-12);
    rep.add_slack(gid + "/truncation_bound", trep.bound_slack, cfg.tol.check_slack);
  }
  rep.add_deviation("is_convolutor_positive_cases", convolutor_dev, 1e-10);
  rep.add_deviation("null_representation_phi_T", null_rep, 1e-9);
  rep.add_deviation("module_identities", module_dev, 1e-12);
  rep.add_slack("module_cost_bound", cost_slack, cfg.tol.check_slack);
  rep.add_deviation("representation_value_invariant", rep_invariant, 1e-12);

  // Norm sandwich, exact-norm operator on the criterion cell.
  {
    const auto ctx = make_ctx("bundle:z2", "power:2", cfg);
    const auto sandwich =
        norm_sandwich_check(ctx, identity_op(), 1.0, /*estimate_exact=*/true, rng, trials);
    rep.add_slack("sandwich_identity_upper", sandwich.upper_min_slack, cfg.tol.check_slack);
    rep.add_slack("sandwich_identity_lower", sandwich.lower_slack, 1e-6);
    rep.add_flag("sandwich_identity_no_hard_violations",
                 sandwich.upper_hard_violations == 0);

    // Zero operator: everything degenerates to zero.
    SectionOperator zero{"zero", [&ctx](const Section&) { return ctx.zero_section(); },
                         std::nullopt};
    const auto zs = norm_sandwich_check(ctx, zero, 0.0, true, rng, 50);
    rep.add_flag("sandwich_zero_trivial",
                 zs.upper_min_slack >= -1e-12 && zs.lower_best <= 1e-12);

    // Sampled-norm operator: hard violations must not appear; banded ones
    // are reported.
    auto h = std::make_shared<Section>(ctx.random_section(rng));
    SectionOperator lh{"L_h", [&ctx, h](const Section& s) { return ctx.convolve(*h, s); },
                       std::nullopt};
    const double est = estimate_operator_norm(ctx, lh, rng, 400);
    const auto ls = norm_sandwich_check(ctx, lh, est, /*estimate_exact=*/false, rng,
                                        std::min(trials, 300));
    rep.add_flag("sandwich_sampled_no_hard_violations", ls.upper_hard_violations == 0,
                 ls.upper_reported_only
                     ? std::to_string(ls.upper_reported_only) + " within the 5% band"
                     : "");
  }
  return rep;
}

// ---------------------------------------------------------------------------
// fieldlab.continuity
// ---------------------------------------------------------------------------

SuiteReport suite_fieldlab(const SuiteConfig& cfg) {
  SuiteReport rep;
  rep.suite = "fieldlab.continuity";
  const auto phi = zoo::power(2.0);

  // Closed-form anchor: Z2 fibers with mass 1+u, f == 1, Phi = x^2 gives
  // gauge sqrt(2(1+u)) and Orlicz twice that.
  {
    const auto fam = family_preset("z2-linear");
    const auto prof = norm_continuity_profile(fam, phi, NormKind::gauge, 32, cfg.tol);
    double dev = 0.0;
    for (std::size_t i = 0; i < prof.u.size(); ++i)
      dev = std::max(dev, std::abs(prof.norm[i] - std::sqrt(2.0 * (1.0 + prof.u[i]))) /
                              prof.norm[i]);
    rep.add_deviation("z2_linear_gauge_closed_form", dev, 1e-9);

    const auto oprof = norm_continuity_profile(fam, phi, NormKind::orlicz, 32, cfg.tol);
    double odev = 0.0;
    for (std::size_t i = 0; i < oprof.u.size(); ++i)
      odev = std::max(odev, std::abs(oprof.norm[i] -
                                     2.0 * std::sqrt(2.0 * (1.0 + oprof.u[i]))) /
                                oprof.norm[i]);
    rep.add_deviation("z2_linear_orlicz_closed_form", odev, 1e-8);

    const auto refined = refine_profile(fam, phi, NormKind::gauge, 32, cfg.tol);
    rep.add_deviation("z2_linear_modulus_ratio", refined.ratio, 0.75);

    // Strong continuity: translations act trivially on the constant section,
    // so the deviation profile is exactly the norm-profile difference.
    const std::vector<int> path(32, 1);
    const auto strong = strong_continuity_profile(fam, phi, path, 32, cfg.tol);
    double sdev = 0.0;
    for (std::size_t i = 0; i + 1 < prof.norm.size(); ++i)
      sdev = std::max(sdev, std::abs(strong.deviation[i] -
                                     std::abs(prof.norm[i + 1] - prof.norm[i])));
    rep.add_deviation("z2_linear_strong_equals_profile_diff", sdev, 1e-12);
    const std::vector<int> path2(64, 1);
    const auto strong2 = strong_continuity_profile(fam, phi, path2, 64, cfg.tol);
    rep.add_deviation("strong_modulus_ratio",
                      strong.modulus > 0 ? strong2.modulus / strong.modulus : 0.0, 0.75);
  }

  // Constant family: flat profile, zero deviation everywhere.
  {
    const auto fam = family_preset("z2-constant");
    const auto prof = norm_continuity_profile(fam, phi, NormKind::gauge, 16, cfg.tol);
    rep.add_deviation("constant_family_modulus", prof.modulus, 1e-13);
    const std::vector<int> path(16, 1);
    const auto strong = strong_continuity_profile(fam, phi, path, 16, cfg.tol);
    rep.add_deviation("constant_family_strong", strong.modulus, 1e-13);
  }

  // Shrinking approximate identities.
  {
    const auto fam4 = family_preset("z4-wave");
    const auto errors4 =
        shrinking_identity_errors(fam4, phi, cyclic_filtration(4, 2), 8, cfg.tol);
    bool monotone = true;
    for (std::size_t i = 0; i + 1 < errors4.size(); ++i)
      monotone = monotone && errors4[i + 1] <= errors4[i] + 1e-12;
    rep.add_flag("z4_errors_monotone", monotone);
    rep.add_deviation("z4_terminal_error", errors4.back(), 1e-12);
    rep.add_flag("z4_first_level_positive", errors4.front() > 1e-3);

    const auto fam8 = family_preset("z8-window");
    const auto errors8 =
        shrinking_identity_errors(fam8, phi, cyclic_filtration(8, 4), 8, cfg.tol);
    bool monotone8 = true;
    for (std::size_t i = 0; i + 1 < errors8.size(); ++i)
      monotone8 = monotone8 && errors8[i + 1] <= errors8[i] + 1e-12;
    rep.add_flag("z8_errors_monotone", monotone8);
    rep.add_deviation("z8_terminal_error", errors8.back(), 1e-12);

    // Means preserve constants: the constant family has zero error at every
    // level of any valid filtration.
    const auto famc = family_preset("z2-constant");
    const auto errc =
        shrinking_identity_errors(famc, phi, cyclic_filtration(2, 2), 4, cfg.tol);
    double cmax = 0.0;
    for (const double e : errc) cmax = std::max(cmax, e);
    rep.add_deviation("constant_section_exact", cmax, 1e-13);
  }

  // The induced sampled bundle really is a validated groupoid + Haar pair.
  {
    const auto fam = family_preset("z8-window");
    const FiniteGroupoid g = induced_groupoid(fam, 8);
    const HaarSystem h = induced_haar(fam, g, 8);
    rep.add_flag("induced_bundle_valid",
                 validate_groupoid(g).ok() && validate_haar(g, h, cfg.tol).ok());
  }
  return rep;
}

using SuiteFn = SuiteReport (*)(const SuiteConfig&);

const std::vector<std::pair<std::string, SuiteFn>>& registry() {
  static const std::vector<std::pair<std::string, SuiteFn>> suites = {
      {"convalg.associativity", suite_associativity},
      {"convalg.banach_bound", suite_banach_bound},
      {"convalg.convolver_bounds", suite_convolver_bounds},
      {"convalg.identity", suite_identity},
      {"convalg.isometry", suite_isometry},
      {"convalg.matrix", suite_matrix},
      {"convolutor.suite", suite_convolutor},
      {"fieldlab.continuity", suite_fieldlab},
      {"groupoid.axioms", suite_groupoid},
      {"ideals.theorem", suite_ideals},
      {"orlicz.holder_fenchel", suite_holder},
      {"orlicz.jensen", suite_jensen},
      {"orlicz.l1_embedding", suite_l1},
      {"orlicz.norms", suite_orlicz_norms},
      {"orlicz.sandwich", suite_orlicz_sandwich},
      {"young.invariants", suite_young},
  };
  return suites;
}

}  // namespace

std::vector<std::string> suite_names() {
  std::vector<std::string> names;
  for (const auto& [name, fn] : registry()) names.push_back(name);
  return names;
}

std::vector<SuiteReport> run_suites(const std::string& selector, const SuiteConfig& cfg) {
  // "all", an exact suite name, or a module prefix ("convalg", "orlicz").
  const auto matches = [&selector](const std::string& name) {
    if (selector == "all" || selector == name) return true;
    return name.size() > selector.size() && name[selector.size()] == '.' &&
           name.compare(0, selector.size(), selector) == 0;
  };

  // Worker pool: suites are pure given their per-name seed, so they run
  // concurrently; assembly stays ordered by suite name for determinism.
  std::vector<std::future<SuiteReport>> jobs;
  for (const auto& [name, fn] : registry()) {
    if (!matches(name)) continue;
    jobs.push_back(std::async(std::launch::async, [fn = fn, &cfg] {
      const auto start = std::chrono::steady_clock::now();
      SuiteReport rep = fn(cfg);
      rep.seed = cfg.seed;
      if (rep.trials == 0) rep.trials = cfg.trials;
      rep.wall_ms = std::chrono::duration<double, std::milli>(
                        std::chrono::steady_clock::now() - start)
                        .count();
      return rep;
    }));
  }
  if (jobs.empty()) throw ConfigError("unknown suite '" + selector + "'");
  std::vector<SuiteReport> out;
  out.reserve(jobs.size());
  for (auto& job : jobs) out.push_back(job.get());
  std::sort(out.begin(), out.end(),
            [](const SuiteReport& a, const SuiteReport& b) { return a.suite < b.suite; });
  return out;
}

}  // namespace ogk
