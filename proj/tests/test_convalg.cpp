#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>

#include "doctest.h"
#include "ogk/convalg.hpp"
#include "ogk/errors.hpp"

using namespace ogk;

namespace {

ConvolutionContext ctx_of(const std::string& gid, const std::string& yid,
                          bool weighted = false) {
  FiniteGroupoid g = zoo::groupoid_by_id(gid);
  std::vector<double> m;
  for (int i = 0; i < g.unit_count(); ++i) m.push_back(1.0 + 0.5 * i);
  HaarSystem h = weighted ? HaarSystem::from_unit_masses(g, m) : HaarSystem::counting(g);
  return ConvolutionContext(std::move(g), std::move(h), zoo::young_pair(yid));
}

}  // namespace

TEST_CASE("pair groupoid convolution is matrix multiplication") {
  const auto ctx = ctx_of("pair:2", "power:2");
  const FiniteGroupoid& g = ctx.groupoid();
  Section a = ctx.zero_section(), b = ctx.zero_section();
  // a = [[1,2],[3,4]], b = [[0,1],[1,0]], element (i,j) has id 2i + j.
  a.set(g, 0, 1.0);
  a.set(g, 1, 2.0);
  a.set(g, 2, 3.0);
  a.set(g, 3, 4.0);
  b.set(g, 1, 1.0);
  b.set(g, 2, 1.0);
  const Section c = ctx.convolve(a, b);
  CHECK(c.at(g, 0) == cplx{2, 0});
  CHECK(c.at(g, 1) == cplx{1, 0});
  CHECK(c.at(g, 2) == cplx{4, 0});
  CHECK(c.at(g, 3) == cplx{3, 0});
}

TEST_CASE("Z2 group convolution") {
  const auto ctx = ctx_of("bundle:z2", "power:2");
  const FiniteGroupoid& g = ctx.groupoid();
  Section f = ctx.zero_section(), k = ctx.zero_section();
  f.set(g, 0, cplx{2, 1});
  f.set(g, 1, cplx{-1, 0});
  k.set(g, 0, cplx{3, 0});
  k.set(g, 1, cplx{0, 2});
  const Section c = ctx.convolve(f, k);
  // (a0 b0 + a1 b1, a0 b1 + a1 b0)
  CHECK(c.at(g, 0) == cplx{2, 1} * cplx{3, 0} + cplx{-1, 0} * cplx{0, 2});
  CHECK(c.at(g, 1) == cplx{2, 1} * cplx{0, 2} + cplx{-1, 0} * cplx{3, 0});
}

TEST_CASE("unit indicator convolves as identity under counting Haar") {
  for (const char* gid : {"pair:3", "bundle:z2+z3", "trans:z2swap"}) {
    const auto ctx = ctx_of(gid, "power:2");
    Rng rng(23);
    const Section f = ctx.random_section(rng);
    const Section chi = ctx.indicator_of_units();
    CHECK(ctx.convolve(chi, f).max_abs_diff(f) <= 1e-14);
    CHECK(ctx.convolve(f, chi).max_abs_diff(f) <= 1e-14);
  }
}

TEST_CASE("left translation") {
  const auto ctx = ctx_of("pair:2", "power:2");
  const FiniteGroupoid& g = ctx.groupoid();
  Rng rng(29);

  SUBCASE("units act as the identity") {
    for (const int u : g.units()) {
      FiberFunction f{u, std::vector<cplx>(g.fiber(u).size())};
      for (auto& v : f.values) v = rng.complex_gaussian();
      const FiberFunction same = ctx.left_translate(u, f);
      for (std::size_t j = 0; j < f.values.size(); ++j)
        CHECK(same.values[j] == f.values[j]);
    }
  }
  SUBCASE("x = (1,0) carries row 0 to row 1 isometrically") {
    const int x = 2;  // element (1,0): d = (0,0), r = (1,1)
    REQUIRE(g.d(x) == 0);
    REQUIRE(g.r(x) == 3);
    FiberFunction f{0, {cplx{1, 2}, cplx{3, -1}}};
    const FiberFunction moved = ctx.left_translate(x, f);
    CHECK(moved.unit == 3);
    // (L_x f)(z) = f(x^-1 z): x^-1 = (0,1); for z = (1,0): x^-1 z = (0,0).
    CHECK(moved.values[0] == f.values[0]);
    CHECK(moved.values[1] == f.values[1]);
    CHECK(gauge_norm(ctx.phi(), g, ctx.haar(), moved) ==
          doctest::Approx(gauge_norm(ctx.phi(), g, ctx.haar(), f)).epsilon(1e-13));
  }
  SUBCASE("L_{x^-1} L_x is the identity") {
    for (int x = 0; x < g.size(); ++x) {
      FiberFunction f{g.d(x), std::vector<cplx>(g.fiber(g.d(x)).size())};
      for (auto& v : f.values) v = rng.complex_gaussian();
      const FiberFunction back = ctx.left_translate(g.inverse(x), ctx.left_translate(x, f));
      for (std::size_t j = 0; j < f.values.size(); ++j)
        CHECK(std::abs(back.values[j] - f.values[j]) <= 1e-15);
    }
  }
  SUBCASE("wrong fiber is rejected") {
    FiberFunction f{3, {cplx{1, 0}, cplx{0, 0}}};
    CHECK_THROWS_AS(ctx.left_translate(2, f), FiberMismatch);
  }
}

TEST_CASE("isometry of left translation under weighted Haar") {
  const auto ctx = ctx_of("trans:z2swap", "power:3", true);
  const FiniteGroupoid& g = ctx.groupoid();
  Rng rng(31);
  for (int x = 0; x < g.size(); ++x) {
    for (int t = 0; t < 25; ++t) {
      FiberFunction f{g.d(x), std::vector<cplx>(g.fiber(g.d(x)).size())};
      for (auto& v : f.values) v = 2.0 * rng.complex_gaussian();
      if (f.is_zero()) continue;
      const double a = gauge_norm(ctx.phi(), g, ctx.haar(), f);
      const double b = gauge_norm(ctx.phi(), g, ctx.haar(), ctx.left_translate(x, f));
      CHECK(std::abs(a - b) <= 1e-12 * std::max(1.0, a));
    }
  }
}

TEST_CASE("convolution bound on the worked matrix example") {
  // f = [[1,2],[3,4]], g = [[0,1],[1,0]]: ||f||_1 = 7, ||g||^0 = 1,
  // ||f*g||^0 = 5, so the slack is 2*7*1 - 5 = 9.
  const auto ctx = ctx_of("pair:2", "power:2");
  const FiniteGroupoid& g = ctx.groupoid();
  Section a = ctx.zero_section(), b = ctx.zero_section();
  a.set(g, 0, 1.0);
  a.set(g, 1, 2.0);
  a.set(g, 2, 3.0);
  a.set(g, 3, 4.0);
  b.set(g, 1, 1.0);
  b.set(g, 2, 1.0);
  const auto s = ctx.banach_algebra_bound_slack(a, b);
  CHECK(s.convolution_slack == doctest::Approx(9.0).epsilon(1e-12));
}

TEST_CASE("convolution bound and the rescaled submultiplicativity") {
  Rng rng(37);
  for (const char* gid : {"pair:2", "bundle:z2+z3"}) {
    for (const char* yid : {"power:2", "xlogx"}) {
      const auto ctx = ctx_of(gid, yid);
      double worst = 1e300, worst_sub = 1e300;
      for (int t = 0; t < 150; ++t) {
        const auto s = ctx.banach_algebra_bound_slack(ctx.random_section(rng),
                                                      ctx.random_section(rng));
        worst = std::min(worst, s.convolution_slack);
        worst_sub = std::min(worst_sub, s.submultiplicative_slack);
      }
      CAPTURE(gid);
      CAPTURE(yid);
      CHECK(worst >= -1e-9);
      CHECK(worst_sub >= -1e-9);
      const auto zero = ctx.banach_algebra_bound_slack(ctx.zero_section(),
                                                       ctx.random_section(rng));
      CHECK(zero.convolution_slack == doctest::Approx(0.0));
    }
  }
}

TEST_CASE("commutativity on commutative group bundles only") {
  Rng rng(41);
  const auto abelian = ctx_of("bundle:z2+z3", "power:2");
  for (int t = 0; t < 50; ++t)
    CHECK(abelian.commutativity_deviation(abelian.random_section(rng),
                                          abelian.random_section(rng)) <= 1e-12);

  const auto pair = ctx_of("pair:2", "power:2");
  CHECK_THROWS_AS(pair.commutativity_deviation(pair.random_section(rng),
                                               pair.random_section(rng)),
                  NotGroupBundle);

  const auto s3 = ctx_of("bundle:s3", "power:2");
  double best = 0.0;
  for (int x = 0; x < s3.groupoid().size(); ++x)
    for (int y = 0; y < s3.groupoid().size(); ++y)
      best = std::max(best, s3.commutativity_deviation(s3.delta_section(x),
                                                       s3.delta_section(y)));
  CHECK(best > 0.5);
}

TEST_CASE("left convolver norm bound") {
  Rng rng(43);
  const auto ctx = ctx_of("bundle:z2+z3", "npower:2");
  SUBCASE("unit indicator acts as the identity with norm = ||f||_1 = 1") {
    const double slack = ctx.left_convolver_norm_slack(ctx.indicator_of_units(), rng, 60);
    CHECK(slack == doctest::Approx(0.0).epsilon(1e-12));
  }
  SUBCASE("zero") {
    CHECK(ctx.left_convolver_norm_slack(ctx.zero_section(), rng, 10) == 0.0);
  }
  SUBCASE("random f keeps slack nonnegative") {
    for (int t = 0; t < 15; ++t)
      CHECK(ctx.left_convolver_norm_slack(ctx.random_section(rng), rng, 60) >= -1e-9);
  }
}

TEST_CASE("right convolver bound with the psi-tilde gauge") {
  Rng rng(47);
  const auto ctx = ctx_of("bundle:z2", "npower:2");
  SUBCASE("F = 0 degenerates completely") {
    const auto rep = ctx.right_convolver_bound_check(ctx.zero_section(), rng, 10);
    CHECK(rep.k_f == 0.0);
    CHECK(rep.norm_estimate == 0.0);
    CHECK(rep.slack == 0.0);
  }
  SUBCASE("unit indicator: K_F = sqrt(2), bound 4, R_F the identity") {
    // Phi = x^2/2 is self-conjugate, psi-tilde(a) = a^2; Phi^-1(1) = sqrt(2)
    // sits on one point of the Z2 fiber, so the tilde gauge root solves
    // 2/k^2 = 1.
    const auto rep = ctx.right_convolver_bound_check(ctx.indicator_of_units(), rng, 60);
    CHECK(rep.k_f == doctest::Approx(std::sqrt(2.0)).epsilon(1e-9));
    CHECK(rep.norm_estimate == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(rep.slack == doctest::Approx(3.0).epsilon(1e-8));
    CHECK(rep.psi_tilde_convex_on_sample);
  }
  SUBCASE("random F keeps slack nonnegative") {
    for (int t = 0; t < 10; ++t)
      CHECK(ctx.right_convolver_bound_check(ctx.random_section(rng), rng, 60).slack >=
            -1e-9);
  }
  SUBCASE("non-Delta2 pair is refused") {
    const auto cosh_ctx = ctx_of("bundle:z2", "cosh");
    CHECK_THROWS_AS(cosh_ctx.right_convolver_bound_check(cosh_ctx.zero_section(), rng, 5),
                    DivergentRatio);
  }
}

TEST_CASE("exact identity for counting and weighted Haar") {
  Rng rng(53);
  for (const bool weighted : {false, true}) {
    for (const char* gid : {"pair:2", "bundle:z2+z3", "trans:z2swap"}) {
      const auto ctx = ctx_of(gid, "power:2", weighted);
      std::vector<Section> probes;
      for (int t = 0; t < 30; ++t) probes.push_back(ctx.random_section(rng));
      probes.push_back(ctx.zero_section());
      const auto rep = ctx.approximate_identity_check(probes);
      CAPTURE(gid);
      CAPTURE(weighted);
      CHECK(rep.max_deviation <= 1e-12);
      CHECK(rep.l1 == doctest::Approx(1.0).epsilon(1e-12));
    }
  }
}

TEST_CASE("associativity and translation covariance") {
  Rng rng(59);
  const auto ctx = ctx_of("trans:z2swap", "power:2", true);
  const FiniteGroupoid& g = ctx.groupoid();
  for (int t = 0; t < 40; ++t) {
    const Section f = ctx.random_section(rng);
    const Section k = ctx.random_section(rng);
    const Section m = ctx.random_section(rng);
    CHECK(ctx.convolve(ctx.convolve(f, k), m)
              .max_abs_diff(ctx.convolve(f, ctx.convolve(k, m))) <= 1e-12);
  }
  for (int z = 0; z < g.size(); ++z) {
    const Section f = ctx.random_section(rng);
    const Section k = ctx.random_section(rng);
    const FiberFunction lhs = ctx.left_translate(z, ctx.convolve(f, k).fiber(g, g.d(z)));
    Section f_tilde = f;
    f_tilde.fibers[static_cast<std::size_t>(g.unit_index(g.r(z)))] =
        ctx.left_translate(z, f.fiber(g, g.d(z))).values;
    const FiberFunction rhs = ctx.convolve(f_tilde, k).fiber(g, g.r(z));
    for (std::size_t j = 0; j < lhs.values.size(); ++j)
      CHECK(std::abs(lhs.values[j] - rhs.values[j]) <= 1e-12);
  }
}

TEST_CASE("context validation") {
  SUBCASE("mismatched pair is rejected") {
    FiniteGroupoid g = zoo::groupoid_by_id("bundle:z2");
    HaarSystem h = HaarSystem::counting(g);
    auto pair = zoo::young_pair("power:2");
    pair.psi = zoo::power(3.0);  // not the conjugate
    CHECK_THROWS_AS(ConvolutionContext(std::move(g), std::move(h), pair), Error);
  }
  SUBCASE("non-Delta2 Phi is refused when the groupoid is not flagged compact") {
    FiniteGroupoid g = zoo::groupoid_by_id("bundle:z2");
    HaarSystem h = HaarSystem::counting(g);
    CHECK_THROWS_AS(ConvolutionContext(std::move(g), std::move(h),
                                       zoo::young_pair("cosh"), Tolerances{},
                                       /*compact=*/false),
                    Error);
  }
  SUBCASE("compact flag admits cosh and records the Delta2 status") {
    const auto ctx = ctx_of("bundle:z2", "cosh");
    CHECK_FALSE(ctx.phi_delta2());
    const auto ok = ctx_of("bundle:z2", "power:2");
    CHECK(ok.phi_delta2());
    CHECK(ok.psi_delta2());
    const auto xl = ctx_of("bundle:z2", "xlogx");
    CHECK(xl.phi_delta2());
    CHECK_FALSE(xl.psi_delta2());  // exp-type conjugate
  }
  SUBCASE("broken haar is rejected") {
    FiniteGroupoid g = zoo::pair_groupoid(2);
    HaarSystem broken(std::vector<std::vector<double>>{{1.0, 2.0}, {1.0, 1.0}});
    CHECK_THROWS_AS(ConvolutionContext(std::move(g), std::move(broken),
                                       zoo::young_pair("power:2")),
                    Error);
  }
}

TEST_CASE("operator norm estimation and linearity probe") {
  Rng rng(61);
  const auto ctx = ctx_of("bundle:z2", "power:2");
  const SectionOperator identity{"id", [](const Section& s) { return s; }, std::nullopt};
  CHECK(estimate_operator_norm(ctx, identity, rng, 50) == doctest::Approx(1.0));
  CHECK(linearity_deviation(ctx, identity, rng, 20) == 0.0);

  const SectionOperator square{"sq",
                               [](const Section& s) {
                                 Section out = s;
                                 for (auto& f : out.fibers)
                                   for (auto& v : f) v *= v;
                                 return out;
                               },
                               std::nullopt};
  CHECK(linearity_deviation(ctx, square, rng, 20) > 0.1);
}
