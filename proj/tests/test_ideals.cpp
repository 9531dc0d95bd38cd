#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"
#include "ogk/errors.hpp"
#include "ogk/ideals.hpp"

using namespace ogk;

namespace {

ConvolutionContext ctx_of(const std::string& gid) {
  FiniteGroupoid g = zoo::groupoid_by_id(gid);
  HaarSystem h = HaarSystem::counting(g);
  return ConvolutionContext(std::move(g), std::move(h), zoo::young_pair("power:2"));
}

}  // namespace

TEST_CASE("zero and full bundles are invariant ideals") {
  Rng rng(3);
  for (const char* gid : {"pair:2", "bundle:z2+z3", "trans:z2swap"}) {
    const auto ctx = ctx_of(gid);
    for (const Subbundle& sub :
         {Subbundle::zero(ctx.groupoid()), Subbundle::full(ctx.groupoid())}) {
      const auto v = theorem_equivalence(sub, ctx, rng, 10);
      CAPTURE(gid);
      CHECK(v.invariant);
      CHECK(v.left_ideal);
      CHECK(v.agree);
    }
  }
}

TEST_CASE("pair groupoid rank (1,0) pattern is neither invariant nor an ideal") {
  const auto ctx = ctx_of("pair:2");
  const FiniteGroupoid& g = ctx.groupoid();
  Rng rng(5);
  std::vector<std::vector<std::vector<cplx>>> per(2);
  per[0].push_back({cplx{1, 0}, cplx{0, 0}});
  per[0].push_back({cplx{0, 0}, cplx{1, 0}});
  const Subbundle sub(g, std::move(per));

  const auto inv = is_invariant(sub, ctx);
  CHECK_FALSE(inv.invariant);
  CHECK(inv.witness.has_value());
  CHECK(inv.max_residual > 0.5);

  const auto ideal = is_left_ideal(sub, ctx, rng, 20);
  CHECK_FALSE(ideal.left_ideal);
  CHECK(ideal.witness.has_value());

  const auto verdict = theorem_equivalence(sub, ctx, rng, 20);
  CHECK(verdict.agree);
  CHECK_FALSE(verdict.counterexample.has_value());
}

TEST_CASE("group bundle per-fiber subspaces are invariant ideals") {
  const auto ctx = ctx_of("bundle:z2+z3");
  const FiniteGroupoid& g = ctx.groupoid();
  Rng rng(7);
  // Full fiber over the Z2 unit, zero over the Z3 unit.
  std::vector<std::vector<std::vector<cplx>>> per(2);
  per[0].push_back({cplx{1, 0}, cplx{0, 0}});
  per[0].push_back({cplx{0, 0}, cplx{1, 0}});
  const Subbundle sub(g, std::move(per));
  CHECK(is_invariant(sub, ctx).invariant);
  CHECK(is_left_ideal(sub, ctx, rng, 20).left_ideal);

  // One-dimensional translation-invariant line inside the Z3 fiber: the
  // span of the constant vector.
  std::vector<std::vector<std::vector<cplx>>> per2(2);
  per2[1].push_back({cplx{1, 0}, cplx{1, 0}, cplx{1, 0}});
  const Subbundle constants(g, std::move(per2));
  CHECK(is_invariant(constants, ctx).invariant);
  CHECK(is_left_ideal(constants, ctx, rng, 20).left_ideal);
}

TEST_CASE("orbit spans are invariant by construction") {
  Rng rng(11);
  for (const char* gid : {"pair:2", "trans:z2swap", "bundle:z2+z3"}) {
    const auto ctx = ctx_of(gid);
    for (int t = 0; t < 5; ++t) {
      const Subbundle sub = Subbundle::orbit_span(ctx, rng);
      const auto v = theorem_equivalence(sub, ctx, rng, 15);
      CAPTURE(gid);
      CHECK(v.invariant);
      CHECK(v.left_ideal);
      CHECK(v.agree);
    }
  }
}

TEST_CASE("random subbundles: the two verdicts agree") {
  Rng rng(13);
  for (const char* gid : {"pair:2", "bundle:z2+z3", "trans:z2swap"}) {
    const auto ctx = ctx_of(gid);
    for (int t = 0; t < 25; ++t) {
      const Subbundle sub = Subbundle::random(ctx.groupoid(), rng);
      const auto v = theorem_equivalence(sub, ctx, rng, 15);
      CAPTURE(gid);
      CHECK(v.agree);
    }
  }
}

TEST_CASE("subbundle construction enforces rank and shape") {
  const auto ctx = ctx_of("pair:2");
  const FiniteGroupoid& g = ctx.groupoid();
  std::vector<std::vector<std::vector<cplx>>> per(2);
  per[0].push_back({cplx{1, 0}, cplx{2, 0}});
  per[0].push_back({cplx{2, 0}, cplx{4, 0}});  // dependent
  CHECK_THROWS_AS(Subbundle(g, per), ConfigError);

  std::vector<std::vector<std::vector<cplx>>> bad_len(2);
  bad_len[0].push_back({cplx{1, 0}});
  CHECK_THROWS_AS(Subbundle(g, bad_len), ConfigError);

  std::vector<std::vector<std::vector<cplx>>> wrong_units(1);
  CHECK_THROWS_AS(Subbundle(g, wrong_units), ConfigError);
}

TEST_CASE("residuals act as membership tests") {
  const auto ctx = ctx_of("pair:2");
  const FiniteGroupoid& g = ctx.groupoid();
  std::vector<std::vector<std::vector<cplx>>> per(2);
  per[0].push_back({cplx{1, 0}, cplx{1, 0}});
  const Subbundle sub(g, std::move(per));
  CHECK(sub.residual(0, {cplx{2, 0}, cplx{2, 0}}) <= 1e-12);
  CHECK(sub.residual(0, {cplx{1, 0}, cplx{-1, 0}}) > 1.0);
  CHECK(sub.dimension(0) == 1);
  CHECK(sub.dimension(1) == 0);
}
