#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <numbers>

#include "doctest.h"
#include "ogk/errors.hpp"
#include "ogk/fieldlab.hpp"

using namespace ogk;

namespace {

// Character-algebra oracle for the shrinking-identity error on a cyclic
// fiber: the window average sends chi to c * chi with
// c = (1/|U|) sum_{y in U} cos(2 pi j y / m).
double window_mean(int m, int j, const std::vector<int>& window) {
  double c = 0.0;
  for (const int y : window) c += std::cos(2.0 * std::numbers::pi * j * y / m);
  return c / static_cast<double>(window.size());
}

}  // namespace

TEST_CASE("unit grid and induced bundle") {
  const auto grid = unit_grid(5);
  CHECK(grid.front() == 0.0);
  CHECK(grid.back() == 1.0);
  CHECK(grid[2] == doctest::Approx(0.5));

  const auto fam = family_preset("z2-linear");
  const FiniteGroupoid g = induced_groupoid(fam, 6);
  CHECK(g.size() == 12);
  CHECK(g.unit_count() == 6);
  CHECK(validate_groupoid(g).ok());
  const HaarSystem h = induced_haar(fam, g, 6);
  CHECK(validate_haar(g, h).ok());
  // Fiber mass at u: 2 (1 + u).
  CHECK(h.fiber_mass(0) == doctest::Approx(2.0));
  CHECK(h.fiber_mass(5) == doctest::Approx(4.0));
}

TEST_CASE("norm profile matches the closed form sqrt(2(1+u))") {
  const auto fam = family_preset("z2-linear");
  const auto phi = zoo::power(2.0);
  const auto prof = norm_continuity_profile(fam, phi, NormKind::gauge, 32);
  REQUIRE(prof.norm.size() == 32);
  for (std::size_t i = 0; i < prof.u.size(); ++i)
    CHECK(prof.norm[i] ==
          doctest::Approx(std::sqrt(2.0 * (1.0 + prof.u[i]))).epsilon(1e-9));
  CHECK(prof.norm.front() == doctest::Approx(std::sqrt(2.0)).epsilon(1e-9));
  CHECK(prof.norm.back() == doctest::Approx(2.0).epsilon(1e-9));

  const auto orlicz_prof = norm_continuity_profile(fam, phi, NormKind::orlicz, 8);
  for (std::size_t i = 0; i < orlicz_prof.u.size(); ++i)
    CHECK(orlicz_prof.norm[i] ==
          doctest::Approx(2.0 * std::sqrt(2.0 * (1.0 + orlicz_prof.u[i]))).epsilon(1e-8));
}

TEST_CASE("refinement shrinks the sampled modulus") {
  const auto fam = family_preset("z2-linear");
  const auto rep = refine_profile(fam, zoo::power(2.0), NormKind::gauge, 32);
  CHECK(rep.ratio <= 0.75);
  CHECK(rep.ratio > 0.25);

  const auto flat = refine_profile(family_preset("z2-constant"), zoo::power(2.0),
                                   NormKind::gauge, 16);
  CHECK(flat.coarse.modulus <= 1e-13);
}

TEST_CASE("strong continuity surrogate") {
  const auto phi = zoo::power(2.0);
  SUBCASE("constant family: zero deviation") {
    const std::vector<int> path(16, 1);
    const auto prof =
        strong_continuity_profile(family_preset("z2-constant"), phi, path, 16);
    CHECK(prof.modulus <= 1e-13);
  }
  SUBCASE("z2-linear: translation fixes constants, deviation = profile difference") {
    const std::vector<int> path(32, 1);
    const auto strong = strong_continuity_profile(family_preset("z2-linear"), phi, path, 32);
    const auto prof =
        norm_continuity_profile(family_preset("z2-linear"), phi, NormKind::gauge, 32);
    for (std::size_t i = 0; i + 1 < prof.norm.size(); ++i)
      CHECK(strong.deviation[i] ==
            doctest::Approx(std::abs(prof.norm[i + 1] - prof.norm[i])).epsilon(1e-10));
  }
  SUBCASE("refinement halves the modulus for the Lipschitz family") {
    const std::vector<int> p32(32, 1), p64(64, 1);
    const auto a = strong_continuity_profile(family_preset("z2-linear"), phi, p32, 32);
    const auto b = strong_continuity_profile(family_preset("z2-linear"), phi, p64, 64);
    CHECK(b.modulus / a.modulus <= 0.75);
  }
  SUBCASE("path validation") {
    const std::vector<int> bad(16, 7);
    CHECK_THROWS_AS(strong_continuity_profile(family_preset("z2-constant"), phi, bad, 16),
                    ConfigError);
  }
}

TEST_CASE("shrinking identity experiment") {
  const auto phi = zoo::power(2.0);
  SUBCASE("Z4 two-level filtration: frozen first error, exact finish") {
    const auto fam = family_preset("z4-wave");
    const auto filt = cyclic_filtration(4, 2);
    REQUIRE(filt.size() == 2);
    CHECK(filt[0] == std::vector<int>{0, 1, 3});
    CHECK(filt[1] == std::vector<int>{0});
    const auto errors = shrinking_identity_errors(fam, phi, filt, 8);
    REQUIRE(errors.size() == 2);
    // Character oracle: c = 1/3 on the wide window, so the error is
    // (1 - 1/3) * gauge of the section at the worst sample; the section is
    // (1 + u/2) chi with gauge 2 (1 + u/2), maximal at u = 1.
    const double c = window_mean(4, 1, filt[0]);
    CHECK(c == doctest::Approx(1.0 / 3.0));
    CHECK(errors[0] == doctest::Approx((1.0 - c) * 3.0).epsilon(1e-9));
    CHECK(errors[1] <= 1e-12);
    CHECK(errors[0] >= errors[1]);
  }
  SUBCASE("Z8 four-level filtration: monotone against the character oracle") {
    const auto fam = family_preset("z8-window");
    const auto filt = cyclic_filtration(8, 4);
    REQUIRE(filt.size() == 4);
    CHECK(filt.back() == std::vector<int>{0});
    const auto errors = shrinking_identity_errors(fam, phi, filt, 8);
    REQUIRE(errors.size() == 4);
    for (std::size_t i = 0; i + 1 < errors.size(); ++i) CHECK(errors[i + 1] <= errors[i]);
    CHECK(errors.back() <= 1e-12);
    // The constant-in-t offset is annihilated by every window mean, so the
    // error is (1 - c_level) * sup_u ||chi||: gauge of chi on the mass
    // (1 + u/2) fiber is sqrt(8 (1 + u/2)), maximal sqrt(12) at u = 1.
    for (std::size_t level = 0; level + 1 < filt.size(); ++level) {
      const double c = window_mean(8, 1, filt[level]);
      CHECK(errors[level] ==
            doctest::Approx((1.0 - c) * std::sqrt(12.0)).epsilon(1e-9));
    }
  }
  SUBCASE("constant sections are preserved by every mean") {
    const auto errors = shrinking_identity_errors(family_preset("z2-constant"), phi,
                                                  cyclic_filtration(2, 2), 4);
    for (const double e : errors) CHECK(e <= 1e-13);
  }
  SUBCASE("single level filtration at the identity is immediately exact") {
    const auto errors = shrinking_identity_errors(family_preset("z4-wave"), phi,
                                                  {{0}}, 4);
    REQUIRE(errors.size() == 1);
    CHECK(errors[0] <= 1e-12);
  }
  SUBCASE("invalid filtrations are rejected") {
    const auto fam = family_preset("z4-wave");
    CHECK_THROWS_AS(shrinking_identity_errors(fam, phi, {{1, 2}}, 4), FiltrationInvalid);
    CHECK_THROWS_AS(shrinking_identity_errors(fam, phi, {{0, 1}, {0, 2}}, 4),
                    FiltrationInvalid);
    CHECK_THROWS_AS(shrinking_identity_errors(fam, phi, {}, 4), FiltrationInvalid);
  }
}

TEST_CASE("presets parse and custom weights stay positive") {
  for (const auto& name : family_presets()) CHECK_NOTHROW(family_preset(name));
  CHECK_THROWS_AS(family_preset("unknown"), ConfigError);

  ParametrizedFamily fam = family_preset("z2-linear");
  fam.weight = [](double u) { return u - 0.5; };  // crosses zero
  CHECK_THROWS_AS(induced_haar(fam, induced_groupoid(fam, 4), 4), ConfigError);
}
