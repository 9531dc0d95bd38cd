#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>

#include "doctest.h"
#include "ogk/errors.hpp"
#include "ogk/rng.hpp"
#include "ogk/young.hpp"

using namespace ogk;

namespace {

// Independent oracle: maximize x*y - Phi(x) over a dense grid with one
// refinement pass. Lower bound for the true conjugate.
double grid_conjugate(const YoungFunction& phi, double y) {
  double best = 0.0;
  double best_x = 0.0;
  for (const double x : log_grid(1e-8, 1e6, 64)) {
    const double v = x * y - phi(x);
    if (v > best) {
      best = v;
      best_x = x;
    }
  }
  const double lo = best_x / 2;
  const double hi = best_x * 2;
  for (int i = 0; i <= 4096; ++i) {
    const double x = lo + (hi - lo) * i / 4096.0;
    best = std::max(best, x * y - phi(x));
  }
  return best;
}

YoungFunction stripped(const YoungFunction& f) {
  return YoungFunction(f.name() + "~", [f](double x) { return f(x); }, f.is_n_function());
}

}  // namespace

TEST_CASE("builtin zoo passes the Young battery") {
  for (const auto& id : zoo::young_ids()) {
    const auto pair = zoo::young_pair(id);
    CAPTURE(id);
    CHECK(validate_young(pair.phi).ok());
    CHECK(validate_young(pair.psi).ok());
    CHECK(pair.phi.is_n_function());
  }
  // Delta2 members carry their constant; cosh does not.
  CHECK(zoo::power(2.0).delta2_constant().has_value());
  CHECK(zoo::x_log_x().delta2_constant().has_value());
  CHECK_FALSE(zoo::cosh_minus_one().delta2_constant().has_value());
}

TEST_CASE("validate_young catches broken evaluators") {
  const YoungFunction concave("sqrt", [](double x) { return std::sqrt(x); }, false);
  CHECK_FALSE(validate_young(concave).ok());
  const YoungFunction shifted("shifted", [](double x) { return x * x + 1.0; }, false);
  CHECK_FALSE(validate_young(shifted).ok());
}

TEST_CASE("conjugate: closed forms and numeric stationarity agree with the grid oracle") {
  // Phi(x) = x^2/2 is self-conjugate.
  const YoungFunction half_sq("half_square", [](double x) { return 0.5 * x * x; }, true);
  CHECK(conjugate(half_sq, 3.0) == doctest::Approx(4.5).epsilon(1e-12));

  // Phi = x^3/3: Psi(2) = 2^{3/2} * 2/3.
  const double expect = std::pow(2.0, 1.5) * (2.0 / 3.0);
  const auto npow3 = stripped(zoo::normalized_power(3.0));
  CHECK(conjugate(npow3, 2.0) == doctest::Approx(expect).epsilon(1e-11));
  CHECK(conjugate(npow3, 2.0) >= grid_conjugate(npow3, 2.0) - 1e-9);

  // Phi = x^2: Psi(4) = 4.
  const auto pow2 = stripped(zoo::power(2.0));
  CHECK(conjugate(pow2, 4.0) == doctest::Approx(4.0).epsilon(1e-11));
  CHECK(conjugate(pow2, 4.0) >= grid_conjugate(pow2, 4.0) - 1e-9);

  // y = 0 gives 0; negative y goes through the even extension.
  CHECK(conjugate(pow2, 0.0) == 0.0);
  CHECK(conjugate(pow2, -4.0) == doctest::Approx(4.0));
}

TEST_CASE("conjugate signals an infinite value for linear growth") {
  const YoungFunction lin("linearish", [](double x) { return 2.0 * x; }, false);
  CHECK_THROWS_AS(conjugate(lin, 3.0), UnboundedConjugate);
}

TEST_CASE("closed-form conjugates agree with the numeric path across the zoo") {
  for (const auto& id : zoo::young_ids()) {
    const auto pair = zoo::young_pair(id);
    if (!pair.phi.has_closed_conjugate()) continue;
    const YoungFunction plain = stripped(pair.phi);
    for (const double y : log_grid(1e-4, 100.0, 2)) {
      const double closed = pair.phi.closed_conjugate(y);
      const double numeric = conjugate(plain, y);
      CAPTURE(id);
      CAPTURE(y);
      CHECK(numeric == doctest::Approx(closed).epsilon(1e-9));
    }
  }
}

TEST_CASE("delta2 estimates") {
  const auto grid = default_delta2_grid();
  SUBCASE("power ratio is constant 2^p") {
    const auto est = delta2_estimate(zoo::power(2.0), grid);
    CHECK_FALSE(est.diverged);
    CHECK(est.constant == doctest::Approx(4.0).epsilon(1e-12));
    const auto est3 = delta2_estimate(zoo::power(3.0), grid);
    CHECK(est3.constant == doctest::Approx(8.0).epsilon(1e-12));
  }
  SUBCASE("xlogx stays in [2,4], approaching 4 from below at the small end") {
    const auto est = delta2_estimate(zoo::x_log_x(), grid);
    CHECK_FALSE(est.diverged);
    CHECK(est.constant > 2.0);
    CHECK(est.constant <= 4.0);
    CHECK(est.constant > 3.99);
    // Grid oracle: the ratio 2 ln(1+2x)/ln(1+x) at the smallest grid point.
    const double x0 = grid.front();
    const double oracle = 2.0 * std::log1p(2.0 * x0) / std::log1p(x0);
    CHECK(est.constant >= oracle - 1e-12);
  }
  SUBCASE("cosh diverges") { CHECK(delta2_estimate(zoo::cosh_minus_one(), grid).diverged); }
  SUBCASE("threshold parameter moves the grid start") {
    Tolerances tol;
    tol.delta2_threshold = 1.0;
    const auto shifted = delta2_estimate(zoo::x_log_x(), default_delta2_grid(tol));
    // sup over [1, 1e8] of a ratio that decreases from ~3.17 to 2.
    CHECK(shifted.constant < 3.5);
    CHECK(shifted.constant > 2.0);
  }
}

TEST_CASE("psi_tilde on power pairs and at a = 1") {
  const auto grid = default_ratio_grid();
  const auto p2 = zoo::young_pair("power:2");
  CHECK(psi_tilde(p2.phi, p2.psi, 3.0, grid) == doctest::Approx(9.0).epsilon(1e-12));
  const auto p3 = zoo::young_pair("power:3");
  // max{a^3, a^{3/2}} at a=2 is 8.
  CHECK(psi_tilde(p3.phi, p3.psi, 2.0, grid) == doctest::Approx(8.0).epsilon(1e-12));
  for (const auto& id : zoo::young_ids()) {
    const auto pair = zoo::young_pair(id);
    CHECK(psi_tilde(pair.phi, pair.psi, 1.0, grid) == doctest::Approx(1.0).epsilon(1e-12));
  }
  CHECK(psi_tilde(p2.phi, p2.psi, 0.0, grid) == 0.0);
}

TEST_CASE("psi_tilde rejects non-Delta2 input") {
  const auto pair = zoo::young_pair("cosh");
  CHECK_THROWS_AS(psi_tilde(pair.phi, pair.psi, 2.0, default_ratio_grid()),
                  DivergentRatio);
}

TEST_CASE("inverse") {
  CHECK(inverse(zoo::power(2.0), 9.0) == doctest::Approx(3.0).epsilon(1e-12));
  // x^3/3 = 9 at x = 3.
  CHECK(inverse(zoo::normalized_power(3.0), 9.0) == doctest::Approx(3.0).epsilon(1e-12));
  CHECK(inverse(zoo::power(2.0), 0.0) == 0.0);
  // Round trip on a few scales.
  for (const double y : {1e-6, 0.37, 12.0, 4e5}) {
    const double x = inverse(zoo::x_log_x(), y);
    CHECK(zoo::x_log_x()(x) == doctest::Approx(y).epsilon(1e-10));
  }
}

TEST_CASE("Fenchel-Young inequality on random samples") {
  Rng rng(11);
  for (const auto& id : zoo::young_ids()) {
    const auto pair = zoo::young_pair(id);
    const double xmax = id == "xlogx" ? 50.0 : (id == "cosh" ? 30.0 : 500.0);
    const double ymax = id == "xlogx" ? 20.0 : 500.0;
    double worst = 1e300;
    for (int t = 0; t < 2000; ++t) {
      const double x = rng.uniform(0.0, xmax);
      const double y = rng.uniform(0.0, ymax);
      worst = std::min(worst, pair.phi(x) + pair.psi(y) - x * y);
    }
    CAPTURE(id);
    CHECK(worst >= -1e-10);
  }
}

TEST_CASE("biconjugation recovers Phi through the numeric path") {
  for (const auto& id : {"power:2", "npower:1.5", "xlogx", "cosh"}) {
    const auto pair = zoo::young_pair(id);
    const YoungFunction phi_plain = stripped(pair.phi);
    const YoungFunction psi_num(
        "conj", [phi_plain](double y) { return conjugate(phi_plain, y); }, true);
    for (const double x : log_grid(0.1, 20.0, 2)) {
      const double back = conjugate(psi_num, x);
      CAPTURE(id);
      CAPTURE(x);
      CHECK(back == doctest::Approx(pair.phi(x)).epsilon(1e-8));
    }
  }
}

TEST_CASE("conjugate_function wraps the pair consistently") {
  const auto phi = zoo::cosh_minus_one();
  const auto psi = conjugate_function(phi);
  // Closed form against the variational value.
  for (const double y : {0.5, 2.0, 40.0})
    CHECK(psi(y) == doctest::Approx(grid_conjugate(stripped(phi), y)).epsilon(1e-6));
  // The wrapped function knows its own conjugate is Phi.
  CHECK(psi.has_closed_conjugate());
  CHECK(psi.closed_conjugate(1.25) == doctest::Approx(phi(1.25)));
}

TEST_CASE("young pair parser") {
  CHECK_THROWS_AS(zoo::young_pair("power:0.5"), ConfigError);
  CHECK_THROWS_AS(zoo::young_pair("nonsense"), ConfigError);
  CHECK(zoo::young_pair("npower:1.5").phi(2.0) ==
        doctest::Approx(std::pow(2.0, 1.5) / 1.5));
}
