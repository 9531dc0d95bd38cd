#include "ogk/fieldlab.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "ogk/errors.hpp"

namespace ogk {

std::vector<double> unit_grid(int n) {
  std::vector<double> u(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) u[static_cast<std::size_t>(i)] = n == 1 ? 0.0 : double(i) / (n - 1);
  return u;
}

FiniteGroupoid induced_groupoid(const ParametrizedFamily& fam, int n) {
  std::vector<CayleyTable> copies(static_cast<std::size_t>(n), fam.fiber);
  return zoo::group_bundle(copies);
}

HaarSystem induced_haar(const ParametrizedFamily& fam, const FiniteGroupoid& g, int n) {
  const auto grid = unit_grid(n);
  std::vector<double> masses(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    masses[i] = fam.weight(grid[i]);
    if (!(masses[i] > 0.0)) throw ConfigError("family weight must stay positive");
  }
  return HaarSystem::from_unit_masses(g, masses);
}

namespace {

FiberFunction sample_fiber(const ParametrizedFamily& fam, const FiniteGroupoid& g,
                           int sample_index, double u) {
  const int m = fam.fiber.order();
  const int unit = g.units()[static_cast<std::size_t>(sample_index)];
  FiberFunction f{unit, std::vector<cplx>(static_cast<std::size_t>(m))};
  // Fiber elements of sample i are the contiguous block [i*m, (i+1)*m); the
  // fiber ordering is ascending ids, matching template order.
  for (int t = 0; t < m; ++t) f.values[static_cast<std::size_t>(t)] = fam.section(u, t);
  return f;
}

double fiber_norm(const YoungFunction& phi, const FiniteGroupoid& g, const HaarSystem& h,
                  const FiberFunction& f, NormKind which, const Tolerances& tol) {
  return which == NormKind::gauge ? gauge_norm(phi, g, h, f, tol)
                                  : orlicz_norm(phi, g, h, f, tol).value;
}

}  // namespace

NormProfile norm_continuity_profile(const ParametrizedFamily& fam, const YoungFunction& phi,
                                    NormKind which, int grid_n, const Tolerances& tol) {
  const FiniteGroupoid g = induced_groupoid(fam, grid_n);
  const HaarSystem h = induced_haar(fam, g, grid_n);
  NormProfile prof;
  prof.u = unit_grid(grid_n);
  prof.norm.resize(prof.u.size());
  for (int i = 0; i < grid_n; ++i)
    prof.norm[static_cast<std::size_t>(i)] =
        fiber_norm(phi, g, h, sample_fiber(fam, g, i, prof.u[static_cast<std::size_t>(i)]),
                   which, tol);
  for (std::size_t i = 0; i + 1 < prof.norm.size(); ++i) {
    prof.adjacent_diff.push_back(std::abs(prof.norm[i + 1] - prof.norm[i]));
    prof.modulus = std::max(prof.modulus, prof.adjacent_diff.back());
  }
  return prof;
}

RefinementReport refine_profile(const ParametrizedFamily& fam, const YoungFunction& phi,
                                NormKind which, int grid_n, const Tolerances& tol) {
  RefinementReport rep;
  rep.coarse = norm_continuity_profile(fam, phi, which, grid_n, tol);
  rep.fine = norm_continuity_profile(fam, phi, which, 2 * grid_n, tol);
  rep.ratio = rep.coarse.modulus > 0 ? rep.fine.modulus / rep.coarse.modulus : 0.0;
  return rep;
}

StrongContinuityProfile strong_continuity_profile(const ParametrizedFamily& fam,
                                                  const YoungFunction& phi,
                                                  const std::vector<int>& x_path,
                                                  int grid_n, const Tolerances& tol) {
  if (static_cast<int>(x_path.size()) != grid_n)
    throw ConfigError("x_path needs one template element per sample");
  const int m = fam.fiber.order();
  for (const int x : x_path)
    if (x < 0 || x >= m) throw ConfigError("x_path element outside the template group");

  const FiniteGroupoid g = induced_groupoid(fam, grid_n);
  const HaarSystem h = induced_haar(fam, g, grid_n);
  const auto grid = unit_grid(grid_n);

  // Translate the sample's section fiber by the path element, inside the
  // sample's own fiber (group bundle: translations stay fiberwise).
  const auto translated = [&](int i) {
    const FiberFunction f = sample_fiber(fam, g, i, grid[static_cast<std::size_t>(i)]);
    FiberFunction out = f;
    const int xinv = fam.fiber.inverse(x_path[static_cast<std::size_t>(i)]);
    for (int t = 0; t < m; ++t) {
      const int pre = fam.fiber.mul[static_cast<std::size_t>(xinv)][static_cast<std::size_t>(t)];
      out.values[static_cast<std::size_t>(t)] = f.values[static_cast<std::size_t>(pre)];
    }
    return out;
  };

  StrongContinuityProfile prof;
  for (int i = 0; i + 1 < grid_n; ++i) {
    const FiberFunction a = translated(i);
    const FiberFunction b = translated(i + 1);
    // Coordinate part, measured with the left sample's Haar.
    FiberFunction diff = a;
    for (int t = 0; t < m; ++t)
      diff.values[static_cast<std::size_t>(t)] -= b.values[static_cast<std::size_t>(t)];
    const double coordinate = diff.is_zero() ? 0.0 : gauge_norm(phi, g, h, diff, tol);
    // Norm part: the same template vector measured under the two Haars.
    FiberFunction b_here = a;
    b_here.values = b.values;
    const double n_here = b_here.is_zero() ? 0.0 : gauge_norm(phi, g, h, b_here, tol);
    FiberFunction b_there{g.units()[static_cast<std::size_t>(i + 1)], b.values};
    const double n_there = b_there.is_zero() ? 0.0 : gauge_norm(phi, g, h, b_there, tol);
    prof.deviation.push_back(coordinate + std::abs(n_here - n_there));
    prof.modulus = std::max(prof.modulus, prof.deviation.back());
  }
  return prof;
}

std::vector<double> shrinking_identity_errors(const ParametrizedFamily& fam,
                                              const YoungFunction& phi,
                                              const std::vector<std::vector<int>>& filtration,
                                              int grid_n, const Tolerances& tol) {
  const int m = fam.fiber.order();
  const int e = fam.fiber.identity();
  if (filtration.empty()) throw FiltrationInvalid("empty filtration");
  for (std::size_t level = 0; level < filtration.size(); ++level) {
    const auto& set = filtration[level];
    if (std::find(set.begin(), set.end(), e) == set.end())
      throw FiltrationInvalid("level " + std::to_string(level) +
                              " does not contain the identity");
    for (const int t : set)
      if (t < 0 || t >= m) throw FiltrationInvalid("filtration element outside the group");
    if (level > 0) {
      for (const int t : set)
        if (std::find(filtration[level - 1].begin(), filtration[level - 1].end(), t) ==
            filtration[level - 1].end())
          throw FiltrationInvalid("filtration is not nested at level " +
                                  std::to_string(level));
    }
  }

  const FiniteGroupoid g = induced_groupoid(fam, grid_n);
  const HaarSystem h = induced_haar(fam, g, grid_n);
  const auto grid = unit_grid(grid_n);

  std::vector<double> errors;
  errors.reserve(filtration.size());
  for (const auto& window : filtration) {
    double sup = 0.0;
    for (int i = 0; i < grid_n; ++i) {
      const double u = grid[static_cast<std::size_t>(i)];
      const FiberFunction f = sample_fiber(fam, g, i, u);
      // e_n * f at t is the nu_n-average of y -> f(y^-1 t) over the window;
      // the fiber mass cancels against the normalization.
      FiberFunction conv = f;
      for (int t = 0; t < m; ++t) {
        cplx acc{};
        for (const int y : window) {
          const int pre =
              fam.fiber.mul[static_cast<std::size_t>(fam.fiber.inverse(y))][static_cast<std::size_t>(t)];
          acc += f.values[static_cast<std::size_t>(pre)];
        }
        conv.values[static_cast<std::size_t>(t)] = acc / double(window.size());
      }
      FiberFunction diff = conv;
      for (int t = 0; t < m; ++t)
        diff.values[static_cast<std::size_t>(t)] -= f.values[static_cast<std::size_t>(t)];
      if (!diff.is_zero()) sup = std::max(sup, gauge_norm(phi, g, h, diff, tol));
    }
    errors.push_back(sup);
  }
  return errors;
}

std::vector<std::vector<int>> cyclic_filtration(int m, int levels) {
  if (levels < 1) throw FiltrationInvalid("need at least one level");
  const int rmax = (m - 1) / 2;
  std::vector<std::vector<int>> filtration;
  for (int n = 1; n <= levels; ++n) {
    const int r = levels == 1 ? 0
                              : static_cast<int>(std::lround(double(rmax) * (levels - n) /
                                                             (levels - 1)));
    std::vector<int> window{0};
    for (int j = 1; j <= r; ++j) {
      window.push_back(j);
      window.push_back(m - j);
    }
    std::sort(window.begin(), window.end());
    window.erase(std::unique(window.begin(), window.end()), window.end());
    filtration.push_back(std::move(window));
  }
  return filtration;
}

ParametrizedFamily family_preset(const std::string& name) {
  using std::numbers::pi;
  if (name == "z2-linear") {
    // Z2 fibers, mass 1+u, constant section 1: the closed-form profile
    // sqrt(2(1+u)) under Phi = x^2.
    return ParametrizedFamily{name, zoo::cyclic(2), [](double u) { return 1.0 + u; },
                              [](double, int) { return cplx{1.0, 0.0}; }};
  }
  if (name == "z2-constant") {
    return ParametrizedFamily{name, zoo::cyclic(2), [](double) { return 1.0; },
                              [](double, int) { return cplx{1.0, 0.0}; }};
  }
  if (name == "z4-wave") {
    // First character of Z4 scaled by a slope in u; counting mass.
    return ParametrizedFamily{name, zoo::cyclic(4), [](double) { return 1.0; },
                              [](double u, int t) {
                                const double arg = 2.0 * pi * t / 4.0;
                                return (1.0 + 0.5 * u) * cplx{std::cos(arg), std::sin(arg)};
                              }};
  }
  if (name == "z8-window") {
    return ParametrizedFamily{name, zoo::cyclic(8), [](double u) { return 1.0 + 0.5 * u; },
                              [](double u, int t) {
                                const double arg = 2.0 * pi * t / 8.0;
                                return cplx{std::cos(arg) + 0.2 * u, std::sin(arg)};
                              }};
  }
  throw ConfigError("unknown family preset '" + name + "'");
}

std::vector<std::string> family_presets() {
  return {"z2-linear", "z2-constant", "z4-wave", "z8-window"};
}

}  // namespace ogk
