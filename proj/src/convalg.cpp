#include "ogk/convalg.hpp"

#include <algorithm>
#include <cmath>

#include "ogk/errors.hpp"

namespace ogk {

ConvolutionContext::ConvolutionContext(FiniteGroupoid groupoid, HaarSystem haar,
                                       zoo::YoungPair pair, Tolerances tol, bool compact)
    : g_(std::move(groupoid)), h_(std::move(haar)), pair_(std::move(pair)), tol_(tol) {
  if (const auto rep = validate_groupoid(g_); !rep.ok())
    throw Error("ConvolutionContext: groupoid invalid: " + rep.summary());
  if (const auto rep = validate_haar(g_, h_, tol_); !rep.ok())
    throw Error("ConvolutionContext: Haar system invalid: " + rep.summary());
  if (const auto rep = validate_young(pair_.phi, tol_); !rep.ok())
    throw Error("ConvolutionContext: Phi fails Young battery");
  if (const auto rep = validate_young(pair_.psi, tol_); !rep.ok())
    throw Error("ConvolutionContext: Psi fails Young battery");

  // Complementarity probe: Psi must agree with the conjugate of Phi. The
  // grid stays below slope ~10 so exp-type conjugates remain representable.
  for (const double y : log_grid(1e-3, 10.0, 3)) {
    const double numeric = conjugate(pair_.phi, y, tol_);
    const double claimed = pair_.psi(y);
    if (std::abs(numeric - claimed) > 1e-7 * std::max(1.0, std::abs(claimed)))
      throw Error("ConvolutionContext: Psi is not the complementary function of Phi (y=" +
                  std::to_string(y) + ")");
  }

  const auto grid = default_delta2_grid(tol_);
  phi_delta2_ = !delta2_estimate(pair_.phi, grid).diverged;
  try {
    psi_delta2_ = !delta2_estimate(pair_.psi, grid).diverged;
  } catch (const UnboundedConjugate&) {
    psi_delta2_ = false;  // exp-type conjugate: certainly not Delta2
  }
  if (!phi_delta2_ && !compact)
    throw Error("ConvolutionContext: Phi fails Delta2 and the groupoid is not compact");

  l1_embedding_ = l1_embedding_constant(pair_.phi, pair_.psi, g_, h_, tol_);
}

Section convolve(const FiniteGroupoid& gpd, const HaarSystem& haar, const Section& f,
                 const Section& g) {
  Section out = Section::zeros(gpd);
  for (int x = 0; x < gpd.size(); ++x) {
    const int u = gpd.r(x);
    cplx acc{};
    for (const int y : gpd.fiber(u)) {
      const int yx = gpd.product(gpd.inverse(y), x);
      acc += f.at(gpd, y) * g.at(gpd, yx) * haar.weight(gpd, y);
    }
    out.set(gpd, x, acc);
  }
  return out;
}

Section ConvolutionContext::convolve(const Section& f, const Section& g) const {
  return ogk::convolve(g_, h_, f, g);
}

FiberFunction ConvolutionContext::left_translate(int x, const FiberFunction& f) const {
  if (f.unit != g_.d(x))
    throw FiberMismatch("left_translate: function lives on fiber " +
                        std::to_string(f.unit) + ", expected G^{d(x)} = " +
                        std::to_string(g_.d(x)));
  const int ru = g_.r(x);
  const auto& target = g_.fiber(ru);
  FiberFunction out{ru, std::vector<cplx>(target.size())};
  const int xin = g_.inverse(x);
  for (std::size_t j = 0; j < target.size(); ++j) {
    const int pre = g_.product(xin, target[j]);  // lives in G^{d(x)}
    out.values[j] = f.values[static_cast<std::size_t>(g_.fiber_position(pre))];
  }
  return out;
}

Section ConvolutionContext::reflect(const Section& f) const {
  Section out = Section::zeros(g_);
  for (int x = 0; x < g_.size(); ++x) out.set(g_, x, f.at(g_, g_.inverse(x)));
  return out;
}

Section ConvolutionContext::delta_section(int element, cplx v) const {
  Section s = Section::zeros(g_);
  s.set(g_, element, v);
  return s;
}

Section ConvolutionContext::indicator_of_units() const {
  Section s = Section::zeros(g_);
  for (const int u : g_.units()) s.set(g_, u, cplx{1.0, 0.0});
  return s;
}

Section ConvolutionContext::identity_section() const {
  Section s = Section::zeros(g_);
  for (const int u : g_.units()) s.set(g_, u, cplx{1.0 / h_.weight(g_, u), 0.0});
  return s;
}

Section ConvolutionContext::random_section(Rng& rng, double amplitude) const {
  Section s = Section::zeros(g_);
  for (auto& fiber : s.fibers)
    for (auto& v : fiber) v = amplitude * rng.complex_gaussian();
  return s;
}

ConvolutionContext::AlgebraBoundSlack ConvolutionContext::banach_algebra_bound_slack(
    const Section& f, const Section& g) const {
  const Section fg = convolve(f, g);
  const double conv = sup_gauge(fg);
  const double f1 = sup_l1(f);
  const double fg0 = sup_gauge(f);
  const double gg0 = sup_gauge(g);
  AlgebraBoundSlack s;
  s.convolution_slack = 2.0 * f1 * gg0 - conv;
  s.submultiplicative_slack = 2.0 * l1_embedding_ * fg0 * gg0 - conv;
  return s;
}

double ConvolutionContext::commutativity_deviation(const Section& f,
                                                   const Section& g) const {
  if (!g_.is_group_bundle())
    throw NotGroupBundle("commutativity_deviation: d(x) != r(x) somewhere");
  const Section fg = convolve(f, g);
  const Section gf = convolve(g, f);
  return fg.max_abs_diff(gf);
}

double ConvolutionContext::left_convolver_norm_slack(const Section& f, Rng& rng,
                                                     int trials) const {
  const double f1 = sup_l1(f);
  double estimate = 0.0;
  const auto probe = [&](const Section& g) {
    const double denom = sup_gauge(g);
    if (denom <= 0.0) return;
    estimate = std::max(estimate, sup_gauge(convolve(f, g)) / denom);
  };
  for (int x = 0; x < g_.size(); ++x) probe(delta_section(x));
  for (int t = 0; t < trials; ++t) probe(random_section(rng));
  return f1 - estimate;
}

ConvolutionContext::RightConvolverReport ConvolutionContext::right_convolver_bound_check(
    const Section& F, Rng& rng, int trials) const {
  if (!phi_delta2_ || !psi_delta2_)
    throw DivergentRatio("right_convolver_bound_check: the bound needs both "
                         "Phi and Psi in Delta2");
  const auto grid = default_ratio_grid();
  const YoungFunction tilde = psi_tilde_function(pair_.phi, pair_.psi, grid);

  // K_F = max{ sup_u ||Phi^-1 o |F^u|||^0_tilde, sup_u ||Psi^-1 o |F-check^u|||^0_tilde }.
  const Section reflected = reflect(F);
  double k_f = 0.0;
  for (const int u : g_.units()) {
    FiberFunction a = F.fiber(g_, u);
    for (auto& v : a.values) v = cplx{inverse(pair_.phi, std::abs(v), tol_), 0.0};
    FiberFunction b = reflected.fiber(g_, u);
    for (auto& v : b.values) v = cplx{inverse(pair_.psi, std::abs(v), tol_), 0.0};
    if (!a.is_zero()) k_f = std::max(k_f, gauge_norm(tilde, g_, h_, a, tol_));
    if (!b.is_zero()) k_f = std::max(k_f, gauge_norm(tilde, g_, h_, b, tol_));
  }

  double estimate = 0.0;
  const auto probe = [&](const Section& g) {
    const double denom = sup_gauge(g);
    if (denom <= 0.0) return;
    estimate = std::max(estimate, sup_gauge(convolve(g, F)) / denom);
  };
  for (int x = 0; x < g_.size(); ++x) probe(delta_section(x));
  for (int t = 0; t < trials; ++t) probe(random_section(rng));

  RightConvolverReport rep;
  rep.k_f = k_f;
  rep.norm_estimate = estimate;
  rep.slack = 2.0 * k_f * k_f - estimate;
  rep.psi_tilde_convex_on_sample =
      midpoint_convex_on_sample(tilde, log_grid(1e-3, 1e3, 4), 1e-9);
  return rep;
}

ConvolutionContext::IdentityReport ConvolutionContext::approximate_identity_check(
    const std::vector<Section>& probes) const {
  IdentityReport rep;
  rep.e = identity_section();
  rep.l1 = sup_l1(rep.e);
  for (const Section& f : probes) {
    const Section ef = convolve(rep.e, f);
    rep.max_deviation = std::max(rep.max_deviation, ef.max_abs_diff(f));
  }
  return rep;
}

double estimate_operator_norm(const ConvolutionContext& ctx, const SectionOperator& op,
                              Rng& rng, int trials) {
  double estimate = 0.0;
  const auto probe = [&](const Section& f) {
    const double denom = ctx.sup_gauge(f);
    if (denom <= 0.0) return;
    estimate = std::max(estimate, ctx.sup_gauge(op.action(f)) / denom);
  };
  for (int x = 0; x < ctx.groupoid().size(); ++x) probe(ctx.delta_section(x));
  for (int t = 0; t < trials; ++t) probe(ctx.random_section(rng));
  return estimate;
}

double linearity_deviation(const ConvolutionContext& ctx, const SectionOperator& op,
                           Rng& rng, int pairs) {
  double dev = 0.0;
  for (int t = 0; t < pairs; ++t) {
    const Section f = ctx.random_section(rng);
    const Section g = ctx.random_section(rng);
    const cplx a = rng.complex_gaussian();
    const cplx b = rng.complex_gaussian();
    const Section lhs = op.action(a * f + b * g);
    const Section rhs = a * op.action(f) + b * op.action(g);
    dev = std::max(dev, lhs.max_abs_diff(rhs));
  }
  return dev;
}

}  // namespace ogk
