#pragma once

#include <functional>
#include <optional>
#include <string>

#include "ogk/orlicz.hpp"
#include "ogk/rng.hpp"

namespace ogk {

/// Groupoid convolution against a Haar system; no validation, the caller
/// vouches for the tables.
Section convolve(const FiniteGroupoid& gpd, const HaarSystem& haar, const Section& f,
                 const Section& g);

/// Validated bundle of groupoid + Haar system + complementary Young pair.
/// Construction runs the full axiom batteries and the complementarity probe;
/// Delta2 status is recorded, and a non-Delta2 Phi is refused unless the
/// groupoid is flagged compact (every finite groupoid is; the flag exists so
/// the refusal path can be exercised).
class ConvolutionContext {
public:
  ConvolutionContext(FiniteGroupoid groupoid, HaarSystem haar, zoo::YoungPair pair,
                     Tolerances tol = {}, bool compact = true);

  const FiniteGroupoid& groupoid() const { return g_; }
  const HaarSystem& haar() const { return h_; }
  const YoungFunction& phi() const { return pair_.phi; }
  const YoungFunction& psi() const { return pair_.psi; }
  const std::string& young_id() const { return pair_.id; }
  const Tolerances& tol() const { return tol_; }
  bool phi_delta2() const { return phi_delta2_; }
  bool psi_delta2() const { return psi_delta2_; }

  // -- algebra ---------------------------------------------------------

  /// (f*g)(x) = sum_{y in G^{r(x)}} f(y) g(y^-1 x) lambda^{r(x)}(y).
  Section convolve(const Section& f, const Section& g) const;

  /// (L_x f)(z) = f(x^-1 z), mapping functions on G^{d(x)} to G^{r(x)}.
  FiberFunction left_translate(int x, const FiberFunction& f) const;

  /// Reflection F-check(x) = F(x^-1).
  Section reflect(const Section& f) const;

  Section zero_section() const { return Section::zeros(g_); }
  Section delta_section(int element, cplx v = cplx{1.0, 0.0}) const;
  Section indicator_of_units() const;
  /// e(u) = 1 / lambda^u({u}) on units, 0 elsewhere: the exact identity for
  /// the finite discrete case.
  Section identity_section() const;
  Section random_section(Rng& rng, double amplitude = 1.0) const;

  // -- norms -----------------------------------------------------------

  double sup_gauge(const Section& s) const { return ogk::sup_gauge(pair_.phi, g_, h_, s, tol_); }
  double sup_gauge_psi(const Section& s) const { return ogk::sup_gauge(pair_.psi, g_, h_, s, tol_); }
  double sup_l1(const Section& s) const { return ogk::sup_l1(g_, h_, s); }
  double l1_embedding() const { return l1_embedding_; }

  // -- theorem checks ---------------------------------------------------

  /// 2 ||f||_1 ||g||^0_Phi - ||f*g||^0_Phi, plus the rescaled
  /// submultiplicativity slack under ||.||' = 2d ||.||^0_Phi.
  struct AlgebraBoundSlack {
    double convolution_slack = 0.0;       // 2||f||_1||g|| - ||f*g||
    double submultiplicative_slack = 0.0; // 2d||f||||g|| - ||f*g||
  };
  AlgebraBoundSlack banach_algebra_bound_slack(const Section& f, const Section& g) const;

  /// max_x |(f*g - g*f)(x)|; throws NotGroupBundle unless d == r everywhere.
  double commutativity_deviation(const Section& f, const Section& g) const;

  /// ||f||_1 - sampled sup ||f*g||/||g||  (the bound ||L_f|| <= ||f||_1).
  double left_convolver_norm_slack(const Section& f, Rng& rng, int trials) const;

  struct RightConvolverReport {
    double k_f = 0.0;            // max of the two psi-tilde gauge sups
    double norm_estimate = 0.0;  // sampled sup ||g*F||/||g||
    double slack = 0.0;          // 2 K_F^2 - estimate
    bool psi_tilde_convex_on_sample = true;
  };
  /// Requires both Phi and Psi Delta2-validated; DivergentRatio propagates
  /// from the psi-tilde grid otherwise.
  RightConvolverReport right_convolver_bound_check(const Section& F, Rng& rng,
                                                   int trials) const;

  struct IdentityReport {
    Section e;
    double max_deviation = 0.0;  // max |e*f - f| over the probe sections
    double l1 = 0.0;             // ||e||_1 (should be 1 <= 2)
  };
  IdentityReport approximate_identity_check(const std::vector<Section>& probes) const;

private:
  FiniteGroupoid g_;
  HaarSystem h_;
  zoo::YoungPair pair_;
  Tolerances tol_;
  bool phi_delta2_ = false;
  bool psi_delta2_ = false;
  double l1_embedding_ = 0.0;
};

/// A named linear operator on sections, with an optional claimed bound.
struct SectionOperator {
  std::string name;
  std::function<Section(const Section&)> action;
  std::optional<double> claimed_bound;
};

/// Sampled sup ||T f|| / ||f|| over all delta sections plus `trials` random
/// sections. A lower estimate of the true operator norm by construction.
double estimate_operator_norm(const ConvolutionContext& ctx, const SectionOperator& op,
                              Rng& rng, int trials);

/// Max deviation of T(a f + b g) from a Tf + b Tg over random pairs.
double linearity_deviation(const ConvolutionContext& ctx, const SectionOperator& op,
                           Rng& rng, int pairs);

}  // namespace ogk
