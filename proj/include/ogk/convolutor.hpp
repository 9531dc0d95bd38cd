#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ogk/convalg.hpp"

namespace ogk {

/// A finite-sum representation h = sum_i g_i * (f_i)-check together with its
/// cost sum_i ||f_i||^0_Phi ||g_i||^0_Psi. The cost is an upper bound for the
/// representation-infimum norm; every inequality downstream is phrased so an
/// upper bound suffices.
struct ARepresentation {
  std::vector<std::pair<Section, Section>> terms;  // (g_i, f_i)
  Section value;
  double cost = 0.0;

  static ARepresentation from_terms(const ConvolutionContext& ctx,
                                    std::vector<std::pair<Section, Section>> terms);

  /// Invariant: |stored value - recomputed sum| (should be ~0).
  double recompute_deviation(const ConvolutionContext& ctx) const;
};

struct ConvolutorReport {
  double max_deviation = 0.0;
  bool pass = true;
  std::optional<std::string> witness;
};

/// T(f*g) = Tf*g over exhaustive delta pairs (desk scale) and random trials.
ConvolutorReport is_convolutor(const ConvolutionContext& ctx, const SectionOperator& op,
                               Rng& rng, int trials);

/// <xi, eta>(u) = sum_{G^u} xi eta lambda^u — the bilinear pairing, one value
/// per unit.
std::vector<cplx> pairing(const ConvolutionContext& ctx, const Section& xi,
                          const Section& eta);

/// min over units of 2 ||xi||^0_Phi ||eta||^0_Psi - |<xi,eta>(u)|.
double pairing_bound_slack(const ConvolutionContext& ctx, const Section& xi,
                           const Section& eta);

/// phi_T(h) = sum_i <T f_i, g_i>, one value per unit.
std::vector<cplx> phi_T(const ConvolutionContext& ctx, const SectionOperator& op,
                        const ARepresentation& rep);

double sup_abs(const std::vector<cplx>& values);

struct SandwichReport {
  double norm_estimate = 0.0;    // sampled ||T||
  bool estimate_exact = false;   // true when the caller knows ||T|| exactly
  double lower_best = 0.0;       // best ||phi_T(h)||_inf over unit-cost reps
  double lower_slack = 0.0;      // lower_best - norm_estimate (want >= -tol)
  double upper_min_slack = 0.0;  // min over reps of 2||T|| cost - ||phi_T(h)||
  int upper_reported_only = 0;   // reps within the 5% band when the estimate is inexact
  int upper_hard_violations = 0; // violations past the band (or with an exact ||T||)
};

/// Lower side: single-term unit-cost representations built from normalized
/// delta pairs plus random ones, reporting the best ||phi_T(h)||_inf found.
/// Upper side: every rep must satisfy ||phi_T(h)||_inf <= 2 ||T|| cost; when
/// the norm estimate is only a sampled lower bound, violations within 5% of
/// the boundary are counted as reported rather than asserted.
SandwichReport norm_sandwich_check(const ConvolutionContext& ctx, const SectionOperator& op,
                                   double norm_estimate, bool estimate_exact, Rng& rng,
                                   int rep_trials);

/// Module actions of b in C(G^0): returns representations of bh and hb with
/// cost <= ||b||_inf cost(h), realized term-by-term through the identities
/// hb = sum (g_i (b o r)) * f_i-check and bh = sum g_i * ((f_i (b o r))-check.
struct ModuleActionResult {
  ARepresentation bh;
  ARepresentation hb;
  double pointwise_deviation_bh = 0.0;  // vs direct multiplication b(d(x)) h(x)
  double pointwise_deviation_hb = 0.0;  // vs h(x) b(r(x))
};
ModuleActionResult module_actions(const ConvolutionContext& ctx,
                                  const std::vector<cplx>& b, const ARepresentation& h);

struct TruncationReport {
  double t_norm_estimate = 0.0;
  double t1_norm_estimate = 0.0;
  double bound_slack = 0.0;    // 2||T|| - ||T_1||
  double max_deviation = 0.0;  // ||T_1 f - T f|| over probes (exact identity: 0)
};

/// T_1(f) = T(e*f) with the exact identity e of the finite case.
TruncationReport truncation_check(const ConvolutionContext& ctx, const SectionOperator& op,
                                  Rng& rng, int trials);

}  // namespace ogk
