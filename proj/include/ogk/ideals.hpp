#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ogk/convalg.hpp"

namespace ogk {

/// A subbundle of the section bundle: one spanning set per unit. Bases are
/// orthonormalized (modified Gram-Schmidt over the plain coordinate inner
/// product — membership in the span does not depend on the inner product).
class Subbundle {
public:
  /// per_unit[ui] holds the raw basis vectors for the fiber over units()[ui];
  /// an empty list is the zero subspace. Throws on length mismatches and on
  /// linearly dependent input (rank check, residual under 1e-12).
  Subbundle(const FiniteGroupoid& g, std::vector<std::vector<std::vector<cplx>>> per_unit);

  const std::vector<std::vector<cplx>>& basis(int ui) const {
    return ortho_[static_cast<std::size_t>(ui)];
  }
  int dimension(int ui) const { return static_cast<int>(ortho_[static_cast<std::size_t>(ui)].size()); }

  /// Euclidean residual of v after projecting onto the fiber span.
  double residual(int ui, const std::vector<cplx>& v) const;

  static Subbundle zero(const FiniteGroupoid& g);
  static Subbundle full(const FiniteGroupoid& g);
  static Subbundle random(const FiniteGroupoid& g, Rng& rng);
  /// Span of all left translates of one random vector — invariant by
  /// construction (structured positive family for the suites).
  static Subbundle orbit_span(const ConvolutionContext& ctx, Rng& rng);

private:
  std::vector<std::vector<std::vector<cplx>>> ortho_;
};

struct InvarianceReport {
  bool invariant = true;
  double max_residual = 0.0;
  std::optional<std::string> witness;
};

/// For every x and every basis vector v of I(d(x)): L_x v must stay in
/// I(r(x)) up to residual 1e-10.
InvarianceReport is_invariant(const Subbundle& sub, const ConvolutionContext& ctx);

struct IdealReport {
  bool left_ideal = true;
  double max_residual = 0.0;
  std::optional<std::string> witness;
};

/// (f*g)^u must stay in I(u) for f exhaustive over delta sections (small
/// groupoids) plus `trials` random f, and g random in the subbundle span.
IdealReport is_left_ideal(const Subbundle& sub, const ConvolutionContext& ctx, Rng& rng,
                          int trials);

struct EquivalenceVerdict {
  bool invariant = false;
  bool left_ideal = false;
  bool agree = false;
  std::optional<std::string> counterexample;  // JSON dump of the subbundle on disagreement
};

/// Left ideal <=> invariant subbundle. Disagreement would falsify the
/// implementation, not the equivalence; the offending bundle is serialized
/// for inspection.
EquivalenceVerdict theorem_equivalence(const Subbundle& sub, const ConvolutionContext& ctx,
                                       Rng& rng, int trials);

}  // namespace ogk
