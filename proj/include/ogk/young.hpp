#pragma once

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ogk/tolerances.hpp"

namespace ogk {

/// A Young function: convex, even, Phi(0) = 0, Phi -> infinity. Evaluation
/// is defined on all of R through the even extension Phi(-x) = Phi(x).
/// Immutable after construction; safe to share across threads.
class YoungFunction {
public:
  using Evaluator = std::function<double(double)>;

  YoungFunction(std::string name, Evaluator evaluator, bool is_n_function,
                std::optional<Evaluator> conjugate_closed_form = std::nullopt,
                std::optional<double> delta2_constant = std::nullopt);

  double operator()(double x) const;

  const std::string& name() const { return name_; }
  bool is_n_function() const { return is_n_function_; }
  const std::optional<double>& delta2_constant() const { return delta2_constant_; }
  bool has_closed_conjugate() const { return conjugate_closed_form_.has_value(); }
  double closed_conjugate(double y) const;

private:
  std::string name_;
  Evaluator evaluator_;
  std::optional<Evaluator> conjugate_closed_form_;
  bool is_n_function_;
  std::optional<double> delta2_constant_;
};

/// Log-spaced sample points covering [lo, hi], `per_decade` points per decade.
std::vector<double> log_grid(double lo, double hi, int per_decade);

/// Default grids used by the Delta2 and psi-tilde scans.
std::vector<double> default_delta2_grid(const Tolerances& tol = {});
std::vector<double> default_ratio_grid();

/// Complementary function Psi(y) = sup{x y - Phi(x) : x >= 0} for y >= 0.
/// Uses the closed form when the function carries one; otherwise locates the
/// stationary point (the chord slope of Phi crossing y — monotone in x by
/// convexity) with a doubling bracket plus bisection.
/// Throws UnboundedConjugate when the bracket passes 1e30 without crossing,
/// i.e. Psi(y) = infinity because Phi grows at most linearly.
double conjugate(const YoungFunction& phi, double y, const Tolerances& tol = {});

struct Delta2Estimate {
  double constant = 0.0;  // sup over the grid of Phi(2x)/Phi(x)
  bool diverged = false;  // running sup still climbing over the top decade
};

Delta2Estimate delta2_estimate(const YoungFunction& phi, std::span<const double> grid);

/// Psi-tilde(a) = max{ sup_b Phi(ab)/Phi(b), sup_b Psi(ab)/Psi(b) }, each sup
/// taken over the grid. This is a grid LOWER bound for the true sup; callers
/// that need an upper bound must account for that. Throws DivergentRatio when
/// either ratio keeps growing over the top decade (non-Delta2 input).
double psi_tilde(const YoungFunction& phi, const YoungFunction& psi, double a,
                 std::span<const double> grid);

/// Inverse of a strictly increasing Young function on [0, inf).
double inverse(const YoungFunction& phi, double y, const Tolerances& tol = {});

/// Wrap the complementary function as a YoungFunction of its own (closed
/// form when available, numeric conjugation otherwise). Phi itself is
/// installed as the wrapped function's closed-form conjugate.
YoungFunction conjugate_function(const YoungFunction& phi, const Tolerances& tol = {});

/// Psi-tilde as an evaluator over a fixed grid, for gauge norms w.r.t. it.
/// Psi-tilde need not pass the full N-function battery (its slope at 0 can
/// stay positive); midpoint convexity on a sample is reported separately.
YoungFunction psi_tilde_function(const YoungFunction& phi, const YoungFunction& psi,
                                 std::vector<double> grid);

struct YoungCheck {
  std::string property;
  std::string witness;
};

struct YoungReport {
  std::vector<YoungCheck> violations;
  bool ok() const { return violations.empty(); }
};

/// Sampled Young-function battery: Phi(0)=0, monotone, midpoint convexity
/// within relative slack, and (for N-functions) the Phi(x)/x trends at both
/// ends of a log grid spanning [1e-8, 1e8].
YoungReport validate_young(const YoungFunction& phi, const Tolerances& tol = {});

/// Midpoint-convexity probe on a sample grid; used for psi-tilde flags.
bool midpoint_convex_on_sample(const YoungFunction& f, std::span<const double> grid,
                               double rel_slack);

namespace zoo {

YoungFunction power(double p);             // Phi(x) = x^p, p in (1, inf)
YoungFunction normalized_power(double p);  // Phi(x) = x^p / p
YoungFunction x_log_x();                   // Phi(x) = x ln(1+x)
YoungFunction cosh_minus_one();            // Phi(x) = cosh(x) - 1; not Delta2

struct YoungPair {
  std::string id;
  YoungFunction phi;
  YoungFunction psi;
};

/// Parse "power:2", "npower:1.5", "xlogx", "cosh" into a complementary pair.
YoungPair young_pair(const std::string& id, const Tolerances& tol = {});

std::vector<std::string> young_ids();

}  // namespace zoo

}  // namespace ogk
