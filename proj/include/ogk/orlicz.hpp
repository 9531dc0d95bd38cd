#pragma once

#include <complex>
#include <span>
#include <vector>

#include "ogk/groupoid.hpp"
#include "ogk/tolerances.hpp"
#include "ogk/young.hpp"

namespace ogk {

using cplx = std::complex<double>;

/// A vector over one fiber G^u, in fiber (ascending element id) order.
struct FiberFunction {
  int unit = 0;
  std::vector<cplx> values;

  bool is_zero() const;
  double max_abs() const;
};

/// One fiber function per unit, indexed by unit index. The finite unit space
/// makes "bounded", "continuous" and "vanishing at infinity" coincide, so
/// this single type plays the roles of I^Phi_0 and E^Phi_0 alike.
struct Section {
  std::vector<std::vector<cplx>> fibers;

  static Section zeros(const FiniteGroupoid& g);

  cplx at(const FiniteGroupoid& g, int element) const;
  void set(const FiniteGroupoid& g, int element, cplx v);
  FiberFunction fiber(const FiniteGroupoid& g, int unit) const;

  Section& operator+=(const Section& o);
  Section& operator-=(const Section& o);
  Section& operator*=(cplx c);
  double max_abs() const;
  double max_abs_diff(const Section& o) const;
  bool is_zero() const;
};

Section operator+(Section a, const Section& b);
Section operator-(Section a, const Section& b);
Section operator*(cplx c, Section a);

/// Modular: sum over the fiber of Phi(|f(t)|) lambda^u({t}).
double modular(const YoungFunction& phi, const FiniteGroupoid& g, const HaarSystem& h,
               const FiberFunction& f);

/// Gauge (Luxemburg) norm. For a nonzero f on a finite fiber the modular of
/// f/k is continuous and strictly decreasing in k, so the infimum is the
/// unique root of modular(f/k) = 1, found by doubling bracket + bisection.
/// The root is post-checked to land in [1-1e-9, 1+1e-9].
double gauge_norm(const YoungFunction& phi, const FiniteGroupoid& g, const HaarSystem& h,
                  const FiberFunction& f, const Tolerances& tol = {});

struct OrliczNormResult {
  double value = 0.0;
  double argmin = 0.0;  // minimizing k of the Amemiya functional
};

/// Orlicz norm through the Amemiya form inf_k (1 + modular(k f)) / k:
/// coarse log scan (64 points/decade over [1e-8, 1e8]) to bracket, then
/// golden-section refinement. Throws NoMinimum when the scan is monotone
/// over the whole range.
OrliczNormResult orlicz_norm(const YoungFunction& phi, const FiniteGroupoid& g,
                             const HaarSystem& h, const FiberFunction& f,
                             const Tolerances& tol = {});

/// L1 norm of the fiber function: sum |f| lambda^u.
double fiber_l1(const FiniteGroupoid& g, const HaarSystem& h, const FiberFunction& f);

/// Holder slack ||f||^0_Phi ||g||_Psi - sum |f g| lambda^u  (>= 0 up to slack).
double holder_slack(const YoungFunction& phi, const YoungFunction& psi,
                    const FiniteGroupoid& g, const HaarSystem& h, const FiberFunction& f,
                    const FiberFunction& gf, const Tolerances& tol = {});

/// Jensen slack sum Phi(f) nu - Phi(sum f nu) for a probability vector nu on
/// the fiber; throws NotProbability unless nu >= 0 and sums to 1 (1e-12).
double jensen_slack(const YoungFunction& phi, std::span<const double> f,
                    std::span<const double> nu);

/// Admissible L1-embedding constant d = sup_u || chi_{G^u} ||_Psi, so that
/// sup_u ||f^u||_1 <= d sup_u ||f^u||^0_Phi for every section.
double l1_embedding_constant(const YoungFunction& phi, const YoungFunction& psi,
                             const FiniteGroupoid& g, const HaarSystem& h,
                             const Tolerances& tol = {});

/// Zero-extension of a fiber function to a section; throws BoundViolated if
/// the gauge norm of the fiber exceeds the requested bound k.
Section extend_fiber_to_section(const YoungFunction& phi, const FiniteGroupoid& g,
                                const HaarSystem& h, const FiberFunction& gf, double k,
                                const Tolerances& tol = {});

// Section (sup over units) norms.
double sup_gauge(const YoungFunction& phi, const FiniteGroupoid& g, const HaarSystem& h,
                 const Section& s, const Tolerances& tol = {});
double sup_orlicz(const YoungFunction& phi, const FiniteGroupoid& g, const HaarSystem& h,
                  const Section& s, const Tolerances& tol = {});
double sup_l1(const FiniteGroupoid& g, const HaarSystem& h, const Section& s);

struct NormReport {
  double gauge = 0.0;
  double orlicz = 0.0;
  double amemiya_argmin = 0.0;
  double l1 = 0.0;
  double sandwich_lower_slack = 0.0;  // orlicz - gauge
  double sandwich_upper_slack = 0.0;  // 2 gauge - orlicz
};

NormReport norm_report(const YoungFunction& phi, const FiniteGroupoid& g,
                       const HaarSystem& h, const FiberFunction& f,
                       const Tolerances& tol = {});

}  // namespace ogk
