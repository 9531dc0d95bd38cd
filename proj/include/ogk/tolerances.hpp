#pragma once

#include <cstdlib>

namespace ogk {

/// Central tolerance record. Every suite and solver reads from one of
/// these; nothing hardcodes its own epsilon.
struct Tolerances {
  double root_rel = 1e-12;      // bisection relative tolerance (gauge, conjugate, inverse)
  double golden_rel = 1e-10;    // golden-section relative tolerance (Amemiya)
  double slack = 1e-10;         // generic inequality slack (Fenchel-Young, Jensen-level)
  double check_slack = 1e-9;    // suite-level inequality slack (Holder, convolution bounds)
  double exact = 1e-12;         // "exact identity" comparisons (isometry, e*f = f)
  double residual = 1e-10;      // subspace-membership residual (ideals)
  double haar_abs = 1e-14;      // Haar invariance comparison for float weights
  double delta2_threshold = 0.0;  // x0 for the Delta2 scan; 0 keeps the default grid start

  // OGK_TOLERANCE overrides the suite-level slack.
  static Tolerances from_env() {
    Tolerances t;
    if (const char* env = std::getenv("OGK_TOLERANCE")) {
      char* end = nullptr;
      const double v = std::strtod(env, &end);
      if (end != env && v > 0) t.check_slack = v;
    }
    return t;
  }
};

}  // namespace ogk
