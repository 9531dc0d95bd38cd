#include "ogk/young.hpp"

#include <cmath>
#include <limits>
#include <memory>
#include <sstream>
#include <utility>

#include "ogk/errors.hpp"

namespace ogk {

namespace {

constexpr double kBracketCeiling = 1e30;

std::string describe(double x) {
  std::ostringstream os;
  os.precision(17);
  os << x;
  return os.str();
}

}  // namespace

YoungFunction::YoungFunction(std::string name, Evaluator evaluator, bool is_n_function,
                             std::optional<Evaluator> conjugate_closed_form,
                             std::optional<double> delta2_constant)
    : name_(std::move(name)),
      evaluator_(std::move(evaluator)),
      conjugate_closed_form_(std::move(conjugate_closed_form)),
      is_n_function_(is_n_function),
      delta2_constant_(delta2_constant) {}

double YoungFunction::operator()(double x) const { return evaluator_(std::abs(x)); }

double YoungFunction::closed_conjugate(double y) const {
  return (*conjugate_closed_form_)(std::abs(y));
}

std::vector<double> log_grid(double lo, double hi, int per_decade) {
  std::vector<double> grid;
  const double l0 = std::log10(lo);
  const double l1 = std::log10(hi);
  const int n = static_cast<int>(std::ceil((l1 - l0) * per_decade)) + 1;
  grid.reserve(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    const double t = l0 + (l1 - l0) * i / (n - 1);
    grid.push_back(std::pow(10.0, t));
  }
  return grid;
}

std::vector<double> default_delta2_grid(const Tolerances& tol) {
  const double lo = tol.delta2_threshold > 0 ? tol.delta2_threshold : 1e-8;
  return log_grid(lo, 1e8, 16);
}

std::vector<double> default_ratio_grid() { return log_grid(1e-6, 1e6, 32); }

double conjugate(const YoungFunction& phi, double y, const Tolerances& tol) {
  y = std::abs(y);
  if (phi.has_closed_conjugate()) return phi.closed_conjugate(y);
  if (y == 0.0) return 0.0;

  // Chord slope of Phi over a short step; nondecreasing in x by convexity.
  const auto slope = [&phi](double x) {
    const double h = std::sqrt(std::numeric_limits<double>::epsilon()) * std::max(x, 1.0);
    return (phi(x + h) - phi(x)) / h;
  };

  double lo = 0.0;
  double hi = 1.0;
  while (slope(hi) < y) {
    lo = hi;
    hi *= 2.0;
    if (hi > kBracketCeiling)
      throw UnboundedConjugate("conjugate(" + phi.name() + ", " + describe(y) +
                               "): slope never reaches target, Psi(y) is infinite");
  }
  for (int it = 0; it < 200 && (hi - lo) > tol.root_rel * std::max(hi, 1.0); ++it) {
    const double mid = 0.5 * (lo + hi);
    (slope(mid) < y ? lo : hi) = mid;
  }
  const double x = 0.5 * (lo + hi);
  return std::max(0.0, x * y - phi(x));
}

namespace {

// Running-sup scan shared by delta2_estimate and psi_tilde. Reports the sup
// and whether it genuinely grew across the top decade of the grid (constant
// ratios jitter at rounding level; that does not count as growth).
std::pair<double, bool> ratio_scan(std::span<const double> grid,
                                   const std::function<double(double)>& ratio) {
  const double top_decade = grid.back() / 10.0;
  double sup = 0.0;
  double sup_before_top = 0.0;
  for (const double x : grid) {
    const double r = ratio(x);
    if (r > sup || std::isinf(r)) sup = r;
    if (x <= top_decade) sup_before_top = sup;
  }
  const bool climbing =
      std::isinf(sup) || sup > sup_before_top * (1.0 + 1e-9) || sup_before_top == 0.0;
  return {sup, climbing && sup > 0.0};
}

}  // namespace

Delta2Estimate delta2_estimate(const YoungFunction& phi, std::span<const double> grid) {
  if (grid.empty()) throw ConfigError("delta2_estimate: empty grid");
  // Evaluators backed by a numeric conjugate throw past the representable
  // range; that is divergence as far as the ratio is concerned.
  const auto [sup, climbing] = ratio_scan(grid, [&phi](double x) {
    try {
      const double denom = phi(x);
      if (!(denom > 0.0) || std::isinf(denom)) return 0.0;
      return phi(2.0 * x) / denom;
    } catch (const UnboundedConjugate&) {
      return std::numeric_limits<double>::infinity();
    }
  });
  Delta2Estimate est;
  est.constant = sup;
  est.diverged = climbing || std::isinf(sup);
  return est;
}

double psi_tilde(const YoungFunction& phi, const YoungFunction& psi, double a,
                 std::span<const double> grid) {
  if (grid.empty()) throw ConfigError("psi_tilde: empty grid");
  if (a == 0.0) return 0.0;
  // Numeric conjugates throw once the argument leaves the representable
  // range; such points count as +inf, and a ratio with an unrepresentable
  // denominator is skipped (its numerator is unrepresentable too).
  const auto safe = [](const YoungFunction& f, double x) {
    try {
      return f(x);
    } catch (const UnboundedConjugate&) {
      return std::numeric_limits<double>::infinity();
    }
  };
  double value = 0.0;
  for (const YoungFunction* f : {&phi, &psi}) {
    const auto [sup, climbing] = ratio_scan(grid, [f, a, &safe](double b) {
      const double denom = safe(*f, b);
      if (!(denom > 0.0) || std::isinf(denom)) return 0.0;
      return safe(*f, a * b) / denom;
    });
    if ((climbing && a > 1.0) || std::isinf(sup))
      throw DivergentRatio("psi_tilde(" + f->name() + ", a=" + describe(a) +
                           "): ratio grows without bound over the grid");
    value = std::max(value, sup);
  }
  return value;
}

double inverse(const YoungFunction& phi, double y, const Tolerances& tol) {
  if (y <= 0.0) return 0.0;
  double lo = 0.0;
  double hi = 1.0;
  while (phi(hi) < y) {
    lo = hi;
    hi *= 2.0;
    if (hi > kBracketCeiling)
      throw Error("inverse(" + phi.name() + "): no preimage below 1e30");
  }
  for (int it = 0; it < 200 && (hi - lo) > tol.root_rel * std::max(hi, 1.0); ++it) {
    const double mid = 0.5 * (lo + hi);
    (phi(mid) < y ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

YoungFunction conjugate_function(const YoungFunction& phi, const Tolerances& tol) {
  YoungFunction::Evaluator eval;
  if (phi.has_closed_conjugate()) {
    eval = [phi](double y) { return phi.closed_conjugate(y); };
  } else {
    eval = [phi, tol](double y) { return conjugate(phi, y, tol); };
  }
  // The biconjugate of a (closed convex) Young function is the function
  // itself, so Phi serves as the wrapped conjugate's own closed form.
  YoungFunction::Evaluator back = [phi](double x) { return phi(x); };
  return YoungFunction(phi.name() + "*", std::move(eval), phi.is_n_function(),
                       std::move(back));
}

YoungFunction psi_tilde_function(const YoungFunction& phi, const YoungFunction& psi,
                                 std::vector<double> grid) {
  auto shared = std::make_shared<std::vector<double>>(std::move(grid));
  auto eval = [phi, psi, shared](double a) {
    return psi_tilde(phi, psi, a, *shared);
  };
  return YoungFunction("psi_tilde(" + phi.name() + ")", std::move(eval),
                       /*is_n_function=*/false);
}

bool midpoint_convex_on_sample(const YoungFunction& f, std::span<const double> grid,
                               double rel_slack) {
  for (std::size_t i = 0; i + 1 < grid.size(); ++i) {
    for (std::size_t j = i + 1; j < grid.size(); j += 3) {
      const double a = grid[i];
      const double b = grid[j];
      const double mid = f(0.5 * (a + b));
      const double avg = 0.5 * (f(a) + f(b));
      if (mid > avg + rel_slack * std::max(1.0, std::abs(avg))) return false;
    }
  }
  return true;
}

YoungReport validate_young(const YoungFunction& phi, const Tolerances& tol) {
  YoungReport report;
  // Numeric conjugates throw past the representable range; treat that as
  // +inf here so the battery stays total.
  const auto eval = [&phi](double x) -> double {
    try {
      return phi(x);
    } catch (const UnboundedConjugate&) {
      return std::numeric_limits<double>::infinity();
    }
  };

  if (eval(0.0) != 0.0)
    report.violations.push_back({"Phi(0)=0", "Phi(0) = " + describe(eval(0.0))});
  if (eval(-2.5) != eval(2.5))
    report.violations.push_back({"evenness", "Phi(-2.5) != Phi(2.5)"});

  const auto grid = log_grid(1e-8, 1e8, 8);
  double prev = 0.0;
  for (const double x : grid) {
    const double v = eval(x);
    if (std::isfinite(v) && std::isfinite(prev) && v < prev - 1e-15 * std::max(1.0, prev)) {
      report.violations.push_back({"monotone", "Phi decreases near x=" + describe(x)});
      break;
    }
    prev = v;
  }

  // Midpoint convexity over linear grids on a few scales (log grids stretch
  // midpoints too far from the endpoints to be a sharp probe).
  const auto convex_on_scale = [&eval](double scale) -> std::optional<std::string> {
    std::vector<double> lin;
    for (int i = 0; i <= 32; ++i) lin.push_back(scale * i / 32.0);
    for (std::size_t i = 0; i < lin.size(); ++i) {
      for (std::size_t j = i + 1; j < lin.size(); j += 5) {
        const double mid = eval(0.5 * (lin[i] + lin[j]));
        const double avg = 0.5 * (eval(lin[i]) + eval(lin[j]));
        if (std::isfinite(avg) && mid > avg + 1e-12 * std::max(1.0, std::abs(avg)))
          return "midpoint test fails at (" + describe(lin[i]) + ", " + describe(lin[j]) + ")";
      }
    }
    return std::nullopt;
  };
  for (const double scale : {1e-4, 1.0, 1e3}) {
    if (auto witness = convex_on_scale(scale)) {
      report.violations.push_back({"convexity", *witness});
      break;
    }
  }

  if (phi.is_n_function()) {
    // Phi(x)/x must trend to 0 at the small end and upward at the large end.
    const auto small = log_grid(1e-8, 1e-2, 4);
    const auto large = log_grid(1e2, 1e8, 4);
    bool small_ok = true;
    for (std::size_t i = 0; i + 1 < small.size(); ++i) {
      const double r0 = eval(small[i]) / small[i];
      const double r1 = eval(small[i + 1]) / small[i + 1];
      if (r0 > r1 + 1e-12 * std::max(1.0, r1)) small_ok = false;
    }
    if (!small_ok)
      report.violations.push_back(
          {"n_function_zero", "Phi(x)/x is not trending down toward x=0"});
    bool large_ok = true;
    for (std::size_t i = 0; i + 1 < large.size(); ++i) {
      const double r0 = eval(large[i]) / large[i];
      const double r1 = eval(large[i + 1]) / large[i + 1];
      if (std::isfinite(r0) && std::isfinite(r1) && r1 < r0 * (1.0 - 1e-12)) large_ok = false;
    }
    if (!large_ok)
      report.violations.push_back({"n_function_infinity", "Phi(x)/x not climbing at 1e8"});
  }

  (void)tol;
  return report;
}

namespace zoo {

namespace {

// x^p with the integer exponents that dominate the suites special-cased.
YoungFunction::Evaluator power_evaluator(double p) {
  if (p == 2.0) return [](double x) { return x * x; };
  if (p == 3.0) return [](double x) { return x * x * x; };
  return [p](double x) { return std::pow(x, p); };
}

}  // namespace

YoungFunction power(double p) {
  if (!(p > 1.0)) throw ConfigError("power:p requires p > 1");
  // sup{xy - x^p} at x = (y/p)^{1/(p-1)} gives (p-1) (y/p)^{p/(p-1)}.
  const double q = p / (p - 1.0);
  auto conj = [p, q](double y) { return y == 0.0 ? 0.0 : (p - 1.0) * std::pow(y / p, q); };
  return YoungFunction("power:" + std::to_string(p), power_evaluator(p), true, conj,
                       std::pow(2.0, p));
}

YoungFunction normalized_power(double p) {
  if (!(p > 1.0)) throw ConfigError("npower:p requires p > 1");
  const double q = p / (p - 1.0);
  auto base = power_evaluator(p);
  auto eval = [p, base](double x) { return base(x) / p; };
  auto conj = [q](double y) { return std::pow(y, q) / q; };
  return YoungFunction("npower:" + std::to_string(p), eval, true, conj, std::pow(2.0, p));
}

YoungFunction x_log_x() {
  auto eval = [](double x) { return x * std::log1p(x); };
  // No elementary conjugate; the numeric path handles it. The Delta2 ratio
  // 2 ln(1+2x)/ln(1+x) stays below 4 and tends to 4 at the small end.
  return YoungFunction("xlogx", eval, true, std::nullopt, 4.0);
}

YoungFunction cosh_minus_one() {
  auto eval = [](double x) { return std::cosh(x) - 1.0; };
  // y asinh(y) - (sqrt(1+y^2) - 1), with the second term rationalized so the
  // small-y regime does not cancel.
  auto conj = [](double y) {
    return y * std::asinh(y) - y * y / (1.0 + std::sqrt(1.0 + y * y));
  };
  return YoungFunction("cosh", eval, true, conj, std::nullopt);
}

YoungPair young_pair(const std::string& id, const Tolerances& tol) {
  const auto colon = id.find(':');
  const std::string head = colon == std::string::npos ? id : id.substr(0, colon);
  const std::string arg = colon == std::string::npos ? "" : id.substr(colon + 1);

  auto parse_p = [&arg, &id]() {
    char* end = nullptr;
    const double p = std::strtod(arg.c_str(), &end);
    if (end == arg.c_str() || !(p > 1.0))
      throw ConfigError("young pair '" + id + "': exponent must be > 1");
    return p;
  };

  std::optional<YoungFunction> phi;
  if (head == "power")
    phi = power(parse_p());
  else if (head == "npower")
    phi = normalized_power(parse_p());
  else if (head == "xlogx")
    phi = x_log_x();
  else if (head == "cosh")
    phi = cosh_minus_one();
  else
    throw ConfigError("unknown young pair id '" + id + "'");

  return YoungPair{id, *phi, conjugate_function(*phi, tol)};
}

std::vector<std::string> young_ids() {
  return {"power:2", "power:3", "npower:2", "npower:1.5", "xlogx", "cosh"};
}

}  // namespace zoo

}  // namespace ogk
