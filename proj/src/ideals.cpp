#include "ogk/ideals.hpp"

#include <cmath>
#include <sstream>

#include "ogk/errors.hpp"

namespace ogk {

namespace {

cplx dot(const std::vector<cplx>& a, const std::vector<cplx>& b) {
  cplx s{};
  for (std::size_t i = 0; i < a.size(); ++i) s += std::conj(a[i]) * b[i];
  return s;
}

double norm2(const std::vector<cplx>& a) { return std::sqrt(std::abs(dot(a, a).real())); }

// Remove the projection of v onto the orthonormal rows of q.
void deflate(const std::vector<std::vector<cplx>>& q, std::vector<cplx>& v) {
  for (const auto& row : q) {
    const cplx c = dot(row, v);
    for (std::size_t i = 0; i < v.size(); ++i) v[i] -= c * row[i];
  }
}

}  // namespace

Subbundle::Subbundle(const FiniteGroupoid& g,
                     std::vector<std::vector<std::vector<cplx>>> per_unit) {
  if (static_cast<int>(per_unit.size()) != g.unit_count())
    throw ConfigError("Subbundle: need one basis list per unit");
  ortho_.resize(per_unit.size());
  for (std::size_t ui = 0; ui < per_unit.size(); ++ui) {
    const std::size_t dim = g.fiber(g.units()[ui]).size();
    for (auto& v : per_unit[ui]) {
      if (v.size() != dim)
        throw ConfigError("Subbundle: vector length does not match fiber size");
      deflate(ortho_[ui], v);
      deflate(ortho_[ui], v);  // second pass keeps the basis orthonormal to working precision
      const double n = norm2(v);
      if (n < 1e-12)
        throw ConfigError("Subbundle: basis vectors are linearly dependent (rank check)");
      for (auto& c : v) c /= n;
      ortho_[ui].push_back(std::move(v));
    }
  }
}

double Subbundle::residual(int ui, const std::vector<cplx>& v) const {
  std::vector<cplx> w = v;
  deflate(ortho_[static_cast<std::size_t>(ui)], w);
  return norm2(w);
}

Subbundle Subbundle::zero(const FiniteGroupoid& g) {
  return Subbundle(g, std::vector<std::vector<std::vector<cplx>>>(
                          static_cast<std::size_t>(g.unit_count())));
}

Subbundle Subbundle::full(const FiniteGroupoid& g) {
  std::vector<std::vector<std::vector<cplx>>> per(static_cast<std::size_t>(g.unit_count()));
  for (int ui = 0; ui < g.unit_count(); ++ui) {
    const std::size_t dim = g.fiber(g.units()[static_cast<std::size_t>(ui)]).size();
    for (std::size_t j = 0; j < dim; ++j) {
      std::vector<cplx> e(dim, cplx{});
      e[j] = 1.0;
      per[static_cast<std::size_t>(ui)].push_back(std::move(e));
    }
  }
  return Subbundle(g, std::move(per));
}

Subbundle Subbundle::random(const FiniteGroupoid& g, Rng& rng) {
  std::vector<std::vector<std::vector<cplx>>> per(static_cast<std::size_t>(g.unit_count()));
  for (int ui = 0; ui < g.unit_count(); ++ui) {
    const int dim = static_cast<int>(g.fiber(g.units()[static_cast<std::size_t>(ui)]).size());
    const int k = rng.index(dim + 1);  // uniform 0..dim
    for (int j = 0; j < k; ++j) {
      std::vector<cplx> v(static_cast<std::size_t>(dim));
      for (auto& c : v) c = rng.complex_gaussian();
      per[static_cast<std::size_t>(ui)].push_back(std::move(v));
    }
  }
  return Subbundle(g, std::move(per));
}

Subbundle Subbundle::orbit_span(const ConvolutionContext& ctx, Rng& rng) {
  const FiniteGroupoid& g = ctx.groupoid();
  // Seed vector on one fiber, then collect L_x translates of whatever has
  // accumulated, iterating until the per-fiber spans stabilize.
  std::vector<std::vector<std::vector<cplx>>> per(static_cast<std::size_t>(g.unit_count()));
  const int seed_unit = g.units()[static_cast<std::size_t>(rng.index(g.unit_count()))];
  std::vector<cplx> seed(g.fiber(seed_unit).size());
  for (auto& c : seed) c = rng.complex_gaussian();
  per[static_cast<std::size_t>(g.unit_index(seed_unit))].push_back(seed);

  // Dense orbit closure: apply every translation, keep what enlarges the
  // span. The basis is snapshotted per source fiber because `current` is
  // rebuilt whenever the span grows.
  for (int pass = 0; pass < g.unit_count() + 1; ++pass) {
    Subbundle current(g, per);
    bool grew = false;
    for (int x = 0; x < g.size(); ++x) {
      const int from = g.unit_index(g.d(x));
      const int to = g.unit_index(g.r(x));
      const std::vector<std::vector<cplx>> snapshot = current.basis(from);
      for (const auto& v : snapshot) {
        const FiberFunction moved = ctx.left_translate(x, FiberFunction{g.d(x), v});
        if (current.residual(to, moved.values) > 1e-9) {
          per[static_cast<std::size_t>(to)].push_back(moved.values);
          current = Subbundle(g, per);
          grew = true;
        }
      }
    }
    if (!grew) break;
  }
  return Subbundle(g, per);
}

InvarianceReport is_invariant(const Subbundle& sub, const ConvolutionContext& ctx) {
  const FiniteGroupoid& g = ctx.groupoid();
  InvarianceReport rep;
  for (int x = 0; x < g.size(); ++x) {
    const int from = g.unit_index(g.d(x));
    const int to = g.unit_index(g.r(x));
    for (const auto& v : sub.basis(from)) {
      const FiberFunction moved = ctx.left_translate(x, FiberFunction{g.d(x), v});
      const double res = sub.residual(to, moved.values);
      rep.max_residual = std::max(rep.max_residual, res);
      if (res > ctx.tol().residual && rep.invariant) {
        rep.invariant = false;
        std::ostringstream os;
        os << "L_x escapes the span at x=" << x << " (residual " << res << ")";
        rep.witness = os.str();
      }
    }
  }
  return rep;
}

namespace {

Section random_span_section(const Subbundle& sub, const ConvolutionContext& ctx, Rng& rng) {
  const FiniteGroupoid& g = ctx.groupoid();
  Section s = Section::zeros(g);
  for (int ui = 0; ui < g.unit_count(); ++ui) {
    auto& fiber = s.fibers[static_cast<std::size_t>(ui)];
    for (const auto& v : sub.basis(ui)) {
      const cplx c = rng.complex_gaussian();
      for (std::size_t j = 0; j < fiber.size(); ++j) fiber[j] += c * v[j];
    }
  }
  return s;
}

}  // namespace

IdealReport is_left_ideal(const Subbundle& sub, const ConvolutionContext& ctx, Rng& rng,
                          int trials) {
  const FiniteGroupoid& g = ctx.groupoid();
  IdealReport rep;
  const auto check = [&](const Section& f, const Section& gs, const std::string& tag) {
    const Section fg = ctx.convolve(f, gs);
    for (int ui = 0; ui < g.unit_count(); ++ui) {
      const double res = sub.residual(ui, fg.fibers[static_cast<std::size_t>(ui)]);
      rep.max_residual = std::max(rep.max_residual, res);
      if (res > ctx.tol().residual && rep.left_ideal) {
        rep.left_ideal = false;
        rep.witness = tag + " leaves the span over unit index " + std::to_string(ui) +
                      " (residual " + std::to_string(res) + ")";
      }
    }
  };

  // Exhaustive at desk scale: delta f against every basis vector of the
  // subbundle. Deltas span the algebra and the basis spans the module, so
  // by bilinearity this family decides the question.
  if (g.size() <= 64) {
    for (int x = 0; x < g.size(); ++x) {
      const int from = g.unit_index(g.d(x));
      for (const auto& v : sub.basis(from)) {
        Section gs = Section::zeros(g);
        gs.fibers[static_cast<std::size_t>(from)] = v;
        check(ctx.delta_section(x), gs, "delta f at " + std::to_string(x));
      }
    }
  }
  for (int t = 0; t < trials; ++t)
    check(ctx.random_section(rng), random_span_section(sub, ctx, rng),
          "random trial " + std::to_string(t));
  return rep;
}

EquivalenceVerdict theorem_equivalence(const Subbundle& sub, const ConvolutionContext& ctx,
                                       Rng& rng, int trials) {
  EquivalenceVerdict v;
  v.invariant = is_invariant(sub, ctx).invariant;
  v.left_ideal = is_left_ideal(sub, ctx, rng, trials).left_ideal;
  v.agree = v.invariant == v.left_ideal;
  if (!v.agree) {
    std::ostringstream os;
    os << "{\"dims\":[";
    const FiniteGroupoid& g = ctx.groupoid();
    for (int ui = 0; ui < g.unit_count(); ++ui)
      os << (ui ? "," : "") << sub.dimension(ui);
    os << "],\"basis\":[";
    for (int ui = 0; ui < g.unit_count(); ++ui) {
      os << (ui ? "," : "") << "[";
      const auto& rows = sub.basis(ui);
      for (std::size_t r = 0; r < rows.size(); ++r) {
        os << (r ? "," : "") << "[";
        for (std::size_t c = 0; c < rows[r].size(); ++c)
          os << (c ? "," : "") << "[" << rows[r][c].real() << "," << rows[r][c].imag() << "]";
        os << "]";
      }
      os << "]";
    }
    os << "]}";
    v.counterexample = os.str();
  }
  return v;
}

}  // namespace ogk
