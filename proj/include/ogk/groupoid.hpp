#pragma once

#include <array>
#include <string>
#include <unordered_map>
#include <vector>

#include "ogk/tolerances.hpp"

namespace ogk {

/// Finite groupoid over dense element ids 0..N-1. The product is a sparse
/// partial map (most pairs are not composable). Construction does not check
/// the axioms — validate_groupoid does, exhaustively, and reports witnesses —
/// so that corrupted tables can be loaded and diagnosed.
class FiniteGroupoid {
public:
  FiniteGroupoid(int n, std::vector<int> range, std::vector<int> domain,
                 std::vector<int> inverse,
                 std::vector<std::array<int, 3>> products, std::vector<int> units);

  int size() const { return n_; }
  int r(int x) const { return range_[static_cast<std::size_t>(x)]; }
  int d(int x) const { return domain_[static_cast<std::size_t>(x)]; }
  int inverse(int x) const { return inverse_[static_cast<std::size_t>(x)]; }

  bool composable(int x, int y) const { return d(x) == r(y); }
  bool has_product(int x, int y) const;
  int product(int x, int y) const;  // throws NotComposable when absent

  const std::vector<int>& units() const { return units_; }
  int unit_count() const { return static_cast<int>(units_.size()); }
  bool is_unit(int x) const { return unit_index_[static_cast<std::size_t>(x)] >= 0; }
  int unit_index(int u) const;  // throws UnknownUnit

  /// G^u = r^{-1}(u), ascending element ids.
  const std::vector<int>& fiber(int u) const;
  /// G_u = d^{-1}(u), ascending element ids.
  const std::vector<int>& cofiber(int u) const;
  /// Position of x inside fiber(r(x)).
  int fiber_position(int x) const { return fiber_pos_[static_cast<std::size_t>(x)]; }

  bool is_group_bundle() const;  // d(x) == r(x) for every x

  const std::vector<std::array<int, 3>>& product_triples() const { return triples_; }

private:
  int n_;
  std::vector<int> range_, domain_, inverse_;
  std::vector<std::array<int, 3>> triples_;
  std::unordered_map<long long, int> product_;
  std::vector<int> units_;
  std::vector<int> unit_index_;             // element id -> unit index or -1
  std::vector<std::vector<int>> fibers_;    // per unit index
  std::vector<std::vector<int>> cofibers_;  // per unit index
  std::vector<int> fiber_pos_;

  long long key(int x, int y) const { return static_cast<long long>(x) * n_ + y; }
};

/// Per-unit weight vectors in fiber order: weights()[ui][j] is the mass of
/// fiber(units[ui])[j]. Immutable once validated.
class HaarSystem {
public:
  explicit HaarSystem(std::vector<std::vector<double>> weights);

  const std::vector<std::vector<double>>& weights() const { return weights_; }

  /// Mass of {x} under lambda^{r(x)}.
  double weight(const FiniteGroupoid& g, int x) const;
  /// Total mass of the fiber over unit index ui.
  double fiber_mass(int ui) const;

  static HaarSystem counting(const FiniteGroupoid& g);
  /// lambda^u({t}) = m[unit_index(d(t))]. Left invariant for any positive m
  /// since d is constant along orbits of left translation.
  static HaarSystem from_unit_masses(const FiniteGroupoid& g, const std::vector<double>& m);

private:
  std::vector<std::vector<double>> weights_;
};

struct Violation {
  std::string axiom;
  std::string witness;
};

struct ValidationReport {
  std::vector<Violation> violations;
  std::vector<std::string> notes;
  bool ok() const { return violations.empty(); }
  std::string summary() const;
};

/// Exhaustive check of the four groupoid axioms plus unit behaviour and the
/// composability criterion d(x) = r(y). Never throws on bad tables.
ValidationReport validate_groupoid(const FiniteGroupoid& g);

/// Positivity and exact left invariance lambda^{d(x)}(x^{-1}z) = lambda^{r(x)}(z).
/// The continuity axiom is vacuous for a discrete unit space and recorded as
/// a note rather than silently dropped.
ValidationReport validate_haar(const FiniteGroupoid& g, const HaarSystem& h,
                               const Tolerances& tol = {});

/// Group multiplication table; rows/cols indexed by element.
struct CayleyTable {
  std::vector<std::vector<int>> mul;
  int order() const { return static_cast<int>(mul.size()); }
  int identity() const;
  int inverse(int x) const;
  bool is_abelian() const;
};

namespace zoo {

CayleyTable cyclic(int n);
CayleyTable symmetric3();

FiniteGroupoid pair_groupoid(int n);
FiniteGroupoid group_bundle(const std::vector<CayleyTable>& groups);
/// Left action groupoid: elements (gamma, s), d = s, r = gamma.s,
/// (gamma1, gamma2.s)(gamma2, s) = (gamma1 gamma2, s). action[gamma][s] must
/// be a homomorphic family of permutations.
FiniteGroupoid transformation_groupoid(const CayleyTable& group,
                                       const std::vector<std::vector<int>>& action);
FiniteGroupoid disjoint_union(const FiniteGroupoid& a, const FiniteGroupoid& b);

/// "pair:3", "bundle:z2+z3", "bundle:s3", "trans:z2swap".
FiniteGroupoid groupoid_by_id(const std::string& id);
std::vector<std::string> groupoid_ids();

}  // namespace zoo

}  // namespace ogk
