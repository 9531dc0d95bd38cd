#include "ogk/groupoid.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>
#include <sstream>

#include "ogk/errors.hpp"

namespace ogk {

FiniteGroupoid::FiniteGroupoid(int n, std::vector<int> range, std::vector<int> domain,
                               std::vector<int> inverse,
                               std::vector<std::array<int, 3>> products,
                               std::vector<int> units)
    : n_(n),
      range_(std::move(range)),
      domain_(std::move(domain)),
      inverse_(std::move(inverse)),
      triples_(std::move(products)),
      units_(std::move(units)) {
  if (static_cast<int>(range_.size()) != n_ || static_cast<int>(domain_.size()) != n_ ||
      static_cast<int>(inverse_.size()) != n_)
    throw ConfigError("groupoid tables have inconsistent sizes");
  std::sort(units_.begin(), units_.end());
  product_.reserve(triples_.size() * 2);
  for (const auto& t : triples_) product_[key(t[0], t[1])] = t[2];

  unit_index_.assign(static_cast<std::size_t>(n_), -1);
  for (std::size_t i = 0; i < units_.size(); ++i)
    unit_index_[static_cast<std::size_t>(units_[i])] = static_cast<int>(i);

  fibers_.resize(units_.size());
  cofibers_.resize(units_.size());
  fiber_pos_.assign(static_cast<std::size_t>(n_), -1);
  for (int x = 0; x < n_; ++x) {
    const int ru = unit_index_[static_cast<std::size_t>(r(x))];
    const int du = unit_index_[static_cast<std::size_t>(d(x))];
    if (ru >= 0) {
      fiber_pos_[static_cast<std::size_t>(x)] = static_cast<int>(fibers_[ru].size());
      fibers_[static_cast<std::size_t>(ru)].push_back(x);
    }
    if (du >= 0) cofibers_[static_cast<std::size_t>(du)].push_back(x);
  }
}

bool FiniteGroupoid::has_product(int x, int y) const {
  return product_.find(key(x, y)) != product_.end();
}

int FiniteGroupoid::product(int x, int y) const {
  const auto it = product_.find(key(x, y));
  if (it == product_.end()) {
    std::ostringstream os;
    os << "product(" << x << ", " << y << ") undefined: d(x)=" << d(x) << ", r(y)=" << r(y);
    throw NotComposable(os.str());
  }
  return it->second;
}

int FiniteGroupoid::unit_index(int u) const {
  if (u < 0 || u >= n_ || unit_index_[static_cast<std::size_t>(u)] < 0)
    throw UnknownUnit("element " + std::to_string(u) + " is not a unit");
  return unit_index_[static_cast<std::size_t>(u)];
}

const std::vector<int>& FiniteGroupoid::fiber(int u) const {
  return fibers_[static_cast<std::size_t>(unit_index(u))];
}

const std::vector<int>& FiniteGroupoid::cofiber(int u) const {
  return cofibers_[static_cast<std::size_t>(unit_index(u))];
}

bool FiniteGroupoid::is_group_bundle() const {
  for (int x = 0; x < n_; ++x)
    if (r(x) != d(x)) return false;
  return true;
}

HaarSystem::HaarSystem(std::vector<std::vector<double>> weights)
    : weights_(std::move(weights)) {}

double HaarSystem::weight(const FiniteGroupoid& g, int x) const {
  const int ui = g.unit_index(g.r(x));
  return weights_[static_cast<std::size_t>(ui)][static_cast<std::size_t>(g.fiber_position(x))];
}

double HaarSystem::fiber_mass(int ui) const {
  const auto& w = weights_[static_cast<std::size_t>(ui)];
  return std::accumulate(w.begin(), w.end(), 0.0);
}

HaarSystem HaarSystem::counting(const FiniteGroupoid& g) {
  std::vector<std::vector<double>> w;
  w.reserve(static_cast<std::size_t>(g.unit_count()));
  for (const int u : g.units()) w.emplace_back(g.fiber(u).size(), 1.0);
  return HaarSystem(std::move(w));
}

HaarSystem HaarSystem::from_unit_masses(const FiniteGroupoid& g,
                                        const std::vector<double>& m) {
  if (static_cast<int>(m.size()) != g.unit_count())
    throw ConfigError("unit mass vector size does not match unit count");
  std::vector<std::vector<double>> w(static_cast<std::size_t>(g.unit_count()));
  for (int ui = 0; ui < g.unit_count(); ++ui) {
    const auto& fib = g.fiber(g.units()[static_cast<std::size_t>(ui)]);
    auto& row = w[static_cast<std::size_t>(ui)];
    row.reserve(fib.size());
    for (const int x : fib)
      row.push_back(m[static_cast<std::size_t>(g.unit_index(g.d(x)))]);
  }
  return HaarSystem(std::move(w));
}

std::string ValidationReport::summary() const {
  std::ostringstream os;
  if (ok()) {
    os << "valid";
  } else {
    os << violations.size() << " violation(s):";
    for (const auto& v : violations) os << "\n  [" << v.axiom << "] " << v.witness;
  }
  for (const auto& n : notes) os << "\n  note: " << n;
  return os.str();
}

namespace {

std::string elt(int x) { return std::to_string(x); }

}  // namespace

ValidationReport validate_groupoid(const FiniteGroupoid& g) {
  ValidationReport rep;
  const int n = g.size();

  for (int x = 0; x < n; ++x) {
    if (g.inverse(g.inverse(x)) != x)
      rep.violations.push_back({"involution", "(x^-1)^-1 != x at x=" + elt(x)});
    if (!g.is_unit(g.r(x)) || !g.is_unit(g.d(x)))
      rep.violations.push_back({"range_domain", "r or d of " + elt(x) + " is not a unit"});
  }

  for (const int u : g.units()) {
    if (g.r(u) != u || g.d(u) != u)
      rep.violations.push_back({"unit", "unit " + elt(u) + " has r or d different from itself"});
  }

  // Composability criterion and the product's domain must coincide.
  for (int x = 0; x < n; ++x) {
    for (int y = 0; y < n; ++y) {
      const bool should = g.composable(x, y);
      const bool has = g.has_product(x, y);
      if (should && !has)
        rep.violations.push_back({"product_domain",
                                  "composable pair (" + elt(x) + "," + elt(y) + ") has no product"});
      if (!should && has)
        rep.violations.push_back({"product_domain",
                                  "non-composable pair (" + elt(x) + "," + elt(y) + ") has a product"});
    }
  }

  // Range/domain compatibility of products, cancellation, unit laws.
  for (int x = 0; x < n; ++x) {
    if (g.composable(x, g.d(x)) && g.has_product(x, g.d(x)) && g.product(x, g.d(x)) != x)
      rep.violations.push_back({"unit_law", "x d(x) != x at x=" + elt(x)});
    if (g.composable(g.r(x), x) && g.has_product(g.r(x), x) && g.product(g.r(x), x) != x)
      rep.violations.push_back({"unit_law", "r(x) x != x at x=" + elt(x)});
    for (int y = 0; y < n; ++y) {
      if (!g.has_product(x, y)) continue;
      const int xy = g.product(x, y);
      if (g.r(xy) != g.r(x) || g.d(xy) != g.d(y))
        rep.violations.push_back({"product_rd", "r/d of product (" + elt(x) + "," + elt(y) + ")"});
      // x^-1 (x y) = y  and  (x y) y^-1 = x
      if (g.has_product(g.inverse(x), xy) && g.product(g.inverse(x), xy) != y)
        rep.violations.push_back({"cancellation",
                                  "x^-1(xy) != y at (" + elt(x) + "," + elt(y) + ")"});
      if (g.has_product(xy, g.inverse(y)) && g.product(xy, g.inverse(y)) != x)
        rep.violations.push_back({"cancellation",
                                  "(xy)y^-1 != x at (" + elt(x) + "," + elt(y) + ")"});
    }
  }

  // Associativity over all composable triples.
  for (int x = 0; x < n; ++x) {
    for (int y = 0; y < n; ++y) {
      if (!g.has_product(x, y)) continue;
      const int xy = g.product(x, y);
      for (int z = 0; z < n; ++z) {
        if (!g.has_product(y, z)) continue;
        const int yz = g.product(y, z);
        if (!g.has_product(xy, z) || !g.has_product(x, yz)) {
          rep.violations.push_back({"associativity",
                                    "triple (" + elt(x) + "," + elt(y) + "," + elt(z) +
                                    ") lacks a bracketing"});
          continue;
        }
        if (g.product(xy, z) != g.product(x, yz))
          rep.violations.push_back({"associativity",
                                    "(xy)z != x(yz) at (" + elt(x) + "," + elt(y) + "," +
                                    elt(z) + ")"});
      }
    }
  }

  // Fibers partition the element set.
  std::size_t covered = 0;
  for (const int u : g.units()) covered += g.fiber(u).size();
  if (covered != static_cast<std::size_t>(n))
    rep.violations.push_back({"fiber_partition", "fibers cover " + std::to_string(covered) +
                              " of " + std::to_string(n) + " elements"});

  return rep;
}

ValidationReport validate_haar(const FiniteGroupoid& g, const HaarSystem& h,
                               const Tolerances& tol) {
  ValidationReport rep;
  const auto& w = h.weights();
  if (static_cast<int>(w.size()) != g.unit_count()) {
    rep.violations.push_back({"shape", "weight rows != unit count"});
    return rep;
  }
  for (int ui = 0; ui < g.unit_count(); ++ui) {
    const int u = g.units()[static_cast<std::size_t>(ui)];
    const auto& fib = g.fiber(u);
    const auto& row = w[static_cast<std::size_t>(ui)];
    if (row.size() != fib.size()) {
      rep.violations.push_back({"shape", "weight row for unit " + elt(u) + " has wrong length"});
      continue;
    }
    for (std::size_t j = 0; j < row.size(); ++j)
      if (!(row[j] > 0.0))
        rep.violations.push_back({"support", "non-positive mass at element " + elt(fib[j])});
  }
  if (!rep.ok()) return rep;

  // Delta form of left invariance: for every x and z in G^{r(x)},
  // lambda^{d(x)}({x^-1 z}) = lambda^{r(x)}({z}).
  for (int x = 0; x < g.size(); ++x) {
    const int xin = g.inverse(x);
    for (const int z : g.fiber(g.r(x))) {
      if (!g.has_product(xin, z)) continue;  // groupoid violations reported elsewhere
      const int moved = g.product(xin, z);
      const double lhs = h.weight(g, moved);
      const double rhs = h.weight(g, z);
      if (std::abs(lhs - rhs) > tol.haar_abs * std::max(1.0, std::abs(rhs))) {
        std::ostringstream os;
        os << "lambda^{d(x)}(x^-1 z) != lambda^{r(x)}(z) at x=" << x << ", z=" << z
           << " (" << lhs << " vs " << rhs << ")";
        rep.violations.push_back({"left_invariance", os.str()});
      }
    }
  }
  rep.notes.push_back(
      "continuity of u -> lambda(f)(u): trivially satisfied (discrete unit space)");
  return rep;
}

int CayleyTable::identity() const {
  const int n = order();
  for (int e = 0; e < n; ++e) {
    bool ok = true;
    for (int x = 0; x < n && ok; ++x)
      ok = mul[static_cast<std::size_t>(e)][static_cast<std::size_t>(x)] == x &&
           mul[static_cast<std::size_t>(x)][static_cast<std::size_t>(e)] == x;
    if (ok) return e;
  }
  throw ConfigError("Cayley table has no identity");
}

int CayleyTable::inverse(int x) const {
  const int e = identity();
  for (int y = 0; y < order(); ++y)
    if (mul[static_cast<std::size_t>(x)][static_cast<std::size_t>(y)] == e) return y;
  throw ConfigError("Cayley table element has no inverse");
}

bool CayleyTable::is_abelian() const {
  for (int x = 0; x < order(); ++x)
    for (int y = 0; y < x; ++y)
      if (mul[static_cast<std::size_t>(x)][static_cast<std::size_t>(y)] !=
          mul[static_cast<std::size_t>(y)][static_cast<std::size_t>(x)])
        return false;
  return true;
}

namespace zoo {

CayleyTable cyclic(int n) {
  CayleyTable t;
  t.mul.assign(static_cast<std::size_t>(n), std::vector<int>(static_cast<std::size_t>(n)));
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      t.mul[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] = (a + b) % n;
  return t;
}

CayleyTable symmetric3() {
  // Permutations of {0,1,2} listed as images (p[0],p[1],p[2]).
  const std::array<std::array<int, 3>, 6> perms = {{{0, 1, 2},
                                                    {1, 0, 2},
                                                    {0, 2, 1},
                                                    {2, 1, 0},
                                                    {1, 2, 0},
                                                    {2, 0, 1}}};
  auto find = [&perms](const std::array<int, 3>& p) {
    for (std::size_t i = 0; i < perms.size(); ++i)
      if (perms[i] == p) return static_cast<int>(i);
    throw ConfigError("S3 composition escaped the table");
  };
  CayleyTable t;
  t.mul.assign(6, std::vector<int>(6));
  for (int a = 0; a < 6; ++a)
    for (int b = 0; b < 6; ++b) {
      // (a b)(s) = a(b(s))
      std::array<int, 3> comp{};
      for (int s = 0; s < 3; ++s)
        comp[static_cast<std::size_t>(s)] =
            perms[static_cast<std::size_t>(a)][static_cast<std::size_t>(
                perms[static_cast<std::size_t>(b)][static_cast<std::size_t>(s)])];
      t.mul[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] = find(comp);
    }
  return t;
}

FiniteGroupoid pair_groupoid(int n) {
  if (n < 1) throw ConfigError("pair groupoid needs n >= 1");
  const int N = n * n;
  auto id = [n](int a, int b) { return a * n + b; };
  std::vector<int> range(static_cast<std::size_t>(N)), domain(static_cast<std::size_t>(N)),
      inv(static_cast<std::size_t>(N));
  std::vector<int> units;
  std::vector<std::array<int, 3>> prods;
  for (int a = 0; a < n; ++a) {
    units.push_back(id(a, a));
    for (int b = 0; b < n; ++b) {
      range[static_cast<std::size_t>(id(a, b))] = id(a, a);
      domain[static_cast<std::size_t>(id(a, b))] = id(b, b);
      inv[static_cast<std::size_t>(id(a, b))] = id(b, a);
    }
  }
  prods.reserve(static_cast<std::size_t>(n) * n * n);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c)
        prods.push_back({id(a, b), id(b, c), id(a, c)});
  return FiniteGroupoid(N, std::move(range), std::move(domain), std::move(inv),
                        std::move(prods), std::move(units));
}

FiniteGroupoid group_bundle(const std::vector<CayleyTable>& groups) {
  int N = 0;
  for (const auto& t : groups) N += t.order();
  std::vector<int> range(static_cast<std::size_t>(N)), domain(static_cast<std::size_t>(N)),
      inv(static_cast<std::size_t>(N));
  std::vector<int> units;
  std::vector<std::array<int, 3>> prods;
  int offset = 0;
  for (const auto& t : groups) {
    const int e = t.identity() + offset;
    units.push_back(e);
    for (int x = 0; x < t.order(); ++x) {
      range[static_cast<std::size_t>(offset + x)] = e;
      domain[static_cast<std::size_t>(offset + x)] = e;
      inv[static_cast<std::size_t>(offset + x)] = offset + t.inverse(x);
      for (int y = 0; y < t.order(); ++y)
        prods.push_back({offset + x, offset + y,
                         offset + t.mul[static_cast<std::size_t>(x)][static_cast<std::size_t>(y)]});
    }
    offset += t.order();
  }
  return FiniteGroupoid(N, std::move(range), std::move(domain), std::move(inv),
                        std::move(prods), std::move(units));
}

FiniteGroupoid transformation_groupoid(const CayleyTable& group,
                                       const std::vector<std::vector<int>>& action) {
  const int m = group.order();
  if (static_cast<int>(action.size()) != m)
    throw ConfigError("action must have one permutation per group element");
  const int s_count = static_cast<int>(action.front().size());
  const int e = group.identity();
  for (int s = 0; s < s_count; ++s)
    if (action[static_cast<std::size_t>(e)][static_cast<std::size_t>(s)] != s)
      throw ConfigError("identity must act trivially");
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b) {
      const int ab = group.mul[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)];
      for (int s = 0; s < s_count; ++s) {
        const int lhs = action[static_cast<std::size_t>(ab)][static_cast<std::size_t>(s)];
        const int rhs = action[static_cast<std::size_t>(a)][static_cast<std::size_t>(
            action[static_cast<std::size_t>(b)][static_cast<std::size_t>(s)])];
        if (lhs != rhs) throw ConfigError("action is not a left group action");
      }
    }

  const int N = m * s_count;
  auto id = [s_count](int gamma, int s) { return gamma * s_count + s; };
  auto act = [&action](int gamma, int s) {
    return action[static_cast<std::size_t>(gamma)][static_cast<std::size_t>(s)];
  };
  std::vector<int> range(static_cast<std::size_t>(N)), domain(static_cast<std::size_t>(N)),
      inv(static_cast<std::size_t>(N));
  std::vector<int> units;
  std::vector<std::array<int, 3>> prods;
  for (int gamma = 0; gamma < m; ++gamma)
    for (int s = 0; s < s_count; ++s) {
      const int x = id(gamma, s);
      domain[static_cast<std::size_t>(x)] = id(e, s);
      range[static_cast<std::size_t>(x)] = id(e, act(gamma, s));
      inv[static_cast<std::size_t>(x)] = id(group.inverse(gamma), act(gamma, s));
      if (gamma == e) units.push_back(x);
    }
  // (gamma1, gamma2.s)(gamma2, s) = (gamma1 gamma2, s)
  for (int g1 = 0; g1 < m; ++g1)
    for (int g2 = 0; g2 < m; ++g2)
      for (int s = 0; s < s_count; ++s)
        prods.push_back({id(g1, act(g2, s)), id(g2, s),
                         id(group.mul[static_cast<std::size_t>(g1)][static_cast<std::size_t>(g2)], s)});
  return FiniteGroupoid(N, std::move(range), std::move(domain), std::move(inv),
                        std::move(prods), std::move(units));
}

FiniteGroupoid disjoint_union(const FiniteGroupoid& a, const FiniteGroupoid& b) {
  const int off = a.size();
  const int N = a.size() + b.size();
  std::vector<int> range, domain, inv, units;
  std::vector<std::array<int, 3>> prods;
  range.reserve(static_cast<std::size_t>(N));
  for (int x = 0; x < a.size(); ++x) {
    range.push_back(a.r(x));
    domain.push_back(a.d(x));
    inv.push_back(a.inverse(x));
  }
  for (int x = 0; x < b.size(); ++x) {
    range.push_back(b.r(x) + off);
    domain.push_back(b.d(x) + off);
    inv.push_back(b.inverse(x) + off);
  }
  units = a.units();
  for (const int u : b.units()) units.push_back(u + off);
  prods = a.product_triples();
  for (const auto& t : b.product_triples())
    prods.push_back({t[0] + off, t[1] + off, t[2] + off});
  return FiniteGroupoid(N, std::move(range), std::move(domain), std::move(inv),
                        std::move(prods), std::move(units));
}

FiniteGroupoid groupoid_by_id(const std::string& id) {
  const auto colon = id.find(':');
  const std::string head = colon == std::string::npos ? id : id.substr(0, colon);
  const std::string arg = colon == std::string::npos ? "" : id.substr(colon + 1);
  if (head == "pair") {
    const int n = std::atoi(arg.c_str());
    if (n < 1 || n > 64) throw ConfigError("pair:<n> needs 1 <= n <= 64");
    return pair_groupoid(n);
  }
  if (head == "bundle") {
    std::vector<CayleyTable> parts;
    std::size_t pos = 0;
    while (pos <= arg.size()) {
      auto next = arg.find('+', pos);
      if (next == std::string::npos) next = arg.size();
      const std::string part = arg.substr(pos, next - pos);
      if (part == "s3")
        parts.push_back(symmetric3());
      else if (part.size() > 1 && part[0] == 'z')
        parts.push_back(cyclic(std::atoi(part.c_str() + 1)));
      else
        throw ConfigError("unknown bundle component '" + part + "'");
      pos = next + 1;
    }
    return group_bundle(parts);
  }
  if (head == "trans" && arg == "z2swap") {
    return transformation_groupoid(cyclic(2), {{0, 1}, {1, 0}});
  }
  throw ConfigError("unknown groupoid id '" + id + "'");
}

std::vector<std::string> groupoid_ids() {
  return {"pair:2", "pair:3", "pair:4", "bundle:z2", "bundle:z2+z3", "bundle:s3",
          "trans:z2swap"};
}

}  // namespace zoo

}  // namespace ogk
