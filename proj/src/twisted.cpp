#include "padiclab/twisted.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <set>

#include "padiclab/cayley.hpp"
#include "padiclab/errors.hpp"
#include "padiclab/lattice.hpp"

namespace padiclab {

namespace {

void require_descent_setup(const Matrix& g, const ApartmentPoint& x, const Rational& r) {
  if (!is_theta_fixed(x)) throw DomainError("descent needs a theta-fixed point");
  if (r <= 0) throw DomainError("descent needs r > 0");
  if (static_cast<int>(x.size()) != g.size()) throw DomainError("point size does not match the matrix");
  if (!mp_membership(cayley_inv(g), x, r)) throw DomainError("g is not in G_{x,r}");
}

Rational lattice_depth(const Lattice& l, const ApartmentPoint& x) {
  const auto basis = l.basis();
  Rational best = mp_depth(basis.front(), x);
  for (const auto& b : basis) best = std::min(best, mp_depth(b, x));
  return best;
}

struct UnionFind {
  std::vector<std::uint64_t> parent;
  explicit UnionFind(std::uint64_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  std::uint64_t find(std::uint64_t a) {
    while (parent[a] != a) a = parent[a] = parent[parent[a]];
    return a;
  }
  void unite(std::uint64_t a, std::uint64_t b) {
    a = find(a);
    b = find(b);
    if (a < b) parent[b] = a;
    else if (b < a) parent[a] = b;
  }
};

}  // namespace

Matrix twisted_conjugate(const Matrix& y, const Matrix& g) { return y * g * theta(y).inverse(); }

DescentStepResult descent_step(const Matrix& g, const ApartmentPoint& x, const Rational& r) {
  require_descent_setup(g, x, r);
  const auto parts = decompose_dtheta(cayley_inv(g));
  const Matrix y = parts.anti_part * g.field().from_int(2).inverse();
  // theta(c(Y)) = c(dtheta Y) = c(-Y) = c(Y)^-1.
  const Matrix y_inv = cayley(-y);
  return {cayley(y), y_inv * g * y_inv};
}

DescentTrace twisted_descent(const Matrix& g, const ApartmentPoint& x, const Rational& r, const Rational& target_val) {
  const LocalField& f = g.field();
  if (target_val > f.precision() - 2 * r)
    throw PrecisionExhausted("target depth " + to_string(target_val) + " exceeds precision " +
                             to_string(f.precision()) + " minus 2r");
  require_descent_setup(g, x, r);
  const int e = f.e();
  const int block = (e + 1) * g.size();
  const auto cap = 2 * block * std::max<std::int64_t>(1, ceil_of(target_val * e));
  const Scalar half = f.from_int(2).inverse();

  DescentTrace trace;
  trace.conjugator = Matrix::identity(f, g.size());
  trace.target = target_val;
  FiltrationPowers powers(f, x, r);
  Matrix cur = g;
  int power = 1;
  auto falsify = [&](std::string why) {
    trace.falsification = std::move(why);
    trace.result = cur;
    return trace;
  };

  for (std::int64_t step = 0;; ++step) {
    const auto parts = decompose_dtheta(cayley_inv(cur));
    const Rational depth = mp_depth(parts.anti_part, x);
    trace.residual_anti_depth = depth;
    if (!trace.steps.empty() && depth < trace.steps.back().anti_depth) {
      if (parts.anti_part.is_zero())
        throw PrecisionExhausted("anti part vanished below the target depth at step " + std::to_string(step));
      return falsify("anti depth decreased at step " + std::to_string(step));
    }
    if (depth >= target_val) {
      trace.converged = true;
      trace.result = cur;
      return trace;
    }
    if (parts.anti_part.is_zero())
      throw PrecisionExhausted("anti part vanished below the target depth at step " + std::to_string(step));
    if (step == cap) return falsify("no convergence within " + std::to_string(cap) + " steps");
    trace.steps.push_back({parts.fixed_part, parts.anti_part, depth, power});

    const Matrix y_inv = cayley(-(parts.anti_part * half));
    const Matrix next = y_inv * cur * y_inv;
    const Matrix x_next = cayley_inv(next);
    const Lattice& deeper = powers.power(power + 1);
    if (!deeper.contains(decompose_dtheta(x_next).anti_part))
      return falsify("anti part left the product power " + std::to_string(power + 1) + " at step " + std::to_string(step));
    if (!deeper.contains(x_next - parts.fixed_part))
      return falsify("fixed part moved outside the product power " + std::to_string(power + 1) + " at step " +
                     std::to_string(step));
    if (lattice_depth(powers.power(power + block), x) < lattice_depth(powers.power(power), x) + Rational(1, e))
      return falsify("product power " + std::to_string(power + block) + " is not one uniformizer deeper");
    trace.conjugator = y_inv * trace.conjugator;
    cur = next;
    ++power;
  }
}

ReconstructionReport reconstruct(const Matrix& g, const ApartmentPoint& x, const Rational& r, const DescentTrace& trace) {
  ReconstructionReport rep;
  rep.conjugator_in_group = in_mp_group(trace.conjugator, x, r);
  const Matrix gf = twisted_conjugate(trace.conjugator, g);
  const auto parts = decompose_dtheta(cayley_inv(gf));
  rep.fixed_part_ok = mp_theta_membership(parts.fixed_part, x, r);
  rep.anti_depth = mp_depth(parts.anti_part, x);
  rep.anti_depth_ok = rep.anti_depth >= trace.target;
  return rep;
}

GradedQuotient::Element quotient_theta_class(const GradedQuotient& q, const GradedQuotient::Element& c) {
  return q.canonical(c);
}

bool coset_theta_equiv(const GradedQuotient& q, const GradedQuotient::Element& c1, const GradedQuotient::Element& c2) {
  // Im(1 - theta*) is the (-1)-eigenspace since p is odd.
  const auto d = q.sub(c1, c2);
  return q.theta_star(d) == q.neg(d);
}

std::vector<std::uint64_t> brute_force_orbits(const GradedQuotient& q, std::uint64_t cap) {
  if (q.level() <= 0) throw DomainError("orbits are computed for r > 0");
  const std::uint64_t total = q.cardinality(cap);
  std::vector<Matrix> gens;
  for (const auto& b : q.fp_basis()) gens.push_back(cayley(q.lift(b)));
  UnionFind uf(total);
  for (std::uint64_t i = 0; i < total; ++i) {
    const Matrix g = cayley(q.lift(q.element_at(i)));
    for (const auto& y : gens) uf.unite(i, q.index_of(q.class_of(cayley_inv(twisted_conjugate(y, g)))));
  }
  std::vector<std::uint64_t> label(total);
  for (std::uint64_t i = 0; i < total; ++i) label[i] = uf.find(i);
  return label;
}

PartitionReport partition_check(const LocalField& f, const ApartmentPoint& x, const Rational& r, std::uint64_t cap) {
  const GradedQuotient q(f, x, r);
  PartitionReport rep;
  rep.quotient_size = q.cardinality(cap);
  const auto brute = brute_force_orbits(q, cap);

  std::map<std::uint64_t, std::uint64_t> orbit_size;
  std::map<std::uint64_t, std::uint64_t> fixed_in_orbit;
  std::map<std::uint64_t, std::uint64_t> canon_to_brute;
  std::map<std::uint64_t, std::uint64_t> brute_to_canon;
  bool consistent = true;
  rep.disjoint = true;
  for (std::uint64_t i = 0; i < rep.quotient_size; ++i) {
    const auto c = q.element_at(i);
    ++orbit_size[brute[i]];
    if (q.is_theta_fixed(c)) {
      ++rep.fixed_classes;
      ++fixed_in_orbit[brute[i]];
    }
    const auto image = q.one_minus_theta(c);
    if (q.is_theta_fixed(image) && image != q.zero()) rep.disjoint = false;
    const auto canon = q.index_of(quotient_theta_class(q, c));
    const auto a = canon_to_brute.emplace(canon, brute[i]).first;
    const auto b = brute_to_canon.emplace(brute[i], canon).first;
    if (a->second != brute[i] || b->second != canon) consistent = false;
  }
  rep.orbits = orbit_size.size();
  std::set<std::uint64_t> sizes;
  for (const auto& [label, size] : orbit_size) sizes.insert(size);
  rep.orbit_sizes.assign(sizes.begin(), sizes.end());
  rep.transversal = std::all_of(orbit_size.begin(), orbit_size.end(), [&](const auto& kv) {
    auto it = fixed_in_orbit.find(kv.first);
    return it != fixed_in_orbit.end() && it->second == 1;
  });
  rep.matches_brute_force = consistent;
  return rep;
}

DescentPairDescriptor descent_pair(const GradedQuotient& q, const GradedQuotient::Element& h_class, std::uint64_t cap) {
  if (!q.is_theta_fixed(h_class)) throw DomainError("descent_pair needs a theta*-fixed class");
  DescentPairDescriptor d;
  d.x = q.point();
  d.r = q.level();
  d.h_class = h_class;
  for (const auto& c : q.enumerate(cap))
    if (coset_theta_equiv(q, c, h_class)) d.g_classes.push_back(c);
  return d;
}

std::vector<Scalar> norm_eigenvalues(const NormData& d) {
  const std::size_t n = d.t.size();
  if (d.s.size() != n) throw DomainError("norm data lists have different lengths");
  std::vector<Scalar> w;
  for (std::size_t i = 0; i < n; ++i) {
    const Scalar& s = d.s[n - 1 - i];
    if (d.t[i].is_zero() || s.is_zero()) throw DomainError("norm data entries must be invertible");
    w.push_back(d.t[i] / s);
  }
  return w;
}

bool norm_multiset_check(const NormData& d) {
  const auto w = norm_eigenvalues(d);
  if (d.v.size() != w.size()) throw DomainError("norm data lists have different lengths");
  for (const auto& v : d.v)
    if (v.is_zero()) throw DomainError("norm data entries must be invertible");
  const std::size_t n = w.size();
  std::vector<std::vector<bool>> same(n, std::vector<bool>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const Scalar diff = w[i] - d.v[j];
      if (diff.is_zero() && diff.precision() <= std::min(w[i].ord(), d.v[j].ord()))
        throw PrecisionExhausted("eigenvalue comparison has no significant digits");
      same[i][j] = diff.is_zero();
    }
  // Perfect matching between w and v under equality.
  std::vector<int> match(n, -1);
  std::function<bool(std::size_t, std::vector<bool>&)> augment = [&](std::size_t i, std::vector<bool>& seen) {
    for (std::size_t j = 0; j < n; ++j) {
      if (!same[i][j] || seen[j]) continue;
      seen[j] = true;
      if (match[j] < 0 || augment(static_cast<std::size_t>(match[j]), seen)) {
        match[j] = static_cast<int>(i);
        return true;
      }
    }
    return false;
  };
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<bool> seen(n, false);
    if (!augment(i, seen)) return false;
  }
  return true;
}

bool hypothesis_check(const GroupPair& pair, int p) {
  if (!is_prime(p)) throw DomainError("hypothesis_check needs a prime");
  if (p == 2) return false;
  switch (pair.which) {
    case 1:
    case 2: return p > 2 * pair.rank + 2;
    case 3: return p > 2 * pair.rank + 1;
    default: return p > pair.rank + 1;
  }
}

}  // namespace padiclab
