#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "padiclab/building.hpp"
#include "padiclab/groups.hpp"
#include "padiclab/matrix.hpp"
#include "padiclab/quotient.hpp"

namespace padiclab {

/// y g theta(y)^-1.
Matrix twisted_conjugate(const Matrix& y, const Matrix& g);

struct DescentStepResult {
  /// c(Y) with Y half the dtheta-anti part of c^-1(g).
  Matrix y_step;
  /// y_step^-1 g theta(y_step).
  Matrix g_next;
};

/// One step of the descent.  DomainError if x is not theta-fixed, r <= 0,
/// g is not topologically unipotent, or c^-1(g) is outside g_{x,r}.
DescentStepResult descent_step(const Matrix& g, const ApartmentPoint& x, const Rational& r);

struct DescentRecord {
  Matrix fixed_part;
  Matrix anti_part;
  Rational anti_depth;
  /// The anti part lies in the power-th product power of g_{x,r}.
  int power = 1;
};

struct DescentTrace {
  /// twisted_conjugate(conjugator, g) is the final element.  It is the
  /// inverse of the product c(Y_1) c(Y_2) ... of the step elements.
  Matrix conjugator;
  Matrix result;
  /// State before each step taken.
  std::vector<DescentRecord> steps;
  Rational residual_anti_depth;
  Rational target;
  bool converged = false;
  /// Description of the violated guarantee when converged is false.
  std::string falsification;
};

/// Iterates descent_step until the anti part has depth >= target_val.
/// Every step is checked against the explicit product lattices; a failed
/// check or running past 2(e+1)N ceil(e target) steps is reported in the
/// trace, not thrown.  PrecisionExhausted if target_val > precision_k - 2r.
DescentTrace twisted_descent(const Matrix& g, const ApartmentPoint& x, const Rational& r, const Rational& target_val);

struct ReconstructionReport {
  bool conjugator_in_group = false;
  bool fixed_part_ok = false;
  bool anti_depth_ok = false;
  Rational anti_depth;
  bool ok() const { return conjugator_in_group && fixed_part_ok && anti_depth_ok; }
};

/// Recomputes twisted_conjugate(trace.conjugator, g) and checks that it is
/// c(X' + Z) with X' in the fixed lattice and Z anti of depth >= target.
ReconstructionReport reconstruct(const Matrix& g, const ApartmentPoint& x, const Rational& r, const DescentTrace& trace);

/// Canonical representative of the twisted orbit c + Im(1 - theta*).
GradedQuotient::Element quotient_theta_class(const GradedQuotient& q, const GradedQuotient::Element& c);
/// c1 - c2 lies in Im(1 - theta*).
bool coset_theta_equiv(const GradedQuotient& q, const GradedQuotient::Element& c1, const GradedQuotient::Element& c2);

/// Orbit label of every element (by index) under twisted conjugation by
/// G_{x,r}, computed with actual matrices: generators c(lift b) for an F_p
/// basis b act on c(lift [g]) and the result is reduced back to a class.
/// Labels are the smallest index in the orbit.
std::vector<std::uint64_t> brute_force_orbits(const GradedQuotient& q, std::uint64_t cap);

struct PartitionReport {
  std::uint64_t quotient_size = 0;
  std::uint64_t fixed_classes = 0;
  std::uint64_t orbits = 0;
  /// Distinct orbit sizes, ascending.
  std::vector<std::uint64_t> orbit_sizes;
  /// Every orbit contains exactly one theta*-fixed class.
  bool transversal = false;
  /// Im(1 - theta*) meets the fixed classes only in 0.
  bool disjoint = false;
  /// The brute-force orbits coincide with the Im(1 - theta*) cosets.
  bool matches_brute_force = false;
  bool ok() const { return transversal && disjoint && matches_brute_force; }
};

PartitionReport partition_check(const LocalField& f, const ApartmentPoint& x, const Rational& r, std::uint64_t cap);

struct DescentPairDescriptor {
  ApartmentPoint x;
  Rational r;
  GradedQuotient::Element h_class;
  /// Classes [g] with [g] ~ [h], sorted by index.
  std::vector<GradedQuotient::Element> g_classes;
  std::string h_volume = "vol(G_theta,x,r)^-1";
  std::string g_volume = "vol(G_x,r)^-1";
  bool operator==(const DescentPairDescriptor&) const = default;
};

/// DomainError unless h_class is theta*-fixed.
DescentPairDescriptor descent_pair(const GradedQuotient& q, const GradedQuotient::Element& h_class, std::uint64_t cap);

/// Diagonal data: t and s for the twisted element, v the eigenvalues of
/// the candidate norm.
struct NormData {
  std::vector<Scalar> t;
  std::vector<Scalar> s;
  std::vector<Scalar> v;
};

/// t_i / s_{N+1-i}.
std::vector<Scalar> norm_eigenvalues(const NormData& d);
/// {v_i} = {t_i / s_{N+1-i}} as multisets.  DomainError on size mismatch or
/// a non-invertible entry; PrecisionExhausted if a match depends on digits
/// beyond the known precision.
bool norm_multiset_check(const NormData& d);

/// p is odd and exceeds 2n+2 (cases 1, 2), 2n+1 (case 3) or N+1 (case 4).
bool hypothesis_check(const GroupPair& pair, int p);

}  // namespace padiclab
