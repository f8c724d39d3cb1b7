#pragma once

#include <string>
#include <vector>

#include "padiclab/groups.hpp"
#include "padiclab/rational.hpp"

namespace padiclab {

/// Point of the standard apartment of GL_N, coordinates x_1..x_N (0-based
/// in code), taken modulo the all-ones direction.
using ApartmentPoint = std::vector<Rational>;

/// x_i + x_{N+1-i} is the same for every i.
bool is_theta_fixed(const ApartmentPoint& x);
/// The theta-fixed point with x_i = t_i, x_{N+1-i} = -t_i (i <= N/2) and
/// middle coordinate 0.
ApartmentPoint fixed_point(const std::vector<Rational>& t, int n);
/// Inverse of fixed_point on theta-fixed points.
std::vector<Rational> half_coordinates(const ApartmentPoint& x);

/// x_i = -(i-1)/(eN): the barycenter of the fundamental alcove of GL_N
/// over a field of ramification index e.
ApartmentPoint gl_barycenter(int n, int e);

/// Affine functional sum_i gradient_i e_i + constant.
struct AffineRoot {
  std::vector<int> gradient;
  Rational constant;

  Rational operator()(const ApartmentPoint& x) const;
  /// e.g. "e1-e3+1/2".
  std::string to_string() const;
  bool operator==(const AffineRoot&) const = default;
};

/// Simple affine roots for the fundamental alcove, as tabulated for each
/// family (f_i = e_i - e_{N+1-i}, f_j = 0 for j > N/2), sorted by gradient
/// then constant, largest first.  GL_1 and U_1 have none.  Even SO is not
/// tabulated (DomainError).
std::vector<AffineRoot> simple_affine_roots(const GroupType& g);

/// Where the origin of the group's own apartment coordinates sits in the
/// GL_N apartment.  Zero except for odd ramified unitary groups, whose
/// tabulated alcove sits at f_i = 1/4 in GL coordinates.
ApartmentPoint apartment_origin(const GroupType& g);
/// simple_affine_roots(g) rewritten as functionals on the GL_N apartment.
std::vector<AffineRoot> apartment_roots(const GroupType& g);

/// Every simple affine root is strictly positive at x.
bool alcove_contains(const ApartmentPoint& x, const GroupType& g);

/// Vertices of the fundamental alcove of a classical group inside the
/// theta-fixed part of the GL_N apartment.
std::vector<ApartmentPoint> alcove_vertices(const GroupType& g);
ApartmentPoint alcove_barycenter(const GroupType& g);

/// One root of G restricted to the theta-fixed apartment, written as
///   sum_k coefficients[k] * (root k of the fixed group) + slack.
struct RootCertificate {
  AffineRoot target;
  std::vector<Rational> coefficients;
  Rational slack;
};

struct InclusionCertificate {
  GroupPair pair;
  std::vector<AffineRoot> g_roots;
  /// Fixed-group roots in GL_N apartment coordinates.
  std::vector<AffineRoot> theta_roots;
  std::vector<RootCertificate> entries;
};

/// Restriction of an affine functional to the theta-fixed apartment, in
/// the half coordinates t: returns (coefficients of t_1..t_n, constant).
std::pair<std::vector<Rational>, Rational> restrict_to_fixed(const AffineRoot& a, int n);

/// Nonnegative combination certificates showing that the fixed group's
/// fundamental alcove lies in that of G.  Throws DomainError if none
/// exists for some root.
InclusionCertificate inclusion_certificate(const GroupPair& pair);
/// Exact re-check: identities hold on the fixed apartment, coefficients and
/// slack are nonnegative and not all zero.
bool validate(const InclusionCertificate& cert);
bool validate(const RootCertificate& entry, const std::vector<AffineRoot>& theta_roots, int n);

}  // namespace padiclab
