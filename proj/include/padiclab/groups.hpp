#pragma once

#include <string>
#include <string_view>

#include "padiclab/local_field.hpp"

namespace padiclab {

enum class Family { GL, Sp, SO, U };

/// A matrix group of size N.  GL over E is Res_{E/F} GL_N when the
/// kind is quadratic; U needs a quadratic kind; Sp and SO live over F.
struct GroupType {
  Family family = Family::GL;
  int size = 1;
  ExtensionKind kind = ExtensionKind::trivial;

  static GroupType gl(int n, ExtensionKind kind = ExtensionKind::trivial);
  static GroupType sp(int size);
  static GroupType so(int size);
  static GroupType unitary(int n, ExtensionKind kind);

  /// n for Sp(2n), SO(2n), SO(2n+1) and U(N) with N = 2n or 2n+1; N for GL.
  int rank_parameter() const;
  std::string to_string() const;
  bool operator==(const GroupType&) const = default;
};

/// "GL:3", "Sp:4", "SO:5", "U:3" (the number is the matrix size).  The kind
/// applies to GL and U and must be quadratic for U.
GroupType parse_group(std::string_view text, ExtensionKind kind);

/// The four twisted endoscopic pairs, by case number:
/// (1) GL_{2n+1} with H = Sp_{2n}, fixed group SO_{2n+1};
/// (2) GL_{2n} with H = SO_{2n+1}, fixed group Sp_{2n};
/// (3) GL_{2n} with H = SO_{2n}, fixed group Sp_{2n};
/// (4) Res GL_N with H = U(N), fixed group U(N).
struct GroupPair {
  int which = 1;
  /// n for cases (1)-(3), N for case (4).
  int rank = 1;
  ExtensionKind kind = ExtensionKind::trivial;

  static GroupPair make(int which, int rank, ExtensionKind kind = ExtensionKind::trivial);
  GroupType g() const;
  GroupType g_theta() const;
  GroupType h() const;
  std::string to_string() const;
};

}  // namespace padiclab
