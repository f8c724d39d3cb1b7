#pragma once

#include "json.hpp"
#include "padiclab/building.hpp"
#include "padiclab/matrix.hpp"
#include "padiclab/twisted.hpp"

namespace padiclab {

/// Rationals are written as reduced fractions ("-3/4", "2").
nlohmann::json to_json(const Rational& r);
Rational rational_from_json(const nlohmann::json& j);

/// {"val": fraction or null, "digits": residue codes, "precision": digits}.
nlohmann::json to_json(const Scalar& s);
nlohmann::json to_json(const Matrix& m);

nlohmann::json to_json(const AffineRoot& a);
nlohmann::json roots_json(const GroupType& g);
nlohmann::json to_json(const InclusionCertificate& cert);

nlohmann::json to_json(const DescentTrace& trace);

nlohmann::json to_json(const DescentPairDescriptor& d);
/// Inverse of to_json; ConfigError on malformed input.
DescentPairDescriptor descent_pair_from_json(const nlohmann::json& j);

}  // namespace padiclab
