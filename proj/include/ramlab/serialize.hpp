#pragma once

// Manifests and certificates as JSON (schema 1). Polynomials travel as strings in the parser
// grammar; integers inside them are unbounded decimals.

#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "ramlab/algebra.hpp"
#include "ramlab/ramification.hpp"
#include "ramlab/scenarios.hpp"
#include "ramlab/valuation.hpp"

namespace ramlab {

using Json = nlohmann::ordered_json;

inline constexpr int kSchema = 1;

struct Manifest {
  unsigned p = 3;
  unsigned root_index = 1;
  std::vector<std::string> vars;
  std::vector<std::int64_t> tower;
  std::map<std::string, std::string> elements;
  Json params = Json::object();

  AmbientPtr ambient() const;
  /// Throws InvalidArgument for an unknown name.
  TowerPoly element(const std::string& name) const;
};

/// Throws BadInput on schema problems, ParseError on bad polynomials.
Manifest parse_manifest(const Json& j);
Json to_json(const Manifest& m);

Json ambient_json(const AmbientPtr& amb);
AmbientPtr ambient_from_json(const Json& j);

Json gamma_cert_json(const GammaCert& c);
GammaCert gamma_cert_from_json(const Json& j);

Json classify_json(const TowerPoly& f, const RamClass& c);
Json algebra_json(const KummerAlg& a);
KummerAlg algebra_from_json(const Json& j);
Json report_json(const ScenarioReport& r);

struct VerifyResult {
  bool ok = false;
  std::vector<std::string> messages;
};

/// Re-checks a certificate of kind gamma, classify, algebra or report using only the
/// polynomial arithmetic and the stated identities.
VerifyResult verify_certificate(const Json& j);

}  // namespace ramlab
