#pragma once

// End-to-end runs: Koh's example, the quadratic p = 2 cross-check and randomized batteries.

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "ramlab/algebra.hpp"
#include "ramlab/ramification.hpp"
#include "ramlab/valuation.hpp"

namespace ramlab {

struct Check {
  std::string name;
  bool pass = false;
  std::string detail;
};

struct ScenarioReport {
  std::string id;
  std::vector<std::pair<std::string, std::string>> inputs;
  std::vector<Check> checks;
  std::vector<std::pair<std::string, GammaCert>> certs;
  std::vector<std::pair<std::string, KummerAlg>> algebras;
  std::map<std::string, std::uint64_t> counters;
  std::vector<std::string> notes;
  double seconds = 0;  // never serialized

  bool pass() const;
  void check(std::string name, bool ok, std::string detail = {});
};

/// Koh's example over Z[eps][x, y] at p = 3, with extra inert variables z1, z2, ...
ScenarioReport koh_scenario(unsigned extra_vars = 0);

/// p = 2 over Z[eps] = Z: classify f and compare with the ring of integers of Q(sqrt f).
/// Throws BadInput unless f is odd, squarefree and |f| <= 10^6.
ScenarioReport quadratic_scenario(long f);

struct BatteryProfile {
  unsigned p = 3;
  unsigned max_vars = 2;
  unsigned degree = 4;
  unsigned height = 27;
  unsigned threads = 1;
};

/// Random instances checked against the oracle, the v^p and f^j invariances and the
/// cover verifier. Each instance depends only on (seed, index).
ScenarioReport battery(std::uint64_t seed, std::uint64_t count, const BatteryProfile& profile = {});

/// The random element used for instance `index` of a battery.
TowerPoly battery_instance(std::uint64_t seed, std::uint64_t index, const BatteryProfile& profile);

}  // namespace ramlab
