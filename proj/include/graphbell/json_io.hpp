#pragma once

#include "graphbell/bell.hpp"
#include "graphbell/gilbert.hpp"
#include "graphbell/invariants.hpp"
#include "graphbell/states.hpp"

#include <json.hpp>

#include <cstdint>
#include <string>

namespace graphbell {

using Json = nlohmann::json;

/// {m, corner, row_marginals, col_marginals, body} with "p/q" strings.
/// row_marginals is Alice's, col_marginals Bob's, body[j][i] the joint of
/// Alice i with Bob j.
Json to_json(const BellFunctional& f);
BellFunctional functional_from_json(const Json& j);

/// {dimension, field, family, rays} with each component as [re, im].
Json to_json(const VectorSet& vs);
VectorSet vector_set_from_json(const Json& j);

Json to_json(const InvariantReport& r);
Json to_json(const EfficiencyReport& r);
Json to_json(const LpCertificate& c);
Json to_json(const SeparatingInequality& s);

/// Stable digest of a group's generators.
std::string group_fingerprint(const PermutationGroup& g);

struct RunManifest {
  std::string target;  // where q came from
  std::string group_fingerprint;
  double tolerance = 0;
  std::size_t max_iterations = 0;
  std::uint64_t seed = 0;
};
Json to_json(const RunManifest& m);

/// Fixed-point rendering with four decimals.
std::string decimal4(double x);

Json load_json(const std::string& path);
void save_json(const std::string& path, const Json& j);

}  // namespace graphbell
