#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "umtk/decomposition.hpp"
#include "umtk/families.hpp"
#include "umtk/spaces.hpp"
#include "umtk/theorems.hpp"
#include "umtk/transform.hpp"
#include "umtk/value.hpp"

namespace umtk::report {

using json = nlohmann::ordered_json;

// FNV-1a 64-bit digest as 16 hex characters; identifies input files in
// reports without embedding their content.
std::string fnv1a64_hex(std::string_view bytes);

struct InputDigest {
  std::string role;  // "input", "fn", "family"
  std::string path;
  std::string digest;
};

// Stable machine-readable envelope: schema_version, command echo, input
// digests, settings, result payload, exit code. timing_ms is emitted only
// when present, so that reports stay byte-identical across runs by default.
json envelope(const std::string& command, const std::vector<std::string>& argv,
              const std::vector<InputDigest>& inputs, json settings, json result,
              int exit_code, std::optional<double> timing_ms = std::nullopt);

json to_json(const PrecisionPolicy& p);
json to_json(const PointWitness& w);
json to_json(const PairWitness& w);
json to_json(const TripleWitness& w);
json to_json(const PairViolation& w);
json to_json(const Enclosure& e);
json to_json(const AxiomReport& r);
json to_json(const FunctionClassification& c);
json to_json(const WitnessPackage& p);
json to_json(const FabProbeResult& r);
json to_json(const SnowflakeResult& r);
json to_json(const CriticalExponent& c);
json to_json(const DecompositionResult& d);
json to_json(const ZeroGap& z);
json to_json(const SeparationCheck& s);
json to_json(const FamilyCounterexample& c);
json to_json(const FamilyDecision& d);

}  // namespace umtk::report
