#include "umtk/report.hpp"

#include <cstdint>

#include "umtk/io.hpp"

namespace umtk::report {

namespace {

json rational_str(const Rational& r) { return r.to_string(); }

json pair_strs(const std::pair<Rational, Rational>& p) {
  return json::array({p.first.to_string(), p.second.to_string()});
}

template <typename W>
json verdict_json(bool holds, const std::optional<W>& witness) {
  json j;
  j["holds"] = holds;
  if (witness) j["witness"] = to_json(*witness);
  return j;
}

const char* verdict_name(ProbeVerdict v) {
  switch (v) {
    case ProbeVerdict::metric: return "metric";
    case ProbeVerdict::not_metric: return "not_metric";
    case ProbeVerdict::undecided: return "undecided";
  }
  return "?";
}

const char* outcome_name(SeparationCheck::Outcome o) {
  switch (o) {
    case SeparationCheck::Outcome::separated: return "separated";
    case SeparationCheck::Outcome::failed: return "failed";
    case SeparationCheck::Outcome::undecided: return "undecided";
  }
  return "?";
}

const char* family_verdict_name(FamilyVerdict v) {
  switch (v) {
    case FamilyVerdict::ultrametric: return "ultrametric";
    case FamilyVerdict::not_ultrametric: return "not_ultrametric";
    case FamilyVerdict::inconclusive: return "inconclusive";
  }
  return "?";
}

}  // namespace

std::string fnv1a64_hex(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  static const char* digits = "0123456789abcdef";
  std::string out(16, '0');
  for (int i = 15; i >= 0; --i) {
    out[i] = digits[h & 0xf];
    h >>= 4;
  }
  return out;
}

json envelope(const std::string& command, const std::vector<std::string>& argv,
              const std::vector<InputDigest>& inputs, json settings, json result,
              int exit_code, std::optional<double> timing_ms) {
  json j;
  j["schema_version"] = 1;
  j["command"] = command;
  j["argv"] = argv;
  json ins = json::array();
  for (const InputDigest& in : inputs) {
    json one;
    one["role"] = in.role;
    one["path"] = in.path;
    one["fnv1a64"] = in.digest;
    ins.push_back(std::move(one));
  }
  j["inputs"] = std::move(ins);
  j["settings"] = std::move(settings);
  j["result"] = std::move(result);
  j["exit_code"] = exit_code;
  if (timing_ms) j["timing_ms"] = *timing_ms;
  return j;
}

json to_json(const PrecisionPolicy& p) {
  json j;
  j["start_bits"] = p.start_bits;
  j["max_bits"] = p.max_bits;
  j["target_width_log2"] = p.target_width_log2;
  return j;
}

json to_json(const PointWitness& w) {
  json j;
  j["i"] = w.i;
  return j;
}

json to_json(const PairWitness& w) {
  json j;
  j["i"] = w.i;
  j["j"] = w.j;
  return j;
}

json to_json(const TripleWitness& w) {
  json j;
  j["i"] = w.i;
  j["j"] = w.j;
  j["k"] = w.k;
  return j;
}

json to_json(const PairViolation& w) {
  json j;
  j["a"] = rational_str(w.a);
  j["b"] = rational_str(w.b);
  return j;
}

json to_json(const Enclosure& e) {
  json j;
  j["lo"] = rational_str(e.lo());
  j["hi"] = rational_str(e.hi());
  j["exact"] = e.is_exact();
  return j;
}

json to_json(const AxiomReport& r) {
  json axioms;
  axioms["reflexive"] = verdict_json(r.reflexive.holds, r.reflexive.witness);
  axioms["identity"] = verdict_json(r.identity.holds, r.identity.witness);
  axioms["triangle"] = verdict_json(r.triangle.holds, r.triangle.witness);
  axioms["strong_triangle"] =
      verdict_json(r.strong_triangle.holds, r.strong_triangle.witness);
  json classes;
  classes["semimetric"] = r.semimetric;
  classes["pseudometric"] = r.pseudometric;
  classes["pseudoultrametric"] = r.pseudoultrametric;
  classes["metric"] = r.metric;
  classes["ultrametric"] = r.ultrametric;
  json j;
  j["axioms"] = std::move(axioms);
  j["classes"] = std::move(classes);
  return j;
}

json to_json(const FunctionClassification& c) {
  json j;
  j["increasing"] = verdict_json(c.increasing.holds, c.increasing.witness);
  json amenable;
  amenable["holds"] = c.amenable.holds;
  if (c.amenable.witness) amenable["witness"] = rational_str(*c.amenable.witness);
  j["amenable"] = std::move(amenable);
  j["doubling"] = verdict_json(c.doubling.holds, c.doubling.witness);
  j["value_at_zero"] = rational_str(c.value_at_zero);
  json classes;
  classes["pseudoultrametric_preserving"] = c.pseudoultrametric_preserving;
  classes["semimetric_preserving"] = c.semimetric_preserving;
  classes["ultrametric_preserving"] = c.ultrametric_preserving;
  classes["ultrametric_metric_preserving"] = c.ultrametric_metric_preserving;
  j["classes"] = std::move(classes);
  return j;
}

json to_json(const WitnessPackage& p) {
  json j;
  j["violated_axiom"] = axiom_name(p.violated);
  j["indices"] = p.indices;
  json before = json::array();
  for (const Rational& v : p.before) before.push_back(v.to_string());
  json after = json::array();
  for (const Rational& v : p.after) after.push_back(v.to_string());
  j["before"] = std::move(before);
  j["after"] = std::move(after);
  j["function"] = io::function_to_json(p.function);
  j["space"] = io::matrix_to_json(p.space);
  j["transformed"] = io::matrix_to_json(p.transformed);
  return j;
}

json to_json(const FabProbeResult& r) {
  json j;
  j["ultrametric"] = r.ultrametric;
  json pairs = json::array();
  for (const auto& p : r.pairs_tested) pairs.push_back(pair_strs(p));
  j["pairs_tested"] = std::move(pairs);
  if (r.failing_pair) j["failing_pair"] = pair_strs(*r.failing_pair);
  if (r.failure) j["failure"] = to_json(*r.failure);
  return j;
}

json to_json(const SnowflakeResult& r) {
  json j;
  j["verdict"] = verdict_name(r.verdict);
  if (r.witness) j["witness"] = to_json(*r.witness);
  json und = json::array();
  for (const TripleWitness& t : r.undecided_triples) und.push_back(to_json(t));
  j["undecided_triples"] = std::move(und);
  return j;
}

json to_json(const CriticalExponent& c) {
  json j;
  j["alpha_star"] = rational_str(c.alpha_star);
  j["triple"] = to_json(c.triple);
  j["exact"] = c.exact;
  return j;
}

json to_json(const DecompositionResult& d) {
  json j;
  j["r_star"] = rational_str(d.r_star);
  j["ultrametric"] = io::matrix_to_json(d.ultrametric);
  j["threshold_fn"] = io::function_to_json(d.threshold_fn);
  j["composition_verified"] = d.composition_verified;
  return j;
}

json to_json(const ZeroGap& z) {
  json j;
  j["r0"] = rational_str(z.r0);
  j["pair"] = to_json(z.pair);
  return j;
}

json to_json(const SeparationCheck& s) {
  json j;
  j["outcome"] = outcome_name(s.outcome);
  if (s.pair) j["pair"] = pair_strs(*s.pair);
  json margins = json::array();
  for (const Enclosure& e : s.margins) margins.push_back(to_json(e));
  j["margins"] = std::move(margins);
  return j;
}

json to_json(const FamilyCounterexample& c) {
  json cert;
  cert["t3"] = rational_str(c.certificate.t3);
  cert["space_metric"] = c.certificate.space_metric;
  cert["space_ultrametric"] = c.certificate.space_ultrametric;
  cert["members_verified"] = c.certificate.members_verified;
  json j;
  j["space"] = io::matrix_to_json(c.space);
  j["certificate"] = std::move(cert);
  return j;
}

json to_json(const FamilyDecision& d) {
  json j;
  j["verdict"] = family_verdict_name(d.verdict);
  if (d.unseparated_pair) j["unseparated_pair"] = pair_strs(*d.unseparated_pair);
  if (d.undecided_triple) j["undecided_triple"] = to_json(*d.undecided_triple);
  if (d.breaking_member) j["breaking_member"] = *d.breaking_member;
  if (d.breaking_triple) j["breaking_triple"] = to_json(*d.breaking_triple);
  return j;
}

}  // namespace umtk::report
