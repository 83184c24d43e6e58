#include <chrono>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "CLI11.hpp"
#include "umtk/decomposition.hpp"
#include "umtk/errors.hpp"
#include "umtk/families.hpp"
#include "umtk/generators.hpp"
#include "umtk/io.hpp"
#include "umtk/report.hpp"
#include "umtk/spaces.hpp"
#include "umtk/theorems.hpp"
#include "umtk/transform.hpp"

namespace {

using umtk::Dissimilarity;
using umtk::FunctionFamily;
using umtk::PrecisionPolicy;
using umtk::Rational;
using umtk::TransformFunction;
using json = umtk::report::json;

constexpr int kExitHolds = 0;
constexpr int kExitFails = 1;
constexpr int kExitInput = 2;
constexpr int kExitUndecided = 3;

struct CommonOpts {
  bool text = false;
  bool timing = false;
  unsigned precision = 60;
  unsigned max_bits = 4096;

  PrecisionPolicy policy() const {
    PrecisionPolicy p;
    p.target_width_log2 = precision;
    p.max_bits = max_bits;
    return p;
  }

  json settings() const {
    json s;
    s["precision"] = umtk::report::to_json(policy());
    return s;
  }
};

void add_common(CLI::App* sub, CommonOpts& c) {
  sub->add_flag("--text", c.text, "Human-readable summary instead of JSON");
  sub->add_flag("--json", "Machine-readable JSON report (default)");
  sub->add_flag("--timing", c.timing, "Include wall-clock timing in the report");
  sub->add_option("--precision", c.precision,
                  "Enclosure width target 2^-N for power arithmetic (default 60)");
  sub->add_option("--max-bits", c.max_bits,
                  "Hard working-precision cap for certified comparisons (default 4096)");
}

// Everything a finished subcommand hands back to the shared reporter.
struct Outcome {
  json result;
  int code = kExitHolds;
  std::vector<umtk::report::InputDigest> inputs;
  std::string text;
  json extra_settings;
};

Dissimilarity load_matrix_digested(const std::string& path, const char* role,
                                   std::vector<umtk::report::InputDigest>& digests) {
  std::string bytes = umtk::io::read_file(path);
  digests.push_back({role, path, umtk::report::fnv1a64_hex(bytes)});
  return umtk::io::parse_matrix(bytes);
}

TransformFunction load_function_digested(const std::string& path,
                                         std::vector<umtk::report::InputDigest>& digests) {
  std::string bytes = umtk::io::read_file(path);
  digests.push_back({"fn", path, umtk::report::fnv1a64_hex(bytes)});
  return umtk::io::parse_function_json(bytes);
}

FunctionFamily load_family_digested(const std::string& path,
                                    std::vector<umtk::report::InputDigest>& digests) {
  std::string bytes = umtk::io::read_file(path);
  digests.push_back({"family", path, umtk::report::fnv1a64_hex(bytes)});
  return umtk::io::parse_family_json(bytes);
}

Rational parse_rational_arg(const std::string& text, const char* flag) {
  try {
    return Rational::parse(text);
  } catch (const umtk::input_error& e) {
    throw umtk::input_error(std::string(flag) + ": " + e.what());
  }
}

std::vector<std::pair<Rational, Rational>> parse_pairs_arg(const std::string& text) {
  std::vector<std::pair<Rational, Rational>> pairs;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find(';', start);
    std::string chunk = text.substr(start, end == std::string::npos ? end : end - start);
    std::size_t comma = chunk.find(',');
    if (comma == std::string::npos) {
      throw umtk::input_error("--pairs: expected \"t1,t2\" in \"" + chunk + "\"");
    }
    pairs.emplace_back(parse_rational_arg(chunk.substr(0, comma), "--pairs"),
                       parse_rational_arg(chunk.substr(comma + 1), "--pairs"));
    if (end == std::string::npos) break;
    start = end + 1;
  }
  if (pairs.empty()) throw umtk::input_error("--pairs: no pairs given");
  return pairs;
}

bool space_class_holds(const umtk::AxiomReport& r, const std::string& cls) {
  if (cls == "semimetric") return r.semimetric;
  if (cls == "pseudometric") return r.pseudometric;
  if (cls == "pseudoultrametric") return r.pseudoultrametric;
  if (cls == "metric") return r.metric;
  if (cls == "ultrametric") return r.ultrametric;
  throw umtk::input_error("--require: unknown space class \"" + cls + "\"");
}

bool fn_class_holds(const umtk::FunctionClassification& c, const std::string& cls) {
  if (cls == "increasing") return c.increasing.holds;
  if (cls == "amenable") return c.amenable.holds;
  if (cls == "doubling") return c.doubling.holds;
  if (cls == "pseudoultrametric-preserving") return c.pseudoultrametric_preserving;
  if (cls == "semimetric-preserving") return c.semimetric_preserving;
  if (cls == "ultrametric-preserving") return c.ultrametric_preserving;
  if (cls == "ultrametric-metric-preserving") return c.ultrametric_metric_preserving;
  throw umtk::input_error("--require: unknown function class \"" + cls + "\"");
}

std::string class_line(const umtk::AxiomReport& r) {
  std::string out = "classes:";
  if (r.semimetric) out += " semimetric";
  if (r.pseudometric) out += " pseudometric";
  if (r.pseudoultrametric) out += " pseudoultrametric";
  if (r.metric) out += " metric";
  if (r.ultrametric) out += " ultrametric";
  if (out == "classes:") out += " none";
  return out;
}

int run_cli(int argc, char** argv) {
  CLI::App app{"Exact decision procedures for ultrametric-preserving transforms"};
  app.require_subcommand(1);

  std::optional<Outcome> outcome;
  std::string command;
  // One subcommand runs per invocation, so every subcommand can bind the same
  // common-option storage.
  auto opts = std::make_shared<CommonOpts>();

  // classify-space
  {
    auto* sub = app.add_subcommand("classify-space",
                                   "Check every distance axiom of a matrix, with witnesses");
    auto input = std::make_shared<std::string>();
    auto require = std::make_shared<std::string>();
    add_common(sub, *opts);
    sub->add_option("--input", *input, "Matrix file (JSON or CSV)")->required();
    sub->add_option("--require", *require,
                    "Exit 1 unless the space lies in this class "
                    "(semimetric|pseudometric|pseudoultrametric|metric|ultrametric)");
    sub->callback([&outcome, &command, opts, input, require] {
      command = "classify-space";
      Outcome out;
      Dissimilarity d = load_matrix_digested(*input, "input", out.inputs);
      umtk::AxiomReport rep = umtk::classify_space(d);
      out.result = umtk::report::to_json(rep);
      out.text = class_line(rep);
      if (!require->empty()) {
        bool ok = space_class_holds(rep, *require);
        out.result["required"] = *require;
        out.result["required_holds"] = ok;
        out.code = ok ? kExitHolds : kExitFails;
        out.text += ok ? "; required " + *require + " holds"
                       : "; required " + *require + " FAILS";
        json req;
        req["require"] = *require;
        out.extra_settings = std::move(req);
      }
      outcome = std::move(out);
    });
  }

  // classify-fn
  {
    auto* sub = app.add_subcommand("classify-fn",
                                   "Decide increasing/amenable/doubling and the "
                                   "preservation classes of a transform");
    auto fn = std::make_shared<std::string>();
    auto require = std::make_shared<std::string>();
    add_common(sub, *opts);
    sub->add_option("--fn", *fn, "Function file (JSON)")->required();
    sub->add_option("--require", *require,
                    "Exit 1 unless the function lies in this class (increasing|amenable|"
                    "doubling|pseudoultrametric-preserving|semimetric-preserving|"
                    "ultrametric-preserving|ultrametric-metric-preserving)");
    sub->callback([&outcome, &command, opts, fn, require] {
      command = "classify-fn";
      Outcome out;
      TransformFunction f = load_function_digested(*fn, out.inputs);
      umtk::FunctionClassification c = umtk::classify_function(f);
      out.result = umtk::report::to_json(c);
      out.text = std::string("increasing=") + (c.increasing.holds ? "yes" : "no") +
                 " amenable=" + (c.amenable.holds ? "yes" : "no") +
                 " doubling=" + (c.doubling.holds ? "yes" : "no");
      if (!require->empty()) {
        bool ok = fn_class_holds(c, *require);
        out.result["required"] = *require;
        out.result["required_holds"] = ok;
        out.code = ok ? kExitHolds : kExitFails;
        out.text += ok ? "; required " + *require + " holds"
                       : "; required " + *require + " FAILS";
        json req;
        req["require"] = *require;
        out.extra_settings = std::move(req);
      }
      outcome = std::move(out);
    });
  }

  // transform
  {
    auto* sub = app.add_subcommand("transform",
                                   "Apply a transform entrywise and classify the result");
    auto input = std::make_shared<std::string>();
    auto fn = std::make_shared<std::string>();
    add_common(sub, *opts);
    sub->add_option("--input", *input, "Matrix file (JSON or CSV)")->required();
    sub->add_option("--fn", *fn, "Function file (JSON)")->required();
    sub->callback([&outcome, &command, opts, input, fn] {
      command = "transform";
      Outcome out;
      Dissimilarity d = load_matrix_digested(*input, "input", out.inputs);
      TransformFunction f = load_function_digested(*fn, out.inputs);
      Dissimilarity t = umtk::apply(f, d);
      umtk::AxiomReport rep = umtk::classify_space(t);
      out.result["transformed"] = umtk::io::matrix_to_json(t);
      out.result["classification"] = umtk::report::to_json(rep);
      out.text = "transformed " + std::to_string(t.size()) + " points; " + class_line(rep);
      outcome = std::move(out);
    });
  }

  // dual-witness
  {
    auto* sub = app.add_subcommand(
        "dual-witness",
        "Build a three-step transform breaking the triangle inequality of a "
        "non-ultrametric metric");
    auto input = std::make_shared<std::string>();
    add_common(sub, *opts);
    sub->add_option("--input", *input, "Metric matrix file")->required();
    sub->callback([&outcome, &command, opts, input] {
      command = "dual-witness";
      Outcome out;
      Dissimilarity d = load_matrix_digested(*input, "input", out.inputs);
      std::optional<umtk::WitnessPackage> w = umtk::dual_witness(d);
      out.result["ultrametric"] = !w.has_value();
      if (w) {
        out.result["witness"] = umtk::report::to_json(*w);
        out.code = kExitFails;
        out.text = "not ultrametric: transform breaks the triangle inequality";
      } else {
        out.text = "ultrametric: every increasing amenable transform preserves it";
      }
      outcome = std::move(out);
    });
  }

  // probe-fab
  {
    auto* sub = app.add_subcommand(
        "probe-fab",
        "Test ultrametricity through three-step transforms over all occurring value pairs");
    auto input = std::make_shared<std::string>();
    add_common(sub, *opts);
    sub->add_option("--input", *input, "Metric matrix file")->required();
    sub->callback([&outcome, &command, opts, input] {
      command = "probe-fab";
      Outcome out;
      Dissimilarity d = load_matrix_digested(*input, "input", out.inputs);
      umtk::FabProbeResult r = umtk::probe_fab(d);
      out.result = umtk::report::to_json(r);
      out.code = r.ultrametric ? kExitHolds : kExitFails;
      out.text = r.ultrametric
                     ? "ultrametric: all " + std::to_string(r.pairs_tested.size()) +
                           " value pairs pass"
                     : "not ultrametric: pair (" + r.failing_pair->first.to_string() + ", " +
                           r.failing_pair->second.to_string() + ") fails";
      outcome = std::move(out);
    });
  }

  // probe-snowflake
  {
    auto* sub = app.add_subcommand(
        "probe-snowflake", "Check whether d^alpha keeps the triangle inequality");
    auto input = std::make_shared<std::string>();
    auto alpha = std::make_shared<std::string>();
    add_common(sub, *opts);
    sub->add_option("--input", *input, "Metric matrix file")->required();
    sub->add_option("--alpha", *alpha, "Exponent > 1 (exact rational)")->required();
    sub->callback([&outcome, &command, opts, input, alpha] {
      command = "probe-snowflake";
      Outcome out;
      Dissimilarity d = load_matrix_digested(*input, "input", out.inputs);
      Rational a = parse_rational_arg(*alpha, "--alpha");
      umtk::SnowflakeResult r = umtk::probe_snowflake(d, a, opts->policy());
      out.result = umtk::report::to_json(r);
      out.result["alpha"] = a.to_string();
      switch (r.verdict) {
        case umtk::ProbeVerdict::metric:
          out.code = kExitHolds;
          out.text = "d^" + a.to_string() + " is a metric";
          break;
        case umtk::ProbeVerdict::not_metric:
          out.code = kExitFails;
          out.text = "d^" + a.to_string() + " breaks the triangle inequality at (" +
                     std::to_string(r.witness->i) + ", " + std::to_string(r.witness->j) +
                     ", " + std::to_string(r.witness->k) + ")";
          break;
        case umtk::ProbeVerdict::undecided:
          out.code = kExitUndecided;
          out.text = "undecided at precision cap";
          break;
      }
      json s;
      s["alpha"] = a.to_string();
      out.extra_settings = std::move(s);
      outcome = std::move(out);
    });
  }

  // min-exponent
  {
    auto* sub = app.add_subcommand(
        "min-exponent",
        "Smallest power exponent at which some triple stops satisfying the triangle "
        "inequality");
    auto input = std::make_shared<std::string>();
    auto tolerance = std::make_shared<std::string>("1/1073741824");
    add_common(sub, *opts);
    sub->add_option("--input", *input, "Metric matrix file")->required();
    sub->add_option("--tolerance", *tolerance,
                    "Bisection width bound for inexact roots (default 2^-30)");
    sub->callback([&outcome, &command, opts, input, tolerance] {
      command = "min-exponent";
      Outcome out;
      Dissimilarity d = load_matrix_digested(*input, "input", out.inputs);
      Rational tol = parse_rational_arg(*tolerance, "--tolerance");
      std::optional<umtk::CriticalExponent> c =
          umtk::min_falsifying_exponent(d, tol, opts->policy());
      out.result["exists"] = c.has_value();
      if (c) {
        out.result["critical"] = umtk::report::to_json(*c);
        out.text = "alpha* = " + c->alpha_star.to_string() +
                   (c->exact ? " (exact)" : " (within tolerance)");
      } else {
        out.text = "ultrametric: every power keeps the triangle inequality";
      }
      json s;
      s["tolerance"] = tol.to_string();
      out.extra_settings = std::move(s);
      outcome = std::move(out);
    });
  }

  // decompose
  {
    auto* sub = app.add_subcommand(
        "decompose",
        "Factor a pseudoultrametric as a threshold transform of an ultrametric");
    auto input = std::make_shared<std::string>();
    add_common(sub, *opts);
    sub->add_option("--input", *input, "Pseudoultrametric matrix file")->required();
    sub->callback([&outcome, &command, opts, input] {
      command = "decompose";
      Outcome out;
      Dissimilarity d = load_matrix_digested(*input, "input", out.inputs);
      umtk::DecompositionResult r = umtk::decompose(d);
      out.result = umtk::report::to_json(r);
      out.text = "r* = " + r.r_star.to_string() + "; composition verified";
      outcome = std::move(out);
    });
  }

  // zero-gap
  {
    auto* sub = app.add_subcommand(
        "zero-gap",
        "Radius below which a transform erases distances of an ultrametric");
    auto input = std::make_shared<std::string>();
    auto fn = std::make_shared<std::string>();
    add_common(sub, *opts);
    sub->add_option("--input", *input, "Ultrametric matrix file")->required();
    sub->add_option("--fn", *fn, "Increasing transform with f(0) = 0")->required();
    sub->callback([&outcome, &command, opts, input, fn] {
      command = "zero-gap";
      Outcome out;
      Dissimilarity d = load_matrix_digested(*input, "input", out.inputs);
      TransformFunction f = load_function_digested(*fn, out.inputs);
      std::optional<umtk::ZeroGap> z = umtk::zero_gap_radius(d, f);
      out.result["erases"] = z.has_value();
      if (z) {
        out.result["gap"] = umtk::report::to_json(*z);
        out.code = kExitFails;
        out.text = "erases distances below r0 = " + z->r0.to_string() + " (pair " +
                   std::to_string(z->pair.i) + ", " + std::to_string(z->pair.j) + ")";
      } else {
        out.text = "transform keeps the space ultrametric";
      }
      outcome = std::move(out);
    });
  }

  // family-check
  {
    auto* sub = app.add_subcommand(
        "family-check",
        "Separation questions for a family: a single pair, a pair list, or "
        "ultrametricity of a matrix through the family");
    auto family = std::make_shared<std::string>();
    auto input = std::make_shared<std::string>();
    auto pairs = std::make_shared<std::string>();
    auto t1 = std::make_shared<std::string>();
    auto t2 = std::make_shared<std::string>();
    auto k = std::make_shared<std::string>("2");
    auto vouch = std::make_shared<bool>(false);
    add_common(sub, *opts);
    sub->add_option("--family", *family, "Family file (JSON list of functions)")->required();
    sub->add_option("--input", *input, "Metric matrix: decide ultrametricity by family");
    sub->add_option("--pairs", *pairs, "Pair list \"t1,t2;t1,t2;...\": k-separation check");
    sub->add_option("--t1", *t1, "Single pair: first value");
    sub->add_option("--t2", *t2, "Single pair: second value");
    sub->add_option("--k", *k, "Separation constant > 1 (default 2)");
    sub->add_flag("--assume-separating", *vouch,
                  "Skip the 2-separation certification before the matrix decision");
    sub->callback([&outcome, &command, opts, family, input, pairs, t1, t2, k, vouch] {
      command = "family-check";
      Outcome out;
      FunctionFamily fam = load_family_digested(*family, out.inputs);
      Rational kv = parse_rational_arg(*k, "--k");
      json s;
      s["k"] = kv.to_string();
      out.extra_settings = std::move(s);

      if (!input->empty()) {
        Dissimilarity d = load_matrix_digested(*input, "input", out.inputs);
        umtk::FamilyDecision dec =
            umtk::ultrametric_by_family(fam, d, *vouch, opts->policy());
        out.result = umtk::report::to_json(dec);
        switch (dec.verdict) {
          case umtk::FamilyVerdict::ultrametric:
            out.code = kExitHolds;
            out.text = "ultrametric by family";
            break;
          case umtk::FamilyVerdict::not_ultrametric:
            out.code = kExitFails;
            out.text = "not ultrametric: member " +
                       std::to_string(*dec.breaking_member) + " breaks a triangle";
            break;
          case umtk::FamilyVerdict::inconclusive:
            out.code = kExitUndecided;
            out.text = "inconclusive: family not certified 2-separating here";
            break;
        }
      } else if (!pairs->empty()) {
        auto pair_list = parse_pairs_arg(*pairs);
        umtk::SeparationCheck chk =
            umtk::is_k_separating_on(fam, kv, pair_list, opts->policy());
        out.result = umtk::report::to_json(chk);
        switch (chk.outcome) {
          case umtk::SeparationCheck::Outcome::separated:
            out.code = kExitHolds;
            out.text = "family is " + kv.to_string() + "-separating on all " +
                       std::to_string(pair_list.size()) + " pairs";
            break;
          case umtk::SeparationCheck::Outcome::failed:
            out.code = kExitFails;
            out.text = "no member separates (" + chk.pair->first.to_string() + ", " +
                       chk.pair->second.to_string() + ")";
            break;
          case umtk::SeparationCheck::Outcome::undecided:
            out.code = kExitUndecided;
            out.text = "undecided at precision cap";
            break;
        }
      } else if (!t1->empty() || !t2->empty()) {
        if (t1->empty() || t2->empty()) {
          throw umtk::input_error("family-check: --t1 and --t2 must be given together");
        }
        Rational a = parse_rational_arg(*t1, "--t1");
        Rational b = parse_rational_arg(*t2, "--t2");
        std::optional<std::size_t> idx =
            umtk::find_separator(fam, a, b, kv, opts->policy());
        out.result["separator_found"] = idx.has_value();
        if (idx) {
          out.result["separator"] = *idx;
          out.text = "member " + std::to_string(*idx) + " separates";
        } else {
          out.code = kExitFails;
          out.text = "no member separates (" + a.to_string() + ", " + b.to_string() + ")";
        }
      } else {
        throw umtk::input_error(
            "family-check: give --input, --pairs, or --t1/--t2 to pick the question");
      }
      outcome = std::move(out);
    });
  }

  // family-counterexample
  {
    auto* sub = app.add_subcommand(
        "family-counterexample",
        "Metric that stays metric under every member yet is not ultrametric, built "
        "from a pair the family fails to 2-separate");
    auto family = std::make_shared<std::string>();
    auto t1 = std::make_shared<std::string>();
    auto t2 = std::make_shared<std::string>();
    add_common(sub, *opts);
    sub->add_option("--family", *family, "Family file (JSON list of functions)")->required();
    sub->add_option("--t1", *t1, "Unseparated pair: first value (> 0)")->required();
    sub->add_option("--t2", *t2, "Unseparated pair: second value (> t1)")->required();
    sub->callback([&outcome, &command, opts, family, t1, t2] {
      command = "family-counterexample";
      Outcome out;
      FunctionFamily fam = load_family_digested(*family, out.inputs);
      Rational a = parse_rational_arg(*t1, "--t1");
      Rational b = parse_rational_arg(*t2, "--t2");
      umtk::FamilyCounterexample ce = umtk::counterexample_space(fam, a, b, opts->policy());
      out.result = umtk::report::to_json(ce);
      out.text = "counterexample sides (" + b.to_string() + ", " +
                 ce.certificate.t3.to_string() + ", " + ce.certificate.t3.to_string() +
                 "); " + std::to_string(ce.certificate.members_verified) +
                 " members verified";
      outcome = std::move(out);
    });
  }

  // gen
  {
    auto* sub = app.add_subcommand(
        "gen", "Seeded random spaces and functions, self-verified, as standard files");
    auto what = std::make_shared<std::string>();
    auto seed = std::make_shared<std::uint64_t>(0);
    auto n = std::make_shared<std::size_t>(4);
    auto cls = std::make_shared<std::string>("increasing_amenable");
    auto zero_fraction = std::make_shared<std::string>("1/2");
    auto max_num = std::make_shared<unsigned long>(12);
    auto max_den = std::make_shared<unsigned long>(4);
    auto embed = std::make_shared<std::string>();
    auto out_path = std::make_shared<std::string>();
    add_common(sub, *opts);
    sub->add_option("--what", *what, "ultrametric|metric|pseudoultrametric|function")
        ->required();
    sub->add_option("--seed", *seed, "Generator seed (default 0)");
    sub->add_option("--n", *n, "Point count (default 4)");
    sub->add_option("--class", *cls,
                    "Function class: increasing_amenable|increasing_zero_at_zero|"
                    "amenable_doubling|amenable_non_doubling|non_increasing|non_amenable|"
                    "unconstrained");
    sub->add_option("--zero-fraction", *zero_fraction,
                    "Pseudoultrametric: share of points collapsed into zero-distance "
                    "classes (default 1/2)");
    sub->add_option("--max-num", *max_num, "Value pool numerator bound (default 12)");
    sub->add_option("--max-den", *max_den, "Value pool denominator bound (default 4)");
    sub->add_option("--embed", *embed, "Metric only: three sides \"a,b,c\" kept at points 0,1,2");
    sub->add_option("--out", *out_path, "Also write the bare object to this file");
    sub->callback([&outcome, &command, opts, what, seed, n, cls, zero_fraction, max_num,
                   max_den, embed, out_path] {
      command = "gen";
      Outcome out;
      umtk::GenSpec spec;
      spec.seed = *seed;
      spec.n = *n;
      spec.pool.max_numerator = *max_num;
      spec.pool.max_denominator = *max_den;

      json meta;
      meta["seed"] = spec.seed;
      meta["n"] = spec.n;
      meta["max_numerator"] = spec.pool.max_numerator;
      meta["max_denominator"] = spec.pool.max_denominator;
      meta["what"] = *what;

      json object;
      if (*what == "ultrametric") {
        object = umtk::io::matrix_to_json(umtk::gen_ultrametric(spec));
      } else if (*what == "metric") {
        std::optional<std::array<Rational, 3>> sides;
        if (!embed->empty()) {
          std::vector<std::string> parts;
          std::size_t pos = 0;
          while (true) {
            std::size_t comma = embed->find(',', pos);
            parts.push_back(embed->substr(pos, comma == std::string::npos ? comma
                                                                          : comma - pos));
            if (comma == std::string::npos) break;
            pos = comma + 1;
          }
          if (parts.size() != 3) {
            throw umtk::input_error("--embed: expected three values \"a,b,c\"");
          }
          sides = std::array<Rational, 3>{parse_rational_arg(parts[0], "--embed"),
                                          parse_rational_arg(parts[1], "--embed"),
                                          parse_rational_arg(parts[2], "--embed")};
          meta["embed"] = json::array({(*sides)[0].to_string(), (*sides)[1].to_string(),
                                       (*sides)[2].to_string()});
        }
        umtk::GeneratedMetric gm = umtk::gen_metric(spec, sides);
        object = umtk::io::matrix_to_json(gm.space);
        meta["ultrametric"] = gm.ultrametric;
      } else if (*what == "pseudoultrametric") {
        Rational zf = parse_rational_arg(*zero_fraction, "--zero-fraction");
        meta["zero_fraction"] = zf.to_string();
        object = umtk::io::matrix_to_json(umtk::gen_pseudoultrametric(spec, zf));
      } else if (*what == "function") {
        static const std::pair<const char*, umtk::FunctionClass> table[] = {
            {"increasing_amenable", umtk::FunctionClass::increasing_amenable},
            {"increasing_zero_at_zero", umtk::FunctionClass::increasing_zero_at_zero},
            {"amenable_doubling", umtk::FunctionClass::amenable_doubling},
            {"amenable_non_doubling", umtk::FunctionClass::amenable_non_doubling},
            {"non_increasing", umtk::FunctionClass::non_increasing},
            {"non_amenable", umtk::FunctionClass::non_amenable},
            {"unconstrained", umtk::FunctionClass::unconstrained},
        };
        std::optional<umtk::FunctionClass> picked;
        for (const auto& [name, value] : table) {
          if (*cls == name) picked = value;
        }
        if (!picked) throw umtk::input_error("--class: unknown function class \"" + *cls + "\"");
        meta["class"] = *cls;
        object = umtk::io::function_to_json(umtk::gen_function(spec, *picked));
      } else {
        throw umtk::input_error("--what: expected ultrametric|metric|pseudoultrametric|function");
      }

      object["gen_spec"] = meta;
      if (!out_path->empty()) {
        std::ofstream fp(*out_path, std::ios::binary);
        if (!fp) throw umtk::input_error("cannot write file: " + *out_path);
        fp << object.dump(2) << "\n";
      }
      out.result["object"] = std::move(object);
      out.text = "generated " + *what + " (seed " + std::to_string(spec.seed) + ")";
      outcome = std::move(out);
    });
  }

  std::vector<std::string> argv_echo(argv, argv + argc);

  // Errors still produce a machine-readable report besides the stderr line.
  auto fail = [&](const char* type, const std::string& message, int code) {
    std::cerr << type << ": " << message << "\n";
    if (!opts->text) {
      json err;
      err["type"] = type;
      err["message"] = message;
      json rep = umtk::report::envelope(command, argv_echo, {}, opts->settings(),
                                        json{{"error", std::move(err)}}, code);
      std::cout << rep.dump(2) << "\n";
    }
    return code;
  };

  auto started = std::chrono::steady_clock::now();
  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitInput;
  } catch (const umtk::input_error& e) {
    return fail("input error", e.what(), kExitInput);
  } catch (const umtk::precondition_error& e) {
    return fail("precondition violated", e.what(), kExitInput);
  } catch (const umtk::undecided_error& e) {
    return fail("undecided", e.what(), kExitUndecided);
  }

  if (!outcome) return kExitInput;

  json settings = opts->settings();
  if (!outcome->extra_settings.is_null()) {
    for (auto& [key, value] : outcome->extra_settings.items()) {
      settings[key] = value;
    }
  }

  std::optional<double> timing_ms;
  if (opts->timing) {
    auto elapsed = std::chrono::steady_clock::now() - started;
    timing_ms = std::chrono::duration<double, std::milli>(elapsed).count();
  }

  if (opts->text) {
    std::cout << command << ": " << outcome->text << "\n";
  } else {
    json rep = umtk::report::envelope(command, argv_echo, outcome->inputs, settings,
                                      outcome->result, outcome->code, timing_ms);
    std::cout << rep.dump(2) << "\n";
  }
  return outcome->code;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run_cli(argc, argv);
  } catch (const umtk::input_error& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kExitInput;
  } catch (const umtk::precondition_error& e) {
    std::cerr << "precondition violated: " << e.what() << "\n";
    return kExitInput;
  } catch (const umtk::undecided_error& e) {
    std::cerr << "undecided: " << e.what() << "\n";
    return kExitUndecided;
  } catch (const umtk::internal_error& e) {
    std::cerr << "internal error (bug): " << e.what() << "\n";
    return 70;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 70;
  }
}
