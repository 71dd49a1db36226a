#include "levycalc/document.hpp"

#include <fstream>

namespace levycalc::doc {

using nlohmann::json;

namespace {

double requireNumber(const json& j, const char* key) {
  if (!j.contains(key) || !j.at(key).is_number())
    throw DocumentError(std::string("document field '") + key +
                        "' is missing or not a number");
  return j.at(key).get<double>();
}

const json& requireObject(const json& j, const char* key) {
  if (!j.contains(key) || !j.at(key).is_object())
    throw DocumentError(std::string("document field '") + key +
                        "' is missing or not an object");
  return j.at(key);
}

const json& requireArray(const json& j, const char* key) {
  if (!j.contains(key) || !j.at(key).is_array())
    throw DocumentError(std::string("document field '") + key +
                        "' is missing or not an array");
  return j.at(key);
}

}  // namespace

json measureToJson(const LevyMeasure& m) {
  return std::visit(
      [](const auto& node) -> json {
        using T = std::decay_t<decltype(node)>;
        if constexpr (std::is_same_v<T, LevyMeasure::Discrete>) {
          json atoms = json::array();
          for (const auto& a : node.atoms)
            atoms.push_back({{"x", a.x}, {"mass", a.mass}});
          return {{"type", "discrete"}, {"atoms", atoms}};
        } else if constexpr (std::is_same_v<T, LevyMeasure::StableMixture>) {
          json atoms = json::array();
          for (const auto& a : node.atoms)
            atoms.push_back(
                {{"direction", a.direction}, {"z", a.z}, {"weight", a.weight}});
          return {{"type", "stable_mixture"}, {"atoms", atoms}};
        } else if constexpr (std::is_same_v<T, LevyMeasure::JTransformed>) {
          return {{"type", "j_transformed"},
                  {"alpha", node.alpha},
                  {"seed", measureToJson(*node.seed)}};
        } else if constexpr (std::is_same_v<T, LevyMeasure::ITransformed>) {
          return {{"type", "i_transformed"}, {"seed", measureToJson(*node.seed)}};
        } else if constexpr (std::is_same_v<T, LevyMeasure::Sum>) {
          json terms = json::array();
          for (const auto& t : node.terms) terms.push_back(measureToJson(t));
          return {{"type", "sum"}, {"terms", terms}};
        } else {
          throw DocumentError(
              "kernel-transformed measures have no document form");
        }
      },
      m.node());
}

LevyMeasure measureFromJson(const json& j) {
  if (!j.is_object() || !j.contains("type") || !j.at("type").is_string())
    throw DocumentError("measure document needs a string 'type' field");
  const std::string type = j.at("type").get<std::string>();
  try {
    if (type == "discrete") {
      std::vector<DiscreteAtom> atoms;
      for (const auto& a : requireArray(j, "atoms"))
        atoms.push_back({requireNumber(a, "x"), requireNumber(a, "mass")});
      return LevyMeasure::discrete(std::move(atoms));
    }
    if (type == "stable_mixture") {
      std::vector<StableAtom> atoms;
      for (const auto& a : requireArray(j, "atoms")) {
        const double dir = requireNumber(a, "direction");
        if (dir != 1.0 && dir != -1.0)
          throw DocumentError("stable mixture direction must be +1 or -1");
        atoms.push_back({static_cast<int>(dir), requireNumber(a, "z"),
                         requireNumber(a, "weight")});
      }
      return LevyMeasure::stableMixture(std::move(atoms));
    }
    if (type == "j_transformed")
      return LevyMeasure::jTransformed(measureFromJson(requireObject(j, "seed")),
                                       requireNumber(j, "alpha"));
    if (type == "i_transformed")
      return LevyMeasure::iTransformed(measureFromJson(requireObject(j, "seed")));
    if (type == "sum") {
      std::vector<LevyMeasure> terms;
      for (const auto& t : requireArray(j, "terms"))
        terms.push_back(measureFromJson(t));
      return LevyMeasure::sum(std::move(terms));
    }
  } catch (const ValidationError&) {
    throw;  // validation problems keep their own exit code
  }
  throw DocumentError("unknown measure type '" + type + "'");
}

json tripleToJson(const LevyTriple& t) {
  return {{"shift", t.shift},
          {"gauss_var", t.gaussVar},
          {"measure", measureToJson(t.measure)}};
}

LevyTriple tripleFromJson(const json& j) {
  if (!j.is_object()) throw DocumentError("triple document must be an object");
  return makeTriple(requireNumber(j, "shift"), requireNumber(j, "gauss_var"),
                    measureFromJson(requireObject(j, "measure")));
}

json classReportToJson(const ClassReport& r) {
  json diags = json::array();
  for (const auto& d : r.perOrder) {
    diags.push_back({{"order", d.order},
                     {"pass", d.pass},
                     {"worst_violation", d.worstViolation},
                     {"failed_check", d.failedCheck},
                     {"flagged_radii", d.flaggedRadii}});
  }
  const char* tri = r.completelyS == TriState::Yes
                        ? "yes"
                        : (r.completelyS == TriState::No ? "no" : "unknown");
  json out = {{"order", r.maxVerifiedOrder},
              {"diagnostics", diags},
              {"completely_s", tri}};
  if (r.mixtureMomentCondition)
    out["mixture_moment_condition"] = *r.mixtureMomentCondition;
  return out;
}

json empiricalCFToJson(const EmpiricalCF& cf) {
  json re = json::array(), im = json::array();
  for (const auto& v : cf.values) {
    re.push_back(v.real());
    im.push_back(v.imag());
  }
  return {{"grid", cf.grid},
          {"re", re},
          {"im", im},
          {"stderr", cf.stderrEnvelope}};
}

json verdictToJson(const HyperbolicVerdict& v) {
  json rows = json::array();
  for (const auto& r : v.sineCandidates)
    rows.push_back({{"candidate", r.candidate},
                    {"max_deviation", r.maxDeviation},
                    {"matches", r.matches}});
  return {{"sine_candidates", rows},
          {"cosine_deviation", v.cosineDeviation},
          {"cosine_matches", v.cosineMatches},
          {"conclusion", v.conclusion}};
}

json loadJson(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DocumentError("cannot open document '" + path + "'");
  json j;
  try {
    in >> j;
  } catch (const json::parse_error& e) {
    throw DocumentError("malformed document '" + path + "': " + e.what());
  }
  return j;
}

LevyTriple loadTripleDocument(const std::string& path) {
  return tripleFromJson(loadJson(path));
}

}  // namespace levycalc::doc
