#pragma once

#include <string>

#include <json.hpp>

#include "levycalc/classify.hpp"
#include "levycalc/hyperbolic.hpp"
#include "levycalc/measure.hpp"
#include "levycalc/simulate.hpp"

// Text document schema shared by the CLI: triples are
//   {"shift": num, "gauss_var": num, "measure": {...}}
// with measure variants keyed by "type":
//   discrete        {"atoms": [{"x": num, "mass": num}, ...]}
//   stable_mixture  {"atoms": [{"direction": +-1, "z": num, "weight": num}]}
//   j_transformed   {"alpha": num, "seed": measure}
//   i_transformed   {"seed": measure}
//   sum             {"terms": [measure, ...]}
// Malformed documents raise DocumentError.

namespace levycalc::doc {

nlohmann::json measureToJson(const LevyMeasure& m);
LevyMeasure measureFromJson(const nlohmann::json& j);

nlohmann::json tripleToJson(const LevyTriple& t);
LevyTriple tripleFromJson(const nlohmann::json& j);

nlohmann::json classReportToJson(const ClassReport& r);
nlohmann::json empiricalCFToJson(const EmpiricalCF& cf);
nlohmann::json verdictToJson(const HyperbolicVerdict& v);

LevyTriple loadTripleDocument(const std::string& path);
nlohmann::json loadJson(const std::string& path);

}  // namespace levycalc::doc
