#pragma once
// JSON documents for witnesses, Suslin-generator input and decompositions.
// Polynomials and matrices are stored in their text formats together with the
// variable count.

#include <vector>

#include <json.hpp>

#include "metab/elem.hpp"

namespace metab {

nlohmann::json poly_to_json(const Poly& f);
Poly poly_from_json(const nlohmann::json& j, int nvars);
nlohmann::json mat_to_json(const Mat& a);
Mat mat_from_json(const nlohmann::json& j, int nvars);

// {"m", "n", "nvars", "factors": [{"kind": "power", "base"} |
//  {"kind": "template", "family", "u", "i", "j", "k", "f", "conj"}]}
nlohmann::json witness_to_json(const IAmWitness& w, long m, int n);
IAmWitness witness_from_json(const nlohmann::json& j);

// {"n", "m", "nvars", "matrix", "generators": [{"f", "h", "i", "j",
//  "tm": {"a": [...], "b": [...], "c"}}]}
struct FactorInput {
  int n = 5;
  long m = 2;
  Mat matrix;
  std::vector<SuslinGenerator> generators;
};
nlohmann::json factor_input_to_json(const FactorInput& in);
FactorInput factor_input_from_json(const nlohmann::json& j);

nlohmann::json decomposition_to_json(const Decomposition& d);

}  // namespace metab
