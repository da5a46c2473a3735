#pragma once

#include "tropdeg/bdivisor.hpp"
#include "tropdeg/toric.hpp"

#include <json.hpp>

#include <optional>
#include <string>
#include <vector>

namespace tropdeg::io {

using Json = nlohmann::json;

/// Malformed input (bad JSON shape, unknown ids). Maps to a validation failure.
class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

Json load_json(const std::string& path);

/// "p/q" string or integer.
Rat rat_from_json(const Json& j);
/// "p/q", or "p" for integers.
Json rat_json(const Rat& r);

ComplexDescription complex_description_from_json(const Json& j);
/// Throws ValidationError on an invalid complex.
ComplexPtr complex_from_json(const Json& j);
Json to_json(const ConicalComplex& cx);

struct AnyWeight {
  std::optional<LatticeWeight> lattice;
  std::optional<EuclideanWeight> euclidean;
};

AnyWeight weight_from_json(const Json& j, const ComplexPtr& cx);
Json to_json(const LatticeWeight& w);
Json to_json(const EuclideanWeight& w);

/// Either {"ray_values": ...} or {"divisor": ...}; missing rays get 0.
PLFunction function_from_json(const Json& j, const ComplexPtr& cx);
Json to_json(const PLFunction& f);
DivisorView divisor_from_json(const Json& j, const ComplexPtr& cx);
Json divisor_json(const DivisorView& d);

/// {"fine": complex, "locations": {fine-ray-id: {"cone": [coarse ids], "coefficients": [rat]}}}
Subdivision subdivision_from_json(const Json& j, const ComplexPtr& coarse, ComplexPtr fine = nullptr);
Json to_json(const Subdivision& s);

/// Towers sharing one ladder: explicit levels or the generator form.
std::vector<BDivisorSequence> towers_from_json(const Json& j);

Json to_json(const DiscreteMeasure& mu);
Json to_json(const ConvergenceReport& r);

}  // namespace tropdeg::io
