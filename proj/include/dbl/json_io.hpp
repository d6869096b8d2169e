#pragma once

#include <string>

#include "json.hpp"

#include "dbl/bases.hpp"
#include "dbl/cech.hpp"
#include "dbl/spectrum.hpp"
#include "dbl/tensor.hpp"
#include "dbl/ultrametric.hpp"
#include "dbl/weierstrass.hpp"

namespace dbl {

using Json = nlohmann::ordered_json;

/// "IntInf", "IntTriv", "FpTriv(p)", "ZmodTriv(n)", "ZmodQuot(n)".
RingDescriptor parse_ring(const std::string& text);
/// {"kind": ..., "p": ...} for FpTriv, {"kind": ..., "n": ...} for the Z/n rings.
Json to_json(const RingDescriptor& r);
/// Accepts the object form or the text form.
RingDescriptor ring_from_json(const Json& j);

/// Integers as JSON numbers when they fit, decimal strings otherwise.
Json to_json(const mpz_class& a);
mpz_class integer_from_json(const Json& j);
/// Rationals as numbers or "p/q" strings.
mpq_class rational_from_json(const Json& j);

/// {"points": n, "opens": [[...], ...]}
Json to_json(const FiniteSpace& x);
FiniteSpace space_from_json(const Json& j);

/// {"points": n, "dist": [[...], ...]}
Json to_json(const UltrametricSpace& u);
UltrametricSpace ultrametric_from_json(const Json& j);

Json to_json(const BasePoint& b);
BasePoint base_point_from_json(const Json& j);

/// {"ring": ..., "values": one per point}
Json to_json(const CfinFunction& f);
CfinFunction function_from_json(const Json& j, const SpacePtr& x, const RingDescriptor& ring);

/// Point arrays of a mask.
Json mask_to_json(Mask m);
Mask mask_from_json(const Json& j, int points);

Json to_json(const HomologyGroup& h);
Json to_json(const WeightedFreeModule& m);
Json to_json(const TensorElement& t);
Json to_json(const BasisFamily& f);
Json to_json(const SWCertificate& c);
Json to_json(const IntMatrix& a);

/// Parses text, mapping syntax errors to InvalidInput.
Json parse_json(const std::string& text);

}  // namespace dbl
