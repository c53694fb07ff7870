#pragma once

#include <string>
#include <string_view>

#include <json.hpp>

#include "wick/chaos.hpp"
#include "wick/renormalization.hpp"

namespace wick {

// Schemas (all fields required, unknown fields rejected):
//
//   ChaosVector: {"dim": d, "max_order": N, "terms": [{"alpha": [[i,k],...], "coeff": c}]}
//   SymTensor:   {"dim": d, "order": n, "entries": [{"tuple": [i,...], "value": v}]}
//   PolySeries:  {"dim": d, "terms": [{"exps": [[i,n],...], "coeff": a}], "truncation": K}
//
// Index pairs are sorted by basis label; doubles are written in shortest
// round-trip form (at most 17 significant digits), so parsing the output
// reproduces every coefficient bit for bit.

nlohmann::ordered_json to_json(const ChaosVector& F);
nlohmann::ordered_json to_json(const SymTensor& f);
nlohmann::ordered_json to_json(const PolySeries& f);

ChaosVector chaos_from_json(const nlohmann::json& j);
SymTensor tensor_from_json(const nlohmann::json& j);
PolySeries poly_from_json(const nlohmann::json& j);

std::string serialize(const ChaosVector& F);
std::string serialize(const SymTensor& f);
std::string serialize(const PolySeries& f);

/// Parse errors and schema violations both raise SchemaError.
ChaosVector deserialize_chaos(std::string_view text);
SymTensor deserialize_tensor(std::string_view text);
PolySeries deserialize_poly(std::string_view text);

}  // namespace wick
