#include "wick/serialize.hpp"

#include <initializer_list>
#include <set>

#include "wick/errors.hpp"

namespace wick {

using nlohmann::json;
using nlohmann::ordered_json;

namespace {

void require_object(const json& j, const std::string& path, std::initializer_list<const char*> fields) {
  if (!j.is_object()) throw SchemaError(path.empty() ? "/" : path, "expected an object");
  const std::set<std::string> allowed(fields.begin(), fields.end());
  for (const auto& [key, value] : j.items())
    if (!allowed.contains(key)) throw SchemaError(path + "/" + key, "unknown field");
  for (const char* f : fields)
    if (!j.contains(f)) throw SchemaError(path + "/" + f, "missing field");
}

int get_int(const json& j, const std::string& path) {
  if (!j.is_number_integer()) throw SchemaError(path, "expected an integer");
  return j.get<int>();
}

double get_number(const json& j, const std::string& path) {
  if (!j.is_number()) throw SchemaError(path, "expected a number");
  return j.get<double>();
}

const json& get_array(const json& j, const std::string& path) {
  if (!j.is_array()) throw SchemaError(path, "expected an array");
  return j;
}

// [[i,k],...] with strictly increasing i and k >= 1.
MultiIndex pairs_from_json(const json& j, const std::string& path) {
  std::vector<MultiIndex::Entry> entries;
  int last = 0;
  for (std::size_t n = 0; n < get_array(j, path).size(); ++n) {
    const std::string p = path + "/" + std::to_string(n);
    const json& pair = j[n];
    if (!pair.is_array() || pair.size() != 2) throw SchemaError(p, "expected a [basis, multiplicity] pair");
    const int basis = get_int(pair[0], p + "/0");
    const int mult = get_int(pair[1], p + "/1");
    if (basis <= last) throw SchemaError(p + "/0", "basis labels must be >= 1 and strictly increasing");
    if (mult < 1) throw SchemaError(p + "/1", "multiplicity must be >= 1");
    entries.emplace_back(basis, mult);
    last = basis;
  }
  return MultiIndex(std::move(entries));
}

ordered_json pairs_to_json(const MultiIndex& alpha) {
  ordered_json a = ordered_json::array();
  for (const auto& [basis, mult] : alpha.entries()) a.push_back({basis, mult});
  return a;
}

json parse_text(std::string_view text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw SchemaError("/", std::string("malformed JSON: ") + e.what());
  }
}

template <typename T, typename Fn>
T wrap_domain(const std::string& path, Fn&& fn) {
  try {
    return fn();
  } catch (const SchemaError&) {
    throw;
  } catch (const Error& e) {
    throw SchemaError(path, e.what());
  }
}

}  // namespace

ordered_json to_json(const ChaosVector& F) {
  ordered_json j;
  j["dim"] = F.dim();
  j["max_order"] = F.max_order();
  ordered_json terms = ordered_json::array();
  for (const auto& [alpha, c] : F.terms()) terms.push_back({{"alpha", pairs_to_json(alpha)}, {"coeff", c}});
  j["terms"] = std::move(terms);
  return j;
}

ordered_json to_json(const SymTensor& f) {
  ordered_json j;
  j["dim"] = f.dim();
  j["order"] = f.order();
  ordered_json entries = ordered_json::array();
  for (const auto& [key, v] : f.values()) entries.push_back({{"tuple", key.to_tuple()}, {"value", v}});
  j["entries"] = std::move(entries);
  return j;
}

ordered_json to_json(const PolySeries& f) {
  ordered_json j;
  j["dim"] = f.dim();
  ordered_json terms = ordered_json::array();
  for (const auto& [exps, a] : f.terms()) terms.push_back({{"exps", pairs_to_json(exps)}, {"coeff", a}});
  j["terms"] = std::move(terms);
  j["truncation"] = f.truncation();
  return j;
}

ChaosVector chaos_from_json(const json& j) {
  require_object(j, "", {"dim", "max_order", "terms"});
  const int dim = get_int(j["dim"], "/dim");
  const int max_order = get_int(j["max_order"], "/max_order");
  ChaosVector::Terms terms;
  const json& arr = get_array(j["terms"], "/terms");
  for (std::size_t n = 0; n < arr.size(); ++n) {
    const std::string p = "/terms/" + std::to_string(n);
    require_object(arr[n], p, {"alpha", "coeff"});
    const MultiIndex alpha = pairs_from_json(arr[n]["alpha"], p + "/alpha");
    if (!terms.emplace(alpha, get_number(arr[n]["coeff"], p + "/coeff")).second)
      throw SchemaError(p + "/alpha", "duplicate multi-index " + alpha.to_string());
  }
  return wrap_domain<ChaosVector>("/", [&] { return ChaosVector(dim, max_order, std::move(terms)); });
}

SymTensor tensor_from_json(const json& j) {
  require_object(j, "", {"dim", "order", "entries"});
  const int dim = get_int(j["dim"], "/dim");
  const int order = get_int(j["order"], "/order");
  SymTensor::Values values;
  const json& arr = get_array(j["entries"], "/entries");
  for (std::size_t n = 0; n < arr.size(); ++n) {
    const std::string p = "/entries/" + std::to_string(n);
    require_object(arr[n], p, {"tuple", "value"});
    std::vector<int> tuple;
    const json& t = get_array(arr[n]["tuple"], p + "/tuple");
    for (std::size_t k = 0; k < t.size(); ++k) tuple.push_back(get_int(t[k], p + "/tuple/" + std::to_string(k)));
    const MultiIndex key = wrap_domain<MultiIndex>(p + "/tuple", [&] { return MultiIndex::from_tuple(tuple); });
    if (!values.emplace(key, get_number(arr[n]["value"], p + "/value")).second)
      throw SchemaError(p + "/tuple", "duplicate tuple");
  }
  return wrap_domain<SymTensor>("/", [&] { return SymTensor(dim, order, std::move(values)); });
}

PolySeries poly_from_json(const json& j) {
  require_object(j, "", {"dim", "terms", "truncation"});
  const int dim = get_int(j["dim"], "/dim");
  const int truncation = get_int(j["truncation"], "/truncation");
  PolySeries::Terms terms;
  const json& arr = get_array(j["terms"], "/terms");
  for (std::size_t n = 0; n < arr.size(); ++n) {
    const std::string p = "/terms/" + std::to_string(n);
    require_object(arr[n], p, {"exps", "coeff"});
    const MultiIndex exps = pairs_from_json(arr[n]["exps"], p + "/exps");
    if (!terms.emplace(exps, get_number(arr[n]["coeff"], p + "/coeff")).second)
      throw SchemaError(p + "/exps", "duplicate monomial " + exps.to_string());
  }
  return wrap_domain<PolySeries>("/", [&] { return PolySeries(dim, truncation, std::move(terms)); });
}

std::string serialize(const ChaosVector& F) { return to_json(F).dump(); }
std::string serialize(const SymTensor& f) { return to_json(f).dump(); }
std::string serialize(const PolySeries& f) { return to_json(f).dump(); }

ChaosVector deserialize_chaos(std::string_view text) { return chaos_from_json(parse_text(text)); }
SymTensor deserialize_tensor(std::string_view text) { return tensor_from_json(parse_text(text)); }
PolySeries deserialize_poly(std::string_view text) { return poly_from_json(parse_text(text)); }

}  // namespace wick
