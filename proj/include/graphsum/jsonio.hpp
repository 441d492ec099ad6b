#pragma once

#include "graphsum/bigint.hpp"

#include <nlohmann/json.hpp>

#include <cstdint>
#include <limits>
#include <string>
#include <vector>

namespace graphsum {

using json = nlohmann::ordered_json;

// cpp_int values are emitted as JSON numbers while they fit in int64 and as
// decimal strings beyond that; both forms parse back.
inline json int_to_json(const Int& x) {
  if (x >= std::numeric_limits<int64_t>::min() &&
      x <= std::numeric_limits<int64_t>::max())
    return json(static_cast<int64_t>(x));
  return json(x.str());
}

inline Int int_from_json(const json& j) {
  if (j.is_number_integer()) return Int(j.get<int64_t>());
  if (j.is_string()) return Int(j.get<std::string>());
  throw std::invalid_argument("expected integer or decimal string");
}

inline json ints_to_json(const std::vector<Int>& v) {
  json a = json::array();
  for (const Int& x : v) a.push_back(int_to_json(x));
  return a;
}

inline std::vector<Int> ints_from_json(const json& j) {
  if (!j.is_array()) throw std::invalid_argument("expected array of integers");
  std::vector<Int> v;
  v.reserve(j.size());
  for (const auto& e : j) v.push_back(int_from_json(e));
  return v;
}

}  // namespace graphsum
