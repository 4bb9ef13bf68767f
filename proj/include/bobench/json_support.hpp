#pragma once

#include <json.hpp>

#include "bobench/acquisition.hpp"
#include "bobench/types.hpp"

namespace bobench {

using json = nlohmann::json;

inline json vector_to_json(const Vectord& v) {
  json arr = json::array();
  for (Index i = 0; i < v.size(); ++i) arr.push_back(v[i]);
  return arr;
}

inline Vectord vector_from_json(const json& arr) {
  Vectord v(static_cast<Index>(arr.size()));
  for (Index i = 0; i < v.size(); ++i)
    v[i] = arr[static_cast<size_t>(i)].get<double>();
  return v;
}

json policy_to_json(const AcquisitionPolicy& policy);
AcquisitionPolicy policy_from_json(const json& j);

}  // namespace bobench
