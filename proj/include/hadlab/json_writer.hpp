#pragma once

#include <string>

#include <json.hpp>

#include "hadlab/matcore.hpp"

namespace hadlab {

using Json = nlohmann::ordered_json;

/// {"rows":r,"cols":c,"data":[row-major doubles]}
Json to_json(const RealMatrix& m);
Json to_json(const SignMatrix& s);
/// 0-based indices in, 1-based out.
Json to_json_indices(const IndexList& idx);

/// Serializes with every floating-point value printed with `precision`
/// significant digits (%.{precision}g). Non-finite values become null.
/// indent < 0 gives a single line.
std::string dump_json(const Json& j, int indent = 2, int precision = 17);

}  // namespace hadlab
