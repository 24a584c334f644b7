#pragma once

#include <string>

#include <json.hpp>

#include "intonsem/pregroup.hpp"
#include "intonsem/tensor.hpp"

namespace intonsem {

/// {"shape": [...], "data": [...]} with row-major data.
nlohmann::json to_json(const Tensor& t);
Tensor tensor_from_json(const nlohmann::json& j);

/// {"links": [[i, j], ...], "survivors": [k, ...]} with 1-based indices.
nlohmann::json to_json(const ReductionDiagram& d);
ReductionDiagram diagram_from_json(const nlohmann::json& j);

/// Serializes with a fixed layout: two-space indent, sorted keys, arrays of
/// scalars on one line, floating-point numbers with 17 significant digits so
/// they read back bit for bit. Non-finite numbers throw std::domain_error.
std::string dump(const nlohmann::json& j);

}  // namespace intonsem
