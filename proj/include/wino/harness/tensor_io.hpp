#pragma once

#include <wino/tensor.hpp>

#include <json.hpp>

#include <string>

namespace wino::harness {

/// {"shape": [...], "data": [row-major numbers]}
nlohmann::json tensor_to_json(const Tensor &tensor);
/// Throws std::invalid_argument on missing keys, wrong types or a data length
/// that does not match the shape.
Tensor tensor_from_json(const nlohmann::json &j);

Tensor read_tensor_file(const std::string &path);
void write_tensor_file(const std::string &path, const Tensor &tensor);

} // namespace wino::harness
