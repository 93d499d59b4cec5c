#pragma once

#include <json.hpp>

#include "bipinv/integer_matrix.hpp"

namespace bipinv {

// Integers that fit in 64 bits are written as JSON numbers, larger ones as
// decimal strings; both forms are accepted on input.
nlohmann::json integer_to_json(const Integer& value);
Integer integer_from_json(const nlohmann::json& j);

}  // namespace bipinv
