#include "bipinv/json_util.hpp"

#include <cstdint>
#include <limits>

#include "bipinv/error.hpp"

namespace bipinv {

nlohmann::json integer_to_json(const Integer& value) {
    static const Integer lo(std::to_string(std::numeric_limits<std::int64_t>::min()));
    static const Integer hi(std::to_string(std::numeric_limits<std::int64_t>::max()));
    if (value >= lo && value <= hi) return std::stoll(value.get_str());
    return value.get_str();
}

Integer integer_from_json(const nlohmann::json& j) {
    if (j.is_number_integer()) return Integer(std::to_string(j.get<std::int64_t>()));
    if (j.is_string()) {
        Integer v;
        if (v.set_str(j.get<std::string>(), 10) == 0) return v;
    }
    throw Error(ErrorCode::Syntax, "expected an integer, got " + j.dump());
}

}  // namespace bipinv
