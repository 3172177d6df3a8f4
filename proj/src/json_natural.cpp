#include "ordterm/json_natural.hpp"

#include "ordterm/error.hpp"

#include <limits>

namespace ordterm {

nlohmann::json natural_to_json(const Natural& n) {
  if (n >= 0 && n <= std::numeric_limits<std::uint64_t>::max()) return n.convert_to<std::uint64_t>();
  return n.str();
}

Natural natural_from_json(const nlohmann::json& j) {
  if (j.is_number_unsigned()) return Natural(j.get<std::uint64_t>());
  if (j.is_number_integer() && j.get<std::int64_t>() >= 0) return Natural(j.get<std::int64_t>());
  if (j.is_string()) return parse_natural(j.get<std::string>());
  throw Error(ErrorCode::ParseError, "expected a natural number, got " + j.dump());
}

}  // namespace ordterm
