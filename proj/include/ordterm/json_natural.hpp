#pragma once

#include "ordterm/natural.hpp"

#include "json.hpp"

namespace ordterm {

/// A JSON number when the value fits in 64 bits, a decimal string otherwise.
nlohmann::json natural_to_json(const Natural& n);

/// Accepts non-negative integers and decimal strings. Throws Error{ParseError}.
Natural natural_from_json(const nlohmann::json& j);

}  // namespace ordterm
