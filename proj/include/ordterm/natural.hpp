#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <string>
#include <string_view>

namespace ordterm {

/// Unbounded natural number. Values are kept non-negative by every operation
/// in this library; subtraction is always truncated through `monus`.
using Natural = boost::multiprecision::cpp_int;

inline Natural monus(const Natural& a, const Natural& b) { return a > b ? Natural(a - b) : Natural(0); }

Natural pow_nat(const Natural& base, const Natural& exponent);

/// Narrowing conversion; throws Error{InvalidArgument} when the value does not fit.
std::uint64_t to_u64(const Natural& n);

std::string to_string(const Natural& n);

/// Decimal digits only; throws Error{ParseError}.
Natural parse_natural(std::string_view text);

}  // namespace ordterm
