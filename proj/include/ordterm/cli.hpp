#pragma once

#include "ordterm/ordinal.hpp"

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace ordterm::cli {

enum ExitCode : int { kPass = 0, kViolation = 1, kUsage = 2, kBudget = 3 };

/// Ordinal expressions:
///   expr := prod ("#" prod)* ; prod := sum ("#*" nat)* ; sum := unary ("+" unary)*
///   unary := "exp(" nat "," expr ")" | "(" expr ")" | "w" ("^" nat | "^(" expr ")")? ("*" nat)? | nat
/// `+` is the standard sum, `#` the natural sum, `#* n` the natural product.
Ordinal eval_ordinal_expr(std::string_view text);

/// Runs one command line (without the program name). Returns the exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace ordterm::cli
