#pragma once

// While-if programs over unbounded natural variables.
//
// A program is a numbered list of instructions with explicit successors.
// Location code.size() is the single final location; a state there has no
// command to run. Structured programs (assign / while / if) are lowered into
// this form.

#include "ordterm/natural.hpp"

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace ordterm {

enum class ExprKind { Const, Var, Inc, Dec };

/// c | v | v + 1 | v - 1 (truncated at 0). `var` indexes Program::variables.
struct Expr {
  ExprKind kind = ExprKind::Const;
  std::size_t var = 0;
  Natural value = 0;

  friend bool operator==(const Expr&, const Expr&) = default;
};

struct Assign {
  std::size_t var;
  Expr expr;
  std::size_t next;

  friend bool operator==(const Assign&, const Assign&) = default;
};

/// if variables[lhs] < variables[rhs] goto on_true else goto on_false
struct Branch {
  std::size_t lhs;
  std::size_t rhs;
  std::size_t on_true;
  std::size_t on_false;

  friend bool operator==(const Branch&, const Branch&) = default;
};

using Instruction = std::variant<Assign, Branch>;

struct Program {
  std::vector<std::string> variables;
  std::vector<Instruction> code;

  std::size_t final_location() const { return code.size(); }
  std::optional<std::size_t> find_variable(std::string_view name) const;
  /// Throws Error{UnknownVariable}.
  std::size_t variable(std::string_view name) const;
  /// Adds a fresh variable; Error{NameCollision} if already declared.
  std::size_t declare(const std::string& name);

  /// Checks names, indices and successor targets. Throws Error{InvalidArgument}.
  void validate() const;

  /// Line format:
  ///   vars x y r
  ///   0: r := x + 1 -> 1
  ///   1: if x < y -> 0 | 2
  /// Expressions are `N`, `v`, `v + 1`, `v - 1`.
  std::string to_text() const;
  static Program parse(std::string_view text);

  friend bool operator==(const Program&, const Program&) = default;
};

std::string to_string(const Program& p, const Instruction& ins);

// ---------------------------------------------------------------------------
// Structured form

struct Stmt;
using Block = std::vector<Stmt>;

struct SExpr {
  ExprKind kind = ExprKind::Const;
  std::string var;
  Natural value = 0;
};

SExpr lit(const Natural& value);
SExpr ref(std::string var);
SExpr inc(std::string var);
SExpr dec(std::string var);

struct Stmt {
  enum class Kind { Assign, While, If } kind = Kind::Assign;
  std::string target;  // Assign
  SExpr expr;          // Assign
  std::string lhs;     // While, If: lhs < rhs
  std::string rhs;
  Block body;    // While body, If then-branch
  Block orelse;  // If else-branch
};

Stmt assign(std::string target, SExpr expr);
Stmt while_less(std::string lhs, std::string rhs, Block body);
Stmt if_less(std::string lhs, std::string rhs, Block then_branch, Block else_branch = {});

/// Flattens a structured body. Throws Error{UnknownVariable}.
Program lower(std::vector<std::string> variables, const Block& body);

}  // namespace ordterm
