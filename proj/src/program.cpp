#include "ordterm/program.hpp"

#include "ordterm/error.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace ordterm {

std::optional<std::size_t> Program::find_variable(std::string_view name) const {
  auto it = std::find(variables.begin(), variables.end(), name);
  if (it == variables.end()) return std::nullopt;
  return static_cast<std::size_t>(it - variables.begin());
}

std::size_t Program::variable(std::string_view name) const {
  if (auto i = find_variable(name)) return *i;
  throw Error(ErrorCode::UnknownVariable, "undeclared variable '" + std::string(name) + "'");
}

std::size_t Program::declare(const std::string& name) {
  if (find_variable(name)) throw Error(ErrorCode::NameCollision, "variable '" + name + "' already declared");
  variables.push_back(name);
  return variables.size() - 1;
}

void Program::validate() const {
  auto bad = [](const std::string& msg) { throw Error(ErrorCode::InvalidArgument, msg); };
  for (std::size_t i = 0; i < variables.size(); ++i) {
    const auto& v = variables[i];
    if (v.empty() || !(std::isalpha(static_cast<unsigned char>(v[0])) || v[0] == '_')) bad("bad variable name '" + v + "'");
    for (char c : v)
      if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '.')) bad("bad variable name '" + v + "'");
    if (v == "loc" || v == "vars" || v == "if") bad("reserved variable name '" + v + "'");
    if (std::find(variables.begin(), variables.begin() + static_cast<std::ptrdiff_t>(i), v) !=
        variables.begin() + static_cast<std::ptrdiff_t>(i))
      bad("variable '" + v + "' declared twice");
  }
  const std::size_t n = variables.size();
  const std::size_t end = final_location();
  for (std::size_t l = 0; l < code.size(); ++l) {
    const std::string where = "location " + std::to_string(l) + ": ";
    if (const auto* a = std::get_if<Assign>(&code[l])) {
      if (a->var >= n || (a->expr.kind != ExprKind::Const && a->expr.var >= n)) bad(where + "variable index out of range");
      if (a->next > end) bad(where + "successor out of range");
    } else {
      const auto& b = std::get<Branch>(code[l]);
      if (b.lhs >= n || b.rhs >= n) bad(where + "variable index out of range");
      if (b.on_true > end || b.on_false > end) bad(where + "successor out of range");
    }
  }
}

namespace {

std::string expr_text(const Program& p, const Expr& e) {
  switch (e.kind) {
    case ExprKind::Const: return e.value.str();
    case ExprKind::Var: return p.variables.at(e.var);
    case ExprKind::Inc: return p.variables.at(e.var) + " + 1";
    case ExprKind::Dec: return p.variables.at(e.var) + " - 1";
  }
  return {};
}

}  // namespace

std::string to_string(const Program& p, const Instruction& ins) {
  if (const auto* a = std::get_if<Assign>(&ins))
    return p.variables.at(a->var) + " := " + expr_text(p, a->expr) + " -> " + std::to_string(a->next);
  const auto& b = std::get<Branch>(ins);
  return "if " + p.variables.at(b.lhs) + " < " + p.variables.at(b.rhs) + " -> " + std::to_string(b.on_true) + " | " +
         std::to_string(b.on_false);
}

std::string Program::to_text() const {
  std::string s = "vars";
  for (const auto& v : variables) s += " " + v;
  s += "\n";
  for (std::size_t l = 0; l < code.size(); ++l) s += std::to_string(l) + ": " + to_string(*this, code[l]) + "\n";
  return s;
}

namespace {

std::vector<std::string> tokenize(const std::string& line) {
  std::istringstream in(line);
  std::vector<std::string> out;
  for (std::string tok; in >> tok;) out.push_back(tok);
  return out;
}

std::size_t parse_index(const std::string& tok, std::size_t line_no) {
  try {
    return to_u64(parse_natural(tok));
  } catch (const Error&) {
    throw Error(ErrorCode::ParseError, "line " + std::to_string(line_no) + ": expected a location, got '" + tok + "'");
  }
}

}  // namespace

Program Program::parse(std::string_view text) {
  Program p;
  std::istringstream in{std::string(text)};
  std::size_t line_no = 0;
  bool have_vars = false;
  for (std::string line; std::getline(in, line);) {
    ++line_no;
    auto toks = tokenize(line);
    if (toks.empty() || toks[0][0] == '#') continue;
    auto fail = [&](const std::string& msg) -> void {
      throw Error(ErrorCode::ParseError, "line " + std::to_string(line_no) + ": " + msg);
    };
    if (!have_vars) {
      if (toks[0] != "vars") fail("expected 'vars' header");
      for (std::size_t i = 1; i < toks.size(); ++i) {
        if (p.find_variable(toks[i])) fail("variable '" + toks[i] + "' declared twice");
        p.variables.push_back(toks[i]);
      }
      have_vars = true;
      continue;
    }
    if (toks[0].back() != ':') fail("expected 'N:'");
    const std::size_t loc = parse_index(toks[0].substr(0, toks[0].size() - 1), line_no);
    if (loc != p.code.size()) fail("locations must be numbered 0, 1, 2, ... in order");
    auto var = [&](const std::string& name) {
      auto i = p.find_variable(name);
      if (!i) throw Error(ErrorCode::UnknownVariable, "line " + std::to_string(line_no) + ": '" + name + "'");
      return *i;
    };
    if (toks.size() == 9 && toks[1] == "if" && toks[3] == "<" && toks[5] == "->" && toks[7] == "|") {
      p.code.push_back(Branch{var(toks[2]), var(toks[4]), parse_index(toks[6], line_no), parse_index(toks[8], line_no)});
      continue;
    }
    if (toks.size() < 6 || toks[2] != ":=" || toks[toks.size() - 2] != "->") fail("malformed instruction");
    Assign a{var(toks[1]), Expr{}, parse_index(toks.back(), line_no)};
    const std::vector<std::string> rhs(toks.begin() + 3, toks.end() - 2);
    if (rhs.size() == 1) {
      if (std::isdigit(static_cast<unsigned char>(rhs[0][0])))
        a.expr = Expr{ExprKind::Const, 0, parse_natural(rhs[0])};
      else
        a.expr = Expr{ExprKind::Var, var(rhs[0]), 0};
    } else if (rhs.size() == 3 && rhs[2] == "1" && (rhs[1] == "+" || rhs[1] == "-")) {
      a.expr = Expr{rhs[1] == "+" ? ExprKind::Inc : ExprKind::Dec, var(rhs[0]), 0};
    } else {
      fail("expression must be N, v, v + 1 or v - 1");
    }
    p.code.push_back(std::move(a));
  }
  if (!have_vars) throw Error(ErrorCode::ParseError, "missing 'vars' header");
  try {
    p.validate();
  } catch (const Error& e) {
    throw Error(ErrorCode::ParseError, e.what());
  }
  return p;
}

// ---------------------------------------------------------------------------

SExpr lit(const Natural& value) { return {ExprKind::Const, {}, value}; }
SExpr ref(std::string var) { return {ExprKind::Var, std::move(var), 0}; }
SExpr inc(std::string var) { return {ExprKind::Inc, std::move(var), 0}; }
SExpr dec(std::string var) { return {ExprKind::Dec, std::move(var), 0}; }

Stmt assign(std::string target, SExpr expr) {
  Stmt s;
  s.kind = Stmt::Kind::Assign;
  s.target = std::move(target);
  s.expr = std::move(expr);
  return s;
}

Stmt while_less(std::string lhs, std::string rhs, Block body) {
  Stmt s;
  s.kind = Stmt::Kind::While;
  s.lhs = std::move(lhs);
  s.rhs = std::move(rhs);
  s.body = std::move(body);
  return s;
}

Stmt if_less(std::string lhs, std::string rhs, Block then_branch, Block else_branch) {
  Stmt s;
  s.kind = Stmt::Kind::If;
  s.lhs = std::move(lhs);
  s.rhs = std::move(rhs);
  s.body = std::move(then_branch);
  s.orelse = std::move(else_branch);
  return s;
}

namespace {

// Successor fields still waiting for the location that follows a statement.
struct Hole {
  std::size_t at;
  enum class Field { Next, OnTrue, OnFalse } field;
};

class Lowering {
 public:
  explicit Lowering(Program& p) : p_(p) {}

  std::vector<Hole> block(const Block& b) {
    std::vector<Hole> pending;
    for (const auto& s : b) {
      fill(pending, p_.code.size());
      pending = stmt(s);
    }
    return pending;
  }

  void fill(const std::vector<Hole>& holes, std::size_t target) {
    for (const auto& h : holes) {
      auto& ins = p_.code[h.at];
      switch (h.field) {
        case Hole::Field::Next: std::get<Assign>(ins).next = target; break;
        case Hole::Field::OnTrue: std::get<Branch>(ins).on_true = target; break;
        case Hole::Field::OnFalse: std::get<Branch>(ins).on_false = target; break;
      }
    }
  }

 private:
  std::vector<Hole> stmt(const Stmt& s) {
    const std::size_t at = p_.code.size();
    switch (s.kind) {
      case Stmt::Kind::Assign: {
        Expr e{s.expr.kind, 0, s.expr.value};
        if (e.kind != ExprKind::Const) e.var = p_.variable(s.expr.var);
        p_.code.push_back(Assign{p_.variable(s.target), std::move(e), 0});
        return {{at, Hole::Field::Next}};
      }
      case Stmt::Kind::While: {
        p_.code.push_back(Branch{p_.variable(s.lhs), p_.variable(s.rhs), at, 0});
        if (!s.body.empty()) {
          std::get<Branch>(p_.code[at]).on_true = at + 1;
          fill(block(s.body), at);
        }
        return {{at, Hole::Field::OnFalse}};
      }
      case Stmt::Kind::If: {
        p_.code.push_back(Branch{p_.variable(s.lhs), p_.variable(s.rhs), 0, 0});
        std::vector<Hole> out;
        if (s.body.empty()) {
          out.push_back({at, Hole::Field::OnTrue});
        } else {
          std::get<Branch>(p_.code[at]).on_true = at + 1;
          auto t = block(s.body);
          out.insert(out.end(), t.begin(), t.end());
        }
        if (s.orelse.empty()) {
          out.push_back({at, Hole::Field::OnFalse});
        } else {
          std::get<Branch>(p_.code[at]).on_false = p_.code.size();
          auto e = block(s.orelse);
          out.insert(out.end(), e.begin(), e.end());
        }
        return out;
      }
    }
    return {};
  }

  Program& p_;
};

}  // namespace

Program lower(std::vector<std::string> variables, const Block& body) {
  Program p;
  for (auto& v : variables) p.declare(std::move(v));
  Lowering lowering(p);
  const auto exits = lowering.block(body);
  lowering.fill(exits, p.code.size());
  p.validate();
  return p;
}

}  // namespace ordterm
