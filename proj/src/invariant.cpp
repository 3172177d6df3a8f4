#include "ordterm/invariant.hpp"

#include "ordterm/error.hpp"
#include "ordterm/json_natural.hpp"

#include <algorithm>
#include <cctype>

namespace ordterm {

// ---------------------------------------------------------------------------
// RankExpr

RankExpr RankExpr::constant(const Natural& value) {
  RankExpr e;
  e.kind_ = Kind::Const;
  e.value_ = value;
  return e;
}

RankExpr RankExpr::var(std::string name) {
  RankExpr e;
  e.kind_ = Kind::Var;
  e.name_ = std::move(name);
  return e;
}

RankExpr RankExpr::loc() {
  RankExpr e;
  e.kind_ = Kind::Loc;
  return e;
}

RankExpr RankExpr::binary(Kind op, RankExpr lhs, RankExpr rhs) {
  if (op != Kind::Add && op != Kind::Sub && op != Kind::Mul)
    throw Error(ErrorCode::InvalidArgument, "not a binary operator");
  RankExpr e;
  e.kind_ = op;
  e.lhs_ = std::make_shared<const RankExpr>(std::move(lhs));
  e.rhs_ = std::make_shared<const RankExpr>(std::move(rhs));
  return e;
}

bool operator==(const RankExpr& a, const RankExpr& b) {
  if (a.kind_ != b.kind_) return false;
  switch (a.kind_) {
    case RankExpr::Kind::Const: return a.value_ == b.value_;
    case RankExpr::Kind::Var: return a.name_ == b.name_;
    case RankExpr::Kind::Loc: return true;
    default: return *a.lhs_ == *b.lhs_ && *a.rhs_ == *b.rhs_;
  }
}

std::vector<std::string> RankExpr::variables() const {
  std::vector<std::string> out;
  std::function<void(const RankExpr&)> walk = [&](const RankExpr& e) {
    if (e.kind_ == Kind::Var && std::find(out.begin(), out.end(), e.name_) == out.end()) out.push_back(e.name_);
    if (e.lhs_) walk(*e.lhs_);
    if (e.rhs_) walk(*e.rhs_);
  };
  walk(*this);
  return out;
}

namespace {

int precedence(RankExpr::Kind k) {
  switch (k) {
    case RankExpr::Kind::Add:
    case RankExpr::Kind::Sub: return 1;
    case RankExpr::Kind::Mul: return 2;
    default: return 3;
  }
}

}  // namespace

std::string RankExpr::to_string() const {
  switch (kind_) {
    case Kind::Const: return value_.str();
    case Kind::Var: return name_;
    case Kind::Loc: return "loc";
    default: break;
  }
  const int prec = precedence(kind_);
  std::string l = lhs_->to_string();
  std::string r = rhs_->to_string();
  if (precedence(lhs_->kind_) < prec) l = "(" + l + ")";
  if (precedence(rhs_->kind_) <= prec) r = "(" + r + ")";
  const char* op = kind_ == Kind::Add ? " + " : kind_ == Kind::Sub ? " - " : " * ";
  return l + op + r;
}

Natural RankExpr::eval(const Program& p, const State& s) const {
  switch (kind_) {
    case Kind::Const: return value_;
    case Kind::Var: return s.env.at(p.variable(name_));
    case Kind::Loc: return Natural(s.location);
    case Kind::Add: return lhs_->eval(p, s) + rhs_->eval(p, s);
    case Kind::Sub: return monus(lhs_->eval(p, s), rhs_->eval(p, s));
    case Kind::Mul: return lhs_->eval(p, s) * rhs_->eval(p, s);
  }
  return 0;
}

RankExpr RankExpr::substitute(const std::function<std::string(const std::string&)>& rename,
                              const std::optional<RankExpr>& loc_replacement) const {
  switch (kind_) {
    case Kind::Const: return *this;
    case Kind::Var: return var(rename(name_));
    case Kind::Loc: return loc_replacement ? *loc_replacement : *this;
    default: return binary(kind_, lhs_->substitute(rename, loc_replacement), rhs_->substitute(rename, loc_replacement));
  }
}

namespace {

bool is_ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool is_ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '.'; }

class RankParser {
 public:
  explicit RankParser(std::string_view text) : text_(text) {}

  RankExpr parse_all() {
    RankExpr e = expr();
    skip_ws();
    if (pos_ != text_.size()) fail("trailing input");
    return e;
  }

 private:
  RankExpr expr() {
    RankExpr e = term();
    for (;;) {
      if (accept('+'))
        e = RankExpr::binary(RankExpr::Kind::Add, std::move(e), term());
      else if (accept('-'))
        e = RankExpr::binary(RankExpr::Kind::Sub, std::move(e), term());
      else
        return e;
    }
  }

  RankExpr term() {
    RankExpr e = factor();
    while (accept('*')) e = RankExpr::binary(RankExpr::Kind::Mul, std::move(e), factor());
    return e;
  }

  RankExpr factor() {
    skip_ws();
    if (accept('(')) {
      RankExpr e = expr();
      if (!accept(')')) fail("expected ')'");
      return e;
    }
    if (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
      const std::size_t start = pos_;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      return RankExpr::constant(Natural(std::string(text_.substr(start, pos_ - start))));
    }
    if (pos_ < text_.size() && is_ident_start(text_[pos_])) {
      const std::size_t start = pos_;
      while (pos_ < text_.size() && is_ident_char(text_[pos_])) ++pos_;
      std::string name(text_.substr(start, pos_ - start));
      return name == "loc" ? RankExpr::loc() : RankExpr::var(std::move(name));
    }
    fail("expected a number, a variable, 'loc' or '('");
  }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }
  bool accept(char c) {
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }
  [[noreturn]] void fail(const std::string& msg) {
    throw Error(ErrorCode::ParseError,
                "rank expression '" + std::string(text_) + "': " + msg + " at offset " + std::to_string(pos_));
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

RankExpr RankExpr::parse(std::string_view text) { return RankParser(text).parse_all(); }

// ---------------------------------------------------------------------------
// Atoms

Operand Operand::var(std::string name, bool primed) {
  return {primed ? Kind::VarPrimed : Kind::Var, std::move(name), 0};
}
Operand Operand::loc(bool primed) { return {primed ? Kind::LocPrimed : Kind::Loc, {}, 0}; }
Operand Operand::constant(const Natural& value) { return {Kind::Const, {}, value}; }

std::string Operand::to_string() const {
  switch (kind) {
    case Kind::Var: return name;
    case Kind::VarPrimed: return name + "'";
    case Kind::Loc: return "loc";
    case Kind::LocPrimed: return "loc'";
    case Kind::Const: return value.str();
  }
  return {};
}

Atom lt(Operand lhs, Operand rhs) { return {std::move(lhs), AtomOp::Lt, std::move(rhs)}; }
Atom le(Operand lhs, Operand rhs) { return {std::move(lhs), AtomOp::Le, std::move(rhs)}; }
Atom eq(Operand lhs, Operand rhs) { return {std::move(lhs), AtomOp::Eq, std::move(rhs)}; }

std::string Atom::to_string() const {
  const char* o = op == AtomOp::Lt ? " < " : op == AtomOp::Le ? " <= " : " = ";
  return lhs.to_string() + o + rhs.to_string();
}

namespace {

Operand parse_operand(std::string_view raw, std::string_view whole) {
  auto fail = [&](const std::string& msg) {
    throw Error(ErrorCode::ParseError, "atom '" + std::string(whole) + "': " + msg);
  };
  while (!raw.empty() && std::isspace(static_cast<unsigned char>(raw.front()))) raw.remove_prefix(1);
  while (!raw.empty() && std::isspace(static_cast<unsigned char>(raw.back()))) raw.remove_suffix(1);
  if (raw.empty()) fail("missing operand");
  if (std::isdigit(static_cast<unsigned char>(raw[0]))) return Operand::constant(parse_natural(raw));
  const bool primed = raw.back() == '\'';
  if (primed) raw.remove_suffix(1);
  if (raw.empty() || !is_ident_start(raw[0]) || !std::all_of(raw.begin(), raw.end(), is_ident_char))
    fail("bad operand");
  if (raw == "loc") return Operand::loc(primed);
  return Operand::var(std::string(raw), primed);
}

}  // namespace

Atom Atom::parse(std::string_view text) {
  std::size_t at = text.find("<=");
  std::size_t width = 2;
  AtomOp op = AtomOp::Le;
  if (at == std::string_view::npos) {
    width = 1;
    if ((at = text.find('<')) != std::string_view::npos)
      op = AtomOp::Lt;
    else if ((at = text.find('=')) != std::string_view::npos)
      op = AtomOp::Eq;
    else
      throw Error(ErrorCode::ParseError, "atom '" + std::string(text) + "': expected <, <= or =");
  }
  return {parse_operand(text.substr(0, at), text), op, parse_operand(text.substr(at + width), text)};
}

// ---------------------------------------------------------------------------

bool LocationSet::contains(std::size_t location) const {
  if (any) return true;
  return std::any_of(intervals.begin(), intervals.end(),
                     [&](const auto& iv) { return iv.first <= location && location <= iv.second; });
}

LocationSet LocationSet::shifted(std::size_t offset, std::size_t span) const {
  if (any) return range(offset, offset + span);
  LocationSet out{false, {}};
  for (const auto& [lo, hi] : intervals) out.intervals.emplace_back(lo + offset, hi + offset);
  return out;
}

namespace {

// A relation with names resolved against one program, for fast pair checks.
class ResolvedRelation {
 public:
  ResolvedRelation(const Program& p, const RankedRelation& r) : source_(r) {
    for (const auto& a : r.atoms) atoms_.push_back({resolve(p, a.lhs), a.op, resolve(p, a.rhs)});
    compile_rank(p, r.rank);
  }

  bool holds(const State& s, const State& t) const {
    if (!source_.pre.contains(s.location) || !source_.post.contains(t.location)) return false;
    for (const auto& a : atoms_) {
      const Natural l = value(a.lhs, s, t);
      const Natural r = value(a.rhs, s, t);
      const bool ok = a.op == AtomOp::Lt ? l < r : a.op == AtomOp::Le ? l <= r : l == r;
      if (!ok) return false;
    }
    return !source_.predicate || source_.predicate(s, t);
  }

  Natural rank(const State& s) const {
    std::vector<Natural> stack;
    for (const auto& ins : rank_code_) {
      switch (ins.kind) {
        case RankExpr::Kind::Const: stack.push_back(ins.value); break;
        case RankExpr::Kind::Var: stack.push_back(s.env[ins.slot]); break;
        case RankExpr::Kind::Loc: stack.emplace_back(s.location); break;
        default: {
          Natural r = std::move(stack.back());
          stack.pop_back();
          Natural& l = stack.back();
          if (ins.kind == RankExpr::Kind::Add)
            l += r;
          else if (ins.kind == RankExpr::Kind::Mul)
            l *= r;
          else
            l = monus(l, r);
        }
      }
    }
    return stack.back();
  }

 private:
  struct Slot {
    Operand::Kind kind;
    std::size_t index;
    Natural value;
  };
  struct ResolvedAtom {
    Slot lhs;
    AtomOp op;
    Slot rhs;
  };
  struct RankInstr {
    RankExpr::Kind kind;
    std::size_t slot = 0;
    Natural value = 0;
  };

  static Slot resolve(const Program& p, const Operand& o) {
    switch (o.kind) {
      case Operand::Kind::Var:
      case Operand::Kind::VarPrimed: return {o.kind, p.variable(o.name), 0};
      case Operand::Kind::Loc:
      case Operand::Kind::LocPrimed: return {o.kind, 0, 0};
      case Operand::Kind::Const: return {o.kind, 0, o.value};
    }
    return {o.kind, 0, 0};
  }

  static Natural value(const Slot& o, const State& s, const State& t) {
    switch (o.kind) {
      case Operand::Kind::Var: return s.env[o.index];
      case Operand::Kind::VarPrimed: return t.env[o.index];
      case Operand::Kind::Loc: return Natural(s.location);
      case Operand::Kind::LocPrimed: return Natural(t.location);
      case Operand::Kind::Const: return o.value;
    }
    return o.value;
  }

  void compile_rank(const Program& p, const RankExpr& e) {
    switch (e.kind()) {
      case RankExpr::Kind::Const: rank_code_.push_back({e.kind(), 0, e.value()}); return;
      case RankExpr::Kind::Var: rank_code_.push_back({e.kind(), p.variable(e.name()), 0}); return;
      case RankExpr::Kind::Loc: rank_code_.push_back({e.kind(), 0, 0}); return;
      default:
        compile_rank(p, e.lhs());
        compile_rank(p, e.rhs());
        rank_code_.push_back({e.kind(), 0, 0});
    }
  }

  const RankedRelation& source_;
  std::vector<ResolvedAtom> atoms_;
  std::vector<RankInstr> rank_code_;
};

}  // namespace

bool RankedRelation::holds(const Program& p, const State& earlier, const State& later) const {
  return ResolvedRelation(p, *this).holds(earlier, later);
}

std::size_t TransitionInvariant::index_of(std::string_view name) const {
  for (std::size_t i = 0; i < relations.size(); ++i)
    if (relations[i].name == name) return i;
  throw Error(ErrorCode::InvalidArgument, "no relation named '" + std::string(name) + "'");
}

TransitionInvariant TransitionInvariant::select(const std::vector<std::string>& names) const {
  TransitionInvariant out;
  for (const auto& n : names) out.relations.push_back(relations[index_of(n)]);
  return out;
}

std::string_view to_string(ViolationKind kind) {
  return kind == ViolationKind::Uncovered ? "Uncovered" : "RankNotDecreasing";
}

CheckReport check_invariant(const Program& p, const Trace& trace, const TransitionInvariant& inv) {
  std::vector<ResolvedRelation> rels;
  rels.reserve(inv.relations.size());
  for (const auto& r : inv.relations) rels.emplace_back(p, r);

  const auto& states = trace.states;
  const std::size_t n = states.size();
  // ranks[r][i] = rank of relation r at state i
  std::vector<std::vector<Natural>> ranks(rels.size());
  for (std::size_t r = 0; r < rels.size(); ++r) {
    ranks[r].reserve(n);
    for (const auto& s : states) ranks[r].push_back(rels[r].rank(s));
  }

  CheckReport report;
  report.trace_length = n;
  report.trace_terminated = trace.terminated;
  report.member_pairs.assign(rels.size(), 0);
  auto record = [&](Violation v) {
    ++report.violation_count;
    if (report.violations.size() < CheckReport::kMaxListedViolations) report.violations.push_back(std::move(v));
  };
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      ++report.pairs_checked;
      bool covered = false;
      for (std::size_t r = 0; r < rels.size(); ++r) {
        if (!rels[r].holds(states[i], states[j])) continue;
        covered = true;
        ++report.member_pairs[r];
        if (!(ranks[r][j] < ranks[r][i]))
          record({ViolationKind::RankNotDecreasing, i, j, states[i], states[j], inv.relations[r].name, ranks[r][i],
                  ranks[r][j]});
      }
      if (!covered) record({ViolationKind::Uncovered, i, j, states[i], states[j], {}, 0, 0});
    }
  }
  return report;
}

CheckReport check_invariant(const Program& p, const State& s0, const TransitionInvariant& inv,
                            std::size_t max_steps) {
  return check_invariant(p, run_trace(p, s0, max_steps), inv);
}

// ---------------------------------------------------------------------------
// JSON

nlohmann::json to_json(const LocationSet& s) {
  if (s.any) return nullptr;
  auto j = nlohmann::json::array();
  for (const auto& [lo, hi] : s.intervals) j.push_back({lo, hi});
  return j;
}

LocationSet location_set_from_json(const nlohmann::json& j) {
  if (j.is_null()) return LocationSet::all();
  if (!j.is_array()) throw Error(ErrorCode::ParseError, "locations must be null or a list of intervals");
  LocationSet s{false, {}};
  for (const auto& iv : j) {
    if (iv.is_number_unsigned()) {
      const auto l = iv.get<std::size_t>();
      s.intervals.emplace_back(l, l);
    } else if (iv.is_array() && iv.size() == 2 && iv[0].is_number_unsigned() && iv[1].is_number_unsigned()) {
      s.intervals.emplace_back(iv[0].get<std::size_t>(), iv[1].get<std::size_t>());
    } else {
      throw Error(ErrorCode::ParseError, "bad location interval " + iv.dump());
    }
  }
  return s;
}

nlohmann::json to_json(const RankedRelation& r) {
  if (r.predicate) throw Error(ErrorCode::InvalidArgument, "relation '" + r.name + "' has an opaque predicate");
  auto atoms = nlohmann::json::array();
  for (const auto& a : r.atoms) atoms.push_back(a.to_string());
  return {{"name", r.name},
          {"pre_locations", to_json(r.pre)},
          {"post_locations", to_json(r.post)},
          {"atoms", atoms},
          {"rank", r.rank.to_string()}};
}

RankedRelation relation_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw Error(ErrorCode::ParseError, "relation must be an object");
  for (const char* key : {"name", "pre_locations", "post_locations", "atoms", "rank"})
    if (!j.contains(key)) throw Error(ErrorCode::ParseError, std::string("relation is missing '") + key + "'");
  if (!j.at("name").is_string() || !j.at("rank").is_string() || !j.at("atoms").is_array())
    throw Error(ErrorCode::ParseError, "relation fields have the wrong type");
  RankedRelation r;
  r.name = j.at("name").get<std::string>();
  r.pre = location_set_from_json(j.at("pre_locations"));
  r.post = location_set_from_json(j.at("post_locations"));
  for (const auto& a : j.at("atoms")) {
    if (!a.is_string()) throw Error(ErrorCode::ParseError, "atoms are strings");
    r.atoms.push_back(Atom::parse(a.get<std::string>()));
  }
  r.rank = RankExpr::parse(j.at("rank").get<std::string>());
  return r;
}

nlohmann::json to_json(const TransitionInvariant& inv) {
  auto j = nlohmann::json::array();
  for (const auto& r : inv.relations) j.push_back(to_json(r));
  return j;
}

TransitionInvariant invariant_from_json(const nlohmann::json& j) {
  const nlohmann::json& list = j.is_object() && j.contains("invariant") ? j.at("invariant") : j;
  if (!list.is_array()) throw Error(ErrorCode::ParseError, "invariant must be a list of relations");
  TransitionInvariant inv;
  for (const auto& r : list) inv.relations.push_back(relation_from_json(r));
  if (inv.relations.empty()) throw Error(ErrorCode::ParseError, "invariant needs at least one relation");
  return inv;
}

nlohmann::json to_json(const Program& p, const CheckReport& report) {
  auto violations = nlohmann::json::array();
  for (const auto& v : report.violations) {
    nlohmann::json jv = {{"kind", to_string(v.kind)},
                         {"i", v.i},
                         {"j", v.j},
                         {"earlier", to_json(p, v.earlier)},
                         {"later", to_json(p, v.later)}};
    if (v.kind == ViolationKind::RankNotDecreasing) {
      jv["relation"] = v.relation;
      jv["rank_before"] = natural_to_json(v.rank_before);
      jv["rank_after"] = natural_to_json(v.rank_after);
    }
    violations.push_back(std::move(jv));
  }
  return {{"passed", report.passed()},
          {"trace_length", report.trace_length},
          {"trace_terminated", report.trace_terminated},
          {"pairs_checked", report.pairs_checked},
          {"member_pairs", report.member_pairs},
          {"violation_count", report.violation_count},
          {"violations", violations}};
}

}  // namespace ordterm
