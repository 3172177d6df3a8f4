#pragma once

// Transition invariants as finite lists of ranked relations.
//
// Pairs are oriented (earlier, later). A relation holds for a pair when both
// locations are in its location sets, every atom is true and the optional
// opaque predicate accepts it. Its rank must strictly decrease on every such
// pair; that is the certificate that the relation has height w.

#include "ordterm/interp.hpp"
#include "ordterm/program.hpp"

#include "json.hpp"

#include <cstddef>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace ordterm {

// ---------------------------------------------------------------------------
// Rank expressions: naturals, variables, `loc`, +, truncated -, *, parentheses.

class RankExpr {
 public:
  enum class Kind { Const, Var, Loc, Add, Sub, Mul };

  static RankExpr constant(const Natural& value);
  static RankExpr var(std::string name);
  static RankExpr loc();
  static RankExpr binary(Kind op, RankExpr lhs, RankExpr rhs);

  Kind kind() const { return kind_; }
  const Natural& value() const { return value_; }
  const std::string& name() const { return name_; }
  const RankExpr& lhs() const { return *lhs_; }
  const RankExpr& rhs() const { return *rhs_; }

  /// Variables referenced, in first-occurrence order.
  std::vector<std::string> variables() const;

  /// Minimal parentheses; parse(to_string()) rebuilds the same tree.
  std::string to_string() const;
  static RankExpr parse(std::string_view text);

  /// Throws Error{UnknownVariable}.
  Natural eval(const Program& p, const State& s) const;

  /// Renames every variable and replaces `loc` by `loc_replacement`.
  RankExpr substitute(const std::function<std::string(const std::string&)>& rename,
                      const std::optional<RankExpr>& loc_replacement) const;

  friend bool operator==(const RankExpr& a, const RankExpr& b);

 private:
  Kind kind_ = Kind::Const;
  Natural value_ = 0;
  std::string name_;
  std::shared_ptr<const RankExpr> lhs_;
  std::shared_ptr<const RankExpr> rhs_;
};

// ---------------------------------------------------------------------------
// Constraint atoms over a pair of states.

struct Operand {
  enum class Kind { Var, VarPrimed, Loc, LocPrimed, Const } kind = Kind::Const;
  std::string name;  // Var, VarPrimed
  Natural value = 0;  // Const

  static Operand var(std::string name, bool primed = false);
  static Operand loc(bool primed = false);
  static Operand constant(const Natural& value);

  bool is_location() const { return kind == Kind::Loc || kind == Kind::LocPrimed; }
  std::string to_string() const;
  friend bool operator==(const Operand&, const Operand&) = default;
};

enum class AtomOp { Lt, Le, Eq };

struct Atom {
  Operand lhs;
  AtomOp op = AtomOp::Lt;
  Operand rhs;

  /// `x' < x`, `loc < loc'`, `a = 1`, `z <= y` ...
  std::string to_string() const;
  static Atom parse(std::string_view text);
  friend bool operator==(const Atom&, const Atom&) = default;
};

Atom lt(Operand lhs, Operand rhs);
Atom le(Operand lhs, Operand rhs);
Atom eq(Operand lhs, Operand rhs);

/// Union of closed intervals of locations; `any` when unconstrained.
struct LocationSet {
  bool any = true;
  std::vector<std::pair<std::size_t, std::size_t>> intervals;

  static LocationSet all() { return {}; }
  static LocationSet range(std::size_t lo, std::size_t hi) { return {false, {{lo, hi}}}; }

  bool contains(std::size_t location) const;
  /// Shift by `offset`; `any` becomes [offset, offset + span].
  LocationSet shifted(std::size_t offset, std::size_t span) const;
  friend bool operator==(const LocationSet&, const LocationSet&) = default;
};

struct RankedRelation {
  std::string name;
  LocationSet pre;
  LocationSet post;
  std::vector<Atom> atoms;
  /// Extra membership test. Not serializable.
  std::function<bool(const State& earlier, const State& later)> predicate;
  RankExpr rank = RankExpr::constant(0);

  /// Membership of (earlier, later). Throws Error{UnknownVariable}.
  bool holds(const Program& p, const State& earlier, const State& later) const;
};

struct TransitionInvariant {
  std::vector<RankedRelation> relations;

  std::size_t k() const { return relations.size(); }
  /// Index of the relation with that name. Throws Error{InvalidArgument}.
  std::size_t index_of(std::string_view name) const;
  /// The relations with these names, in the given order.
  TransitionInvariant select(const std::vector<std::string>& names) const;
};

// ---------------------------------------------------------------------------

enum class ViolationKind { Uncovered, RankNotDecreasing };

std::string_view to_string(ViolationKind kind);

struct Violation {
  ViolationKind kind;
  /// Trace indices of the pair, earlier first.
  std::size_t i;
  std::size_t j;
  State earlier;
  State later;
  /// Offending relation for RankNotDecreasing; empty for Uncovered.
  std::string relation;
  Natural rank_before = 0;
  Natural rank_after = 0;
};

struct CheckReport {
  std::size_t trace_length = 0;
  bool trace_terminated = false;
  std::size_t pairs_checked = 0;
  /// Member pairs seen per relation, aligned with the invariant.
  std::vector<std::size_t> member_pairs;
  std::size_t violation_count = 0;
  /// The first kMaxListedViolations violations.
  std::vector<Violation> violations;

  static constexpr std::size_t kMaxListedViolations = 100;

  bool passed() const { return violation_count == 0; }
};

/// Every pair (s_i, s_j), i < j, of the trace must lie in some relation, and
/// every relation it lies in must have rank(s_j) < rank(s_i).
CheckReport check_invariant(const Program& p, const Trace& trace, const TransitionInvariant& inv);
CheckReport check_invariant(const Program& p, const State& s0, const TransitionInvariant& inv,
                            std::size_t max_steps);

// ---------------------------------------------------------------------------
// JSON: a relation is {name, pre_locations, post_locations, atoms, rank}.
// Locations are null (any) or a list of [lo, hi] intervals; atoms are strings.

nlohmann::json to_json(const LocationSet& s);
LocationSet location_set_from_json(const nlohmann::json& j);
nlohmann::json to_json(const RankedRelation& r);
RankedRelation relation_from_json(const nlohmann::json& j);
nlohmann::json to_json(const TransitionInvariant& inv);
/// A list of relations, or an object holding one under "invariant".
TransitionInvariant invariant_from_json(const nlohmann::json& j);
nlohmann::json to_json(const Program& p, const CheckReport& report);

}  // namespace ordterm
