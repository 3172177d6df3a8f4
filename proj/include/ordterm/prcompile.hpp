#pragma once

// Compiles primitive recursive terms into while-if programs, each with a
// transition invariant whose relations carry rank certificates.
//
// Every unit reads its inputs from `input_vars` and leaves its value in
// `result_var`. Calls are spliced inline: inputs are copied into the callee's
// renamed variables, the callee code runs, and its result is copied out.

#include "ordterm/interp.hpp"
#include "ordterm/invariant.hpp"
#include "ordterm/program.hpp"
#include "ordterm/prterm.hpp"

#include "json.hpp"

#include <string>
#include <vector>

namespace ordterm {

struct CompiledUnit {
  Program program;
  TransitionInvariant invariant;
  std::string result_var;
  std::vector<std::string> input_vars;
};

struct SpliceInfo {
  /// First emitted instruction (the first input copy).
  std::size_t start;
  /// Where the callee's location 0 landed.
  std::size_t callee_offset;
  /// One past the last emitted instruction; the splice falls through to it.
  std::size_t end;
};

/// Appends `P x1 := a1; ...; CODE; out := P r` (P = fresh_prefix) to the caller, with
/// every callee variable renamed to fresh_prefix + name and declared in the
/// caller. Errors: NameCollision, UnknownVariable, ArityMismatch.
SpliceInfo splice_call(Program& caller, const CompiledUnit& callee, const std::vector<std::string>& actual_inputs,
                       const std::string& out, const std::string& fresh_prefix);

/// A relation of a spliced callee restated over the caller: variables renamed,
/// locations moved into [offset, offset + span], `extra` atoms conjoined.
RankedRelation lift_relation(const RankedRelation& r, const std::string& var_prefix, const std::string& name_prefix,
                             std::size_t offset, std::size_t span, const std::vector<Atom>& extra);

/// Compiles at the term's smallest accepted arity.
CompiledUnit compile(const PRTerm& t);
/// Throws Error{ArityMismatch} when t does not accept `arity` arguments.
CompiledUnit compile(const PRTerm& t, std::size_t arity);

/// Initial state with the inputs bound. Throws Error{ArityMismatch}.
State input_state(const CompiledUnit& unit, const std::vector<Natural>& args);
Natural result_of(const CompiledUnit& unit, const State& s);

nlohmann::json to_json(const CompiledUnit& unit);
CompiledUnit unit_from_json(const nlohmann::json& j);

}  // namespace ordterm
