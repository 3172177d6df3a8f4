#pragma once

// Small-step semantics. A final state steps to itself.

#include "ordterm/program.hpp"

#include "json.hpp"

#include <compare>
#include <cstddef>
#include <map>
#include <string>
#include <vector>

namespace ordterm {

struct State {
  std::size_t location = 0;
  /// Aligned with Program::variables.
  std::vector<Natural> env;

  friend bool operator==(const State&, const State&) = default;
  friend std::strong_ordering operator<=>(const State& a, const State& b);
};

/// Location 0, every variable 0 except the given ones. Throws Error{UnknownVariable}.
State initial_state(const Program& p, const std::map<std::string, Natural>& values = {});

bool is_final(const Program& p, const State& s);

State step(const Program& p, const State& s);

struct Trace {
  std::vector<State> states;
  /// The last state is final. When false the step budget ran out first.
  bool terminated = false;

  /// Steps taken to reach the final state (states.size() - 1 when terminated).
  std::size_t steps() const { return states.empty() ? 0 : states.size() - 1; }
};

/// s0, t(s0), ... up to the first final state or max_steps steps.
Trace run_trace(const Program& p, const State& s0, std::size_t max_steps);

nlohmann::json to_json(const Program& p, const State& s);
State state_from_json(const Program& p, const nlohmann::json& j);
nlohmann::json to_json(const Program& p, const Trace& t);
Trace trace_from_json(const Program& p, const nlohmann::json& j);

}  // namespace ordterm
