#pragma once

// Step bounds for programs carrying a transition invariant of height w.
//
// Each trace state maps to its rank tuple under the invariant; phi(x) is f*
// of the first x+1 tuples, frozen once the trace is final. phi descends
// lexicographically until the final state, so bound_g(phi, 0) bounds the
// number of steps.

#include "ordterm/bounds.hpp"
#include "ordterm/erdos.hpp"
#include "ordterm/interp.hpp"
#include "ordterm/invariant.hpp"

namespace ordterm {

inline constexpr std::size_t kDefaultMaxSteps = 10'000;

/// (rank_1(s), ..., rank_k(s)).
Point rank_point(const Program& p, const TransitionInvariant& inv, const State& s);

/// Rank tuples of the trace from s0 up to its first final state.
/// Throws Error{BudgetExceeded} when no final state is reached in max_steps.
std::vector<Point> rank_points(const Program& p, const State& s0, const TransitionInvariant& inv,
                               std::size_t max_steps = kDefaultMaxSteps);

/// phi as a sequence, constant from the termination step on.
/// Evaluation throws Error{NotHomogeneous} when the invariant is not sound on the trace.
SequenceFn phi_sequence(const Program& p, const State& s0, const TransitionInvariant& inv,
                        std::size_t max_steps = kDefaultMaxSteps);

Tuple phi(const Program& p, const State& s0, const TransitionInvariant& inv, const Natural& x,
          std::size_t max_steps = kDefaultMaxSteps);

/// g(0) for phi. Errors: BudgetExceeded.
Natural step_bound(const Program& p, const State& s0, const TransitionInvariant& inv,
                   std::size_t max_steps = kDefaultMaxSteps, const BoundOptions& opts = {});

}  // namespace ordterm
