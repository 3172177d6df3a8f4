#include "ordterm/theorem.hpp"

#include "ordterm/error.hpp"

#include <memory>

namespace ordterm {

Point rank_point(const Program& p, const TransitionInvariant& inv, const State& s) {
  Point pt;
  pt.coords.reserve(inv.k());
  for (const auto& r : inv.relations) pt.coords.push_back(r.rank.eval(p, s));
  return pt;
}

std::vector<Point> rank_points(const Program& p, const State& s0, const TransitionInvariant& inv,
                               std::size_t max_steps) {
  if (inv.k() == 0) throw Error(ErrorCode::InvalidArgument, "invariant has no relations");
  const Trace trace = run_trace(p, s0, max_steps);
  if (!trace.terminated)
    throw Error(ErrorCode::BudgetExceeded, "no final state within " + std::to_string(max_steps) + " steps");
  std::vector<Point> out;
  out.reserve(trace.states.size());
  for (const auto& s : trace.states) out.push_back(rank_point(p, inv, s));
  return out;
}

SequenceFn phi_sequence(const Program& p, const State& s0, const TransitionInvariant& inv, std::size_t max_steps) {
  auto points = std::make_shared<const std::vector<Point>>(rank_points(p, s0, inv, max_steps));
  const std::size_t k = inv.k();
  const std::size_t last = points->size() - 1;
  auto eval = [points, k, last](const Natural& x) {
    const std::size_t upto = x >= last ? last : x.convert_to<std::size_t>();
    return f_star_vec(std::vector<Point>(points->begin(), points->begin() + static_cast<std::ptrdiff_t>(upto) + 1), k);
  };
  return {k, eval, Natural(last)};
}

Tuple phi(const Program& p, const State& s0, const TransitionInvariant& inv, const Natural& x, std::size_t max_steps) {
  return phi_sequence(p, s0, inv, max_steps)(x);
}

Natural step_bound(const Program& p, const State& s0, const TransitionInvariant& inv, std::size_t max_steps,
                   const BoundOptions& opts) {
  return bound_g(phi_sequence(p, s0, inv, max_steps), 0, opts);
}

}  // namespace ordterm
