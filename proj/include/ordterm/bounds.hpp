#pragma once

// Primitive recursive bound on lexicographic descent in N^k: any sequence
// sigma must fail to descend somewhere in [n, bound_g(sigma, n)].

#include "ordterm/natural.hpp"

#include <cstddef>
#include <functional>
#include <optional>
#include <vector>

namespace ordterm {

using Tuple = std::vector<Natural>;

struct SequenceFn {
  std::size_t k = 1;
  std::function<Tuple(const Natural&)> eval;
  /// When set to T, eval(n) == eval(T) for every n >= T.
  std::optional<Natural> constant_from;

  /// eval(n), checked to have length k (Error{LengthMismatch}).
  Tuple operator()(const Natural& n) const;
};

SequenceFn constant_sequence(Tuple value);

/// values[0], values[1], ..., with the last value repeated forever.
/// Throws Error{EmptySequence} or Error{LengthMismatch}.
SequenceFn sequence_from_values(std::size_t k, std::vector<Tuple> values);

/// Lexicographic <= on equal-length tuples. Throws Error{LengthMismatch}.
bool lex_le(const Tuple& u, const Tuple& v);

/// Some p in [m, n-1] with sigma1(p) < sigma1(p+1); the least one.
/// Throws Error{NoWitness} unless m < n and sigma1(m) < sigma1(n).
Natural find_adjacent_increase(const std::function<Natural(const Natural&)>& sigma1, const Natural& m,
                               const Natural& n);

inline constexpr std::uint64_t kDefaultMaxBound = 1'000'000'000;

struct BoundOptions {
  /// Largest argument at which the recursion may be unfolded step by step.
  /// Arguments at or beyond sigma.constant_from are handled in closed form
  /// and never count against this ceiling.
  Natural max_explicit = kDefaultMaxBound;
};

/// k = 1: n + sigma(n) + 1.
/// k + 1: H(sigma_1(n) + 2, n) with H(0, x) = x and H(i, x) = g'(H(i-1, x) + 1),
/// g' the bound for the tail (sigma_2, ..., sigma_{k+1}).
/// Throws Error{BudgetExceeded} when an explicit step passes opts.max_explicit.
Natural bound_g(const SequenceFn& sigma, const Natural& n, const BoundOptions& opts = {});

/// Least m in [n, bound_g(sigma, n)] with sigma(m) <=lex sigma(m+1).
/// Error{LemmaViolated} if the interval holds none; Error{BudgetExceeded} as bound_g.
Natural find_nondescent(const SequenceFn& sigma, const Natural& n, const BoundOptions& opts = {});

}  // namespace ordterm
