#pragma once

// Finite k-branching trees with strictly decreasing ordinal labels, their
// one-node extension order and its height function.

#include "ordterm/ordinal.hpp"

#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace ordterm {

/// Child indices in [1, k] from the root; the empty path addresses the root.
using SlotPath = std::vector<std::size_t>;

/// Immutable k-ary tree. Copies share structure.
class LabelledTree {
 public:
  /// The empty tree of arity k.
  explicit LabelledTree(std::size_t k);

  static LabelledTree node(Ordinal label, std::vector<LabelledTree> children);

  std::size_t arity() const { return arity_; }
  bool is_empty() const { return node_ == nullptr; }
  const Ordinal& label() const;
  /// Slot index in [1, k].
  const LabelledTree& child(std::size_t slot) const;
  const std::vector<LabelledTree>& children() const;
  std::size_t size() const;

  /// Nested form `(label child_1 ... child_k)`, `_` for an empty tree.
  std::string to_string() const;
  static LabelledTree parse(std::string_view text, std::size_t k);

  friend bool operator==(const LabelledTree& a, const LabelledTree& b);

 private:
  struct Node {
    Ordinal label;
    std::vector<LabelledTree> children;
  };

  std::shared_ptr<const Node> node_;
  std::size_t arity_;
};

/// True when every label is below `alpha` and strictly below its parent's.
bool is_valid(const LabelledTree& t, const Ordinal& alpha);

/// Adds one node at the empty slot addressed by `path`. `alpha` bounds a new root.
/// Errors: OccupiedSlot, InvalidPath, LabelNotDecreasing.
LabelledTree extend(const LabelledTree& t, const SlotPath& path, const Ordinal& label, const Ordinal& alpha);

/// Paths of every empty slot, in pre-order.
std::vector<SlotPath> empty_slots(const LabelledTree& t);

/// Height of the empty tree in k-Tr(alpha), via the closed forms.
Ordinal height_nil(std::size_t k, const Ordinal& alpha);

/// Height of t in k-Tr(alpha): the natural sum over the empty slots of t of
/// height_nil(k, label of the slot's owner); height_nil(k, alpha) when t is empty.
Ordinal height_tree(const LabelledTree& t, std::size_t k, const Ordinal& alpha);

/// Exhaustive heights of every tree in k-Tr(m) under one-node extension,
/// computed directly from the order without any closed form.
class BruteForceHeights {
 public:
  std::size_t k() const { return k_; }
  std::uint64_t m() const { return m_; }
  std::size_t tree_count() const { return entries_.size(); }
  const std::vector<std::pair<LabelledTree, std::uint64_t>>& entries() const { return entries_; }
  /// Throws Error{InvalidArgument} if t is not in k-Tr(m).
  std::uint64_t at(const LabelledTree& t) const;

 private:
  friend BruteForceHeights brute_force_height(std::size_t k, std::uint64_t m, std::size_t budget);
  std::size_t k_ = 0;
  std::uint64_t m_ = 0;
  std::vector<std::pair<LabelledTree, std::uint64_t>> entries_;
  std::map<std::vector<std::int32_t>, std::size_t> index_;
};

inline constexpr std::size_t kDefaultBruteForceBudget = 2'000'000;

/// Requires k <= 3 and m <= 4. Throws Error{BudgetExceeded} when k-Tr(m)
/// holds more than `budget` trees.
BruteForceHeights brute_force_height(std::size_t k, std::uint64_t m,
                                     std::size_t budget = kDefaultBruteForceBudget);

/// Number of trees in k-Tr(m), counted without enumerating them.
Natural count_trees(std::size_t k, std::uint64_t m);

}  // namespace ordterm
