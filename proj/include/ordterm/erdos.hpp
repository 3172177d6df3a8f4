#pragma once

// Colored lists and Erdős trees over k relations of height w.
//
// A node is a Point (y_1, ..., y_k); y R_h x holds when y_h < x_h. An edge of
// color h from x to its child y records y R_h x, and every later element of
// the branch stays below x in coordinate h.

#include "ordterm/ktree.hpp"
#include "ordterm/ordinal.hpp"

#include "json.hpp"

#include <cstddef>
#include <memory>
#include <string>
#include <vector>

namespace ordterm {

struct Point {
  std::vector<Natural> coords;

  std::size_t size() const { return coords.size(); }
  /// 1-based coordinate.
  const Natural& at(std::size_t h) const { return coords.at(h - 1); }
  std::string to_string() const;

  friend bool operator==(const Point&, const Point&) = default;
};

Point make_point(std::initializer_list<std::uint64_t> coords);

struct ColoredList {
  std::vector<Point> elements;
  /// colors[i] labels the edge from elements[i] to elements[i+1]; values in [1, k].
  std::vector<std::size_t> colors;

  std::size_t size() const { return elements.size(); }
  friend bool operator==(const ColoredList&, const ColoredList&) = default;
};

/// Structure plus coordinate condition: colors[i] = h implies every later
/// element is below elements[i] in coordinate h.
bool is_valid(const ColoredList& list, std::size_t k);

/// Every later element is below every earlier one in some coordinate.
bool is_homogeneous(const std::vector<Point>& s, std::size_t k);

/// Smallest h with y_h < x_h. Throws Error{NoRelation} when there is none.
std::size_t color_of(const Point& y, const Point& x);

/// Prefix-closed set of colored lists stored as a trie: the child in slot h of
/// a node is the unique one-step extension of color h.
class ErdosTree {
 public:
  struct Node {
    Point point;
    std::vector<std::shared_ptr<const Node>> children;  // k slots
  };

  /// The tree {nil}.
  explicit ErdosTree(std::size_t k);

  std::size_t arity() const { return k_; }
  const std::shared_ptr<const Node>& root() const { return root_; }

  /// Number of branches, nil included.
  std::size_t branch_count() const;
  bool contains(const ColoredList& branch) const;
  /// All branches ordered by color sequence (shorter prefixes first), nil first.
  std::vector<ColoredList> branches() const;

  /// Adds `branch`, which must extend a branch of the tree by exactly one node.
  /// Errors: BranchNotInTree when the parent branch is missing, OccupiedSlot
  /// when the extension already exists, InvalidArgument when it is not a valid
  /// colored list.
  ErdosTree with_branch(const ColoredList& branch) const;

  friend bool operator==(const ErdosTree& a, const ErdosTree& b);

 private:
  std::size_t k_;
  std::shared_ptr<const Node> root_;
};

/// The branch h(T, y): descend from the root following color_of(y, node) until
/// the slot is free, then end with y.
ColoredList insert_branch(const ErdosTree& t, const Point& y);

/// E(s). Throws Error{NotHomogeneous}.
ErdosTree embed(const std::vector<Point>& s, std::size_t k);

struct NodeProfile {
  /// Distinct edge colors on the branch, ascending.
  std::vector<std::size_t> colors;
  /// ancestors[j] is the lowest proper ancestor followed by an edge of colors[j].
  std::vector<Point> ancestors;

  std::size_t i() const { return colors.size(); }
};

/// Errors: BranchNotInTree, InvalidArgument for nil.
NodeProfile node_profile(const ErdosTree& t, const ColoredList& branch);

/// The labelling alpha of the last node of `branch`; always below w*k.
Ordinal label_alpha(const ErdosTree& t, const ColoredList& branch, std::size_t k);

/// Same shape as t, slot = color, labels from label_alpha.
LabelledTree to_labelled_tree(const ErdosTree& t, std::size_t k);

/// Height of to_labelled_tree(embed(s)) in k-Tr(w*k).
/// Errors: EmptySequence, NotHomogeneous.
Ordinal f_star(const std::vector<Point>& s, std::size_t k);
std::vector<Natural> f_star_vec(const std::vector<Point>& s, std::size_t k);

nlohmann::json to_json(const Point& p);
Point point_from_json(const nlohmann::json& j, std::size_t k);
nlohmann::json to_json(const ColoredList& list);
nlohmann::json to_json(const ErdosTree& t);
ErdosTree erdos_tree_from_json(const nlohmann::json& j, std::size_t k);

}  // namespace ordterm
