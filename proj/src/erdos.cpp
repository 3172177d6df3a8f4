#include "ordterm/erdos.hpp"

#include "ordterm/error.hpp"
#include "ordterm/json_natural.hpp"

#include <algorithm>
#include <map>

namespace ordterm {

std::string Point::to_string() const {
  std::string s = "(";
  for (std::size_t i = 0; i < coords.size(); ++i) s += (i ? "," : "") + coords[i].str();
  return s + ")";
}

Point make_point(std::initializer_list<std::uint64_t> coords) {
  Point p;
  for (auto c : coords) p.coords.emplace_back(c);
  return p;
}

bool is_valid(const ColoredList& list, std::size_t k) {
  const std::size_t n = list.elements.size();
  if (list.colors.size() != (n == 0 ? 0 : n - 1)) return false;
  for (const auto& p : list.elements)
    if (p.size() != k) return false;
  for (std::size_t i = 0; i < list.colors.size(); ++i) {
    const std::size_t h = list.colors[i];
    if (h == 0 || h > k) return false;
    for (std::size_t j = i + 1; j < n; ++j)
      if (!(list.elements[j].at(h) < list.elements[i].at(h))) return false;
  }
  return true;
}

bool is_homogeneous(const std::vector<Point>& s, std::size_t k) {
  for (const auto& p : s)
    if (p.size() != k) return false;
  for (std::size_t j = 0; j < s.size(); ++j)
    for (std::size_t i = 0; i < j; ++i) {
      bool related = false;
      for (std::size_t h = 1; h <= k && !related; ++h) related = s[j].at(h) < s[i].at(h);
      if (!related) return false;
    }
  return true;
}

std::size_t color_of(const Point& y, const Point& x) {
  if (y.size() != x.size()) throw Error(ErrorCode::LengthMismatch, "points of different dimension");
  for (std::size_t h = 1; h <= y.size(); ++h)
    if (y.at(h) < x.at(h)) return h;
  throw Error(ErrorCode::NoRelation, y.to_string() + " is below " + x.to_string() + " in no coordinate");
}

// ---------------------------------------------------------------------------

using NodePtr = std::shared_ptr<const ErdosTree::Node>;

namespace {

NodePtr leaf(const Point& p, std::size_t k) {
  return std::make_shared<const ErdosTree::Node>(ErdosTree::Node{p, std::vector<NodePtr>(k)});
}

const ErdosTree::Node* find_node(const ErdosTree& t, const ColoredList& branch) {
  if (branch.elements.empty()) return nullptr;
  const ErdosTree::Node* node = t.root().get();
  if (!node || !(node->point == branch.elements[0])) return nullptr;
  for (std::size_t i = 0; i < branch.colors.size(); ++i) {
    const std::size_t h = branch.colors[i];
    if (h == 0 || h > t.arity()) return nullptr;
    node = node->children[h - 1].get();
    if (!node || !(node->point == branch.elements[i + 1])) return nullptr;
  }
  return node;
}

std::size_t count_nodes(const ErdosTree::Node* node) {
  if (!node) return 0;
  std::size_t n = 1;
  for (const auto& c : node->children) n += count_nodes(c.get());
  return n;
}

bool same_nodes(const ErdosTree::Node* a, const ErdosTree::Node* b) {
  if (a == b) return true;
  if (!a || !b || !(a->point == b->point) || a->children.size() != b->children.size()) return false;
  for (std::size_t i = 0; i < a->children.size(); ++i)
    if (!same_nodes(a->children[i].get(), b->children[i].get())) return false;
  return true;
}

NodePtr graft(const NodePtr& node, const ColoredList& branch, std::size_t depth, std::size_t k) {
  auto copy = std::make_shared<ErdosTree::Node>(*node);
  const std::size_t slot = branch.colors[depth] - 1;
  if (depth + 1 == branch.colors.size()) {
    if (copy->children[slot]) throw Error(ErrorCode::OccupiedSlot, "extension of that color already exists");
    copy->children[slot] = leaf(branch.elements.back(), k);
  } else {
    copy->children[slot] = graft(copy->children[slot], branch, depth + 1, k);
  }
  return copy;
}

}  // namespace

ErdosTree::ErdosTree(std::size_t k) : k_(k) {
  if (k == 0) throw Error(ErrorCode::InvalidArgument, "k must be at least 1");
}

std::size_t ErdosTree::branch_count() const { return 1 + count_nodes(root_.get()); }

bool ErdosTree::contains(const ColoredList& branch) const {
  return branch.elements.empty() ? branch.colors.empty() : find_node(*this, branch) != nullptr;
}

std::vector<ColoredList> ErdosTree::branches() const {
  std::vector<ColoredList> out{ColoredList{}};
  if (!root_) return out;
  // Breadth-first by color sequence gives shorter prefixes first, then slot order.
  std::vector<std::pair<const Node*, ColoredList>> level{{root_.get(), ColoredList{{root_->point}, {}}}};
  while (!level.empty()) {
    std::vector<std::pair<const Node*, ColoredList>> next;
    for (auto& [node, list] : level) {
      out.push_back(list);
      for (std::size_t h = 1; h <= k_; ++h) {
        const Node* c = node->children[h - 1].get();
        if (!c) continue;
        ColoredList ext = list;
        ext.elements.push_back(c->point);
        ext.colors.push_back(h);
        next.emplace_back(c, std::move(ext));
      }
    }
    level = std::move(next);
  }
  return out;
}

ErdosTree ErdosTree::with_branch(const ColoredList& branch) const {
  if (branch.elements.empty() || !is_valid(branch, k_))
    throw Error(ErrorCode::InvalidArgument, "not a valid nonempty colored list");
  ErdosTree out = *this;
  if (branch.elements.size() == 1) {
    if (root_) throw Error(ErrorCode::OccupiedSlot, "root already present");
    out.root_ = leaf(branch.elements[0], k_);
    return out;
  }
  ColoredList parent = branch;
  parent.elements.pop_back();
  parent.colors.pop_back();
  if (!find_node(*this, parent)) throw Error(ErrorCode::BranchNotInTree, "parent branch is not in the tree");
  out.root_ = graft(root_, branch, 0, k_);
  return out;
}

bool operator==(const ErdosTree& a, const ErdosTree& b) {
  return a.k_ == b.k_ && same_nodes(a.root_.get(), b.root_.get());
}

ColoredList insert_branch(const ErdosTree& t, const Point& y) {
  if (y.size() != t.arity()) throw Error(ErrorCode::LengthMismatch, "point dimension differs from k");
  ColoredList out;
  const ErdosTree::Node* node = t.root().get();
  while (node) {
    out.elements.push_back(node->point);
    const std::size_t h = color_of(y, node->point);
    out.colors.push_back(h);
    node = node->children[h - 1].get();
  }
  out.elements.push_back(y);
  return out;
}

ErdosTree embed(const std::vector<Point>& s, std::size_t k) {
  if (!is_homogeneous(s, k)) throw Error(ErrorCode::NotHomogeneous, "sequence is not homogeneous");
  ErdosTree t(k);
  for (const auto& y : s) t = t.with_branch(insert_branch(t, y));
  return t;
}

// ---------------------------------------------------------------------------
// Labelling

namespace {

/// Last ancestor followed by each color, indexed by color - 1.
using Lowest = std::vector<const Point*>;

Ordinal label_from(const Point& z, const Lowest& lowest, bool is_root, std::size_t k) {
  if (is_root) {
    Natural top = 0;
    for (const auto& c : z.coords) top = std::max(top, Natural(c + 1));
    return nat_sum(Ordinal(top), nat_prod_nat(Ordinal::omega(), k - 1));
  }
  Ordinal sum;
  std::size_t j = 0;
  for (std::size_t h = 1; h <= k; ++h) {
    if (!lowest[h - 1]) continue;
    ++j;
    sum = nat_sum(sum, Ordinal(lowest[h - 1]->at(h)));
  }
  return nat_sum(sum, nat_prod_nat(Ordinal::omega(), k - j));
}

LabelledTree label_subtree(const ErdosTree::Node* node, Lowest& lowest, bool is_root, std::size_t k) {
  if (!node) return LabelledTree(k);
  Ordinal label = label_from(node->point, lowest, is_root, k);
  std::vector<LabelledTree> children;
  for (std::size_t h = 1; h <= k; ++h) {
    const Point* saved = lowest[h - 1];
    lowest[h - 1] = &node->point;
    children.push_back(label_subtree(node->children[h - 1].get(), lowest, false, k));
    lowest[h - 1] = saved;
  }
  return LabelledTree::node(std::move(label), std::move(children));
}

}  // namespace

NodeProfile node_profile(const ErdosTree& t, const ColoredList& branch) {
  if (branch.elements.empty()) throw Error(ErrorCode::InvalidArgument, "nil has no last node");
  if (!find_node(t, branch)) throw Error(ErrorCode::BranchNotInTree, "branch is not in the tree");
  std::map<std::size_t, Point> lowest;
  for (std::size_t i = 0; i < branch.colors.size(); ++i) lowest[branch.colors[i]] = branch.elements[i];
  NodeProfile out;
  for (auto& [h, p] : lowest) {
    out.colors.push_back(h);
    out.ancestors.push_back(std::move(p));
  }
  return out;
}

Ordinal label_alpha(const ErdosTree& t, const ColoredList& branch, std::size_t k) {
  const NodeProfile profile = node_profile(t, branch);
  Lowest lowest(k, nullptr);
  for (std::size_t j = 0; j < profile.i(); ++j) lowest[profile.colors[j] - 1] = &profile.ancestors[j];
  return label_from(branch.elements.back(), lowest, branch.elements.size() == 1, k);
}

LabelledTree to_labelled_tree(const ErdosTree& t, std::size_t k) {
  if (t.arity() != k) throw Error(ErrorCode::InvalidArgument, "tree arity differs from k");
  Lowest lowest(k, nullptr);
  return label_subtree(t.root().get(), lowest, true, k);
}

Ordinal f_star(const std::vector<Point>& s, std::size_t k) {
  if (s.empty()) throw Error(ErrorCode::EmptySequence, "f* needs a nonempty sequence");
  const Ordinal bound = nat_prod_nat(Ordinal::omega(), k);
  return height_tree(to_labelled_tree(embed(s, k), k), k, bound);
}

std::vector<Natural> f_star_vec(const std::vector<Point>& s, std::size_t k) { return to_vector(f_star(s, k), k); }

// ---------------------------------------------------------------------------
// JSON

nlohmann::json to_json(const Point& p) {
  auto j = nlohmann::json::array();
  for (const auto& c : p.coords) j.push_back(natural_to_json(c));
  return j;
}

Point point_from_json(const nlohmann::json& j, std::size_t k) {
  if (!j.is_array() || j.size() != k)
    throw Error(ErrorCode::ParseError, "expected a point with " + std::to_string(k) + " coordinates");
  Point p;
  for (const auto& c : j) p.coords.push_back(natural_from_json(c));
  return p;
}

nlohmann::json to_json(const ColoredList& list) {
  auto points = nlohmann::json::array();
  for (const auto& p : list.elements) points.push_back(to_json(p));
  return {{"points", points}, {"colors", list.colors}};
}

nlohmann::json to_json(const ErdosTree& t) {
  auto j = nlohmann::json::array();
  for (const auto& b : t.branches()) j.push_back(to_json(b));
  return j;
}

ErdosTree erdos_tree_from_json(const nlohmann::json& j, std::size_t k) {
  if (!j.is_array()) throw Error(ErrorCode::ParseError, "expected a list of branches");
  std::vector<ColoredList> lists;
  for (const auto& b : j) {
    if (!b.is_object() || !b.contains("points") || !b.contains("colors"))
      throw Error(ErrorCode::ParseError, "branch needs points and colors");
    ColoredList list;
    for (const auto& p : b.at("points")) list.elements.push_back(point_from_json(p, k));
    for (const auto& c : b.at("colors")) {
      if (!c.is_number_unsigned()) throw Error(ErrorCode::ParseError, "colors are positive integers");
      list.colors.push_back(c.get<std::size_t>());
    }
    lists.push_back(std::move(list));
  }
  std::stable_sort(lists.begin(), lists.end(),
                   [](const ColoredList& a, const ColoredList& b) { return a.size() < b.size(); });
  ErdosTree t(k);
  for (const auto& list : lists) {
    if (list.elements.empty()) continue;
    try {
      t = t.with_branch(list);
    } catch (const Error& e) {
      throw Error(ErrorCode::ParseError, std::string("inconsistent branch set: ") + e.what());
    }
  }
  return t;
}

}  // namespace ordterm
