#include "ordterm/ktree.hpp"

#include "ordterm/error.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <unordered_map>

namespace ordterm {

LabelledTree::LabelledTree(std::size_t k) : arity_(k) {
  if (k == 0) throw Error(ErrorCode::InvalidArgument, "tree arity must be at least 1");
}

LabelledTree LabelledTree::node(Ordinal label, std::vector<LabelledTree> children) {
  if (children.empty()) throw Error(ErrorCode::InvalidArgument, "a node needs k >= 1 child slots");
  const std::size_t k = children.size();
  for (const auto& c : children) {
    if (c.arity() != k) throw Error(ErrorCode::InvalidArgument, "mixed arities in one tree");
    if (!c.is_empty() && !(c.label() < label))
      throw Error(ErrorCode::LabelNotDecreasing,
                  "child label " + c.label().to_string() + " is not below " + label.to_string());
  }
  LabelledTree t(k);
  t.node_ = std::make_shared<const Node>(Node{std::move(label), std::move(children)});
  return t;
}

const Ordinal& LabelledTree::label() const {
  if (!node_) throw Error(ErrorCode::InvalidArgument, "empty tree has no label");
  return node_->label;
}

const std::vector<LabelledTree>& LabelledTree::children() const {
  if (!node_) throw Error(ErrorCode::InvalidArgument, "empty tree has no children");
  return node_->children;
}

const LabelledTree& LabelledTree::child(std::size_t slot) const {
  if (slot == 0 || slot > arity_) throw Error(ErrorCode::InvalidPath, "slot " + std::to_string(slot) + " out of range");
  return children()[slot - 1];
}

std::size_t LabelledTree::size() const {
  if (!node_) return 0;
  std::size_t n = 1;
  for (const auto& c : node_->children) n += c.size();
  return n;
}

bool operator==(const LabelledTree& a, const LabelledTree& b) {
  if (a.arity_ != b.arity_) return false;
  if (a.node_ == b.node_) return true;
  if (!a.node_ || !b.node_) return false;
  return a.node_->label == b.node_->label && a.node_->children == b.node_->children;
}

std::string LabelledTree::to_string() const {
  if (!node_) return "_";
  std::string s = "(" + node_->label.to_string();
  for (const auto& c : node_->children) s += " " + c.to_string();
  return s + ")";
}

namespace {

class TreeParser {
 public:
  TreeParser(std::string_view text, std::size_t k) : text_(text), k_(k) {}

  LabelledTree parse_all() {
    LabelledTree t = tree();
    skip_ws();
    if (pos_ != text_.size()) fail("trailing input");
    return t;
  }

 private:
  LabelledTree tree() {
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == '_') {
      ++pos_;
      return LabelledTree(k_);
    }
    if (pos_ >= text_.size() || text_[pos_] != '(') fail("expected '(' or '_'");
    ++pos_;
    skip_ws();
    // An ordinal label may itself contain balanced parentheses: w^(w).
    const std::size_t start = pos_;
    int depth = 0;
    while (pos_ < text_.size()) {
      const char c = text_[pos_];
      if (std::isspace(static_cast<unsigned char>(c))) break;
      if (c == '(') ++depth;
      if (c == ')') {
        if (depth == 0) break;
        --depth;
      }
      ++pos_;
    }
    Ordinal label = Ordinal::parse(text_.substr(start, pos_ - start));
    std::vector<LabelledTree> children;
    for (std::size_t i = 0; i < k_; ++i) children.push_back(tree());
    skip_ws();
    if (pos_ >= text_.size() || text_[pos_] != ')') fail("expected ')' after " + std::to_string(k_) + " children");
    ++pos_;
    return LabelledTree::node(std::move(label), std::move(children));
  }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }
  [[noreturn]] void fail(const std::string& msg) {
    throw Error(ErrorCode::ParseError, msg + " at offset " + std::to_string(pos_));
  }

  std::string_view text_;
  std::size_t k_;
  std::size_t pos_ = 0;
};

LabelledTree extend_at(const LabelledTree& t, const SlotPath& path, std::size_t depth, const Ordinal& label) {
  if (t.is_empty()) throw Error(ErrorCode::InvalidPath, "path runs through an empty slot");
  const std::size_t slot = path[depth];
  const LabelledTree& target = t.child(slot);
  std::vector<LabelledTree> children = t.children();
  if (depth + 1 == path.size()) {
    if (!target.is_empty()) throw Error(ErrorCode::OccupiedSlot, "slot already holds a node");
    if (!(label < t.label()))
      throw Error(ErrorCode::LabelNotDecreasing, label.to_string() + " is not below " + t.label().to_string());
    children[slot - 1] = LabelledTree::node(label, std::vector<LabelledTree>(t.arity(), LabelledTree(t.arity())));
  } else {
    children[slot - 1] = extend_at(target, path, depth + 1, label);
  }
  return LabelledTree::node(t.label(), std::move(children));
}

void collect_slots(const LabelledTree& t, SlotPath& prefix, std::vector<SlotPath>& out) {
  if (t.is_empty()) {
    out.push_back(prefix);
    return;
  }
  for (std::size_t i = 1; i <= t.arity(); ++i) {
    prefix.push_back(i);
    collect_slots(t.child(i), prefix, out);
    prefix.pop_back();
  }
}

}  // namespace

LabelledTree LabelledTree::parse(std::string_view text, std::size_t k) { return TreeParser(text, k).parse_all(); }

bool is_valid(const LabelledTree& t, const Ordinal& alpha) {
  if (t.is_empty()) return true;
  if (!(t.label() < alpha)) return false;
  return std::all_of(t.children().begin(), t.children().end(),
                     [&](const LabelledTree& c) { return is_valid(c, t.label()); });
}

LabelledTree extend(const LabelledTree& t, const SlotPath& path, const Ordinal& label, const Ordinal& alpha) {
  if (path.empty()) {
    if (!t.is_empty()) throw Error(ErrorCode::OccupiedSlot, "root already present");
    if (!(label < alpha))
      throw Error(ErrorCode::LabelNotDecreasing, label.to_string() + " is not below " + alpha.to_string());
    return LabelledTree::node(label, std::vector<LabelledTree>(t.arity(), LabelledTree(t.arity())));
  }
  return extend_at(t, path, 0, label);
}

std::vector<SlotPath> empty_slots(const LabelledTree& t) {
  std::vector<SlotPath> out;
  SlotPath prefix;
  collect_slots(t, prefix, out);
  return out;
}

Ordinal height_nil(std::size_t k, const Ordinal& alpha) {
  if (k == 0) throw Error(ErrorCode::InvalidArgument, "k must be at least 1");
  if (k == 1) return alpha;
  const Natural kk = k;
  const Natural n = alpha.finite_part();
  const Ordinal geometric((pow_nat(kk, n) - 1) / (kk - 1));
  if (alpha.limit_part().is_zero()) return geometric;
  return add(exp_base_k(kk, alpha), geometric);
}

Ordinal height_tree(const LabelledTree& t, std::size_t k, const Ordinal& alpha) {
  if (t.arity() != k) throw Error(ErrorCode::InvalidArgument, "tree arity differs from k");
  if (t.is_empty()) return height_nil(k, alpha);
  std::map<Ordinal, Ordinal> cache;
  Ordinal total;
  std::function<void(const LabelledTree&)> walk = [&](const LabelledTree& node) {
    for (const auto& c : node.children()) {
      if (!c.is_empty()) {
        walk(c);
        continue;
      }
      auto it = cache.find(node.label());
      if (it == cache.end()) it = cache.emplace(node.label(), height_nil(k, node.label())).first;
      total = nat_sum(total, it->second);
    }
  };
  walk(t);
  return total;
}

// ---------------------------------------------------------------------------
// Brute force. Trees are encoded in pre-order, -1 marking an empty slot. The
// height of a tree is computed from the extension order alone:
// height(T) = max{ height(T') + 1 : T' extends T by one node }, 0 if none.

namespace {

using Encoding = std::vector<std::int32_t>;

struct EncodingHash {
  std::size_t operator()(const Encoding& e) const noexcept {
    std::size_t h = 1469598103934665603ull;
    for (auto v : e) h = (h ^ static_cast<std::size_t>(v + 2)) * 1099511628211ull;
    return h;
  }
};

struct SlotRef {
  std::size_t pos;
  std::int32_t bound;
};

std::size_t scan(const Encoding& e, std::size_t pos, std::int32_t bound, std::size_t k, std::vector<SlotRef>& slots) {
  if (e[pos] < 0) {
    slots.push_back({pos, bound});
    return pos + 1;
  }
  const std::int32_t label = e[pos];
  std::size_t p = pos + 1;
  for (std::size_t i = 0; i < k; ++i) p = scan(e, p, label, k, slots);
  return p;
}

std::vector<Encoding> extensions(const Encoding& e, std::size_t k, std::int32_t m) {
  std::vector<SlotRef> slots;
  scan(e, 0, m, k, slots);
  std::vector<Encoding> out;
  for (const auto& s : slots) {
    for (std::int32_t l = 0; l < s.bound; ++l) {
      Encoding next;
      next.reserve(e.size() + k);
      next.insert(next.end(), e.begin(), e.begin() + static_cast<std::ptrdiff_t>(s.pos));
      next.push_back(l);
      next.insert(next.end(), k, -1);
      next.insert(next.end(), e.begin() + static_cast<std::ptrdiff_t>(s.pos) + 1, e.end());
      out.push_back(std::move(next));
    }
  }
  return out;
}

LabelledTree decode(const Encoding& e, std::size_t& pos, std::size_t k) {
  if (e[pos] < 0) {
    ++pos;
    return LabelledTree(k);
  }
  const auto label = static_cast<std::uint64_t>(e[pos++]);
  std::vector<LabelledTree> children;
  for (std::size_t i = 0; i < k; ++i) children.push_back(decode(e, pos, k));
  return LabelledTree::node(Ordinal(label), std::move(children));
}

bool encode(const LabelledTree& t, Encoding& out) {
  if (t.is_empty()) {
    out.push_back(-1);
    return true;
  }
  if (!t.label().is_finite() || t.label().as_natural() > 1000) return false;
  out.push_back(t.label().as_natural().convert_to<std::int32_t>());
  for (const auto& c : t.children())
    if (!encode(c, out)) return false;
  return true;
}

}  // namespace

BruteForceHeights brute_force_height(std::size_t k, std::uint64_t m, std::size_t budget) {
  if (k == 0 || k > 3 || m > 4)
    throw Error(ErrorCode::InvalidArgument, "brute force supports 1 <= k <= 3 and m <= 4");
  if (const Natural total = count_trees(k, m); total > budget)
    throw Error(ErrorCode::BudgetExceeded, std::to_string(k) + "-Tr(" + std::to_string(m) + ") has " + total.str() +
                                               " trees, budget is " + std::to_string(budget));
  const auto bound = static_cast<std::int32_t>(m);
  std::unordered_map<Encoding, std::uint64_t, EncodingHash> memo;

  std::function<std::uint64_t(const Encoding&)> height = [&](const Encoding& e) -> std::uint64_t {
    if (auto it = memo.find(e); it != memo.end()) return it->second;
    std::uint64_t best = 0;
    for (const auto& next : extensions(e, k, bound)) best = std::max(best, height(next) + 1);
    if (memo.size() >= budget)
      throw Error(ErrorCode::BudgetExceeded, std::to_string(k) + "-Tr(" + std::to_string(m) + ") has more than " +
                                                 std::to_string(budget) + " trees");
    memo.emplace(e, best);
    return best;
  };
  height(Encoding{-1});

  BruteForceHeights result;
  result.k_ = k;
  result.m_ = m;
  std::vector<std::pair<Encoding, std::uint64_t>> sorted(memo.begin(), memo.end());
  std::sort(sorted.begin(), sorted.end());
  for (auto& [enc, h] : sorted) {
    std::size_t pos = 0;
    result.index_.emplace(enc, result.entries_.size());
    result.entries_.emplace_back(decode(enc, pos, k), h);
  }
  return result;
}

std::uint64_t BruteForceHeights::at(const LabelledTree& t) const {
  Encoding e;
  if (t.arity() != k_ || !encode(t, e)) throw Error(ErrorCode::InvalidArgument, "tree is not in the enumerated space");
  auto it = index_.find(e);
  if (it == index_.end()) throw Error(ErrorCode::InvalidArgument, "tree is not in the enumerated space");
  return entries_[it->second].second;
}

Natural count_trees(std::size_t k, std::uint64_t m) {
  // N(0) = 1; N(l+1) = N(l) + N(l)^k (the new trees have root label l).
  Natural n = 1;
  for (std::uint64_t l = 0; l < m; ++l) n += pow_nat(n, k);
  return n;
}

}  // namespace ordterm
