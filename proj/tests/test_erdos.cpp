#include "doctest.h"

#include "ordterm/erdos.hpp"
#include "ordterm/error.hpp"
#include "ordterm/ktree.hpp"

#include <random>

using namespace ordterm;

namespace {

Ordinal O(const char* s) { return Ordinal::parse(s); }

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("no error thrown");
  return ErrorCode::InvalidArgument;
}

// Grows a homogeneous sequence by rejection: a candidate is kept when it sits
// below every earlier point in some coordinate.
std::vector<Point> random_homogeneous(std::mt19937_64& rng, std::size_t k, std::size_t max_len, std::uint64_t top) {
  std::uniform_int_distribution<std::uint64_t> coord(0, top);
  std::vector<Point> s;
  const std::size_t len = std::uniform_int_distribution<std::size_t>(1, max_len)(rng);
  for (int attempt = 0; attempt < 400 && s.size() < len; ++attempt) {
    Point y;
    for (std::size_t h = 0; h < k; ++h) y.coords.push_back(coord(rng));
    auto extended = s;
    extended.push_back(y);
    if (is_homogeneous(extended, k)) s = std::move(extended);
  }
  return s;
}

// Checks every parent/child label pair by walking the tree.
bool labels_decrease(const LabelledTree& t) {
  if (t.is_empty()) return true;
  for (const auto& c : t.children()) {
    if (!c.is_empty() && !(c.label() < t.label())) return false;
    if (!labels_decrease(c)) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("is_homogeneous") {
  CHECK(is_homogeneous({}, 2));
  CHECK(is_homogeneous({make_point({3, 4}), make_point({1, 4}), make_point({0, 2})}, 2));
  CHECK_FALSE(is_homogeneous({make_point({1, 1}), make_point({1, 1})}, 2));
  CHECK_FALSE(is_homogeneous({make_point({3, 4}), make_point({1, 4}), make_point({2, 5})}, 2));
}

TEST_CASE("color_of") {
  CHECK(color_of(make_point({1, 5}), make_point({3, 5})) == 1);
  CHECK(color_of(make_point({2, 1}), make_point({3, 4})) == 1);
  CHECK(color_of(make_point({5, 2}), make_point({3, 4})) == 2);
  CHECK(code_of([] { color_of(make_point({3, 4}), make_point({3, 4})); }) == ErrorCode::NoRelation);
}

TEST_CASE("insert_branch") {
  const ColoredList a = insert_branch(ErdosTree(2), make_point({2, 2}));
  CHECK(a == ColoredList{{make_point({2, 2})}, {}});

  const ColoredList b = insert_branch(embed({make_point({3, 4})}, 2), make_point({1, 4}));
  CHECK(b == ColoredList{{make_point({3, 4}), make_point({1, 4})}, {1}});

  // (2,0) is below (3,4) in both coordinates, so the first-color rule sends it
  // through color 1 to (1,4) and then on with color 2.
  const ColoredList c = insert_branch(embed({make_point({3, 4}), make_point({1, 4})}, 2), make_point({2, 0}));
  CHECK(color_of(make_point({2, 0}), make_point({3, 4})) == 1);
  CHECK(c == ColoredList{{make_point({3, 4}), make_point({1, 4}), make_point({2, 0})}, {1, 2}});

  const ColoredList d = insert_branch(embed({make_point({3, 4}), make_point({1, 4})}, 2), make_point({4, 0}));
  CHECK(d == ColoredList{{make_point({3, 4}), make_point({4, 0})}, {2}});
}

TEST_CASE("embed") {
  CHECK(embed({}, 2) == ErdosTree(2));
  CHECK(embed({}, 2).branch_count() == 1);

  const ErdosTree one = embed({make_point({0, 0})}, 2);
  CHECK(one.branch_count() == 2);
  CHECK(one.contains(ColoredList{{make_point({0, 0})}, {}}));

  const ErdosTree two = embed({make_point({3, 4}), make_point({1, 4})}, 2);
  CHECK(two.root()->point == make_point({3, 4}));
  REQUIRE(two.root()->children[0]);
  CHECK(two.root()->children[0]->point == make_point({1, 4}));
  CHECK_FALSE(two.root()->children[1]);

  CHECK(code_of([] { embed({make_point({1, 1}), make_point({1, 1})}, 2); }) == ErrorCode::NotHomogeneous);
}

TEST_CASE("with_branch guards") {
  const ErdosTree t = embed({make_point({3, 4})}, 2);
  const ColoredList deep{{make_point({3, 4}), make_point({2, 2}), make_point({1, 1})}, {1, 1}};
  CHECK(code_of([&] { t.with_branch(deep); }) == ErrorCode::BranchNotInTree);
  CHECK(code_of([&] { t.with_branch(ColoredList{{make_point({3, 4})}, {}}); }) == ErrorCode::OccupiedSlot);
  const ColoredList bad{{make_point({3, 4}), make_point({5, 1})}, {1}};
  CHECK(code_of([&] { t.with_branch(bad); }) == ErrorCode::InvalidArgument);
}

TEST_CASE("node_profile") {
  const ErdosTree t = embed({make_point({3, 4}), make_point({1, 4})}, 2);
  CHECK(node_profile(t, ColoredList{{make_point({3, 4})}, {}}).i() == 0);
  const NodeProfile p = node_profile(t, ColoredList{{make_point({3, 4}), make_point({1, 4})}, {1}});
  CHECK(p.i() == 1);
  CHECK(p.colors == std::vector<std::size_t>{1});
  CHECK(p.ancestors == std::vector<Point>{make_point({3, 4})});

  const ErdosTree u = embed({make_point({5, 5}), make_point({4, 3}), make_point({2, 4})}, 2);
  const ColoredList branch{{make_point({5, 5}), make_point({4, 3}), make_point({2, 4})}, {1, 1}};
  REQUIRE(u.contains(branch));
  const NodeProfile q = node_profile(u, branch);
  CHECK(q.i() == 1);
  CHECK(q.ancestors == std::vector<Point>{make_point({4, 3})});
}

TEST_CASE("label_alpha") {
  const ColoredList root00{{make_point({0, 0})}, {}};
  CHECK(label_alpha(embed({make_point({0, 0})}, 2), root00, 2) == O("w+1"));
  const ColoredList root35{{make_point({3, 5})}, {}};
  CHECK(label_alpha(embed({make_point({3, 5})}, 2), root35, 2) == O("w+6"));
  const ColoredList child{{make_point({1, 1}), make_point({0, 1})}, {1}};
  CHECK(label_alpha(embed(child.elements, 2), child, 2) == O("w+1"));
}

TEST_CASE("to_labelled_tree") {
  CHECK(to_labelled_tree(ErdosTree(2), 2).is_empty());
  CHECK(to_labelled_tree(embed({make_point({0, 0})}, 2), 2).to_string() == "(w+1 _ _)");
  CHECK(to_labelled_tree(embed({make_point({1, 1}), make_point({0, 1})}, 2), 2).to_string() == "(w+2 (w+1 _ _) _)");
}

TEST_CASE("f_star examples") {
  CHECK(f_star({make_point({0, 0})}, 2) == O("w*4+2"));
  CHECK(f_star({make_point({1, 1})}, 2) == O("w*8+6"));
  CHECK(f_star({make_point({1, 1}), make_point({0, 1})}, 2) == O("w*8+5"));
  // Independent route: the root-only tree has 2 empty slots under w+1.
  CHECK(f_star({make_point({0, 0})}, 2) == nat_prod_nat(height_nil(2, O("w+1")), 2));
  CHECK(f_star_vec({make_point({0, 0})}, 2) == std::vector<Natural>{4, 2});
  CHECK(f_star_vec({make_point({1, 1})}, 2) == std::vector<Natural>{8, 6});
  CHECK(code_of([] { f_star_vec({}, 2); }) == ErrorCode::EmptySequence);
}

TEST_CASE("tree JSON round-trips") {
  const ErdosTree t = embed({make_point({3, 4}), make_point({1, 4}), make_point({2, 0})}, 2);
  const auto j = to_json(t);
  CHECK(erdos_tree_from_json(j, 2) == t);
  CHECK(j.size() == t.branch_count());
  auto broken = j;
  broken.erase(broken.begin() + 1);
  CHECK(code_of([&] { erdos_tree_from_json(broken, 2); }) == ErrorCode::ParseError);
}

TEST_CASE("pipeline properties on random homogeneous sequences") {
  std::mt19937_64 rng(7);
  int sequences = 0;
  for (int round = 0; round < 240; ++round) {
    const std::size_t k = 2 + round % 2;
    const auto s = random_homogeneous(rng, k, 10, 8);
    REQUIRE(is_homogeneous(s, k));
    ++sequences;
    ErdosTree t(k);
    std::optional<Ordinal> previous;
    for (std::size_t n = 0; n < s.size(); ++n) {
      const std::vector<Point> prefix(s.begin(), s.begin() + static_cast<long>(n) + 1);
      const ColoredList added = insert_branch(t, s[n]);
      const ErdosTree next = embed(prefix, k);
      // simulation: one new branch, extending an old one by a single node
      CHECK(next.branch_count() == t.branch_count() + 1);
      CHECK(next.contains(added));
      CHECK_FALSE(t.contains(added));
      ColoredList parent = added;
      parent.elements.pop_back();
      if (!parent.colors.empty()) parent.colors.pop_back();
      CHECK(t.contains(parent));
      CHECK(next == t.with_branch(added));

      const LabelledTree labelled = to_labelled_tree(next, k);
      CHECK(labels_decrease(labelled));
      CHECK(is_valid(labelled, nat_prod_nat(Ordinal::omega(), k)));

      const Ordinal f = f_star(prefix, k);
      CHECK(f < Ordinal::omega_power(Ordinal(k)));
      CHECK(to_vector(f, k).size() == k);
      if (previous) CHECK(f < *previous);
      previous = f;
      t = next;
    }
    // branch projection: color-h heads then the last element descend in coordinate h
    for (const auto& b : t.branches()) {
      CHECK(is_valid(b, k));
      for (std::size_t h = 1; h <= k; ++h) {
        std::vector<Natural> proj;
        for (std::size_t i = 0; i < b.colors.size(); ++i)
          if (b.colors[i] == h) proj.push_back(b.elements[i].at(h));
        if (!b.elements.empty()) proj.push_back(b.elements.back().at(h));
        for (std::size_t i = 0; i + 1 < proj.size(); ++i) CHECK(proj[i + 1] < proj[i]);
      }
    }
  }
  CHECK(sequences >= 200);
}
