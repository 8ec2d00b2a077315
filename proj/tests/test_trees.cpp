#include <optional>
#include <set>
#include <vector>

#include "doctest.h"
#include "opal/trees.hpp"
#include "oracles.hpp"

using opal::LabeledTree;
using opal::PlanarTree;
using opal::Rational;

namespace {

PlanarTree leaf() { return PlanarTree::leaf(); }

PlanarTree right_comb(int leaves) {
  PlanarTree t = leaf();
  for (int i = 1; i < leaves; ++i) t = PlanarTree::node({leaf(), t});
  return t;
}

PlanarTree left_comb(int leaves) {
  PlanarTree t = leaf();
  for (int i = 1; i < leaves; ++i) t = PlanarTree::node({t, leaf()});
  return t;
}

std::vector<int> identity_labels(int n) {
  std::vector<int> out(n);
  for (int i = 0; i < n; ++i) out[i] = i + 1;
  return out;
}

}  // namespace

TEST_CASE("catalan numbers match the additive recurrence") {
  for (int n = 0; n <= 8; ++n) {
    CHECK(opal::catalan_number(n) ==
          Rational(static_cast<int>(oracles::catalan_recurrence(n))));
  }
  // Binary planar trees on n leaves are counted by the (n-1)-st number.
  for (int n = 1; n <= 9; ++n) {
    auto trees = opal::enumerate_planar_trees(n, std::nullopt, true);
    CHECK(static_cast<long long>(trees.size()) ==
          oracles::catalan_recurrence(n - 1));
    for (const PlanarTree& t : trees) {
      CHECK(t.leaf_count() == n);
      CHECK(t.is_binary());
    }
  }
}

TEST_CASE("planar tree enumeration matches the two-variable recurrence") {
  for (int leaves = 1; leaves <= 6; ++leaves) {
    for (int vertices = 0; vertices <= 5; ++vertices) {
      auto trees = opal::enumerate_planar_trees(leaves, vertices, false);
      CHECK(static_cast<long long>(trees.size()) ==
            oracles::planar_tree_count(leaves, vertices));
      std::set<PlanarTree> distinct(trees.begin(), trees.end());
      CHECK(distinct.size() == trees.size());
      for (const PlanarTree& t : trees) {
        CHECK(t.leaf_count() == leaves);
        CHECK(t.vertex_count() == vertices);
      }
    }
  }
  CHECK(opal::enumerate_planar_trees(4, std::nullopt, true).size() == 5);
  CHECK(opal::enumerate_planar_trees(4, 2, false).size() == 5);
  CHECK(opal::enumerate_planar_trees(5, 3, false).size() == 21);
}

TEST_CASE("shuffle tree enumeration matches the brute-force oracle") {
  struct Case {
    int n;
    std::vector<int> arities;
  };
  const Case cases[] = {
      {2, {2}},          {3, {3}},       {3, {2, 2}},    {4, {4}},
      {4, {3, 2}},       {4, {2, 2, 2}}, {5, {5}},       {5, {4, 2}},
      {5, {3, 3}},       {5, {3, 2, 2}}, {5, {2, 2, 2, 2}},
  };
  for (const Case& c : cases) {
    std::multiset<int> arities(c.arities.begin(), c.arities.end());
    auto trees = opal::enumerate_shuffle_trees(c.n, arities);
    CHECK(static_cast<long long>(trees.size()) ==
          oracles::shuffle_tree_count(c.n, c.arities));
    std::set<LabeledTree> distinct(trees.begin(), trees.end());
    CHECK(distinct.size() == trees.size());
    for (const LabeledTree& t : trees) {
      CHECK(opal::is_shuffle_tree(t));
      auto got = t.shape.vertex_arities();
      CHECK(std::multiset<int>(got.begin(), got.end()) == arities);
    }
  }
  // Five leaves over one ternary and two binary vertices: 105 labeled trees,
  // one planar representative per abstract leaf-labeled tree (hand count:
  // 15 + 30 + 10 + 20 + 30 over the five abstract shapes).
  CHECK(opal::enumerate_shuffle_trees(5, {3, 2, 2}).size() == 105);
}

TEST_CASE("left-min right-max trees are counted by factorials") {
  for (int n = 2; n <= 6; ++n) {
    std::multiset<int> binary;
    for (int i = 0; i < n - 1; ++i) binary.insert(2);
    long long lib = 0;
    for (const LabeledTree& t : opal::enumerate_shuffle_trees(n, binary)) {
      if (opal::is_minmax_shuffle_tree(t)) ++lib;
    }
    long long expected = 1;
    for (int i = 2; i < n; ++i) expected *= i;
    CHECK(lib == oracles::minmax_tree_count(n));
    CHECK(lib == expected);
  }
}

TEST_CASE("path order ranks the left comb above the right comb") {
  for (int n = 3; n <= 5; ++n) {
    CHECK(opal::compare_path_lex(left_comb(n), right_comb(n)) > 0);
    CHECK(opal::compare_path_lex(right_comb(n), left_comb(n)) < 0);
    CHECK(opal::compare_path_lex(left_comb(n), left_comb(n)) == 0);
  }
  // Antisymmetry and reflexivity across all binary shapes on four leaves.
  auto shapes = opal::enumerate_planar_trees(4, std::nullopt, true);
  for (const PlanarTree& a : shapes) {
    CHECK(opal::compare_path_lex(a, a) == 0);
    for (const PlanarTree& b : shapes) {
      CHECK(opal::compare_path_lex(a, b) == -opal::compare_path_lex(b, a));
    }
  }
}

TEST_CASE("grafting splices a tree into a leaf slot") {
  PlanarTree outer = PlanarTree::node({leaf(), leaf()});
  PlanarTree inner = PlanarTree::node({leaf(), leaf(), leaf()});
  PlanarTree g1 = opal::graft(outer, 1, inner);
  CHECK(g1.leaf_count() == 4);
  CHECK(g1.vertex_count() == 2);
  CHECK(g1 == PlanarTree::node({inner, leaf()}));
  PlanarTree g2 = opal::graft(outer, 2, inner);
  CHECK(g2 == PlanarTree::node({leaf(), inner}));
  CHECK_THROWS_AS(opal::graft(outer, 3, inner), const opal::error&);
  CHECK_THROWS_AS(opal::graft(outer, 0, inner), const opal::error&);
}

TEST_CASE("shuffle labeling predicate and canonical form") {
  PlanarTree cor3 = PlanarTree::node({leaf(), leaf(), leaf()});
  CHECK(opal::is_shuffle_tree({cor3, {1, 2, 3}}));
  CHECK_FALSE(opal::is_shuffle_tree({cor3, {2, 1, 3}}));

  LabeledTree canon = opal::canonical_shuffle_form(cor3, {2, 1, 3});
  CHECK(opal::is_shuffle_tree(canon));
  CHECK(canon.labels == std::vector<int>{1, 2, 3});

  LabeledTree canon2 = opal::canonical_shuffle_form(left_comb(3), {3, 2, 1});
  CHECK(opal::is_shuffle_tree(canon2));
  CHECK(canon2.shape == right_comb(3));
  CHECK(canon2.labels == std::vector<int>{1, 2, 3});
}

TEST_CASE("shuffle grafting renumbers labels consistently") {
  LabeledTree outer{PlanarTree::node({leaf(), leaf()}), {1, 2}};
  LabeledTree inner{PlanarTree::node({leaf(), leaf()}), {1, 2}};
  LabeledTree at1 = opal::graft_shuffle(outer, 1, inner);
  CHECK(at1.shape == left_comb(3));
  CHECK(at1.labels == std::vector<int>{1, 2, 3});
  CHECK(opal::is_shuffle_tree(at1));
  LabeledTree at2 = opal::graft_shuffle(outer, 2, inner);
  CHECK(at2.shape == right_comb(3));
  CHECK(at2.labels == std::vector<int>{1, 2, 3});
  CHECK(opal::is_shuffle_tree(at2));
}

TEST_CASE("text and dot rendering of labeled trees") {
  std::vector<std::string> names{"m", "m", "m"};
  CHECK(opal::tree_to_text(right_comb(4), identity_labels(4), names) ==
        "m(1,m(2,m(3,4)))");
  CHECK(opal::tree_to_text(left_comb(4), identity_labels(4), names) ==
        "m(m(m(1,2),3),4)");
  std::string dot =
      opal::tree_to_dot(right_comb(3), identity_labels(3), {"m", "m"}, "t");
  CHECK(dot.find("digraph") != std::string::npos);
  CHECK(dot.find("m") != std::string::npos);
}
