#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "opal/rational.hpp"

namespace opal {

// Rooted planar tree; a node with no children is a leaf.  Internal vertices
// have arity >= 2 (arity-1 vertices are never represented).
struct PlanarTree {
  std::vector<PlanarTree> children;

  bool is_leaf() const { return children.empty(); }
  int leaf_count() const;
  int vertex_count() const;  // internal vertices only
  bool is_binary() const;    // every internal vertex has arity 2
  // Vertex arities in depth-first preorder (root first, children left to
  // right); leaves are skipped.
  std::vector<int> vertex_arities() const;

  static PlanarTree leaf() { return PlanarTree{}; }
  static PlanarTree node(std::vector<PlanarTree> ch) { return PlanarTree{std::move(ch)}; }
};

bool operator==(const PlanarTree& a, const PlanarTree& b);
bool operator<(const PlanarTree& a, const PlanarTree& b);  // structural, for containers

// All planar trees with the given number of leaves; `vertices` restricts the
// number of internal vertices, `binary_only` restricts to arity-2 vertices.
// Incompatible parameters yield an empty list.  Output order is a
// deterministic function of the arguments.
std::vector<PlanarTree> enumerate_planar_trees(int leaves,
                                               std::optional<int> vertices,
                                               bool binary_only);

// Substitutes `inner` for the leaf at 1-based planar position `leaf_index`.
// Throws opal::error when the index is out of range.
PlanarTree graft(const PlanarTree& outer, int leaf_index,
                 const PlanarTree& inner);

// Planar tree with leaf labels listed in planar (left-to-right) order.
struct LabeledTree {
  PlanarTree shape;
  std::vector<int> labels;
};

bool operator==(const LabeledTree& a, const LabeledTree& b);
bool operator<(const LabeledTree& a, const LabeledTree& b);

// Leaf labels of each subtree hanging off a vertex must carry increasing
// minima from left to right (and labels must be a permutation of 1..n).
bool is_shuffle_tree(const LabeledTree& t);

// All shuffle-labeled trees on n leaves whose multiset of vertex arities is
// exactly `vertex_arities`.  Deterministic output order.
std::vector<LabeledTree> enumerate_shuffle_trees(
    int n, const std::multiset<int>& vertex_arities);

// Stricter tree class used as an independent counting oracle: in every
// subtree the leftmost leaf carries the subtree minimum and the rightmost
// leaf carries the subtree maximum.
bool is_minmax_shuffle_tree(const LabeledTree& t);

// The unique shuffle-labeled representative of an abstract (non-planar)
// rooted tree: children of every vertex sorted by their minimum label.
LabeledTree canonical_shuffle_form(const PlanarTree& shape,
                                   const std::vector<int>& labels);

// Substitutes `inner` for the leaf LABELED `leaf_label` and renumbers labels
// so the result is again shuffle-labeled on 1..(n+m-1): inner labels shift up
// by leaf_label-1, outer labels above leaf_label shift up by arity(inner)-1.
LabeledTree graft_shuffle(const LabeledTree& outer, int leaf_label,
                          const LabeledTree& inner);

// Path order on decorated labeled trees.  Each leaf contributes the word of
// vertex letters along its root-to-leaf path; words are compared per label
// 1..n (shorter word first, then letterwise), the first differing label
// decides.  Ties fall back to the planar label sequence, then to a canonical
// encoding.  `letters` lists one letter per vertex in depth-first preorder.
// Returns -1/0/+1; throws opal::error when leaf counts differ.
int compare_path_lex(const PlanarTree& shape_a, const std::vector<int>& labels_a,
                     const std::vector<int>& letters_a,
                     const PlanarTree& shape_b, const std::vector<int>& labels_b,
                     const std::vector<int>& letters_b);

// Undecorated conveniences (all letters equal).
int compare_path_lex(const LabeledTree& a, const LabeledTree& b);
int compare_path_lex(const PlanarTree& a, const PlanarTree& b);

// Text encoding like "m(m(1,2),3)"; vertex names listed in preorder.
std::string tree_to_text(const PlanarTree& shape, const std::vector<int>& labels,
                         const std::vector<std::string>& vertex_names);
std::string tree_to_text(const LabeledTree& t, const std::string& vertex_name);

// Graphviz rendering (one digraph; leaves show labels, vertices their names).
std::string tree_to_dot(const PlanarTree& shape, const std::vector<int>& labels,
                        const std::vector<std::string>& vertex_names,
                        const std::string& graph_name);

// n-th Catalan number (n >= 0).
Rational catalan_number(int n);

}  // namespace opal
