#include "opal/trees.hpp"

#include <algorithm>
#include <sstream>

namespace opal {

int PlanarTree::leaf_count() const {
  if (is_leaf()) return 1;
  int n = 0;
  for (const PlanarTree& c : children) n += c.leaf_count();
  return n;
}

int PlanarTree::vertex_count() const {
  if (is_leaf()) return 0;
  int n = 1;
  for (const PlanarTree& c : children) n += c.vertex_count();
  return n;
}

bool PlanarTree::is_binary() const {
  if (is_leaf()) return true;
  if (children.size() != 2) return false;
  return children[0].is_binary() && children[1].is_binary();
}

std::vector<int> PlanarTree::vertex_arities() const {
  std::vector<int> out;
  if (is_leaf()) return out;
  out.push_back(static_cast<int>(children.size()));
  for (const PlanarTree& c : children) {
    std::vector<int> sub = c.vertex_arities();
    out.insert(out.end(), sub.begin(), sub.end());
  }
  return out;
}

bool operator==(const PlanarTree& a, const PlanarTree& b) {
  return a.children == b.children;
}

bool operator<(const PlanarTree& a, const PlanarTree& b) {
  return a.children < b.children;
}

namespace {

// All lists of `slots` subtrees using `leaves` leaves total and, when
// constrained, `vertices` internal vertices total.
std::vector<std::vector<PlanarTree>> enumerate_children(
    int slots, int leaves, std::optional<int> vertices, bool binary_only) {
  std::vector<std::vector<PlanarTree>> out;
  if (slots == 0) {
    if (leaves == 0 && (!vertices || *vertices == 0)) out.push_back({});
    return out;
  }
  for (int first = 1; first <= leaves - (slots - 1); ++first) {
    std::vector<int> vertex_choices;
    if (vertices) {
      for (int v = 0; v <= *vertices; ++v) vertex_choices.push_back(v);
    } else {
      vertex_choices.push_back(-1);  // unconstrained marker
    }
    for (int v : vertex_choices) {
      std::optional<int> child_v =
          v >= 0 ? std::optional<int>(v) : std::nullopt;
      std::vector<PlanarTree> heads =
          enumerate_planar_trees(first, child_v, binary_only);
      if (heads.empty()) continue;
      std::optional<int> rest_v =
          vertices ? std::optional<int>(*vertices - v) : std::nullopt;
      std::vector<std::vector<PlanarTree>> tails =
          enumerate_children(slots - 1, leaves - first, rest_v, binary_only);
      for (const PlanarTree& h : heads)
        for (const std::vector<PlanarTree>& t : tails) {
          std::vector<PlanarTree> list;
          list.reserve(t.size() + 1);
          list.push_back(h);
          list.insert(list.end(), t.begin(), t.end());
          out.push_back(std::move(list));
        }
    }
  }
  return out;
}

}  // namespace

std::vector<PlanarTree> enumerate_planar_trees(int leaves,
                                               std::optional<int> vertices,
                                               bool binary_only) {
  std::vector<PlanarTree> out;
  if (leaves < 1) return out;
  if (leaves == 1) {
    if (!vertices || *vertices == 0) out.push_back(PlanarTree::leaf());
    return out;
  }
  if (vertices && *vertices < 1) return out;
  if (binary_only && vertices && *vertices != leaves - 1) return out;
  int lo = binary_only ? 2 : 2;
  int hi = binary_only ? 2 : leaves;
  for (int k = lo; k <= hi; ++k) {
    std::optional<int> child_total =
        vertices ? std::optional<int>(*vertices - 1) : std::nullopt;
    for (std::vector<PlanarTree>& ch :
         enumerate_children(k, leaves, child_total, binary_only))
      out.push_back(PlanarTree::node(std::move(ch)));
  }
  return out;
}

PlanarTree graft(const PlanarTree& outer, int leaf_index,
                 const PlanarTree& inner) {
  int n = outer.leaf_count();
  if (leaf_index < 1 || leaf_index > n)
    throw error("graft: leaf index " + std::to_string(leaf_index) +
                " out of range 1.." + std::to_string(n));
  int counter = 0;
  // Recursive rebuild; `counter` tracks the planar leaf position.
  auto rec = [&](auto&& self, const PlanarTree& t) -> PlanarTree {
    if (t.is_leaf()) {
      ++counter;
      return counter == leaf_index ? inner : t;
    }
    std::vector<PlanarTree> ch;
    ch.reserve(t.children.size());
    for (const PlanarTree& c : t.children) ch.push_back(self(self, c));
    return PlanarTree::node(std::move(ch));
  };
  return rec(rec, outer);
}

bool operator==(const LabeledTree& a, const LabeledTree& b) {
  return a.shape == b.shape && a.labels == b.labels;
}

bool operator<(const LabeledTree& a, const LabeledTree& b) {
  if (a.shape < b.shape) return true;
  if (b.shape < a.shape) return false;
  return a.labels < b.labels;
}

namespace {

// Returns the minimum label of the subtree rooted at t, consuming labels in
// planar order; sets ok=false when some vertex has children whose minima are
// not strictly increasing.
int shuffle_min_check(const PlanarTree& t, const std::vector<int>& labels,
                      std::size_t& pos, bool& ok) {
  if (t.is_leaf()) return labels[pos++];
  int best = 0;
  bool first = true;
  int prev_min = 0;
  for (const PlanarTree& c : t.children) {
    int m = shuffle_min_check(c, labels, pos, ok);
    if (!first && m <= prev_min) ok = false;
    prev_min = m;
    if (first || m < best) best = m;
    first = false;
  }
  return best;
}

}  // namespace

bool is_shuffle_tree(const LabeledTree& t) {
  int n = t.shape.leaf_count();
  if (static_cast<int>(t.labels.size()) != n) return false;
  std::vector<int> sorted = t.labels;
  std::sort(sorted.begin(), sorted.end());
  for (int i = 0; i < n; ++i)
    if (sorted[i] != i + 1) return false;
  bool ok = true;
  std::size_t pos = 0;
  shuffle_min_check(t.shape, t.labels, pos, ok);
  return ok;
}

namespace {

// All ways to split the multiset `arities` among `slots` children, reported
// as per-child multisets.  Distributions over equal values are generated
// once (counts per child, not per element).
void distribute_arities(const std::vector<std::pair<int, int>>& value_counts,
                        std::size_t vi, std::vector<std::multiset<int>>& acc,
                        std::vector<std::vector<std::multiset<int>>>& out) {
  if (vi == value_counts.size()) {
    out.push_back(acc);
    return;
  }
  auto [value, count] = value_counts[vi];
  int slots = static_cast<int>(acc.size());
  // Compositions of `count` into `slots` nonnegative parts.
  std::vector<int> parts(slots, 0);
  auto rec = [&](auto&& self, int idx, int left) -> void {
    if (idx == slots - 1) {
      parts[idx] = left;
      for (int s = 0; s < slots; ++s)
        for (int r = 0; r < parts[s]; ++r) acc[s].insert(value);
      distribute_arities(value_counts, vi + 1, acc, out);
      for (int s = 0; s < slots; ++s)
        for (int r = 0; r < parts[s]; ++r) acc[s].erase(acc[s].find(value));
      return;
    }
    for (int take = 0; take <= left; ++take) {
      parts[idx] = take;
      self(self, idx + 1, left - take);
    }
  };
  rec(rec, 0, count);
}

void label_subsets(const std::vector<int>& pool, int take,
                   std::vector<int>& acc, std::size_t start,
                   std::vector<std::vector<int>>& out) {
  if (take == 0) {
    out.push_back(acc);
    return;
  }
  for (std::size_t i = start; i + take <= pool.size() + 1 && i < pool.size();
       ++i) {
    acc.push_back(pool[i]);
    label_subsets(pool, take - 1, acc, i + 1, out);
    acc.pop_back();
  }
}

std::vector<LabeledTree> build_shuffle(const std::vector<int>& labels,
                                       const std::multiset<int>& arities) {
  std::vector<LabeledTree> out;
  if (labels.size() == 1) {
    if (arities.empty())
      out.push_back(LabeledTree{PlanarTree::leaf(), {labels[0]}});
    return out;
  }
  if (arities.empty()) return out;
  std::set<int> distinct(arities.begin(), arities.end());
  for (int k : distinct) {
    std::multiset<int> rem = arities;
    rem.erase(rem.find(k));
    std::vector<std::pair<int, int>> value_counts;
    for (auto it = rem.begin(); it != rem.end();) {
      int v = *it;
      int c = static_cast<int>(rem.count(v));
      value_counts.emplace_back(v, c);
      std::advance(it, c);
    }
    std::vector<std::vector<std::multiset<int>>> dists;
    std::vector<std::multiset<int>> acc(k);
    distribute_arities(value_counts, 0, acc, dists);
    for (const std::vector<std::multiset<int>>& dist : dists) {
      // Child i gets 1 + sum(a-1) leaves for its assigned arities.
      std::vector<int> sizes(k);
      int total = 0;
      for (int i = 0; i < k; ++i) {
        int w = 1;
        for (int a : dist[i]) w += a - 1;
        sizes[i] = w;
        total += w;
      }
      if (total != static_cast<int>(labels.size())) continue;
      // Split labels into blocks with increasing minima: each block takes the
      // smallest remaining label plus any subset of the rest.
      auto split_rec = [&](auto&& self, std::vector<int> remaining, int block,
                           std::vector<std::vector<LabeledTree>>& chosen)
          -> void {
        if (block == k) {
          // Cross product of per-child alternatives.
          std::vector<LabeledTree> partial;
          auto cross = [&](auto&& self2, int idx) -> void {
            if (idx == k) {
              PlanarTree shape;
              std::vector<int> all_labels;
              std::vector<PlanarTree> ch;
              for (const LabeledTree& c : partial) {
                ch.push_back(c.shape);
                all_labels.insert(all_labels.end(), c.labels.begin(),
                                  c.labels.end());
              }
              out.push_back(
                  LabeledTree{PlanarTree::node(std::move(ch)), all_labels});
              return;
            }
            for (const LabeledTree& c : chosen[idx]) {
              partial.push_back(c);
              self2(self2, idx + 1);
              partial.pop_back();
            }
          };
          cross(cross, 0);
          return;
        }
        int head = remaining[0];
        std::vector<int> pool(remaining.begin() + 1, remaining.end());
        std::vector<std::vector<int>> subsets;
        std::vector<int> tmp;
        label_subsets(pool, sizes[block] - 1, tmp, 0, subsets);
        for (const std::vector<int>& extra : subsets) {
          std::vector<int> block_labels;
          block_labels.push_back(head);
          block_labels.insert(block_labels.end(), extra.begin(), extra.end());
          std::sort(block_labels.begin(), block_labels.end());
          std::vector<LabeledTree> children =
              build_shuffle(block_labels, dist[block]);
          if (children.empty()) continue;
          std::vector<int> next;
          for (int x : pool)
            if (std::find(extra.begin(), extra.end(), x) == extra.end())
              next.push_back(x);
          chosen.push_back(std::move(children));
          self(self, std::move(next), block + 1, chosen);
          chosen.pop_back();
        }
      };
      std::vector<std::vector<LabeledTree>> chosen;
      split_rec(split_rec, labels, 0, chosen);
    }
  }
  return out;
}

}  // namespace

std::vector<LabeledTree> enumerate_shuffle_trees(
    int n, const std::multiset<int>& vertex_arities) {
  std::vector<LabeledTree> out;
  if (n < 1) return out;
  int implied = 1;
  for (int a : vertex_arities) {
    if (a < 2) return out;
    implied += a - 1;
  }
  if (implied != n) return out;
  std::vector<int> labels(n);
  for (int i = 0; i < n; ++i) labels[i] = i + 1;
  return build_shuffle(labels, vertex_arities);
}

namespace {

struct MinMaxInfo {
  int min, max, leftmost, rightmost;
};

MinMaxInfo minmax_rec(const PlanarTree& t, const std::vector<int>& labels,
                      std::size_t& pos, bool& ok) {
  if (t.is_leaf()) {
    int l = labels[pos++];
    return {l, l, l, l};
  }
  MinMaxInfo agg{0, 0, 0, 0};
  bool first = true;
  for (const PlanarTree& c : t.children) {
    MinMaxInfo info = minmax_rec(c, labels, pos, ok);
    if (first) {
      agg = info;
      first = false;
    } else {
      agg.min = std::min(agg.min, info.min);
      agg.max = std::max(agg.max, info.max);
      agg.rightmost = info.rightmost;
    }
  }
  if (agg.leftmost != agg.min || agg.rightmost != agg.max) ok = false;
  return agg;
}

}  // namespace

bool is_minmax_shuffle_tree(const LabeledTree& t) {
  int n = t.shape.leaf_count();
  if (static_cast<int>(t.labels.size()) != n) return false;
  std::vector<int> sorted = t.labels;
  std::sort(sorted.begin(), sorted.end());
  for (int i = 0; i < n; ++i)
    if (sorted[i] != i + 1) return false;
  bool ok = true;
  std::size_t pos = 0;
  minmax_rec(t.shape, t.labels, pos, ok);
  return ok;
}

namespace {

LabeledTree canonical_rec(const PlanarTree& t, const std::vector<int>& labels,
                          std::size_t& pos) {
  if (t.is_leaf()) {
    int l = labels[pos++];
    return LabeledTree{PlanarTree::leaf(), {l}};
  }
  std::vector<LabeledTree> kids;
  for (const PlanarTree& c : t.children)
    kids.push_back(canonical_rec(c, labels, pos));
  std::stable_sort(kids.begin(), kids.end(),
                   [](const LabeledTree& a, const LabeledTree& b) {
                     return *std::min_element(a.labels.begin(), a.labels.end()) <
                            *std::min_element(b.labels.begin(), b.labels.end());
                   });
  std::vector<PlanarTree> shapes;
  std::vector<int> all;
  for (LabeledTree& k : kids) {
    shapes.push_back(std::move(k.shape));
    all.insert(all.end(), k.labels.begin(), k.labels.end());
  }
  return LabeledTree{PlanarTree::node(std::move(shapes)), all};
}

}  // namespace

LabeledTree canonical_shuffle_form(const PlanarTree& shape,
                                   const std::vector<int>& labels) {
  if (static_cast<int>(labels.size()) != shape.leaf_count())
    throw error("canonical_shuffle_form: label count mismatch");
  std::size_t pos = 0;
  return canonical_rec(shape, labels, pos);
}

LabeledTree graft_shuffle(const LabeledTree& outer, int leaf_label,
                          const LabeledTree& inner) {
  int n = outer.shape.leaf_count();
  int m = inner.shape.leaf_count();
  if (leaf_label < 1 || leaf_label > n)
    throw error("graft_shuffle: leaf label " + std::to_string(leaf_label) +
                " out of range 1.." + std::to_string(n));
  auto it = std::find(outer.labels.begin(), outer.labels.end(), leaf_label);
  if (it == outer.labels.end())
    throw error("graft_shuffle: label not present");
  int planar_pos = static_cast<int>(it - outer.labels.begin()) + 1;
  PlanarTree shape = graft(outer.shape, planar_pos, inner.shape);
  std::vector<int> labels;
  labels.reserve(n + m - 1);
  for (int lab : outer.labels) {
    if (lab == leaf_label) {
      for (int inner_lab : inner.labels)
        labels.push_back(inner_lab + leaf_label - 1);
    } else {
      labels.push_back(lab < leaf_label ? lab : lab + m - 1);
    }
  }
  return LabeledTree{std::move(shape), std::move(labels)};
}

namespace {

// Root-to-leaf letter words in planar leaf order.
void collect_words(const PlanarTree& t, const std::vector<int>& letters,
                   std::size_t& vertex_idx, std::vector<int>& stack,
                   std::vector<std::vector<int>>& words) {
  if (t.is_leaf()) {
    words.push_back(stack);
    return;
  }
  stack.push_back(letters[vertex_idx++]);
  for (const PlanarTree& c : t.children)
    collect_words(c, letters, vertex_idx, stack, words);
  stack.pop_back();
}

int deglex_compare(const std::vector<int>& a, const std::vector<int>& b) {
  if (a.size() != b.size()) return a.size() < b.size() ? -1 : 1;
  if (a < b) return -1;
  if (b < a) return 1;
  return 0;
}

std::string encode_tree(const PlanarTree& t, const std::vector<int>& labels,
                        const std::vector<int>& letters) {
  std::vector<std::string> names;
  for (int l : letters) names.push_back("g" + std::to_string(l));
  return tree_to_text(t, labels, names);
}

}  // namespace

int compare_path_lex(const PlanarTree& shape_a, const std::vector<int>& labels_a,
                     const std::vector<int>& letters_a,
                     const PlanarTree& shape_b, const std::vector<int>& labels_b,
                     const std::vector<int>& letters_b) {
  int n = shape_a.leaf_count();
  if (shape_b.leaf_count() != n)
    throw error("compare_path_lex: different leaf counts");
  std::vector<std::vector<int>> words_a, words_b;
  std::vector<int> stack;
  std::size_t idx = 0;
  collect_words(shape_a, letters_a, idx, stack, words_a);
  idx = 0;
  collect_words(shape_b, letters_b, idx, stack, words_b);
  // Reindex words by leaf label.
  std::vector<std::vector<int>> by_label_a(n), by_label_b(n);
  for (int i = 0; i < n; ++i) {
    by_label_a[labels_a[i] - 1] = words_a[i];
    by_label_b[labels_b[i] - 1] = words_b[i];
  }
  for (int l = 0; l < n; ++l) {
    int c = deglex_compare(by_label_a[l], by_label_b[l]);
    if (c != 0) return c;
  }
  if (labels_a < labels_b) return -1;
  if (labels_b < labels_a) return 1;
  std::string ea = encode_tree(shape_a, labels_a, letters_a);
  std::string eb = encode_tree(shape_b, labels_b, letters_b);
  if (ea < eb) return -1;
  if (eb < ea) return 1;
  return 0;
}

int compare_path_lex(const LabeledTree& a, const LabeledTree& b) {
  std::vector<int> za(a.shape.vertex_count(), 0), zb(b.shape.vertex_count(), 0);
  return compare_path_lex(a.shape, a.labels, za, b.shape, b.labels, zb);
}

int compare_path_lex(const PlanarTree& a, const PlanarTree& b) {
  auto identity_labels = [](const PlanarTree& t) {
    std::vector<int> l(t.leaf_count());
    for (std::size_t i = 0; i < l.size(); ++i) l[i] = static_cast<int>(i) + 1;
    return l;
  };
  std::vector<int> za(a.vertex_count(), 0), zb(b.vertex_count(), 0);
  return compare_path_lex(a, identity_labels(a), za, b, identity_labels(b), zb);
}

namespace {

void text_rec(const PlanarTree& t, const std::vector<int>& labels,
              const std::vector<std::string>& names, std::size_t& leaf_idx,
              std::size_t& vertex_idx, std::string& out) {
  if (t.is_leaf()) {
    out += std::to_string(labels[leaf_idx++]);
    return;
  }
  out += names[vertex_idx++];
  out += "(";
  bool first = true;
  for (const PlanarTree& c : t.children) {
    if (!first) out += ",";
    first = false;
    text_rec(c, labels, names, leaf_idx, vertex_idx, out);
  }
  out += ")";
}

}  // namespace

std::string tree_to_text(const PlanarTree& shape, const std::vector<int>& labels,
                         const std::vector<std::string>& vertex_names) {
  if (static_cast<int>(labels.size()) != shape.leaf_count())
    throw error("tree_to_text: label count mismatch");
  if (static_cast<int>(vertex_names.size()) != shape.vertex_count())
    throw error("tree_to_text: vertex name count mismatch");
  std::string out;
  std::size_t li = 0, vi = 0;
  text_rec(shape, labels, vertex_names, li, vi, out);
  return out;
}

std::string tree_to_text(const LabeledTree& t, const std::string& vertex_name) {
  std::vector<std::string> names(t.shape.vertex_count(), vertex_name);
  return tree_to_text(t.shape, t.labels, names);
}

std::string tree_to_dot(const PlanarTree& shape, const std::vector<int>& labels,
                        const std::vector<std::string>& vertex_names,
                        const std::string& graph_name) {
  std::ostringstream os;
  os << "digraph " << graph_name << " {\n";
  os << "  ordering=out;\n";
  int next_id = 0;
  std::size_t li = 0, vi = 0;
  auto rec = [&](auto&& self, const PlanarTree& t) -> int {
    int my_id = next_id++;
    if (t.is_leaf()) {
      os << "  n" << my_id << " [shape=none,label=\"" << labels[li++]
         << "\"];\n";
      return my_id;
    }
    os << "  n" << my_id << " [shape=circle,label=\"" << vertex_names[vi++]
       << "\"];\n";
    for (const PlanarTree& c : t.children) {
      int cid = self(self, c);
      os << "  n" << my_id << " -> n" << cid << ";\n";
    }
    return my_id;
  };
  rec(rec, shape);
  os << "}\n";
  return os.str();
}

Rational catalan_number(int n) {
  if (n < 0) throw error("catalan_number: negative index");
  mpz_class num = 1, den = 1;
  for (int k = 0; k < n; ++k) {
    num *= 2 * (2 * k + 1);
    den *= k + 2;
  }
  return Rational(num) / Rational(den);
}

}  // namespace opal
