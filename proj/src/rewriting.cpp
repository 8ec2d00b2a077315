#include "opal/rewriting.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace opal {

namespace {

// Recursive form of a decorated monomial; easier to cut and splice than the
// flat (shape, labels, gens) triple.
struct DecNode {
  bool leaf = true;
  int label = 0;                  // leaves only
  int gen = -1;                   // internal only
  std::vector<DecNode> children;  // internal only
};

DecNode decode_rec(const PlanarTree& t, const std::vector<int>& labels,
                   const std::vector<int>& gens, std::size_t& li,
                   std::size_t& vi) {
  DecNode n;
  if (t.is_leaf()) {
    n.leaf = true;
    n.label = labels[li++];
    return n;
  }
  n.leaf = false;
  n.gen = gens[vi++];
  for (const PlanarTree& c : t.children)
    n.children.push_back(decode_rec(c, labels, gens, li, vi));
  return n;
}

DecNode decode(const TreeMonomial& m) {
  std::size_t li = 0, vi = 0;
  return decode_rec(m.shape, m.labels, m.gens, li, vi);
}

void encode_rec(const DecNode& n, PlanarTree& shape, std::vector<int>& labels,
                std::vector<int>& gens) {
  if (n.leaf) {
    shape = PlanarTree::leaf();
    labels.push_back(n.label);
    return;
  }
  gens.push_back(n.gen);
  std::vector<PlanarTree> ch(n.children.size());
  for (std::size_t i = 0; i < n.children.size(); ++i)
    encode_rec(n.children[i], ch[i], labels, gens);
  shape = PlanarTree::node(std::move(ch));
}

TreeMonomial encode(const DecNode& n) {
  TreeMonomial m;
  encode_rec(n, m.shape, m.labels, m.gens);
  return m;
}

DecNode* nth_vertex(DecNode& n, int& remaining) {
  if (n.leaf) return nullptr;
  if (remaining == 0) return &n;
  --remaining;
  for (DecNode& c : n.children)
    if (DecNode* hit = nth_vertex(c, remaining)) return hit;
  return nullptr;
}

int min_label(const DecNode& n) {
  if (n.leaf) return n.label;
  int best = 0;
  bool first = true;
  for (const DecNode& c : n.children) {
    int m = min_label(c);
    if (first || m < best) best = m;
    first = false;
  }
  return best;
}

// The three hanging subtrees of a binary pair, in planar order.
std::vector<const DecNode*> hanging(const DecNode& parent, int slot) {
  const DecNode& child = parent.children[slot];
  if (slot == 0)
    return {&child.children[0], &child.children[1], &parent.children[1]};
  return {&parent.children[0], &child.children[0], &child.children[1]};
}

PlanarTree two_vertex_shape(int slot) {
  PlanarTree inner =
      PlanarTree::node({PlanarTree::leaf(), PlanarTree::leaf()});
  if (slot == 0) return PlanarTree::node({std::move(inner), PlanarTree::leaf()});
  return PlanarTree::node({PlanarTree::leaf(), std::move(inner)});
}

}  // namespace

std::vector<PairPosition> adjacent_pairs(const TreeMonomial& m) {
  std::vector<PairPosition> out;
  int preorder = -1;
  auto rec = [&](auto&& self, const PlanarTree& t) -> void {
    if (t.is_leaf()) return;
    int my_idx = ++preorder;
    for (std::size_t s = 0; s < t.children.size(); ++s)
      if (!t.children[s].is_leaf())
        out.push_back({my_idx, static_cast<int>(s)});
    for (const PlanarTree& c : t.children) self(self, c);
  };
  rec(rec, m.shape);
  // Preorder of the parent, left slot first: sort by (vertex, slot).
  std::sort(out.begin(), out.end(), [](const PairPosition& a,
                                       const PairPosition& b) {
    return a.vertex != b.vertex ? a.vertex < b.vertex : a.slot < b.slot;
  });
  return out;
}

TreeMonomial pair_pattern(const TreeMonomial& m, const PairPosition& pos) {
  DecNode root = decode(m);
  int remaining = pos.vertex;
  DecNode* parent = nth_vertex(root, remaining);
  if (!parent || pos.slot < 0 ||
      pos.slot >= static_cast<int>(parent->children.size()))
    throw error("pair position out of range");
  if (parent->children.size() != 2 ||
      parent->children[pos.slot].children.size() != 2 ||
      parent->children[pos.slot].leaf)
    throw error("pair position does not name two binary vertices");
  std::vector<const DecNode*> hang = hanging(*parent, pos.slot);
  std::vector<int> mins(3);
  for (int i = 0; i < 3; ++i) mins[i] = min_label(*hang[i]);
  std::vector<int> sorted = mins;
  std::sort(sorted.begin(), sorted.end());
  TreeMonomial pattern;
  pattern.shape = two_vertex_shape(pos.slot);
  pattern.labels.resize(3);
  for (int i = 0; i < 3; ++i)
    pattern.labels[i] =
        static_cast<int>(std::find(sorted.begin(), sorted.end(), mins[i]) -
                         sorted.begin()) +
        1;
  pattern.gens = {parent->gen, parent->children[pos.slot].gen};
  return pattern;
}

TreeMonomial substitute_pair(const TreeMonomial& m, const PairPosition& pos,
                             const TreeMonomial& arrangement) {
  if (arrangement.arity() != 3 || arrangement.weight() != 2)
    throw error("substitute_pair: arrangement must have two vertices");
  DecNode root = decode(m);
  int remaining = pos.vertex;
  DecNode* parent = nth_vertex(root, remaining);
  if (!parent) throw error("pair position out of range");
  std::vector<const DecNode*> hang = hanging(*parent, pos.slot);
  std::vector<int> mins(3);
  for (int i = 0; i < 3; ++i) mins[i] = min_label(*hang[i]);
  std::vector<int> sorted = mins;
  std::sort(sorted.begin(), sorted.end());
  // rank r (1-based) -> hanging subtree whose min has that rank
  std::vector<const DecNode*> by_rank(3);
  for (int i = 0; i < 3; ++i) {
    int r = static_cast<int>(std::find(sorted.begin(), sorted.end(), mins[i]) -
                             sorted.begin());
    by_rank[r] = hang[i];
  }
  int a_slot = arrangement.shape.children[0].is_leaf() ? 1 : 0;
  DecNode inner;
  inner.leaf = false;
  inner.gen = arrangement.gens[1];
  DecNode outer;
  outer.leaf = false;
  outer.gen = arrangement.gens[0];
  const std::vector<int>& lab = arrangement.labels;
  if (a_slot == 0) {
    inner.children = {*by_rank[lab[0] - 1], *by_rank[lab[1] - 1]};
    outer.children = {std::move(inner), *by_rank[lab[2] - 1]};
  } else {
    inner.children = {*by_rank[lab[1] - 1], *by_rank[lab[2] - 1]};
    outer.children = {*by_rank[lab[0] - 1], std::move(inner)};
  }
  *parent = std::move(outer);
  return encode(root);
}

RewriteSystem::RewriteSystem(const Presentation& p) : pres_(p) {
  for (int i = 0; i < p.gens.size(); ++i) {
    const Generator& g = p.gens.at(i);
    if (g.arity != 2)
      throw semantic_error("rewriting requires binary generators; '" + g.name +
                           "' has arity " + std::to_string(g.arity));
    if (g.degree != 0)
      throw semantic_error("rewriting requires degree-0 generators; '" +
                           g.name + "' has degree " +
                           std::to_string(g.degree));
  }
  rules_ = normalize_relators(pres_);
  for (std::size_t k = 0; k < rules_.size(); ++k) {
    const NormalizedRelator& r = rules_[k];
    if (r.leading.arity() != 3 || r.leading.weight() != 2)
      throw semantic_error(
          "rewriting requires quadratic relators; found one of weight " +
          std::to_string(r.leading.weight()) + " and arity " +
          std::to_string(r.leading.arity()));
    pattern_to_rule_[r.leading] = static_cast<int>(k);
  }
}

int RewriteSystem::match_rule(const TreeMonomial& m,
                              const PairPosition& pos) const {
  TreeMonomial pattern = pair_pattern(m, pos);
  auto it = pattern_to_rule_.find(pattern);
  return it == pattern_to_rule_.end() ? -1 : it->second;
}

std::vector<Redex> RewriteSystem::redexes(const TreeMonomial& m) const {
  std::vector<Redex> out;
  for (const PairPosition& pos : adjacent_pairs(m)) {
    int rule = match_rule(m, pos);
    if (rule >= 0) out.push_back({pos.vertex, pos.slot, rule});
  }
  return out;
}

bool RewriteSystem::is_normal_form(const TreeMonomial& m) const {
  return redexes(m).empty();
}

TreePolynomial apply_redex(const TreePolynomial& poly, const TreeMonomial& m,
                           const Redex& r, const RewriteSystem& rs) {
  auto it = poly.terms.find(m);
  if (it == poly.terms.end())
    throw error("apply_redex: monomial not present in polynomial");
  Rational coeff = it->second;
  TreePolynomial out = poly;
  out.add_term(m, -coeff);
  const NormalizedRelator& rule = rs.rules().at(r.rule);
  for (const auto& [tm, tc] : rule.tail.terms)
    out.add_term(substitute_pair(m, {r.vertex, r.slot}, tm), coeff * tc);
  return out;
}

std::vector<PolynomialRedex> polynomial_redexes(const TreePolynomial& poly,
                                                const RewriteSystem& rs) {
  std::vector<PolynomialRedex> out;
  for (const auto& [m, c] : poly.terms)
    for (const Redex& r : rs.redexes(m)) out.push_back({m, r});
  return out;
}

namespace {

// Deterministic redex choice: path-largest monomial, then smallest preorder
// vertex, left slot first.
std::optional<PolynomialRedex> pick_redex(const TreePolynomial& poly,
                                          const RewriteSystem& rs) {
  std::optional<TreeMonomial> best;
  std::optional<Redex> best_redex;
  for (const auto& [m, c] : poly.terms) {
    std::vector<Redex> rs_here = rs.redexes(m);
    if (rs_here.empty()) continue;
    if (!best || compare_monomials(m, *best) > 0) {
      best = m;
      best_redex = rs_here.front();  // adjacent_pairs order = preorder, left first
    }
  }
  if (!best) return std::nullopt;
  return PolynomialRedex{*best, *best_redex};
}

std::string describe_step(const RewriteSystem& rs, const PolynomialRedex& pr,
                          const TreePolynomial& result) {
  std::ostringstream os;
  os << "rewrite " << render(pr.monomial, rs.gens()) << " at vertex "
     << pr.redex.vertex << (pr.redex.slot == 0 ? " (left pair)" : " (right pair)")
     << " by rule " << render(rs.rules().at(pr.redex.rule).leading, rs.gens())
     << " -> " << render(rs.rules().at(pr.redex.rule).tail, rs.gens())
     << ", giving " << render(result, rs.gens());
  return os.str();
}

}  // namespace

TreePolynomial reduce_normal_form(const TreePolynomial& poly,
                                  const RewriteSystem& rs) {
  TreePolynomial current = poly;
  long steps = 0;
  while (auto pr = pick_redex(current, rs)) {
    current = apply_redex(current, pr->monomial, pr->redex, rs);
    if (++steps > 1000000) throw error("reduction exceeded step limit");
  }
  return current;
}

std::vector<TreeMonomial> find_critical_monomials(const RewriteSystem& rs) {
  std::vector<TreeMonomial> out;
  const GeneratorSet& gs = rs.gens();
  std::vector<LabeledTree> labeled;
  if (rs.mode() == OperadMode::ns) {
    for (const PlanarTree& shape : enumerate_planar_trees(4, 3, true)) {
      std::vector<int> labels = {1, 2, 3, 4};
      labeled.push_back(LabeledTree{shape, labels});
    }
  } else {
    labeled = enumerate_shuffle_trees(4, std::multiset<int>{2, 2, 2});
  }
  int g = gs.size();
  for (const LabeledTree& t : labeled) {
    std::vector<int> decoration(3, 0);
    // All generator decorations of the three vertices.
    for (int d = 0; d < g * g * g; ++d) {
      decoration[0] = d / (g * g);
      decoration[1] = (d / g) % g;
      decoration[2] = d % g;
      TreeMonomial m{t.shape, t.labels, decoration};
      std::vector<PairPosition> pairs = adjacent_pairs(m);
      if (pairs.size() != 2) continue;
      bool critical = true;
      for (const PairPosition& pos : pairs)
        if (rs.match_rule(m, pos) < 0) critical = false;
      if (critical) out.push_back(m);
    }
  }
  std::sort(out.begin(), out.end(),
            [](const TreeMonomial& a, const TreeMonomial& b) {
              return compare_monomials(a, b) < 0;
            });
  return out;
}

namespace {

// Exhaustive set of normal forms reachable from `state`, memoized on the
// rendered polynomial.
void all_normal_forms(const TreePolynomial& state, const RewriteSystem& rs,
                      std::map<std::string, std::set<std::string>>& memo,
                      std::map<std::string, TreePolynomial>& nf_store,
                      int depth) {
  if (depth > 64) throw error("confluence search exceeded depth limit");
  std::string key = render(state, rs.gens());
  if (memo.count(key)) return;
  std::vector<PolynomialRedex> choices = polynomial_redexes(state, rs);
  std::set<std::string> nfs;
  if (choices.empty()) {
    nfs.insert(key);
    nf_store.emplace(key, state);
  } else {
    for (const PolynomialRedex& pr : choices) {
      TreePolynomial next = apply_redex(state, pr.monomial, pr.redex, rs);
      all_normal_forms(next, rs, memo, nf_store, depth + 1);
      const std::set<std::string>& sub = memo.at(render(next, rs.gens()));
      nfs.insert(sub.begin(), sub.end());
    }
  }
  memo[key] = std::move(nfs);
}

}  // namespace

KoszulCertificate check_confluence(const RewriteSystem& rs) {
  KoszulCertificate cert;
  cert.confluent = true;
  for (const TreeMonomial& m : find_critical_monomials(rs)) {
    CriticalReport report;
    report.monomial = m;
    TreePolynomial start = TreePolynomial::monomial(m);

    std::map<std::string, std::set<std::string>> memo;
    std::map<std::string, TreePolynomial> nf_store;
    all_normal_forms(start, rs, memo, nf_store, 0);
    for (const std::string& key : memo.at(render(start, rs.gens())))
      report.normal_forms.push_back(nf_store.at(key));
    report.confluent = report.normal_forms.size() == 1;

    // One recorded path per initial redex: take that step, then follow the
    // deterministic strategy to a normal form.
    for (const Redex& first : rs.redexes(m)) {
      std::vector<std::string> path;
      PolynomialRedex pr0{m, first};
      TreePolynomial state = apply_redex(start, m, first, rs);
      path.push_back(describe_step(rs, pr0, state));
      while (auto pr = pick_redex(state, rs)) {
        TreePolynomial next = apply_redex(state, pr->monomial, pr->redex, rs);
        path.push_back(describe_step(rs, *pr, next));
        state = next;
      }
      path.push_back("normal form: " + render(state, rs.gens()));
      report.paths.push_back(std::move(path));
    }

    if (!report.confluent) cert.confluent = false;
    cert.critical_monomials.push_back(std::move(report));
  }
  cert.verdict = cert.confluent ? "Koszul" : "NotConcluded";
  return cert;
}

std::vector<TreeMonomial> enumerate_pbw_basis(const RewriteSystem& rs,
                                              int arity,
                                              const KoszulCertificate& cert) {
  if (!cert.confluent)
    throw error(
        "normal-form basis requires a confluent certificate; verdict was '" +
        cert.verdict + "'");
  std::vector<TreeMonomial> out;
  if (arity < 1) return out;
  const GeneratorSet& gs = rs.gens();
  if (arity == 1) return out;  // only the unit lives in arity 1; not stored
  std::vector<LabeledTree> labeled;
  if (rs.mode() == OperadMode::ns) {
    for (const PlanarTree& shape :
         enumerate_planar_trees(arity, arity - 1, true)) {
      std::vector<int> labels(arity);
      for (int i = 0; i < arity; ++i) labels[i] = i + 1;
      labeled.push_back(LabeledTree{shape, labels});
    }
  } else {
    std::multiset<int> arities;
    for (int i = 0; i < arity - 1; ++i) arities.insert(2);
    labeled = enumerate_shuffle_trees(arity, arities);
  }
  int g = gs.size();
  int vertices = arity - 1;
  for (const LabeledTree& t : labeled) {
    std::vector<int> decoration(vertices, 0);
    long long total = 1;
    for (int i = 0; i < vertices; ++i) total *= g;
    for (long long d = 0; d < total; ++d) {
      long long x = d;
      for (int i = vertices - 1; i >= 0; --i) {
        decoration[i] = static_cast<int>(x % g);
        x /= g;
      }
      TreeMonomial m{t.shape, t.labels, decoration};
      if (rs.is_normal_form(m)) out.push_back(m);
    }
  }
  std::sort(out.begin(), out.end(),
            [](const TreeMonomial& a, const TreeMonomial& b) {
              return compare_monomials(a, b) < 0;
            });
  return out;
}

std::string critical_monomial_dot(const RewriteSystem& rs,
                                  const CriticalReport& report,
                                  const std::string& graph_name) {
  std::ostringstream os;
  os << "digraph " << graph_name << " {\n";
  os << "  rankdir=TB;\n";
  os << "  node [shape=box,fontname=\"monospace\"];\n";
  std::map<std::string, int> ids;
  auto node_id = [&](const std::string& label) {
    auto it = ids.find(label);
    if (it == ids.end()) {
      int id = static_cast<int>(ids.size());
      it = ids.emplace(label, id).first;
      os << "  s" << id << " [label=\"" << label << "\"];\n";
    }
    return it->second;
  };
  std::string start = render(report.monomial, rs.gens());
  node_id(start);
  // Re-play the recorded paths to recover the intermediate states.
  for (const Redex& first : rs.redexes(report.monomial)) {
    TreePolynomial state = TreePolynomial::monomial(report.monomial);
    TreePolynomial next = apply_redex(state, report.monomial, first, rs);
    int prev = node_id(render(state, rs.gens()));
    int cur = node_id(render(next, rs.gens()));
    os << "  s" << prev << " -> s" << cur << ";\n";
    state = next;
    while (auto pr = pick_redex(state, rs)) {
      next = apply_redex(state, pr->monomial, pr->redex, rs);
      prev = node_id(render(state, rs.gens()));
      cur = node_id(render(next, rs.gens()));
      os << "  s" << prev << " -> s" << cur << ";\n";
      state = next;
    }
  }
  os << "}\n";
  return os.str();
}

}  // namespace opal
