#include "opal/free_operad.hpp"

#include <algorithm>

namespace opal {

int GeneratorSet::add(const Generator& g) {
  if (g.name.empty()) throw semantic_error("generator with empty name");
  if (find(g.name) >= 0)
    throw semantic_error("duplicate generator '" + g.name + "'");
  if (g.arity < 2)
    throw semantic_error("generator '" + g.name +
                         "' must have arity at least 2");
  gens_.push_back(g);
  return static_cast<int>(gens_.size()) - 1;
}

int GeneratorSet::find(const std::string& name) const {
  for (std::size_t i = 0; i < gens_.size(); ++i)
    if (gens_[i].name == name) return static_cast<int>(i);
  return -1;
}

int TreeMonomial::total_degree(const GeneratorSet& gs) const {
  int d = 0;
  for (int g : gens) d += gs.at(g).degree;
  return d;
}

bool operator==(const TreeMonomial& a, const TreeMonomial& b) {
  return a.shape == b.shape && a.labels == b.labels && a.gens == b.gens;
}

bool operator<(const TreeMonomial& a, const TreeMonomial& b) {
  if (a.shape < b.shape) return true;
  if (b.shape < a.shape) return false;
  if (a.labels < b.labels) return true;
  if (b.labels < a.labels) return false;
  return a.gens < b.gens;
}

void TreePolynomial::add_term(const TreeMonomial& m, const Rational& c) {
  if (c == 0) return;
  auto [it, inserted] = terms.emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms.erase(it);
  }
}

TreePolynomial TreePolynomial::operator+(const TreePolynomial& o) const {
  TreePolynomial out = *this;
  for (const auto& [m, c] : o.terms) out.add_term(m, c);
  return out;
}

TreePolynomial TreePolynomial::operator-(const TreePolynomial& o) const {
  TreePolynomial out = *this;
  for (const auto& [m, c] : o.terms) out.add_term(m, -c);
  return out;
}

TreePolynomial TreePolynomial::operator*(const Rational& scalar) const {
  TreePolynomial out;
  if (scalar == 0) return out;
  for (const auto& [m, c] : terms) out.terms.emplace(m, c * scalar);
  return out;
}

TreePolynomial TreePolynomial::monomial(const TreeMonomial& m,
                                        const Rational& c) {
  TreePolynomial p;
  p.add_term(m, c);
  return p;
}

TreeMonomial corolla(const GeneratorSet& gs, int gen_id) {
  const Generator& g = gs.at(gen_id);
  std::vector<PlanarTree> leaves(g.arity, PlanarTree::leaf());
  TreeMonomial m;
  m.shape = PlanarTree::node(std::move(leaves));
  m.labels.resize(g.arity);
  for (int i = 0; i < g.arity; ++i) m.labels[i] = i + 1;
  m.gens = {gen_id};
  return m;
}

namespace {

// Number of internal vertices visited in preorder strictly before reaching
// the leaf at planar position `leaf_pos` (1-based).
int vertices_before_leaf(const PlanarTree& t, int leaf_pos) {
  int leaf_seen = 0, vertex_seen = 0;
  int result = -1;
  auto rec = [&](auto&& self, const PlanarTree& node) -> void {
    if (result >= 0) return;
    if (node.is_leaf()) {
      ++leaf_seen;
      if (leaf_seen == leaf_pos) result = vertex_seen;
      return;
    }
    ++vertex_seen;
    for (const PlanarTree& c : node.children) self(self, c);
  };
  rec(rec, t);
  if (result < 0) throw error("internal: leaf position out of range");
  return result;
}

}  // namespace

TreeMonomial compose_monomial(const TreeMonomial& f, int slot,
                              const TreeMonomial& g, const GeneratorSet& gs,
                              int* sign_out) {
  int n = f.arity();
  int m = g.arity();
  if (slot < 1 || slot > n)
    throw error("partial composition slot " + std::to_string(slot) +
                " out of range 1.." + std::to_string(n));
  auto it = std::find(f.labels.begin(), f.labels.end(), slot);
  if (it == f.labels.end()) throw error("internal: slot label not present");
  int planar_pos = static_cast<int>(it - f.labels.begin()) + 1;

  TreeMonomial out;
  out.shape = graft(f.shape, planar_pos, g.shape);
  out.labels.reserve(n + m - 1);
  for (int lab : f.labels) {
    if (lab == slot) {
      for (int inner : g.labels) out.labels.push_back(inner + slot - 1);
    } else {
      out.labels.push_back(lab < slot ? lab : lab + m - 1);
    }
  }
  int before = vertices_before_leaf(f.shape, planar_pos);
  out.gens.reserve(f.gens.size() + g.gens.size());
  out.gens.insert(out.gens.end(), f.gens.begin(), f.gens.begin() + before);
  out.gens.insert(out.gens.end(), g.gens.begin(), g.gens.end());
  out.gens.insert(out.gens.end(), f.gens.begin() + before, f.gens.end());

  if (sign_out) {
    int g_degree = g.total_degree(gs);
    int passed = 0;
    for (std::size_t k = before; k < f.gens.size(); ++k)
      passed += gs.at(f.gens[k]).degree;
    *sign_out = parity_sign(static_cast<long long>(g_degree) * passed);
  }
  return out;
}

TreePolynomial partial_compose(const TreePolynomial& f, int slot,
                               const TreePolynomial& g,
                               const GeneratorSet& gs) {
  TreePolynomial out;
  for (const auto& [fm, fc] : f.terms)
    for (const auto& [gm, gc] : g.terms) {
      int sign = 1;
      TreeMonomial m = compose_monomial(fm, slot, gm, gs, &sign);
      out.add_term(m, fc * gc * sign);
    }
  return out;
}

int compare_monomials(const TreeMonomial& a, const TreeMonomial& b) {
  return compare_path_lex(a.shape, a.labels, a.gens, b.shape, b.labels, b.gens);
}

std::vector<TreeMonomial> weight2_basis(const GeneratorSet& gs, int arity,
                                        OperadMode mode) {
  std::vector<TreeMonomial> out;
  for (int a = 0; a < gs.size(); ++a)
    for (int b = 0; b < gs.size(); ++b) {
      int na = gs.at(a).arity, nb = gs.at(b).arity;
      if (na + nb - 1 != arity) continue;
      if (mode == OperadMode::ns) {
        for (int slot = 1; slot <= na; ++slot)
          out.push_back(compose_monomial(corolla(gs, a), slot, corolla(gs, b),
                                         gs, nullptr));
      } else {
        for (const LabeledTree& t :
             enumerate_shuffle_trees(arity, std::multiset<int>{na, nb})) {
          if (static_cast<int>(t.shape.children.size()) != na) continue;
          // Preorder decoration: root then the unique internal child.
          bool child_ok = false;
          for (const PlanarTree& c : t.shape.children)
            if (!c.is_leaf())
              child_ok = static_cast<int>(c.children.size()) == nb;
          if (!child_ok) continue;
          out.push_back(TreeMonomial{t.shape, t.labels, {a, b}});
        }
      }
    }
  std::sort(out.begin(), out.end(), [](const TreeMonomial& x,
                                       const TreeMonomial& y) {
    return compare_monomials(x, y) < 0;
  });
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::string render(const TreeMonomial& m, const GeneratorSet& gs) {
  std::vector<std::string> names;
  names.reserve(m.gens.size());
  for (int g : m.gens) names.push_back(gs.at(g).name);
  return tree_to_text(m.shape, m.labels, names);
}

std::string render(const TreePolynomial& p, const GeneratorSet& gs) {
  if (p.terms.empty()) return "0";
  std::vector<const TreeMonomial*> order;
  for (const auto& [m, c] : p.terms) order.push_back(&m);
  std::sort(order.begin(), order.end(),
            [](const TreeMonomial* x, const TreeMonomial* y) {
              if (x->arity() != y->arity()) return x->arity() < y->arity();
              return compare_monomials(*x, *y) > 0;  // leading term first
            });
  std::string out;
  bool first = true;
  for (const TreeMonomial* m : order) {
    Rational c = p.terms.at(*m);
    bool negative = c < 0;
    Rational abs = negative ? Rational(-c) : c;
    if (first) {
      if (negative) out += "-";
    } else {
      out += negative ? " - " : " + ";
    }
    if (abs != 1) out += rational_to_string(abs) + "*";
    out += render(*m, gs);
    first = false;
  }
  return out;
}

std::string render_dot(const TreeMonomial& m, const GeneratorSet& gs,
                       const std::string& graph_name) {
  std::vector<std::string> names;
  names.reserve(m.gens.size());
  for (int g : m.gens) names.push_back(gs.at(g).name);
  return tree_to_dot(m.shape, m.labels, names, graph_name);
}

}  // namespace opal
