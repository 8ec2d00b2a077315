#include "opal/ainfinity.hpp"

#include <algorithm>

#include "opal/trees.hpp"

namespace opal {

namespace {

std::string tuple_names(const GradedSpace& space, const std::vector<int>& key) {
  std::string out = "(";
  for (std::size_t i = 0; i < key.size(); ++i) {
    if (i) out += ", ";
    out += space.name_of(key[i]);
  }
  return out + ")";
}

}  // namespace

AInfinityStructure dga_as_ainfinity(const DgAlgebra& a) {
  AInfinityStructure s;
  s.space = a.complex;
  if (!a.product.is_zero()) s.ops.emplace(2, a.product);
  return s;
}

int suspension_sign(const GradedSpace& space, const std::vector<int>& key) {
  int n = static_cast<int>(key.size());
  long long e = 0;
  for (int i = 0; i < n; ++i)
    e += static_cast<long long>(n - 1 - i) * space.degree_of(key[i]);
  return parity_sign(e);
}

MultiMap mu_from_b(const MultiMap& b_table, const GradedSpace& space) {
  MultiMap out{b_table.arity, b_table.degree, {}};
  for (const auto& [key, vec] : b_table.table) {
    int s = suspension_sign(space, key);
    for (const auto& [idx, c] : vec) out.add_entry(key, idx, c * s);
  }
  return out;
}

MultiMap b_from_mu(const MultiMap& mu_table, const GradedSpace& space) {
  return mu_from_b(mu_table, space);  // the conversion is an involution
}

namespace {

// Evaluates the tree composite: each internal vertex applies b_k, each
// internal edge applies h.  All composite factors have even suspended
// degree, so the expansion needs no sign bookkeeping.
SparseVec eval_tree(const PlanarTree& t, const std::vector<SparseVec>& leaves,
                    std::size_t& leaf_pos,
                    const std::map<int, MultiMap>& b_ops, const LinearMap& h) {
  int k = static_cast<int>(t.children.size());
  std::vector<SparseVec> args;
  args.reserve(k);
  for (const PlanarTree& c : t.children) {
    if (c.is_leaf()) {
      args.push_back(leaves[leaf_pos++]);
    } else {
      SparseVec sub = eval_tree(c, leaves, leaf_pos, b_ops, h);
      args.push_back(h.apply_sparse(sub));
    }
  }
  auto it = b_ops.find(k);
  if (it == b_ops.end()) throw error("internal: missing operation table");
  return eval_multilinear(it->second, args);
}

bool tree_supported(const PlanarTree& t, const std::map<int, MultiMap>& b_ops) {
  for (int a : t.vertex_arities()) {
    auto it = b_ops.find(a);
    if (it == b_ops.end() || it->second.is_zero()) return false;
  }
  return true;
}

// Suspended-source operation tables of a structure, arities >= 2.
std::map<int, MultiMap> suspended_ops(const AInfinityStructure& s) {
  std::map<int, MultiMap> b;
  for (const auto& [n, mu] : s.ops) {
    MultiMap t = b_from_mu(mu, s.space.space);
    if (!t.is_zero()) b.emplace(n, std::move(t));
  }
  return b;
}

void require_retract_matches(const ChainComplex& source,
                             const DeformationRetract& r) {
  if (!(r.big.space == source.space) || !(r.big.d == source.d))
    throw error("deformation retract does not match the source complex");
}

void require_arity_range(int max_arity) {
  if (max_arity < 2 || max_arity > 8)
    throw error("max_arity must lie between 2 and 8");
}

struct TransferResult {
  std::map<int, MultiMap> b_h;    // transferred suspended operations
  std::map<int, MultiMap> f_int;  // suspended inclusion components, n >= 2
};

TransferResult transfer_core(const std::map<int, MultiMap>& b_src,
                             const DeformationRetract& r, int max_arity) {
  const GradedSpace& h_space = r.small.space;
  int hdim = h_space.total_dim();
  std::vector<SparseVec> include(hdim);
  for (int x = 0; x < hdim; ++x)
    include[x] = r.i.apply_sparse({{x, Rational(1)}});

  TransferResult out;
  for (int n = 2; n <= max_arity; ++n) {
    MultiMap bn{n, n - 2, {}};
    MultiMap fn{n, n - 1, {}};
    std::vector<PlanarTree> trees =
        enumerate_planar_trees(n, std::nullopt, false);
    std::vector<PlanarTree> usable;
    for (const PlanarTree& t : trees)
      if (!t.is_leaf() && tree_supported(t, b_src)) usable.push_back(t);
    if (!usable.empty()) {
      for (const std::vector<int>& key : all_basis_tuples(h_space, n)) {
        std::vector<SparseVec> leaves(n);
        for (int i = 0; i < n; ++i) leaves[i] = include[key[i]];
        SparseVec total;
        for (const PlanarTree& t : usable) {
          std::size_t pos = 0;
          total = sparse_sum(total, eval_tree(t, leaves, pos, b_src, r.h));
        }
        for (const auto& [idx, c] : r.p.apply_sparse(total))
          bn.add_entry(key, idx, c);
        for (const auto& [idx, c] : r.h.apply_sparse(total))
          fn.add_entry(key, idx, c);
      }
    }
    if (!bn.is_zero()) out.b_h.emplace(n, std::move(bn));
    if (!fn.is_zero()) out.f_int.emplace(n, std::move(fn));
  }
  return out;
}

AInfinityStructure finish_transfer(const std::map<int, MultiMap>& b_src,
                                   const DeformationRetract& r,
                                   int max_arity) {
  TransferResult core = transfer_core(b_src, r, max_arity);
  AInfinityStructure s;
  s.space = r.small;
  for (const auto& [n, bn] : core.b_h) {
    MultiMap mu = mu_from_b(bn, r.small.space);
    if (!mu.is_zero()) s.ops.emplace(n, std::move(mu));
  }
  RelationReport rep = check_ainfinity_relations(s, max_arity);
  if (!rep.pass)
    throw error("transferred structure fails its defining relations: " +
                rep.first_failure);
  s.checked_arity = max_arity;
  return s;
}

AInfinityMorphism finish_iota(const AInfinityStructure& source_structure,
                              const AInfinityStructure& transferred,
                              const std::map<int, MultiMap>& b_src,
                              const DeformationRetract& r, int max_arity) {
  TransferResult core = transfer_core(b_src, r, max_arity);
  AInfinityMorphism m;
  m.source = transferred;
  m.target = source_structure;

  const GradedSpace& h_space = r.small.space;
  MultiMap f1{1, 0, {}};
  for (int x = 0; x < h_space.total_dim(); ++x) {
    SparseVec v = r.i.apply_sparse({{x, Rational(1)}});
    for (const auto& [idx, c] : v) f1.add_entry({x}, idx, c);
  }
  m.components.emplace(1, std::move(f1));
  for (const auto& [n, fn] : core.f_int) {
    MultiMap pub = mu_from_b(fn, h_space);  // same suspension conversion
    if (!pub.is_zero()) m.components.emplace(n, std::move(pub));
  }
  RelationReport rep = check_morphism_relations(m, max_arity);
  if (!rep.pass)
    throw error("inclusion morphism fails its defining relations: " +
                rep.first_failure);
  m.checked_arity = max_arity;
  return m;
}

}  // namespace

AInfinityStructure transfer_ainfinity(const DgAlgebra& source,
                                      const DeformationRetract& r,
                                      int max_arity) {
  require_arity_range(max_arity);
  require_retract_matches(source.complex, r);
  std::map<int, MultiMap> b_src;
  MultiMap b2 = b_from_mu(source.product, source.complex.space);
  if (!b2.is_zero()) b_src.emplace(2, std::move(b2));
  return finish_transfer(b_src, r, max_arity);
}

AInfinityStructure transfer_ainfinity(const AInfinityStructure& source,
                                      const DeformationRetract& r,
                                      int max_arity) {
  require_arity_range(max_arity);
  require_retract_matches(source.space, r);
  return finish_transfer(suspended_ops(source), r, max_arity);
}

AInfinityMorphism build_iota_morphism(const DgAlgebra& source,
                                      const DeformationRetract& r,
                                      int max_arity) {
  require_arity_range(max_arity);
  require_retract_matches(source.complex, r);
  std::map<int, MultiMap> b_src;
  MultiMap b2 = b_from_mu(source.product, source.complex.space);
  if (!b2.is_zero()) b_src.emplace(2, std::move(b2));
  AInfinityStructure transferred = finish_transfer(b_src, r, max_arity);
  return finish_iota(dga_as_ainfinity(source), transferred, b_src, r,
                     max_arity);
}

AInfinityMorphism build_iota_morphism(const AInfinityStructure& source,
                                      const DeformationRetract& r,
                                      int max_arity) {
  require_arity_range(max_arity);
  require_retract_matches(source.space, r);
  std::map<int, MultiMap> b_src = suspended_ops(source);
  AInfinityStructure transferred = finish_transfer(b_src, r, max_arity);
  return finish_iota(source, transferred, b_src, r, max_arity);
}

namespace {

// mu_q applied to a basis subtuple (q = 1 means the differential).
SparseVec apply_mu(const AInfinityStructure& s, int q,
                   const std::vector<int>& key, int from) {
  if (q == 1) return s.space.d.apply_sparse({{key[from], Rational(1)}});
  const MultiMap* op = s.op(q);
  if (!op) return {};
  std::vector<int> sub(key.begin() + from, key.begin() + from + q);
  const SparseVec* v = op->find(sub);
  return v ? *v : SparseVec{};
}

// mu_m applied to (key[0..p), inner, key[p+q..n)) expanded over `inner`.
SparseVec apply_outer(const AInfinityStructure& s, int m,
                      const std::vector<int>& key, int p, int q,
                      const SparseVec& inner) {
  SparseVec out;
  int n = static_cast<int>(key.size());
  for (const auto& [idx, c] : inner) {
    SparseVec term;
    if (m == 1) {
      term = s.space.d.apply_sparse({{idx, Rational(1)}});
    } else {
      const MultiMap* op = s.op(m);
      if (!op) continue;
      std::vector<int> full;
      full.reserve(m);
      for (int i = 0; i < p; ++i) full.push_back(key[i]);
      full.push_back(idx);
      for (int i = p + q; i < n; ++i) full.push_back(key[i]);
      const SparseVec* v = op->find(full);
      if (!v) continue;
      term = *v;
    }
    out = sparse_sum(out, sparse_scale(term, c));
  }
  return out;
}

}  // namespace

RelationReport check_ainfinity_relations(const AInfinityStructure& s,
                                         int max_arity) {
  RelationReport rep;
  rep.checked_arity = max_arity;
  const GradedSpace& space = s.space.space;
  for (int n = 1; n <= max_arity; ++n) {
    for (const std::vector<int>& key : all_basis_tuples(space, n)) {
      SparseVec total;
      for (int p = 0; p < n; ++p)
        for (int q = 1; q <= n - p; ++q) {
          int r = n - p - q;
          SparseVec inner = apply_mu(s, q, key, p);
          if (inner.empty()) continue;
          long long koszul = 0;
          for (int i = 0; i < p; ++i) koszul += space.degree_of(key[i]);
          int sign = parity_sign(p + static_cast<long long>(q) * r +
                                 static_cast<long long>(q) * koszul);
          SparseVec term = apply_outer(s, p + 1 + r, key, p, q, inner);
          total = sparse_sum(total, sparse_scale(term, Rational(sign)));
        }
      if (!total.empty()) {
        rep.pass = false;
        rep.first_failure = "arity " + std::to_string(n) + " relation on " +
                            tuple_names(space, key);
        return rep;
      }
    }
  }
  return rep;
}

namespace {

// Suspended morphism components (degree 0) of a public morphism.
std::map<int, MultiMap> suspended_components(const AInfinityMorphism& m) {
  std::map<int, MultiMap> f;
  for (const auto& [n, comp] : m.components) {
    MultiMap t = mu_from_b(comp, m.source.space.space);
    if (!t.is_zero()) f.emplace(n, std::move(t));
  }
  return f;
}

SparseVec apply_b(const AInfinityStructure& s,
                  const std::map<int, MultiMap>& b_ops, int q,
                  const std::vector<int>& key, int from) {
  // In the suspended picture the unary operation is -d: with that choice the
  // transferred components f_n = h(tree sums), f_1 = i satisfy the relation
  // on the nose, as do identity morphisms and their composites.
  if (q == 1)
    return sparse_scale(s.space.d.apply_sparse({{key[from], Rational(1)}}),
                        Rational(-1));
  auto it = b_ops.find(q);
  if (it == b_ops.end()) return {};
  std::vector<int> sub(key.begin() + from, key.begin() + from + q);
  const SparseVec* v = it->second.find(sub);
  return v ? *v : SparseVec{};
}

SparseVec apply_f(const std::map<int, MultiMap>& f, int k,
                  const std::vector<SparseVec>& args) {
  auto it = f.find(k);
  if (it == f.end()) return {};
  return eval_multilinear(it->second, args);
}

void compositions_rec(int n, int parts, std::vector<int>& acc,
                      std::vector<std::vector<int>>& out) {
  if (parts == 1) {
    if (n >= 1) {
      acc.push_back(n);
      out.push_back(acc);
      acc.pop_back();
    }
    return;
  }
  for (int first = 1; first <= n - (parts - 1); ++first) {
    acc.push_back(first);
    compositions_rec(n - first, parts - 1, acc, out);
    acc.pop_back();
  }
}

std::vector<std::vector<int>> compositions(int n, int parts) {
  std::vector<std::vector<int>> out;
  std::vector<int> acc;
  compositions_rec(n, parts, acc, out);
  return out;
}

}  // namespace

RelationReport check_morphism_relations(const AInfinityMorphism& m,
                                        int max_arity) {
  RelationReport rep;
  rep.checked_arity = max_arity;
  const GradedSpace& src_space = m.source.space.space;
  std::map<int, MultiMap> f = suspended_components(m);
  std::map<int, MultiMap> b_src = suspended_ops(m.source);
  std::map<int, MultiMap> b_tgt = suspended_ops(m.target);

  for (int n = 1; n <= max_arity; ++n) {
    for (const std::vector<int>& key : all_basis_tuples(src_space, n)) {
      // LHS: sum over f_{p+1+r} (1^p (x) b_q (x) 1^r), with the Koszul sign
      // of moving the odd operation b_q past the first p (suspended) inputs.
      SparseVec lhs;
      for (int p = 0; p < n; ++p)
        for (int q = 1; q <= n - p; ++q) {
          int r = n - p - q;
          SparseVec inner = apply_b(m.source, b_src, q, key, p);
          if (inner.empty()) continue;
          long long koszul = 0;
          for (int i = 0; i < p; ++i)
            koszul += src_space.degree_of(key[i]) + 1;
          int sign = parity_sign(koszul);
          auto it = f.find(p + 1 + r);
          if (it == f.end()) continue;
          SparseVec term;
          for (const auto& [idx, c] : inner) {
            std::vector<int> full;
            full.reserve(p + 1 + r);
            for (int i = 0; i < p; ++i) full.push_back(key[i]);
            full.push_back(idx);
            for (int i = p + q; i < n; ++i) full.push_back(key[i]);
            const SparseVec* v = it->second.find(full);
            if (v) term = sparse_sum(term, sparse_scale(*v, c));
          }
          lhs = sparse_sum(lhs, sparse_scale(term, Rational(sign)));
        }

      // RHS: sum over b_k (f_{i_1} (x) ... (x) f_{i_k}); every f_i is even
      // in the suspended picture, so no signs appear.
      SparseVec rhs;
      for (int k = 1; k <= n; ++k)
        for (const std::vector<int>& comp : compositions(n, k)) {
          std::vector<SparseVec> args(k);
          int from = 0;
          bool dead = false;
          for (int j = 0; j < k; ++j) {
            auto it = f.find(comp[j]);
            if (it == f.end()) {
              dead = true;
              break;
            }
            std::vector<int> sub(key.begin() + from,
                                 key.begin() + from + comp[j]);
            const SparseVec* v = it->second.find(sub);
            if (!v) {
              dead = true;
              break;
            }
            args[j] = *v;
            from += comp[j];
          }
          if (dead) continue;
          SparseVec term;
          if (k == 1) {
            // Same convention as apply_b: the suspended differential is -d.
            term = sparse_scale(m.target.space.d.apply_sparse(args[0]),
                                Rational(-1));
          } else {
            auto it = b_tgt.find(k);
            if (it == b_tgt.end()) continue;
            term = eval_multilinear(it->second, args);
          }
          rhs = sparse_sum(rhs, term);
        }

      if (!(lhs == rhs)) {
        rep.pass = false;
        rep.first_failure = "morphism relation at arity " + std::to_string(n) +
                            " on " + tuple_names(src_space, key);
        return rep;
      }
    }
  }
  return rep;
}

AInfinityMorphism compose_morphisms(const AInfinityMorphism& g,
                                    const AInfinityMorphism& f,
                                    int max_arity) {
  if (!(f.target.space.space == g.source.space.space))
    throw error("compose_morphisms: middle structures do not match");
  std::map<int, MultiMap> fi = suspended_components(f);
  std::map<int, MultiMap> gi = suspended_components(g);
  int max_n = max_arity;

  const GradedSpace& src_space = f.source.space.space;
  AInfinityMorphism out;
  out.source = f.source;
  out.target = g.target;
  for (int n = 1; n <= max_n; ++n) {
    MultiMap comp_n{n, n - 1, {}};
    for (const std::vector<int>& key : all_basis_tuples(src_space, n)) {
      SparseVec total;
      for (int k = 1; k <= n; ++k)
        for (const std::vector<int>& parts : compositions(n, k)) {
          std::vector<SparseVec> args(k);
          int from = 0;
          bool dead = false;
          for (int j = 0; j < k; ++j) {
            auto it = fi.find(parts[j]);
            if (it == fi.end()) {
              dead = true;
              break;
            }
            std::vector<int> sub(key.begin() + from,
                                 key.begin() + from + parts[j]);
            const SparseVec* v = it->second.find(sub);
            if (!v) {
              dead = true;
              break;
            }
            args[j] = *v;
            from += parts[j];
          }
          if (dead) continue;
          total = sparse_sum(total, apply_f(gi, k, args));
        }
      for (const auto& [idx, c] : total) comp_n.add_entry(key, idx, c);
    }
    if (!comp_n.is_zero())
      out.components.emplace(n, mu_from_b(comp_n, src_space));
  }
  return out;
}

AInfinityMorphism identity_morphism(const AInfinityStructure& s) {
  AInfinityMorphism m;
  m.source = s;
  m.target = s;
  MultiMap f1{1, 0, {}};
  for (int x = 0; x < s.space.space.total_dim(); ++x)
    f1.add_entry({x}, x, Rational(1));
  m.components.emplace(1, std::move(f1));
  return m;
}

RelationReport check_shuffle_vanishing(const AInfinityStructure& s,
                                       int max_arity) {
  RelationReport rep;
  rep.checked_arity = max_arity;
  const GradedSpace& space = s.space.space;
  for (int n = 2; n <= max_arity; ++n) {
    const MultiMap* mu = s.op(n);
    if (!mu) continue;
    MultiMap b = b_from_mu(*mu, space);
    for (int p = 1; p < n; ++p) {
      int q = n - p;
      // Interleavings = choices of the p positions of the first block.
      std::vector<int> positions(p);
      for (int i = 0; i < p; ++i) positions[i] = i;
      for (const std::vector<int>& key : all_basis_tuples(space, n)) {
        SparseVec total;
        std::vector<int> choose(p);
        auto rec = [&](auto&& self, int idx, int start) -> void {
          if (idx == p) {
            std::vector<int> word(n, -1);
            for (int i = 0; i < p; ++i) word[choose[i]] = i;
            int second = p;
            for (int i = 0; i < n; ++i)
              if (word[i] < 0) word[i] = second++;
            // word[pos] = which original argument sits at pos
            long long exponent = 0;
            for (int a = 0; a < n; ++a)
              for (int bpos = a + 1; bpos < n; ++bpos)
                if (word[a] > word[bpos])
                  exponent += static_cast<long long>(
                                  space.degree_of(key[word[a]]) + 1) *
                              (space.degree_of(key[word[bpos]]) + 1);
            std::vector<int> permuted(n);
            for (int i = 0; i < n; ++i) permuted[i] = key[word[i]];
            const SparseVec* v = b.find(permuted);
            if (v)
              total = sparse_sum(
                  total, sparse_scale(*v, Rational(parity_sign(exponent))));
            return;
          }
          for (int posn = start; posn <= n - (p - idx); ++posn) {
            choose[idx] = posn;
            self(self, idx + 1, posn + 1);
          }
        };
        rec(rec, 0, 0);
        if (!total.empty()) {
          rep.pass = false;
          rep.first_failure = "shuffle sum (" + std::to_string(p) + "," +
                              std::to_string(q) + ") nonzero on " +
                              tuple_names(space, key);
          return rep;
        }
      }
    }
  }
  return rep;
}

int formal_through(const AInfinityStructure& s) {
  int limit = s.checked_arity;
  for (int n = 3; n <= limit; ++n) {
    const MultiMap* op = s.op(n);
    if (op && !op->is_zero()) return n - 1;
  }
  return limit;
}

std::string formality_report(const AInfinityStructure& s) {
  int through = formal_through(s);
  if (through >= s.checked_arity && s.checked_arity >= 3)
    return "higher A∞-Massey products vanish (formal through arity " +
           std::to_string(s.checked_arity) + ")";
  for (int n = 3; n <= s.checked_arity; ++n) {
    const MultiMap* op = s.op(n);
    if (op && !op->is_zero())
      return "nonformality witnessed: transferred operation of arity " +
             std::to_string(n) + " is nonzero";
  }
  return "higher operations unchecked beyond arity " +
         std::to_string(s.checked_arity);
}

}  // namespace opal
