#include "opal/linfinity.hpp"

#include <algorithm>

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

// Koszul sign (at suspended degrees) of rearranging the tuple so that
// position i holds original argument word[i].
int arrangement_sign(const GradedSpace& space, const std::vector<int>& key,
                     const std::vector<int>& word) {
  long long e = 0;
  int n = static_cast<int>(word.size());
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b)
      if (word[a] > word[b])
        e += static_cast<long long>(space.degree_of(key[word[a]]) + 1) *
             (space.degree_of(key[word[b]]) + 1);
  return parity_sign(e);
}

}  // namespace

LInfinityStructure antisymmetrize_linfinity(const AInfinityStructure& s) {
  LInfinityStructure out;
  out.space = s.space;
  const GradedSpace& space = s.space.space;
  for (const auto& [n, mu] : s.ops) {
    MultiMap b = b_from_mu(mu, space);
    MultiMap beta{n, n - 2, {}};
    std::vector<int> word(n);
    for (int i = 0; i < n; ++i) word[i] = i;
    for (const std::vector<int>& key : all_basis_tuples(space, n)) {
      SparseVec total;
      std::vector<int> w = word;
      do {
        std::vector<int> permuted(n);
        for (int i = 0; i < n; ++i) permuted[i] = key[w[i]];
        const SparseVec* v = b.find(permuted);
        if (v)
          total = sparse_sum(
              total,
              sparse_scale(*v, Rational(arrangement_sign(space, key, w))));
      } while (std::next_permutation(w.begin(), w.end()));
      for (const auto& [idx, c] : total) beta.add_entry(key, idx, c);
    }
    MultiMap ell = mu_from_b(beta, space);
    if (!ell.is_zero()) out.brackets.emplace(n, std::move(ell));
  }
  return out;
}

bool bracket_is_antisymmetric(const MultiMap& ell, const GradedSpace& space,
                              std::string* witness) {
  int n = ell.arity;
  for (const std::vector<int>& key : all_basis_tuples(space, n)) {
    const SparseVec* base = ell.find(key);
    SparseVec base_v = base ? *base : SparseVec{};
    for (int k = 0; k + 1 < n; ++k) {
      std::vector<int> swapped = key;
      std::swap(swapped[k], swapped[k + 1]);
      const SparseVec* other = ell.find(swapped);
      SparseVec other_v = other ? *other : SparseVec{};
      int sign =
          -parity_sign(static_cast<long long>(space.degree_of(key[k])) *
                       space.degree_of(key[k + 1]));
      if (!(base_v == sparse_scale(other_v, Rational(sign)))) {
        if (witness)
          *witness = "antisymmetry fails at arity " + std::to_string(n) +
                     " on " + tuple_names(space, key) + " (positions " +
                     std::to_string(k + 1) + "," + std::to_string(k + 2) + ")";
        return false;
      }
    }
  }
  return true;
}

RelationReport check_linfinity_relations(const LInfinityStructure& s,
                                         int max_arity) {
  RelationReport rep;
  rep.checked_arity = max_arity;
  const GradedSpace& space = s.space.space;

  std::map<int, MultiMap> beta;
  for (const auto& [n, ell] : s.brackets) {
    MultiMap b = b_from_mu(ell, space);
    if (!b.is_zero()) beta.emplace(n, std::move(b));
  }
  auto apply_beta = [&](int q, const std::vector<int>& key) -> SparseVec {
    if (q == 1) return s.space.d.apply_sparse({{key[0], Rational(1)}});
    auto it = beta.find(q);
    if (it == beta.end()) return {};
    const SparseVec* v = it->second.find(key);
    return v ? *v : SparseVec{};
  };

  for (int n = 1; n <= max_arity; ++n) {
    for (const std::vector<int>& key : all_basis_tuples(space, n)) {
      SparseVec total;
      for (int q = 1; q <= n; ++q) {
        int outer = n - q + 1;
        // (q, n-q)-unshuffles: ascending choice of the first block.
        std::vector<int> choose(q);
        auto rec = [&](auto&& self, int idx, int start) -> void {
          if (idx == q) {
            std::vector<int> word;
            word.reserve(n);
            std::vector<bool> used(n, false);
            for (int c : choose) {
              word.push_back(c);
              used[c] = true;
            }
            for (int i = 0; i < n; ++i)
              if (!used[i]) word.push_back(i);
            int eps = arrangement_sign(space, key, word);
            std::vector<int> inner_key(q);
            for (int i = 0; i < q; ++i) inner_key[i] = key[word[i]];
            SparseVec inner = apply_beta(q, inner_key);
            if (inner.empty()) return;
            SparseVec term;
            for (const auto& [idx2, c2] : inner) {
              SparseVec part;
              if (outer == 1) {
                part = s.space.d.apply_sparse({{idx2, Rational(1)}});
              } else {
                auto it = beta.find(outer);
                if (it == beta.end()) continue;
                std::vector<int> outer_key;
                outer_key.reserve(outer);
                outer_key.push_back(idx2);
                for (int i = q; i < n; ++i) outer_key.push_back(key[word[i]]);
                const SparseVec* v = it->second.find(outer_key);
                if (!v) continue;
                part = *v;
              }
              term = sparse_sum(term, sparse_scale(part, c2));
            }
            total = sparse_sum(total, sparse_scale(term, Rational(eps)));
            return;
          }
          for (int c = start; c <= n - (q - idx); ++c) {
            choose[idx] = c;
            self(self, idx + 1, c + 1);
          }
        };
        rec(rec, 0, 0);
      }
      if (!total.empty()) {
        rep.pass = false;
        rep.first_failure = "generalized Jacobi fails at arity " +
                            std::to_string(n) + " on " +
                            tuple_names(space, key);
        return rep;
      }
    }
  }
  return rep;
}

}  // namespace opal
