#pragma once

#include <map>
#include <string>
#include <vector>

#include "opal/graded.hpp"

namespace opal {

// Outcome of an exhaustive relation check: `checked_arity` is the largest
// arity through which the relations were verified on the whole basis, and
// `first_failure` describes the first violated instance (empty when pass).
struct RelationReport {
  bool pass = true;
  int checked_arity = 0;
  std::string first_failure;
};

// Sparse coordinate vector over a space's global basis indices.
using SparseVec = std::map<int, Rational>;

void sparse_add(SparseVec& target, int index, const Rational& coeff);
SparseVec sparse_sum(const SparseVec& a, const SparseVec& b);
SparseVec sparse_scale(const SparseVec& v, const Rational& c);
bool sparse_is_zero(const SparseVec& v);

// Multilinear map given by its values on basis tuples; only nonzero values
// are stored.  `degree` is the amount by which the map shifts total degree:
// deg(f(x_1..x_k)) = deg(x_1) + ... + deg(x_k) + degree.
struct MultiMap {
  int arity = 1;
  int degree = 0;
  std::map<std::vector<int>, SparseVec> table;

  void add_entry(const std::vector<int>& key, int out, const Rational& coeff);
  const SparseVec* find(const std::vector<int>& key) const;
  bool is_zero() const;
  bool operator==(const MultiMap& other) const;
};

// Multilinear expansion over sparse arguments (no sign bookkeeping; callers
// insert Koszul signs themselves where their operands are odd).
SparseVec eval_multilinear(const MultiMap& f,
                           const std::vector<SparseVec>& args);

// Verifies that every stored entry satisfies the degree rule above; throws
// opal::error naming the first offending tuple.
void check_multimap_degree(const MultiMap& f, const GradedSpace& space);

// The degree of a basis tuple: sum of basis element degrees.
int tuple_degree(const GradedSpace& space, const std::vector<int>& key);

// All tuples of the given length over the space's global indices, in
// lexicographic order.
std::vector<std::vector<int>> all_basis_tuples(const GradedSpace& space,
                                               int length);

}  // namespace opal
