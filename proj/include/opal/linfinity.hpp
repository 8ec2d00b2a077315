#pragma once

#include "opal/ainfinity.hpp"

namespace opal {

// L-infinity structure: graded-antisymmetric brackets ell_n (n >= 2) of
// degree n-2 with the differential as ell_1.
struct LInfinityStructure {
  ChainComplex space;
  std::map<int, MultiMap> brackets;  // n >= 2
  int checked_arity = 0;

  const MultiMap* bracket(int n) const {
    auto it = brackets.find(n);
    return it == brackets.end() ? nullptr : &it->second;
  }
};

// Symmetrizes the suspended operations over all permutations with Koszul
// signs, producing the bracket tables.  For n = 2 this is the graded
// commutator ell_2(x,y) = mu_2(x,y) - (-1)^(|x||y|) mu_2(y,x).
LInfinityStructure antisymmetrize_linfinity(const AInfinityStructure& s);

// Graded antisymmetry ell(..., y, x, ...) = -(-1)^(|x||y|) ell(..., x, y, ...)
// checked on the whole basis for one bracket table.
bool bracket_is_antisymmetric(const MultiMap& ell, const GradedSpace& space,
                              std::string* witness = nullptr);

// Generalized Jacobi relations through max_arity, exact: for every n the
// signed sum over (q, n-q)-unshuffles of ell_{n-q+1}(ell_q(...) , ...)
// vanishes.  Reports the first failing (arity, tuple).
RelationReport check_linfinity_relations(const LInfinityStructure& s,
                                         int max_arity);

}  // namespace opal
