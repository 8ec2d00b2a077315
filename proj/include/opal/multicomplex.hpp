#pragma once

#include "opal/graded.hpp"
#include "opal/multilinear.hpp"

namespace opal {

// Multicomplex: a bigraded space (column, row) with total grading col+row,
// an ambient differential d of bidegree (0,-1), and higher operators d_n of
// bidegree (-n, n-1) (n >= 1; every operator has total degree -1) subject to
//   d d_n + (-1)^n d_n d = sum_{i+j=n, i,j>=1} (-1)^i d_i d_j.
struct Multicomplex {
  GradedSpace space;                          // graded by total degree
  std::vector<std::pair<int, int>> bidegree;  // (col, row) per global index
  LinearMap d;                                // ambient differential
  std::map<int, LinearMap> ops;               // n >= 1 -> d_n

  int column_of(int g) const { return bidegree.at(g).first; }
  int row_of(int g) const { return bidegree.at(g).second; }
  const LinearMap* op(int n) const {
    auto it = ops.find(n);
    return it == ops.end() ? nullptr : &it->second;
  }
};

// Builds a multicomplex from a bicomplex (d of bidegree (0,-1), delta of
// bidegree (-1,0), d^2 = delta^2 = d delta + delta d = 0): the sole higher
// operator is d_1 = (-1)^row delta, which squares to zero and commutes with
// d in the signed sense required above.  All conditions are verified; a
// violation throws opal::error.
Multicomplex make_bicomplex(GradedSpace space,
                            std::vector<std::pair<int, int>> bidegree,
                            LinearMap d, LinearMap delta);

// Verifies bidegree homogeneity of all operators and the defining relations
// for every n up to twice the largest stored operator index.
RelationReport check_multicomplex_relations(const Multicomplex& m);

// Recovers delta from the stored d_1 (inverts the (-1)^row twist).
LinearMap untwisted_delta(const Multicomplex& m);

// Transfers a bicomplex-type multicomplex (only d_1 present) across a
// deformation retract of (space, d): the transferred operators are
//   d_n = sign * p (delta h)^(n-1) delta i,
// with the sign depending on n and the row, chosen so the defining relations
// hold exactly (verified before returning).  Rows/columns of the homology
// basis are inherited from representatives, which are bihomogeneous by
// construction.
Multicomplex transfer_multicomplex(const Multicomplex& m,
                                   const DeformationRetract& r);

}  // namespace opal
