#pragma once

#include "opal/ainfinity.hpp"

namespace opal {

// Triple Massey product data for homology classes x, y, z of a dg-algebra
// with xy = 0 = yz on homology.
struct MasseyResult {
  SparseVec representative;   // class of the classical representative, in H
  std::vector<SparseVec> indeterminacy_basis;  // basis of xH + Hz (in H)
  SparseVec mu3_class;        // transferred mu_3(x, y, z)
  int alignment_sign = 1;     // mu_3 = alignment_sign * representative mod indet
  bool mu3_in_coset = false;          // mu3 - representative in indeterminacy
  bool mu3_in_coset_aligned = false;  // mu3 - sign*representative in indet
};

// Computes the classical triple product <x, y, z>:
//   a = (-1)^|x| h(XY), b = (-1)^|y| h(YZ),
//   c = (-1)^|x| X b + (-1)^{|x|+|y|+1} a Z,
// where X = i(x) etc.; c is checked to be a cycle and its class is returned
// together with the indeterminacy x H_{|y|+|z|+1} + H_{|x|+|y|+1} z and the
// comparison against the transferred mu_3.  Classes must be homogeneous;
// violated preconditions (xy != 0 or yz != 0 in homology) throw
// opal::semantic_error naming the offending product.
MasseyResult massey_triple(const DgAlgebra& alg, const DeformationRetract& r,
                           const SparseVec& x, const SparseVec& y,
                           const SparseVec& z);

// Convenience overload building the canonical retract internally.
MasseyResult massey_triple(const DgAlgebra& alg, const SparseVec& x,
                           const SparseVec& y, const SparseVec& z);

}  // namespace opal
