#pragma once

#include "opal/graded.hpp"
#include "opal/multilinear.hpp"

namespace opal {

// Differential graded associative algebra (not assumed unital).  The
// constructor verifies on the whole basis that the product has degree 0,
// is associative, and satisfies the Leibniz rule
//   d(xy) = (dx)y + (-1)^{|x|} x (dy);
// any violation throws opal::error naming the offending basis tuple.
struct DgAlgebra {
  ChainComplex complex;
  MultiMap product;  // arity 2, degree 0

  DgAlgebra(ChainComplex complex_, MultiMap product_);

  SparseVec multiply(const SparseVec& x, const SparseVec& y) const;
  SparseVec differential(const SparseVec& x) const;
};

}  // namespace opal
