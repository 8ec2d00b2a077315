#include "opal/dga.hpp"

namespace opal {

DgAlgebra::DgAlgebra(ChainComplex complex_, MultiMap product_)
    : complex(std::move(complex_)), product(std::move(product_)) {
  if (product.arity != 2 || product.degree != 0)
    throw error("dga product must be binary of degree 0");
  check_multimap_degree(product, complex.space);

  const GradedSpace& space = complex.space;
  int n = space.total_dim();
  auto basis_vec = [](int i) { return SparseVec{{i, Rational(1)}}; };

  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y) {
      // Leibniz rule on the pair (x, y).
      SparseVec lhs = differential(multiply(basis_vec(x), basis_vec(y)));
      SparseVec rhs = multiply(differential(basis_vec(x)), basis_vec(y));
      SparseVec t = multiply(basis_vec(x), differential(basis_vec(y)));
      rhs = sparse_sum(rhs, sparse_scale(t, parity_sign(space.degree_of(x))));
      if (!(lhs == rhs))
        throw error("Leibniz rule fails on (" + space.name_of(x) + ", " +
                    space.name_of(y) + ")");
      for (int z = 0; z < n; ++z) {
        SparseVec left = multiply(multiply(basis_vec(x), basis_vec(y)),
                                  basis_vec(z));
        SparseVec right = multiply(basis_vec(x),
                                   multiply(basis_vec(y), basis_vec(z)));
        if (!(left == right))
          throw error("associativity fails on (" + space.name_of(x) + ", " +
                      space.name_of(y) + ", " + space.name_of(z) + ")");
      }
    }
}

SparseVec DgAlgebra::multiply(const SparseVec& x, const SparseVec& y) const {
  return eval_multilinear(product, {x, y});
}

SparseVec DgAlgebra::differential(const SparseVec& x) const {
  return complex.d.apply_sparse(x);
}

}  // namespace opal
