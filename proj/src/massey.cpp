#include "opal/massey.hpp"

#include "opal/matrix.hpp"

namespace opal {

namespace {

int homogeneous_degree(const GradedSpace& space, const SparseVec& v,
                       const std::string& which) {
  if (v.empty())
    throw semantic_error("class '" + which + "' is zero; Massey products need "
                         "nonzero homogeneous classes");
  int deg = space.degree_of(v.begin()->first);
  for (const auto& [i, c] : v)
    if (space.degree_of(i) != deg)
      throw semantic_error("class '" + which + "' is not homogeneous");
  return deg;
}

std::vector<Rational> dense(const SparseVec& v, int dim) {
  std::vector<Rational> out(dim, Rational(0));
  for (const auto& [i, c] : v) out[i] = c;
  return out;
}

}  // namespace

MasseyResult massey_triple(const DgAlgebra& alg, const DeformationRetract& r,
                           const SparseVec& x, const SparseVec& y,
                           const SparseVec& z) {
  const GradedSpace& h_space = r.small.space;
  if (!(r.big.space == alg.complex.space) || !(r.big.d == alg.complex.d))
    throw error("deformation retract does not match the algebra");
  int dx = homogeneous_degree(h_space, x, "x");
  int dy = homogeneous_degree(h_space, y, "y");
  int dz = homogeneous_degree(h_space, z, "z");

  SparseVec X = r.i.apply_sparse(x);
  SparseVec Y = r.i.apply_sparse(y);
  SparseVec Z = r.i.apply_sparse(z);

  SparseVec xy = alg.multiply(X, Y);
  if (!r.p.apply_sparse(xy).empty())
    throw semantic_error(
        "Massey product undefined: the product of x and y is nonzero in "
        "homology");
  SparseVec yz = alg.multiply(Y, Z);
  if (!r.p.apply_sparse(yz).empty())
    throw semantic_error(
        "Massey product undefined: the product of y and z is nonzero in "
        "homology");

  // Bounding chains via the homotopy: d a = (-1)^|x| ... chosen so that the
  // classical combination below is a cycle.
  SparseVec a = sparse_scale(r.h.apply_sparse(xy), Rational(parity_sign(dx)));
  SparseVec b = sparse_scale(r.h.apply_sparse(yz), Rational(parity_sign(dy)));

  int da = dx + dy + 1;  // degree of a
  SparseVec c = sparse_sum(
      sparse_scale(alg.multiply(X, b), Rational(parity_sign(dx))),
      sparse_scale(alg.multiply(a, Z), Rational(parity_sign(da))));

  if (!alg.differential(c).empty())
    throw error("internal: Massey representative is not a cycle");

  MasseyResult out;
  out.representative = r.p.apply_sparse(c);

  // Indeterminacy x*H_{|y|+|z|+1} + H_{|x|+|y|+1}*z, as classes.
  int hdim = h_space.total_dim();
  SpanBuilder span(hdim);
  std::vector<SparseVec> basis;
  auto feed = [&](const SparseVec& w) {
    if (w.empty()) return;
    if (span.add(dense(w, hdim))) basis.push_back(w);
  };
  for (int g = 0; g < hdim; ++g) {
    if (h_space.degree_of(g) == dy + dz + 1) {
      SparseVec w = r.p.apply_sparse(
          alg.multiply(X, r.i.apply_sparse({{g, Rational(1)}})));
      feed(w);
    }
    if (h_space.degree_of(g) == dx + dy + 1) {
      SparseVec w = r.p.apply_sparse(
          alg.multiply(r.i.apply_sparse({{g, Rational(1)}}), Z));
      feed(w);
    }
  }
  out.indeterminacy_basis = std::move(basis);

  // Transferred mu_3 on (x, y, z).
  AInfinityStructure transferred = transfer_ainfinity(alg, r, 3);
  const MultiMap* mu3 = transferred.op(3);
  if (mu3) {
    SparseVec total;
    for (const auto& [ix, cx] : x)
      for (const auto& [iy, cy] : y)
        for (const auto& [iz, cz] : z) {
          const SparseVec* v = mu3->find({ix, iy, iz});
          if (v) total = sparse_sum(total, sparse_scale(*v, cx * cy * cz));
        }
    out.mu3_class = std::move(total);
  }

  out.alignment_sign = parity_sign(dy);

  auto in_indeterminacy = [&](const SparseVec& w) {
    return span.contains(dense(w, hdim));
  };
  SparseVec diff_plain = sparse_sum(out.mu3_class,
                                    sparse_scale(out.representative, Rational(-1)));
  SparseVec diff_aligned = sparse_sum(
      out.mu3_class,
      sparse_scale(out.representative, Rational(-out.alignment_sign)));
  out.mu3_in_coset = in_indeterminacy(diff_plain);
  out.mu3_in_coset_aligned = in_indeterminacy(diff_aligned);
  return out;
}

MasseyResult massey_triple(const DgAlgebra& alg, const SparseVec& x,
                           const SparseVec& y, const SparseVec& z) {
  DeformationRetract r = deformation_retract(alg.complex);
  return massey_triple(alg, r, x, y, z);
}

}  // namespace opal
