#include "opal/koszul_dual.hpp"

#include <algorithm>

namespace opal {

int pairing_sign(const TreeMonomial& m, OperadMode mode) {
  if (m.arity() != 3 || m.weight() != 2)
    throw error("pairing_sign: expected a two-vertex binary monomial");
  bool left_comb = !m.shape.children[0].is_leaf();
  if (mode == OperadMode::ns) return left_comb ? 1 : -1;
  if (left_comb && m.labels == std::vector<int>{1, 2, 3}) return 1;
  return -1;
}

PairingTable weight2_pairing(const Presentation& p) {
  PairingTable table;
  table.basis = weight2_basis(p.gens, 3, p.mode);
  table.values = QMatrix(table.basis.size(), table.basis.size());
  for (std::size_t i = 0; i < table.basis.size(); ++i)
    table.values.at(i, i) = pairing_sign(table.basis[i], p.mode);
  return table;
}

namespace {

void require_binary_quadratic(const Presentation& p) {
  for (int i = 0; i < p.gens.size(); ++i) {
    const Generator& g = p.gens.at(i);
    if (g.arity != 2)
      throw semantic_error(
          "Koszul dual implemented for binary generators only; '" + g.name +
          "' has arity " + std::to_string(g.arity));
    if (g.degree != 0)
      throw semantic_error(
          "Koszul dual implemented for degree-0 generators only; '" + g.name +
          "' has degree " + std::to_string(g.degree));
  }
  for (const TreePolynomial& r : p.relators)
    for (const auto& [m, c] : r.terms)
      if (m.arity() != 3 || m.weight() != 2)
        throw semantic_error("Koszul dual requires quadratic relators; '" +
                             render(r, p.gens) + "' is not");
}

}  // namespace

QMatrix relator_span_matrix(const Presentation& p) {
  require_binary_quadratic(p);
  std::vector<TreeMonomial> basis = weight2_basis(p.gens, 3, p.mode);
  QMatrix rows(p.relators.size(), basis.size());
  for (std::size_t r = 0; r < p.relators.size(); ++r)
    for (const auto& [m, c] : p.relators[r].terms) {
      auto it = std::find(basis.begin(), basis.end(), m);
      if (it == basis.end()) throw error("internal: monomial outside basis");
      rows.at(r, it - basis.begin()) = c;
    }
  RrefResult red = rref(rows);
  QMatrix out(red.pivot_cols.size(), basis.size());
  for (std::size_t r = 0; r < red.pivot_cols.size(); ++r)
    for (std::size_t c = 0; c < basis.size(); ++c)
      out.at(r, c) = red.mat.at(r, c);
  return out;
}

bool same_relator_span(const Presentation& a, const Presentation& b) {
  QMatrix ma = relator_span_matrix(a);
  QMatrix mb = relator_span_matrix(b);
  if (ma.cols() != mb.cols()) return false;
  if (ma.rows() != mb.rows()) return false;
  // Row-reduced matrices of the same span are identical.
  return ma == mb;
}

Presentation koszul_dual_presentation(const Presentation& p) {
  require_binary_quadratic(p);
  Presentation dual;
  dual.name = p.name + "_dual";
  dual.mode = p.mode;
  for (int i = 0; i < p.gens.size(); ++i) {
    Generator g = p.gens.at(i);
    g.name += "'";
    if (g.symmetry == Symmetry::symmetric)
      g.symmetry = Symmetry::skew;
    else if (g.symmetry == Symmetry::skew)
      g.symmetry = Symmetry::symmetric;
    dual.gens.add(g);
  }

  std::vector<TreeMonomial> basis = weight2_basis(p.gens, 3, p.mode);
  QMatrix rows(p.relators.size(), basis.size());
  for (std::size_t r = 0; r < p.relators.size(); ++r)
    for (const auto& [m, c] : p.relators[r].terms) {
      auto it = std::find(basis.begin(), basis.end(), m);
      rows.at(r, it - basis.begin()) = c;
    }
  // R-perp under the pairing: kernel of R * D, carried over to the primed
  // generators (the dual weight-2 basis matches index by index).
  QMatrix scaled = rows;
  for (std::size_t c = 0; c < basis.size(); ++c) {
    int s = pairing_sign(basis[c], p.mode);
    if (s == -1)
      for (std::size_t r = 0; r < scaled.rows(); ++r)
        scaled.at(r, c) = -scaled.at(r, c);
  }
  QMatrix kern = kernel_basis(scaled);
  for (std::size_t k = 0; k < kern.cols(); ++k) {
    TreePolynomial relator;
    for (std::size_t c = 0; c < basis.size(); ++c)
      if (kern.at(c, k) != 0) relator.add_term(basis[c], kern.at(c, k));
    if (!relator.is_zero()) dual.relators.push_back(std::move(relator));
  }
  dual.annotations.push_back("Koszul dual of '" + p.name + "'");
  dual.annotations.push_back(
      "generators recorded in degree 0; the operadic degree shift of the "
      "dual is tracked externally, one suspension per arity");
  return dual;
}

}  // namespace opal
