#pragma once

#include "opal/matrix.hpp"
#include "opal/presentation.hpp"

namespace opal {

// Pairing between the arity-3 weight-2 component of the free operad on the
// generators and the matching component on the dual generators.  With both
// sides listed in the same path order the pairing is diagonal with entries
// +/-1, hence perfect.
struct PairingTable {
  std::vector<TreeMonomial> basis;  // ascending path order
  QMatrix values;                   // diagonal sign matrix
};

// Sign of a two-vertex binary monomial in the pairing: ns mode pairs the
// left-comb with +1 and the right-comb with -1; shuffle mode pairs the
// left-comb on labels (1,2),3 with +1 and the other two shapes with -1.
int pairing_sign(const TreeMonomial& m, OperadMode mode);

PairingTable weight2_pairing(const Presentation& p);

// Koszul dual of a binary quadratic presentation with degree-0 generators:
// dual generators are primed copies with symmetric/skew swapped, and the dual
// relator space is the annihilator of the relator space under the pairing.
// Throws opal::semantic_error with a diagnostic for non-binary, graded, or
// non-quadratic input.
Presentation koszul_dual_presentation(const Presentation& p);

// Coordinates of the relator span inside the arity-3 weight-2 component;
// rows are row-reduced (deterministic).
QMatrix relator_span_matrix(const Presentation& p);

// Do two presentations over generator sets with matching ids span the same
// relator subspace?
bool same_relator_span(const Presentation& a, const Presentation& b);

}  // namespace opal
