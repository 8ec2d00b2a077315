#pragma once

#include <optional>
#include <string>

#include "opal/dga.hpp"

namespace opal {

// A-infinity structure: operation tables mu_n (n >= 2) of degree n-2 on a
// complex whose differential serves as mu_1.  `checked_arity` records the
// arity through which the Stasheff relations have been verified on the whole
// basis.
struct AInfinityStructure {
  ChainComplex space;
  std::map<int, MultiMap> ops;  // n >= 2 -> mu_n
  int checked_arity = 0;

  const MultiMap* op(int n) const {
    auto it = ops.find(n);
    return it == ops.end() ? nullptr : &it->second;
  }
};

// Morphism of A-infinity structures: components f_n of degree n-1; f_1 is a
// chain map.
struct AInfinityMorphism {
  AInfinityStructure source;
  AInfinityStructure target;
  std::map<int, MultiMap> components;  // n >= 1 -> f_n
  int checked_arity = 0;

  const MultiMap* component(int n) const {
    auto it = components.find(n);
    return it == components.end() ? nullptr : &it->second;
  }
};

// Wraps a dg-algebra as an A-infinity structure (mu_2 = product, higher ops
// zero).
AInfinityStructure dga_as_ainfinity(const DgAlgebra& a);

// Sign bridging the operation tables and their suspended counterparts: the
// internal degree (-1) operations b_n and the exported mu_n satisfy
//   mu_n(x_1..x_n) = (-1)^(sum_i (n-i) |x_i|) b_n(x_1..x_n)
// (an involution; the same rule converts morphism components).
int suspension_sign(const GradedSpace& space, const std::vector<int>& key);

MultiMap mu_from_b(const MultiMap& b_table, const GradedSpace& space);
MultiMap b_from_mu(const MultiMap& mu_table, const GradedSpace& space);

// Transfers the structure across a deformation retract onto its homology,
// summing the tree formulas over all planar trees (binary trees suffice for
// a dg-algebra source).  mu_2 = p o mu_2 o (i (x) i) on the nose.  The
// Stasheff relations through max_arity are re-verified exactly before the
// result is returned; `max_arity` must lie in 2..8 (default 5).  Throws
// opal::error when the retract's big complex is not the source's complex.
AInfinityStructure transfer_ainfinity(const DgAlgebra& source,
                                      const DeformationRetract& r,
                                      int max_arity = 5);
AInfinityStructure transfer_ainfinity(const AInfinityStructure& source,
                                      const DeformationRetract& r,
                                      int max_arity = 5);

// Quasi-isomorphism from the transferred structure into the source whose
// linear part is the inclusion i; verified against the morphism relations
// through max_arity.
AInfinityMorphism build_iota_morphism(const DgAlgebra& source,
                                      const DeformationRetract& r,
                                      int max_arity = 4);
AInfinityMorphism build_iota_morphism(const AInfinityStructure& source,
                                      const DeformationRetract& r,
                                      int max_arity = 4);

// Stasheff relations with the sign convention
//   sum_{p+q+r=n} (-1)^(p+qr) mu_{p+1+r} (1^p (x) mu_q (x) 1^r) = 0,
// evaluated with Koszul signs on every basis tuple; mu_1 is the differential.
// Exact; reports the first failing (arity, tuple) if any.
RelationReport check_ainfinity_relations(const AInfinityStructure& s,
                                         int max_arity);

// Morphism compatibility through max_arity (exact, whole basis).
RelationReport check_morphism_relations(const AInfinityMorphism& m,
                                        int max_arity);

// Composition g o f with components computed through max_arity; associative,
// with the identity morphism as unit.
AInfinityMorphism compose_morphisms(const AInfinityMorphism& g,
                                    const AInfinityMorphism& f,
                                    int max_arity = 4);
AInfinityMorphism identity_morphism(const AInfinityStructure& s);

// For every split n = p+q (p,q >= 1) and every basis tuple, the signed sum
// of the suspended operations over all (p,q)-interleavings must vanish
// (satisfied by structures transferred from graded-commutative algebras).
// Reports a witness tuple on failure.
RelationReport check_shuffle_vanishing(const AInfinityStructure& s,
                                       int max_arity);

// Largest N <= checked_arity such that mu_3..mu_N all vanish (N >= 2 always
// holds vacuously), plus the human-readable verdict line.
int formal_through(const AInfinityStructure& s);
std::string formality_report(const AInfinityStructure& s);

}  // namespace opal
