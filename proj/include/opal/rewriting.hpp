#pragma once

#include <map>
#include <string>
#include <vector>

#include "opal/presentation.hpp"

namespace opal {

// Position of a parent/child pair of internal vertices inside a monomial:
// `vertex` is the parent's preorder index, `slot` the child position (0 =
// left, 1 = right for binary vertices).
struct PairPosition {
  int vertex;
  int slot;
};

// A redex: a pair position together with the rule whose leading pattern
// matches there.
struct Redex {
  int vertex;
  int slot;
  int rule;
};

// Rewriting system obtained from a binary quadratic presentation with
// degree-0 generators; construction normalizes the relators into rules
// "leading pattern -> tail" and rejects anything outside that class.
class RewriteSystem {
 public:
  explicit RewriteSystem(const Presentation& p);

  const Presentation& presentation() const { return pres_; }
  const GeneratorSet& gens() const { return pres_.gens; }
  OperadMode mode() const { return pres_.mode; }
  const std::vector<NormalizedRelator>& rules() const { return rules_; }

  // Rule index whose leading pattern equals the standardized pair pattern,
  // or -1 when the position is irreducible.
  int match_rule(const TreeMonomial& m, const PairPosition& pos) const;

  std::vector<Redex> redexes(const TreeMonomial& m) const;
  bool is_normal_form(const TreeMonomial& m) const;

 private:
  Presentation pres_;
  std::vector<NormalizedRelator> rules_;
  std::map<TreeMonomial, int> pattern_to_rule_;
};

// All parent/child pairs of internal vertices (in preorder, left slot first).
std::vector<PairPosition> adjacent_pairs(const TreeMonomial& m);

// Standardized two-vertex pattern at a pair position: the three hanging
// subtrees are replaced by leaves labeled with the ranks of their minimum
// labels.  Throws opal::error when the position does not name a pair of
// internal vertices.
TreeMonomial pair_pattern(const TreeMonomial& m, const PairPosition& pos);

// Replaces the pair at `pos` by `arrangement` (a two-vertex monomial on
// rank labels): the hanging subtree of rank r is re-attached at the leaf
// labeled r.  Shuffle-validity of the result is preserved.
TreeMonomial substitute_pair(const TreeMonomial& m, const PairPosition& pos,
                             const TreeMonomial& arrangement);

// One rewriting step applied to one monomial occurrence inside a polynomial.
TreePolynomial apply_redex(const TreePolynomial& poly, const TreeMonomial& m,
                           const Redex& r, const RewriteSystem& rs);

// All available single steps on a polynomial (per monomial, preorder).
struct PolynomialRedex {
  TreeMonomial monomial;
  Redex redex;
};
std::vector<PolynomialRedex> polynomial_redexes(const TreePolynomial& poly,
                                                const RewriteSystem& rs);

// Deterministic normal form: repeatedly rewrites the path-largest reducible
// monomial at its leftmost-outermost redex (smallest preorder vertex, left
// slot first) until no redex remains.
TreePolynomial reduce_normal_form(const TreePolynomial& poly,
                                  const RewriteSystem& rs);

// Monomials on which two rules overlap: binary three-vertex monomials whose
// two adjacent pairs are both leading patterns.  Sorted ascending in the
// path order.
std::vector<TreeMonomial> find_critical_monomials(const RewriteSystem& rs);

struct CriticalReport {
  TreeMonomial monomial;
  // One reduction sequence per initial redex; each entry is the list of
  // human-readable steps followed to a normal form.
  std::vector<std::vector<std::string>> paths;
  // Distinct normal forms reachable by exhaustive reduction.
  std::vector<TreePolynomial> normal_forms;
  bool confluent = false;
};

struct KoszulCertificate {
  std::vector<CriticalReport> critical_monomials;
  bool confluent = false;
  std::string verdict;  // "Koszul" or "NotConcluded"
};

// Exhaustively resolves every critical monomial.  The rewriting system is
// terminating, so confluence of all critical overlaps decides the verdict.
KoszulCertificate check_confluence(const RewriteSystem& rs);

// Normal-form monomials of the given arity (those avoiding every leading
// pattern).  Requires a confluent certificate; throws opal::error otherwise.
std::vector<TreeMonomial> enumerate_pbw_basis(const RewriteSystem& rs,
                                              int arity,
                                              const KoszulCertificate& cert);

// Graphviz digraph of the reduction paths recorded for one critical monomial.
std::string critical_monomial_dot(const RewriteSystem& rs,
                                  const CriticalReport& report,
                                  const std::string& graph_name);

}  // namespace opal
