#pragma once

#include <string>
#include <vector>

#include "opal/free_operad.hpp"

namespace opal {

// Operad presentation by generators and homogeneous tree relators.
struct Presentation {
  std::string name;
  OperadMode mode = OperadMode::ns;
  GeneratorSet gens;
  std::vector<TreePolynomial> relators;
  // Free-form annotation lines carried into serialized output as comments
  // (used e.g. to record the degree shift attached to a dual presentation).
  std::vector<std::string> annotations;
};

// Parses the textual DSL:
//   operad NAME {
//     mode ns;                # or: mode shuffle;
//     generator m : arity 2;  # optional ", degree INT", ", symmetric|skew"
//     relation m(m(1,2),3) - m(1,m(2,3));
//   }
// Lines starting with '#' (or trailing '#' remarks) are comments.  Lexical
// and grammatical problems throw opal::parse_error with line/column;
// violations of symbol rules (unknown generator, arity mismatch, bad leaf
// labels, inhomogeneous relator) throw opal::semantic_error naming the
// offending relator or generator.
Presentation parse_presentation(const std::string& text);

// Parses a single tree polynomial such as "m(m(1,2),3) - 2*m(1,m(2,3))"
// against an existing generator set; all terms must share one arity, which is
// stored in *arity_out when non-null.
TreePolynomial parse_tree_polynomial(const std::string& text,
                                     const GeneratorSet& gens, OperadMode mode,
                                     int* arity_out);

// Round-trippable textual form of a presentation.
std::string serialize_presentation(const Presentation& p);

// Relator reduced so its leading monomial is monic and absent from every
// other relator's support: "leading = tail" as a rewrite-ready pair.
struct NormalizedRelator {
  TreeMonomial leading;
  TreePolynomial tail;  // leading - tail is in the relator span

  TreePolynomial as_polynomial() const {
    return TreePolynomial::monomial(leading) - tail;
  }
};

// Row-reduces the relators (grouped by arity and weight) against the path
// order: output leading monomials are distinct, monic, and do not appear in
// any tail; the linear span is preserved and the operation is idempotent.
// `dropped` (optional) receives the number of dependent relators removed.
std::vector<NormalizedRelator> normalize_relators(const Presentation& p,
                                                  int* dropped = nullptr);

// Built-in presentations: "As", "Com", "Lie", "modified-As".
Presentation preset_presentation(const std::string& name);
std::vector<std::string> preset_names();

}  // namespace opal
