#pragma once

#include <map>
#include <string>
#include <vector>

#include "opal/rational.hpp"
#include "opal/trees.hpp"

namespace opal {

enum class OperadMode { ns, shuffle };

enum class Symmetry { none, symmetric, skew };

struct Generator {
  std::string name;
  int arity = 2;
  int degree = 0;
  Symmetry symmetry = Symmetry::none;  // meaningful in shuffle mode only
};

// Ordered list of generators; the position is the generator id used in tree
// decorations and in the path order.
class GeneratorSet {
 public:
  int add(const Generator& g);
  int size() const { return static_cast<int>(gens_.size()); }
  const Generator& at(int id) const { return gens_.at(id); }
  int find(const std::string& name) const;  // -1 when absent

 private:
  std::vector<Generator> gens_;
};

// Basis element of the free operad: a planar tree whose internal vertices are
// decorated by generators (in depth-first preorder) and whose leaves are
// labeled (identity labels in ns mode, shuffle labels in shuffle mode).
struct TreeMonomial {
  PlanarTree shape;
  std::vector<int> labels;  // planar order
  std::vector<int> gens;    // generator ids, preorder

  int arity() const { return static_cast<int>(labels.size()); }
  int weight() const { return static_cast<int>(gens.size()); }
  int total_degree(const GeneratorSet& gs) const;
};

bool operator==(const TreeMonomial& a, const TreeMonomial& b);
bool operator<(const TreeMonomial& a, const TreeMonomial& b);  // structural

// Finite linear combination of tree monomials.
struct TreePolynomial {
  std::map<TreeMonomial, Rational> terms;

  void add_term(const TreeMonomial& m, const Rational& c);
  TreePolynomial operator+(const TreePolynomial& o) const;
  TreePolynomial operator-(const TreePolynomial& o) const;
  TreePolynomial operator*(const Rational& scalar) const;
  bool operator==(const TreePolynomial& o) const { return terms == o.terms; }
  bool is_zero() const { return terms.empty(); }

  static TreePolynomial monomial(const TreeMonomial& m,
                                 const Rational& c = Rational(1));
};

// Corolla: single vertex decorated by generator `gen_id`.
TreeMonomial corolla(const GeneratorSet& gs, int gen_id);

// Partial composition f o_i g at input slot i (1-based; in shuffle mode the
// slot is the leaf LABEL).  The Koszul sign is (-1)^(|g| * s) where s is the
// sum of the degrees of the f-vertices that come after the insertion point in
// depth-first preorder.  Throws opal::error on out-of-range slots.
TreeMonomial compose_monomial(const TreeMonomial& f, int slot,
                              const TreeMonomial& g, const GeneratorSet& gs,
                              int* sign_out);

// Bilinear extension with Koszul signs.
TreePolynomial partial_compose(const TreePolynomial& f, int slot,
                               const TreePolynomial& g, const GeneratorSet& gs);

// Path order extended to decorated monomials: letters are generator ids.
int compare_monomials(const TreeMonomial& a, const TreeMonomial& b);

// All two-vertex monomials of the given arity, sorted ascending by
// compare_monomials.
std::vector<TreeMonomial> weight2_basis(const GeneratorSet& gs, int arity,
                                        OperadMode mode);

std::string render(const TreeMonomial& m, const GeneratorSet& gs);
std::string render(const TreePolynomial& p, const GeneratorSet& gs);
std::string render_dot(const TreeMonomial& m, const GeneratorSet& gs,
                       const std::string& graph_name);

}  // namespace opal
