#pragma once

#include <map>
#include <string>
#include <vector>

#include "opal/matrix.hpp"
#include "opal/rational.hpp"

namespace opal {

// Finite-dimensional Z-graded vector space with named basis elements.
// Basis elements carry a global index (degrees ascending, then position
// within the degree) used by all vector/matrix representations.
class GradedSpace {
 public:
  GradedSpace() = default;
  explicit GradedSpace(std::map<int, std::vector<std::string>> components);

  const std::map<int, std::vector<std::string>>& components() const {
    return components_;
  }
  int dim(int degree) const;
  int total_dim() const { return static_cast<int>(flat_.size()); }
  int degree_of(int global_index) const;
  const std::string& name_of(int global_index) const;
  // Global index for the pos-th basis element of the given degree.
  int global_index(int degree, int pos) const;
  // Global index by name, or -1 when absent.
  int find(const std::string& name) const;

  bool operator==(const GradedSpace& other) const {
    return components_ == other.components_;
  }

 private:
  std::map<int, std::vector<std::string>> components_;
  std::vector<std::pair<int, int>> flat_;      // global index -> (degree, pos)
  std::map<int, int> degree_offset_;           // degree -> first global index
  std::map<std::string, int> name_to_index_;
};

// Degree-homogeneous linear map between graded spaces, stored as one block
// per source degree n (a dim(target, n+degree) x dim(source, n) matrix).
class LinearMap {
 public:
  LinearMap() = default;
  LinearMap(GradedSpace source, GradedSpace target, int degree);

  const GradedSpace& source() const { return source_; }
  const GradedSpace& target() const { return target_; }
  int degree() const { return degree_; }

  const QMatrix& block(int source_degree) const;
  QMatrix& block(int source_degree);

  // Entry manipulation by global indices; degrees must be compatible.
  void set_entry(int target_global, int source_global, const Rational& value);
  Rational entry(int target_global, int source_global) const;

  // Applies to a coordinate vector over the source's global basis.
  std::vector<Rational> apply(const std::vector<Rational>& v) const;
  std::map<int, Rational> apply_sparse(const std::map<int, Rational>& v) const;

  LinearMap compose(const LinearMap& first) const;  // (*this) after first
  LinearMap operator+(const LinearMap& other) const;
  LinearMap operator-(const LinearMap& other) const;
  LinearMap operator*(const Rational& scalar) const;
  bool operator==(const LinearMap& other) const;
  bool is_zero() const;

  static LinearMap identity(const GradedSpace& space);

 private:
  void check_compatible(const LinearMap& other) const;

  GradedSpace source_;
  GradedSpace target_;
  int degree_ = 0;
  mutable std::map<int, QMatrix> blocks_;  // created on demand, zero-filled
};

// Chain complex with differential of degree -1; d*d = 0 is checked at
// construction and a violation throws opal::error.
struct ChainComplex {
  GradedSpace space;
  LinearMap d;

  ChainComplex() = default;
  ChainComplex(GradedSpace space_, LinearMap d_);
};

// Per-degree output of homology_decomposition: columns of each matrix are
// coordinate vectors over the degree-n basis of the ambient space.
struct DegreeSplit {
  QMatrix boundaries;      // basis of B_n = im(d_{n+1})
  QMatrix homology_reps;   // cycles extending B_n to a basis of Z_n
  QMatrix boundary_lifts;  // basis of a complement L_n with d(L_n) = B_{n-1}
};

struct HomologyDecomposition {
  std::map<int, DegreeSplit> split;  // keyed by degree; only nonzero degrees
  int homology_dim(int degree) const;
};

// Deterministic decomposition A_n = B_n + H_n + L_n for every degree with
// content.  Pivot choices always prefer the lowest basis index.
HomologyDecomposition homology_decomposition(const ChainComplex& complex);

// Deformation retract of a complex onto its homology (zero differential),
// with side conditions h*i = 0, p*h = 0, h*h = 0.
struct DeformationRetract {
  ChainComplex big;
  ChainComplex small;  // zero differential
  LinearMap i;         // small -> big, degree 0
  LinearMap p;         // big -> small, degree 0
  LinearMap h;         // big -> big, degree +1
};

// Builds the retract from homology_decomposition; all five identities
// (p i = 1, 1 - i p = d h + h d, h i = 0, p h = 0, h h = 0) are verified
// before returning and a violation throws opal::error.
DeformationRetract deformation_retract(const ChainComplex& complex);

// Names for homology basis elements: h<degree>_<position>.
std::string homology_class_name(int degree, int position);

}  // namespace opal
