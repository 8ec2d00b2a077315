#include "opal/graded.hpp"

#include <algorithm>

namespace opal {

GradedSpace::GradedSpace(std::map<int, std::vector<std::string>> components)
    : components_(std::move(components)) {
  for (auto it = components_.begin(); it != components_.end();) {
    if (it->second.empty())
      it = components_.erase(it);
    else
      ++it;
  }
  int next = 0;
  for (const auto& [degree, names] : components_) {
    degree_offset_[degree] = next;
    for (int pos = 0; pos < static_cast<int>(names.size()); ++pos) {
      const std::string& name = names[pos];
      if (name.empty()) throw semantic_error("empty basis name");
      if (!name_to_index_.emplace(name, next).second)
        throw semantic_error("duplicate basis name '" + name + "'");
      flat_.emplace_back(degree, pos);
      ++next;
    }
  }
}

int GradedSpace::dim(int degree) const {
  auto it = components_.find(degree);
  return it == components_.end() ? 0 : static_cast<int>(it->second.size());
}

int GradedSpace::degree_of(int global_index) const {
  return flat_.at(global_index).first;
}

const std::string& GradedSpace::name_of(int global_index) const {
  auto [degree, pos] = flat_.at(global_index);
  return components_.at(degree)[pos];
}

int GradedSpace::global_index(int degree, int pos) const {
  if (pos < 0 || pos >= dim(degree))
    throw error("basis position out of range");
  return degree_offset_.at(degree) + pos;
}

int GradedSpace::find(const std::string& name) const {
  auto it = name_to_index_.find(name);
  return it == name_to_index_.end() ? -1 : it->second;
}

LinearMap::LinearMap(GradedSpace source, GradedSpace target, int degree)
    : source_(std::move(source)), target_(std::move(target)), degree_(degree) {}

const QMatrix& LinearMap::block(int source_degree) const {
  auto it = blocks_.find(source_degree);
  if (it == blocks_.end()) {
    QMatrix zero(static_cast<std::size_t>(target_.dim(source_degree + degree_)),
                 static_cast<std::size_t>(source_.dim(source_degree)));
    it = blocks_.emplace(source_degree, std::move(zero)).first;
  }
  return it->second;
}

QMatrix& LinearMap::block(int source_degree) {
  return const_cast<QMatrix&>(
      static_cast<const LinearMap*>(this)->block(source_degree));
}

void LinearMap::set_entry(int target_global, int source_global,
                          const Rational& value) {
  int sd = source_.degree_of(source_global);
  int td = target_.degree_of(target_global);
  if (td != sd + degree_)
    throw semantic_error("map entry violates declared degree");
  int spos = source_global - source_.global_index(sd, 0);
  int tpos = target_global - target_.global_index(td, 0);
  block(sd).at(tpos, spos) = value;
}

Rational LinearMap::entry(int target_global, int source_global) const {
  int sd = source_.degree_of(source_global);
  int td = target_.degree_of(target_global);
  if (td != sd + degree_) return Rational(0);
  auto it = blocks_.find(sd);
  if (it == blocks_.end()) return Rational(0);
  int spos = source_global - source_.global_index(sd, 0);
  int tpos = target_global - target_.global_index(td, 0);
  return it->second.at(tpos, spos);
}

std::vector<Rational> LinearMap::apply(const std::vector<Rational>& v) const {
  if (static_cast<int>(v.size()) != source_.total_dim())
    throw error("apply length mismatch");
  std::vector<Rational> out(target_.total_dim(), Rational(0));
  for (const auto& [sd, blk] : blocks_) {
    if (blk.rows() == 0 || blk.cols() == 0) continue;
    int s0 = source_.global_index(sd, 0);
    int t0 = target_.global_index(sd + degree_, 0);
    for (std::size_t c = 0; c < blk.cols(); ++c) {
      const Rational& coeff = v[s0 + c];
      if (coeff == 0) continue;
      for (std::size_t r = 0; r < blk.rows(); ++r)
        if (blk.at(r, c) != 0) out[t0 + r] += blk.at(r, c) * coeff;
    }
  }
  return out;
}

std::map<int, Rational> LinearMap::apply_sparse(
    const std::map<int, Rational>& v) const {
  std::map<int, Rational> out;
  for (const auto& [g, coeff] : v) {
    if (coeff == 0) continue;
    int sd = source_.degree_of(g);
    auto it = blocks_.find(sd);
    if (it == blocks_.end()) continue;
    const QMatrix& blk = it->second;
    if (blk.rows() == 0) continue;
    int spos = g - source_.global_index(sd, 0);
    int t0 = target_.global_index(sd + degree_, 0);
    for (std::size_t r = 0; r < blk.rows(); ++r) {
      const Rational& e = blk.at(r, spos);
      if (e == 0) continue;
      Rational& slot = out[t0 + static_cast<int>(r)];
      slot += e * coeff;
      if (slot == 0) out.erase(t0 + static_cast<int>(r));
    }
  }
  return out;
}

LinearMap LinearMap::compose(const LinearMap& first) const {
  if (!(first.target_ == source_))
    throw error("compose: inner target differs from outer source");
  LinearMap out(first.source_, target_, degree_ + first.degree_);
  for (const auto& [sd, fblk] : first.blocks_) {
    if (fblk.rows() == 0 || fblk.cols() == 0) continue;
    const QMatrix& gblk = block(sd + first.degree_);
    if (gblk.rows() == 0) continue;
    out.block(sd) = gblk * fblk;
  }
  return out;
}

void LinearMap::check_compatible(const LinearMap& other) const {
  if (!(source_ == other.source_) || !(target_ == other.target_) ||
      degree_ != other.degree_)
    throw error("linear map shape mismatch");
}

LinearMap LinearMap::operator+(const LinearMap& other) const {
  check_compatible(other);
  LinearMap out(source_, target_, degree_);
  for (const auto& [sd, blk] : blocks_) out.block(sd) = blk;
  for (const auto& [sd, blk] : other.blocks_) {
    if (blk.rows() == 0 || blk.cols() == 0) continue;
    out.block(sd) = out.block(sd) + blk;
  }
  return out;
}

LinearMap LinearMap::operator-(const LinearMap& other) const {
  return *this + other * Rational(-1);
}

LinearMap LinearMap::operator*(const Rational& scalar) const {
  LinearMap out(source_, target_, degree_);
  for (const auto& [sd, blk] : blocks_) out.block(sd) = blk * scalar;
  return out;
}

bool LinearMap::operator==(const LinearMap& other) const {
  if (!(source_ == other.source_) || !(target_ == other.target_) ||
      degree_ != other.degree_)
    return false;
  auto keys = [](const std::map<int, QMatrix>& m) {
    std::vector<int> k;
    for (const auto& [d, _] : m) k.push_back(d);
    return k;
  };
  std::vector<int> all = keys(blocks_);
  for (int k : keys(other.blocks_)) all.push_back(k);
  std::sort(all.begin(), all.end());
  all.erase(std::unique(all.begin(), all.end()), all.end());
  for (int sd : all)
    if (!(block(sd) == other.block(sd))) return false;
  return true;
}

bool LinearMap::is_zero() const {
  return std::all_of(blocks_.begin(), blocks_.end(),
                     [](const auto& kv) { return kv.second.is_zero(); });
}

LinearMap LinearMap::identity(const GradedSpace& space) {
  LinearMap id(space, space, 0);
  for (const auto& [degree, names] : space.components())
    id.block(degree) = QMatrix::identity(names.size());
  return id;
}

ChainComplex::ChainComplex(GradedSpace space_, LinearMap d_)
    : space(std::move(space_)), d(std::move(d_)) {
  if (!(d.source() == space) || !(d.target() == space))
    throw error("differential not an endomorphism of the space");
  if (d.degree() != -1) throw error("differential must have degree -1");
  if (!d.compose(d).is_zero())
    throw error("differential does not square to zero");
}

int HomologyDecomposition::homology_dim(int degree) const {
  auto it = split.find(degree);
  return it == split.end()
             ? 0
             : static_cast<int>(it->second.homology_reps.cols());
}

HomologyDecomposition homology_decomposition(const ChainComplex& complex) {
  HomologyDecomposition out;
  for (const auto& [n, names] : complex.space.components()) {
    std::size_t dim_n = names.size();
    const QMatrix& d_n = complex.d.block(n);
    const QMatrix& d_np1 = complex.d.block(n + 1);

    DegreeSplit split;
    split.boundaries = column_space_basis(d_np1);
    QMatrix cycles = kernel_basis(d_n);

    SpanBuilder span(dim_n);
    for (std::size_t c = 0; c < split.boundaries.cols(); ++c)
      span.add(split.boundaries.column(c));
    std::vector<std::vector<Rational>> reps;
    for (std::size_t c = 0; c < cycles.cols(); ++c) {
      std::vector<Rational> v = cycles.column(c);
      if (span.add(v)) reps.push_back(std::move(v));
    }
    split.homology_reps = QMatrix(dim_n, reps.size());
    for (std::size_t c = 0; c < reps.size(); ++c)
      split.homology_reps.set_column(c, reps[c]);

    std::vector<std::size_t> pivots = rref(d_n).pivot_cols;
    split.boundary_lifts = QMatrix(dim_n, pivots.size());
    for (std::size_t c = 0; c < pivots.size(); ++c)
      split.boundary_lifts.at(pivots[c], c) = 1;

    if (split.boundaries.cols() + split.homology_reps.cols() +
            split.boundary_lifts.cols() !=
        dim_n)
      throw error("internal: degree split dimensions do not add up");
    out.split[n] = std::move(split);
  }
  return out;
}

std::string homology_class_name(int degree, int position) {
  return "h" + std::to_string(degree) + "_" + std::to_string(position);
}

DeformationRetract deformation_retract(const ChainComplex& complex) {
  HomologyDecomposition dec = homology_decomposition(complex);

  std::map<int, std::vector<std::string>> h_names;
  for (const auto& [n, split] : dec.split) {
    std::size_t hdim = split.homology_reps.cols();
    for (std::size_t k = 0; k < hdim; ++k)
      h_names[n].push_back(homology_class_name(n, static_cast<int>(k)));
  }
  GradedSpace small(h_names);

  DeformationRetract r;
  r.big = complex;
  r.small = ChainComplex(small, LinearMap(small, small, -1));
  r.i = LinearMap(small, complex.space, 0);
  r.p = LinearMap(complex.space, small, 0);
  r.h = LinearMap(complex.space, complex.space, +1);

  for (const auto& [n, split] : dec.split) {
    std::size_t dim_n = complex.space.dim(n);
    std::size_t nb = split.boundaries.cols();
    std::size_t nh = split.homology_reps.cols();

    if (nh > 0) r.i.block(n) = split.homology_reps;

    // Change of basis [B | H | L]; p reads off the H-coordinates and h reads
    // off the B-coordinates before lifting them through d.
    QMatrix m =
        split.boundaries.augment(split.homology_reps).augment(split.boundary_lifts);
    QMatrix minv = inverse(m);

    if (nh > 0) {
      QMatrix p_blk(nh, dim_n);
      for (std::size_t r2 = 0; r2 < nh; ++r2)
        for (std::size_t c = 0; c < dim_n; ++c)
          p_blk.at(r2, c) = minv.at(nb + r2, c);
      r.p.block(n) = std::move(p_blk);
    }

    if (nb > 0) {
      // d restricted to the lift columns in degree n+1 maps isomorphically
      // onto the boundaries in degree n; invert it column by column.
      const QMatrix& d_np1 = complex.d.block(n + 1);
      const DegreeSplit& up = dec.split.at(n + 1);
      std::size_t dim_np1 = complex.space.dim(n + 1);
      std::size_t up_nl = up.boundary_lifts.cols();
      QMatrix restricted(dim_n, up_nl);
      std::vector<std::size_t> lift_rows;
      for (std::size_t c = 0; c < up_nl; ++c) {
        // Each lift column is a standard basis vector; find its support row.
        std::size_t row = 0;
        while (row < dim_np1 && up.boundary_lifts.at(row, c) == 0) ++row;
        lift_rows.push_back(row);
        for (std::size_t r2 = 0; r2 < dim_n; ++r2)
          restricted.at(r2, c) = d_np1.at(r2, row);
      }
      QMatrix preimages(dim_np1, nb);
      for (std::size_t c = 0; c < nb; ++c) {
        auto sol = solve(restricted, split.boundaries.column(c));
        if (!sol) throw error("internal: boundary without lift");
        for (std::size_t k = 0; k < up_nl; ++k)
          preimages.at(lift_rows[k], c) = (*sol)[k];
      }
      QMatrix b_rows(nb, dim_n);
      for (std::size_t r2 = 0; r2 < nb; ++r2)
        for (std::size_t c = 0; c < dim_n; ++c)
          b_rows.at(r2, c) = minv.at(r2, c);
      r.h.block(n) = preimages * b_rows;
    }
  }

  LinearMap ip = r.i.compose(r.p);
  LinearMap id_big = LinearMap::identity(complex.space);
  if (!(r.p.compose(r.i) == LinearMap::identity(small)))
    throw error("retract check failed: p i != 1");
  LinearMap dh = complex.d.compose(r.h);
  LinearMap hd = r.h.compose(complex.d);
  if (!(dh + hd == id_big - ip))
    throw error("retract check failed: d h + h d != 1 - i p");
  if (!r.h.compose(r.i).is_zero())
    throw error("retract check failed: h i != 0");
  if (!r.p.compose(r.h).is_zero())
    throw error("retract check failed: p h != 0");
  if (!r.h.compose(r.h).is_zero())
    throw error("retract check failed: h h != 0");
  return r;
}

}  // namespace opal
