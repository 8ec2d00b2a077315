#include "opal/multicomplex.hpp"

#include <algorithm>
#include <sstream>
#include <utility>

namespace opal {

namespace {

// Calls visit(source_global, target_global, value) on every nonzero entry.
template <typename F>
void for_each_entry(const LinearMap& f, F&& visit) {
  const GradedSpace& src = f.source();
  const GradedSpace& tgt = f.target();
  for (const auto& [deg, names] : src.components()) {
    (void)names;
    if (tgt.dim(deg + f.degree()) == 0) continue;
    const QMatrix& blk = f.block(deg);
    for (std::size_t c = 0; c < blk.cols(); ++c) {
      int sg = src.global_index(deg, static_cast<int>(c));
      for (std::size_t r = 0; r < blk.rows(); ++r) {
        if (blk.at(r, c) == 0) continue;
        visit(sg, tgt.global_index(deg + f.degree(), static_cast<int>(r)),
              blk.at(r, c));
      }
    }
  }
}

std::string bidegree_table_problem(
    const GradedSpace& space, const std::vector<std::pair<int, int>>& bidegree) {
  if (static_cast<int>(bidegree.size()) != space.total_dim()) {
    return "bidegree table size does not match the basis";
  }
  for (int g = 0; g < space.total_dim(); ++g) {
    if (bidegree[g].first + bidegree[g].second != space.degree_of(g)) {
      return "basis element '" + space.name_of(g) +
             "' has total degree different from column + row";
    }
  }
  return "";
}

// Empty string when every nonzero entry of f moves bidegree by (dcol, drow).
std::string move_problem(const Multicomplex& m, const LinearMap& f, int dcol,
                         int drow, const std::string& what) {
  std::string problem;
  for_each_entry(f, [&](int sg, int tg, const Rational&) {
    if (!problem.empty()) return;
    if (m.column_of(tg) != m.column_of(sg) + dcol ||
        m.row_of(tg) != m.row_of(sg) + drow) {
      std::ostringstream msg;
      msg << what << " maps '" << m.space.name_of(sg) << "' to '"
          << m.space.name_of(tg) << "', which is not a bidegree (" << dcol
          << ", " << drow << ") move";
      problem = msg.str();
    }
  });
  return problem;
}

}  // namespace

RelationReport check_multicomplex_relations(const Multicomplex& m) {
  RelationReport report;
  auto fail = [&](const std::string& why) {
    report.pass = false;
    report.first_failure = why;
  };

  std::string table = bidegree_table_problem(m.space, m.bidegree);
  if (!table.empty()) {
    fail(table);
    return report;
  }
  if (!(m.d.source() == m.space) || !(m.d.target() == m.space) ||
      m.d.degree() != -1) {
    fail("the differential must be a degree -1 endomorphism of the space");
    return report;
  }
  std::string moves = move_problem(m, m.d, 0, -1, "the differential");
  if (!moves.empty()) {
    fail(moves);
    return report;
  }
  for (const auto& [n, dn] : m.ops) {
    if (n < 1) {
      fail("operator indices must be positive");
      return report;
    }
    if (!(dn.source() == m.space) || !(dn.target() == m.space) ||
        dn.degree() != -1) {
      fail("operator d_" + std::to_string(n) +
           " must be a degree -1 endomorphism of the space");
      return report;
    }
    moves = move_problem(m, dn, -n, n - 1, "operator d_" + std::to_string(n));
    if (!moves.empty()) {
      fail(moves);
      return report;
    }
  }

  if (!m.d.compose(m.d).is_zero()) {
    fail("the differential does not square to zero");
    return report;
  }

  int max_op = m.ops.empty() ? 0 : m.ops.rbegin()->first;
  report.checked_arity = 2 * max_op;
  LinearMap zero2(m.space, m.space, -2);
  for (int n = 1; n <= 2 * max_op; ++n) {
    LinearMap lhs = zero2;
    if (const LinearMap* dn = m.op(n)) {
      lhs = m.d.compose(*dn) + dn->compose(m.d) * Rational(parity_sign(n));
    }
    LinearMap rhs = zero2;
    for (int i = 1; i <= n - 1; ++i) {
      const LinearMap* di = m.op(i);
      const LinearMap* dj = m.op(n - i);
      if (di == nullptr || dj == nullptr) continue;
      rhs = rhs + di->compose(*dj) * Rational(parity_sign(i));
    }
    if (!(lhs == rhs)) {
      fail("operator relation fails at n = " + std::to_string(n));
      return report;
    }
  }
  return report;
}

Multicomplex make_bicomplex(GradedSpace space,
                            std::vector<std::pair<int, int>> bidegree,
                            LinearMap d, LinearMap delta) {
  Multicomplex m;
  m.space = std::move(space);
  m.bidegree = std::move(bidegree);

  std::string table = bidegree_table_problem(m.space, m.bidegree);
  if (!table.empty()) throw semantic_error(table);
  auto degree_shape_ok = [&](const LinearMap& f) {
    return f.source() == m.space && f.target() == m.space && f.degree() == -1;
  };
  if (!degree_shape_ok(d)) {
    throw semantic_error(
        "the vertical differential must be a degree -1 endomorphism");
  }
  if (!degree_shape_ok(delta)) {
    throw semantic_error(
        "the horizontal differential must be a degree -1 endomorphism");
  }
  m.d = std::move(d);
  std::string moves = move_problem(m, m.d, 0, -1, "the vertical differential");
  if (!moves.empty()) throw semantic_error(moves);
  moves = move_problem(m, delta, -1, 0, "the horizontal differential");
  if (!moves.empty()) throw semantic_error(moves);

  if (!m.d.compose(m.d).is_zero()) {
    throw semantic_error("the vertical differential does not square to zero");
  }
  if (!delta.compose(delta).is_zero()) {
    throw semantic_error(
        "the horizontal differential does not square to zero");
  }
  if (!(m.d.compose(delta) + delta.compose(m.d)).is_zero()) {
    throw semantic_error(
        "the vertical and horizontal differentials do not anticommute");
  }

  // d_1(x) = (-1)^row(x) delta(x): the twist turns the anticommuting pair
  // (d, delta) into a commuting pair (d, d_1) with d_1^2 = 0, which is
  // exactly the n = 1 and n = 2 operator relations.
  LinearMap d1(m.space, m.space, -1);
  for_each_entry(delta, [&](int sg, int tg, const Rational& v) {
    d1.set_entry(tg, sg, v * Rational(parity_sign(m.row_of(sg))));
  });
  m.ops.emplace(1, std::move(d1));

  RelationReport rep = check_multicomplex_relations(m);
  if (!rep.pass) {
    throw error("internal: bicomplex encoding fails the operator relations: " +
                rep.first_failure);
  }
  return m;
}

LinearMap untwisted_delta(const Multicomplex& m) {
  LinearMap delta(m.space, m.space, -1);
  const LinearMap* d1 = m.op(1);
  if (d1 == nullptr) return delta;
  for_each_entry(*d1, [&](int sg, int tg, const Rational& v) {
    delta.set_entry(tg, sg, v * Rational(parity_sign(m.row_of(sg))));
  });
  return delta;
}

Multicomplex transfer_multicomplex(const Multicomplex& m,
                                   const DeformationRetract& r) {
  RelationReport rep = check_multicomplex_relations(m);
  if (!rep.pass) {
    throw semantic_error("multicomplex transfer requires a valid input: " +
                         rep.first_failure);
  }
  for (const auto& [n, dn] : m.ops) {
    if (n != 1 && !dn.is_zero()) {
      throw semantic_error(
          "multicomplex transfer is implemented for bicomplex-type inputs "
          "whose only nonzero operator is d_1");
    }
  }
  if (!(r.big.space == m.space) || !(r.big.d == m.d)) {
    throw semantic_error(
        "deformation retract does not match the multicomplex differential");
  }
  if (!r.small.d.is_zero()) {
    throw semantic_error(
        "multicomplex transfer requires a retract onto a space with zero "
        "differential");
  }

  LinearMap delta = untwisted_delta(m);
  const GradedSpace& small = r.small.space;
  int sdim = small.total_dim();

  // Bidegrees of the transferred basis come from the representatives, which
  // must be bihomogeneous (automatic for the canonical retract, because the
  // differential preserves columns).
  std::vector<std::pair<int, int>> sbideg(sdim, {0, 0});
  for (int s = 0; s < sdim; ++s) {
    SparseVec rep_vec = r.i.apply_sparse(SparseVec{{s, Rational(1)}});
    if (rep_vec.empty()) {
      throw error("internal: the homology inclusion has a zero column");
    }
    bool first = true;
    for (const auto& [g, c] : rep_vec) {
      (void)c;
      if (first) {
        sbideg[s] = m.bidegree.at(g);
        first = false;
      } else if (m.bidegree.at(g) != sbideg[s]) {
        throw semantic_error("homology representative for '" +
                             small.name_of(s) +
                             "' is not bihomogeneous; transfer needs a "
                             "column-respecting retract");
      }
    }
  }

  // d_n = sign * p (delta h)^(n-1) delta i with sign depending on n and the
  // row of the input; the intermediate vectors (delta h)^(n-1) delta i(x)
  // are kept between rounds, so iteration stops exactly when they all die.
  int min_col = 0;
  int max_col = 0;
  for (std::size_t g = 0; g < m.bidegree.size(); ++g) {
    min_col = std::min(min_col, m.bidegree[g].first);
    max_col = std::max(max_col, m.bidegree[g].first);
  }
  std::vector<SparseVec> w(sdim);
  for (int s = 0; s < sdim; ++s) {
    w[s] = delta.apply_sparse(r.i.apply_sparse(SparseVec{{s, Rational(1)}}));
  }
  std::map<int, LinearMap> sops;
  for (int n = 1; n <= max_col - min_col; ++n) {
    bool any_alive = false;
    for (int s = 0; s < sdim; ++s) any_alive = any_alive || !w[s].empty();
    if (!any_alive) break;

    LinearMap dn(small, small, -1);
    bool nonzero = false;
    for (int s = 0; s < sdim; ++s) {
      if (w[s].empty()) continue;
      SparseVec out = r.p.apply_sparse(w[s]);
      long long expo =
          static_cast<long long>(n) * (n + 1) / 2 +
          static_cast<long long>(n) * sbideg[s].second + 1;
      Rational sign(parity_sign(expo));
      for (const auto& [g, c] : out) {
        if (c == 0) continue;
        dn.set_entry(g, s, c * sign);
        nonzero = true;
      }
    }
    if (nonzero) sops.emplace(n, std::move(dn));

    for (int s = 0; s < sdim; ++s) {
      if (w[s].empty()) continue;
      w[s] = delta.apply_sparse(r.h.apply_sparse(w[s]));
    }
  }

  Multicomplex out;
  out.space = small;
  out.bidegree = std::move(sbideg);
  out.d = LinearMap(small, small, -1);
  out.ops = std::move(sops);
  RelationReport post = check_multicomplex_relations(out);
  if (!post.pass) {
    throw error("transferred multicomplex fails its defining relations: " +
                post.first_failure);
  }
  return out;
}

}  // namespace opal
