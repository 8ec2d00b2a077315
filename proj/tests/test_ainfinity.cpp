#include <map>
#include <random>
#include <string>
#include <vector>

#include "doctest.h"
#include "opal/ainfinity.hpp"
#include "oracles.hpp"

using opal::AInfinityMorphism;
using opal::AInfinityStructure;
using opal::ChainComplex;
using opal::DeformationRetract;
using opal::DgAlgebra;
using opal::GradedSpace;
using opal::LinearMap;
using opal::MultiMap;
using opal::Rational;
using opal::SparseVec;

namespace {

SparseVec unit(int index) { return SparseVec{{index, Rational(1)}}; }

// Independent arity-3 transfer oracle.  Works in the suspended picture:
// B2(u,v) = (-1)^{|u|} u v, then
//   b3(X,Y,Z) = B2(h B2(X,Y), Z) + B2(X, h B2(Y,Z)),
// and the exported operation is mu_3 = (suspension sign) * p(b3) on images
// of homology basis vectors.
struct TransferOracle {
  const DgAlgebra& alg;
  const DeformationRetract& r;

  int deg(const SparseVec& v) const {
    return r.big.space.degree_of(v.begin()->first);
  }

  SparseVec b2(const SparseVec& u, const SparseVec& v) const {
    if (u.empty() || v.empty()) return {};
    return opal::sparse_scale(alg.multiply(u, v),
                              Rational(opal::parity_sign(deg(u))));
  }

  SparseVec mu2(int ea, int eb) const {
    return r.p.apply_sparse(
        alg.multiply(r.i.apply_sparse(unit(ea)), r.i.apply_sparse(unit(eb))));
  }

  SparseVec mu3(int ea, int eb, int ec) const {
    SparseVec x = r.i.apply_sparse(unit(ea));
    SparseVec y = r.i.apply_sparse(unit(eb));
    SparseVec z = r.i.apply_sparse(unit(ec));
    SparseVec left = b2(r.h.apply_sparse(b2(x, y)), z);
    SparseVec right = b2(x, r.h.apply_sparse(b2(y, z)));
    SparseVec cls = r.p.apply_sparse(opal::sparse_sum(left, right));
    int sign = opal::suspension_sign(r.small.space, {ea, eb, ec});
    return opal::sparse_scale(cls, Rational(sign));
  }
};

SparseVec apply_op(const AInfinityStructure& s, int n,
                   const std::vector<int>& key) {
  const MultiMap* op = s.op(n);
  if (!op) return {};
  std::vector<SparseVec> args;
  for (int k : key) args.push_back(unit(k));
  return opal::eval_multilinear(*op, args);
}

// Zero-differential algebra with p q = r but q p = 0: not commutative in any
// graded sense.
DgAlgebra noncommutative_pair() {
  GradedSpace space({{1, {"p", "q"}}, {2, {"r"}}});
  LinearMap d(space, space, -1);
  MultiMap prod{2, 0, {}};
  prod.add_entry({space.find("p"), space.find("q")}, space.find("r"), 1);
  return DgAlgebra(ChainComplex(space, d), prod);
}

// Zero-differential graded-commutative truncated power algebra on an even
// generator; its transferred structure is the algebra itself.
DgAlgebra truncated_power() {
  GradedSpace space({{2, {"x"}}, {4, {"q"}}, {6, {"r"}}});
  LinearMap d(space, space, -1);
  MultiMap prod{2, 0, {}};
  prod.add_entry({space.find("x"), space.find("x")}, space.find("q"), 1);
  prod.add_entry({space.find("x"), space.find("q")}, space.find("r"), 1);
  prod.add_entry({space.find("q"), space.find("x")}, space.find("r"), 1);
  return DgAlgebra(ChainComplex(space, d), prod);
}

}  // namespace

TEST_CASE("suspension sign: closed form and involution") {
  DgAlgebra b = oracles::borromean_dga();
  const GradedSpace& space = b.complex.space;
  int x = space.find("x"), y = space.find("y"), z = space.find("z");
  int a = space.find("a");
  // Arity 2: (-1)^{|first|}.
  CHECK(opal::suspension_sign(space, {x, y}) == 1);
  CHECK(opal::suspension_sign(space, {a, z}) == -1);
  // Arity 3: (-1)^{2|x_1| + |x_2|}.
  CHECK(opal::suspension_sign(space, {x, y, z}) == 1);
  CHECK(opal::suspension_sign(space, {x, a, z}) == -1);
  CHECK(opal::suspension_sign(space, {a, a, z}) == -1);

  // mu_from_b and b_from_mu are mutually inverse on arbitrary tables.
  std::mt19937_64 rng(13);
  std::uniform_int_distribution<int> coeff(-3, 3);
  for (int arity = 2; arity <= 4; ++arity) {
    MultiMap table{arity, 7, {}};  // degree is irrelevant to the signs
    for (int trial = 0; trial < 10; ++trial) {
      std::vector<int> key;
      std::uniform_int_distribution<int> pick(0, space.total_dim() - 1);
      for (int i = 0; i < arity; ++i) key.push_back(pick(rng));
      table.add_entry(key, pick(rng), coeff(rng));
    }
    CHECK(opal::mu_from_b(opal::b_from_mu(table, space), space) == table);
    CHECK(opal::b_from_mu(opal::mu_from_b(table, space), space) == table);
  }
}

TEST_CASE("a dg-algebra is a homotopy structure with only mu_2") {
  DgAlgebra b = oracles::borromean_dga();
  AInfinityStructure s = opal::dga_as_ainfinity(b);
  REQUIRE(s.op(2) != nullptr);
  CHECK(*s.op(2) == b.product);
  CHECK(s.op(3) == nullptr);
  opal::RelationReport rep = opal::check_ainfinity_relations(s, 5);
  CHECK(rep.pass);
  CHECK(rep.checked_arity == 5);
}

TEST_CASE("transfer across the linking fixture produces a nonzero mu_3") {
  DgAlgebra b = oracles::borromean_dga();
  DeformationRetract r = opal::deformation_retract(b.complex);
  REQUIRE(r.small.space.total_dim() == 4);  // three classes in degree 2, one in 7
  CHECK(r.small.space.dim(2) == 3);
  CHECK(r.small.space.dim(7) == 1);

  AInfinityStructure t = opal::transfer_ainfinity(b, r, 4);
  CHECK(t.checked_arity == 4);
  // Every homology-level product vanishes...
  const MultiMap* op2 = t.op(2);
  CHECK((op2 == nullptr || op2->is_zero()));
  // ...but the arity-3 operation detects the triple linking.
  const GradedSpace& hs = r.small.space;
  int hx = hs.find("h2_0"), hy = hs.find("h2_1"), hz = hs.find("h2_2");
  int hw = hs.find("h7_0");
  REQUIRE(hx >= 0);
  REQUIRE(hw >= 0);
  SparseVec got = apply_op(t, 3, {hx, hy, hz});
  CHECK(got == SparseVec{{hw, Rational(2)}});

  CHECK(opal::formal_through(t) == 2);
  CHECK(opal::formality_report(t) ==
        "nonformality witnessed: transferred operation of arity 3 is nonzero");
}

TEST_CASE("transferred operations match the independent two-tree oracle") {
  std::mt19937_64 rng(777);
  int nontrivial_mu3 = 0;
  for (int trial = 0; trial < 16; ++trial) {
    DgAlgebra alg = oracles::random_dga(rng, trial % 2 == 0);
    DeformationRetract r = opal::deformation_retract(alg.complex);
    AInfinityStructure t = opal::transfer_ainfinity(alg, r, 4);
    CHECK(t.checked_arity == 4);
    TransferOracle oracle{alg, r};
    int n = r.small.space.total_dim();
    for (int a = 0; a < n; ++a) {
      for (int b = 0; b < n; ++b) {
        CHECK(apply_op(t, 2, {a, b}) == oracle.mu2(a, b));
        for (int c = 0; c < n; ++c) {
          SparseVec expect = oracle.mu3(a, b, c);
          CHECK(apply_op(t, 3, {a, b, c}) == expect);
          if (!expect.empty()) ++nontrivial_mu3;
        }
      }
    }
  }
  // The generator produces genuinely nonformal examples, so the comparison
  // above is not vacuous.
  CHECK(nontrivial_mu3 > 0);
}

TEST_CASE("relation checker rejects a corrupted arity-2 operation") {
  DgAlgebra h = oracles::heisenberg_dga();
  DeformationRetract r = opal::deformation_retract(h.complex);
  AInfinityStructure t = opal::transfer_ainfinity(h, r, 3);
  REQUIRE(opal::check_ainfinity_relations(t, 3).pass);

  const GradedSpace& hs = r.small.space;
  AInfinityStructure bad = t;
  MultiMap& op2 = bad.ops[2];
  if (op2.arity != 2) op2 = MultiMap{2, 0, {}};
  op2.add_entry({hs.find("h-1_0"), hs.find("h-1_1")}, hs.find("h-2_0"), 1);
  opal::RelationReport rep = opal::check_ainfinity_relations(bad, 3);
  CHECK_FALSE(rep.pass);
  CHECK(rep.first_failure != "");
}

TEST_CASE("transfer validates that the retract belongs to the algebra") {
  DgAlgebra b = oracles::borromean_dga();
  DgAlgebra h = oracles::heisenberg_dga();
  DeformationRetract r = opal::deformation_retract(h.complex);
  CHECK_THROWS_AS(opal::transfer_ainfinity(b, r, 3), const opal::error&);
}

TEST_CASE("inclusion morphism satisfies the compatibility relations") {
  DgAlgebra b = oracles::borromean_dga();
  DeformationRetract r = opal::deformation_retract(b.complex);
  AInfinityMorphism iota = opal::build_iota_morphism(b, r, 4);
  CHECK(iota.checked_arity == 4);
  opal::RelationReport rep = opal::check_morphism_relations(iota, 4);
  CHECK(rep.pass);

  // The linear component is the inclusion.
  REQUIRE(iota.component(1) != nullptr);
  for (int e = 0; e < r.small.space.total_dim(); ++e) {
    CHECK(opal::eval_multilinear(*iota.component(1), {unit(e)}) ==
          r.i.apply_sparse(unit(e)));
  }

  // Composing with the identity preserves the morphism.
  AInfinityMorphism composed =
      opal::compose_morphisms(iota, opal::identity_morphism(iota.source), 4);
  for (int n = 1; n <= 4; ++n) {
    const MultiMap* a = iota.component(n);
    const MultiMap* b2 = composed.component(n);
    bool a_zero = (a == nullptr || a->is_zero());
    bool b_zero = (b2 == nullptr || b2->is_zero());
    CHECK(a_zero == b_zero);
    if (!a_zero && !b_zero) CHECK(*a == *b2);
  }
  CHECK(opal::check_morphism_relations(composed, 4).pass);

  // Corrupting the quadratic component breaks the relations.
  AInfinityMorphism bad = iota;
  MultiMap& f2 = bad.components[2];
  if (f2.arity != 2) f2 = MultiMap{2, 1, {}};
  const GradedSpace& hs = r.small.space;
  f2.add_entry({hs.find("h2_0"), hs.find("h2_1")},
               b.complex.space.find("a"), 1);
  CHECK_FALSE(opal::check_morphism_relations(bad, 4).pass);
}

TEST_CASE("shuffle vanishing holds commutatively and fails otherwise") {
  // Graded-commutative inputs pass.
  DgAlgebra h = oracles::heisenberg_dga();
  DeformationRetract rh = opal::deformation_retract(h.complex);
  AInfinityStructure th = opal::transfer_ainfinity(h, rh, 4);
  opal::RelationReport rep = opal::check_shuffle_vanishing(th, 4);
  CHECK(rep.pass);
  CHECK(rep.checked_arity == 4);

  std::mt19937_64 rng(4242);
  for (int trial = 0; trial < 6; ++trial) {
    DgAlgebra alg = oracles::random_dga(rng, true);
    DeformationRetract r = opal::deformation_retract(alg.complex);
    AInfinityStructure t = opal::transfer_ainfinity(alg, r, 4);
    CHECK(opal::check_shuffle_vanishing(t, 4).pass);
  }

  // A noncommutative product is detected at the first split.
  DgAlgebra nc = noncommutative_pair();
  DeformationRetract rnc = opal::deformation_retract(nc.complex);
  AInfinityStructure tnc = opal::transfer_ainfinity(nc, rnc, 3);
  opal::RelationReport bad = opal::check_shuffle_vanishing(tnc, 3);
  CHECK_FALSE(bad.pass);
  CHECK(bad.first_failure != "");
}

TEST_CASE("formality verdict for a transferred rigid algebra") {
  DgAlgebra tp = truncated_power();
  DeformationRetract r = opal::deformation_retract(tp.complex);
  AInfinityStructure t = opal::transfer_ainfinity(tp, r, 4);
  CHECK(opal::formal_through(t) == 4);
  CHECK(opal::formality_report(t) ==
        "higher A∞-Massey products vanish (formal through arity 4)");
}
