#include "oracles.hpp"

#include <sys/wait.h>
#include <unistd.h>

#include <algorithm>
#include <climits>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <tuple>

#include "opal/matrix.hpp"
#include "opal/multilinear.hpp"

namespace oracles {

using opal::ChainComplex;
using opal::DgAlgebra;
using opal::GradedSpace;
using opal::LinearMap;
using opal::MultiMap;
using opal::Multicomplex;
using opal::QMatrix;
using opal::Rational;
using opal::SparseVec;

long long catalan_recurrence(int n) {
  std::vector<long long> c(n + 1, 0);
  c[0] = 1;
  for (int k = 0; k < n; ++k) {
    long long sum = 0;
    for (int i = 0; i <= k; ++i) sum += c[i] * c[k - i];
    c[k + 1] = sum;
  }
  return c[n];
}

namespace {

long long forest_count(int leaves, int vertices, int parts);

long long tree_count_memo(int leaves, int vertices) {
  static std::map<std::pair<int, int>, long long> memo;
  auto it = memo.find({leaves, vertices});
  if (it != memo.end()) return it->second;
  long long result = 0;
  if (leaves == 1) {
    result = (vertices == 0) ? 1 : 0;
  } else if (vertices >= 1) {
    for (int parts = 2; parts <= leaves; ++parts) {
      result += forest_count(leaves, vertices - 1, parts);
    }
  }
  memo[{leaves, vertices}] = result;
  return result;
}

long long forest_count(int leaves, int vertices, int parts) {
  if (parts == 0) return (leaves == 0 && vertices == 0) ? 1 : 0;
  long long result = 0;
  for (int l1 = 1; l1 + (parts - 1) <= leaves; ++l1) {
    for (int v1 = 0; v1 <= vertices; ++v1) {
      long long head = tree_count_memo(l1, v1);
      if (head == 0) continue;
      result += head * forest_count(leaves - l1, vertices - v1, parts - 1);
    }
  }
  return result;
}

// Minimal tree representation owned by the oracles (independent of the
// library's PlanarTree).
struct OT {
  std::vector<OT> kids;
  bool leaf() const { return kids.empty(); }
};

void shapes_into(int leaves, std::vector<OT>& out);

void forests_into(int leaves, int parts, std::vector<std::vector<OT>>& out) {
  if (parts == 0) {
    if (leaves == 0) out.push_back({});
    return;
  }
  for (int l1 = 1; l1 + (parts - 1) <= leaves; ++l1) {
    std::vector<OT> heads;
    shapes_into(l1, heads);
    std::vector<std::vector<OT>> rests;
    forests_into(leaves - l1, parts - 1, rests);
    for (const OT& h : heads) {
      for (const auto& rest : rests) {
        std::vector<OT> forest;
        forest.push_back(h);
        forest.insert(forest.end(), rest.begin(), rest.end());
        out.push_back(std::move(forest));
      }
    }
  }
}

void shapes_into(int leaves, std::vector<OT>& out) {
  if (leaves == 1) {
    out.push_back(OT{});
    return;
  }
  for (int parts = 2; parts <= leaves; ++parts) {
    std::vector<std::vector<OT>> forests;
    forests_into(leaves, parts, forests);
    for (auto& f : forests) {
      OT t;
      t.kids = std::move(f);
      out.push_back(std::move(t));
    }
  }
}

void binshapes_into(int leaves, std::vector<OT>& out) {
  if (leaves == 1) {
    out.push_back(OT{});
    return;
  }
  for (int a = 1; a < leaves; ++a) {
    std::vector<OT> ls, rs;
    binshapes_into(a, ls);
    binshapes_into(leaves - a, rs);
    for (const OT& l : ls) {
      for (const OT& r : rs) {
        OT t;
        t.kids = {l, r};
        out.push_back(std::move(t));
      }
    }
  }
}

void collect_arities(const OT& t, std::vector<int>& out) {
  if (t.leaf()) return;
  out.push_back(static_cast<int>(t.kids.size()));
  for (const OT& k : t.kids) collect_arities(k, out);
}

// Minimum label of the subtree; flips ok when some vertex's children minima
// fail to increase strictly left to right.
int shuffle_min(const OT& t, const std::vector<int>& labels, int& pos,
                bool& ok) {
  if (t.leaf()) return labels[pos++];
  int prev = INT_MIN;
  int mn = INT_MAX;
  for (const OT& k : t.kids) {
    int m = shuffle_min(k, labels, pos, ok);
    if (m <= prev) ok = false;
    prev = m;
    mn = std::min(mn, m);
  }
  return mn;
}

struct MinMax {
  int mn, mx, leftmost, rightmost;
  bool ok;
};

MinMax minmax_check(const OT& t, const std::vector<int>& labels, int& pos) {
  if (t.leaf()) {
    int v = labels[pos++];
    return {v, v, v, v, true};
  }
  MinMax l = minmax_check(t.kids[0], labels, pos);
  MinMax r = minmax_check(t.kids[1], labels, pos);
  MinMax out;
  out.mn = std::min(l.mn, r.mn);
  out.mx = std::max(l.mx, r.mx);
  out.leftmost = l.leftmost;
  out.rightmost = r.rightmost;
  out.ok = l.ok && r.ok && out.leftmost == out.mn && out.rightmost == out.mx;
  return out;
}

}  // namespace

long long planar_tree_count(int leaves, int vertices) {
  return tree_count_memo(leaves, vertices);
}

long long shuffle_tree_count(int leaves, std::vector<int> arities) {
  std::sort(arities.begin(), arities.end());
  std::vector<OT> shapes;
  shapes_into(leaves, shapes);
  long long count = 0;
  std::vector<int> labels(leaves);
  for (const OT& shape : shapes) {
    std::vector<int> got;
    collect_arities(shape, got);
    std::sort(got.begin(), got.end());
    if (got != arities) continue;
    for (int i = 0; i < leaves; ++i) labels[i] = i + 1;
    do {
      bool ok = true;
      int pos = 0;
      shuffle_min(shape, labels, pos, ok);
      if (ok) ++count;
    } while (std::next_permutation(labels.begin(), labels.end()));
  }
  return count;
}

long long minmax_tree_count(int leaves) {
  std::vector<OT> shapes;
  binshapes_into(leaves, shapes);
  long long count = 0;
  std::vector<int> labels(leaves);
  for (const OT& shape : shapes) {
    for (int i = 0; i < leaves; ++i) labels[i] = i + 1;
    do {
      int pos = 0;
      if (minmax_check(shape, labels, pos).ok) ++count;
    } while (std::next_permutation(labels.begin(), labels.end()));
  }
  return count;
}

// ---------------------------------------------------------------------------

DgAlgebra borromean_dga() {
  GradedSpace space({{2, {"x", "y", "z"}},
                     {4, {"c", "e"}},
                     {5, {"a", "b"}},
                     {7, {"w"}}});
  auto gi = [&](const char* n) { return space.find(n); };
  LinearMap d(space, space, -1);
  d.set_entry(gi("c"), gi("a"), 1);
  d.set_entry(gi("e"), gi("b"), 1);
  MultiMap prod{2, 0, {}};
  prod.add_entry({gi("x"), gi("y")}, gi("c"), 1);
  prod.add_entry({gi("y"), gi("z")}, gi("e"), 1);
  prod.add_entry({gi("x"), gi("b")}, gi("w"), 1);
  prod.add_entry({gi("a"), gi("z")}, gi("w"), -1);
  return DgAlgebra(ChainComplex(space, d), prod);
}

DgAlgebra heisenberg_dga() {
  // Cochain data encoded homologically: a form of cohomological degree k
  // sits in degree -k, so the differential e3 -> e12 has degree -1.
  GradedSpace space({{-3, {"e123"}},
                     {-2, {"e12", "e13", "e23"}},
                     {-1, {"e1", "e2", "e3"}},
                     {0, {"one"}}});
  auto gi = [&](const char* n) { return space.find(n); };
  LinearMap d(space, space, -1);
  d.set_entry(gi("e12"), gi("e3"), 1);
  MultiMap prod{2, 0, {}};
  auto mul = [&](const char* l, const char* r, const char* o, int c) {
    prod.add_entry({gi(l), gi(r)}, gi(o), c);
  };
  const char* all[] = {"one", "e1", "e2", "e3", "e12", "e13", "e23", "e123"};
  for (const char* v : all) {
    mul("one", v, v, 1);
    if (std::string(v) != "one") mul(v, "one", v, 1);
  }
  mul("e1", "e2", "e12", 1);
  mul("e2", "e1", "e12", -1);
  mul("e1", "e3", "e13", 1);
  mul("e3", "e1", "e13", -1);
  mul("e2", "e3", "e23", 1);
  mul("e3", "e2", "e23", -1);
  mul("e1", "e23", "e123", 1);
  mul("e23", "e1", "e123", 1);
  mul("e2", "e13", "e123", -1);
  mul("e13", "e2", "e123", -1);
  mul("e3", "e12", "e123", 1);
  mul("e12", "e3", "e123", 1);
  return DgAlgebra(ChainComplex(space, d), prod);
}

BicomplexFixture staircase3() {
  GradedSpace space({{1, {"v", "t"}}, {2, {"u", "vp"}}});
  std::vector<std::pair<int, int>> bd(space.total_dim());
  auto at = [&](const char* n) -> std::pair<int, int>& {
    return bd[space.find(n)];
  };
  at("v") = {1, 0};
  at("t") = {0, 1};
  at("u") = {2, 0};
  at("vp") = {1, 1};
  LinearMap d(space, space, -1);
  LinearMap delta(space, space, -1);
  d.set_entry(space.find("v"), space.find("vp"), 1);
  delta.set_entry(space.find("v"), space.find("u"), 1);
  delta.set_entry(space.find("t"), space.find("vp"), 1);
  return {opal::make_bicomplex(space, bd, d, delta), delta};
}

BicomplexFixture staircase4() {
  GradedSpace space({{2, {"s", "r", "q"}}, {3, {"u", "sp", "rp"}}});
  std::vector<std::pair<int, int>> bd(space.total_dim());
  auto at = [&](const char* n) -> std::pair<int, int>& {
    return bd[space.find(n)];
  };
  at("u") = {3, 0};
  at("s") = {2, 0};
  at("sp") = {2, 1};
  at("r") = {1, 1};
  at("rp") = {1, 2};
  at("q") = {0, 2};
  LinearMap d(space, space, -1);
  LinearMap delta(space, space, -1);
  d.set_entry(space.find("s"), space.find("sp"), 1);
  d.set_entry(space.find("r"), space.find("rp"), 1);
  delta.set_entry(space.find("s"), space.find("u"), 1);
  delta.set_entry(space.find("r"), space.find("sp"), 1);
  delta.set_entry(space.find("q"), space.find("rp"), 1);
  return {opal::make_bicomplex(space, bd, d, delta), delta};
}

BicomplexFixture double_staircase() {
  GradedSpace space({{1, {"v", "t"}},
                     {2, {"u", "vp"}},
                     {3, {"v2", "t2"}},
                     {4, {"u2", "vp2"}}});
  std::vector<std::pair<int, int>> bd(space.total_dim());
  auto at = [&](const char* n) -> std::pair<int, int>& {
    return bd[space.find(n)];
  };
  at("v") = {1, 0};
  at("t") = {0, 1};
  at("u") = {2, 0};
  at("vp") = {1, 1};
  at("v2") = {1, 2};
  at("t2") = {0, 3};
  at("u2") = {2, 2};
  at("vp2") = {1, 3};
  LinearMap d(space, space, -1);
  LinearMap delta(space, space, -1);
  d.set_entry(space.find("v"), space.find("vp"), 1);
  d.set_entry(space.find("v2"), space.find("vp2"), 1);
  delta.set_entry(space.find("v"), space.find("u"), 1);
  delta.set_entry(space.find("t"), space.find("vp"), 1);
  delta.set_entry(space.find("v2"), space.find("u2"), 1);
  delta.set_entry(space.find("t2"), space.find("vp2"), 1);
  return {opal::make_bicomplex(space, bd, d, delta), delta};
}

// ---------------------------------------------------------------------------

namespace {

struct AlgebraDraft {
  std::map<int, std::vector<std::string>> comps;
  std::vector<std::tuple<std::string, std::string, Rational>> d_entries;
  std::vector<std::tuple<std::string, std::string, std::string, Rational>>
      products;

  void basis(const std::string& name, int degree) {
    comps[degree].push_back(name);
  }
};

int rand_range(std::mt19937_64& rng, int lo, int hi) {
  std::uniform_int_distribution<int> dist(lo, hi);
  return dist(rng);
}

Rational rand_coeff(std::mt19937_64& rng) {
  static const int values[] = {-2, -1, 1, 2};
  return values[rand_range(rng, 0, 3)];
}

// x, c = x*x, a with d(a) ~ c, w = x*a: four dimensions, nonzero transferred
// mu_3 on homology.
void add_type_a_block(AlgebraDraft& draft, std::mt19937_64& rng,
                      bool commutative, const std::string& sfx) {
  int xd = commutative ? 2 : (rand_range(rng, 0, 1) ? 1 : 3);
  std::string x = "x" + sfx, c = "c" + sfx, a = "a" + sfx, w = "w" + sfx;
  draft.basis(x, xd);
  draft.basis(c, 2 * xd);
  draft.basis(a, 2 * xd + 1);
  draft.basis(w, 3 * xd + 1);
  Rational alpha = rand_coeff(rng);
  Rational beta = rand_coeff(rng);
  Rational gamma = commutative ? beta : rand_coeff(rng);
  draft.products.emplace_back(x, x, c, alpha);
  draft.products.emplace_back(x, a, w, beta);
  draft.products.emplace_back(a, x, w, gamma);
  draft.d_entries.emplace_back(a, c, rand_coeff(rng));
}

// Truncated power algebra p, q ~ p*p, r ~ p*q with zero differential.
void add_poly_block(AlgebraDraft& draft, std::mt19937_64& rng,
                    bool commutative, const std::string& sfx) {
  int xd = commutative ? 2 : rand_range(rng, 1, 2);
  std::string p = "p" + sfx, q = "q" + sfx, r = "r" + sfx;
  draft.basis(p, xd);
  draft.basis(q, 2 * xd);
  draft.basis(r, 3 * xd);
  Rational c1 = rand_coeff(rng);
  Rational c2 = rand_coeff(rng);
  draft.products.emplace_back(p, p, q, c1);
  draft.products.emplace_back(p, q, r, c2);
  draft.products.emplace_back(q, p, r, c2);
}

// Acyclic two-term block with zero products.
void add_pair_block(AlgebraDraft& draft, std::mt19937_64& rng,
                    const std::string& sfx) {
  int deg = rand_range(rng, 1, 3);
  draft.basis("m" + sfx, deg);
  draft.basis("n" + sfx, deg - 1);
  draft.d_entries.emplace_back("m" + sfx, "n" + sfx, rand_coeff(rng));
}

}  // namespace

DgAlgebra random_dga(std::mt19937_64& rng, bool commutative) {
  AlgebraDraft draft;
  switch (rand_range(rng, 0, 2)) {
    case 0:
      add_type_a_block(draft, rng, commutative, "1");
      add_pair_block(draft, rng, "2");
      break;
    case 1:
      add_type_a_block(draft, rng, commutative, "1");
      break;
    default:
      add_poly_block(draft, rng, commutative, "1");
      add_pair_block(draft, rng, "2");
      break;
  }

  GradedSpace space(draft.comps);
  LinearMap d(space, space, -1);
  for (const auto& [from, to, c] : draft.d_entries) {
    d.set_entry(space.find(to), space.find(from), c);
  }
  MultiMap prod{2, 0, {}};
  for (const auto& [l, r, o, c] : draft.products) {
    prod.add_entry({space.find(l), space.find(r)}, space.find(o), c);
  }

  // Conjugate by a random unipotent degree-0 change of basis; this preserves
  // every dg-algebra axiom (and graded commutativity) while hiding the block
  // structure.
  LinearMap g = LinearMap::identity(space);
  for (const auto& [deg, names] : space.components()) {
    std::size_t k = names.size();
    if (k < 2) continue;
    QMatrix& blk = g.block(deg);
    for (std::size_t i = 0; i < k; ++i) {
      for (std::size_t j = i + 1; j < k; ++j) {
        blk.at(i, j) = rand_range(rng, -1, 1);
      }
    }
  }
  LinearMap ginv(space, space, 0);
  for (const auto& [deg, names] : space.components()) {
    (void)names;
    ginv.block(deg) = opal::inverse(g.block(deg));
  }

  LinearMap d_conj = g.compose(d.compose(ginv));
  MultiMap prod_conj{2, 0, {}};
  for (int i = 0; i < space.total_dim(); ++i) {
    SparseVec u = ginv.apply_sparse(SparseVec{{i, Rational(1)}});
    for (int j = 0; j < space.total_dim(); ++j) {
      SparseVec v = ginv.apply_sparse(SparseVec{{j, Rational(1)}});
      SparseVec w = g.apply_sparse(opal::eval_multilinear(prod, {u, v}));
      for (const auto& [o, c] : w) prod_conj.add_entry({i, j}, o, c);
    }
  }
  return DgAlgebra(ChainComplex(space, d_conj), prod_conj);
}

// ---------------------------------------------------------------------------

std::optional<SparseVec> zigzag_class(const Multicomplex& m,
                                      const LinearMap& delta,
                                      const opal::DeformationRetract& r,
                                      int class_index, int n) {
  SparseVec v =
      delta.apply_sparse(r.i.apply_sparse(SparseVec{{class_index, Rational(1)}}));
  for (int k = 1; k < n; ++k) {
    if (v.empty()) return SparseVec{};
    int vdeg = m.space.degree_of(v.begin()->first);
    int rows = m.space.dim(vdeg);
    int base = m.space.global_index(vdeg, 0);
    std::vector<Rational> rhs(rows, Rational(0));
    for (const auto& [g, c] : v) rhs[g - base] = c;
    auto sol = opal::solve(m.d.block(vdeg + 1), rhs);
    if (!sol) return std::nullopt;
    SparseVec w;
    for (std::size_t i = 0; i < sol->size(); ++i) {
      if ((*sol)[i] != 0) {
        w[m.space.global_index(vdeg + 1, static_cast<int>(i))] = (*sol)[i];
      }
    }
    v = delta.apply_sparse(w);
  }
  return r.p.apply_sparse(v);
}

// ---------------------------------------------------------------------------

std::string scratch_dir() {
  static const std::string dir = [] {
    std::string d = (std::filesystem::temp_directory_path() /
                     ("opal_scratch_" + std::to_string(::getpid())))
                        .string();
    std::filesystem::create_directories(d);
    return d;
  }();
  return dir;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return "";
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

namespace {

std::string shell_quote(const std::string& s) {
  std::string out = "'";
  for (char ch : s) {
    if (ch == '\'') {
      out += "'\\''";
    } else {
      out += ch;
    }
  }
  return out + "'";
}

}  // namespace

ToolResult run_tool(const std::vector<std::string>& args) {
  static int counter = 0;
  int id = ++counter;
  std::string outf = scratch_dir() + "/out_" + std::to_string(id) + ".txt";
  std::string errf = scratch_dir() + "/err_" + std::to_string(id) + ".txt";
  std::string cmd = shell_quote(OPAL_CLI_PATH);
  for (const std::string& a : args) cmd += " " + shell_quote(a);
  cmd += " > " + shell_quote(outf) + " 2> " + shell_quote(errf);
  int rc = std::system(cmd.c_str());
  ToolResult result;
  if (rc == -1) {
    result.exit_code = -1;
  } else if (WIFEXITED(rc)) {
    result.exit_code = WEXITSTATUS(rc);
  } else {
    result.exit_code = -2;
  }
  result.out = slurp(outf);
  result.err = slurp(errf);
  return result;
}

}  // namespace oracles
