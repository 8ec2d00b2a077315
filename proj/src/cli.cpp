#include "opal/cli.hpp"

#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "opal/io_json.hpp"
#include "opal/koszul_dual.hpp"
#include "opal/linfinity.hpp"
#include "opal/massey.hpp"
#include "opal/multicomplex.hpp"
#include "opal/rewriting.hpp"

namespace opal {

namespace {

// ".opd" arguments accept "preset:NAME" in place of a path.
Presentation load_presentation_arg(const std::string& arg) {
  const std::string prefix = "preset:";
  if (arg.rfind(prefix, 0) == 0) {
    return preset_presentation(arg.substr(prefix.size()));
  }
  return parse_presentation(read_text_file(arg));
}

const char* mode_name(OperadMode mode) {
  return mode == OperadMode::ns ? "ns" : "shuffle";
}

Json report_json(const RelationReport& rep) {
  Json j;
  j["pass"] = rep.pass;
  j["checked_arity"] = rep.checked_arity;
  j["first_failure"] = rep.first_failure;
  return j;
}

Json sparse_json(const SparseVec& v, const GradedSpace& space) {
  Json arr = Json::array();
  for (const auto& [g, c] : v) {
    Json item;
    item["name"] = space.name_of(g);
    item["coeff"] = rational_to_string(c);
    arr.push_back(item);
  }
  return arr;
}

std::string render_sparse(const SparseVec& v, const GradedSpace& space) {
  if (v.empty()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [g, c] : v) {
    Rational a = c;
    if (first) {
      if (a < 0) {
        out += "-";
        a = -a;
      }
    } else {
      out += (a < 0) ? " - " : " + ";
      if (a < 0) a = -a;
    }
    if (a != 1) out += rational_to_string(a) + "*";
    out += space.name_of(g);
    first = false;
  }
  return out;
}

int cmd_check_koszul(const std::string& file, const std::string& diagram_dir,
                     const std::string& json_out) {
  Presentation p = load_presentation_arg(file);
  RewriteSystem rs(p);
  KoszulCertificate cert = check_confluence(rs);

  std::size_t k = cert.critical_monomials.size();
  std::cout << "operad " << p.name << " (" << mode_name(p.mode)
            << " mode): " << rs.rules().size() << " rewrite rule"
            << (rs.rules().size() == 1 ? "" : "s") << "\n";
  std::cout << k << " critical monomial" << (k == 1 ? "" : "s") << ", "
            << (cert.confluent ? "confluent" : "not confluent") << ", "
            << cert.verdict << "\n";
  for (const CriticalReport& rep : cert.critical_monomials) {
    if (rep.confluent) continue;
    std::cout << "critical monomial " << render(rep.monomial, rs.gens())
              << " has " << rep.normal_forms.size()
              << " distinct normal forms:\n";
    for (const TreePolynomial& nf : rep.normal_forms) {
      std::cout << "  normal form: " << render(nf, rs.gens()) << "\n";
    }
  }

  if (!diagram_dir.empty()) {
    std::filesystem::create_directories(diagram_dir);
    for (std::size_t idx = 0; idx < cert.critical_monomials.size(); ++idx) {
      std::string name = "critical_" + std::to_string(idx + 1);
      std::filesystem::path path =
          std::filesystem::path(diagram_dir) / (name + ".dot");
      write_text_file(path.string(),
                      critical_monomial_dot(rs, cert.critical_monomials[idx],
                                            name));
    }
    std::cout << "wrote " << k << " reduction diagram" << (k == 1 ? "" : "s")
              << " to " << diagram_dir << "\n";
  }

  if (!json_out.empty()) {
    Json j;
    j["schema_version"] = kSchemaVersion;
    j["kind"] = "koszul-certificate";
    j["name"] = p.name;
    j["mode"] = mode_name(p.mode);
    j["verdict"] = cert.verdict;
    j["confluent"] = cert.confluent;
    Json criticals = Json::array();
    for (const CriticalReport& rep : cert.critical_monomials) {
      Json cj;
      cj["monomial"] = render(rep.monomial, rs.gens());
      cj["confluent"] = rep.confluent;
      Json nfs = Json::array();
      for (const TreePolynomial& nf : rep.normal_forms) {
        nfs.push_back(render(nf, rs.gens()));
      }
      cj["normal_forms"] = nfs;
      Json paths = Json::array();
      for (const auto& path : rep.paths) paths.push_back(path);
      cj["paths"] = paths;
      criticals.push_back(cj);
    }
    j["critical_monomials"] = criticals;
    write_text_file(json_out, dump_json(j));
  }

  return cert.confluent ? 0 : 1;
}

int cmd_koszul_dual(const std::string& file, const std::string& out) {
  Presentation p = load_presentation_arg(file);
  Presentation dual = koszul_dual_presentation(p);
  std::string text = serialize_presentation(dual);
  std::cout << text;
  if (!out.empty()) write_text_file(out, text);
  return 0;
}

int cmd_pbw(const std::string& file, int max_arity) {
  Presentation p = load_presentation_arg(file);
  RewriteSystem rs(p);
  KoszulCertificate cert = check_confluence(rs);
  if (!cert.confluent) {
    std::cout << "not confluent (" << cert.verdict
              << "); no normal-form basis certificate\n";
    return 1;
  }
  std::cout << "normal-form basis for " << p.name << ":\n";
  for (int arity = 2; arity <= max_arity; ++arity) {
    std::vector<TreeMonomial> basis = enumerate_pbw_basis(rs, arity, cert);
    std::cout << "arity " << arity << ": " << basis.size() << " element"
              << (basis.size() == 1 ? "" : "s") << "\n";
    for (const TreeMonomial& m : basis) {
      std::cout << "  " << render(m, rs.gens()) << "\n";
    }
  }
  return 0;
}

int cmd_reduce(const std::string& file, const std::string& expr) {
  Presentation p = load_presentation_arg(file);
  RewriteSystem rs(p);
  int arity = 0;
  TreePolynomial poly = parse_tree_polynomial(expr, rs.gens(), p.mode, &arity);
  TreePolynomial nf = reduce_normal_form(poly, rs);
  std::cout << "normal form: " << render(nf, rs.gens()) << "\n";
  return 0;
}

int cmd_transfer(const std::string& file, int max_arity,
                 const std::vector<std::string>& massey_names,
                 bool check_shuffles, bool linfinity,
                 const std::string& json_out) {
  DgAlgebra alg = parse_dga_json(read_text_file(file));
  DeformationRetract r = deformation_retract(alg.complex);

  const GradedSpace& small = r.small.space;
  std::cout << "input: " << alg.complex.space.total_dim()
            << " basis elements; homology dimension " << small.total_dim()
            << "\n";
  for (const auto& [deg, names] : small.components()) {
    std::cout << "  H_" << deg << ":";
    for (const std::string& n : names) std::cout << " " << n;
    std::cout << "\n";
  }

  AInfinityStructure trans = transfer_ainfinity(alg, r, max_arity);
  AInfinityMorphism iota = build_iota_morphism(alg, r, max_arity);

  std::cout << "transferred operations:";
  for (int n = 2; n <= max_arity; ++n) {
    const MultiMap* mu = trans.op(n);
    std::size_t entries = 0;
    if (mu != nullptr) {
      for (const auto& [key, val] : mu->table) entries += val.size();
    }
    std::cout << " mu_" << n << " (" << entries << " entr"
              << (entries == 1 ? "y" : "ies") << ")";
  }
  std::cout << "\n";
  std::cout << "structure relations: pass through arity " << trans.checked_arity
            << "\n";
  std::cout << "inclusion morphism: pass through arity " << iota.checked_arity
            << "\n";
  std::cout << formality_report(trans) << "\n";

  int exit_code = 0;
  Json j;
  j["schema_version"] = kSchemaVersion;
  j["kind"] = "transfer";
  j["max_arity"] = max_arity;
  j["sign_convention"] =
      "operations are reported unsuspended: mu_n has degree n-2 and "
      "mu_n(x_1..x_n) = (-1)^(sum_i (n-i)|x_i|) b_n(x_1..x_n) where the "
      "uniform-degree -1 tables b_n drive the tree-sum recursion";
  j["homology_basis"] = basis_json(small);
  Json ops = Json::array();
  for (const auto& [n, mu] : trans.ops) {
    (void)n;
    ops.push_back(multimap_json(mu, small));
  }
  j["operations"] = ops;
  RelationReport struct_rep;
  struct_rep.checked_arity = trans.checked_arity;
  j["relation_check"] = report_json(struct_rep);
  RelationReport morphism_rep;
  morphism_rep.checked_arity = iota.checked_arity;
  j["morphism_check"] = report_json(morphism_rep);
  j["formality"] = formality_report(trans);

  if (!massey_names.empty()) {
    std::vector<SparseVec> classes;
    for (const std::string& name : massey_names) {
      int g = alg.complex.space.find(name);
      if (g < 0) {
        throw semantic_error("--massey: unknown basis element '" + name + "'");
      }
      SparseVec ambient{{g, Rational(1)}};
      if (!sparse_is_zero(alg.differential(ambient))) {
        throw semantic_error("--massey: '" + name + "' is not a cycle");
      }
      classes.push_back(r.p.apply_sparse(ambient));
    }
    MasseyResult mr =
        massey_triple(alg, r, classes[0], classes[1], classes[2]);
    std::cout << "massey <" << massey_names[0] << ", " << massey_names[1]
              << ", " << massey_names[2] << ">:\n";
    std::cout << "  classical representative: "
              << render_sparse(mr.representative, small) << "\n";
    std::cout << "  indeterminacy dimension: " << mr.indeterminacy_basis.size()
              << "\n";
    std::cout << "  transferred mu_3: " << render_sparse(mr.mu3_class, small)
              << "\n";
    std::cout << "  mu_3 in the coset: " << (mr.mu3_in_coset ? "yes" : "no")
              << "; aligned (sign " << (mr.alignment_sign > 0 ? "+1" : "-1")
              << "): " << (mr.mu3_in_coset_aligned ? "yes" : "no") << "\n";
    Json mj;
    mj["classes"] = massey_names;
    mj["representative"] = sparse_json(mr.representative, small);
    Json indet = Json::array();
    for (const SparseVec& v : mr.indeterminacy_basis) {
      indet.push_back(sparse_json(v, small));
    }
    mj["indeterminacy_basis"] = indet;
    mj["mu3"] = sparse_json(mr.mu3_class, small);
    mj["alignment_sign"] = mr.alignment_sign;
    mj["mu3_in_coset"] = mr.mu3_in_coset;
    mj["mu3_in_coset_aligned"] = mr.mu3_in_coset_aligned;
    j["massey"] = mj;
    if (!mr.mu3_in_coset_aligned) exit_code = 1;
  }

  if (check_shuffles) {
    RelationReport rep = check_shuffle_vanishing(trans, max_arity);
    if (rep.pass) {
      std::cout << "shuffle vanishing: pass through arity "
                << rep.checked_arity << "\n";
    } else {
      std::cout << "shuffle vanishing FAILS: " << rep.first_failure << "\n";
      exit_code = 1;
    }
    j["shuffle_check"] = report_json(rep);
  }

  if (linfinity) {
    LInfinityStructure ell = antisymmetrize_linfinity(trans);
    int jacobi_arity = std::min(max_arity, 4);
    RelationReport rep = check_linfinity_relations(ell, jacobi_arity);
    if (rep.pass) {
      std::cout << "generalized Jacobi: pass through arity "
                << rep.checked_arity << "\n";
    } else {
      std::cout << "generalized Jacobi FAILS: " << rep.first_failure << "\n";
      exit_code = 1;
    }
    Json lj;
    Json brackets = Json::array();
    for (const auto& [n, ell_n] : ell.brackets) {
      (void)n;
      brackets.push_back(multimap_json(ell_n, small));
    }
    lj["brackets"] = brackets;
    lj["jacobi_check"] = report_json(rep);
    j["linfinity"] = lj;
  }

  if (!json_out.empty()) write_text_file(json_out, dump_json(j));
  return exit_code;
}

int cmd_multicomplex(const std::string& file, const std::string& json_out) {
  Multicomplex m = parse_bicomplex_json(read_text_file(file));
  DeformationRetract r =
      deformation_retract(ChainComplex(m.space, m.d));
  Multicomplex t = transfer_multicomplex(m, r);

  std::cout << "bicomplex: " << m.space.total_dim()
            << " basis elements; homology dimension "
            << t.space.total_dim() << "\n";
  for (int g = 0; g < t.space.total_dim(); ++g) {
    std::cout << "  " << t.space.name_of(g) << " (col " << t.column_of(g)
              << ", row " << t.row_of(g) << ")\n";
  }
  if (t.ops.empty()) {
    std::cout << "all transferred operators vanish\n";
  }
  for (const auto& [n, dn] : t.ops) {
    std::cout << "d_" << n << ":\n";
    for (int g = 0; g < t.space.total_dim(); ++g) {
      SparseVec out = dn.apply_sparse(SparseVec{{g, Rational(1)}});
      if (out.empty()) continue;
      std::cout << "  " << t.space.name_of(g) << " -> "
                << render_sparse(out, t.space) << "\n";
    }
  }
  int max_op = t.ops.empty() ? 0 : t.ops.rbegin()->first;
  std::cout << "operator relations: pass through n = " << 2 * max_op << "\n";

  if (!json_out.empty()) {
    Json j;
    j["schema_version"] = kSchemaVersion;
    j["kind"] = "multicomplex-transfer";
    Json basis = Json::array();
    for (int g = 0; g < t.space.total_dim(); ++g) {
      Json item;
      item["name"] = t.space.name_of(g);
      item["col"] = t.column_of(g);
      item["row"] = t.row_of(g);
      basis.push_back(item);
    }
    j["homology_basis"] = basis;
    Json ops = Json::array();
    for (const auto& [n, dn] : t.ops) {
      Json oj = linear_map_json(dn);
      oj["n"] = n;
      ops.push_back(oj);
    }
    j["operators"] = ops;
    RelationReport rep;
    rep.checked_arity = 2 * max_op;
    j["relation_check"] = report_json(rep);
    write_text_file(json_out, dump_json(j));
  }
  return 0;
}

int cmd_preset(const std::string& name) {
  std::cout << serialize_presentation(preset_presentation(name));
  return 0;
}

}  // namespace

int run_cli(int argc, char** argv) {
  CLI::App app{
      "opal: exact certification of operad presentations (rewriting, "
      "normal-form bases, Koszul duals) and homotopy transfer of algebraic "
      "structures over the rationals"};
  app.require_subcommand(1);

  std::string ck_file, ck_diagram_dir, ck_json;
  CLI::App* ck = app.add_subcommand(
      "check-koszul",
      "resolve all critical monomials of a binary quadratic presentation");
  ck->add_option("file", ck_file, ".opd file or preset:NAME")->required();
  ck->add_option("--emit-diagram", ck_diagram_dir,
                 "write one DOT reduction diagram per critical monomial");
  ck->add_option("--json", ck_json, "write the certificate as JSON");

  std::string kd_file, kd_out;
  CLI::App* kd =
      app.add_subcommand("koszul-dual", "compute the dual presentation");
  kd->add_option("file", kd_file, ".opd file or preset:NAME")->required();
  kd->add_option("--out", kd_out, "also write the dual presentation here");

  std::string pbw_file;
  int pbw_arity = 0;
  CLI::App* pb = app.add_subcommand(
      "pbw", "enumerate the normal-form monomial basis per arity");
  pb->add_option("file", pbw_file, ".opd file or preset:NAME")->required();
  pb->add_option("--max-arity", pbw_arity, "largest arity to enumerate")
      ->required()
      ->check(CLI::Range(2, 8));

  std::string red_file, red_expr;
  CLI::App* rd = app.add_subcommand(
      "reduce", "rewrite a tree polynomial to its normal form");
  rd->add_option("file", red_file, ".opd file or preset:NAME")->required();
  rd->add_option("--expr", red_expr, "tree polynomial, e.g. \"m(m(1,2),3)\"")
      ->required();

  std::string tr_file, tr_json;
  int tr_arity = 5;
  std::vector<std::string> tr_massey;
  bool tr_shuffles = false;
  bool tr_linf = false;
  CLI::App* tr = app.add_subcommand(
      "transfer",
      "transfer the algebra structure of a dg-algebra onto its homology");
  tr->add_option("file", tr_file, "dg-algebra JSON file")->required();
  tr->add_option("--max-arity", tr_arity,
                 "verify and report operations through this arity")
      ->check(CLI::Range(2, 8));
  tr->add_option("--massey", tr_massey,
                 "three cycle names: compare the classical triple product "
                 "with the transferred mu_3")
      ->expected(3);
  tr->add_flag("--check-shuffles", tr_shuffles,
               "verify shuffle-sum vanishing of the transferred operations");
  tr->add_flag("--linfinity", tr_linf,
               "antisymmetrize and verify the generalized Jacobi relations");
  tr->add_option("--json", tr_json, "write the full report as JSON");

  std::string mc_file, mc_json;
  CLI::App* mc = app.add_subcommand(
      "multicomplex",
      "transfer a bicomplex to the staircase operators on homology");
  mc->add_option("file", mc_file, "bicomplex JSON file")->required();
  mc->add_option("--json", mc_json, "write the full report as JSON");

  std::string preset_name;
  CLI::App* pr =
      app.add_subcommand("preset", "print a built-in presentation");
  pr->add_option("name", preset_name,
                 "one of: As, Com, Lie, modified-As")
      ->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (app.got_subcommand(ck)) {
      return cmd_check_koszul(ck_file, ck_diagram_dir, ck_json);
    }
    if (app.got_subcommand(kd)) return cmd_koszul_dual(kd_file, kd_out);
    if (app.got_subcommand(pb)) return cmd_pbw(pbw_file, pbw_arity);
    if (app.got_subcommand(rd)) return cmd_reduce(red_file, red_expr);
    if (app.got_subcommand(tr)) {
      return cmd_transfer(tr_file, tr_arity, tr_massey, tr_shuffles, tr_linf,
                          tr_json);
    }
    if (app.got_subcommand(mc)) return cmd_multicomplex(mc_file, mc_json);
    if (app.got_subcommand(pr)) return cmd_preset(preset_name);
  } catch (const error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}

}  // namespace opal
