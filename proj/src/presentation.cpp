#include "opal/presentation.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

#include "opal/matrix.hpp"

namespace opal {

namespace {

enum class Tok { ident, integer, punct, end };

struct Token {
  Tok kind;
  std::string text;
  int line, col;
};

class Lexer {
 public:
  explicit Lexer(const std::string& text) : text_(text) { advance(); }

  const Token& peek() const { return current_; }

  Token take() {
    Token t = current_;
    advance();
    return t;
  }

 private:
  void advance() {
    while (pos_ < text_.size()) {
      char c = text_[pos_];
      if (c == '#') {
        while (pos_ < text_.size() && text_[pos_] != '\n') ++pos_;
      } else if (c == '\n') {
        ++pos_;
        ++line_;
        col_ = 1;
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        ++pos_;
        ++col_;
      } else {
        break;
      }
    }
    if (pos_ >= text_.size()) {
      current_ = {Tok::end, "", line_, col_};
      return;
    }
    char c = text_[pos_];
    int line = line_, col = col_;
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::string s;
      while (pos_ < text_.size()) {
        char d = text_[pos_];
        if (std::isalnum(static_cast<unsigned char>(d)) || d == '_' ||
            d == '\'') {
          s += d;
          ++pos_;
          ++col_;
        } else {
          break;
        }
      }
      current_ = {Tok::ident, s, line, col};
    } else if (std::isdigit(static_cast<unsigned char>(c))) {
      std::string s;
      while (pos_ < text_.size() &&
             std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
        s += text_[pos_];
        ++pos_;
        ++col_;
      }
      current_ = {Tok::integer, s, line, col};
    } else if (std::string("{}();:,*+-/").find(c) != std::string::npos) {
      current_ = {Tok::punct, std::string(1, c), line, col};
      ++pos_;
      ++col_;
    } else {
      throw parse_error(std::string("unexpected character '") + c + "'", line_,
                        col_);
    }
  }

  const std::string& text_;
  std::size_t pos_ = 0;
  int line_ = 1, col_ = 1;
  Token current_{Tok::end, "", 1, 1};
};

[[noreturn]] void fail(const Token& t, const std::string& expected) {
  std::string got = t.kind == Tok::end ? "end of input" : "'" + t.text + "'";
  throw parse_error("expected " + expected + ", got " + got, t.line, t.col);
}

Token expect_punct(Lexer& lex, const std::string& p) {
  Token t = lex.take();
  if (t.kind != Tok::punct || t.text != p) fail(t, "'" + p + "'");
  return t;
}

Token expect_ident(Lexer& lex, const std::string& what) {
  Token t = lex.take();
  if (t.kind != Tok::ident) fail(t, what);
  return t;
}

long expect_integer(Lexer& lex) {
  bool neg = false;
  if (lex.peek().kind == Tok::punct && lex.peek().text == "-") {
    lex.take();
    neg = true;
  }
  Token t = lex.take();
  if (t.kind != Tok::integer) fail(t, "an integer");
  long v = std::stol(t.text);
  return neg ? -v : v;
}

// tree := IDENT '(' arg (',' arg)* ')' ; arg := INT | tree
struct ParsedTree {
  PlanarTree shape;
  std::vector<int> labels;  // raw leaf integers, planar order
  std::vector<int> gens;    // preorder
};

ParsedTree parse_tree(Lexer& lex, const GeneratorSet& gens) {
  Token name = expect_ident(lex, "a generator name");
  int id = gens.find(name.text);
  if (id < 0)
    throw semantic_error("unknown generator '" + name.text + "' at line " +
                         std::to_string(name.line));
  expect_punct(lex, "(");
  ParsedTree out;
  out.gens.push_back(id);
  std::vector<PlanarTree> children;
  while (true) {
    if (lex.peek().kind == Tok::integer) {
      Token lab = lex.take();
      children.push_back(PlanarTree::leaf());
      out.labels.push_back(static_cast<int>(std::stol(lab.text)));
    } else {
      ParsedTree sub = parse_tree(lex, gens);
      children.push_back(std::move(sub.shape));
      out.labels.insert(out.labels.end(), sub.labels.begin(), sub.labels.end());
      out.gens.insert(out.gens.end(), sub.gens.begin(), sub.gens.end());
    }
    Token t = lex.take();
    if (t.kind == Tok::punct && t.text == ",") continue;
    if (t.kind == Tok::punct && t.text == ")") break;
    fail(t, "',' or ')'");
  }
  int expected = gens.at(id).arity;
  if (static_cast<int>(children.size()) != expected)
    throw semantic_error("generator '" + name.text + "' has arity " +
                         std::to_string(expected) + " but was applied to " +
                         std::to_string(children.size()) + " arguments");
  out.shape = PlanarTree::node(std::move(children));
  return out;
}

void validate_monomial(const TreeMonomial& m, OperadMode mode,
                       const std::string& context) {
  int n = m.arity();
  std::vector<int> sorted = m.labels;
  std::sort(sorted.begin(), sorted.end());
  for (int i = 0; i < n; ++i)
    if (sorted[i] != i + 1)
      throw semantic_error(context + ": leaf labels must be a permutation of 1.." +
                           std::to_string(n));
  if (mode == OperadMode::ns) {
    for (int i = 0; i < n; ++i)
      if (m.labels[i] != i + 1)
        throw semantic_error(context +
                             ": ns monomials need leaves labeled 1..n left to right");
  } else {
    if (!is_shuffle_tree(LabeledTree{m.shape, m.labels}))
      throw semantic_error(context + ": labels violate the shuffle condition");
  }
}

TreePolynomial parse_polynomial(Lexer& lex, const GeneratorSet& gens,
                                OperadMode mode, const std::string& context,
                                int* arity_out) {
  TreePolynomial poly;
  int arity = -1;
  bool first = true;
  while (true) {
    Rational sign = 1;
    if (lex.peek().kind == Tok::punct &&
        (lex.peek().text == "+" || lex.peek().text == "-")) {
      if (lex.take().text == "-") sign = -1;
    } else if (!first) {
      break;
    }
    Rational coeff = 1;
    if (lex.peek().kind == Tok::integer) {
      Token num = lex.take();
      coeff = Rational(mpz_class(num.text));
      if (lex.peek().kind == Tok::punct && lex.peek().text == "/") {
        lex.take();
        Token den = lex.take();
        if (den.kind != Tok::integer) fail(den, "a denominator");
        mpz_class d(den.text);
        if (d == 0)
          throw parse_error("zero denominator", den.line, den.col);
        coeff /= Rational(d);
      }
      expect_punct(lex, "*");
    }
    ParsedTree t = parse_tree(lex, gens);
    TreeMonomial m{std::move(t.shape), std::move(t.labels), std::move(t.gens)};
    validate_monomial(m, mode, context);
    if (arity < 0)
      arity = m.arity();
    else if (m.arity() != arity)
      throw semantic_error(context + ": terms of different arities (" +
                           std::to_string(arity) + " vs " +
                           std::to_string(m.arity()) + ")");
    poly.add_term(m, sign * coeff);
    first = false;
  }
  if (arity_out) *arity_out = arity;
  return poly;
}

}  // namespace

Presentation parse_presentation(const std::string& text) {
  Lexer lex(text);
  Presentation p;
  Token kw = expect_ident(lex, "'operad'");
  if (kw.text != "operad") fail(kw, "'operad'");
  p.name = expect_ident(lex, "an operad name").text;
  expect_punct(lex, "{");
  bool mode_seen = false;
  int relator_count = 0;
  while (true) {
    Token t = lex.take();
    if (t.kind == Tok::punct && t.text == "}") break;
    if (t.kind != Tok::ident) fail(t, "'mode', 'generator', 'relation' or '}'");
    if (t.text == "mode") {
      if (mode_seen)
        throw semantic_error("mode declared twice in operad '" + p.name + "'");
      Token m = expect_ident(lex, "'ns' or 'shuffle'");
      if (m.text == "ns")
        p.mode = OperadMode::ns;
      else if (m.text == "shuffle")
        p.mode = OperadMode::shuffle;
      else
        fail(m, "'ns' or 'shuffle'");
      mode_seen = true;
      expect_punct(lex, ";");
    } else if (t.text == "generator") {
      if (!mode_seen)
        throw semantic_error("mode must be declared before generators");
      Generator g;
      g.name = expect_ident(lex, "a generator name").text;
      expect_punct(lex, ":");
      Token a = expect_ident(lex, "'arity'");
      if (a.text != "arity") fail(a, "'arity'");
      g.arity = static_cast<int>(expect_integer(lex));
      while (lex.peek().kind == Tok::punct && lex.peek().text == ",") {
        lex.take();
        Token attr = expect_ident(lex, "'degree', 'symmetric' or 'skew'");
        if (attr.text == "degree") {
          g.degree = static_cast<int>(expect_integer(lex));
        } else if (attr.text == "symmetric") {
          g.symmetry = Symmetry::symmetric;
        } else if (attr.text == "skew") {
          g.symmetry = Symmetry::skew;
        } else {
          fail(attr, "'degree', 'symmetric' or 'skew'");
        }
      }
      expect_punct(lex, ";");
      if (g.symmetry != Symmetry::none && p.mode == OperadMode::ns)
        throw semantic_error("generator '" + g.name +
                             "': symmetry attributes require shuffle mode");
      p.gens.add(g);
    } else if (t.text == "relation") {
      if (!mode_seen)
        throw semantic_error("mode must be declared before relations");
      ++relator_count;
      std::string context = "relation #" + std::to_string(relator_count);
      TreePolynomial poly =
          parse_polynomial(lex, p.gens, p.mode, context, nullptr);
      if (poly.is_zero())
        throw semantic_error(context + ": relator collapses to zero");
      p.relators.push_back(std::move(poly));
      expect_punct(lex, ";");
    } else {
      fail(t, "'mode', 'generator', 'relation' or '}'");
    }
  }
  Token end = lex.take();
  if (end.kind != Tok::end) fail(end, "end of input");
  if (!mode_seen)
    throw semantic_error("operad '" + p.name + "' declares no mode");
  return p;
}

TreePolynomial parse_tree_polynomial(const std::string& text,
                                     const GeneratorSet& gens, OperadMode mode,
                                     int* arity_out) {
  Lexer lex(text);
  TreePolynomial poly =
      parse_polynomial(lex, gens, mode, "expression", arity_out);
  Token end = lex.take();
  if (end.kind != Tok::end) fail(end, "end of input");
  return poly;
}

std::string serialize_presentation(const Presentation& p) {
  std::ostringstream os;
  for (const std::string& a : p.annotations) os << "# " << a << "\n";
  os << "operad " << p.name << " {\n";
  os << "  mode " << (p.mode == OperadMode::ns ? "ns" : "shuffle") << ";\n";
  for (int i = 0; i < p.gens.size(); ++i) {
    const Generator& g = p.gens.at(i);
    os << "  generator " << g.name << " : arity " << g.arity;
    if (g.degree != 0) os << ", degree " << g.degree;
    if (g.symmetry == Symmetry::symmetric) os << ", symmetric";
    if (g.symmetry == Symmetry::skew) os << ", skew";
    os << ";\n";
  }
  for (const TreePolynomial& r : p.relators)
    os << "  relation " << render(r, p.gens) << ";\n";
  os << "}\n";
  return os.str();
}

std::vector<NormalizedRelator> normalize_relators(const Presentation& p,
                                                  int* dropped) {
  // Group relators by (arity, weight); each group is row-reduced against the
  // path order with larger monomials first.
  std::map<std::pair<int, int>, std::vector<const TreePolynomial*>> groups;
  for (const TreePolynomial& r : p.relators) {
    if (r.is_zero()) continue;
    int arity = r.terms.begin()->first.arity();
    int weight = r.terms.begin()->first.weight();
    for (const auto& [m, c] : r.terms) {
      if (m.arity() != arity)
        throw semantic_error("relator '" + render(r, p.gens) +
                             "' mixes arities");
      if (m.weight() != weight)
        throw semantic_error("relator '" + render(r, p.gens) +
                             "' mixes weights");
    }
    groups[{arity, weight}].push_back(&r);
  }
  std::vector<NormalizedRelator> out;
  int removed = 0;
  for (const auto& [key, group] : groups) {
    // Collect the support, sorted descending (leading monomials first).
    std::vector<TreeMonomial> basis;
    for (const TreePolynomial* r : group)
      for (const auto& [m, c] : r->terms) basis.push_back(m);
    std::sort(basis.begin(), basis.end(),
              [](const TreeMonomial& a, const TreeMonomial& b) {
                return compare_monomials(a, b) > 0;
              });
    basis.erase(std::unique(basis.begin(), basis.end()), basis.end());
    QMatrix rows(group.size(), basis.size());
    for (std::size_t r = 0; r < group.size(); ++r)
      for (const auto& [m, c] : group[r]->terms) {
        auto it = std::find(basis.begin(), basis.end(), m);
        rows.at(r, it - basis.begin()) = c;
      }
    RrefResult red = rref(rows);
    removed += static_cast<int>(group.size() - red.pivot_cols.size());
    for (std::size_t r = 0; r < red.pivot_cols.size(); ++r) {
      NormalizedRelator nr;
      nr.leading = basis[red.pivot_cols[r]];
      for (std::size_t c = red.pivot_cols[r] + 1; c < basis.size(); ++c)
        if (red.mat.at(r, c) != 0) nr.tail.add_term(basis[c], -red.mat.at(r, c));
      out.push_back(std::move(nr));
    }
  }
  if (dropped) *dropped = removed;
  return out;
}

Presentation preset_presentation(const std::string& name) {
  auto make = [](const std::string& text) { return parse_presentation(text); };
  if (name == "As")
    return make(
        "operad As {\n"
        "  mode ns;\n"
        "  generator m : arity 2;\n"
        "  relation m(m(1,2),3) - m(1,m(2,3));\n"
        "}\n");
  if (name == "modified-As")
    return make(
        "operad modified_As {\n"
        "  mode ns;\n"
        "  generator m : arity 2;\n"
        "  relation m(m(1,2),3) - 2*m(1,m(2,3));\n"
        "}\n");
  if (name == "Com")
    return make(
        "operad Com {\n"
        "  mode shuffle;\n"
        "  generator m : arity 2, symmetric;\n"
        "  relation m(m(1,2),3) - m(m(1,3),2);\n"
        "  relation m(m(1,3),2) - m(1,m(2,3));\n"
        "}\n");
  if (name == "Lie")
    return make(
        "operad Lie {\n"
        "  mode shuffle;\n"
        "  generator b : arity 2, skew;\n"
        "  relation b(b(1,2),3) - b(b(1,3),2) - b(1,b(2,3));\n"
        "}\n");
  throw semantic_error("unknown preset '" + name +
                       "' (available: As, Com, Lie, modified-As)");
}

std::vector<std::string> preset_names() {
  return {"As", "Com", "Lie", "modified-As"};
}

}  // namespace opal
