#include "opal/io_json.hpp"

#include <fstream>
#include <sstream>
#include <utility>
#include <vector>

namespace opal {

namespace {

const Json& require_field(const Json& j, const char* key,
                          const std::string& ctx) {
  if (!j.is_object() || !j.contains(key)) {
    throw semantic_error(ctx + ": missing field '" + key + "'");
  }
  return j.at(key);
}

const Json& require_array(const Json& v, const std::string& ctx) {
  if (!v.is_array()) throw semantic_error(ctx + " must be an array");
  return v;
}

int require_int(const Json& v, const std::string& ctx) {
  if (!v.is_number_integer()) {
    throw semantic_error(ctx + " must be an integer");
  }
  return v.get<int>();
}

std::string require_string(const Json& v, const std::string& ctx) {
  if (!v.is_string()) throw semantic_error(ctx + " must be a string");
  return v.get<std::string>();
}

Rational require_coeff(const Json& entry, const std::string& ctx) {
  std::string text = require_string(require_field(entry, "coeff", ctx), ctx);
  try {
    return rational_from_string(text);
  } catch (const error&) {
    throw semantic_error(ctx + ": bad rational '" + text + "'");
  }
}

int require_name_index(const GradedSpace& space, const Json& entry,
                       const char* key, const std::string& ctx) {
  std::string name = require_string(require_field(entry, key, ctx),
                                    ctx + " field '" + key + "'");
  int g = space.find(name);
  if (g < 0) {
    throw semantic_error(ctx + ": unknown basis element '" + name + "'");
  }
  return g;
}

Json parse_document(const std::string& text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const std::exception& e) {
    throw semantic_error(std::string("invalid JSON: ") + e.what());
  }
  if (!j.is_object()) throw semantic_error("top-level JSON must be an object");
  const Json& v = require_field(j, "schema_version", "document");
  if (!v.is_number_integer() || v.get<int>() != kSchemaVersion) {
    throw semantic_error("unsupported schema_version (expected " +
                         std::to_string(kSchemaVersion) + ")");
  }
  return j;
}

// Reads a "basis" array into graded components plus, per element, an
// arbitrary payload computed by `decode` (degree for complexes, bidegree for
// bicomplexes).  Duplicate or empty names are rejected here so the message
// names the culprit.
template <typename Decode>
GradedSpace read_basis(const Json& doc,
                       std::vector<std::pair<std::string, int>>* order,
                       Decode&& decode) {
  const Json& arr = require_array(require_field(doc, "basis", "document"),
                                  "'basis'");
  std::map<int, std::vector<std::string>> comps;
  std::map<std::string, bool> seen;
  for (const Json& item : arr) {
    std::string name =
        require_string(require_field(item, "name", "basis entry"),
                       "basis entry field 'name'");
    if (name.empty()) throw semantic_error("basis names must be nonempty");
    if (seen.count(name)) {
      throw semantic_error("duplicate basis element '" + name + "'");
    }
    seen[name] = true;
    int degree = decode(item, name);
    comps[degree].push_back(name);
    if (order != nullptr) order->emplace_back(name, degree);
  }
  if (comps.empty()) throw semantic_error("the basis must be nonempty");
  return GradedSpace(comps);
}

LinearMap read_map_entries(const Json& doc, const char* key,
                           const GradedSpace& space, int degree) {
  LinearMap f(space, space, degree);
  const Json& arr =
      require_array(require_field(doc, key, "document"),
                    std::string("'") + key + "'");
  std::string ctx = std::string("'") + key + "' entry";
  for (const Json& item : arr) {
    int from = require_name_index(space, item, "from", ctx);
    int to = require_name_index(space, item, "to", ctx);
    if (space.degree_of(to) != space.degree_of(from) + degree) {
      throw semantic_error(ctx + " from '" + space.name_of(from) + "' to '" +
                           space.name_of(to) + "' is not a degree " +
                           std::to_string(degree) + " move");
    }
    Rational c = require_coeff(item, ctx);
    f.set_entry(to, from, f.entry(to, from) + c);
  }
  return f;
}

}  // namespace

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw error("cannot open file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) throw error("cannot read file '" + path + "'");
  return buf.str();
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw error("cannot open file '" + path + "' for writing");
  out << content;
  out.flush();
  if (!out) throw error("cannot write file '" + path + "'");
}

std::string dump_json(const Json& j) { return j.dump(2) + "\n"; }

DgAlgebra parse_dga_json(const std::string& text) {
  Json doc = parse_document(text);
  GradedSpace space =
      read_basis(doc, nullptr, [](const Json& item, const std::string&) {
        return require_int(require_field(item, "degree", "basis entry"),
                           "basis entry field 'degree'");
      });

  LinearMap d = read_map_entries(doc, "differential", space, -1);

  MultiMap product;
  product.arity = 2;
  product.degree = 0;
  const Json& arr = require_array(
      require_field(doc, "product", "document"), "'product'");
  for (const Json& item : arr) {
    int left = require_name_index(space, item, "left", "'product' entry");
    int right = require_name_index(space, item, "right", "'product' entry");
    int out = require_name_index(space, item, "out", "'product' entry");
    if (space.degree_of(out) !=
        space.degree_of(left) + space.degree_of(right)) {
      throw semantic_error("'product' entry (" + space.name_of(left) + ", " +
                           space.name_of(right) + ") -> " +
                           space.name_of(out) + " is not degree-preserving");
    }
    product.add_entry({left, right}, out, require_coeff(item, "'product' entry"));
  }

  try {
    return DgAlgebra(ChainComplex(space, std::move(d)), std::move(product));
  } catch (const semantic_error&) {
    throw;
  } catch (const error& e) {
    // d^2 = 0, the Leibniz rule, and associativity are input requirements.
    throw semantic_error(e.what());
  }
}

Multicomplex parse_bicomplex_json(const std::string& text) {
  Json doc = parse_document(text);
  std::map<std::string, std::pair<int, int>> bidegree_of;
  GradedSpace space = read_basis(
      doc, nullptr, [&](const Json& item, const std::string& name) {
        int col = require_int(require_field(item, "col", "basis entry"),
                              "basis entry field 'col'");
        int row = require_int(require_field(item, "row", "basis entry"),
                              "basis entry field 'row'");
        bidegree_of[name] = {col, row};
        return col + row;
      });
  std::vector<std::pair<int, int>> bidegree(space.total_dim());
  for (int g = 0; g < space.total_dim(); ++g) {
    bidegree[g] = bidegree_of.at(space.name_of(g));
  }

  LinearMap d = read_map_entries(doc, "d", space, -1);
  LinearMap delta = read_map_entries(doc, "delta", space, -1);
  return make_bicomplex(std::move(space), std::move(bidegree), std::move(d),
                        std::move(delta));
}

Json basis_json(const GradedSpace& space) {
  Json arr = Json::array();
  for (int g = 0; g < space.total_dim(); ++g) {
    Json item;
    item["name"] = space.name_of(g);
    item["degree"] = space.degree_of(g);
    arr.push_back(item);
  }
  return arr;
}

Json linear_map_json(const LinearMap& f) {
  Json entries = Json::array();
  const GradedSpace& src = f.source();
  const GradedSpace& tgt = f.target();
  for (const auto& [deg, names] : src.components()) {
    (void)names;
    if (tgt.dim(deg + f.degree()) == 0) continue;
    const QMatrix& blk = f.block(deg);
    for (std::size_t c = 0; c < blk.cols(); ++c) {
      for (std::size_t r = 0; r < blk.rows(); ++r) {
        if (blk.at(r, c) == 0) continue;
        Json item;
        item["from"] = src.name_of(src.global_index(deg, static_cast<int>(c)));
        item["to"] = tgt.name_of(
            tgt.global_index(deg + f.degree(), static_cast<int>(r)));
        item["coeff"] = rational_to_string(blk.at(r, c));
        entries.push_back(item);
      }
    }
  }
  Json out;
  out["degree"] = f.degree();
  out["entries"] = entries;
  return out;
}

Json multimap_json(const MultiMap& f, const GradedSpace& space) {
  Json entries = Json::array();
  for (const auto& [key, value] : f.table) {
    for (const auto& [out_index, coeff] : value) {
      Json item;
      Json args = Json::array();
      for (int g : key) args.push_back(space.name_of(g));
      item["args"] = args;
      item["out"] = space.name_of(out_index);
      item["coeff"] = rational_to_string(coeff);
      entries.push_back(item);
    }
  }
  Json out;
  out["arity"] = f.arity;
  out["degree"] = f.degree;
  out["entries"] = entries;
  return out;
}

}  // namespace opal
