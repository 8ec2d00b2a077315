#include "opal/multilinear.hpp"

namespace opal {

void sparse_add(SparseVec& target, int index, const Rational& coeff) {
  if (coeff == 0) return;
  auto [it, inserted] = target.emplace(index, coeff);
  if (!inserted) {
    it->second += coeff;
    if (it->second == 0) target.erase(it);
  }
}

SparseVec sparse_sum(const SparseVec& a, const SparseVec& b) {
  SparseVec out = a;
  for (const auto& [i, c] : b) sparse_add(out, i, c);
  return out;
}

SparseVec sparse_scale(const SparseVec& v, const Rational& c) {
  SparseVec out;
  if (c == 0) return out;
  for (const auto& [i, x] : v) out.emplace(i, x * c);
  return out;
}

bool sparse_is_zero(const SparseVec& v) { return v.empty(); }

void MultiMap::add_entry(const std::vector<int>& key, int out,
                         const Rational& coeff) {
  if (static_cast<int>(key.size()) != arity)
    throw error("MultiMap entry with wrong arity");
  if (coeff == 0) return;
  SparseVec& v = table[key];
  sparse_add(v, out, coeff);
  if (v.empty()) table.erase(key);
}

const SparseVec* MultiMap::find(const std::vector<int>& key) const {
  auto it = table.find(key);
  return it == table.end() ? nullptr : &it->second;
}

bool MultiMap::is_zero() const {
  for (const auto& [k, v] : table)
    if (!v.empty()) return false;
  return true;
}

bool MultiMap::operator==(const MultiMap& other) const {
  if (arity != other.arity || degree != other.degree) return false;
  auto trimmed = [](const MultiMap& m) {
    std::map<std::vector<int>, SparseVec> t;
    for (const auto& [k, v] : m.table)
      if (!v.empty()) t.emplace(k, v);
    return t;
  };
  return trimmed(*this) == trimmed(other);
}

SparseVec eval_multilinear(const MultiMap& f,
                           const std::vector<SparseVec>& args) {
  if (static_cast<int>(args.size()) != f.arity)
    throw error("eval_multilinear arity mismatch");
  SparseVec out;
  std::vector<int> key(f.arity);
  Rational coeff;
  auto rec = [&](auto&& self, int slot, const Rational& acc) -> void {
    if (slot == f.arity) {
      const SparseVec* v = f.find(key);
      if (!v) return;
      for (const auto& [i, c] : *v) sparse_add(out, i, c * acc);
      return;
    }
    for (const auto& [i, c] : args[slot]) {
      key[slot] = i;
      self(self, slot + 1, acc * c);
    }
  };
  rec(rec, 0, Rational(1));
  return out;
}

void check_multimap_degree(const MultiMap& f, const GradedSpace& space) {
  for (const auto& [key, value] : f.table) {
    int in_deg = tuple_degree(space, key) + f.degree;
    for (const auto& [out, c] : value) {
      if (c == 0) continue;
      if (space.degree_of(out) != in_deg) {
        std::string names;
        for (int k : key) names += " " + space.name_of(k);
        throw error("map entry on (" + names + " ) -> " + space.name_of(out) +
                    " violates the declared degree");
      }
    }
  }
}

int tuple_degree(const GradedSpace& space, const std::vector<int>& key) {
  int d = 0;
  for (int k : key) d += space.degree_of(k);
  return d;
}

std::vector<std::vector<int>> all_basis_tuples(const GradedSpace& space,
                                               int length) {
  std::vector<std::vector<int>> out;
  int n = space.total_dim();
  if (length == 0) {
    out.push_back({});
    return out;
  }
  if (n == 0) return out;
  std::vector<int> key(length, 0);
  while (true) {
    out.push_back(key);
    int slot = length - 1;
    while (slot >= 0 && key[slot] == n - 1) {
      key[slot] = 0;
      --slot;
    }
    if (slot < 0) break;
    ++key[slot];
  }
  return out;
}

}  // namespace opal
