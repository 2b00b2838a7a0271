#pragma once

#include <map>
#include <optional>
#include <vector>

#include "voa/expr.hpp"

namespace voa {

// Incremental reduced row-echelon basis of a span of sparse vectors. Each
// row has coefficient 1 at its pivot, the largest key it contains, and no
// other pivot keys, so the remainder of reduce() is a canonical
// representative modulo the span.
template <class Key>
class Echelon {
 public:
  using Vec = LinComb<Key>;

  std::size_t rank() const { return rows_.size(); }
  const std::map<Key, Vec>& rows() const { return rows_; }

  Vec reduce(const Vec& v) const {
    Vec r = v;
    for (auto& [k, c] : v.terms())
      if (auto it = rows_.find(k); it != rows_.end()) r.add(it->second, -c);
    return r;
  }

  bool contains(const Vec& v) const { return reduce(v).is_zero(); }

  // adds v to the span; returns the new row if v was independent
  std::optional<Vec> insert(const Vec& v) {
    Vec r = reduce(v);
    if (r.is_zero()) return std::nullopt;
    const Key pivot = r.terms().rbegin()->first;
    r = r.scaled(Scalar(1) / r.terms().rbegin()->second);
    for (auto& [_, row] : rows_) {
      Scalar c = row.coeff(pivot);
      if (!c.is_zero()) row.add(r, -c);
    }
    rows_.emplace(pivot, r);
    return r;
  }

 private:
  std::map<Key, Vec> rows_;
};

// Basis of {x : Σ x_i v_i = 0}.
template <class Key>
std::vector<std::vector<Scalar>> kernel(const std::vector<LinComb<Key>>& vs) {
  // row i: v_i together with a tag column recording the combination
  std::vector<std::pair<LinComb<Key>, std::map<std::size_t, Scalar>>> rows;
  std::map<Key, std::size_t> pivot_row;
  std::vector<std::vector<Scalar>> out;
  for (std::size_t i = 0; i < vs.size(); ++i) {
    LinComb<Key> v = vs[i];
    std::map<std::size_t, Scalar> tag{{i, Scalar(1)}};
    while (!v.is_zero()) {
      const Key* hit = nullptr;
      for (auto it = v.terms().rbegin(); it != v.terms().rend(); ++it)
        if (pivot_row.count(it->first)) {
          hit = &it->first;
          break;
        }
      if (!hit) break;
      auto& [rv, rt] = rows[pivot_row.at(*hit)];
      Scalar c = v.coeff(*hit);
      v.add(rv, -c);
      for (auto& [j, s] : rt) {
        Scalar& slot = tag[j];
        slot = slot - c * s;
      }
    }
    if (v.is_zero()) {
      std::vector<Scalar> x(vs.size());
      for (auto& [j, s] : tag) x[j] = s;
      out.push_back(std::move(x));
      continue;
    }
    Scalar lead = v.terms().rbegin()->second;
    Scalar inv = Scalar(1) / lead;
    for (auto& [j, s] : tag) s = s * inv;
    pivot_row[v.terms().rbegin()->first] = rows.size();
    rows.emplace_back(v.scaled(inv), std::move(tag));
  }
  return out;
}

}  // namespace voa
