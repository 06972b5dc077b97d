#pragma once

// Independent reference computations for the unit and acceptance tests.
// None of these use the library's algebra code.

#include <gmpxx.h>

#include <cstddef>
#include <map>
#include <vector>

namespace oracle {

/// Number of partitions of n by recursive enumeration of non-increasing parts.
inline std::size_t partitions(int n, int largest = -1) {
  if (largest < 0) largest = n;
  if (n == 0) return 1;
  std::size_t count = 0;
  for (int part = std::min(n, largest); part >= 1; --part) count += partitions(n - part, part);
  return count;
}

/// Number of pairs of partitions (lambda, mu) with |lambda| + |mu| = n.
inline std::size_t bipartitions(int n) {
  std::size_t count = 0;
  for (int k = 0; k <= n; ++k) count += partitions(k) * partitions(n - k);
  return count;
}

/// Monomial in x_i, y_j as sorted exponent vectors (x orders then y orders).
using Mono = std::vector<int>;  // entries: 2*order + gen
using Poly = std::map<Mono, mpq_class>;

inline int mono_weight(const Mono& m) {
  int w = 0;
  for (int v : m) w += v / 2 + 1;
  return w;
}

/// All monomials of weight w in variables gen in {0, .., gens-1}, order >= 0.
inline void monomials(int w, int gens, int min_var, Mono& cur, std::vector<Mono>& out) {
  if (w == 0) {
    out.push_back(cur);
    return;
  }
  for (int v = min_var; v / gens + 1 <= w; ++v) {
    cur.push_back(v);
    monomials(w - (v / gens + 1), gens, v, cur, out);
    cur.pop_back();
  }
}

/// dim of weight w in the jets of C[x, y]/(xy): monomial count minus the
/// rank of { m * d^k(x0 y0) } computed by exact Gaussian elimination.
inline std::size_t jet_xy_dimension(int w) {
  std::vector<Mono> basis;
  Mono cur;
  monomials(w, 2, 0, cur, basis);
  std::map<Mono, std::size_t> index;
  for (std::size_t i = 0; i < basis.size(); ++i) index[basis[i]] = i;
  std::vector<std::vector<mpq_class>> rows;
  for (int k = 0; k + 2 <= w; ++k) {
    // d^k(x0 y0) = sum_i C(k, i) x_i y_{k-i}
    Poly rel;
    mpq_class c = 1;
    for (int i = 0; i <= k; ++i) {
      Mono m = {2 * i, 2 * (k - i) + 1};
      std::sort(m.begin(), m.end());
      rel[m] += c;
      c = c * (k - i) / (i + 1);
    }
    std::vector<Mono> mult;
    Mono tmp;
    monomials(w - (k + 2), 2, 0, tmp, mult);
    for (const auto& m : mult) {
      std::vector<mpq_class> row(basis.size());
      for (const auto& [r, coef] : rel) {
        Mono prod = m;
        prod.insert(prod.end(), r.begin(), r.end());
        std::sort(prod.begin(), prod.end());
        row[index.at(prod)] += coef;
      }
      rows.push_back(row);
    }
  }
  std::size_t rank = 0;
  for (std::size_t col = 0; col < basis.size() && rank < rows.size(); ++col) {
    std::size_t piv = rank;
    while (piv < rows.size() && rows[piv][col] == 0) ++piv;
    if (piv == rows.size()) continue;
    std::swap(rows[piv], rows[rank]);
    for (std::size_t r = 0; r < rows.size(); ++r) {
      if (r == rank || rows[r][col] == 0) continue;
      mpq_class f = rows[r][col] / rows[rank][col];
      for (std::size_t j = col; j < basis.size(); ++j) rows[r][j] -= f * rows[rank][j];
    }
    ++rank;
  }
  return basis.size() - rank;
}

}  // namespace oracle
