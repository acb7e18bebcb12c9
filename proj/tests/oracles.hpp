#pragma once
// Brute-force reference implementations used to pin down the fast paths.
// Everything here is exponential and only meant for tiny parameters.

#include <algorithm>
#include <set>
#include <vector>

#include "stabhom/ring.hpp"

namespace stabhom::oracle {

inline std::vector<Vec> all_vectors(const Ring& R, int n) {
  std::vector<Vec> out;
  Vec v(n, 0);
  while (true) {
    out.push_back(v);
    int i = n - 1;
    while (i >= 0 && ++v[i] == R.m) v[i--] = 0;
    if (i < 0) break;
  }
  return out;
}

// The span of a row set by exhausting all coefficient tuples.
inline std::set<Vec> span_of(const Ring& R, int n, const std::vector<Vec>& rows) {
  std::set<Vec> out;
  int k = (int)rows.size();
  std::vector<int> c(k, 0);
  while (true) {
    Vec v(n, 0);
    for (int i = 0; i < k; ++i)
      for (int j = 0; j < n; ++j)
        v[j] = R.reduce(v[j] + (long long)c[i] * rows[i][j]);
    out.insert(v);
    int i = k - 1;
    while (i >= 0 && ++c[i] == R.m) c[i--] = 0;
    if (i < 0) break;
  }
  return out;
}

// Unimodularity by exhaustive completion to an invertible square matrix.
inline bool unimodular_by_completion(const Ring& R, const Vec& v) {
  int n = (int)v.size();
  std::vector<Vec> cols{v};
  struct S {
    const Ring& R;
    int n;
    std::vector<Vec>& cols;
    const std::vector<Vec>& pool;
    bool run() {
      if ((int)cols.size() == n) return is_invertible(R, mat_from_cols(cols));
      for (const Vec& c : pool) {
        cols.push_back(c);
        if (run()) return true;
        cols.pop_back();
      }
      return false;
    }
  };
  auto pool = all_vectors(R, n);
  S s{R, n, cols, pool};
  return s.run();
}

// Every distinct submodule of (Z/m)^n, as Howell forms, by spanning all
// generating sets of size <= n drawn from the nonzero vectors.
inline std::vector<Submodule> all_submodules(const Ring& R, int n) {
  std::vector<Vec> pool = all_vectors(R, n);
  std::vector<Submodule> out;
  std::set<std::string> seen;
  std::vector<Vec> gens;
  struct S {
    const Ring& R;
    int n;
    std::vector<Vec>& gens;
    const std::vector<Vec>& pool;
    std::vector<Submodule>& out;
    std::set<std::string>& seen;
    void run(size_t from) {
      Submodule m = howell_form(R, n, gens);
      if (seen.insert(m.bytes()).second) out.push_back(m);
      if ((int)gens.size() == n) return;
      for (size_t i = from; i < pool.size(); ++i) {
        gens.push_back(pool[i]);
        run(i + 1);
        gens.pop_back();
      }
    }
  };
  S s{R, n, gens, pool, out, seen};
  s.run(1);
  std::sort(out.begin(), out.end(), [](const Submodule& a, const Submodule& b) {
    return a.bytes() < b.bytes();
  });
  return out;
}

// Splittability witnessed by an explicit complement among all submodules.
inline bool splittable_by_complement(const Submodule& W,
                                     const std::vector<Submodule>& all) {
  for (const Submodule& C : all)
    if (sum(W, C).is_full() && intersect(W, C).is_zero()) return true;
  return false;
}

// All complements of W, straight from the definition.
inline std::vector<Submodule> complements_by_search(
    const Submodule& W, const std::vector<Submodule>& all) {
  std::vector<Submodule> out;
  for (const Submodule& C : all)
    if (sum(W, C).is_full() && intersect(W, C).is_zero()) out.push_back(C);
  return out;
}

// Smallest free submodule containing W; -1 if none short of the full module
// being non-free (cannot happen: the full module is free).
inline int min_free_cover_rank(const Submodule& W,
                               const std::vector<Submodule>& all) {
  int best = -1;
  for (const Submodule& S : all) {
    if (rank_free(S) < 0) continue;
    bool covers = true;
    for (int i = 0; i < W.howell.rows && covers; ++i)
      covers = S.contains(W.howell.row(i));
    if (covers && (best < 0 || rank_free(S) < best)) best = rank_free(S);
  }
  return best;
}

// Textbook dense Smith normal form over Z (long long; small inputs only).
// Returns all diagonal entries > 0 (rank = count), divisibility chain.
inline std::vector<long long> naive_smith(std::vector<std::vector<long long>> A) {
  std::vector<long long> diag;
  size_t rows = A.size(), cols = rows ? A[0].size() : 0;
  size_t k = 0;
  while (k < rows && k < cols) {
    size_t pr = rows, pc = cols;
    long long best = 0;
    for (size_t i = k; i < rows; ++i)
      for (size_t j = k; j < cols; ++j)
        if (A[i][j] != 0 && (best == 0 || std::llabs(A[i][j]) < best)) {
          best = std::llabs(A[i][j]);
          pr = i;
          pc = j;
        }
    if (pr == rows) break;
    std::swap(A[k], A[pr]);
    for (size_t i = 0; i < rows; ++i) std::swap(A[i][k], A[i][pc]);
    bool clean = true;
    for (size_t i = k + 1; i < rows; ++i)
      if (A[i][k] != 0) {
        long long q = A[i][k] / A[k][k];
        for (size_t j = k; j < cols; ++j) A[i][j] -= q * A[k][j];
        if (A[i][k] != 0) clean = false;
      }
    for (size_t j = k + 1; j < cols; ++j)
      if (A[k][j] != 0) {
        long long q = A[k][j] / A[k][k];
        for (size_t i = k; i < rows; ++i) A[i][j] -= q * A[i][k];
        if (A[k][j] != 0) clean = false;
      }
    if (!clean) continue;
    bool divides = true;
    for (size_t i = k + 1; i < rows && divides; ++i)
      for (size_t j = k + 1; j < cols && divides; ++j)
        if (A[i][j] % A[k][k] != 0) {
          for (size_t t = k; t < cols; ++t) A[k][t] += A[i][t];
          divides = false;
        }
    if (!divides) continue;
    diag.push_back(std::llabs(A[k][k]));
    ++k;
  }
  return diag;
}

}  // namespace stabhom::oracle
