#pragma once
// Exact homology of chain complexes of free abelian groups: sparse integer
// boundary matrices, Smith normal form with sparse unit-pivot pre-reduction,
// field-coefficient Betti numbers, and reduced homology indexed from -1.

#include <boost/multiprecision/cpp_int.hpp>
#include <map>
#include <string>
#include <vector>

#include "stabhom/complexes.hpp"

namespace stabhom {

using bigint = boost::multiprecision::cpp_int;

// Column-major sparse integer matrix; entries within a column sorted by row.
struct SparseMat {
  long long rows = 0, cols = 0;
  std::vector<std::vector<std::pair<int, long long>>> col;

  SparseMat() = default;
  SparseMat(long long r, long long c) : rows(r), cols(c), col(c) {}
  void add_entry(long long c, int r, long long v) { col[c].push_back({r, v}); }
  long long nnz() const;
};

// boundary(p): C_p -> C_{p-1} for 0 <= p <= top; degree -1 has rank 1 when
// augmented (the boundary in degree 0 is then the all-ones row).
struct ChainComplex {
  bool augmented = false;
  std::vector<long long> dims;          // dims[p] = rank of C_p, p >= 0
  std::vector<SparseMat> boundaries;    // boundaries[p]: C_p -> C_{p-1}

  int top() const { return (int)dims.size() - 1; }
  long long dim(int p) const {
    if (p == -1) return augmented ? 1 : 0;
    return (p < 0 || p > top()) ? 0 : dims[p];
  }
  void check_dsquared() const;  // throws when some composite is nonzero
};

ChainComplex chain_complex_of(const SemisimplicialSet& X, bool augment);
ChainComplex chain_complex_of(const SimplicialComplex& X, bool augment);

struct HomologyResult {
  // reduced degrees from -1 when the complex is augmented
  std::map<int, long long> betti;
  std::map<int, std::vector<bigint>> torsion;  // nontrivial divisors, sorted
  std::string coefficient;                     // "Z" or "F_p"

  bool trivial_in(int degree) const;
};

struct SnfSummary {
  long long rank = 0;
  std::vector<bigint> divisors;  // nontrivial (> 1), divisibility chain
};
SnfSummary smith_form(const SparseMat& M);

HomologyResult smith_homology(const ChainComplex& C, int lo, int hi);
HomologyResult field_betti(const ChainComplex& C, int p, int lo, int hi);

long long field_rank(const SparseMat& M, int p);

// Streaming column-rank over F_p: feed columns one at a time; memory stays
// proportional to the reduced pivot columns.  `target` allows early exit as
// soon as the rank provably reaches it.
struct FieldRankStreamer {
  int p;
  explicit FieldRankStreamer(int prime) : p(prime) {}
  // column entries sorted by row
  void add_column(std::vector<std::pair<int, int>> col);
  long long rank() const { return (long long)pivots.size(); }

 private:
  std::map<int, std::vector<std::pair<int, int>>> pivots;  // low row -> column
};

enum class ZeroConn { Empty, Disconnected, Connected };
ZeroConn zero_connectivity(const SemisimplicialSet& X);

}  // namespace stabhom
