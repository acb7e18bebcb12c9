#pragma once
// Semisimplicial sets and simplicial complexes: builders for the partial
// basis complexes (ordered tuples, framed versions with complements,
// symplectic versions), the categorical complexes K of hom sets, plus links,
// ordered/underlying conversions, join-complex checking and the weak
// Cohen-Macaulay (homology surrogate) checker.

#include <optional>
#include <set>
#include <string>
#include <unordered_map>
#include <vector>

#include "stabhom/category.hpp"
#include "stabhom/ring.hpp"

namespace stabhom {

// Levels of deduplicated simplices with face tables; no degeneracies.
struct SemisimplicialSet {
  std::vector<std::vector<std::string>> levels;  // payload bytes per simplex
  std::vector<std::unordered_map<std::string, int>> index;
  std::vector<std::vector<int>> faces;  // faces[p][s*(p+1)+i], p >= 1

  int dim() const { return (int)levels.size() - 1; }
  long long size(int p) const {
    return (p < 0 || p > dim()) ? 0 : (long long)levels[p].size();
  }
  int face(int p, int s, int i) const { return faces[p][(size_t)s * (p + 1) + i]; }
  int add(int p, const std::string& payload);  // dedup; returns index
  // d_i d_j = d_{j-1} d_i for i < j, everywhere; throws on violation.
  void check_identities() const;
  bool empty() const;
};

// Unordered finite simplicial complex, stored downward closed.
struct SimplicialComplex {
  int num_vertices = 0;
  std::set<std::vector<int>> simplices;  // nonempty sorted vertex lists

  void insert_closed(std::vector<int> simplex);  // adds all faces too
  bool has(const std::vector<int>& s) const { return simplices.count(s) > 0; }
  int dim() const;
  std::vector<std::vector<int>> simplices_of_dim(int p) const;
};

// K: level p holds Hom(p+1, n), faces precompose with the coordinate-skipping
// morphisms.  For the symmetric-group category this is the complex of
// injective words.
SemisimplicialSet build_K(const CategoryId& cat, int n, int max_dim = -1);

// Ordered tuples of vectors of U that extend a fixed free basis of W to a
// partial basis of the ambient module.  W = 0 gives the plain partial basis
// complex of U.
SemisimplicialSet build_pb(const Ring& R, int ambient, const Submodule& U,
                           const Submodule& W, int max_dim = -1);

// Framed version: simplices are (ordered partial basis inside U, complement C
// containing W); the i-th face absorbs the dropped vector into C.
SemisimplicialSet build_pbc(const Ring& R, int ambient, const Submodule& U,
                            const Submodule& W, int max_dim = -1);

// Ordered symplectic partial bases (tuples of hyperbolic pairs); when W is
// given only tuples whose span pairs trivially with W are kept.
SemisimplicialSet build_spb(const SymplecticSpace& sp,
                            const std::optional<Submodule>& W = std::nullopt,
                            int max_dim = -1);

SimplicialComplex underlying_complex(const SemisimplicialSet& X);
SemisimplicialSet ordered_complex(const SimplicialComplex& X);

// Vertex sets (sorted, at level 0 indices) of every simplex of X.
std::vector<std::vector<std::vector<int>>> vertex_sets(const SemisimplicialSet& X);

// Link of a simplex, computed as the ordered complex of the unordered link.
SemisimplicialSet link(const SemisimplicialSet& X, int p, int s);
SimplicialComplex link(const SimplicialComplex& X, const std::vector<int>& sigma);

// Is pi (a map on vertices) a join-complex structure on Y over X?  Checks
// that pi is simplicial and simplexwise injective, that images of simplices
// are onto the simplices of X, and the filling condition: y_0..y_p span a
// simplex whenever each y_i sits in a simplex theta_i whose image has
// vertices pi(y_0)..pi(y_p).  On failure `witness` names the offending tuple.
struct JoinWitness {
  bool ok = false;
  std::string reason;
  std::vector<int> witness;
};
JoinWitness is_join_complex(const SimplicialComplex& Y, const SimplicialComplex& X,
                            const std::vector<int>& pi);

// Weak Cohen-Macaulay check of dimension n, with reduced homology standing in
// for connectivity: the complex must have vanishing reduced homology in
// degrees <= n-1 and every link of a p-simplex in degrees <= n-2-p.
struct WcmReport {
  bool ok = false;
  int dimension = 0;
  std::string surrogate_note;  // always states the homology-for-connectivity caveat
  std::vector<std::string> failures;
};
WcmReport wcm_check(const SimplicialComplex& X, int n);

}  // namespace stabhom
