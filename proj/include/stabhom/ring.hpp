#pragma once
// Exact linear algebra over Z/m: canonical submodule forms (Howell),
// unimodularity, complements, saturation, symplectic completion.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace stabhom {

// The coefficient ring Z/m.  stable_rank is metadata: Z/m is semi-local, so
// its Bass stable rank is 1 for every m.
struct Ring {
  int m = 2;
  explicit Ring(int modulus);
  Ring() = default;

  bool is_field = false;
  int stable_rank = 1;

  int reduce(long long x) const;
  bool is_unit(int r) const;
  int inv(int r) const;  // precondition: is_unit(r)
  std::vector<int> units() const;
  bool operator==(const Ring& o) const { return m == o.m; }
};

using Vec = std::vector<int>;  // entries are canonical residues in [0, m)

// Dense row-major matrix over Z/m (the ring is passed alongside, not stored).
struct Mat {
  int rows = 0, cols = 0;
  std::vector<int> a;
  Mat() = default;
  Mat(int r, int c) : rows(r), cols(c), a(r * c, 0) {}
  int& at(int i, int j) { return a[i * cols + j]; }
  int at(int i, int j) const { return a[i * cols + j]; }
  Vec row(int i) const { return Vec(a.begin() + i * cols, a.begin() + (i + 1) * cols); }
  Vec col(int j) const;
  bool operator==(const Mat& o) const { return rows == o.rows && cols == o.cols && a == o.a; }
};

Mat identity_mat(int n);
Mat mat_mul(const Ring& R, const Mat& A, const Mat& B);
Vec mat_apply(const Ring& R, const Mat& A, const Vec& v);
Mat mat_from_cols(const std::vector<Vec>& cols);
Mat mat_from_rows(const std::vector<Vec>& rows);
Mat mat_inverse(const Ring& R, const Mat& A);  // precondition: invertible
int det_mod(const Ring& R, const Mat& A);
bool is_invertible(const Ring& R, const Mat& A);

// A submodule of (Z/m)^n in canonical Howell normal form.  Two submodules are
// equal iff their Howell matrices are identical.
struct Submodule {
  Ring ring;
  int ambient = 0;
  Mat howell;                 // rows in echelon form, Howell-closed
  std::vector<int> piv_col;   // leading column of each row
  std::vector<int> piv_val;   // leading value (a divisor of m)

  int num_rows() const { return howell.rows; }
  long long size() const;  // cardinality of the row span
  bool contains(const Vec& v) const;
  bool is_zero() const { return howell.rows == 0; }
  bool is_full() const;
  std::string bytes() const;  // canonical key
  bool operator==(const Submodule& o) const {
    return ambient == o.ambient && howell == o.howell;
  }
};

Submodule howell_form(const Ring& R, int ambient, const std::vector<Vec>& rows);
Submodule zero_submodule(const Ring& R, int ambient);
Submodule full_submodule(const Ring& R, int ambient);

bool is_unimodular(const Ring& R, const Vec& v);

Submodule intersect(const Submodule& A, const Submodule& B);
Submodule sum(const Submodule& A, const Submodule& B);

// Enumerate every vector in the span (deterministic lexicographic-combination
// order; intended for desk-scale modules only).
std::vector<Vec> enumerate_elements(const Submodule& S);

// A free basis of S that is simultaneously a partial basis of the ambient
// module, found by lexicographic DFS; nullopt if S is not splittable.
std::optional<std::vector<Vec>> free_basis(const Submodule& S);
bool is_splittable(const Submodule& S);
// Rank of the free module S if splittable; -1 otherwise ("not free" marker).
int rank_free(const Submodule& S);

// Do the vectors form a partial basis (an independent set spanning a direct
// summand) of (Z/m)^n?
bool is_partial_basis(const Ring& R, int ambient, const std::vector<Vec>& vs);

// Smallest splittable submodule containing W (deterministic choice; equals W
// when W is splittable).
Submodule saturation(const Submodule& W);

// All free submodules C with W ⊕ C = (Z/m)^n, in deterministic order.
// Empty result signals "no complement" (W not splittable).
std::vector<Submodule> enumerate_complements(const Submodule& W);

// Invertible n x n matrix whose first columns are the given partial basis,
// completed lexicographically.  When H (a set of unit residues) is given, the
// determinant is moved into H by scaling the last appended column.
// Returns nullopt when the determinant cannot be placed in H (only possible
// when no column was appended).
std::optional<Mat> complete_basis(const Ring& R, int ambient,
                                  const std::vector<Vec>& partial,
                                  const std::vector<int>* H = nullptr);

// Standard symplectic structure on R^{2g} with interleaved coordinates
// (a_1, b_1, ..., a_g, b_g) and Gram blocks [[0,1],[-1,0]].
struct SymplecticSpace {
  Ring ring;
  int genus = 0;
  SymplecticSpace() = default;
  SymplecticSpace(const Ring& R, int g) : ring(R), genus(g) {}
  int dim() const { return 2 * genus; }
  int pair(const Vec& u, const Vec& v) const;
  Mat gram() const;
};

bool preserves_gram(const SymplecticSpace& sp, const Mat& M);

// Matrix in Sp_{2g}(R) whose first column pairs are the given hyperbolic
// pairs, completed by symplectic Gram-Schmidt on the perpendicular space.
// Throws on invalid input (pairing or isotropy failure).
Mat symplectic_complete(const SymplecticSpace& sp,
                        const std::vector<std::pair<Vec, Vec>>& pairs);

// Serialization helpers shared by the CLI and payload canonicalization.
std::string vec_bytes(const Vec& v);
std::string ring_spec(const Ring& R);  // "zmod:m"

}  // namespace stabhom
