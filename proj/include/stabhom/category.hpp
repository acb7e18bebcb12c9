#pragma once
// Finite stability categories: symmetric groups with injections, general
// linear groups with framed monomorphisms (partial basis + complement),
// symplectic groups with hyperbolic-pair tuples.  Morphism sets realize
// Hom(m,n) = G_n / G_{n-m}; the section/twist machinery picks coset
// representatives deterministically.

#include <functional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "stabhom/ring.hpp"

namespace stabhom {

enum class CatKind { FI, VIC, VIC_H, SI };

struct CategoryId {
  CatKind kind = CatKind::FI;
  Ring ring;                   // unused for FI
  std::vector<int> H;          // VIC_H only: unit subgroup, sorted residues

  bool has_ring() const { return kind != CatKind::FI; }
  // Dimension of the module underlying object n (2n for the symplectic case).
  int dim(int n) const { return kind == CatKind::SI ? 2 * n : n; }
  bool operator==(const CategoryId& o) const {
    return kind == o.kind && (!has_ring() || ring == o.ring) && H == o.H;
  }
};

CategoryId fi_cat();
CategoryId vic_cat(const Ring& R);
CategoryId vic_h_cat(const Ring& R, std::vector<int> H);
CategoryId si_cat(const Ring& R);
CategoryId parse_category(const std::string& spec);  // "fi", "vic:zmod:2", ...
std::string category_spec(const CategoryId& cat);

// Signals |G_n| (or a hom set) past the configured enumeration cap.
struct CapExceeded : std::runtime_error {
  explicit CapExceeded(const std::string& what) : std::runtime_error(what) {}
};

// A morphism m -> n of the stability category.  Exactly one payload is active
// depending on the category kind.
struct Morphism {
  int m = 0, n = 0;
  std::vector<int> img;                       // FI: injection, 0-based images
  std::vector<Vec> vectors;                   // VIC: ordered partial basis in R^n
  Submodule comp;                             // VIC: chosen complement
  std::vector<std::pair<Vec, Vec>> pairs;     // SI: hyperbolic pairs in R^{2n}

  std::string bytes() const;
  bool operator==(const Morphism& o) const { return bytes() == o.bytes(); }
};

Morphism identity_morphism(const CategoryId& cat, int n);
Morphism compose(const CategoryId& cat, const Morphism& f, const Morphism& g);
Morphism monoidal_sum(const CategoryId& cat, const Morphism& f, const Morphism& g);

// The stabilization map n = n+0 -> n+1 in standard coordinates.
Morphism canonical_inclusion(const CategoryId& cat, int n);
// h_i: p -> p+1 inserting the new coordinate (or pair) at slot i+1, 0 <= i <= p.
Morphism face_morphism(const CategoryId& cat, int p, int i);

// Group elements are matrices over the ring (permutation matrices for FI),
// of size cat.dim(n).
Mat perm_to_mat(const std::vector<int>& perm);
std::vector<int> mat_to_perm(const Mat& M);

// Act on a morphism by postcomposition with g in G_n.
Morphism act(const CategoryId& cat, const Mat& g, const Morphism& phi);

// Deterministic coset section s: Hom(m,n) -> G_n with s(phi) inducing phi,
// i.e. the first m columns (column pairs) realize the payload and the
// remaining ones span the complement.
Mat section(const CategoryId& cat, const Morphism& phi);

// phi' = g.phi together with the unique h in G_{n-m} (returned at its own
// rank, i.e. as a dim(n-m) matrix) satisfying s(g.phi) (1 + h) = g s(phi).
// The block shape of s(phi')^{-1} g s(phi) is asserted.
std::pair<Morphism, Mat> section_and_twist(const CategoryId& cat, const Mat& g,
                                           const Morphism& phi);

// Full element table of G_n = Aut(n), breadth-first over a nested generating
// set, with parent/generator pointers for factoring elements into words.
struct GroupTable {
  CategoryId cat;
  int n = 0;
  std::vector<Mat> elements;           // elements[0] = identity
  std::vector<Mat> generators;
  std::vector<int> parent, via;        // elements[i] = elements[parent[i]] * generators[via[i]]
  std::unordered_map<std::string, int> index;

  long long size() const { return (long long)elements.size(); }
  int id_of(const Mat& g) const;       // throws if absent
  // g as an ordered product of generators, leftmost factor first.
  std::vector<int> word(const Mat& g) const;
};

constexpr long long kGroupCap = 10'000'000;

GroupTable enumerate_group(const CategoryId& cat, int n, long long cap = kGroupCap);
long long group_order(const CategoryId& cat, int n);  // closed-form count

// The nested generating set of G_n used by enumerate_group, in table order.
std::vector<Mat> group_generators(const CategoryId& cat, int n);

// Group-element helpers shared by the module layer.
Mat group_inverse(const CategoryId& cat, const Mat& g);
Mat block_sum_elements(const CategoryId& cat, const Mat& g, const Mat& h);  // g + h
// The involution swapping the last two slots (coordinates or hyperbolic
// pairs) of n; requires n >= 2.
Mat sigma_swap(const CategoryId& cat, int n);
// The forward slot rotation of G_n: slot j -> j+1, slot n-1 -> 0.  It
// conjugates the first-block copy of G_{n-1} onto the last-block copy.
Mat rotation_forward(const CategoryId& cat, int n);
// Rotation of the last n - lo slots only: slot lo -> n-1, others shift down
// by one; identity on slots below lo.  (As a matrix it maps e_{slot j} to
// e_{slot j+1} for lo <= j < n-1 and e_{slot n-1} to e_{slot lo}.)
Mat rotate_tail(const CategoryId& cat, int n, int lo);
// The morphism m -> n read off the first m slots of a group element,
// with the complement spanned by the remaining slots.
Morphism truncate_element(const CategoryId& cat, const Mat& g, int m, int n);

// Deterministic enumeration of Hom(m, n); the callback may return false to
// stop early.  hom_set materializes the same order.
void for_each_hom(const CategoryId& cat, int m, int n,
                  const std::function<bool(const Morphism&)>& fn);
std::vector<Morphism> hom_set(const CategoryId& cat, int m, int n);
long long hom_count(const CategoryId& cat, int m, int n);  // closed-form count

std::string mat_bytes(const Mat& M);

}  // namespace stabhom
