#pragma once
// Modules over the stability categories: finitely presented abelian values
// with group actions and one-step transitions, free modules on groupoid
// coefficients, shift / kernel / cokernel, polynomial degree, induced
// modules, the central stability complex with its homology, and the
// coequalizer test for central stability degree.

#include <functional>
#include <map>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "stabhom/category.hpp"
#include "stabhom/homology.hpp"

namespace stabhom {

// Integer matrix acting on generators: entry [i][j] is the coefficient of
// target generator i in the image of source generator j.
using IntMat = std::vector<std::vector<long long>>;

IntMat imat_identity(int n);
IntMat imat_zero(int rows, int cols);
IntMat imat_mul(const IntMat& A, const IntMat& B);
IntMat imat_sub(const IntMat& A, const IntMat& B);
IntMat imat_kronecker(const IntMat& A, const IntMat& B);
SparseMat imat_to_sparse(const IntMat& A);

// Z^generators modulo the row span of `relations` (rows of length
// `generators`; the list may be redundant).
struct PresentedAbelianGroup {
  int generators = 0;
  std::vector<std::vector<long long>> relations;
};

struct GroupInvariants {
  long long free_rank = 0;
  std::vector<bigint> torsion;  // invariant factors > 1, divisibility chain
  bool is_zero() const { return free_rank == 0 && torsion.empty(); }
  bool operator==(const GroupInvariants& o) const {
    return free_rank == o.free_rank && torsion == o.torsion;
  }
};
GroupInvariants group_invariants(const PresentedAbelianGroup& G);
PresentedAbelianGroup free_group(int n);
PresentedAbelianGroup direct_sum_groups(const PresentedAbelianGroup& A,
                                        const PresentedAbelianGroup& B);

// One rank of a module over the stability category.
struct ModuleLevel {
  PresentedAbelianGroup value;
  std::vector<IntMat> gen_action;  // indexed like group_generators(cat, n)
  IntMat phi;                      // transition to rank n+1; empty at the top
};

// Values at every rank up to max_rank, with an element-wise action oracle:
// act(n, g) is the matrix of g in G_n on the generators of the rank-n value.
struct StabilityModule {
  CategoryId cat;
  int max_rank = -1;
  std::vector<ModuleLevel> levels;
  std::function<IntMat(int, const Mat&)> act;

  const ModuleLevel& at(int n) const;
  int gens(int n) const { return at(n).value.generators; }
  GroupInvariants invariants(int n) const { return group_invariants(at(n).value); }
};

// Checks, for every rank in range: actions preserve relations, transitions
// are equivariant against the generators of G_n, and postcomposing the
// double transition by the last-two-slot swap fixes it.  Throws on failure.
void validate_module(const StabilityModule& A);

// Coefficient system for free modules: one presented group with a G_m-action
// oracle per supported rank.
struct GroupoidLevel {
  PresentedAbelianGroup value;
  std::function<IntMat(const Mat&)> act;
};
struct GroupoidModule {
  CategoryId cat;
  std::map<int, GroupoidLevel> levels;
};

GroupoidModule trivial_coefficient(const CategoryId& cat, int m);  // Z at rank m
GroupoidModule regular_coefficient(const CategoryId& cat, int m);  // Z[G_m]

// The free module on W: rank n carries one copy of W_m per precomposition
// orbit of Hom(m, n), with postcomposition action and inclusion transitions.
StabilityModule free_module(const GroupoidModule& W, int up_to);
// M(m), the free module on the regular coefficient Z[G_m]: its rank-n value
// is free on all of Hom(m, n).
StabilityModule free_standard(const CategoryId& cat, int m, int up_to);

StabilityModule direct_sum(const StabilityModule& A, const StabilityModule& B);
StabilityModule tensor(const StabilityModule& A, const StabilityModule& B);
// exterior and symmetric constructions need free values
StabilityModule wedge_power(const StabilityModule& A, int k);  // k in {2, 3}
StabilityModule sym_square(const StabilityModule& A);
// Sym^2 modulo the subgroup generated by all squares x*x
StabilityModule sym_square_mod_squares(const StabilityModule& A);
StabilityModule mod_scalar(const StabilityModule& A, long long m);  // tensor Z/m

// (SA)_n = A_{n+1} with the action pulled back along g -> 1 + g.
StabilityModule shift(const StabilityModule& A);
// matrix of the natural map A_n -> (SA)_n on generators
IntMat shift_map(const StabilityModule& A, int n);
// kernel and cokernel of A -> SA, defined up to rank max_rank - 1
std::pair<StabilityModule, StabilityModule> kernel_coker(const StabilityModule& A);

struct PolyDegreeReport {
  bool minus_infinity = false;  // the module vanishes above the floor
  bool established = false;     // a finite bound was certified in the window
  int degree = -1;              // the certified bound when established
  int floor_d = -1;
  int verified_to = -1;  // the bound statement was checked for ranks <= this
  std::string summary;
};
// Iterated kernel-vanishing / cokernel recursion in ranks > floor_d; each
// step shrinks the verified window by one rank.
PolyDegreeReport polynomial_degree(const StabilityModule& A, int floor_d = -1);

// Z[Hom(k, n)] tensored over Z[G_k] with A_k: basis indexed by
// precomposition-orbit representatives times generators of A_k.
struct InducedModule {
  PresentedAbelianGroup value;
  std::vector<Morphism> reps;
  int gens_per_rep = 0;
  std::function<IntMat(const Mat&)> act;  // postcomposition action of G_n
  // orbit position of a morphism: representative index and the G_k element c
  // with the morphism equal to rep composed with c
  std::function<std::pair<int, Mat>(const Morphism&)> locate;
};
InducedModule induced_module(const StabilityModule& A, int k, int n);

// matrix of the evaluation Ind A_{n-1} -> A_n, and its surjectivity
IntMat induced_evaluation(const StabilityModule& A, int n, const InducedModule& I);
bool induced_surjects(const StabilityModule& A, int n);

// A complex of presented groups in consecutive degrees lo, lo+1, ...; the
// group in each degree is `copies` identical blocks of `local`, and
// maps[k] sends degree lo+k to degree lo+k-1 on generators (maps[0] unused).
struct BlockGroup {
  int copies = 1;
  PresentedAbelianGroup local;
  int gens() const { return copies * local.generators; }
};
struct PresentedComplex {
  int lo = 0;
  std::vector<BlockGroup> groups;
  std::vector<SparseMat> maps;
};
// Homology-preserving complex of free groups (degree d at index d - lo).
// Throws when the boundaries fail to square to zero modulo relations.
ChainComplex free_cover(const PresentedComplex& C);

// Degrees -1 .. max_i + 1, with the degree -1 value equal to A_n and the
// degree-p basis indexed by Hom(p+1, n) times generators of A_{n-p-1}.
PresentedComplex central_stability_complex(const StabilityModule& A, int n, int max_i);
// reduced homology in degrees -1 .. max_i; p = 0 for integer coefficients
HomologyResult central_stability_homology(const StabilityModule& A, int n,
                                          int max_i, int p = 0);

// H-tilde_i at rank n of the rank-one trivial module, over F_p, streaming
// the top boundary so Hom(i+2, n) is never materialized.
long long trivial_csh_betti_streamed(const CategoryId& cat, int n, int i, int p);

struct CsdReport {
  int max_rank = 0;
  std::vector<int> ranks;           // ranks examined, ascending from 1
  std::vector<std::string> status;  // "iso" | "not-iso" | "skipped (cap)"
  // smallest d with every rank in (d, max_rank] verified "iso"; 0 when every
  // examined rank is an isomorphism, max_rank when rank max_rank is not
  int degree_window = 0;
  bool all_skipped = false;
};
// Coequalizer of the two induced maps from rank n-2 into rank n-1, compared
// with A_n as abelian groups (surjectivity plus equal invariant factors).
CsdReport coequalizer_csd(const StabilityModule& A);

// names: putman-sam:zmod:m, h1ia-fi, johnson-fi, adjoint:zmod:p
StabilityModule builtin_module(const std::string& name, int max_rank);

std::string module_to_json(const StabilityModule& A);
StabilityModule module_from_json(const std::string& text);

}  // namespace stabhom
