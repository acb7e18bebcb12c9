#include "stabhom/stabmod.hpp"

#include <algorithm>
#include <cassert>
#include <cstdlib>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

#include <json.hpp>

namespace stabhom {

// ---------------------------------------------------------------- int mats

IntMat imat_identity(int n) {
  IntMat M(n, std::vector<long long>(n, 0));
  for (int i = 0; i < n; ++i) M[i][i] = 1;
  return M;
}

IntMat imat_zero(int rows, int cols) {
  return IntMat(rows, std::vector<long long>(cols, 0));
}

IntMat imat_mul(const IntMat& A, const IntMat& B) {
  size_t cols = 0;
  for (auto& r : B) cols = std::max(cols, r.size());
  IntMat C(A.size(), std::vector<long long>(cols, 0));
  for (size_t i = 0; i < A.size(); ++i)
    for (size_t k = 0; k < A[i].size() && k < B.size(); ++k)
      if (A[i][k])
        for (size_t j = 0; j < B[k].size(); ++j)
          C[i][j] += A[i][k] * B[k][j];
  return C;
}

IntMat imat_sub(const IntMat& A, const IntMat& B) {
  size_t rows = std::max(A.size(), B.size()), cols = 0;
  for (auto& r : A) cols = std::max(cols, r.size());
  for (auto& r : B) cols = std::max(cols, r.size());
  IntMat C(rows, std::vector<long long>(cols, 0));
  for (size_t i = 0; i < A.size(); ++i)
    for (size_t j = 0; j < A[i].size(); ++j) C[i][j] += A[i][j];
  for (size_t i = 0; i < B.size(); ++i)
    for (size_t j = 0; j < B[i].size(); ++j) C[i][j] -= B[i][j];
  return C;
}

IntMat imat_kronecker(const IntMat& A, const IntMat& B) {
  size_t ar = A.size(), ac = 0, br = B.size(), bc = 0;
  for (auto& r : A) ac = std::max(ac, r.size());
  for (auto& r : B) bc = std::max(bc, r.size());
  IntMat C(ar * br, std::vector<long long>(ac * bc, 0));
  for (size_t i = 0; i < ar; ++i)
    for (size_t j = 0; j < A[i].size(); ++j)
      if (A[i][j])
        for (size_t k = 0; k < br; ++k)
          for (size_t l = 0; l < B[k].size(); ++l)
            C[i * br + k][j * bc + l] = A[i][j] * B[k][l];
  return C;
}

SparseMat imat_to_sparse(const IntMat& A) {
  long long rows = (long long)A.size(), cols = 0;
  for (auto& r : A) cols = std::max(cols, (long long)r.size());
  SparseMat M(rows, cols);
  for (size_t i = 0; i < A.size(); ++i)
    for (size_t j = 0; j < A[i].size(); ++j)
      if (A[i][j]) M.add_entry((long long)j, (int)i, A[i][j]);
  return M;
}

namespace {

long long imat_get(const IntMat& A, size_t i, size_t j) {
  if (i >= A.size() || j >= A[i].size()) return 0;
  return A[i][j];
}

std::vector<long long> imat_apply_vec(const IntMat& A, const std::vector<long long>& v,
                                      size_t rows) {
  std::vector<long long> out(rows, 0);
  for (size_t i = 0; i < A.size() && i < rows; ++i)
    for (size_t j = 0; j < A[i].size() && j < v.size(); ++j)
      out[i] += A[i][j] * v[j];
  return out;
}

// ------------------------------------------------------- integer lattices

using bigvec = std::vector<bigint>;

bigint floordiv(const bigint& a, const bigint& b) {
  bigint q = a / b;
  if (q * b != a && ((a < 0) != (b < 0))) q -= 1;
  return q;
}

// Row lattice in Z^n kept in Hermite echelon form (pivot columns strictly
// increasing, pivots positive, entries above pivots reduced).
struct ZLattice {
  int n = 0;
  std::vector<bigvec> rows;
  std::vector<int> piv;

  explicit ZLattice(int width = 0) : n(width) {}

  void insert(bigvec v) {
    for (int c = 0; c < n;) {
      if (v[c] == 0) {
        ++c;
        continue;
      }
      size_t idx = std::lower_bound(piv.begin(), piv.end(), c) - piv.begin();
      if (idx == piv.size() || piv[idx] != c) {
        if (v[c] < 0)
          for (auto& x : v) x = -x;
        rows.insert(rows.begin() + idx, std::move(v));
        piv.insert(piv.begin() + idx, c);
        return;
      }
      bigint a = rows[idx][c], b = v[c];
      bigint g, x, y;
      // extended gcd of a and b
      {
        bigint r0 = a, r1 = b, s0 = 1, s1 = 0, t0 = 0, t1 = 1;
        while (r1 != 0) {
          bigint q = r0 / r1;
          std::swap(r0 -= q * r1, r1);
          std::swap(s0 -= q * s1, s1);
          std::swap(t0 -= q * t1, t1);
        }
        if (r0 < 0) {
          r0 = -r0;
          s0 = -s0;
          t0 = -t0;
        }
        g = r0;
        x = s0;
        y = t0;
      }
      bigvec nr(n), nv(n);
      for (int j = 0; j < n; ++j) {
        nr[j] = x * rows[idx][j] + y * v[j];
        nv[j] = (a / g) * v[j] - (b / g) * rows[idx][j];
      }
      rows[idx] = std::move(nr);
      v = std::move(nv);
    }
  }

  void normalize() {
    for (size_t r = 0; r < rows.size(); ++r) {
      int c = piv[r];
      for (size_t s = 0; s < r; ++s) {
        bigint q = floordiv(rows[s][c], rows[r][c]);
        if (q != 0)
          for (int j = c; j < n; ++j) rows[s][j] -= q * rows[r][j];
      }
    }
  }

  bigvec residue(bigvec v, bigvec* coeff = nullptr) const {
    if (coeff) coeff->assign(rows.size(), 0);
    for (size_t r = 0; r < rows.size(); ++r) {
      int c = piv[r];
      if (v[c] == 0) continue;
      bigint q = floordiv(v[c], rows[r][c]);
      if (q == 0) continue;
      for (int j = c; j < n; ++j) v[j] -= q * rows[r][j];
      if (coeff) (*coeff)[r] = q;
    }
    return v;
  }

  bool contains(const bigvec& v) const {
    for (auto& x : residue(v))
      if (x != 0) return false;
    return true;
  }

  bool express(const bigvec& v, bigvec& coeff) const {
    for (auto& x : residue(v, &coeff))
      if (x != 0) return false;
    return true;
  }
};

bigvec to_big(const std::vector<long long>& v) {
  bigvec out(v.size());
  for (size_t i = 0; i < v.size(); ++i) out[i] = v[i];
  return out;
}

long long to_ll(const bigint& x) {
  if (x > bigint(1) << 62 || x < -(bigint(1) << 62))
    throw std::overflow_error("lattice coefficient does not fit 64 bits");
  return (long long)x;
}

ZLattice lattice_of_rows(int width, const std::vector<std::vector<long long>>& gens) {
  ZLattice L(width);
  for (auto& g : gens) {
    bigvec v(width, 0);
    for (size_t j = 0; j < g.size() && (int)j < width; ++j) v[j] = g[j];
    L.insert(std::move(v));
  }
  L.normalize();
  return L;
}

// rows spanning the kernel of the map Z^s -> Z^b with the given columns
std::vector<bigvec> kernel_rows(const std::vector<bigvec>& cols, int b) {
  int s = (int)cols.size();
  ZLattice L(b + s);
  for (int i = 0; i < s; ++i) {
    bigvec row(b + s, 0);
    for (int j = 0; j < b; ++j) row[j] = cols[i][j];
    row[b + i] = 1;
    L.insert(std::move(row));
  }
  L.normalize();
  std::vector<bigvec> out;
  for (auto& r : L.rows) {
    bool head_zero = true;
    for (int j = 0; j < b && head_zero; ++j) head_zero = r[j] == 0;
    if (head_zero) out.push_back(bigvec(r.begin() + b, r.end()));
  }
  return out;
}

// Hermite basis of {x in Z^a : M x lies in the target lattice}
ZLattice preimage_lattice(const IntMat& M, int tgt_gens, int src_gens,
                          const ZLattice& target) {
  std::vector<bigvec> cols;
  for (int j = 0; j < src_gens; ++j) {
    bigvec c(tgt_gens, 0);
    for (int i = 0; i < tgt_gens; ++i) c[i] = imat_get(M, i, j);
    cols.push_back(std::move(c));
  }
  for (auto& r : target.rows) cols.push_back(r);
  ZLattice P(src_gens);
  for (auto& k : kernel_rows(cols, tgt_gens)) {
    bigvec x(k.begin(), k.begin() + src_gens);
    P.insert(std::move(x));
  }
  P.normalize();
  return P;
}

const Ring& work_ring(const CategoryId& cat) {
  static const Ring two(2);
  return cat.has_ring() ? cat.ring : two;
}

Mat one_slot_identity(const CategoryId& cat) { return identity_mat(cat.dim(1)); }

void guard_hom(const CategoryId& cat, int m, int n) {
  if (m > n || m < 0) return;
  if (group_order(cat, m) > kGroupCap || hom_count(cat, m, n) > kGroupCap)
    throw CapExceeded("hom set past the enumeration cap");
}

}  // namespace

// ------------------------------------------------------- presented groups

GroupInvariants group_invariants(const PresentedAbelianGroup& G) {
  GroupInvariants inv;
  SparseMat M((long long)G.relations.size(), G.generators);
  for (size_t i = 0; i < G.relations.size(); ++i)
    for (size_t j = 0; j < G.relations[i].size(); ++j)
      if (G.relations[i][j]) M.add_entry((long long)j, (int)i, G.relations[i][j]);
  SnfSummary s = smith_form(M);
  inv.free_rank = G.generators - s.rank;
  inv.torsion = s.divisors;
  return inv;
}

PresentedAbelianGroup free_group(int n) {
  PresentedAbelianGroup G;
  G.generators = n;
  return G;
}

PresentedAbelianGroup direct_sum_groups(const PresentedAbelianGroup& A,
                                        const PresentedAbelianGroup& B) {
  PresentedAbelianGroup G;
  G.generators = A.generators + B.generators;
  for (auto& r : A.relations) {
    std::vector<long long> row(G.generators, 0);
    for (size_t j = 0; j < r.size(); ++j) row[j] = r[j];
    G.relations.push_back(std::move(row));
  }
  for (auto& r : B.relations) {
    std::vector<long long> row(G.generators, 0);
    for (size_t j = 0; j < r.size(); ++j) row[A.generators + j] = r[j];
    G.relations.push_back(std::move(row));
  }
  return G;
}

const ModuleLevel& StabilityModule::at(int n) const {
  if (n < 0 || n > max_rank) throw std::out_of_range("module level out of range");
  return levels[n];
}

// ------------------------------------------------------------- validation

void validate_module(const StabilityModule& A) {
  for (int n = 0; n <= A.max_rank; ++n) {
    const ModuleLevel& L = A.at(n);
    ZLattice lat = lattice_of_rows(L.value.generators, L.value.relations);
    auto gens = group_generators(A.cat, n);
    if (gens.size() != L.gen_action.size())
      throw std::runtime_error("generator/action count mismatch");
    for (size_t k = 0; k < gens.size(); ++k) {
      IntMat oracle = A.act(n, gens[k]);
      for (int i = 0; i < L.value.generators; ++i)
        for (int j = 0; j < L.value.generators; ++j)
          if (imat_get(oracle, i, j) != imat_get(L.gen_action[k], i, j))
            throw std::runtime_error("stored action disagrees with the oracle");
      for (auto& rel : L.value.relations)
        if (!lat.contains(to_big(imat_apply_vec(L.gen_action[k], rel, L.value.generators))))
          throw std::runtime_error("action does not preserve relations");
    }
    if (n < A.max_rank) {
      const ModuleLevel& Lup = A.at(n + 1);
      ZLattice lat_up = lattice_of_rows(Lup.value.generators, Lup.value.relations);
      for (size_t k = 0; k < gens.size(); ++k) {
        Mat g1 = block_sum_elements(A.cat, gens[k], one_slot_identity(A.cat));
        IntMat lhs = imat_mul(L.phi, A.act(n, gens[k]));
        IntMat rhs = imat_mul(A.act(n + 1, g1), L.phi);
        for (int j = 0; j < L.value.generators; ++j) {
          bigvec d(Lup.value.generators, 0);
          for (int i = 0; i < Lup.value.generators; ++i)
            d[i] = imat_get(lhs, i, j) - imat_get(rhs, i, j);
          if (!lat_up.contains(d))
            throw std::runtime_error("transition is not equivariant");
        }
      }
    }
    if (n + 2 <= A.max_rank) {
      const ModuleLevel& L2 = A.at(n + 2);
      ZLattice lat2 = lattice_of_rows(L2.value.generators, L2.value.relations);
      IntMat pp = imat_mul(A.at(n + 1).phi, L.phi);
      IntMat swapped = imat_mul(A.act(n + 2, sigma_swap(A.cat, n + 2)), pp);
      for (int j = 0; j < L.value.generators; ++j) {
        bigvec d(L2.value.generators, 0);
        for (int i = 0; i < L2.value.generators; ++i)
          d[i] = imat_get(swapped, i, j) - imat_get(pp, i, j);
        if (!lat2.contains(d))
          throw std::runtime_error("double transition is not fixed by the last swap");
      }
    }
  }
}

// ------------------------------------------------------------ free modules

GroupoidModule trivial_coefficient(const CategoryId& cat, int m) {
  GroupoidModule W;
  W.cat = cat;
  GroupoidLevel L;
  L.value = free_group(1);
  L.act = [](const Mat&) { return imat_identity(1); };
  W.levels[m] = std::move(L);
  return W;
}

GroupoidModule regular_coefficient(const CategoryId& cat, int m) {
  GroupoidModule W;
  W.cat = cat;
  auto T = std::make_shared<GroupTable>(enumerate_group(cat, m));
  GroupoidLevel L;
  L.value = free_group((int)T->size());
  const Ring& R = work_ring(cat);
  L.act = [T, R](const Mat& c) {
    IntMat M = imat_zero((int)T->size(), (int)T->size());
    for (int j = 0; j < (int)T->size(); ++j)
      M[T->id_of(mat_mul(R, c, T->elements[j]))][j] = 1;
    return M;
  };
  W.levels[m] = std::move(L);
  return W;
}

namespace {

struct OrbitTable {
  std::vector<Morphism> reps;
  std::unordered_map<std::string, std::pair<int, int>> where;  // bytes -> (rep, elt)
};

// decompose Hom(m, n) into free precomposition orbits of G_m
OrbitTable build_orbits(const CategoryId& cat, int m, int n, const GroupTable& gm,
                        const std::vector<Morphism>& auts) {
  guard_hom(cat, m, n);
  OrbitTable T;
  for_each_hom(cat, m, n, [&](const Morphism& f) {
    if (T.where.count(f.bytes())) return true;
    int r = (int)T.reps.size();
    T.reps.push_back(f);
    for (int c = 0; c < (int)gm.size(); ++c)
      T.where[compose(cat, f, auts[c]).bytes()] = {r, c};
    return true;
  });
  return T;
}

std::vector<Morphism> automorphisms_of(const CategoryId& cat, const GroupTable& gm, int m) {
  std::vector<Morphism> auts;
  Morphism id = identity_morphism(cat, m);
  for (auto& g : gm.elements) auts.push_back(act(cat, g, id));
  return auts;
}

struct FreeData {
  CategoryId cat;
  int up_to = 0;
  // per supported coefficient rank m: value, action oracle, group data
  std::vector<int> ms;
  std::map<int, GroupoidLevel> W;
  std::map<int, GroupTable> gm;
  std::map<int, std::vector<Morphism>> auts;
  // orbits[m][n]
  std::map<int, std::map<int, OrbitTable>> orbits;

  int block_gens(int m) const { return W.at(m).value.generators; }

  int level_gens(int n) const {
    int g = 0;
    for (int m : ms)
      if (m <= n) g += (int)orbits.at(m).at(n).reps.size() * block_gens(m);
    return g;
  }

  int offset(int n, int m, int rep) const {
    int off = 0;
    for (int mm : ms) {
      if (mm > n) continue;
      if (mm == m) return off + rep * block_gens(m);
      off += (int)orbits.at(mm).at(n).reps.size() * block_gens(mm);
    }
    throw std::logic_error("bad free-module block");
  }

  IntMat action(int n, const Mat& g) const {
    IntMat M = imat_zero(level_gens(n), level_gens(n));
    for (int m : ms) {
      if (m > n) continue;
      const OrbitTable& T = orbits.at(m).at(n);
      for (int r = 0; r < (int)T.reps.size(); ++r) {
        Morphism psi = act(cat, g, T.reps[r]);
        auto [r2, c] = T.where.at(psi.bytes());
        IntMat B = W.at(m).act(gm.at(m).elements[c]);
        int ro = offset(n, m, r2), co = offset(n, m, r);
        for (int i = 0; i < block_gens(m); ++i)
          for (int j = 0; j < block_gens(m); ++j)
            M[ro + i][co + j] = imat_get(B, i, j);
      }
    }
    return M;
  }

  IntMat transition(int n) const {
    IntMat M = imat_zero(level_gens(n + 1), level_gens(n));
    Morphism inc = canonical_inclusion(cat, n);
    for (int m : ms) {
      if (m > n) continue;
      const OrbitTable& T = orbits.at(m).at(n);
      const OrbitTable& Tup = orbits.at(m).at(n + 1);
      for (int r = 0; r < (int)T.reps.size(); ++r) {
        Morphism psi = compose(cat, inc, T.reps[r]);
        auto [r2, c] = Tup.where.at(psi.bytes());
        IntMat B = W.at(m).act(gm.at(m).elements[c]);
        int ro = offset(n + 1, m, r2), co = offset(n, m, r);
        for (int i = 0; i < block_gens(m); ++i)
          for (int j = 0; j < block_gens(m); ++j)
            M[ro + i][co + j] = imat_get(B, i, j);
      }
    }
    return M;
  }
};

}  // namespace

StabilityModule free_module(const GroupoidModule& W, int up_to) {
  auto D = std::make_shared<FreeData>();
  D->cat = W.cat;
  D->up_to = up_to;
  for (auto& [m, L] : W.levels) {
    D->ms.push_back(m);
    D->W[m] = L;
    D->gm[m] = enumerate_group(W.cat, m);
    D->auts[m] = automorphisms_of(W.cat, D->gm[m], m);
    for (int n = m; n <= up_to; ++n)
      D->orbits[m][n] = build_orbits(W.cat, m, n, D->gm[m], D->auts[m]);
  }
  StabilityModule A;
  A.cat = W.cat;
  A.max_rank = up_to;
  A.act = [D](int n, const Mat& g) { return D->action(n, g); };
  for (int n = 0; n <= up_to; ++n) {
    ModuleLevel L;
    PresentedAbelianGroup V;
    V.generators = D->level_gens(n);
    for (int m : D->ms) {
      if (m > n) continue;
      const auto& local = D->W.at(m).value;
      for (int r = 0; r < (int)D->orbits.at(m).at(n).reps.size(); ++r)
        for (auto& rel : local.relations) {
          std::vector<long long> row(V.generators, 0);
          int off = D->offset(n, m, r);
          for (size_t j = 0; j < rel.size(); ++j) row[off + j] = rel[j];
          V.relations.push_back(std::move(row));
        }
    }
    L.value = std::move(V);
    for (auto& g : group_generators(W.cat, n)) L.gen_action.push_back(D->action(n, g));
    if (n < up_to) L.phi = D->transition(n);
    A.levels.push_back(std::move(L));
  }
  return A;
}

StabilityModule free_standard(const CategoryId& cat, int m, int up_to) {
  return free_module(regular_coefficient(cat, m), up_to);
}

// ----------------------------------------------------- pointwise functors

namespace {

void check_compatible(const StabilityModule& A, const StabilityModule& B) {
  if (!(A.cat == B.cat) || A.max_rank != B.max_rank)
    throw std::invalid_argument("modules live over different categories or windows");
}

void require_free(const StabilityModule& A, const char* what) {
  for (auto& L : A.levels)
    if (!L.value.relations.empty())
      throw std::invalid_argument(std::string(what) + " needs free values");
}

StabilityModule pointwise(const CategoryId& cat, int up_to,
                          const std::function<PresentedAbelianGroup(int)>& value,
                          const std::function<IntMat(int, const Mat&)>& action,
                          const std::function<IntMat(int)>& transition) {
  StabilityModule C;
  C.cat = cat;
  C.max_rank = up_to;
  C.act = action;
  for (int n = 0; n <= up_to; ++n) {
    ModuleLevel L;
    L.value = value(n);
    for (auto& g : group_generators(cat, n)) L.gen_action.push_back(action(n, g));
    if (n < up_to) L.phi = transition(n);
    C.levels.push_back(std::move(L));
  }
  return C;
}

// subsets of {0..n-1} of size k in lexicographic order
std::vector<std::vector<int>> subsets_of(int n, int k) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur;
  std::function<void(int)> rec = [&](int from) {
    if ((int)cur.size() == k) {
      out.push_back(cur);
      return;
    }
    for (int i = from; i <= n - (k - (int)cur.size()); ++i) {
      cur.push_back(i);
      rec(i + 1);
      cur.pop_back();
    }
  };
  rec(0);
  return out;
}

long long small_det(const IntMat& M, const std::vector<int>& rows,
                    const std::vector<int>& cols) {
  int k = (int)rows.size();
  if (k == 1) return imat_get(M, rows[0], cols[0]);
  if (k == 2)
    return imat_get(M, rows[0], cols[0]) * imat_get(M, rows[1], cols[1]) -
           imat_get(M, rows[0], cols[1]) * imat_get(M, rows[1], cols[0]);
  long long d = 0;
  for (int i = 0; i < k; ++i) {
    std::vector<int> rs;
    for (int j = 0; j < k; ++j)
      if (j != i) rs.push_back(rows[j]);
    std::vector<int> cs(cols.begin() + 1, cols.end());
    long long co = imat_get(M, rows[i], cols[0]) * small_det(M, rs, cs);
    d += (i % 2 ? -co : co);
  }
  return d;
}

IntMat wedge_mat(const IntMat& M, int k, int src_n, int tgt_n) {
  auto S = subsets_of(tgt_n, k), T = subsets_of(src_n, k);
  IntMat W = imat_zero((int)S.size(), (int)T.size());
  for (size_t i = 0; i < S.size(); ++i)
    for (size_t j = 0; j < T.size(); ++j) W[i][j] = small_det(M, S[i], T[j]);
  return W;
}

std::vector<std::pair<int, int>> sym_pairs(int n) {
  std::vector<std::pair<int, int>> ps;
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) ps.push_back({i, j});
  return ps;
}

IntMat sym2_mat(const IntMat& M, int src_n, int tgt_n) {
  auto S = sym_pairs(tgt_n), T = sym_pairs(src_n);
  std::map<std::pair<int, int>, int> sidx;
  for (size_t i = 0; i < S.size(); ++i) sidx[S[i]] = (int)i;
  IntMat W = imat_zero((int)S.size(), (int)T.size());
  for (size_t t = 0; t < T.size(); ++t) {
    auto [k, l] = T[t];
    for (int i = 0; i < tgt_n; ++i)
      for (int j = 0; j < tgt_n; ++j) {
        long long c = imat_get(M, i, k) * imat_get(M, j, l);
        if (!c) continue;
        auto key = i <= j ? std::make_pair(i, j) : std::make_pair(j, i);
        W[sidx[key]][t] += c;
      }
  }
  return W;
}

}  // namespace

StabilityModule direct_sum(const StabilityModule& A, const StabilityModule& B) {
  check_compatible(A, B);
  auto actA = A.act, actB = B.act;
  auto sizesA = std::make_shared<std::vector<int>>(), sizesB = std::make_shared<std::vector<int>>();
  for (auto& L : A.levels) sizesA->push_back(L.value.generators);
  for (auto& L : B.levels) sizesB->push_back(L.value.generators);
  auto block = [sizesA, sizesB](int rn, int cn, const IntMat& X, const IntMat& Y) {
    IntMat M = imat_zero((*sizesA)[rn] + (*sizesB)[rn], (*sizesA)[cn] + (*sizesB)[cn]);
    for (int i = 0; i < (*sizesA)[rn]; ++i)
      for (int j = 0; j < (*sizesA)[cn]; ++j) M[i][j] = imat_get(X, i, j);
    for (int i = 0; i < (*sizesB)[rn]; ++i)
      for (int j = 0; j < (*sizesB)[cn]; ++j)
        M[(*sizesA)[rn] + i][(*sizesA)[cn] + j] = imat_get(Y, i, j);
    return M;
  };
  auto pa = std::make_shared<StabilityModule>(A), pb = std::make_shared<StabilityModule>(B);
  return pointwise(
      A.cat, A.max_rank,
      [pa, pb](int n) { return direct_sum_groups(pa->at(n).value, pb->at(n).value); },
      [pa, pb, block](int n, const Mat& g) {
        return block(n, n, pa->act(n, g), pb->act(n, g));
      },
      [pa, pb, block](int n) { return block(n + 1, n, pa->at(n).phi, pb->at(n).phi); });
}

StabilityModule tensor(const StabilityModule& A, const StabilityModule& B) {
  check_compatible(A, B);
  auto pa = std::make_shared<StabilityModule>(A), pb = std::make_shared<StabilityModule>(B);
  return pointwise(
      A.cat, A.max_rank,
      [pa, pb](int n) {
        const auto& GA = pa->at(n).value;
        const auto& GB = pb->at(n).value;
        PresentedAbelianGroup G;
        G.generators = GA.generators * GB.generators;
        for (auto& r : GA.relations)
          for (int j = 0; j < GB.generators; ++j) {
            std::vector<long long> row(G.generators, 0);
            for (size_t i = 0; i < r.size(); ++i) row[i * GB.generators + j] = r[i];
            G.relations.push_back(std::move(row));
          }
        for (int i = 0; i < GA.generators; ++i)
          for (auto& r : GB.relations) {
            std::vector<long long> row(G.generators, 0);
            for (size_t j = 0; j < r.size(); ++j) row[i * GB.generators + j] = r[j];
            G.relations.push_back(std::move(row));
          }
        return G;
      },
      [pa, pb](int n, const Mat& g) {
        return imat_kronecker(pa->act(n, g), pb->act(n, g));
      },
      [pa, pb](int n) { return imat_kronecker(pa->at(n).phi, pb->at(n).phi); });
}

StabilityModule wedge_power(const StabilityModule& A, int k) {
  if (k != 2 && k != 3) throw std::invalid_argument("wedge_power supports k = 2, 3");
  require_free(A, "wedge_power");
  auto pa = std::make_shared<StabilityModule>(A);
  return pointwise(
      A.cat, A.max_rank,
      [pa, k](int n) {
        return free_group((int)subsets_of(pa->gens(n), k).size());
      },
      [pa, k](int n, const Mat& g) {
        return wedge_mat(pa->act(n, g), k, pa->gens(n), pa->gens(n));
      },
      [pa, k](int n) {
        return wedge_mat(pa->at(n).phi, k, pa->gens(n), pa->gens(n + 1));
      });
}

StabilityModule sym_square(const StabilityModule& A) {
  require_free(A, "sym_square");
  auto pa = std::make_shared<StabilityModule>(A);
  return pointwise(
      A.cat, A.max_rank,
      [pa](int n) { return free_group((int)sym_pairs(pa->gens(n)).size()); },
      [pa](int n, const Mat& g) {
        return sym2_mat(pa->act(n, g), pa->gens(n), pa->gens(n));
      },
      [pa](int n) { return sym2_mat(pa->at(n).phi, pa->gens(n), pa->gens(n + 1)); });
}

StabilityModule sym_square_mod_squares(const StabilityModule& A) {
  StabilityModule S = sym_square(A);
  for (int n = 0; n <= S.max_rank; ++n) {
    auto ps = sym_pairs(A.gens(n));
    for (size_t t = 0; t < ps.size(); ++t) {
      std::vector<long long> row(ps.size(), 0);
      row[t] = ps[t].first == ps[t].second ? 1 : 2;
      S.levels[n].value.relations.push_back(std::move(row));
    }
  }
  return S;
}

StabilityModule mod_scalar(const StabilityModule& A, long long m) {
  StabilityModule S = A;
  for (auto& L : S.levels)
    for (int i = 0; i < L.value.generators; ++i) {
      std::vector<long long> row(L.value.generators, 0);
      row[i] = m;
      L.value.relations.push_back(std::move(row));
    }
  return S;
}

// --------------------------------------------------- shift, kernel, coker

StabilityModule shift(const StabilityModule& A) {
  if (A.max_rank < 1) throw std::invalid_argument("shift needs max_rank >= 1");
  auto pa = std::make_shared<StabilityModule>(A);
  return pointwise(
      A.cat, A.max_rank - 1,
      [pa](int n) { return pa->at(n + 1).value; },
      [pa](int n, const Mat& g) {
        return pa->act(n + 1, block_sum_elements(pa->cat, one_slot_identity(pa->cat), g));
      },
      [pa](int n) { return pa->at(n + 1).phi; });
}

IntMat shift_map(const StabilityModule& A, int n) {
  return imat_mul(A.act(n + 1, rotation_forward(A.cat, n + 1)), A.at(n).phi);
}

std::pair<StabilityModule, StabilityModule> kernel_coker(const StabilityModule& A) {
  if (A.max_rank < 1) throw std::invalid_argument("kernel_coker needs max_rank >= 1");
  StabilityModule SA = shift(A);
  int N = A.max_rank - 1;

  // cokernel: the shifted presentation with the image columns added
  StabilityModule C = SA;
  for (int n = 0; n <= N; ++n) {
    IntMat nu = shift_map(A, n);
    for (int j = 0; j < A.gens(n); ++j) {
      std::vector<long long> row(C.gens(n), 0);
      for (int i = 0; i < C.gens(n); ++i) row[i] = imat_get(nu, i, j);
      C.levels[n].value.relations.push_back(std::move(row));
    }
  }

  // kernel: Hermite bases of the preimages of the shifted relation lattices
  auto pa = std::make_shared<StabilityModule>(A);
  auto bases = std::make_shared<std::vector<ZLattice>>();
  for (int n = 0; n <= N; ++n) {
    ZLattice tgt = lattice_of_rows(A.gens(n + 1), A.at(n + 1).value.relations);
    bases->push_back(preimage_lattice(shift_map(A, n), A.gens(n + 1), A.gens(n), tgt));
  }
  auto express_in = [bases](int n, const bigvec& v) {
    bigvec c;
    if (!(*bases)[n].express(v, c))
      throw std::runtime_error("vector escapes the kernel lattice");
    IntMat::value_type row(c.size());
    for (size_t i = 0; i < c.size(); ++i) row[i] = to_ll(c[i]);
    return row;
  };
  auto map_basis = [pa, bases, express_in](int n, const IntMat& M, int out_level) {
    const ZLattice& P = (*bases)[n];
    IntMat out = imat_zero((int)(*bases)[out_level].rows.size(), (int)P.rows.size());
    for (size_t j = 0; j < P.rows.size(); ++j) {
      bigvec img(out_level == n ? pa->gens(n) : pa->gens(out_level), 0);
      for (size_t i = 0; i < img.size(); ++i)
        for (int kk = 0; kk < pa->gens(n); ++kk)
          if (imat_get(M, (int)i, kk) != 0) img[i] += imat_get(M, (int)i, kk) * P.rows[j][kk];
      auto col = express_in(out_level, img);
      for (size_t i = 0; i < col.size(); ++i) out[i][j] = col[i];
    }
    return out;
  };
  StabilityModule K = pointwise(
      A.cat, N,
      [pa, bases](int n) {
        PresentedAbelianGroup G;
        G.generators = (int)(*bases)[n].rows.size();
        ZLattice src = lattice_of_rows(pa->gens(n), pa->at(n).value.relations);
        for (auto& rel : src.rows) {
          bigvec c;
          if (!(*bases)[n].express(rel, c))
            throw std::runtime_error("relation escapes the kernel lattice");
          std::vector<long long> row(c.size());
          for (size_t i = 0; i < c.size(); ++i) row[i] = to_ll(c[i]);
          G.relations.push_back(std::move(row));
        }
        return G;
      },
      [pa, map_basis](int n, const Mat& g) { return map_basis(n, pa->act(n, g), n); },
      [pa, map_basis](int n) { return map_basis(n, pa->at(n).phi, n + 1); });
  return {K, C};
}

PolyDegreeReport polynomial_degree(const StabilityModule& A, int floor_d) {
  PolyDegreeReport rep;
  rep.floor_d = floor_d;
  StabilityModule cur = A;
  for (int j = 0;; ++j) {
    int top = cur.max_rank;
    bool zero = true;
    for (int n = std::max(0, floor_d + 1); n <= top && zero; ++n)
      zero = cur.invariants(n).is_zero();
    if (zero && top > floor_d) {
      rep.established = true;
      rep.minus_infinity = j == 0;
      rep.degree = j - 1;
      rep.verified_to = A.max_rank - std::max(0, j - 1);
      std::ostringstream os;
      if (rep.minus_infinity)
        os << "vanishes in ranks > " << floor_d << " (verified for ranks <= "
           << A.max_rank << ")";
      else
        os << "polynomial degree <= " << rep.degree << " in ranks > " << floor_d
           << ", verified for ranks <= " << rep.verified_to;
      rep.summary = os.str();
      return rep;
    }
    if (top <= std::max(0, floor_d) || top < 1) {
      rep.summary = "window exhausted before a bound was certified";
      return rep;
    }
    auto [ker, cok] = kernel_coker(cur);
    for (int n = std::max(0, floor_d + 1); n <= ker.max_rank; ++n)
      if (!ker.invariants(n).is_zero()) {
        std::ostringstream os;
        os << "kernel obstruction at rank " << n << " after " << j << " shifts";
        rep.summary = os.str();
        return rep;
      }
    cur = cok;
  }
}

// --------------------------------------------------------- induced modules

InducedModule induced_module(const StabilityModule& A, int k, int n) {
  if (k < 0 || k > n || n > A.max_rank)
    throw std::invalid_argument("induced_module ranks out of range");
  auto gm = std::make_shared<GroupTable>(enumerate_group(A.cat, k));
  auto auts = std::make_shared<std::vector<Morphism>>(automorphisms_of(A.cat, *gm, k));
  auto T = std::make_shared<OrbitTable>(build_orbits(A.cat, k, n, *gm, *auts));
  auto pa = std::make_shared<StabilityModule>(A);

  InducedModule I;
  I.reps = T->reps;
  I.gens_per_rep = A.gens(k);
  I.value.generators = (int)T->reps.size() * I.gens_per_rep;
  for (int r = 0; r < (int)T->reps.size(); ++r)
    for (auto& rel : A.at(k).value.relations) {
      std::vector<long long> row(I.value.generators, 0);
      for (size_t j = 0; j < rel.size(); ++j) row[r * I.gens_per_rep + j] = rel[j];
      I.value.relations.push_back(std::move(row));
    }
  I.locate = [T, gm](const Morphism& f) {
    auto [r, c] = T->where.at(f.bytes());
    return std::make_pair(r, gm->elements[c]);
  };
  auto cat = A.cat;
  int gens = I.value.generators, per = I.gens_per_rep;
  I.act = [T, gm, pa, cat, k, gens, per](const Mat& g) {
    IntMat M = imat_zero(gens, gens);
    for (int r = 0; r < (int)T->reps.size(); ++r) {
      auto [r2, c] = T->where.at(act(cat, g, T->reps[r]).bytes());
      IntMat B = pa->act(k, gm->elements[c]);
      for (int i = 0; i < per; ++i)
        for (int j = 0; j < per; ++j) M[r2 * per + i][r * per + j] = imat_get(B, i, j);
    }
    return M;
  };
  return I;
}

IntMat induced_evaluation(const StabilityModule& A, int n, const InducedModule& I) {
  IntMat M = imat_zero(A.gens(n), I.value.generators);
  for (int r = 0; r < (int)I.reps.size(); ++r) {
    IntMat blk = imat_mul(A.act(n, section(A.cat, I.reps[r])), A.at(n - 1).phi);
    for (int i = 0; i < A.gens(n); ++i)
      for (int j = 0; j < I.gens_per_rep; ++j)
        M[i][r * I.gens_per_rep + j] = imat_get(blk, i, j);
  }
  return M;
}

bool induced_surjects(const StabilityModule& A, int n) {
  InducedModule I = induced_module(A, n - 1, n);
  IntMat ev = induced_evaluation(A, n, I);
  int g = A.gens(n);
  SparseMat M(g, (long long)I.value.generators + (long long)A.at(n).value.relations.size());
  long long col = 0;
  for (int j = 0; j < I.value.generators; ++j, ++col)
    for (int i = 0; i < g; ++i)
      if (imat_get(ev, i, j)) M.add_entry(col, i, imat_get(ev, i, j));
  for (auto& rel : A.at(n).value.relations) {
    for (size_t i = 0; i < rel.size(); ++i)
      if (rel[i]) M.add_entry(col, (int)i, rel[i]);
    ++col;
  }
  SnfSummary s = smith_form(M);
  return s.rank == g && s.divisors.empty();
}

// ------------------------------------------------ central stability complex

namespace {

using SCol = std::map<int, long long>;

void write_column(SparseMat& M, long long col, const SCol& entries) {
  for (auto [r, v] : entries)
    if (v) M.add_entry(col, r, v);
}

}  // namespace

PresentedComplex central_stability_complex(const StabilityModule& A, int n, int max_i) {
  if (n < 0 || n > A.max_rank)
    throw std::invalid_argument("central stability complex rank out of range");
  const CategoryId& cat = A.cat;
  const Ring& R = work_ring(cat);
  int P = max_i + 1;

  PresentedComplex C;
  C.lo = -1;

  std::vector<std::vector<Morphism>> homs(P + 1);
  std::vector<std::unordered_map<std::string, int>> index(P + 1);
  for (int p = 0; p <= P; ++p) {
    if (p + 1 <= n) {
      guard_hom(cat, p + 1, n);
      homs[p] = hom_set(cat, p + 1, n);
    }
    for (int s = 0; s < (int)homs[p].size(); ++s) index[p][homs[p][s].bytes()] = s;
  }

  {
    BlockGroup bottom;
    bottom.copies = 1;
    bottom.local = A.at(n).value;
    C.groups.push_back(bottom);
  }
  for (int p = 0; p <= P; ++p) {
    BlockGroup B;
    B.copies = (int)homs[p].size();
    B.local = n - p - 1 >= 0 ? A.at(n - p - 1).value : free_group(0);
    C.groups.push_back(B);
  }

  C.maps.resize(C.groups.size());
  // inverse sections of the previous degree, the empty morphism for p = 0
  std::vector<Mat> inv_prev;
  {
    Morphism empty = hom_set(cat, 0, n)[0];
    inv_prev.push_back(group_inverse(cat, section(cat, empty)));
  }
  for (int p = 0; p <= P; ++p) {
    int k = p + 1;  // index in the complex
    int src_gens = C.groups[k].local.generators;
    int tgt_gens = C.groups[k - 1].local.generators;
    SparseMat D((long long)C.groups[k - 1].gens(), (long long)C.groups[k].gens());
    if (!homs[p].empty() && src_gens > 0 && n - p >= 0) {
      std::vector<Mat> hats;
      Mat tail = rotate_tail(cat, n, p);
      for (int i = 0; i <= p; ++i) {
        Mat s_face = section(cat, face_morphism(cat, p, i));
        hats.push_back(mat_mul(R, block_sum_elements(cat, s_face, identity_mat(cat.dim(n - p - 1))), tail));
      }
      int dp = cat.dim(p), dn = cat.dim(n);
      for (int s = 0; s < (int)homs[p].size(); ++s) {
        const Morphism& phi = homs[p][s];
        Mat sphi = section(cat, phi);
        std::vector<SCol> cols(src_gens);
        for (int i = 0; i <= p; ++i) {
          Morphism psi = compose(cat, phi, face_morphism(cat, p, i));
          int t = p == 0 ? 0 : index[p - 1].at(psi.bytes());
          Mat X = mat_mul(R, inv_prev[t], mat_mul(R, sphi, hats[i]));
          for (int r = 0; r < dn; ++r)
            for (int c = 0; c < dp; ++c)
              if (X.at(r, c) != (r == c ? 1 : 0))
                throw std::runtime_error("face lift violates the block shape");
          for (int r = 0; r < dp; ++r)
            for (int c = dp; c < dn; ++c)
              if (X.at(r, c) != 0)
                throw std::runtime_error("face lift violates the block shape");
          Mat h(dn - dp, dn - dp);
          for (int r = dp; r < dn; ++r)
            for (int c = dp; c < dn; ++c) h.at(r - dp, c - dp) = X.at(r, c);
          IntMat coeff = imat_mul(A.act(n - p, h), A.at(n - p - 1).phi);
          long long sign = i % 2 ? -1 : 1;
          for (int j = 0; j < src_gens; ++j)
            for (int r2 = 0; r2 < tgt_gens; ++r2)
              if (imat_get(coeff, r2, j))
                cols[j][t * tgt_gens + r2] += sign * imat_get(coeff, r2, j);
        }
        for (int j = 0; j < src_gens; ++j)
          write_column(D, (long long)s * src_gens + j, cols[j]);
      }
    }
    C.maps[k] = std::move(D);
    // sections of this degree become the previous-degree data of the next
    inv_prev.clear();
    for (auto& f : homs[p]) inv_prev.push_back(group_inverse(cat, section(cat, f)));
  }
  return C;
}

// ----------------------------------------------------- free cover (homology)

namespace {

SCol sparse_apply(const SparseMat& M, const SCol& v) {
  SCol out;
  for (auto [j, x] : v) {
    if (!x) continue;
    for (auto [r, y] : M.col[j]) out[r] += x * y;
  }
  return out;
}

// express a vector spread over identical blocks in the block-diagonal
// relation lattice; throws when it is not a member
SCol express_blockwise(const SCol& v, const ZLattice& local, int local_gens,
                       int local_rank) {
  SCol out;
  if (local_gens == 0) {
    for (auto [r, x] : v)
      if (x) throw std::runtime_error("boundary fails to square to zero mod relations");
    return out;
  }
  std::map<int, bigvec> blocks;
  for (auto [r, x] : v) {
    if (!x) continue;
    int b = r / local_gens;
    auto it = blocks.find(b);
    if (it == blocks.end()) it = blocks.emplace(b, bigvec(local_gens, 0)).first;
    it->second[r % local_gens] = x;
  }
  for (auto& [b, vec] : blocks) {
    bigvec c;
    if (!local.express(vec, c))
      throw std::runtime_error("boundary fails to square to zero mod relations");
    for (int i = 0; i < local_rank; ++i)
      if (c[i] != 0) out[b * local_rank + i] = to_ll(c[i]);
  }
  return out;
}

}  // namespace

ChainComplex free_cover(const PresentedComplex& C) {
  int len = (int)C.groups.size();
  std::vector<ZLattice> local(len, ZLattice(0));
  std::vector<int> rloc(len, 0);
  for (int k = 0; k < len; ++k) {
    local[k] = lattice_of_rows(C.groups[k].local.generators, C.groups[k].local.relations);
    rloc[k] = (int)local[k].rows.size();
  }
  auto rdim = [&](int k) {
    return k >= 1 && k <= len ? (long long)C.groups[k - 1].copies * rloc[k - 1] : 0;
  };
  auto gdim = [&](int k) { return k >= 0 && k < len ? (long long)C.groups[k].gens() : 0; };

  ChainComplex F;
  F.dims.resize(len + 1);
  F.boundaries.resize(len + 1);
  for (int k = 0; k <= len; ++k) F.dims[k] = gdim(k) + rdim(k);
  F.boundaries[0] = SparseMat(0, F.dims[0]);
  for (int k = 1; k <= len; ++k) {
    SparseMat D(F.dims[k - 1], F.dims[k]);
    int lg = C.groups[k - 1].local.generators;
    // generator columns: the boundary plus the square-zero correction
    for (long long j = 0; j < gdim(k); ++j) {
      SCol up;
      if (k < len)
        for (auto [r, v] : C.maps[k].col[j]) up[r] += v;
      SCol low;
      if (k >= 2) {
        SCol dd = sparse_apply(C.maps[k - 1], up);
        low = express_blockwise(dd, local[k - 2], C.groups[k - 2].local.generators,
                                rloc[k - 2]);
      }
      SCol colmap;
      for (auto [r, v] : up) colmap[r] += v;
      for (auto [r, v] : low) colmap[(int)(gdim(k - 1) + r)] -= v;
      write_column(D, j, colmap);
    }
    // relation columns of the level below: R and -d'
    for (int c = 0; c < C.groups[k - 1].copies; ++c)
      for (int t = 0; t < rloc[k - 1]; ++t) {
        SCol rv;
        for (int i = 0; i < lg; ++i)
          if (local[k - 1].rows[t][i] != 0)
            rv[c * lg + i] = to_ll(local[k - 1].rows[t][i]);
        SCol colmap = rv;
        if (k >= 2) {
          SCol dR = sparse_apply(C.maps[k - 1], rv);
          SCol dp = express_blockwise(dR, local[k - 2],
                                      C.groups[k - 2].local.generators, rloc[k - 2]);
          colmap.clear();
          for (auto [r, v] : rv) colmap[r] += v;
          for (auto [r, v] : dp) colmap[(int)(gdim(k - 1) + r)] -= v;
        }
        write_column(D, gdim(k) + (long long)c * rloc[k - 1] + t, colmap);
      }
    F.boundaries[k] = std::move(D);
  }
  F.check_dsquared();
  return F;
}

HomologyResult central_stability_homology(const StabilityModule& A, int n, int max_i,
                                          int p) {
  PresentedComplex C = central_stability_complex(A, n, max_i);
  ChainComplex F = free_cover(C);
  HomologyResult raw =
      p == 0 ? smith_homology(F, 0, max_i + 1) : field_betti(F, p, 0, max_i + 1);
  HomologyResult out;
  out.coefficient = raw.coefficient;
  for (int d = -1; d <= max_i; ++d) {
    out.betti[d] = raw.betti.count(d + 1) ? raw.betti.at(d + 1) : 0;
    if (raw.torsion.count(d + 1)) out.torsion[d] = raw.torsion.at(d + 1);
    else out.torsion[d] = {};
  }
  return out;
}

long long trivial_csh_betti_streamed(const CategoryId& cat, int n, int i, int p) {
  if (i < 0) throw std::invalid_argument("streamed betti needs i >= 0");
  // index the degree-i basis Hom(i+1, n)
  std::unordered_map<std::string, int> idx_i;
  {
    guard_hom(cat, i + 1, n);
    int c = 0;
    for_each_hom(cat, i + 1, n, [&](const Morphism& f) {
      idx_i[f.bytes()] = c++;
      return true;
    });
  }
  long long dim_i = (long long)idx_i.size();
  if (dim_i == 0) return 0;

  long long rank_down = 0;
  if (i == 0) {
    rank_down = 1;  // the augmentation row
  } else {
    std::unordered_map<std::string, int> idx_lo;
    int c = 0;
    for_each_hom(cat, i, n, [&](const Morphism& f) {
      idx_lo[f.bytes()] = c++;
      return true;
    });
    FieldRankStreamer st(p);
    for_each_hom(cat, i + 1, n, [&](const Morphism& f) {
      SCol col;
      for (int j = 0; j <= i; ++j)
        col[idx_lo.at(compose(cat, f, face_morphism(cat, i, j)).bytes())] +=
            j % 2 ? -1 : 1;
      std::vector<std::pair<int, int>> entries;
      for (auto [r, v] : col) {
        int vm = (int)(((v % p) + p) % p);
        if (vm) entries.push_back({r, vm});
      }
      st.add_column(entries);
      return true;
    });
    rank_down = st.rank();
  }

  long long rank_up = 0;
  if (i + 2 <= n) {
    guard_hom(cat, i + 2, n);
    FieldRankStreamer st(p);
    for_each_hom(cat, i + 2, n, [&](const Morphism& f) {
      SCol col;
      for (int j = 0; j <= i + 1; ++j)
        col[idx_i.at(compose(cat, f, face_morphism(cat, i + 1, j)).bytes())] +=
            j % 2 ? -1 : 1;
      std::vector<std::pair<int, int>> entries;
      for (auto [r, v] : col) {
        int vm = (int)(((v % p) + p) % p);
        if (vm) entries.push_back({r, vm});
      }
      st.add_column(entries);
      return true;
    });
    rank_up = st.rank();
  }
  return dim_i - rank_down - rank_up;
}

// ------------------------------------------------------------- coequalizer

CsdReport coequalizer_csd(const StabilityModule& A) {
  CsdReport rep;
  rep.max_rank = A.max_rank;
  const Ring& R = work_ring(A.cat);
  for (int n = 1; n <= A.max_rank; ++n) {
    rep.ranks.push_back(n);
    try {
      InducedModule I1 = induced_module(A, n - 1, n);
      // sparse relation matrix of the coequalizer: generators are columns
      std::vector<std::vector<std::pair<int, long long>>> qrel;
      for (auto& rel : I1.value.relations) {
        std::vector<std::pair<int, long long>> row;
        for (size_t j = 0; j < rel.size(); ++j)
          if (rel[j]) row.push_back({(int)j, rel[j]});
        qrel.push_back(std::move(row));
      }
      if (n >= 2) {
        InducedModule I2 = induced_module(A, n - 2, n);
        Mat sw = sigma_swap(A.cat, n);
        GroupTable g2tab = enumerate_group(A.cat, 2);
        Mat id_low = identity_mat(A.cat.dim(n - 2));
        // difference of the two induced maps; the domain runs over coset
        // representatives s(rep) (1 + u) with u in the last-two-slot group
        for (int r = 0; r < (int)I2.reps.size(); ++r) {
          Mat base = section(A.cat, I2.reps[r]);
          for (auto& u : g2tab.elements) {
            Mat g1 = mat_mul(R, base, block_sum_elements(A.cat, id_low, u));
            Mat g2 = mat_mul(R, g1, sw);
            std::vector<SCol> cols(I2.gens_per_rep);
            for (int which = 0; which < 2; ++which) {
              const Mat& g = which ? g2 : g1;
              auto [r2, c] = I1.locate(truncate_element(A.cat, g, n - 1, n));
              IntMat blk = imat_mul(A.act(n - 1, c), A.at(n - 2).phi);
              long long sgn = which ? -1 : 1;
              for (int i = 0; i < I1.gens_per_rep; ++i)
                for (int j = 0; j < I2.gens_per_rep; ++j)
                  if (imat_get(blk, i, j))
                    cols[j][r2 * I1.gens_per_rep + i] += sgn * imat_get(blk, i, j);
            }
            for (auto& cvec : cols) {
              std::vector<std::pair<int, long long>> row;
              for (auto [i, v] : cvec)
                if (v) row.push_back({i, v});
              if (!row.empty()) qrel.push_back(std::move(row));
            }
          }
        }
      }
      IntMat ev = induced_evaluation(A, n, I1);
      bool surj;
      {
        int g = A.gens(n);
        SparseMat M(g, (long long)I1.value.generators +
                           (long long)A.at(n).value.relations.size());
        long long col = 0;
        for (int j = 0; j < I1.value.generators; ++j, ++col)
          for (int i = 0; i < g; ++i)
            if (imat_get(ev, i, j)) M.add_entry(col, i, imat_get(ev, i, j));
        for (auto& rel : A.at(n).value.relations) {
          for (size_t i = 0; i < rel.size(); ++i)
            if (rel[i]) M.add_entry(col, (int)i, rel[i]);
          ++col;
        }
        SnfSummary s = smith_form(M);
        surj = s.rank == g && s.divisors.empty();
      }
      GroupInvariants qinv;
      {
        SparseMat M((long long)qrel.size(), I1.value.generators);
        for (size_t i = 0; i < qrel.size(); ++i)
          for (auto [j, v] : qrel[i]) M.add_entry(j, (int)i, v);
        SnfSummary s = smith_form(M);
        qinv.free_rank = I1.value.generators - s.rank;
        qinv.torsion = s.divisors;
      }
      bool iso = surj && qinv == A.invariants(n);
      rep.status.push_back(iso ? "iso" : "not-iso");
    } catch (const CapExceeded&) {
      rep.status.push_back("skipped (cap)");
    }
  }
  int d = rep.max_rank;
  for (int idx = (int)rep.ranks.size() - 1; idx >= 0 && rep.status[idx] == "iso"; --idx)
    d = rep.ranks[idx] - 1;
  rep.degree_window = d;
  rep.all_skipped = true;
  for (auto& s : rep.status) rep.all_skipped = rep.all_skipped && s == "skipped (cap)";
  return rep;
}

// ---------------------------------------------------------------- builtins

namespace {

StabilityModule putman_sam_module(const Ring& R, int up_to) {
  CategoryId cat = vic_cat(R);
  struct Data {
    CategoryId cat;
    Ring R;
    // per rank: basis (v, C) and its index
    std::vector<std::vector<std::pair<Vec, Submodule>>> basis;
    std::vector<std::unordered_map<std::string, int>> index;

    std::string key(const Vec& v, const Submodule& C) const {
      return vec_bytes(v) + C.bytes();
    }
    IntMat action(int n, const Mat& g) const {
      int sz = (int)basis[n].size();
      IntMat M = imat_zero(sz, sz);
      for (int j = 0; j < sz; ++j) {
        Vec v = mat_apply(R, g, basis[n][j].first);
        std::vector<Vec> rows;
        for (int i = 0; i < basis[n][j].second.howell.rows; ++i)
          rows.push_back(mat_apply(R, g, basis[n][j].second.howell.row(i)));
        Submodule C = howell_form(R, n, rows);
        M[index[n].at(key(v, C))][j] = 1;
      }
      return M;
    }
  };
  auto D = std::make_shared<Data>();
  D->cat = cat;
  D->R = R;
  for (int n = 0; n <= up_to; ++n) {
    D->basis.emplace_back();
    D->index.emplace_back();
    Vec v(n, 0);
    auto step = [&]() {
      for (int i = n - 1; i >= 0; --i) {
        if (++v[i] < R.m) return true;
        v[i] = 0;
      }
      return false;
    };
    while (step()) {
      if (!is_unimodular(R, v)) continue;
      Submodule span_v = howell_form(R, n, {v});
      for (const Submodule& C : enumerate_complements(span_v)) {
        D->index[n][D->key(v, C)] = (int)D->basis[n].size();
        D->basis[n].push_back({v, C});
      }
    }
  }
  return pointwise(
      cat, up_to,
      [D](int n) { return free_group((int)D->basis[n].size()); },
      [D](int n, const Mat& g) { return D->action(n, g); },
      [D](int n) {
        const Ring& R = D->R;
        IntMat M = imat_zero((int)D->basis[n + 1].size(), (int)D->basis[n].size());
        for (int j = 0; j < (int)D->basis[n].size(); ++j) {
          Vec v = D->basis[n][j].first;
          v.push_back(0);
          std::vector<Vec> rows;
          for (int i = 0; i < D->basis[n][j].second.howell.rows; ++i) {
            Vec r = D->basis[n][j].second.howell.row(i);
            r.push_back(0);
            rows.push_back(std::move(r));
          }
          Vec last(n + 1, 0);
          last[n] = 1;
          rows.push_back(last);
          M[D->index[n + 1].at(D->key(v, howell_form(R, n + 1, rows)))][j] = 1;
        }
        return M;
      });
}

StabilityModule adjoint_module(const Ring& R, int up_to) {
  if (!R.is_field) throw std::invalid_argument("adjoint module needs a prime modulus");
  CategoryId cat = vic_cat(R);
  auto act_fn = [R](int n, const Mat& g) {
    Mat gi = mat_inverse(R, g);
    IntMat M = imat_zero(n * n, n * n);
    for (int k = 0; k < n; ++k)
      for (int l = 0; l < n; ++l)
        for (int i = 0; i < n; ++i)
          for (int j = 0; j < n; ++j) {
            int c = R.reduce((long long)g.at(i, k) * gi.at(l, j));
            if (c) M[i * n + j][k * n + l] = c;
          }
    return M;
  };
  return pointwise(
      cat, up_to,
      [R](int n) {
        PresentedAbelianGroup G = free_group(n * n);
        for (int i = 0; i < n * n; ++i) {
          std::vector<long long> row(n * n, 0);
          row[i] = R.m;
          G.relations.push_back(std::move(row));
        }
        return G;
      },
      act_fn,
      [](int n) {
        IntMat M = imat_zero((n + 1) * (n + 1), n * n);
        for (int i = 0; i < n; ++i)
          for (int j = 0; j < n; ++j) M[i * (n + 1) + j][i * n + j] = 1;
        return M;
      });
}

}  // namespace

StabilityModule builtin_module(const std::string& name, int max_rank) {
  if (name == "h1ia-fi") {
    StabilityModule M1 = free_standard(fi_cat(), 1, max_rank);
    return tensor(wedge_power(M1, 2), M1);
  }
  if (name == "johnson-fi") {
    StabilityModule M1 = free_standard(fi_cat(), 1, max_rank);
    StabilityModule H = direct_sum(M1, M1);
    StabilityModule sym_part = direct_sum(
        free_standard(fi_cat(), 0, max_rank),
        direct_sum(H, sym_square_mod_squares(H)));
    return direct_sum(wedge_power(H, 3), mod_scalar(sym_part, 2));
  }
  auto starts_with = [&](const std::string& pre) {
    return name.rfind(pre, 0) == 0;
  };
  if (starts_with("putman-sam:zmod:"))
    return putman_sam_module(Ring(std::stoi(name.substr(16))), max_rank);
  if (starts_with("adjoint:zmod:"))
    return adjoint_module(Ring(std::stoi(name.substr(13))), max_rank);
  throw std::invalid_argument("unknown builtin module: " + name);
}

// --------------------------------------------------------------------- json

std::string module_to_json(const StabilityModule& A) {
  nlohmann::json j;
  j["category"] = category_spec(A.cat);
  j["max_rank"] = A.max_rank;
  j["levels"] = nlohmann::json::array();
  for (auto& L : A.levels) {
    nlohmann::json lv;
    lv["generators"] = L.value.generators;
    lv["relations"] = L.value.relations;
    lv["actions"] = L.gen_action;
    lv["phi"] = L.phi;
    j["levels"].push_back(lv);
  }
  return j.dump(2);
}

StabilityModule module_from_json(const std::string& text) {
  nlohmann::json j = nlohmann::json::parse(text);
  StabilityModule A;
  A.cat = parse_category(j.at("category").get<std::string>());
  A.max_rank = j.at("max_rank").get<int>();
  for (auto& lv : j.at("levels")) {
    ModuleLevel L;
    L.value.generators = lv.at("generators").get<int>();
    L.value.relations = lv.at("relations").get<std::vector<std::vector<long long>>>();
    L.gen_action = lv.at("actions").get<std::vector<IntMat>>();
    L.phi = lv.at("phi").get<IntMat>();
    A.levels.push_back(std::move(L));
  }
  // arbitrary elements act through generator words from the group table
  struct Tables {
    std::map<int, GroupTable> t;
  };
  auto tabs = std::make_shared<Tables>();
  CategoryId cat = A.cat;
  auto lvls = std::make_shared<std::vector<ModuleLevel>>(A.levels);
  A.act = [tabs, cat, lvls](int n, const Mat& g) {
    auto it = tabs->t.find(n);
    if (it == tabs->t.end()) it = tabs->t.emplace(n, enumerate_group(cat, n)).first;
    IntMat M = imat_identity((*lvls)[n].value.generators);
    for (int w : it->second.word(g)) M = imat_mul(M, (*lvls)[n].gen_action[w]);
    return M;
  };
  return A;
}

}  // namespace stabhom
