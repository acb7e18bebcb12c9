#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "stabhom/homology.hpp"

using namespace stabhom;

namespace {

SparseMat from_dense(const std::vector<std::vector<long long>>& A) {
  SparseMat M((long long)A.size(), A.empty() ? 0 : (long long)A[0].size());
  for (size_t i = 0; i < A.size(); ++i)
    for (size_t j = 0; j < A[i].size(); ++j)
      if (A[i][j]) M.add_entry((long long)j, (int)i, A[i][j]);
  return M;
}

ChainComplex single_map(long long d) {
  // 0 -> Z --[d]--> Z -> 0, unaugmented
  ChainComplex C;
  C.dims = {1, 1};
  C.boundaries.resize(2);
  C.boundaries[0] = SparseMat(0, 1);
  C.boundaries[1] = SparseMat(1, 1);
  C.boundaries[1].add_entry(0, 0, d);
  return C;
}

SimplicialComplex circle3() {
  SimplicialComplex X;
  X.num_vertices = 3;
  X.insert_closed({0, 1});
  X.insert_closed({1, 2});
  X.insert_closed({0, 2});
  return X;
}

}  // namespace

TEST_CASE("smith form agrees with the dense oracle on random matrices") {
  std::mt19937 rng(2024);
  for (int t = 0; t < 300; ++t) {
    int r = 1 + (int)(rng() % 6), c = 1 + (int)(rng() % 6);
    std::vector<std::vector<long long>> A(r, std::vector<long long>(c));
    for (auto& row : A)
      for (auto& x : row) x = (long long)(rng() % 9) - 4;
    auto want = oracle::naive_smith(A);
    SnfSummary got = smith_form(from_dense(A));
    CHECK(got.rank == (long long)want.size());
    std::vector<bigint> wd;
    for (long long d : want)
      if (d != 1) wd.push_back(d);
    std::sort(wd.begin(), wd.end());
    CHECK(got.divisors == wd);
    // field rank relation: rank over F_p drops by the number of divisors p | d
    for (int p : {2, 3, 5}) {
      long long drop = 0;
      for (long long d : want)
        if (d % p == 0) ++drop;
      CHECK(field_rank(from_dense(A), p) == got.rank - drop);
    }
  }
}

TEST_CASE("single-entry boundary maps") {
  ChainComplex C = single_map(2);
  HomologyResult H = smith_homology(C, 0, 1);
  CHECK(H.betti[0] == 0);
  CHECK(H.torsion[0] == std::vector<bigint>{2});
  CHECK(H.betti[1] == 0);
  CHECK(field_betti(C, 2, 0, 0).betti[0] == 1);  // torsion visible mod 2
  CHECK(field_betti(C, 3, 0, 0).betti[0] == 0);
}

TEST_CASE("points and circles") {
  SimplicialComplex pt;
  pt.num_vertices = 1;
  pt.insert_closed({0});
  HomologyResult Hp = smith_homology(chain_complex_of(pt, true), -1, 1);
  for (int i = -1; i <= 1; ++i) CHECK(Hp.trivial_in(i));

  SimplicialComplex two;
  two.num_vertices = 2;
  two.insert_closed({0});
  two.insert_closed({1});
  HomologyResult H2 = smith_homology(chain_complex_of(two, true), -1, 0);
  CHECK(H2.trivial_in(-1));
  CHECK(H2.betti[0] == 1);

  HomologyResult Hc = smith_homology(chain_complex_of(circle3(), true), -1, 1);
  CHECK(Hc.trivial_in(-1));
  CHECK(Hc.trivial_in(0));
  CHECK(Hc.betti[1] == 1);
  CHECK(Hc.torsion[1].empty());
  CHECK(field_betti(chain_complex_of(circle3(), true), 2, 1, 1).betti[1] == 1);

  // empty complex: only reduced degree -1 survives
  SimplicialComplex none;
  HomologyResult He = smith_homology(chain_complex_of(none, true), -1, 0);
  CHECK(He.betti[-1] == 1);
}

TEST_CASE("injective-word complexes and derangement numbers") {
  // reduced homology concentrates in the top degree with rank D_n
  const long long derangement[] = {1, 0, 1, 2, 9, 44};
  for (int n = 2; n <= 5; ++n) {
    SemisimplicialSet X = build_K(fi_cat(), n);
    // level sizes n!/(n-p-1)!
    for (int p = 0; p < n; ++p) {
      long long want = 1;
      for (long long k = n - p; k <= n; ++k) want *= k;
      CHECK(X.size(p) == want);
    }
    ChainComplex C = chain_complex_of(X, true);
    HomologyResult H = smith_homology(C, -1, n - 1);
    for (int i = -1; i < n - 1; ++i) CHECK(H.trivial_in(i));
    CHECK(H.betti[n - 1] == derangement[n]);
    CHECK(H.torsion[n - 1].empty());
    // universal coefficients cross-check
    for (int p : {2, 3}) {
      HomologyResult F = field_betti(C, p, -1, n - 1);
      for (int i = -1; i <= n - 1; ++i) {
        long long tp = 0, tp1 = 0;
        for (auto& d : H.torsion[i])
          if (d % p == 0) ++tp;
        if (H.torsion.count(i - 1))
          for (auto& d : H.torsion.at(i - 1))
            if (d % p == 0) ++tp1;
        CHECK(F.betti[i] == H.betti[i] + tp + tp1);
      }
    }
    // Euler characteristic: alternating level sums vs alternating Betti sums
    long long chi_levels = -1;  // the augmentation cell
    for (int p = 0; p < n; ++p) chi_levels += (p % 2 ? -1 : 1) * X.size(p);
    long long chi_betti = 0;
    for (int i = -1; i <= n - 1; ++i) chi_betti += (i % 2 ? -1 : 1) * H.betti[i];
    CHECK(chi_levels == chi_betti);
  }
}

TEST_CASE("streaming field rank matches batch field rank") {
  std::mt19937 rng(77);
  for (int t = 0; t < 100; ++t) {
    int r = 1 + (int)(rng() % 10), c = 1 + (int)(rng() % 10);
    std::vector<std::vector<long long>> A(r, std::vector<long long>(c));
    for (auto& row : A)
      for (auto& x : row) x = (long long)(rng() % 7) - 3;
    SparseMat M = from_dense(A);
    for (int p : {2, 5}) {
      FieldRankStreamer st(p);
      for (long long j = 0; j < M.cols; ++j) {
        std::vector<std::pair<int, int>> col;
        for (auto [row_, v] : M.col[j]) col.push_back({row_, (int)v});
        st.add_column(col);
      }
      CHECK(st.rank() == field_rank(M, p));
    }
  }
}

TEST_CASE("zero connectivity") {
  SemisimplicialSet empty;
  CHECK(zero_connectivity(empty) == ZeroConn::Empty);
  SemisimplicialSet two;
  two.add(0, "a");
  two.add(0, "b");
  CHECK(zero_connectivity(two) == ZeroConn::Disconnected);
  SemisimplicialSet X = build_K(fi_cat(), 3);
  CHECK(zero_connectivity(X) == ZeroConn::Connected);
  // two disjoint edges
  SimplicialComplex D;
  D.num_vertices = 4;
  D.insert_closed({0, 1});
  D.insert_closed({2, 3});
  CHECK(zero_connectivity(ordered_complex(D)) == ZeroConn::Disconnected);
}

TEST_CASE("boundary-squared assertion catches bad complexes") {
  ChainComplex C;
  C.dims = {1, 1};
  C.boundaries.resize(2);
  C.boundaries[0] = SparseMat(1, 1);
  C.boundaries[0].add_entry(0, 0, 1);
  C.boundaries[1] = SparseMat(1, 1);
  C.boundaries[1].add_entry(0, 0, 1);
  C.augmented = true;
  CHECK_THROWS(C.check_dsquared());
}
