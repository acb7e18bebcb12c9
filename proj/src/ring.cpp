#include "stabhom/ring.hpp"

#include <algorithm>
#include <cassert>
#include <deque>
#include <numeric>
#include <stdexcept>

namespace stabhom {

namespace {

bool is_prime(int m) {
  if (m < 2) return false;
  for (int d = 2; d * d <= m; ++d)
    if (m % d == 0) return false;
  return true;
}

// Extended gcd over Z: returns g = gcd(a, b) and s, t with s*a + t*b = g.
long long xgcd(long long a, long long b, long long& s, long long& t) {
  if (b == 0) {
    s = (a >= 0) ? 1 : -1;
    t = 0;
    return a >= 0 ? a : -a;
  }
  long long s2, t2;
  long long g = xgcd(b, a % b, s2, t2);
  s = t2;
  t = s2 - (a / b) * t2;
  return g;
}

// Next vector in lexicographic order over (Z/m)^n; false when wrapped.
bool next_vec(const Ring& R, Vec& v) {
  for (int i = (int)v.size() - 1; i >= 0; --i) {
    if (++v[i] < R.m) return true;
    v[i] = 0;
  }
  return false;
}

// Same but the first coordinate varies fastest, so e_1 < e_2 < ...; used where
// the deterministic choice should reproduce the standard basis.
bool next_vec_rev(const Ring& R, Vec& v) {
  for (size_t i = 0; i < v.size(); ++i) {
    if (++v[i] < R.m) return true;
    v[i] = 0;
  }
  return false;
}

}  // namespace

Ring::Ring(int modulus) : m(modulus) {
  if (m < 2) throw std::invalid_argument("modulus must be >= 2");
  is_field = is_prime(m);
}

int Ring::reduce(long long x) const {
  long long r = x % m;
  if (r < 0) r += m;
  return (int)r;
}

bool Ring::is_unit(int r) const { return std::gcd(reduce(r), m) == 1; }

int Ring::inv(int r) const {
  r = reduce(r);
  for (int u = 1; u < m; ++u)
    if (reduce((long long)u * r) == 1) return u;
  throw std::invalid_argument("not a unit");
}

std::vector<int> Ring::units() const {
  std::vector<int> out;
  for (int r = 1; r < m; ++r)
    if (is_unit(r)) out.push_back(r);
  return out;
}

Vec Mat::col(int j) const {
  Vec v(rows);
  for (int i = 0; i < rows; ++i) v[i] = at(i, j);
  return v;
}

Mat identity_mat(int n) {
  Mat I(n, n);
  for (int i = 0; i < n; ++i) I.at(i, i) = 1;
  return I;
}

Mat mat_mul(const Ring& R, const Mat& A, const Mat& B) {
  assert(A.cols == B.rows);
  Mat C(A.rows, B.cols);
  for (int i = 0; i < A.rows; ++i)
    for (int k = 0; k < A.cols; ++k) {
      int aik = A.at(i, k);
      if (!aik) continue;
      for (int j = 0; j < B.cols; ++j)
        C.at(i, j) = R.reduce(C.at(i, j) + (long long)aik * B.at(k, j));
    }
  return C;
}

Vec mat_apply(const Ring& R, const Mat& A, const Vec& v) {
  assert((int)v.size() == A.cols);
  Vec out(A.rows, 0);
  for (int i = 0; i < A.rows; ++i) {
    long long acc = 0;
    for (int j = 0; j < A.cols; ++j) acc += (long long)A.at(i, j) * v[j];
    out[i] = R.reduce(acc);
  }
  return out;
}

Mat mat_from_cols(const std::vector<Vec>& cols) {
  if (cols.empty()) return Mat(0, 0);
  Mat M((int)cols[0].size(), (int)cols.size());
  for (int j = 0; j < M.cols; ++j)
    for (int i = 0; i < M.rows; ++i) M.at(i, j) = cols[j][i];
  return M;
}

Mat mat_from_rows(const std::vector<Vec>& rows) {
  if (rows.empty()) return Mat(0, 0);
  Mat M((int)rows.size(), (int)rows[0].size());
  for (int i = 0; i < M.rows; ++i)
    for (int j = 0; j < M.cols; ++j) M.at(i, j) = rows[i][j];
  return M;
}

int det_mod(const Ring& R, const Mat& A) {
  assert(A.rows == A.cols);
  int n = A.rows;
  // Fraction-free (Bareiss) elimination over Z; entries stay bounded at the
  // matrix sizes this project uses (n <= 10, residues < m <= 8).
  std::vector<long long> w(A.a.begin(), A.a.end());
  auto at = [&](int i, int j) -> long long& { return w[i * n + j]; };
  long long prev = 1;
  int sign = 1;
  for (int k = 0; k < n; ++k) {
    if (at(k, k) == 0) {
      int piv = -1;
      for (int i = k + 1; i < n; ++i)
        if (at(i, k) != 0) { piv = i; break; }
      if (piv < 0) {
        // A zero column in the remaining minor: determinant is the product of
        // the processed pivots times 0.
        return 0;
      }
      for (int j = 0; j < n; ++j) std::swap(at(k, j), at(piv, j));
      sign = -sign;
    }
    for (int i = k + 1; i < n; ++i)
      for (int j = k + 1; j < n; ++j)
        at(i, j) = (at(i, j) * at(k, k) - at(i, k) * at(k, j)) / prev;
    prev = at(k, k);
  }
  return R.reduce(sign * at(n - 1, n - 1));
}

bool is_invertible(const Ring& R, const Mat& A) {
  return A.rows == A.cols && R.is_unit(det_mod(R, A));
}

Mat mat_inverse(const Ring& R, const Mat& A) {
  assert(A.rows == A.cols);
  int n = A.rows;
  Mat W = A;
  Mat I = identity_mat(n);
  for (int k = 0; k < n; ++k) {
    int piv = -1;
    for (int i = k; i < n; ++i)
      if (R.is_unit(W.at(i, k))) { piv = i; break; }
    if (piv < 0) throw std::invalid_argument("matrix not invertible");
    for (int j = 0; j < n; ++j) {
      std::swap(W.at(k, j), W.at(piv, j));
      std::swap(I.at(k, j), I.at(piv, j));
    }
    int u = R.inv(W.at(k, k));
    for (int j = 0; j < n; ++j) {
      W.at(k, j) = R.reduce((long long)W.at(k, j) * u);
      I.at(k, j) = R.reduce((long long)I.at(k, j) * u);
    }
    for (int i = 0; i < n; ++i) {
      if (i == k) continue;
      int f = W.at(i, k);
      if (!f) continue;
      for (int j = 0; j < n; ++j) {
        W.at(i, j) = R.reduce(W.at(i, j) - (long long)f * W.at(k, j));
        I.at(i, j) = R.reduce(I.at(i, j) - (long long)f * I.at(k, j));
      }
    }
  }
  return I;
}

long long Submodule::size() const {
  long long s = 1;
  for (int d : piv_val) s *= ring.m / d;
  return s;
}

bool Submodule::contains(const Vec& v) const {
  assert((int)v.size() == ambient);
  Vec w = v;
  for (int r = 0; r < howell.rows; ++r) {
    int j = piv_col[r], d = piv_val[r];
    if (w[j] % d != 0) return false;
    int f = w[j] / d;
    if (f)
      for (int c = j; c < ambient; ++c)
        w[c] = ring.reduce(w[c] - (long long)f * howell.at(r, c));
  }
  for (int c = 0; c < ambient; ++c)
    if (w[c]) return false;
  return true;
}

bool Submodule::is_full() const {
  long long full = 1;
  for (int i = 0; i < ambient; ++i) full *= ring.m;
  return size() == full;
}

std::string Submodule::bytes() const {
  std::string s;
  s.push_back((char)ambient);
  s.push_back((char)howell.rows);
  for (int x : howell.a) s.push_back((char)x);
  return s;
}

Submodule howell_form(const Ring& R, int ambient, const std::vector<Vec>& rows) {
  // Incremental echelonization keyed by leading column, with Howell closure
  // rows (m/d times a pivot row) re-inserted so that row spans are canonical
  // over Z/m.  Hermite form is not canonical here; Howell form is.
  std::vector<Vec> piv(ambient);  // pivot row per column, empty = none
  std::deque<Vec> queue(rows.begin(), rows.end());
  auto leading = [&](const Vec& v) {
    for (int j = 0; j < ambient; ++j)
      if (v[j]) return j;
    return ambient;
  };
  auto closure = [&](const Vec& v, int j) -> Vec {
    int d = std::gcd(v[j], R.m);
    int f = R.m / d;
    if (f == 1) return {};
    Vec c(ambient, 0);
    bool nz = false;
    for (int t = 0; t < ambient; ++t) {
      c[t] = R.reduce((long long)f * v[t]);
      if (c[t]) nz = true;
    }
    return nz ? c : Vec{};
  };
  while (!queue.empty()) {
    Vec r = queue.front();
    queue.pop_front();
    for (int t = 0; t < ambient; ++t) r[t] = R.reduce(r[t]);
    int j = leading(r);
    while (j < ambient) {
      if (piv[j].empty()) {
        piv[j] = r;
        Vec c = closure(r, j);
        if (!c.empty()) queue.push_back(std::move(c));
        j = ambient;
        break;
      }
      Vec& p = piv[j];
      long long s, t;
      long long g = xgcd(p[j], r[j], s, t);
      // new pivot row: s*p + t*r (leading value g at column j)
      // replacement for r: (p[j]/g)*r - (r[j]/g)*p (zero at column j)
      Vec np(ambient), nr(ambient);
      long long fp = p[j] / g, fr = r[j] / g;
      for (int c = 0; c < ambient; ++c) {
        np[c] = R.reduce(s * p[c] + t * r[c]);
        nr[c] = R.reduce(fp * r[c] - fr * p[c]);
      }
      if (!(np == p)) {
        piv[j] = np;
        Vec c = closure(np, j);
        if (!c.empty()) queue.push_back(std::move(c));
      }
      r = std::move(nr);
      j = leading(r);
    }
  }
  // Normalize: scale each pivot to the canonical divisor gcd(val, m), then
  // reduce the entries above each pivot modulo that divisor.
  std::vector<int> cols;
  for (int j = 0; j < ambient; ++j)
    if (!piv[j].empty()) cols.push_back(j);
  for (int j : cols) {
    int d = std::gcd(piv[j][j], R.m);
    if (piv[j][j] != d) {
      int u = 0;
      for (int cand : R.units())
        if (R.reduce((long long)cand * piv[j][j]) == d) { u = cand; break; }
      assert(u != 0);
      for (int c = 0; c < ambient; ++c)
        piv[j][c] = R.reduce((long long)u * piv[j][c]);
    }
  }
  for (size_t a = 0; a < cols.size(); ++a) {
    for (size_t b = a + 1; b < cols.size(); ++b) {
      int j = cols[b], d = piv[j][j];
      int e = piv[cols[a]][j];
      int f = e / d;
      if (f)
        for (int c = j; c < ambient; ++c)
          piv[cols[a]][c] = R.reduce(piv[cols[a]][c] - (long long)f * piv[j][c]);
    }
  }
  Submodule S;
  S.ring = R;
  S.ambient = ambient;
  std::vector<Vec> out;
  for (int j : cols) {
    out.push_back(piv[j]);
    S.piv_col.push_back(j);
    S.piv_val.push_back(piv[j][j]);
  }
  S.howell = mat_from_rows(out);
  if (S.howell.rows == 0) S.howell = Mat(0, ambient);
  return S;
}

Submodule zero_submodule(const Ring& R, int ambient) {
  return howell_form(R, ambient, {});
}

Submodule full_submodule(const Ring& R, int ambient) {
  std::vector<Vec> rows;
  for (int i = 0; i < ambient; ++i) {
    Vec e(ambient, 0);
    e[i] = 1;
    rows.push_back(e);
  }
  return howell_form(R, ambient, rows);
}

bool is_unimodular(const Ring& R, const Vec& v) {
  long long g = R.m;
  for (int x : v) g = std::gcd(g, (long long)x);
  return g == 1;
}

Submodule sum(const Submodule& A, const Submodule& B) {
  if (A.ambient != B.ambient) throw std::invalid_argument("ambient mismatch");
  std::vector<Vec> rows;
  for (int i = 0; i < A.howell.rows; ++i) rows.push_back(A.howell.row(i));
  for (int i = 0; i < B.howell.rows; ++i) rows.push_back(B.howell.row(i));
  return howell_form(A.ring, A.ambient, rows);
}

std::vector<Vec> enumerate_elements(const Submodule& S) {
  const Ring& R = S.ring;
  std::vector<Vec> out;
  int k = S.howell.rows;
  std::vector<int> top(k);
  for (int i = 0; i < k; ++i) top[i] = R.m / S.piv_val[i];
  std::vector<int> c(k, 0);
  while (true) {
    Vec v(S.ambient, 0);
    for (int i = 0; i < k; ++i)
      if (c[i])
        for (int j = 0; j < S.ambient; ++j)
          v[j] = R.reduce(v[j] + (long long)c[i] * S.howell.at(i, j));
    out.push_back(v);
    int i = k - 1;
    while (i >= 0 && ++c[i] == top[i]) c[i--] = 0;
    if (i < 0) break;
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

Submodule intersect(const Submodule& A, const Submodule& B) {
  if (A.ambient != B.ambient) throw std::invalid_argument("ambient mismatch");
  // Desk-scale: walk the smaller span and keep the members of the other.
  const Submodule& small = A.size() <= B.size() ? A : B;
  const Submodule& big = A.size() <= B.size() ? B : A;
  std::vector<Vec> rows;
  for (const Vec& v : enumerate_elements(small))
    if (big.contains(v)) rows.push_back(v);
  return howell_form(A.ring, A.ambient, rows);
}

namespace {

// DFS in lexicographic order for `need` vectors from `pool` that form a
// partial basis of the ambient module and span exactly S.
bool basis_dfs(const Submodule& S, const std::vector<Vec>& pool, size_t from,
               std::vector<Vec>& chosen, int need) {
  if ((int)chosen.size() == need) {
    Submodule span = howell_form(S.ring, S.ambient, chosen);
    return span == S;
  }
  for (size_t i = from; i < pool.size(); ++i) {
    chosen.push_back(pool[i]);
    Submodule span = howell_form(S.ring, S.ambient, chosen);
    long long want = 1;
    for (size_t t = 0; t < chosen.size(); ++t) want *= S.ring.m;
    if (span.size() == want && is_partial_basis(S.ring, S.ambient, chosen)) {
      if (basis_dfs(S, pool, i + 1, chosen, need)) return true;
    }
    chosen.pop_back();
  }
  return false;
}

}  // namespace

bool is_partial_basis(const Ring& R, int ambient, const std::vector<Vec>& vs) {
  int k = (int)vs.size();
  if (k == 0) return true;
  if (k > ambient) return false;
  if (R.is_field) {
    // Independence suffices over a field.
    Submodule span = howell_form(R, ambient, vs);
    long long want = 1;
    for (int t = 0; t < k; ++t) want *= R.m;
    return span.size() == want;
  }
  // Search for a completion to an invertible matrix (columns).
  std::vector<Vec> cols = vs;
  std::vector<Vec> pool;
  Vec v(ambient, 0);
  do pool.push_back(v);
  while (next_vec(R, v));
  // Quick necessary check first: the span must have full cardinality m^k.
  {
    Submodule span = howell_form(R, ambient, vs);
    long long want = 1;
    for (int t = 0; t < k; ++t) want *= R.m;
    if (span.size() != want) return false;
  }
  // Backtracking completion by columns.
  struct Comp {
    const Ring& R;
    int ambient;
    std::vector<Vec>& cols;
    std::vector<Vec>& pool;
    bool run() {
      if ((int)cols.size() == ambient) return is_invertible(R, mat_from_cols(cols));
      for (const Vec& cand : pool) {
        cols.push_back(cand);
        Submodule span = howell_form(R, ambient, cols);
        long long want = 1;
        for (size_t t = 0; t < cols.size(); ++t) want *= R.m;
        if (span.size() == want && run()) return true;
        cols.pop_back();
      }
      return false;
    }
  } comp{R, ambient, cols, pool};
  return comp.run();
}

std::optional<std::vector<Vec>> free_basis(const Submodule& S) {
  const Ring& R = S.ring;
  if (S.is_zero()) return std::vector<Vec>{};
  long long sz = S.size();
  int k = 0;
  long long acc = 1;
  while (acc < sz) {
    acc *= R.m;
    ++k;
  }
  if (acc != sz) return std::nullopt;
  if (R.is_field || (int)S.piv_val.size() == k) {
    bool all_units = true;
    for (int d : S.piv_val)
      if (d != 1) all_units = false;
    if (all_units && S.howell.rows == k) {
      std::vector<Vec> rows;
      for (int i = 0; i < k; ++i) rows.push_back(S.howell.row(i));
      if (is_partial_basis(R, S.ambient, rows)) return rows;
    }
  }
  std::vector<Vec> pool = enumerate_elements(S);
  std::vector<Vec> chosen;
  if (basis_dfs(S, pool, 1 /* skip the zero vector */, chosen, k)) return chosen;
  return std::nullopt;
}

bool is_splittable(const Submodule& S) { return free_basis(S).has_value(); }

int rank_free(const Submodule& S) {
  auto b = free_basis(S);
  return b ? (int)b->size() : -1;
}

Submodule saturation(const Submodule& W) {
  const Ring& R = W.ring;
  if (is_splittable(W)) return W;
  // Minimal number of generators bounds the rank of any free overmodule from
  // below; search free overmodules of increasing rank, lexicographically.
  int lo = 0;
  long long acc = 1;
  while (acc < W.size()) {
    acc *= R.m;
    ++lo;
  }
  std::vector<Vec> pool;
  Vec v(W.ambient, 0);
  do pool.push_back(v);
  while (next_vec(R, v));
  for (int k = lo; k <= W.ambient; ++k) {
    std::vector<Vec> chosen;
    struct Search {
      const Submodule& W;
      const std::vector<Vec>& pool;
      std::vector<Vec>& chosen;
      int k;
      std::optional<Submodule> found;
      void run(size_t from) {
        if (found) return;
        if ((int)chosen.size() == k) {
          Submodule span = howell_form(W.ring, W.ambient, chosen);
          if (span.size() == [&] {
                long long s = 1;
                for (int t = 0; t < k; ++t) s *= W.ring.m;
                return s;
              }() &&
              is_partial_basis(W.ring, W.ambient, chosen)) {
            bool ok = true;
            for (int i = 0; i < W.howell.rows && ok; ++i)
              ok = span.contains(W.howell.row(i));
            if (ok) found = span;
          }
          return;
        }
        for (size_t i = from; i < pool.size() && !found; ++i) {
          chosen.push_back(pool[i]);
          run(i + 1);
          chosen.pop_back();
        }
      }
    } search{W, pool, chosen, k, std::nullopt};
    search.run(1);
    if (search.found) return *search.found;
  }
  return full_submodule(R, W.ambient);
}

std::vector<Submodule> enumerate_complements(const Submodule& W) {
  const Ring& R = W.ring;
  auto basis = free_basis(W);
  if (!basis) return {};
  int n = W.ambient, k = (int)basis->size();
  if (k == n) return {zero_submodule(R, n)};
  // One complement from completing the basis; all others are graphs of
  // homomorphisms from that complement into W.
  auto full = complete_basis(R, n, *basis);
  assert(full.has_value());
  std::vector<Vec> c0;
  for (int j = k; j < n; ++j) c0.push_back(full->col(j));
  std::vector<Vec> welts = enumerate_elements(W);
  int t = n - k;
  std::vector<size_t> idx(t, 0);
  std::vector<Submodule> out;
  std::vector<std::string> seen;
  while (true) {
    std::vector<Vec> rows;
    for (int i = 0; i < t; ++i) {
      Vec r(n);
      for (int c = 0; c < n; ++c) r[c] = R.reduce(c0[i][c] + welts[idx[i]][c]);
      rows.push_back(r);
    }
    out.push_back(howell_form(R, n, rows));
    int i = t - 1;
    while (i >= 0 && ++idx[i] == welts.size()) idx[i--] = 0;
    if (i < 0) break;
  }
  std::sort(out.begin(), out.end(), [](const Submodule& a, const Submodule& b) {
    return a.bytes() < b.bytes();
  });
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::optional<Mat> complete_basis(const Ring& R, int ambient,
                                  const std::vector<Vec>& partial,
                                  const std::vector<int>* H) {
  std::vector<Vec> cols = partial;
  if (!is_partial_basis(R, ambient, cols))
    throw std::invalid_argument("input is not a partial basis");
  bool appended = false;
  while ((int)cols.size() < ambient) {
    Vec v(ambient, 0);
    bool placed = false;
    do {
      cols.push_back(v);
      if (is_partial_basis(R, ambient, cols)) {
        placed = true;
        appended = true;
        break;
      }
      cols.pop_back();
    } while (next_vec(R, v));
    if (!placed) throw std::runtime_error("completion failed");
  }
  Mat M = mat_from_cols(cols);
  if (M.rows == 0) M = Mat(0, 0);
  if (H) {
    int d = ambient == 0 ? 1 : det_mod(R, M);
    auto in_H = [&](int x) {
      return std::find(H->begin(), H->end(), x) != H->end();
    };
    if (!in_H(d)) {
      if (!appended) return std::nullopt;
      for (int u : R.units()) {
        if (in_H(R.reduce((long long)u * d))) {
          for (int i = 0; i < ambient; ++i)
            M.at(i, ambient - 1) = R.reduce((long long)u * M.at(i, ambient - 1));
          break;
        }
      }
      if (!in_H(det_mod(R, M))) return std::nullopt;
    }
  }
  assert(ambient == 0 || is_invertible(R, M));
  return M;
}

int SymplecticSpace::pair(const Vec& u, const Vec& v) const {
  long long acc = 0;
  for (int i = 0; i < genus; ++i)
    acc += (long long)u[2 * i] * v[2 * i + 1] - (long long)u[2 * i + 1] * v[2 * i];
  return ring.reduce(acc);
}

Mat SymplecticSpace::gram() const {
  Mat J(dim(), dim());
  for (int i = 0; i < genus; ++i) {
    J.at(2 * i, 2 * i + 1) = 1;
    J.at(2 * i + 1, 2 * i) = ring.reduce(-1);
  }
  return J;
}

bool preserves_gram(const SymplecticSpace& sp, const Mat& M) {
  const Ring& R = sp.ring;
  Mat J = sp.gram();
  Mat Mt(M.cols, M.rows);
  for (int i = 0; i < M.rows; ++i)
    for (int j = 0; j < M.cols; ++j) Mt.at(j, i) = M.at(i, j);
  return mat_mul(R, mat_mul(R, Mt, J), M) == J;
}

Mat symplectic_complete(const SymplecticSpace& sp,
                        const std::vector<std::pair<Vec, Vec>>& pairs) {
  const Ring& R = sp.ring;
  int n = sp.dim();
  std::vector<std::pair<Vec, Vec>> cur = pairs;
  auto check = [&](const std::vector<std::pair<Vec, Vec>>& ps) {
    for (size_t i = 0; i < ps.size(); ++i)
      for (size_t j = 0; j < ps.size(); ++j) {
        if (sp.pair(ps[i].first, ps[j].first) != 0 ||
            sp.pair(ps[i].second, ps[j].second) != 0)
          throw std::invalid_argument("pairs not isotropic");
        int want = (i == j) ? 1 : 0;
        if (sp.pair(ps[i].first, ps[j].second) != want)
          throw std::invalid_argument("pairs fail <v_i, w_j> = delta_ij");
      }
  };
  check(cur);
  auto perp_ok = [&](const Vec& x) {
    for (auto& p : cur)
      if (sp.pair(x, p.first) != 0 || sp.pair(x, p.second) != 0) return false;
    return true;
  };
  while ((int)cur.size() < sp.genus) {
    // Lexicographically first hyperbolic pair in the perpendicular space.
    bool done = false;
    Vec v(n, 0);
    do {
      if (!perp_ok(v)) continue;
      bool any = false;
      Vec w(n, 0);
      while (next_vec_rev(R, w)) {
        if (!perp_ok(w)) continue;
        int p = sp.pair(v, w);
        if (R.is_unit(p)) {
          int u = R.inv(p);
          Vec w2(n);
          for (int c = 0; c < n; ++c) w2[c] = R.reduce((long long)u * w[c]);
          cur.push_back({v, w2});
          any = true;
          break;
        }
      }
      if (any) {
        done = true;
        break;
      }
    } while (next_vec_rev(R, v));
    if (!done) throw std::runtime_error("symplectic completion failed");
  }
  check(cur);
  std::vector<Vec> cols;
  for (auto& p : cur) {
    cols.push_back(p.first);
    cols.push_back(p.second);
  }
  Mat M = mat_from_cols(cols);
  if (n == 0) M = Mat(0, 0);
  if (n > 0 && !preserves_gram(sp, M))
    throw std::runtime_error("completion does not preserve the form");
  return M;
}

std::string vec_bytes(const Vec& v) {
  std::string s;
  s.reserve(v.size());
  for (int x : v) s.push_back((char)x);
  return s;
}

std::string ring_spec(const Ring& R) { return "zmod:" + std::to_string(R.m); }

}  // namespace stabhom
