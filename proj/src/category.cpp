#include "stabhom/category.hpp"

#include <algorithm>
#include <cassert>
#include <deque>
#include <sstream>

namespace stabhom {

CategoryId fi_cat() {
  CategoryId c;
  c.kind = CatKind::FI;
  return c;
}

CategoryId vic_cat(const Ring& R) {
  CategoryId c;
  c.kind = CatKind::VIC;
  c.ring = R;
  return c;
}

CategoryId vic_h_cat(const Ring& R, std::vector<int> H) {
  CategoryId c;
  c.kind = CatKind::VIC_H;
  c.ring = R;
  std::sort(H.begin(), H.end());
  c.H = std::move(H);
  if (std::find(c.H.begin(), c.H.end(), 1) == c.H.end())
    throw std::invalid_argument("H must contain 1");
  for (int a : c.H) {
    if (!R.is_unit(a)) throw std::invalid_argument("H must consist of units");
    for (int b : c.H)
      if (std::find(c.H.begin(), c.H.end(), R.reduce((long long)a * b)) == c.H.end())
        throw std::invalid_argument("H must be closed under multiplication");
  }
  return c;
}

CategoryId si_cat(const Ring& R) {
  CategoryId c;
  c.kind = CatKind::SI;
  c.ring = R;
  return c;
}

CategoryId parse_category(const std::string& spec) {
  std::vector<std::string> parts;
  std::stringstream ss(spec);
  std::string tok;
  while (std::getline(ss, tok, ':')) parts.push_back(tok);
  if (parts.empty()) throw std::invalid_argument("empty category spec");
  auto ring_of = [&](size_t i) {
    if (i + 1 >= parts.size() || parts[i] != "zmod")
      throw std::invalid_argument("bad ring spec in " + spec);
    return Ring(std::stoi(parts[i + 1]));
  };
  if (parts[0] == "fi") return fi_cat();
  if (parts[0] == "vic") return vic_cat(ring_of(1));
  if (parts[0] == "si") return si_cat(ring_of(1));
  if (parts[0] == "vic-h") {
    Ring R = ring_of(1);
    if (parts.size() < 4) throw std::invalid_argument("vic-h needs an H list");
    std::string h = parts[3];
    if (h.size() < 2 || h.front() != '{' || h.back() != '}')
      throw std::invalid_argument("H list must look like {1,2}");
    std::vector<int> H;
    std::stringstream hs(h.substr(1, h.size() - 2));
    while (std::getline(hs, tok, ',')) H.push_back(std::stoi(tok));
    return vic_h_cat(R, H);
  }
  throw std::invalid_argument("unknown category: " + spec);
}

std::string category_spec(const CategoryId& cat) {
  switch (cat.kind) {
    case CatKind::FI: return "fi";
    case CatKind::VIC: return "vic:" + ring_spec(cat.ring);
    case CatKind::SI: return "si:" + ring_spec(cat.ring);
    case CatKind::VIC_H: {
      std::string h = "{";
      for (size_t i = 0; i < cat.H.size(); ++i)
        h += (i ? "," : "") + std::to_string(cat.H[i]);
      return "vic-h:" + ring_spec(cat.ring) + ":" + h + "}";
    }
  }
  return "";
}

std::string mat_bytes(const Mat& M) {
  std::string s;
  s.push_back((char)M.rows);
  s.push_back((char)M.cols);
  for (int x : M.a) s.push_back((char)x);
  return s;
}

std::string Morphism::bytes() const {
  std::string s;
  s.push_back((char)m);
  s.push_back((char)n);
  for (int x : img) s.push_back((char)x);
  for (const Vec& v : vectors) s += vec_bytes(v);
  s += comp.bytes();
  for (auto& p : pairs) {
    s += vec_bytes(p.first);
    s += vec_bytes(p.second);
  }
  return s;
}

namespace {

Vec unit_vec(int n, int i) {
  Vec e(n, 0);
  e[i] = 1;
  return e;
}

// The linear map underlying a VIC morphism applied to x in R^m.
Vec vic_apply(const Ring& R, const Morphism& f, const Vec& x) {
  Vec out(f.n, 0);
  for (int j = 0; j < f.m; ++j)
    if (x[j])
      for (int c = 0; c < f.n; ++c)
        out[c] = R.reduce(out[c] + (long long)x[j] * f.vectors[j][c]);
  return out;
}

// The linear map underlying an SI morphism applied to x in R^{2m}
// (interleaved coordinates a_1, b_1, ..., a_m, b_m).
Vec si_apply(const Ring& R, const Morphism& f, const Vec& x) {
  Vec out(2 * f.n, 0);
  for (int j = 0; j < f.m; ++j) {
    for (int c = 0; c < 2 * f.n; ++c) {
      long long acc = out[c];
      acc += (long long)x[2 * j] * f.pairs[j].first[c];
      acc += (long long)x[2 * j + 1] * f.pairs[j].second[c];
      out[c] = R.reduce(acc);
    }
  }
  return out;
}

Submodule map_submodule(const Ring& R, const Morphism& f, const Submodule& D,
                        bool si) {
  std::vector<Vec> rows;
  for (int i = 0; i < D.howell.rows; ++i)
    rows.push_back(si ? si_apply(R, f, D.howell.row(i))
                      : vic_apply(R, f, D.howell.row(i)));
  return howell_form(R, si ? 2 * f.n : f.n, rows);
}

}  // namespace

Morphism identity_morphism(const CategoryId& cat, int n) {
  Morphism f;
  f.m = f.n = n;
  switch (cat.kind) {
    case CatKind::FI:
      for (int i = 0; i < n; ++i) f.img.push_back(i);
      break;
    case CatKind::VIC:
    case CatKind::VIC_H:
      for (int i = 0; i < n; ++i) f.vectors.push_back(unit_vec(n, i));
      f.comp = zero_submodule(cat.ring, n);
      break;
    case CatKind::SI:
      for (int i = 0; i < n; ++i)
        f.pairs.push_back({unit_vec(2 * n, 2 * i), unit_vec(2 * n, 2 * i + 1)});
      break;
  }
  return f;
}

Morphism compose(const CategoryId& cat, const Morphism& f, const Morphism& g) {
  if (g.n != f.m) throw std::invalid_argument("rank mismatch in composition");
  Morphism h;
  h.m = g.m;
  h.n = f.n;
  switch (cat.kind) {
    case CatKind::FI:
      for (int i = 0; i < g.m; ++i) h.img.push_back(f.img[g.img[i]]);
      break;
    case CatKind::VIC:
    case CatKind::VIC_H: {
      const Ring& R = cat.ring;
      for (int i = 0; i < g.m; ++i) h.vectors.push_back(vic_apply(R, f, g.vectors[i]));
      h.comp = sum(f.comp, map_submodule(R, f, g.comp, false));
      break;
    }
    case CatKind::SI: {
      const Ring& R = cat.ring;
      for (int i = 0; i < g.m; ++i)
        h.pairs.push_back({si_apply(R, f, g.pairs[i].first),
                           si_apply(R, f, g.pairs[i].second)});
      break;
    }
  }
  return h;
}

Morphism monoidal_sum(const CategoryId& cat, const Morphism& f, const Morphism& g) {
  Morphism h;
  h.m = f.m + g.m;
  h.n = f.n + g.n;
  switch (cat.kind) {
    case CatKind::FI:
      for (int x : f.img) h.img.push_back(x);
      for (int x : g.img) h.img.push_back(x + f.n);
      break;
    case CatKind::VIC:
    case CatKind::VIC_H: {
      const Ring& R = cat.ring;
      auto pad_lo = [&](const Vec& v) {
        Vec w(h.n, 0);
        std::copy(v.begin(), v.end(), w.begin());
        return w;
      };
      auto pad_hi = [&](const Vec& v) {
        Vec w(h.n, 0);
        std::copy(v.begin(), v.end(), w.begin() + f.n);
        return w;
      };
      for (const Vec& v : f.vectors) h.vectors.push_back(pad_lo(v));
      for (const Vec& v : g.vectors) h.vectors.push_back(pad_hi(v));
      std::vector<Vec> rows;
      for (int i = 0; i < f.comp.howell.rows; ++i) rows.push_back(pad_lo(f.comp.howell.row(i)));
      for (int i = 0; i < g.comp.howell.rows; ++i) rows.push_back(pad_hi(g.comp.howell.row(i)));
      h.comp = howell_form(R, h.n, rows);
      break;
    }
    case CatKind::SI: {
      auto pad = [&](const Vec& v, int off) {
        Vec w(2 * h.n, 0);
        std::copy(v.begin(), v.end(), w.begin() + off);
        return w;
      };
      for (auto& p : f.pairs) h.pairs.push_back({pad(p.first, 0), pad(p.second, 0)});
      for (auto& p : g.pairs)
        h.pairs.push_back({pad(p.first, 2 * f.n), pad(p.second, 2 * f.n)});
      break;
    }
  }
  return h;
}

Morphism canonical_inclusion(const CategoryId& cat, int n) {
  return face_morphism(cat, n, n);
}

Morphism face_morphism(const CategoryId& cat, int p, int i) {
  if (i < 0 || i > p) throw std::invalid_argument("face index out of range");
  Morphism f;
  f.m = p;
  f.n = p + 1;
  // slot i+1 of the target is skipped: source slot j lands at j for j < i and
  // at j+1 for j >= i
  auto tgt = [&](int j) { return j < i ? j : j + 1; };
  switch (cat.kind) {
    case CatKind::FI:
      for (int j = 0; j < p; ++j) f.img.push_back(tgt(j));
      break;
    case CatKind::VIC:
    case CatKind::VIC_H:
      for (int j = 0; j < p; ++j) f.vectors.push_back(unit_vec(p + 1, tgt(j)));
      f.comp = howell_form(cat.ring, p + 1, {unit_vec(p + 1, i)});
      break;
    case CatKind::SI:
      for (int j = 0; j < p; ++j)
        f.pairs.push_back({unit_vec(2 * p + 2, 2 * tgt(j)),
                           unit_vec(2 * p + 2, 2 * tgt(j) + 1)});
      break;
  }
  return f;
}

Mat perm_to_mat(const std::vector<int>& perm) {
  int n = (int)perm.size();
  Mat M(n, n);
  for (int j = 0; j < n; ++j) M.at(perm[j], j) = 1;
  return M;
}

std::vector<int> mat_to_perm(const Mat& M) {
  std::vector<int> p(M.cols, -1);
  for (int j = 0; j < M.cols; ++j)
    for (int i = 0; i < M.rows; ++i)
      if (M.at(i, j)) {
        p[j] = i;
        break;
      }
  return p;
}

Morphism act(const CategoryId& cat, const Mat& g, const Morphism& phi) {
  Morphism out;
  out.m = phi.m;
  out.n = phi.n;
  switch (cat.kind) {
    case CatKind::FI: {
      auto perm = mat_to_perm(g);
      for (int x : phi.img) out.img.push_back(perm[x]);
      break;
    }
    case CatKind::VIC:
    case CatKind::VIC_H: {
      const Ring& R = cat.ring;
      for (const Vec& v : phi.vectors) out.vectors.push_back(mat_apply(R, g, v));
      std::vector<Vec> rows;
      for (int i = 0; i < phi.comp.howell.rows; ++i)
        rows.push_back(mat_apply(R, g, phi.comp.howell.row(i)));
      out.comp = howell_form(R, phi.n, rows);
      break;
    }
    case CatKind::SI: {
      const Ring& R = cat.ring;
      for (auto& p : phi.pairs)
        out.pairs.push_back({mat_apply(R, g, p.first), mat_apply(R, g, p.second)});
      break;
    }
  }
  return out;
}

Mat section(const CategoryId& cat, const Morphism& phi) {
  switch (cat.kind) {
    case CatKind::FI: {
      std::vector<int> perm(phi.n, -1);
      std::vector<bool> used(phi.n, false);
      for (int j = 0; j < phi.m; ++j) {
        perm[j] = phi.img[j];
        used[phi.img[j]] = true;
      }
      int next = 0;
      for (int j = phi.m; j < phi.n; ++j) {
        while (used[next]) ++next;
        perm[j] = next;
        used[next] = true;
      }
      return perm_to_mat(perm);
    }
    case CatKind::VIC:
    case CatKind::VIC_H: {
      const Ring& R = cat.ring;
      std::vector<Vec> cols = phi.vectors;
      auto cbasis = free_basis(phi.comp);
      if (!cbasis) throw std::runtime_error("complement is not free");
      for (const Vec& v : *cbasis) cols.push_back(v);
      Mat M = mat_from_cols(cols);
      if (phi.n == 0) M = Mat(0, 0);
      if ((int)cols.size() != phi.n || (phi.n > 0 && !is_invertible(R, M)))
        throw std::runtime_error("payload does not frame the ambient module");
      if (cat.kind == CatKind::VIC_H && phi.n > 0) {
        auto in_H = [&](int x) {
          return std::find(cat.H.begin(), cat.H.end(), x) != cat.H.end();
        };
        int d = det_mod(R, M);
        if (!in_H(d)) {
          if (phi.m == phi.n)
            throw std::runtime_error("endomorphism determinant outside H");
          int need = -1;
          for (int u : R.units())
            if (in_H(R.reduce((long long)u * d))) {
              need = u;
              break;
            }
          if (need < 0) throw std::runtime_error("determinant cannot reach H");
          for (int i = 0; i < phi.n; ++i)
            M.at(i, phi.n - 1) = R.reduce((long long)need * M.at(i, phi.n - 1));
        }
      }
      return M;
    }
    case CatKind::SI: {
      SymplecticSpace sp(cat.ring, phi.n);
      return symplectic_complete(sp, phi.pairs);
    }
  }
  throw std::logic_error("unreachable");
}

std::pair<Morphism, Mat> section_and_twist(const CategoryId& cat, const Mat& g,
                                           const Morphism& phi) {
  Morphism psi = act(cat, g, phi);
  Mat sphi = section(cat, phi);
  Mat spsi = section(cat, psi);
  const Ring R = cat.has_ring() ? cat.ring : Ring(2);
  Mat X = mat_mul(R, mat_mul(R, mat_inverse(R, spsi), g), sphi);
  int dm = cat.dim(phi.m), dn = cat.dim(phi.n);
  // X must be the block sum of the identity on the first dm coordinates and a
  // twist h on the rest
  for (int i = 0; i < dn; ++i)
    for (int j = 0; j < dm; ++j)
      if (X.at(i, j) != (i == j ? 1 : 0))
        throw std::runtime_error("section/twist block shape violated");
  for (int i = 0; i < dm; ++i)
    for (int j = dm; j < dn; ++j)
      if (X.at(i, j) != 0)
        throw std::runtime_error("section/twist block shape violated");
  Mat h(dn - dm, dn - dm);
  for (int i = dm; i < dn; ++i)
    for (int j = dm; j < dn; ++j) h.at(i - dm, j - dm) = X.at(i, j);
  return {psi, h};
}

std::vector<Mat> group_generators(const CategoryId& cat, int n) {
  std::vector<Mat> gens;
  std::vector<std::string> seen;
  auto push = [&](const Mat& M) {
    std::string b = mat_bytes(M);
    if (M == identity_mat(M.rows)) return;
    if (std::find(seen.begin(), seen.end(), b) != seen.end()) return;
    seen.push_back(b);
    gens.push_back(M);
  };
  switch (cat.kind) {
    case CatKind::FI:
      for (int i = 0; i + 1 < n; ++i) {
        std::vector<int> p(n);
        for (int j = 0; j < n; ++j) p[j] = j;
        std::swap(p[i], p[i + 1]);
        push(perm_to_mat(p));
      }
      break;
    case CatKind::VIC:
    case CatKind::VIC_H: {
      const Ring& R = cat.ring;
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
          if (i == j) continue;
          for (int c = 1; c < R.m; ++c) {
            Mat E = identity_mat(n);
            E.at(i, j) = c;
            push(E);
          }
        }
      std::vector<int> us = cat.kind == CatKind::VIC ? R.units() : cat.H;
      for (int u : us) {
        if (u == 1 || n == 0) continue;
        Mat D = identity_mat(n);
        D.at(0, 0) = u;
        push(D);
      }
      break;
    }
    case CatKind::SI: {
      const Ring& R = cat.ring;
      SymplecticSpace sp(R, n);
      int d = 2 * n;
      Vec v(d, 0);
      // all symplectic transvections x -> x + c<x,v>v
      while (true) {
        int i = d - 1;
        while (i >= 0 && ++v[i] == R.m) v[i--] = 0;
        if (i < 0) break;
        for (int c = 1; c < R.m; ++c) {
          Mat T = identity_mat(d);
          for (int j = 0; j < d; ++j) {
            int pv = sp.pair(unit_vec(d, j), v);
            if (!pv) continue;
            for (int r = 0; r < d; ++r)
              T.at(r, j) = R.reduce(T.at(r, j) + (long long)c * pv * v[r]);
          }
          push(T);
        }
      }
      break;
    }
  }
  return gens;
}

Mat group_inverse(const CategoryId& cat, const Mat& g) {
  if (cat.kind == CatKind::FI) {
    // permutation matrices invert by transposition
    Mat t(g.cols, g.rows);
    for (int i = 0; i < g.rows; ++i)
      for (int j = 0; j < g.cols; ++j) t.at(j, i) = g.at(i, j);
    return t;
  }
  return mat_inverse(cat.ring, g);
}

Mat block_sum_elements(const CategoryId& cat, const Mat& g, const Mat& h) {
  (void)cat;  // interleaved symplectic coordinates block-sum the same way
  Mat out(g.rows + h.rows, g.cols + h.cols);
  for (int i = 0; i < g.rows; ++i)
    for (int j = 0; j < g.cols; ++j) out.at(i, j) = g.at(i, j);
  for (int i = 0; i < h.rows; ++i)
    for (int j = 0; j < h.cols; ++j) out.at(g.rows + i, g.cols + j) = h.at(i, j);
  return out;
}

namespace {

// permutation of slots lifted to a matrix on cat.dim(n) coordinates (pairs
// move together in the symplectic case)
Mat slot_perm_mat(const CategoryId& cat, int n, const std::vector<int>& perm) {
  int w = cat.kind == CatKind::SI ? 2 : 1;
  Mat M(w * n, w * n);
  for (int j = 0; j < n; ++j)
    for (int k = 0; k < w; ++k) M.at(w * perm[j] + k, w * j + k) = 1;
  return M;
}

}  // namespace

Mat sigma_swap(const CategoryId& cat, int n) {
  if (n < 2) throw std::invalid_argument("sigma_swap needs n >= 2");
  std::vector<int> p(n);
  for (int j = 0; j < n; ++j) p[j] = j;
  std::swap(p[n - 2], p[n - 1]);
  return slot_perm_mat(cat, n, p);
}

Mat rotation_forward(const CategoryId& cat, int n) {
  std::vector<int> p(n);
  for (int j = 0; j < n; ++j) p[j] = (j + 1) % n;
  return slot_perm_mat(cat, n, p);
}

Mat rotate_tail(const CategoryId& cat, int n, int lo) {
  std::vector<int> p(n);
  for (int j = 0; j < lo; ++j) p[j] = j;
  for (int j = lo; j < n; ++j) p[j] = j == n - 1 ? lo : j + 1;
  return slot_perm_mat(cat, n, p);
}

Morphism truncate_element(const CategoryId& cat, const Mat& g, int m, int n) {
  Morphism f;
  f.m = m;
  f.n = n;
  switch (cat.kind) {
    case CatKind::FI: {
      auto perm = mat_to_perm(g);
      for (int j = 0; j < m; ++j) f.img.push_back(perm[j]);
      break;
    }
    case CatKind::VIC:
    case CatKind::VIC_H: {
      std::vector<Vec> rest;
      for (int j = 0; j < n; ++j)
        (j < m ? f.vectors : rest).push_back(g.col(j));
      f.comp = howell_form(cat.ring, n, rest);
      break;
    }
    case CatKind::SI:
      for (int j = 0; j < m; ++j)
        f.pairs.push_back({g.col(2 * j), g.col(2 * j + 1)});
      break;
  }
  return f;
}

int GroupTable::id_of(const Mat& g) const {
  auto it = index.find(mat_bytes(g));
  if (it == index.end()) throw std::invalid_argument("element not in group table");
  return it->second;
}

std::vector<int> GroupTable::word(const Mat& g) const {
  std::vector<int> w;
  int id = id_of(g);
  while (id != 0) {
    w.push_back(via[id]);
    id = parent[id];
  }
  std::reverse(w.begin(), w.end());
  return w;
}

GroupTable enumerate_group(const CategoryId& cat, int n, long long cap) {
  GroupTable T;
  T.cat = cat;
  T.n = n;
  int d = cat.dim(n);
  const Ring R = cat.has_ring() ? cat.ring : Ring(2);
  T.generators = group_generators(cat, n);
  Mat I = identity_mat(d);
  T.elements.push_back(I);
  T.parent.push_back(0);
  T.via.push_back(-1);
  T.index[mat_bytes(I)] = 0;
  std::deque<int> q{0};
  while (!q.empty()) {
    int id = q.front();
    q.pop_front();
    for (int k = 0; k < (int)T.generators.size(); ++k) {
      Mat g = mat_mul(R, T.elements[id], T.generators[k]);
      std::string b = mat_bytes(g);
      if (T.index.count(b)) continue;
      if ((long long)T.elements.size() >= cap)
        throw CapExceeded("too large; use morphism enumeration instead");
      int nid = (int)T.elements.size();
      T.index[b] = nid;
      T.elements.push_back(std::move(g));
      T.parent.push_back(id);
      T.via.push_back(k);
      q.push_back(nid);
    }
  }
  return T;
}

long long group_order(const CategoryId& cat, int n) {
  auto factor = [&](int m) {
    std::vector<std::pair<int, int>> pe;
    for (int p = 2; p <= m; ++p)
      if (m % p == 0) {
        int e = 0;
        while (m % p == 0) {
          m /= p;
          ++e;
        }
        pe.push_back({p, e});
      }
    return pe;
  };
  auto ipow = [](long long b, long long e) {
    long long r = 1;
    while (e--) r *= b;
    return r;
  };
  switch (cat.kind) {
    case CatKind::FI: {
      long long f = 1;
      for (int i = 2; i <= n; ++i) f *= i;
      return f;
    }
    case CatKind::VIC:
    case CatKind::VIC_H: {
      long long total = 1;
      for (auto [p, e] : factor(cat.ring.m)) {
        long long glp = 1;
        for (int i = 0; i < n; ++i) glp *= ipow(p, n) - ipow(p, i);
        total *= glp * ipow(p, (long long)(e - 1) * n * n);
      }
      if (cat.kind == CatKind::VIC_H && n > 0)
        total = total / (long long)cat.ring.units().size() * (long long)cat.H.size();
      return total;
    }
    case CatKind::SI: {
      long long total = 1;
      for (auto [p, e] : factor(cat.ring.m)) {
        long long sp = ipow(p, (long long)n * n);
        for (int i = 1; i <= n; ++i) sp *= ipow(p, 2 * i) - 1;
        total *= sp * ipow(p, (long long)(e - 1) * (2LL * n * n + n));
      }
      return total;
    }
  }
  return 0;
}

long long hom_count(const CategoryId& cat, int m, int n) {
  return group_order(cat, n) / group_order(cat, n - m);
}

namespace {

bool next_vec_std(const Ring& R, Vec& v) {
  for (int i = (int)v.size() - 1; i >= 0; --i) {
    if (++v[i] < R.m) return true;
    v[i] = 0;
  }
  return false;
}

bool fi_hom_dfs(int m, int n, std::vector<int>& img, std::vector<bool>& used,
                const std::function<bool(const Morphism&)>& fn) {
  if ((int)img.size() == m) {
    Morphism f;
    f.m = m;
    f.n = n;
    f.img = img;
    return fn(f);
  }
  for (int t = 0; t < n; ++t) {
    if (used[t]) continue;
    used[t] = true;
    img.push_back(t);
    bool keep = fi_hom_dfs(m, n, img, used, fn);
    img.pop_back();
    used[t] = false;
    if (!keep) return false;
  }
  return true;
}

bool vic_hom_dfs(const CategoryId& cat, int m, int n, std::vector<Vec>& vs,
                 const std::function<bool(const Morphism&)>& fn) {
  const Ring& R = cat.ring;
  if ((int)vs.size() == m) {
    Submodule W = howell_form(R, n, vs);
    for (const Submodule& C : enumerate_complements(W)) {
      Morphism f;
      f.m = m;
      f.n = n;
      f.vectors = vs;
      f.comp = C;
      if (cat.kind == CatKind::VIC_H && m == n) {
        int d = n == 0 ? 1 : det_mod(R, mat_from_cols(vs));
        if (std::find(cat.H.begin(), cat.H.end(), d) == cat.H.end()) continue;
      }
      if (!fn(f)) return false;
    }
    return true;
  }
  Vec v(n, 0);
  while (next_vec_std(R, v)) {
    vs.push_back(v);
    bool go = is_partial_basis(R, n, vs);
    bool keep = true;
    if (go) keep = vic_hom_dfs(cat, m, n, vs, fn);
    vs.pop_back();
    if (!keep) return false;
  }
  return true;
}

bool si_hom_dfs(const CategoryId& cat, int m, int n,
                std::vector<std::pair<Vec, Vec>>& ps,
                const std::function<bool(const Morphism&)>& fn) {
  const Ring& R = cat.ring;
  SymplecticSpace sp(R, n);
  if ((int)ps.size() == m) {
    Morphism f;
    f.m = m;
    f.n = n;
    f.pairs = ps;
    return fn(f);
  }
  auto perp_ok = [&](const Vec& x) {
    for (auto& p : ps)
      if (sp.pair(x, p.first) != 0 || sp.pair(x, p.second) != 0) return false;
    return true;
  };
  int d = 2 * n;
  Vec v(d, 0);
  while (next_vec_std(R, v)) {
    if (!perp_ok(v)) continue;
    Vec w(d, 0);
    while (next_vec_std(R, w)) {
      if (!perp_ok(w)) continue;
      if (sp.pair(v, w) != 1) continue;
      ps.push_back({v, w});
      bool keep = si_hom_dfs(cat, m, n, ps, fn);
      ps.pop_back();
      if (!keep) return false;
    }
  }
  return true;
}

}  // namespace

void for_each_hom(const CategoryId& cat, int m, int n,
                  const std::function<bool(const Morphism&)>& fn) {
  if (m > n) return;
  if (m == 0) {
    Morphism f;
    f.m = 0;
    f.n = n;
    if (cat.kind == CatKind::VIC || cat.kind == CatKind::VIC_H)
      f.comp = full_submodule(cat.ring, n);
    fn(f);
    return;
  }
  switch (cat.kind) {
    case CatKind::FI: {
      std::vector<int> img;
      std::vector<bool> used(n, false);
      fi_hom_dfs(m, n, img, used, fn);
      break;
    }
    case CatKind::VIC:
    case CatKind::VIC_H: {
      std::vector<Vec> vs;
      vic_hom_dfs(cat, m, n, vs, fn);
      break;
    }
    case CatKind::SI: {
      std::vector<std::pair<Vec, Vec>> ps;
      si_hom_dfs(cat, m, n, ps, fn);
      break;
    }
  }
}

std::vector<Morphism> hom_set(const CategoryId& cat, int m, int n) {
  std::vector<Morphism> out;
  for_each_hom(cat, m, n, [&](const Morphism& f) {
    out.push_back(f);
    return true;
  });
  return out;
}

}  // namespace stabhom
