#include "stabhom/complexes.hpp"

#include <algorithm>
#include <cassert>
#include <stdexcept>

namespace stabhom {

namespace {

std::string int_bytes(int x) {
  std::string s(4, '\0');
  for (int k = 0; k < 4; ++k) s[k] = (char)((x >> (8 * k)) & 0xff);
  return s;
}

}  // namespace

int SemisimplicialSet::add(int p, const std::string& payload) {
  if ((int)levels.size() <= p) {
    levels.resize(p + 1);
    index.resize(p + 1);
    faces.resize(p + 1);
  }
  auto it = index[p].find(payload);
  if (it != index[p].end()) return it->second;
  int id = (int)levels[p].size();
  levels[p].push_back(payload);
  index[p][payload] = id;
  return id;
}

bool SemisimplicialSet::empty() const {
  for (auto& l : levels)
    if (!l.empty()) return false;
  return true;
}

void SemisimplicialSet::check_identities() const {
  for (int p = 2; p <= dim(); ++p) {
    for (int s = 0; s < (int)levels[p].size(); ++s) {
      for (int j = 1; j <= p; ++j)
        for (int i = 0; i < j; ++i)
          if (face(p - 1, face(p, s, j), i) != face(p - 1, face(p, s, i), j - 1))
            throw std::logic_error("simplicial identity violated");
    }
  }
  for (int p = 1; p <= dim(); ++p)
    if (faces[p].size() != levels[p].size() * (size_t)(p + 1))
      throw std::logic_error("face table has wrong shape");
}

void SimplicialComplex::insert_closed(std::vector<int> simplex) {
  std::sort(simplex.begin(), simplex.end());
  simplex.erase(std::unique(simplex.begin(), simplex.end()), simplex.end());
  if (simplex.empty()) return;
  if (simplices.count(simplex)) return;
  simplices.insert(simplex);
  if (simplex.size() > 1)
    for (size_t i = 0; i < simplex.size(); ++i) {
      std::vector<int> f = simplex;
      f.erase(f.begin() + i);
      insert_closed(std::move(f));
    }
}

int SimplicialComplex::dim() const {
  int d = -1;
  for (auto& s : simplices) d = std::max(d, (int)s.size() - 1);
  return d;
}

std::vector<std::vector<int>> SimplicialComplex::simplices_of_dim(int p) const {
  std::vector<std::vector<int>> out;
  for (auto& s : simplices)
    if ((int)s.size() == p + 1) out.push_back(s);
  return out;
}

SemisimplicialSet build_K(const CategoryId& cat, int n, int max_dim) {
  SemisimplicialSet X;
  int pmax = n - 1;
  if (max_dim >= 0) pmax = std::min(pmax, max_dim);
  for (int p = 0; p <= pmax; ++p) {
    for_each_hom(cat, p + 1, n, [&](const Morphism& f) {
      X.add(p, f.bytes());
      return true;
    });
    if (p >= (int)X.levels.size()) break;  // empty level: stop
  }
  // face tables by precomposition with the coordinate-skipping morphisms
  for (int p = 1; p <= X.dim(); ++p) {
    std::vector<Morphism> hs = hom_set(cat, p + 1, n);
    X.faces[p].resize(hs.size() * (p + 1));
    for (int s = 0; s < (int)hs.size(); ++s)
      for (int i = 0; i <= p; ++i) {
        Morphism d = compose(cat, hs[s], face_morphism(cat, p, i));
        X.faces[p][(size_t)s * (p + 1) + i] = X.index[p - 1].at(d.bytes());
      }
  }
  X.check_identities();
  return X;
}

namespace {

std::string tuple_payload(const std::vector<Vec>& vs) {
  std::string s;
  for (const Vec& v : vs) s += vec_bytes(v);
  return s;
}

void pb_dfs(const Ring& R, int ambient, const std::vector<Vec>& pool,
            const std::vector<Vec>& wbasis, std::vector<Vec>& tuple, int pmax,
            SemisimplicialSet& X) {
  if (!tuple.empty()) {
    std::vector<Vec> all = wbasis;
    for (const Vec& v : tuple) all.push_back(v);
    if (!is_partial_basis(R, ambient, all)) return;
    X.add((int)tuple.size() - 1, tuple_payload(tuple));
  }
  if ((int)tuple.size() == pmax + 1) return;
  for (const Vec& u : pool) {
    tuple.push_back(u);
    pb_dfs(R, ambient, pool, wbasis, tuple, pmax, X);
    tuple.pop_back();
  }
}

void fill_tuple_faces(SemisimplicialSet& X, int arity_bytes) {
  // payloads are concatenated vectors of fixed width; face i drops slot i
  for (int p = 1; p <= X.dim(); ++p) {
    X.faces[p].resize(X.levels[p].size() * (size_t)(p + 1));
    for (int s = 0; s < (int)X.levels[p].size(); ++s) {
      const std::string& pay = X.levels[p][s];
      for (int i = 0; i <= p; ++i) {
        std::string f = pay.substr(0, (size_t)i * arity_bytes) +
                        pay.substr((size_t)(i + 1) * arity_bytes);
        X.faces[p][(size_t)s * (p + 1) + i] = X.index[p - 1].at(f);
      }
    }
  }
}

}  // namespace

SemisimplicialSet build_pb(const Ring& R, int ambient, const Submodule& U,
                           const Submodule& W, int max_dim) {
  auto wb = free_basis(W);
  if (!wb || !is_splittable(U))
    throw std::invalid_argument("partial basis complex needs splittable inputs");
  SemisimplicialSet X;
  int pmax = ambient - 1;
  if (max_dim >= 0) pmax = std::min(pmax, max_dim);
  std::vector<Vec> pool;
  for (const Vec& u : enumerate_elements(U)) pool.push_back(u);
  std::vector<Vec> tuple;
  pb_dfs(R, ambient, pool, *wb, tuple, pmax, X);
  fill_tuple_faces(X, ambient);
  X.check_identities();
  return X;
}

namespace {

void pbc_dfs(const Ring& R, int ambient, const Submodule& U, const Submodule& W,
             const std::vector<Vec>& pool, std::vector<Vec>& tuple, int pmax,
             SemisimplicialSet& X) {
  if (!tuple.empty()) {
    if (!is_partial_basis(R, ambient, tuple)) return;
    Submodule span = howell_form(R, ambient, tuple);
    if (!intersect(span, W).is_zero()) return;
    int p = (int)tuple.size() - 1;
    bool any = false;
    for (const Submodule& C : enumerate_complements(span)) {
      bool hasW = true;
      for (int i = 0; i < W.howell.rows && hasW; ++i)
        hasW = C.contains(W.howell.row(i));
      if (!hasW) continue;
      X.add(p, tuple_payload(tuple) + C.bytes());
      any = true;
    }
    if (!any) return;  // no frame extends this tuple, nor any supertuple
  }
  if ((int)tuple.size() == pmax + 1) return;
  for (const Vec& u : pool) {
    tuple.push_back(u);
    pbc_dfs(R, ambient, U, W, pool, tuple, pmax, X);
    tuple.pop_back();
  }
}

}  // namespace

SemisimplicialSet build_pbc(const Ring& R, int ambient, const Submodule& U,
                            const Submodule& W, int max_dim) {
  if (!is_splittable(U) || !is_splittable(W))
    throw std::invalid_argument("framed complex needs splittable inputs");
  SemisimplicialSet X;
  int pmax = ambient - 1;
  if (max_dim >= 0) pmax = std::min(pmax, max_dim);
  std::vector<Vec> pool;
  for (const Vec& u : enumerate_elements(U)) {
    bool zero = true;
    for (int x : u) zero = zero && x == 0;
    if (!zero) pool.push_back(u);
  }
  std::vector<Vec> tuple;
  pbc_dfs(R, ambient, U, W, pool, tuple, pmax, X);
  // face i drops vector v_i and absorbs it into the complement
  for (int p = 1; p <= X.dim(); ++p) {
    X.faces[p].resize(X.levels[p].size() * (size_t)(p + 1));
    for (int s = 0; s < (int)X.levels[p].size(); ++s) {
      const std::string& pay = X.levels[p][s];
      std::vector<Vec> vs;
      for (int k = 0; k <= p; ++k) {
        Vec v(ambient);
        for (int c = 0; c < ambient; ++c) v[c] = (int)(unsigned char)pay[(size_t)k * ambient + c];
        vs.push_back(v);
      }
      std::string cbytes = pay.substr((size_t)(p + 1) * ambient);
      for (int i = 0; i <= p; ++i) {
        // rebuild C from its stored Howell rows
        int crows = (int)(unsigned char)cbytes[1];
        std::vector<Vec> rows;
        for (int r = 0; r < crows; ++r) {
          Vec v(ambient);
          for (int c = 0; c < ambient; ++c)
            v[c] = (int)(unsigned char)cbytes[2 + (size_t)r * ambient + c];
          rows.push_back(v);
        }
        rows.push_back(vs[i]);
        Submodule C2 = howell_form(R, ambient, rows);
        std::vector<Vec> rest;
        for (int k = 0; k <= p; ++k)
          if (k != i) rest.push_back(vs[k]);
        X.faces[p][(size_t)s * (p + 1) + i] =
            X.index[p - 1].at(tuple_payload(rest) + C2.bytes());
      }
    }
  }
  X.check_identities();
  return X;
}

namespace {

void spb_dfs(const SymplecticSpace& sp, const std::optional<Submodule>& W,
             std::vector<std::pair<Vec, Vec>>& ps, int pmax, SemisimplicialSet& X) {
  const Ring& R = sp.ring;
  int d = sp.dim();
  if (!ps.empty()) {
    std::string pay;
    for (auto& pr : ps) pay += vec_bytes(pr.first) + vec_bytes(pr.second);
    X.add((int)ps.size() - 1, pay);
  }
  if ((int)ps.size() == pmax + 1) return;
  auto ok_with_chosen = [&](const Vec& x) {
    for (auto& pr : ps)
      if (sp.pair(x, pr.first) != 0 || sp.pair(x, pr.second) != 0) return false;
    if (W)
      for (int r = 0; r < W->howell.rows; ++r)
        if (sp.pair(x, W->howell.row(r)) != 0) return false;
    return true;
  };
  Vec v(d, 0);
  auto next = [&](Vec& x) {
    for (int i = d - 1; i >= 0; --i) {
      if (++x[i] < R.m) return true;
      x[i] = 0;
    }
    return false;
  };
  while (next(v)) {
    if (!ok_with_chosen(v)) continue;
    Vec w(d, 0);
    while (next(w)) {
      if (!ok_with_chosen(w)) continue;
      if (sp.pair(v, w) != 1) continue;
      ps.push_back({v, w});
      spb_dfs(sp, W, ps, pmax, X);
      ps.pop_back();
    }
  }
}

}  // namespace

SemisimplicialSet build_spb(const SymplecticSpace& sp,
                            const std::optional<Submodule>& W, int max_dim) {
  if (W && !is_splittable(*W))
    throw std::invalid_argument("link constraint must be splittable");
  SemisimplicialSet X;
  int pmax = sp.genus - 1;
  if (max_dim >= 0) pmax = std::min(pmax, max_dim);
  std::vector<std::pair<Vec, Vec>> ps;
  spb_dfs(sp, W, ps, pmax, X);
  fill_tuple_faces(X, 2 * sp.dim());
  X.check_identities();
  return X;
}

std::vector<std::vector<std::vector<int>>> vertex_sets(const SemisimplicialSet& X) {
  std::vector<std::vector<std::vector<int>>> vs(X.dim() + 1);
  if (X.dim() < 0) return vs;
  vs[0].resize(X.levels[0].size());
  for (int s = 0; s < (int)X.levels[0].size(); ++s) vs[0][s] = {s};
  for (int p = 1; p <= X.dim(); ++p) {
    vs[p].resize(X.levels[p].size());
    for (int s = 0; s < (int)X.levels[p].size(); ++s) {
      std::vector<int> acc;
      for (int i = 0; i <= p; ++i) {
        const auto& sub = vs[p - 1][X.face(p, s, i)];
        acc.insert(acc.end(), sub.begin(), sub.end());
      }
      std::sort(acc.begin(), acc.end());
      acc.erase(std::unique(acc.begin(), acc.end()), acc.end());
      vs[p][s] = std::move(acc);
    }
  }
  return vs;
}

SimplicialComplex underlying_complex(const SemisimplicialSet& X) {
  SimplicialComplex C;
  if (X.dim() < 0) return C;
  C.num_vertices = (int)X.levels[0].size();
  auto vs = vertex_sets(X);
  for (int p = 0; p <= X.dim(); ++p)
    for (auto& s : vs[p]) {
      if ((int)s.size() != p + 1)
        throw std::logic_error("simplex with repeated vertices cannot be unordered");
      C.insert_closed(s);
    }
  return C;
}

SemisimplicialSet ordered_complex(const SimplicialComplex& X) {
  SemisimplicialSet out;
  for (int p = 0; p <= X.dim(); ++p) {
    for (auto& s : X.simplices_of_dim(p)) {
      std::vector<int> perm = s;
      std::sort(perm.begin(), perm.end());
      do {
        std::string pay;
        for (int v : perm) pay += int_bytes(v);
        out.add(p, pay);
      } while (std::next_permutation(perm.begin(), perm.end()));
    }
  }
  for (int p = 1; p <= out.dim(); ++p) {
    out.faces[p].resize(out.levels[p].size() * (size_t)(p + 1));
    for (int s = 0; s < (int)out.levels[p].size(); ++s) {
      const std::string& pay = out.levels[p][s];
      for (int i = 0; i <= p; ++i) {
        std::string f = pay.substr(0, (size_t)i * 4) + pay.substr((size_t)(i + 1) * 4);
        out.faces[p][(size_t)s * (p + 1) + i] = out.index[p - 1].at(f);
      }
    }
  }
  out.check_identities();
  return out;
}

SimplicialComplex link(const SimplicialComplex& X, const std::vector<int>& sigma) {
  std::vector<int> s = sigma;
  std::sort(s.begin(), s.end());
  if (!X.has(s)) throw std::invalid_argument("simplex not in complex");
  SimplicialComplex L;
  L.num_vertices = X.num_vertices;
  for (auto& tau : X.simplices) {
    std::vector<int> inter;
    std::set_intersection(tau.begin(), tau.end(), s.begin(), s.end(),
                          std::back_inserter(inter));
    if (!inter.empty()) continue;
    std::vector<int> uni;
    std::set_union(tau.begin(), tau.end(), s.begin(), s.end(), std::back_inserter(uni));
    if (X.has(uni)) L.insert_closed(tau);
  }
  return L;
}

SemisimplicialSet link(const SemisimplicialSet& X, int p, int s) {
  if (p < 0 || p > X.dim() || s < 0 || s >= (int)X.levels[p].size())
    throw std::invalid_argument("simplex not in complex");
  auto vs = vertex_sets(X);
  SimplicialComplex C = underlying_complex(X);
  return ordered_complex(link(C, vs[p][s]));
}

JoinWitness is_join_complex(const SimplicialComplex& Y, const SimplicialComplex& X,
                            const std::vector<int>& pi) {
  JoinWitness w;
  // pi must be simplicial and simplexwise injective
  std::set<std::vector<int>> images;
  for (auto& s : Y.simplices) {
    std::vector<int> im;
    for (int v : s) im.push_back(pi[v]);
    std::sort(im.begin(), im.end());
    if (std::unique(im.begin(), im.end()) != im.end()) {
      w.reason = "not simplexwise injective";
      w.witness = s;
      return w;
    }
    if (!X.has(im)) {
      w.reason = "image is not a simplex";
      w.witness = s;
      return w;
    }
    images.insert(im);
  }
  for (auto& s : X.simplices)
    if (!images.count(s)) {
      w.reason = "not surjective";
      w.witness = s;
      return w;
    }
  // filling condition: enumerate candidate vertex tuples whose common image
  // vertex set is a simplex of X covered by witnesses theta_i
  std::vector<int> yverts;
  for (auto& s : Y.simplices)
    if (s.size() == 1) yverts.push_back(s[0]);
  int dX = X.dim();
  std::vector<int> tuple;
  std::function<bool(size_t)> rec = [&](size_t from) -> bool {
    if (!tuple.empty()) {
      std::vector<int> im;
      for (int v : tuple) im.push_back(pi[v]);
      std::sort(im.begin(), im.end());
      if (std::unique(im.begin(), im.end()) != im.end()) return true;  // skip branch leaf
      if ((int)im.size() == (int)tuple.size() && X.has(im)) {
        // does every y_i sit inside a theta_i with pi(theta_i) == im?
        bool all_witnessed = true;
        for (int v : tuple) {
          bool found = false;
          for (auto& th : Y.simplices) {
            if (std::find(th.begin(), th.end(), v) == th.end()) continue;
            std::vector<int> thim;
            for (int u : th) thim.push_back(pi[u]);
            std::sort(thim.begin(), thim.end());
            thim.erase(std::unique(thim.begin(), thim.end()), thim.end());
            if (thim == im) {
              found = true;
              break;
            }
          }
          if (!found) {
            all_witnessed = false;
            break;
          }
        }
        if (all_witnessed) {
          std::vector<int> st = tuple;
          std::sort(st.begin(), st.end());
          if (!Y.has(st)) {
            w.reason = "filling condition violated";
            w.witness = st;
            return false;
          }
        }
      }
    }
    if ((int)tuple.size() == dX + 1) return true;
    for (size_t i = from; i < yverts.size(); ++i) {
      tuple.push_back(yverts[i]);
      if (!rec(i + 1)) return false;
      tuple.pop_back();
    }
    return true;
  };
  if (!rec(0)) return w;
  w.ok = true;
  return w;
}

}  // namespace stabhom
