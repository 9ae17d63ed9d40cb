#include "stresskit/cell_complex.hpp"

#include "stresskit/exact_linalg.hpp"

#include <algorithm>
#include <map>
#include <queue>
#include <set>

namespace stresskit {

namespace {

std::vector<uint64_t> make_bitrow(const std::vector<int>& ones, size_t ncols) {
  std::vector<uint64_t> row((ncols + 63) / 64, 0);
  for (int c : ones) row[size_t(c) / 64] ^= uint64_t(1) << (size_t(c) % 64);
  return row;
}

}  // namespace

bool CellComplex::has_face(int k, int i, int j, int fj) const {
  if (j > k) return false;
  const auto& fs = faces_[k][i][j];
  return std::binary_search(fs.begin(), fs.end(), fj);
}

int CellComplex::incidence(int k, int i, int f) const {
  const Cell& c = cells_[k][i];
  for (size_t t = 0; t < c.facets.size(); ++t)
    if (c.facets[t] == f) return c.signs[t];
  return 0;
}

bool CellComplex::closed() const {
  if (dim_ == 0) return true;
  for (size_t i = 0; i < cells_[dim_ - 1].size(); ++i)
    if (cofaces_[dim_ - 1][i].size() != 2) return false;
  return true;
}

std::vector<std::vector<int>> CellComplex::star(int k, int i) const {
  std::vector<std::vector<int>> st(dim_ + 1);
  for (int j = k; j <= dim_; ++j)
    for (size_t c = 0; c < cells_[j].size(); ++c)
      if (has_face(j, int(c), k, i)) st[j].push_back(int(c));
  return st;
}

CellComplex CellComplex::from_simplices(int d, std::vector<std::vector<int>> top_cells,
                                        int num_vertices) {
  CellComplex K;
  K.dim_ = d;
  K.simplicial_ = true;
  K.cells_.assign(d + 1, {});

  int maxv = num_vertices - 1;
  for (auto& t : top_cells) {
    if (int(t.size()) != d + 1)
      throw ComplexError("top simplex with wrong vertex count");
    std::sort(t.begin(), t.end());
    if (std::adjacent_find(t.begin(), t.end()) != t.end())
      throw ComplexError("repeated vertex in simplex");
    maxv = std::max(maxv, t.back());
  }

  // faces per dimension, keyed by sorted vertex tuple
  std::vector<std::map<std::vector<int>, int>> index(d + 1);
  for (int v = 0; v <= maxv; ++v) index[0][{v}] = v;
  K.cells_[0].resize(maxv + 1);
  for (int v = 0; v <= maxv; ++v) K.cells_[0][v].vertices = {v};

  for (int k = 1; k <= d; ++k) {
    std::set<std::vector<int>> seen;
    for (const auto& t : top_cells) {
      // all (k+1)-subsets of t
      std::vector<int> pick(k + 1);
      std::vector<int> idx(k + 1);
      for (int j = 0; j <= k; ++j) idx[j] = j;
      while (true) {
        for (int j = 0; j <= k; ++j) pick[j] = t[idx[j]];
        seen.insert(pick);
        int j = k;
        while (j >= 0 && idx[j] == int(t.size()) - (k + 1 - j)) --j;
        if (j < 0) break;
        ++idx[j];
        for (int l = j + 1; l <= k; ++l) idx[l] = idx[l - 1] + 1;
      }
    }
    for (const auto& tup : seen) {
      int id = int(K.cells_[k].size());
      index[k][tup] = id;
      Cell c;
      c.vertices = tup;
      for (int r = 0; r <= k; ++r) {
        std::vector<int> facet = tup;
        facet.erase(facet.begin() + r);
        c.facets.push_back(index[k - 1].at(facet));
        c.signs.push_back(r % 2 == 0 ? 1 : -1);
      }
      K.cells_[k].push_back(std::move(c));
    }
  }
  K.finalize();
  return K;
}

CellComplex CellComplex::build(const ComplexSpec& spec) {
  if (spec.dim < 1) throw ComplexError("complex dimension must be >= 1");
  if (int(spec.cells.size()) != spec.dim)
    throw ComplexError("cell lists must cover dimensions 1..dim");

  CellComplex K;
  K.dim_ = spec.dim;
  K.cells_.assign(spec.dim + 1, {});
  K.cells_[0].resize(spec.num_vertices);
  for (int v = 0; v < spec.num_vertices; ++v) K.cells_[0][v].vertices = {v};

  for (int k = 1; k <= spec.dim; ++k) {
    const auto& layer = spec.cells[k - 1];
    for (size_t i = 0; i < layer.size(); ++i) {
      Cell c;
      c.facets = layer[i];
      if (k == 1 && c.facets.size() != 2)
        throw ComplexError("1-cell must reference exactly two vertices");
      if (c.facets.size() < 2)
        throw ComplexError("cell with fewer than two facets");
      for (int f : c.facets)
        if (f < 0 || f >= int(K.cells_[k - 1].size()))
          throw ComplexError("dangling facet reference in dimension " +
                             std::to_string(k) + " cell " + std::to_string(i));
      if (k == 1 && c.facets[0] == c.facets[1])
        throw ComplexError("degenerate 1-cell (loop)");
      c.signs.assign(c.facets.size(), 0);
      K.cells_[k].push_back(std::move(c));
    }
  }

  // incidence signs: 1-cells get (-1, +1); higher cells are 2-colored so
  // that each (k-2)-face of the cell boundary cancels (delta o delta = 0)
  for (auto& e : K.cells_[1]) {
    e.signs = {-1, 1};
    if (e.facets[0] > e.facets[1]) {
      std::swap(e.facets[0], e.facets[1]);
    }
  }
  for (int k = 2; k <= K.dim_; ++k) {
    for (size_t ci = 0; ci < K.cells_[k].size(); ++ci) {
      Cell& c = K.cells_[k][ci];
      size_t nf = c.facets.size();
      // ridge -> facets of c containing it
      std::map<int, std::vector<size_t>> ridge_use;
      for (size_t t = 0; t < nf; ++t)
        for (int g : K.cells_[k - 1][c.facets[t]].facets) ridge_use[g].push_back(t);
      for (auto& [g, users] : ridge_use)
        if (users.size() != 2)
          throw ComplexError("cell boundary is not a closed pseudomanifold");
      // propagate signs; constraint across ridge g shared by facets F1, F2:
      //   s(F1) inc(F1,g) + s(F2) inc(F2,g) = 0
      std::vector<int> assigned(nf, 0);
      for (size_t seed = 0; seed < nf; ++seed) {
        if (assigned[seed]) continue;
        assigned[seed] = 1;
        std::queue<size_t> q;
        q.push(seed);
        while (!q.empty()) {
          size_t t = q.front();
          q.pop();
          for (int g : K.cells_[k - 1][c.facets[t]].facets) {
            const auto& users = ridge_use[g];
            size_t o = users[0] == t ? users[1] : users[0];
            int need = -assigned[t] * K.incidence(k - 1, c.facets[t], g) *
                       K.incidence(k - 1, c.facets[o], g);
            if (assigned[o] == 0) {
              assigned[o] = need;
              q.push(o);
            } else if (assigned[o] != need) {
              throw ComplexError(
                  "incidence signs with trivial composite boundary are "
                  "unobtainable (non-orientable cell boundary)");
            }
          }
        }
      }
      for (size_t t = 0; t < nf; ++t) c.signs[t] = assigned[t];
    }
  }

  K.finalize();

  if (!spec.pinned.empty()) {
    for (int k = 0; k <= K.dim_; ++k) {
      if (int(spec.pinned.size()) <= k || spec.pinned[k].empty()) continue;
      for (size_t i = 0; i < K.cells_[k].size() && i < spec.pinned[k].size(); ++i)
        K.cells_[k][i].pinned = spec.pinned[k][i] != 0;
    }
  }
  return K;
}

void CellComplex::finalize() {
  // face closure per cell
  faces_.assign(dim_ + 1, {});
  for (int k = 0; k <= dim_; ++k) {
    faces_[k].resize(cells_[k].size());
    for (size_t i = 0; i < cells_[k].size(); ++i) {
      auto& fl = faces_[k][i];
      fl.assign(k + 1, {});
      fl[k] = {int(i)};
      for (int j = k - 1; j >= 0; --j) {
        std::set<int> acc;
        if (j == k - 1) {
          acc.insert(cells_[k][i].facets.begin(), cells_[k][i].facets.end());
        } else {
          for (int f : fl[k - 1])
            acc.insert(faces_[k - 1][f][j].begin(), faces_[k - 1][f][j].end());
        }
        fl[j].assign(acc.begin(), acc.end());
      }
      cells_[k][i].vertices = fl[0];
    }
  }

  cofaces_.assign(dim_ + 1, {});
  for (int k = 0; k <= dim_; ++k) cofaces_[k].resize(cells_[k].size());
  for (int k = 1; k <= dim_; ++k)
    for (size_t i = 0; i < cells_[k].size(); ++i)
      for (int f : cells_[k][i].facets) cofaces_[k - 1][f].push_back(int(i));

  // delta o delta = 0 sanity check
  for (int k = 2; k <= dim_; ++k) {
    for (size_t i = 0; i < cells_[k].size(); ++i) {
      std::map<int, int> acc;
      const Cell& c = cells_[k][i];
      for (size_t t = 0; t < c.facets.size(); ++t) {
        const Cell& f = cells_[k - 1][c.facets[t]];
        for (size_t u = 0; u < f.facets.size(); ++u)
          acc[f.facets[u]] += c.signs[t] * f.signs[u];
      }
      for (auto& [g, v] : acc)
        if (v != 0) throw ComplexError("composite boundary map is nonzero");
    }
  }

  // internal flags: a (d-1)-cell is boundary iff it has one d-coface; the
  // boundary closure is then marked boundary, everything else internal
  for (int k = 0; k <= dim_; ++k)
    for (auto& c : cells_[k]) c.internal = true;
  if (dim_ >= 1) {
    for (size_t i = 0; i < cells_[dim_ - 1].size(); ++i) {
      if (cofaces_[dim_ - 1][i].size() == 1) {
        cells_[dim_ - 1][i].internal = false;
        for (int j = 0; j < dim_ - 1; ++j)
          for (int f : faces_[dim_ - 1][i][j]) cells_[j][f].internal = false;
      }
    }
  }
  for (int k = 0; k <= dim_; ++k)
    for (auto& c : cells_[k]) c.pinned = !c.internal;

  simplicial_ = true;
  for (int k = 0; k <= dim_; ++k)
    for (const auto& c : cells_[k])
      if (int(c.vertices.size()) != k + 1) simplicial_ = false;
}

int homology_rank_mod2(const CellComplex& K, int k) {
  if (k < 0 || k > K.dim()) throw ComplexError("homology index out of range");
  auto boundary_rank = [&](int j) -> size_t {
    if (j < 1 || j > K.dim() || K.count(j) == 0) return 0;
    std::vector<std::vector<uint64_t>> rows;
    rows.reserve(K.count(j));
    for (size_t i = 0; i < K.count(j); ++i)
      rows.push_back(make_bitrow(K.cell(j, int(i)).facets, K.count(j - 1)));
    return rank_mod2(std::move(rows), K.count(j - 1));
  };
  size_t rk = boundary_rank(k);
  size_t rk1 = boundary_rank(k + 1);
  return int(K.count(k) - rk - rk1);
}

std::optional<OrientationClass> orient(const CellComplex& K) {
  int d = K.dim();
  size_t n = K.count(d);
  OrientationClass oc;
  oc.sign.assign(n, 0);
  for (size_t root = 0; root < n; ++root) {
    if (oc.sign[root] != 0) continue;
    oc.sign[root] = 1;
    std::queue<size_t> q;
    q.push(root);
    while (!q.empty()) {
      size_t t = q.front();
      q.pop();
      for (int f : K.cell(d, int(t)).facets) {
        if (!K.cell(d - 1, f).internal) continue;
        const auto& cof = K.cofaces(d - 1, f);
        if (cof.size() != 2) return std::nullopt;
        size_t o = size_t(cof[0]) == t ? size_t(cof[1]) : size_t(cof[0]);
        int need = -oc.sign[t] * K.incidence(d, int(t), f) * K.incidence(d, int(o), f);
        if (oc.sign[o] == 0) {
          oc.sign[o] = need;
          q.push(o);
        } else if (oc.sign[o] != need) {
          return std::nullopt;
        }
      }
    }
  }
  // verify the signed top boundary vanishes on internal facets
  for (size_t f = 0; f < K.count(d - 1); ++f) {
    if (!K.cell(d - 1, int(f)).internal) continue;
    int acc = 0;
    for (int t : K.cofaces(d - 1, int(f)))
      acc += oc.sign[t] * K.incidence(d, t, int(f));
    if (acc != 0) return std::nullopt;
  }
  return oc;
}

FVector f_vector(const CellComplex& K) {
  FVector fv;
  fv.f.resize(K.dim() + 2);
  fv.f[0] = 1;
  for (int k = 0; k <= K.dim(); ++k) fv.f[k + 1] = (long long)K.count(k);
  return fv;
}

namespace {
long long binom(long long n, long long k) {
  if (k < 0 || n < 0 || k > n) return 0;
  k = std::min(k, n - k);
  long long r = 1;
  for (long long i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}
}  // namespace

long long g_number(const FVector& fv, int k, int ambient) {
  long long acc = 0;
  for (int j = -1; j <= k - 1; ++j) {
    long long term = binom(ambient - j, ambient - k + 1) * fv[j];
    int e = ((k + j - 1) % 2 + 2) % 2;
    acc += e == 0 ? term : -term;
  }
  return acc;
}

long long h_number(const FVector& fv, int k, int ambient) {
  long long acc = 0;
  for (int j = 0; j <= k; ++j) {
    long long term = binom(ambient - j, ambient - k) * fv[j - 1];
    acc += ((j + k) & 1) == 0 ? term : -term;
  }
  return acc;
}

long long euler_characteristic(const FVector& fv) {
  long long acc = 0;
  for (int k = 0; k <= fv.top_dim(); ++k) acc += (k & 1) == 0 ? fv[k] : -fv[k];
  return acc;
}

bool is_k_primitive(const CellComplex& K, int k) {
  int d = K.dim();
  for (size_t i = 0; i < K.count(k); ++i) {
    if (!K.cell(k, int(i)).internal) continue;
    auto st = K.star(k, int(i));
    if (int(st[d].size()) != d - k + 1) return false;
  }
  return true;
}

std::vector<size_t> SimplicialComplex::betti_mod2() const {
  int top = dim();
  std::vector<std::map<std::vector<int>, int>> index(top + 1);
  for (int k = 0; k <= top; ++k)
    for (size_t i = 0; i < simplices[k].size(); ++i)
      index[k][simplices[k][i]] = int(i);
  auto boundary_rank = [&](int j) -> size_t {
    if (j < 1 || j > top || simplices[j].empty()) return 0;
    size_t ncols = simplices[j - 1].size();
    std::vector<std::vector<uint64_t>> rows;
    for (const auto& s : simplices[j]) {
      std::vector<int> ones;
      for (size_t r = 0; r < s.size(); ++r) {
        std::vector<int> f = s;
        f.erase(f.begin() + r);
        ones.push_back(index[j - 1].at(f));
      }
      rows.push_back(make_bitrow(ones, ncols));
    }
    return rank_mod2(std::move(rows), ncols);
  };
  std::vector<size_t> betti(top + 1, 0);
  for (int k = 0; k <= top; ++k) {
    size_t rk = boundary_rank(k), rk1 = boundary_rank(k + 1);
    betti[k] = simplices[k].size() - rk - rk1;
  }
  return betti;
}

StarLinkDual stars_links_dual(const CellComplex& K, int k, int i) {
  StarLinkDual out;
  out.star = K.star(k, i);

  // poset vertices: cells >= C, in (dim, index) order; C itself is id 0
  std::vector<CellRef> verts;
  for (int j = k; j <= K.dim(); ++j)
    for (int c : out.star[j]) verts.push_back({j, c});
  out.poset_vertices = verts;

  size_t n = verts.size();
  std::vector<std::vector<int>> above(n);
  for (size_t a = 0; a < n; ++a)
    for (size_t b = a + 1; b < n; ++b)
      if (verts[b].dim > verts[a].dim &&
          K.has_face(verts[b].dim, verts[b].index, verts[a].dim, verts[a].index))
        above[a].push_back(int(b));

  auto order_complex = [&](bool include_root) {
    SimplicialComplex sc;
    std::vector<std::vector<int>> chains;
    std::vector<int> cur;
    auto dfs = [&](auto&& self, int v) -> void {
      cur.push_back(v);
      chains.push_back(cur);
      for (int w : above[v]) self(self, w);
      cur.pop_back();
    };
    for (size_t v = include_root ? 0 : 1; v < n; ++v) dfs(dfs, int(v));
    if (!include_root) {
      // drop chains through the root only; dfs above already starts past it
    }
    int maxlen = 0;
    for (auto& ch : chains) maxlen = std::max(maxlen, int(ch.size()));
    sc.simplices.assign(maxlen, {});
    std::set<std::vector<int>> seen;
    for (auto& ch : chains)
      if (seen.insert(ch).second) sc.simplices[ch.size() - 1].push_back(ch);
    for (auto& layer : sc.simplices) std::sort(layer.begin(), layer.end());
    return sc;
  };

  out.link = order_complex(false);
  out.dual_block = order_complex(true);
  return out;
}

std::optional<std::string> manifold_defect(const CellComplex& K) {
  int d = K.dim();
  for (int k = 0; k < d; ++k) {
    for (size_t i = 0; i < K.count(k); ++i) {
      auto sld = stars_links_dual(K, k, int(i));
      if (sld.link.simplices.empty())
        return "cell (" + std::to_string(k) + "," + std::to_string(i) +
               ") has empty link";
      auto betti = sld.link.betti_mod2();
      int ldim = d - k - 1;
      bool internal = K.cell(k, int(i)).internal;
      std::vector<size_t> expect(size_t(std::max(ldim, 0)) + 1, 0);
      expect[0] = 1;
      if (internal) {
        if (ldim == 0)
          expect[0] = 2;
        else
          expect[size_t(ldim)] += 1;
      }
      // pad computed betti to expected length
      std::vector<size_t> got = betti;
      got.resize(std::max(got.size(), expect.size()), 0);
      expect.resize(got.size(), 0);
      if (got != expect)
        return "link of cell (" + std::to_string(k) + "," + std::to_string(i) +
               ") is not a homology " + (internal ? "sphere" : "disk");
    }
  }
  return std::nullopt;
}

std::vector<std::vector<CellRef>> ascending_flags(const CellComplex& K, int k, int i) {
  std::vector<std::vector<CellRef>> flags;
  std::vector<CellRef> cur{{k, i}};
  auto dfs = [&](auto&& self, int cd, int ci) -> void {
    if (cd == K.dim()) {
      flags.push_back(cur);
      return;
    }
    for (int cf : K.cofaces(cd, ci)) {
      cur.push_back({cd + 1, cf});
      self(self, cd + 1, cf);
      cur.pop_back();
    }
  };
  dfs(dfs, k, i);
  return flags;
}

std::vector<CellRef> canonical_descending_flag(const CellComplex& K, int k, int i) {
  std::vector<CellRef> chain{{k, i}};
  int cd = k, ci = i;
  while (cd > 0) {
    int best = *std::min_element(K.cell(cd, ci).facets.begin(),
                                 K.cell(cd, ci).facets.end());
    chain.push_back({cd - 1, best});
    cd -= 1;
    ci = best;
  }
  std::reverse(chain.begin(), chain.end());
  return chain;
}

std::vector<std::vector<CellRef>> descending_flags(const CellComplex& K, int k, int i) {
  std::vector<std::vector<CellRef>> flags;
  std::vector<CellRef> cur{{k, i}};
  auto dfs = [&](auto&& self, int cd, int ci) -> void {
    if (cd == 0) {
      auto chain = cur;
      std::reverse(chain.begin(), chain.end());
      flags.push_back(chain);
      return;
    }
    for (int f : K.cell(cd, ci).facets) {
      cur.push_back({cd - 1, f});
      self(self, cd - 1, f);
      cur.pop_back();
    }
  };
  dfs(dfs, k, i);
  return flags;
}

int flag_incidence_product(const CellComplex& K, const std::vector<CellRef>& chain) {
  int p = 1;
  for (size_t t = 1; t < chain.size(); ++t)
    p *= K.incidence(chain[t].dim, chain[t].index, chain[t - 1].index);
  return p;
}

}  // namespace stresskit
