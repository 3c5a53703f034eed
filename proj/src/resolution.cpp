#include "towerkit/resolution.hpp"

#include <mutex>
#include <unordered_map>

#include "towerkit/error.hpp"

namespace towerkit {

namespace {

std::mutex cache_mutex;
std::unordered_map<std::string, ResolutionPtr>& cache() {
  static std::unordered_map<std::string, ResolutionPtr> table;
  return table;
}

std::size_t idx(int vertex) { return static_cast<std::size_t>(vertex - 1); }

// Start of the block of summand g inside the space at vertex j of projective_sum(gens).
std::size_t summand_offset(const QuiverAlgebra& alg, const std::vector<int>& gens, int j, std::size_t g) {
  std::size_t off = 0;
  for (std::size_t h = 0; h < g; ++h)
    if (j <= gens[h]) off += alg.hom_dim(j, gens[h]);
  return off;
}

ResolutionPtr compute_resolution(const Module& m) {
  auto res = std::make_shared<Resolution>();
  res->module = m;
  if (m.is_zero()) return res;
  const int n = m.algebra()->n();
  ProjectiveCover pc = projective_cover(m);
  res->generators.push_back(pc.generators);
  res->terms.push_back(pc.projective);
  res->augmentation = pc.epi;
  ModuleMap last = pc.epi;
  while (true) {
    Submodule k = kernel(last);
    if (k.module.is_zero()) break;
    if (static_cast<int>(res->terms.size()) >= n)
      throw Error(ErrorCode::Internal, "resolution of " + m.name() + " longer than n-1");
    ProjectiveCover next = projective_cover(k.module);
    ModuleMap d = compose(k.inclusion, next.epi);
    res->generators.push_back(next.generators);
    res->terms.push_back(next.projective);
    res->differentials.push_back(d);
    last = d;
  }
  return res;
}

}  // namespace

ResolutionPtr min_resolution(const Module& m) {
  std::string key = m.fingerprint();
  {
    std::lock_guard<std::mutex> lock(cache_mutex);
    auto it = cache().find(key);
    if (it != cache().end()) return it->second;
  }
  ResolutionPtr r = compute_resolution(m);
  std::lock_guard<std::mutex> lock(cache_mutex);
  return cache().emplace(key, r).first->second;
}

void clear_resolution_cache() {
  std::lock_guard<std::mutex> lock(cache_mutex);
  cache().clear();
}

std::size_t resolution_cache_size() {
  std::lock_guard<std::mutex> lock(cache_mutex);
  return cache().size();
}

bool resolution_is_exact(const Resolution& r) {
  if (r.terms.empty()) return r.module.is_zero();
  const int n = r.module.algebra()->n();
  for (int j = 1; j <= n; ++j) {
    if (rank(r.augmentation.comps[idx(j)]) != r.module.dim(j)) return false;
    for (std::size_t k = 0; k < r.terms.size(); ++k) {
      std::size_t in_rank = k == 0 ? rank(r.augmentation.comps[idx(j)]) : rank(r.differentials[k - 1].comps[idx(j)]);
      std::size_t out_rank = k < r.differentials.size() ? rank(r.differentials[k].comps[idx(j)]) : 0;
      if (in_rank + out_rank != r.terms[k].dim(j)) return false;
      if (!r.differentials.empty() && k < r.differentials.size()) {
        const ModuleMap& d = r.differentials[k];
        const Matrix& prev = k == 0 ? r.augmentation.comps[idx(j)] : r.differentials[k - 1].comps[idx(j)];
        if (!(prev * d.comps[idx(j)]).is_zero()) return false;
      }
    }
  }
  for (const auto& d : r.differentials)
    if (!d.is_homomorphism()) return false;
  return r.augmentation.is_homomorphism();
}

bool resolution_is_minimal(const Resolution& r) {
  const int n = r.module.algebra()->n();
  for (std::size_t k = 0; k < r.differentials.size(); ++k) {
    for (int j = 1; j <= n; ++j) {
      Matrix rad = radical_at(r.terms[k], j);
      if (!in_span(rad, r.differentials[k].comps[idx(j)])) return false;
    }
  }
  return true;
}

std::vector<std::size_t> ext(const Module& m, const Module& nmod) {
  if (m.algebra()->id() != nmod.algebra()->id())
    throw Error(ErrorCode::MixedAlgebras, "ext across different algebras");
  const QuiverAlgebra& alg = *m.algebra();
  const int n = alg.n();
  std::vector<std::size_t> out(static_cast<std::size_t>(n), 0);
  ResolutionPtr r = min_resolution(m);
  if (r->terms.empty()) return out;

  auto cochain_dim = [&](std::size_t k) {
    std::size_t d = 0;
    if (k >= r->generators.size()) return d;
    for (int v : r->generators[k]) d += nmod.dim(v);
    return d;
  };
  // delta_k : Hom(P_k, N) -> Hom(P_{k+1}, N)
  std::vector<std::size_t> delta_rank(r->terms.size(), 0);
  for (std::size_t k = 0; k + 1 < r->terms.size(); ++k) {
    const auto& gk = r->generators[k];
    const auto& gk1 = r->generators[k + 1];
    const ModuleMap& d = r->differentials[k];
    Matrix delta(cochain_dim(k + 1), cochain_dim(k), alg.field());
    std::size_t row = 0;
    for (std::size_t gp = 0; gp < gk1.size(); ++gp) {
      int vp = gk1[gp];
      std::size_t gen_col = summand_offset(alg, gk1, vp, gp);
      const Matrix& dc = d.comps[idx(vp)];
      std::size_t col = 0;
      for (std::size_t g = 0; g < gk.size(); ++g) {
        int v = gk[g];
        Matrix blk(nmod.dim(vp), nmod.dim(v), alg.field());
        if (vp <= v) {
          std::size_t off = summand_offset(alg, gk, vp, g);
          const auto& basis = alg.basis(vp, v);
          for (std::size_t b = 0; b < basis.size(); ++b) {
            const Rational& c = dc(off + b, gen_col);
            if (c != 0) blk += c * nmod.rho_path(basis[b]);
          }
        }
        delta.set_block(row, col, blk);
        col += nmod.dim(v);
      }
      row += nmod.dim(vp);
    }
    delta_rank[k] = rank(delta);
  }
  for (std::size_t l = 0; l < r->terms.size() && l < out.size(); ++l) {
    std::size_t dim_c = cochain_dim(l);
    std::size_t rank_out = l < delta_rank.size() ? delta_rank[l] : 0;
    std::size_t rank_in = l == 0 ? 0 : delta_rank[l - 1];
    out[l] = dim_c - rank_out - rank_in;
  }
  return out;
}

std::vector<Submodule> vertex_filtration(const Module& m) {
  const AlgebraPtr& alg = m.algebra();
  const int n = alg->n();
  std::vector<Submodule> chain;
  for (int p = 0; p <= n; ++p) {
    std::vector<Matrix> gens;
    for (int j = 1; j <= n; ++j) {
      if (j <= p)
        gens.push_back(Matrix::identity(m.dim(j), alg->field()));
      else
        gens.emplace_back(m.dim(j), 0, alg->field());
    }
    Submodule s = submodule(m, gens);
    s.module.set_name(m.name() + "_" + std::to_string(p));
    chain.push_back(std::move(s));
  }
  return chain;
}

}  // namespace towerkit
