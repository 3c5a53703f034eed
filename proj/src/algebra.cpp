#include "towerkit/algebra.hpp"

#include <atomic>

#include "towerkit/error.hpp"

namespace towerkit {

namespace {

std::uint64_t next_algebra_id() {
  static std::atomic<std::uint64_t> counter{1};
  return counter.fetch_add(1);
}

}  // namespace

const QuiverAlgebra::PairData& QuiverAlgebra::pair(int i, int j) const {
  int n = this->n();
  if (i < 1 || i > n || j < 1 || j > n)
    throw Error(ErrorCode::UnknownName, "vertex pair (" + std::to_string(i) + "," + std::to_string(j) + ")");
  return pairs_[static_cast<std::size_t>((i - 1) * n + (j - 1))];
}

AlgebraPtr QuiverAlgebra::build(QuiverPresentation pres, Field field) {
  std::shared_ptr<QuiverAlgebra> alg(new QuiverAlgebra());
  alg->pres_ = std::move(pres);
  alg->field_ = field;
  alg->id_ = next_algebra_id();
  const Quiver& q = alg->pres_.quiver;
  const int n = q.vertex_count();
  alg->pairs_.resize(static_cast<std::size_t>(n * n));

  for (int i = 1; i <= n; ++i) {
    for (int j = 1; j <= n; ++j) {
      auto& pd = alg->pairs_[static_cast<std::size_t>((i - 1) * n + (j - 1))];
      pd.paths = enumerate_paths(q, i, j);
      for (std::size_t k = 0; k < pd.paths.size(); ++k) pd.index.emplace(pd.paths[k], k);
    }
  }

  for (int i = 1; i <= n; ++i) {
    for (int j = 1; j <= n; ++j) {
      auto& pd = alg->pairs_[static_cast<std::size_t>((i - 1) * n + (j - 1))];
      const std::size_t np = pd.paths.size();
      // column c of the generator matrix holds the path paths[np - 1 - c]
      std::vector<Vec> rows;
      for (const auto& g : alg->pres_.relations) {
        if (g.source < i || g.target > j) continue;
        const auto& left = alg->pair(g.target, j).paths;
        const auto& right = alg->pair(i, g.source).paths;
        for (const auto& u : left) {
          for (const auto& v : right) {
            Vec row(np);
            bool nonzero = false;
            for (const auto& [p, c] : g.terms) {
              Path full = compose(u, compose(p, v));
              std::size_t k = pd.index.at(full);
              row[np - 1 - k] += c;
              nonzero = true;
            }
            if (nonzero) rows.push_back(std::move(row));
          }
        }
      }
      Matrix gen(rows.size(), np, field);
      for (std::size_t r = 0; r < rows.size(); ++r)
        for (std::size_t c = 0; c < np; ++c)
          if (rows[r][c] != 0) gen.set(r, c, rows[r][c]);
      Echelon e = rows.empty() ? Echelon{Matrix(0, np, field), {}} : rref(gen);

      std::vector<bool> leading(np, false);
      for (auto c : e.pivots) leading[np - 1 - c] = true;
      std::vector<std::size_t> basis_idx(np, SIZE_MAX);
      for (std::size_t k = 0; k < np; ++k) {
        if (!leading[k]) {
          basis_idx[k] = pd.basis.size();
          pd.basis.push_back(pd.paths[k]);
        }
      }
      pd.nf = Matrix(pd.basis.size(), np, field);
      for (std::size_t k = 0; k < np; ++k)
        if (!leading[k]) pd.nf.set(basis_idx[k], k, 1);
      for (std::size_t r = 0; r < e.pivots.size(); ++r) {
        std::size_t lead = np - 1 - e.pivots[r];
        for (std::size_t c = 0; c < np; ++c) {
          std::size_t k = np - 1 - c;
          if (leading[k]) continue;
          const Rational& v = e.reduced(r, c);
          if (v != 0) pd.nf.set(basis_idx[k], lead, -v);
        }
      }
      pd.ideal = Matrix(np, e.pivots.size(), field);
      for (std::size_t r = 0; r < e.pivots.size(); ++r)
        for (std::size_t c = 0; c < np; ++c)
          if (e.reduced(r, c) != 0) pd.ideal.set(np - 1 - c, r, e.reduced(r, c));
      alg->dim_ += pd.basis.size();
    }
  }
  return alg;
}

Vec QuiverAlgebra::normal_form(const Path& p) const {
  const auto& pd = pair(p.source, p.target);
  auto it = pd.index.find(p);
  if (it == pd.index.end()) throw Error(ErrorCode::NonComposable, "not a path of this quiver");
  return pd.nf.column_values(it->second);
}

Vec QuiverAlgebra::normal_form(const PathVector& v) const {
  const auto& pd = pair(v.source, v.target);
  Vec out(pd.basis.size());
  for (const auto& [p, c] : v.terms) {
    auto it = pd.index.find(p);
    if (it == pd.index.end()) throw Error(ErrorCode::NonComposable, "not a path of this quiver");
    for (std::size_t b = 0; b < pd.basis.size(); ++b) {
      const Rational& x = pd.nf(b, it->second);
      if (x != 0) out[b] = field_.normalize(out[b] + c * x);
    }
  }
  return out;
}

PathVector QuiverAlgebra::to_path_vector(const Element& x) const {
  PathVector v;
  v.source = x.source;
  v.target = x.target;
  const auto& b = basis(x.source, x.target);
  for (std::size_t k = 0; k < b.size(); ++k) v.add(b[k], x.coords[k]);
  return v;
}

Element QuiverAlgebra::basis_element(int i, int j, std::size_t k) const {
  Element e{i, j, Vec(hom_dim(i, j))};
  e.coords.at(k) = 1;
  return e;
}

Element QuiverAlgebra::multiply(const Element& x, const Element& y) const {
  Element out{y.source, x.target, Vec(y.source <= x.target ? hom_dim(y.source, x.target) : 0)};
  if (x.source != y.target) {
    // incompatible vertices: the product is zero in e_{t(x)} A e_{s(y)}
    return out;
  }
  const auto& bx = basis(x.source, x.target);
  const auto& by = basis(y.source, y.target);
  for (std::size_t a = 0; a < bx.size(); ++a) {
    if (x.coords[a] == 0) continue;
    for (std::size_t b = 0; b < by.size(); ++b) {
      if (y.coords[b] == 0) continue;
      Vec nf = normal_form(compose(bx[a], by[b]));
      Rational c = x.coords[a] * y.coords[b];
      for (std::size_t k = 0; k < nf.size(); ++k)
        if (nf[k] != 0) out.coords[k] = field_.normalize(out.coords[k] + c * nf[k]);
    }
  }
  return out;
}

AlgebraPtr QuiverAlgebra::restrict_to(int k) const {
  if (k < 1 || k > n()) throw Error(ErrorCode::UnknownName, "restriction to " + std::to_string(k) + " vertices");
  QuiverPresentation sub;
  sub.name = pres_.name + "_" + std::to_string(k);
  sub.quiver = Quiver(k);
  std::vector<std::size_t> remap(quiver().arrows().size(), SIZE_MAX);
  for (std::size_t a = 0; a < quiver().arrows().size(); ++a) {
    const Arrow& arr = quiver().arrow(a);
    if (arr.target <= k) remap[a] = sub.quiver.add_arrow(arr.name, arr.source, arr.target);
  }
  for (const auto& g : pres_.relations) {
    if (g.target > k) continue;
    PathVector r;
    r.source = g.source;
    r.target = g.target;
    for (const auto& [p, c] : g.terms) {
      Path np{p.source, p.target, {}};
      for (auto a : p.arrows) np.arrows.push_back(remap[a]);
      r.add(np, c);
    }
    sub.relations.push_back(std::move(r));
  }
  return build(std::move(sub), field_);
}

}  // namespace towerkit
