#include "towerkit/collections.hpp"

#include <sstream>

#include "towerkit/error.hpp"

namespace towerkit {

namespace {

std::size_t idx(int vertex) { return static_cast<std::size_t>(vertex - 1); }

Matrix flatten(const ModuleMap& f) {
  std::size_t total = 0;
  for (const auto& c : f.comps) total += c.rows() * c.cols();
  Matrix v(total, 1, f.source.algebra()->field());
  std::size_t r = 0;
  for (const auto& c : f.comps)
    for (std::size_t i = 0; i < c.rows(); ++i)
      for (std::size_t j = 0; j < c.cols(); ++j) v.set(r++, 0, c(i, j));
  return v;
}

std::string witnesses_text(const std::vector<Witness>& ws) {
  std::string out;
  for (const auto& w : ws) out += (out.empty() ? "" : "; ") + describe(w);
  return out;
}

}  // namespace

ExtTable ext_table(const std::vector<Module>& collection) {
  ExtTable t;
  for (const auto& m : collection) {
    if (m.algebra()->id() != collection.front().algebra()->id())
      throw Error(ErrorCode::MixedAlgebras, "collection mixes modules over different algebras");
    if (m.is_zero()) throw Error(ErrorCode::ZeroModule, "collection contains the zero module " + m.name());
    t.names.push_back(m.name());
  }
  t.entries.assign(collection.size(), std::vector<std::vector<std::size_t>>(collection.size()));
  for (std::size_t i = 0; i < collection.size(); ++i)
    for (std::size_t j = 0; j < collection.size(); ++j) t.entries[i][j] = ext(collection[i], collection[j]);
  return t;
}

std::string describe(const Witness& w) {
  std::ostringstream out;
  out << "Ext^" << w.degree << "(E" << w.i << ",E" << w.j << ")=" << w.dim << " (" << w.reason << ")";
  return out.str();
}

Verdict verdict(const ExtTable& t) {
  Verdict v;
  bool exceptional = true;
  bool strong = true;
  for (std::size_t i = 0; i < t.size(); ++i) {
    for (std::size_t j = 0; j < t.size(); ++j) {
      const auto& e = t.entries[i][j];
      for (std::size_t l = 0; l < e.size(); ++l) {
        if (e[l] == 0) continue;
        Witness w{i + 1, j + 1, l, e[l], ""};
        if (i == j) {
          if (l == 0 && e[l] == 1) continue;
          w.reason = l == 0 ? "endomorphisms not scalar" : "self-extension";
          exceptional = false;
        } else if (i > j) {
          w.reason = "lower triangle";
          exceptional = false;
        } else {
          if (l == 0) continue;
          w.reason = "higher Ext";
          strong = false;
        }
        v.witnesses.push_back(w);
      }
    }
  }
  v.exceptional = exceptional;
  v.strong = exceptional && strong;
  return v;
}

Verdict verdict(const std::vector<Module>& collection) { return verdict(ext_table(collection)); }

EndPresentation end_algebra(const std::vector<Module>& collection, const std::string& name) {
  Verdict v = verdict(collection);
  if (!v.exceptional) throw Error(ErrorCode::NotExceptional, witnesses_text(v.witnesses));
  if (!v.strong) throw Error(ErrorCode::NotStrong, witnesses_text(v.witnesses));

  const int n = static_cast<int>(collection.size());
  const Field field = collection.front().algebra()->field();
  EndPresentation out;
  out.hom_dims.assign(collection.size(), std::vector<std::size_t>(collection.size(), 0));
  // hom bases and their flattened coordinate matrices
  std::vector<std::vector<HomSpace>> H(collection.size(), std::vector<HomSpace>(collection.size()));
  std::vector<std::vector<Matrix>> B(collection.size(), std::vector<Matrix>(collection.size()));
  for (int i = 1; i <= n; ++i)
    for (int j = i; j <= n; ++j) {
      H[idx(i)][idx(j)] = hom(collection[idx(i)], collection[idx(j)]);
      out.hom_dims[idx(i)][idx(j)] = H[idx(i)][idx(j)].dim();
      std::size_t rows = 0;
      for (int x = 1; x <= collection[0].algebra()->n(); ++x)
        rows += collection[idx(j)].dim(x) * collection[idx(i)].dim(x);
      Matrix b(rows, 0, field);
      for (const auto& f : H[idx(i)][idx(j)].basis) b = hstack(b, flatten(f));
      B[idx(i)][idx(j)] = b;
    }
  auto coords = [&](int i, int j, const ModuleMap& f) {
    auto sol = solve(B[idx(i)][idx(j)], flatten(f));
    if (!sol) throw Error(ErrorCode::Internal, "composite outside the hom space");
    return *sol;
  };

  QuiverPresentation& pres = out.presentation;
  pres.name = name;
  pres.quiver = Quiver(n);
  for (int span = 1; span < n; ++span) {
    for (int i = 1; i + span <= n; ++i) {
      int j = i + span;
      std::size_t hd = out.hom_dims[idx(i)][idx(j)];
      Matrix comp(hd, 0, field);
      for (int k = i + 1; k < j; ++k)
        for (const auto& g : H[idx(k)][idx(j)].basis)
          for (const auto& f : H[idx(i)][idx(k)].basis) comp = hstack(comp, coords(i, j, compose(g, f)));
      Matrix arrows = complement_basis(column_basis(comp), hd);
      for (std::size_t c = 0; c < arrows.cols(); ++c) {
        ModuleMap f = linear_combination(H[idx(i)][idx(j)].basis, arrows.column_values(c));
        std::string aname = "f" + std::to_string(i) + "_" + std::to_string(j) + "_" + std::to_string(c + 1);
        pres.quiver.add_arrow(aname, i, j);
        out.arrow_maps.push_back(f);
      }
    }
  }

  auto evaluate = [&](const Path& p) {
    ModuleMap acc = identity_map(collection[idx(p.source)]);
    for (auto a : p.arrows) acc = compose(out.arrow_maps[a], acc);
    return coords(p.source, p.target, acc);
  };

  for (int span = 2; span < n; ++span) {
    for (int i = 1; i + span <= n; ++i) {
      int j = i + span;
      std::vector<Path> paths = enumerate_paths(pres.quiver, i, j);
      if (paths.empty()) continue;
      std::map<Path, std::size_t> pidx;
      for (std::size_t k = 0; k < paths.size(); ++k) pidx.emplace(paths[k], k);
      Matrix ev(out.hom_dims[idx(i)][idx(j)], 0, field);
      for (const auto& p : paths) ev = hstack(ev, evaluate(p));
      Matrix ker = kernel(ev);
      // consequences of relations found at shorter spans
      Matrix generated(paths.size(), 0, field);
      for (const auto& g : pres.relations) {
        if (g.source < i || g.target > j) continue;
        for (const auto& u : enumerate_paths(pres.quiver, g.target, j))
          for (const auto& w : enumerate_paths(pres.quiver, i, g.source)) {
            Matrix col(paths.size(), 1, field);
            for (const auto& [p, c] : g.terms) col.add_to(pidx.at(compose(u, compose(p, w))), 0, c);
            generated = hstack(generated, col);
          }
      }
      std::size_t r = rank(generated);
      for (std::size_t c = 0; c < ker.cols(); ++c) {
        Matrix trial = hstack(generated, ker.column(c));
        std::size_t tr = rank(trial);
        if (tr == r) continue;
        generated = trial;
        r = tr;
        PathVector rel;
        rel.source = i;
        rel.target = j;
        for (std::size_t k = 0; k < paths.size(); ++k) rel.add(paths[k], ker(k, c));
        pres.relations.push_back(rel);
      }
    }
  }

  out.algebra = QuiverAlgebra::build(pres, field);
  out.canonical_rank.assign(collection.size(), std::vector<std::size_t>(collection.size(), 0));
  out.bijective = true;
  for (int i = 1; i <= n; ++i)
    for (int j = i; j <= n; ++j) {
      const auto& basis = out.algebra->basis(i, j);
      Matrix can(out.hom_dims[idx(i)][idx(j)], 0, field);
      for (const auto& p : basis) can = hstack(can, evaluate(p));
      std::size_t rk = rank(can);
      out.canonical_rank[idx(i)][idx(j)] = rk;
      if (rk != basis.size() || rk != out.hom_dims[idx(i)][idx(j)]) out.bijective = false;
    }
  return out;
}

CartanEuler cartan_euler(const AlgebraPtr& alg) {
  const int n = alg->n();
  CartanEuler ce;
  ce.cartan.assign(static_cast<std::size_t>(n), std::vector<long>(static_cast<std::size_t>(n), 0));
  ce.euler = ce.cartan;
  Matrix c(static_cast<std::size_t>(n), static_cast<std::size_t>(n));
  Matrix e(static_cast<std::size_t>(n), static_cast<std::size_t>(n));
  for (int i = 1; i <= n; ++i)
    for (int j = 1; j <= n; ++j) {
      long cij = i <= j ? static_cast<long>(alg->hom_dim(i, j)) : 0;
      ce.cartan[idx(i)][idx(j)] = cij;
      c.set(idx(i), idx(j), cij);
      auto x = ext(simple(alg, i), simple(alg, j));
      long chi = 0;
      for (std::size_t l = 0; l < x.size(); ++l) chi += (l % 2 ? -1 : 1) * static_cast<long>(x[l]);
      ce.euler[idx(i)][idx(j)] = chi;
      e.set(idx(i), idx(j), chi);
    }
  ce.inverse_transpose = (c.transpose() * e == Matrix::identity(static_cast<std::size_t>(n)));
  return ce;
}

long euler_form(const CartanEuler& ce, const Module& m, const Module& n) {
  long total = 0;
  for (std::size_t i = 0; i < ce.euler.size(); ++i)
    for (std::size_t j = 0; j < ce.euler.size(); ++j)
      total += static_cast<long>(m.dims()[i]) * ce.euler[i][j] * static_cast<long>(n.dims()[j]);
  return total;
}

long euler_characteristic(const Module& m, const Module& n) {
  auto e = ext(m, n);
  long chi = 0;
  for (std::size_t l = 0; l < e.size(); ++l) chi += (l % 2 ? -1 : 1) * static_cast<long>(e[l]);
  return chi;
}

Element AlgebraMorphism::image(const Path& p) const {
  Element acc = target->idempotent(p.source);
  for (auto a : p.arrows) acc = target->multiply(arrow_images.at(a), acc);
  return acc;
}

MorphismReport verify(const AlgebraMorphism& f) {
  MorphismReport rep;
  const Quiver& q = f.source->quiver();
  rep.endpoints_ok = f.source->n() == f.target->n() && f.arrow_images.size() == q.arrows().size();
  for (std::size_t a = 0; rep.endpoints_ok && a < q.arrows().size(); ++a) {
    const Element& x = f.arrow_images[a];
    rep.endpoints_ok = x.source == q.arrow(a).source && x.target == q.arrow(a).target &&
                       x.coords.size() == f.target->hom_dim(x.source, x.target);
  }
  if (!rep.endpoints_ok) return rep;
  rep.relations_ok = true;
  for (const auto& g : f.source->presentation().relations) {
    Vec sum(f.target->hom_dim(g.source, g.target));
    for (const auto& [p, c] : g.terms) {
      Element im = f.image(p);
      for (std::size_t k = 0; k < sum.size(); ++k) sum[k] = f.target->field().normalize(sum[k] + c * im.coords[k]);
    }
    for (const auto& x : sum) rep.relations_ok = rep.relations_ok && x == 0;
  }
  rep.bijective = true;
  for (int i = 1; i <= f.source->n(); ++i)
    for (int j = i; j <= f.source->n(); ++j) {
      const auto& basis = f.source->basis(i, j);
      std::size_t td = f.target->hom_dim(i, j);
      if (basis.size() != td) {
        rep.bijective = false;
        continue;
      }
      Matrix m(td, basis.size(), f.target->field());
      for (std::size_t k = 0; k < basis.size(); ++k) {
        Element im = f.image(basis[k]);
        for (std::size_t r = 0; r < td; ++r) m.set(r, k, im.coords[r]);
      }
      if (rank(m) != td) rep.bijective = false;
    }
  return rep;
}

bool same_relation_ideal(const AlgebraPtr& a, const AlgebraPtr& b) {
  const Quiver& qa = a->quiver();
  const Quiver& qb = b->quiver();
  if (qa.vertex_count() != qb.vertex_count() || qa.arrows().size() != qb.arrows().size()) return false;
  for (std::size_t k = 0; k < qa.arrows().size(); ++k) {
    const Arrow& x = qa.arrow(k);
    const Arrow& y = qb.arrow(k);
    if (x.name != y.name || x.source != y.source || x.target != y.target) return false;
  }
  for (int i = 1; i <= a->n(); ++i)
    for (int j = i; j <= a->n(); ++j) {
      const Matrix& ia = a->ideal_component(i, j);
      const Matrix& ib = b->ideal_component(i, j);
      if (ia.cols() != ib.cols()) return false;
      if (ia.cols() > 0 && rank(hstack(ia, ib)) != ia.cols()) return false;
    }
  return true;
}

AlgebraMorphism projective_end_morphism(const EndPresentation& pres, const AlgebraPtr& original) {
  AlgebraMorphism f{pres.algebra, original, {}};
  const Quiver& q = pres.algebra->quiver();
  for (std::size_t a = 0; a < q.arrows().size(); ++a) {
    const Arrow& arr = q.arrow(a);
    const Matrix& c = pres.arrow_maps[a].comps[idx(arr.source)];
    f.arrow_images.push_back(Element{arr.source, arr.target, c.column_values(0)});
  }
  return f;
}

}  // namespace towerkit
