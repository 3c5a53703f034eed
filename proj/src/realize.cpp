#include "towerkit/realize.hpp"

#include <algorithm>

#include "towerkit/error.hpp"

namespace towerkit {

namespace {

std::size_t idx(int vertex) { return static_cast<std::size_t>(vertex - 1); }

std::vector<std::string> step_assumptions(std::size_t m) {
  std::string flag = std::string(" [") + kGuaranteedFlag + "]";
  return {
      "a surjection (L^-1)^" + std::to_string(m) + " -> M^vee exists" + flag,
      "L (x) u(M)^vee is generated by global sections" + flag,
      "the next line bundle O(1) (x) pi^*R^s is left orthogonal, globally generated, with vanishing higher cohomology" +
          flag,
  };
}

}  // namespace

OrdinaryExtension extend(const Module& m, const std::string& name) {
  const AlgebraPtr& alg = m.algebra();
  const int n = alg->n();
  OrdinaryExtension out;
  out.base = alg;
  out.module = m;

  QuiverPresentation pres;
  pres.name = name.empty() ? alg->name() + "_ext" : name;
  pres.quiver = Quiver(n + 1);
  for (const auto& arr : alg->quiver().arrows()) pres.quiver.add_arrow(arr.name, arr.source, arr.target);
  pres.relations = alg->presentation().relations;

  if (m.is_zero()) {
    out.total = QuiverAlgebra::build(std::move(pres), alg->field());
    return out;
  }
  out.cover = projective_cover(m);
  const auto& gens = out.cover.generators;
  std::vector<int> counter(static_cast<std::size_t>(n), 0);
  for (int v : gens) {
    std::string aname = "x" + std::to_string(v) + "_" + std::to_string(++counter[idx(v)]);
    while (pres.quiver.has_arrow(aname)) aname += "'";
    out.new_arrows.push_back(pres.quiver.add_arrow(aname, v, n + 1));
  }

  // first syzygy: generators of ker(P -> M) become relations x_g * b
  Submodule syz = kernel(out.cover.epi);
  if (!syz.module.is_zero()) {
    ProjectiveCover kc = projective_cover(syz.module);
    for (std::size_t r = 0; r < kc.generators.size(); ++r) {
      int j = kc.generators[r];
      Matrix vec = syz.inclusion.comps[idx(j)] * kc.tops[r];  // coordinates in P at vertex j
      PathVector rel;
      rel.source = j;
      rel.target = n + 1;
      std::size_t off = 0;
      for (std::size_t g = 0; g < gens.size(); ++g) {
        int v = gens[g];
        if (j > v) continue;
        const auto& basis = alg->basis(j, v);
        for (std::size_t b = 0; b < basis.size(); ++b) {
          const Rational& c = vec(off + b, 0);
          if (c == 0) continue;
          Path p = basis[b];
          p.arrows.push_back(out.new_arrows[g]);
          p.target = n + 1;
          if (p.length() < 2) throw Error(ErrorCode::Internal, "syzygy outside the radical");
          rel.add(p, c);
        }
        off += basis.size();
      }
      if (!rel.is_zero()) pres.relations.push_back(std::move(rel));
    }
  }
  out.total = QuiverAlgebra::build(std::move(pres), alg->field());
  if (out.total->dim() != alg->dim() + m.total_dim() + 1)
    throw Error(ErrorCode::Internal, "ordinary extension has the wrong dimension");
  return out;
}

std::vector<DecompositionStep> decompose(const AlgebraPtr& alg) {
  std::vector<DecompositionStep> out;
  const int n = alg->n();
  for (int k = 1; k < n; ++k) {
    DecompositionStep s;
    s.k = k;
    s.base = alg->restrict_to(k);
    s.total = k + 1 == n ? alg : alg->restrict_to(k + 1);
    Submodule rad = radical(projective(s.total, k + 1));
    s.module = restrict_module(rad.module, s.base);
    s.module.set_name("M" + std::to_string(k));
    for (int i = 1; i <= k; ++i) s.embedding.push_back(rad.inclusion.comps[idx(i)]);
    out.push_back(std::move(s));
  }
  return out;
}

AlgebraMorphism extension_morphism(const OrdinaryExtension& ext, const DecompositionStep& step) {
  if (ext.module.algebra()->id() != step.module.algebra()->id())
    throw Error(ErrorCode::MixedAlgebras, "extension and decomposition step use different base algebras");
  AlgebraMorphism f{ext.total, step.total, {}};
  const Quiver& q = ext.total->quiver();
  for (std::size_t a = 0; a < q.arrows().size(); ++a) {
    const Arrow& arr = q.arrow(a);
    auto it = std::find(ext.new_arrows.begin(), ext.new_arrows.end(), a);
    if (it == ext.new_arrows.end()) {
      std::size_t b = step.total->quiver().arrow_index(arr.name);
      Path p{arr.source, arr.target, {b}};
      f.arrow_images.push_back(Element{arr.source, arr.target, step.total->normal_form(p)});
    } else {
      std::size_t g = static_cast<std::size_t>(it - ext.new_arrows.begin());
      Matrix v = step.embedding[idx(arr.source)] * ext.cover.tops[g];
      f.arrow_images.push_back(Element{arr.source, arr.target, v.column_values(0)});
    }
  }
  return f;
}

MPolicy MPolicy::parse(const std::string& text) {
  if (text == "default") return MPolicy{};
  const std::string prefix = "fixed:";
  if (text.rfind(prefix, 0) == 0) {
    std::string num = text.substr(prefix.size());
    try {
      std::size_t used = 0;
      long v = std::stol(num, &used);
      if (used == num.size() && v >= 0) return MPolicy{static_cast<std::size_t>(v)};
    } catch (const std::exception&) {
    }
  }
  throw Error(ErrorCode::Parse, "m-policy must be 'default' or 'fixed:<k>', got '" + text + "'");
}

std::size_t MPolicy::choose(std::size_t dim_m) const {
  std::size_t m = fixed.value_or(dim_m + 3);
  if (m < dim_m + 3)
    throw Error(ErrorCode::PolicyTooSmall, "m = " + std::to_string(m) + " < dim M + 3 = " + std::to_string(dim_m + 3));
  return m;
}

std::string MPolicy::to_string() const { return fixed ? "fixed:" + std::to_string(*fixed) : "default"; }

bool Tower::certificates_ok() const {
  for (const auto& s : steps)
    if (!s.certificate.ok()) return false;
  return true;
}

StepCertificate verify_step_certificates(const TowerStep& step) {
  StepCertificate c;
  const int k = step.base->n();
  c.higher_vanish = true;
  c.homs_match = true;
  for (int i = 1; i <= k; ++i) {
    Module p = projective(step.base, i);
    auto e = ext(p, step.module);
    for (std::size_t l = 1; l < e.size(); ++l) c.higher_vanish = c.higher_vanish && e[l] == 0;
    c.ext_projectives.push_back(e);
    c.hom_dims.push_back(e.empty() ? 0 : e[0]);
    c.expected_homs.push_back(step.total->hom_dim(i, k + 1));
    c.homs_match = c.homs_match && c.hom_dims.back() == c.expected_homs.back();
  }
  Module top = projective(step.total, k + 1);
  c.new_self_ext = ext(top, top);
  c.new_exceptional = !c.new_self_ext.empty() && c.new_self_ext[0] == 1;
  for (std::size_t l = 1; l < c.new_self_ext.size(); ++l) c.new_exceptional = c.new_exceptional && c.new_self_ext[l] == 0;
  for (int i = 1; i <= k; ++i) {
    auto e = ext(top, projective(step.total, i));
    for (auto x : e) c.new_exceptional = c.new_exceptional && x == 0;
  }
  return c;
}

Tower realize(const AlgebraPtr& alg, const MPolicy& policy) {
  Tower t;
  t.base = "P1";
  t.base_dim = 1;
  t.base_records = {"X = P1", "u(A_1) = O_P1", "L = O(1)"};
  t.total_dim = 1;
  t.bundle_ranks = {1};
  for (auto& d : decompose(alg)) {
    TowerStep s;
    s.k = d.k;
    s.base = d.base;
    s.total = d.total;
    s.module = d.module;
    s.dim_m = d.module.total_dim();
    s.m = policy.choose(s.dim_m);
    s.fiber_rank = s.m - s.dim_m;
    s.new_bundle_rank = s.dim_m + 1;
    s.dim_increment = s.fiber_rank - 1;
    s.assumptions = step_assumptions(s.m);
    s.certificate = verify_step_certificates(s);
    if (s.new_bundle_rank != projective(d.total, d.k + 1).total_dim())
      throw Error(ErrorCode::CertificateMismatch, "new bundle rank differs from dim P_" + std::to_string(d.k + 1));
    t.total_dim += s.dim_increment;
    t.bundle_ranks.push_back(s.new_bundle_rank);
    t.steps.push_back(std::move(s));
  }
  return t;
}

Tower custom_base(const std::string& name, std::size_t dim, std::vector<std::size_t> bundle_ranks) {
  Tower t;
  t.base = name;
  t.base_dim = dim;
  t.total_dim = dim;
  t.bundle_ranks = std::move(bundle_ranks);
  return t;
}

TowerStep alt_step_bundle(Tower& tower, const Module& m, std::size_t bundle_rank) {
  if (bundle_rank < 2)
    throw Error(ErrorCode::RankTooSmall, "projectivization needs a bundle of rank >= 2, got " + std::to_string(bundle_rank));
  OrdinaryExtension ext = extend(m);
  TowerStep s;
  s.k = m.algebra()->n();
  s.variant = "projectivization";
  s.base = m.algebra();
  s.total = ext.total;
  s.module = m;
  s.dim_m = m.total_dim();
  s.m = bundle_rank;
  s.fiber_rank = bundle_rank;
  s.new_bundle_rank = 1;
  s.dim_increment = bundle_rank - 1;
  s.assumptions = {"M is represented by a vector bundle of rank " + std::to_string(bundle_rank) + " [supplied by caller]"};
  s.certificate = verify_step_certificates(s);
  tower.total_dim += s.dim_increment;
  tower.bundle_ranks.push_back(1);
  tower.steps.push_back(s);
  return s;
}

}  // namespace towerkit
