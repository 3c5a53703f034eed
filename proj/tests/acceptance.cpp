// One PASS/FAIL line per acceptance criterion; exit status 1 if any fails.

#include <functional>
#include <iostream>
#include <sstream>

#include "test_support.hpp"
#include "towerkit/error.hpp"
#include "towerkit/ncplane.hpp"
#include "towerkit/realize.hpp"
#include "towerkit/report.hpp"
#include "towerkit/surface.hpp"

using namespace towerkit;

namespace {

struct Outcome {
  bool ok = true;
  std::ostringstream detail;

  void expect(bool cond, const std::string& what) {
    if (!cond) {
      ok = false;
      detail << " [failed: " << what << "]";
    }
  }
};

AlgebraPtr load(const std::string& file) { return QuiverAlgebra::build(load_quiver(data_path(file))); }

std::vector<Module> projectives(const AlgebraPtr& alg) {
  std::vector<Module> out;
  for (int i = 1; i <= alg->n(); ++i) out.push_back(projective(alg, i));
  return out;
}

std::vector<AlgebraPtr> test_algebras() {
  std::vector<AlgebraPtr> out;
  for (const char* f : {"ising.quiver", "beilinson.quiver", "kronecker.quiver", "single.quiver"}) out.push_back(load(f));
  Rng rng(99);
  for (int k = 0; k < 4; ++k) out.push_back(QuiverAlgebra::build(random_presentation(rng, static_cast<int>(rng.uniform(2, 4)))));
  return out;
}

std::string dims_str(const Dims3& h) {
  return "(" + std::to_string(h[0]) + "," + std::to_string(h[1]) + "," + std::to_string(h[2]) + ")";
}

void criterion1(Outcome& o) {
  auto alg = load("ising.quiver");
  o.expect(alg->dim() == 9, "dim 9");
  for (int i = 1; i <= 3; ++i)
    for (int j = i + 1; j <= 3; ++j) o.expect(alg->hom_dim(i, j) == 2, "Hom(P" + std::to_string(i) + ",P" + std::to_string(j) + ") = 2");
  Verdict v = verdict(projectives(alg));
  o.expect(v.exceptional && v.strong, "projectives strong exceptional");
  o.detail << "dim=" << alg->dim() << " strong=" << v.strong;
}

void criterion2(Outcome& o) {
  auto alg = load("ising.quiver");
  Module m = load_module(data_path("bondal.module"), alg);
  auto e = ext(m, m);
  o.expect(e == std::vector<std::size_t>{1, 0, 0}, "ext(M,M) = (1,0,0)");
  o.detail << "ext(M,M)=(" << e[0] << "," << e[1] << "," << e[2] << ")";
}

void criterion3(Outcome& o) {
  auto alg = algebra_from_mu(standard_tensor());
  auto ce = cartan_euler(alg);
  o.expect(alg->dim() == 15, "dim 15");
  o.expect(ce.cartan[0][1] == 3 && ce.cartan[1][2] == 3 && ce.cartan[0][2] == 6, "Cartan (3,3,6)");
  o.expect(same_relation_ideal(alg, load("beilinson.quiver")), "relations match the Beilinson quiver");
  auto proj = projectives(alg);
  EndPresentation pres = end_algebra(proj, "End");
  o.expect(pres.bijective, "canonical map bijective");
  o.expect(verify(projective_end_morphism(pres, alg)).ok(), "end algebra morphism");
  o.detail << "dim=" << alg->dim() << " cartan=(" << ce.cartan[0][1] << "," << ce.cartan[1][2] << "," << ce.cartan[0][2] << ")";
}

void criterion4(Outcome& o) {
  BuiltSheaf O = split_sheaf("O", {Atom::line(0, 0)});
  BuiltSheaf Q = split_sheaf("O(2,-1)", {Atom::line(2, -1)});
  BuiltSheaf U = build_U();
  o.expect(cohomology(Q) == Dims3{0, 0, 0}, "H(O(2,-1)) = 0");
  o.expect(ext_pair(Q, O)[1] == 2, "Ext^1(O(2,-1),O) = 2");
  o.expect(cohomology(U) == Dims3{2, 0, 0}, "H(U) = (2,0,0)");
  int accepted = 0;
  for (std::uint64_t seed = 1; accepted < 50 && seed < 500; ++seed) {
    BuiltSheaf F;
    try {
      F = build_F(random_phi(seed));
    } catch (const Error& e) {
      if (e.code() != ErrorCode::DegenerateMap) throw;
      continue;
    }
    ++accepted;
    Dims3 hf = cohomology(F), e = ext_pair(U, F);
    o.expect(hf == Dims3{2, 0, 0}, "H(F) = (2,0,0) at seed " + std::to_string(seed) + ", got " + dims_str(hf));
    o.expect(e == Dims3{2, 0, 0}, "Ext(U,F) = (2,0,0) at seed " + std::to_string(seed) + ", got " + dims_str(e));
  }
  o.expect(accepted == 50, "50 admissible seeds");
  o.detail << "H(U)=" << dims_str(cohomology(U)) << " Ext(O(2,-1),O)=" << dims_str(ext_pair(Q, O)) << " seeds=" << accepted;
}

void criterion5(Outcome& o) {
  auto alg = load("ising.quiver");
  auto steps = decompose(alg);
  const DecompositionStep& last = steps.back();
  BuiltSheaf F = build_F_seeded(1);
  RhomResult r = rhom_module(F, build_U(), last.base, &last.module);
  o.expect(r.isomorphic, "isomorphic to rad P3");
  o.expect(r.intertwiner.is_homomorphism() && r.intertwiner.is_isomorphism(), "intertwiner is an isomorphism");
  o.detail << "dims=(" << r.module.dim(1) << "," << r.module.dim(2) << ") isomorphic=" << r.isomorphic;
}

void criterion6(Outcome& o) {
  auto alg = load("ising.quiver");
  Tower t = realize(alg);
  std::size_t sum = 0;
  for (auto x : t.bundle_ranks) sum += x;
  o.expect(t.total_dim == 5, "realize total_dim 5");
  o.expect(t.bundle_ranks == std::vector<std::size_t>{1, 3, 5}, "bundle ranks (1,3,5)");
  o.expect(sum == alg->dim(), "rank sum = dim A");
  o.expect(t.certificates_ok(), "step certificates");

  Report ising = ising_report({});
  o.expect(ising.exit_code == 0, "ising pipeline passes");
  o.expect(ising.json["X_dim"] == 3, "ising X has dimension 3");

  std::size_t nc_dim = 0, nc_rank = 0;
  for (const auto& src : {TensorSource{TensorSource::Standard, "", {1, 2, 3}}, TensorSource{TensorSource::Sklyanin, "", {1, 2, 3}}}) {
    Report nc = ncplane_report(src);
    o.expect(nc.exit_code == 0, "ncplane pipeline passes");
    o.expect(nc.json["X_dim"] == 4, "ncplane X has dimension 4");
    o.expect(nc.json["F_rank"] == 3, "F has rank 3");
    nc_dim = nc.json["X_dim"].get<std::size_t>();
    nc_rank = nc.json["F_rank"].get<std::size_t>();
  }
  o.detail << "realize total_dim=" << t.total_dim << " ranks sum=" << sum << " ising X dim=" << ising.json["X_dim"]
           << " ncplane X dim=" << nc_dim << " rank F=" << nc_rank;
}

void criterion7(Outcome& o) {
  // (a) extend o decompose round trip
  Rng rng(4242);
  int round_trips = 0;
  for (int trial = 0; trial < 12; ++trial) {
    auto alg = QuiverAlgebra::build(random_presentation(rng, static_cast<int>(rng.uniform(2, 4))));
    AlgebraPtr rebuilt;
    for (const auto& s : decompose(alg)) {
      auto ext = extend(s.module);
      o.expect(verify(extension_morphism(ext, s)).ok(), "(a) extension morphism");
      rebuilt = ext.total;
    }
    if (!rebuilt) continue;
    o.expect(rebuilt->dim() == alg->dim(), "(a) dimension");
    o.expect(cartan_euler(rebuilt).cartan == cartan_euler(alg).cartan, "(a) Cartan");
    o.expect(end_algebra(projectives(rebuilt)).bijective, "(a) canonical map");
    ++round_trips;
  }
  o.expect(round_trips >= 10, "(a) at least 10 algebras");

  auto algebras = test_algebras();
  int random_pairs = 0, resolutions = 0;
  for (const auto& alg : algebras) {
    // (b) Ext^1 between simples counts arrows
    for (int i = 1; i <= alg->n(); ++i)
      for (int j = 1; j <= alg->n(); ++j) {
        auto e = ext(simple(alg, i), simple(alg, j));
        std::size_t e1 = e.size() > 1 ? e[1] : 0;
        std::size_t arrows = i > j ? alg->quiver().arrows_between(j, i).size() : 0;
        o.expect(e1 == arrows, "(b) Ext^1(S_i,S_j)");
      }
    // (c) Euler form through dimension vectors; (d) resolutions
    CartanEuler ce = cartan_euler(alg);
    Rng mrng(alg->n() * 31 + 5);
    for (int trial = 0; trial < 20; ++trial) {
      Module m = random_module(alg, mrng), n = random_module(alg, mrng);
      o.expect(euler_characteristic(m, n) == euler_form(ce, m, n), "(c) Euler form");
      ++random_pairs;
      for (const Module* x : {&m, &n}) {
        auto r = min_resolution(*x);
        o.expect(resolution_is_exact(*r), "(d) exact");
        o.expect(static_cast<int>(r->length()) <= alg->n() - 1, "(d) gldim <= n-1");
        ++resolutions;
      }
    }
  }

  // (e) chi additivity
  int sheaves = 0;
  std::vector<BuiltSheaf> all{build_U(), split_sheaf("O", {Atom::line(0, 0)}), split_sheaf("O(2,-1)", {Atom::line(2, -1)}),
                              load_sheaf(data_path("U.sheaf")), load_sheaf(data_path("F.sheaf")),
                              split_sheaf("S", {Atom::line(1, -3), Atom::fiber(2, 3, -2)})};
  for (std::uint64_t seed : {1u, 5u, 9u, 17u}) all.push_back(build_F_seeded(seed));
  for (const auto& s : all)
    for (int a = -2; a <= 2; ++a)
      for (int b = -2; b <= 2; ++b) {
        BuiltSheaf t = s.twist(a, b);
        o.expect(chi(cohomology(t)) == t.recipe_chi(), "(e) chi of " + s.name);
        ++sheaves;
      }

  // (f) opposite tensors
  Rng trng(777);
  int tensors = 0;
  for (int attempt = 0; tensors < 10 && attempt < 200; ++attempt) {
    Matrix rel(9, 3);
    for (std::size_t r = 0; r < 9; ++r)
      for (std::size_t c = 0; c < 3; ++c) rel.set(r, c, trng.small_rational(3));
    Tensor t = tensor_from_relations(rel);
    if (rank(t.mu) != 6 || nondegenerate(t).status() != NondegStatus::Nondegenerate) continue;
    ++tensors;
    o.expect(opposite(opposite(t)).mu == t.mu, "(f) involution");
    auto c = gamma_correspondence(t);
    o.expect(!c.skipped.empty() || c.divisible, "(f) divisibility");
  }
  o.expect(tensors >= 10, "(f) at least 10 tensors");
  o.detail << "(a) " << round_trips << " algebras; (b,c,d) " << algebras.size() << " algebras, " << random_pairs
           << " pairs, " << resolutions << " resolutions; (e) " << sheaves << " twisted sheaves; (f) " << tensors << " tensors";
}

void criterion8(Outcome& o) {
  // the excluded claims are not computed; check that every report carries them as asserted
  auto flagged = [](const Json& report, const std::string& needle) {
    for (const auto& a : report["asserted"])
      if (a["provenance"] == kAssertedFlag && a["claim"].get<std::string>().find(needle) != std::string::npos) return true;
    return false;
  };
  Report ising = ising_report({});
  Report nc = ncplane_report({});
  Report rz = realize_report(data_path("ising.quiver"), "default");
  o.expect(flagged(rz.json, "smooth projective"), "tower smoothness flagged");
  o.expect(flagged(rz.json, "global-generation"), "global generation flagged");
  o.expect(flagged(ising.json, "full exceptional collection"), "length-8 collection flagged");
  bool length8 = false;
  for (const auto& a : ising.json["asserted"])
    if (a.contains("length") && a["length"] == 8) length8 = true;
  o.expect(length8, "length 8 recorded");
  o.expect(flagged(ising.json, "not extendable"), "non-extendability flagged");
  o.expect(flagged(nc.json, "Hilbert scheme"), "deformation claim flagged");
  o.detail << "excluded from computation; surfaced with provenance '" << kAssertedFlag << "'";
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<void(Outcome&)>>> criteria{
      {"Ising algebra", criterion1},
      {"Bondal module exceptional", criterion2},
      {"Beilinson algebra from the standard tensor", criterion3},
      {"cohomology and Ext on P1 x P1", criterion4},
      {"RHom module is rad P3", criterion5},
      {"realization dimensions", criterion6},
      {"property suites", criterion7},
      {"non-computed claims flagged", criterion8},
  };
  int failures = 0;
  for (std::size_t k = 0; k < criteria.size(); ++k) {
    Outcome o;
    try {
      criteria[k].second(o);
    } catch (const std::exception& e) {
      o.ok = false;
      o.detail << " [exception: " << e.what() << "]";
    }
    if (!o.ok) ++failures;
    std::cout << (o.ok ? "PASS" : "FAIL") << " criterion " << (k + 1) << ": " << criteria[k].first << " -- "
              << o.detail.str() << "\n";
  }
  return failures == 0 ? 0 : 1;
}
