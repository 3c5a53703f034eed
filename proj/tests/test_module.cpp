#include "doctest.h"
#include "test_support.hpp"
#include "towerkit/error.hpp"
#include "towerkit/resolution.hpp"

using namespace towerkit;

namespace {

AlgebraPtr load(const char* file) { return QuiverAlgebra::build(load_quiver(data_path(file))); }

std::vector<AlgebraPtr> test_algebras() {
  return {load("ising.quiver"), load("beilinson.quiver"), load("kronecker.quiver"), load("single.quiver"),
          QuiverAlgebra::build(parse_quiver("vertices 4\narrow x 1 -> 2\narrow y 2 -> 3\narrow z 3 -> 4\n"
                                            "arrow w 1 -> 3\nrelation z*y*x\n"))};
}

std::size_t arrow_count(const Quiver& q, int s, int t) { return q.arrows_between(s, t).size(); }

// Direct evaluation of Hom(P_i, M): pick the image of e_i freely in M_i.
std::size_t yoneda_oracle(const Module& m, int i) { return m.dim(i); }

}  // namespace

TEST_CASE("projective and simple modules") {
  auto alg = load("ising.quiver");
  Module p3 = projective(alg, 3);
  CHECK(p3.dims() == std::vector<std::size_t>{2, 2, 1});
  Module p1 = projective(alg, 1);
  CHECK(p1.dims() == std::vector<std::size_t>{1, 0, 0});
  Module s1 = simple(alg, 1);
  CHECK(find_isomorphism(p1, s1).has_value());
  CHECK(hom_dim(projective(alg, 1), projective(alg, 2)) == 2);
  CHECK(hom_dim(projective(alg, 2), projective(alg, 3)) == 2);
  CHECK(hom_dim(projective(alg, 1), projective(alg, 3)) == 2);
  CHECK(hom_dim(projective(alg, 3), projective(alg, 1)) == 0);
}

TEST_CASE("identity lies in hom(M, M)") {
  auto alg = load("ising.quiver");
  Rng rng(3);
  for (int k = 0; k < 5; ++k) {
    Module m = random_module(alg, rng);
    HomSpace h = hom(m, m);
    CHECK(identity_map(m).is_homomorphism());
    for (const auto& f : h.basis) CHECK(f.is_homomorphism());
  }
}

TEST_CASE("yoneda: hom(P_i, M) has dimension d_i(M)") {
  for (const auto& alg : test_algebras()) {
    Rng rng(alg->n() * 101 + 5);
    for (int trial = 0; trial < 20; ++trial) {
      Module m = random_module(alg, rng);
      for (int i = 1; i <= alg->n(); ++i) CHECK(hom_dim(projective(alg, i), m) == yoneda_oracle(m, i));
    }
  }
}

TEST_CASE("radical, top and projective cover") {
  auto alg = load("ising.quiver");
  Module p3 = projective(alg, 3);
  CHECK(radical(p3).module.dims() == std::vector<std::size_t>{2, 2, 0});
  CHECK(top(p3).module.dims() == std::vector<std::size_t>{0, 0, 1});
  for (int i = 1; i <= 3; ++i) {
    Module s = simple(alg, i);
    CHECK(top(s).module.dims() == s.dims());
    ProjectiveCover pc = projective_cover(s);
    CHECK(pc.generators == std::vector<int>{i});
    CHECK(pc.epi.is_homomorphism());
  }
  CHECK_THROWS_AS(projective_cover(Module::zero(alg)), Error);
}

TEST_CASE("minimal resolutions") {
  auto alg = load("ising.quiver");
  auto r3 = min_resolution(simple(alg, 3));
  CHECK(r3->length() == 2);
  CHECK(resolution_is_exact(*r3));
  CHECK(resolution_is_minimal(*r3));
  for (int i = 1; i <= 3; ++i) CHECK(min_resolution(projective(alg, i))->length() == 0);
  CHECK(min_resolution(simple(alg, 1))->length() == 0);
}

TEST_CASE("ext groups") {
  auto alg = load("ising.quiver");
  CHECK(ext(simple(alg, 2), simple(alg, 1)) == std::vector<std::size_t>{0, 2, 0});
  CHECK(ext(simple(alg, 3), simple(alg, 1)) == std::vector<std::size_t>{0, 0, 2});
  Rng rng(9);
  for (int k = 0; k < 5; ++k) {
    Module n = random_module(alg, rng);
    for (int i = 1; i <= 3; ++i) {
      auto e = ext(projective(alg, i), n);
      CHECK(e == std::vector<std::size_t>{n.dim(i), 0, 0});
    }
  }
  Module bondal = load_module(data_path("bondal.module"), alg);
  CHECK(ext(bondal, bondal) == std::vector<std::size_t>{1, 0, 0});
}

TEST_CASE("Ext^1 between simples counts arrows") {
  for (const auto& alg : test_algebras()) {
    const Quiver& q = alg->quiver();
    for (int i = 1; i <= alg->n(); ++i)
      for (int j = 1; j <= alg->n(); ++j) {
        auto e = ext(simple(alg, i), simple(alg, j));
        std::size_t e1 = e.size() > 1 ? e[1] : 0;
        CHECK(e1 == (j < i ? arrow_count(q, j, i) : 0));
      }
  }
}

TEST_CASE("resolutions of random modules are exact, minimal and short") {
  for (const auto& alg : test_algebras()) {
    Rng rng(alg->n() * 7 + 1);
    for (int trial = 0; trial < 10; ++trial) {
      Module m = random_module(alg, rng);
      auto r = min_resolution(m);
      CHECK(resolution_is_exact(*r));
      CHECK(resolution_is_minimal(*r));
      CHECK(static_cast<int>(r->length()) <= alg->n() - 1);
    }
  }
}

TEST_CASE("vertex filtration") {
  auto alg = load("ising.quiver");
  auto chain = vertex_filtration(projective(alg, 3));
  REQUIRE(chain.size() == 4);
  std::vector<std::size_t> quotients;
  for (int p = 1; p <= 3; ++p)
    quotients.push_back(chain[p].module.total_dim() - chain[p - 1].module.total_dim());
  CHECK(quotients == std::vector<std::size_t>{2, 2, 1});
  for (int p = 1; p <= 3; ++p) CHECK(chain[p].inclusion.is_homomorphism());
}

TEST_CASE("module file round trip") {
  auto alg = load("ising.quiver");
  Module bondal = load_module(data_path("bondal.module"), alg);
  Module again = parse_module(to_module_text(bondal), alg);
  CHECK(find_isomorphism(bondal, again).has_value());
  CHECK_THROWS_AS(parse_module("module m over ising\ndims 1 1 1\nmap a1 = [[1]]\nmap b2 = [[1]]\n", alg), Error);
  CHECK_THROWS_AS(parse_module("module m over ising\ndims 1 1\n", alg), Error);
}
