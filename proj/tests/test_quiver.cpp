#include <algorithm>
#include <set>

#include "doctest.h"
#include "test_support.hpp"
#include "towerkit/algebra.hpp"
#include "towerkit/error.hpp"

using namespace towerkit;

namespace {

// Oracle for monomial relations: a path survives iff no relation monomial occurs as a subpath.
bool contains_subpath(const std::vector<std::size_t>& hay, const std::vector<std::size_t>& needle) {
  return std::search(hay.begin(), hay.end(), needle.begin(), needle.end()) != hay.end();
}

}  // namespace

TEST_CASE("parse the ising quiver") {
  auto pres = load_quiver(data_path("ising.quiver"));
  CHECK(pres.quiver.vertex_count() == 3);
  CHECK(pres.quiver.arrows().size() == 4);
  CHECK(pres.relations.size() == 2);
}

TEST_CASE("parse errors carry codes") {
  auto code_of = [](const char* text) {
    try {
      parse_quiver(text);
    } catch (const Error& e) {
      return e.code();
    }
    return ErrorCode::Internal;
  };
  CHECK(code_of("vertices 2\narrow a 2 -> 1\n") == ErrorCode::Directedness);
  CHECK(code_of("vertices 2\narrow a 1 -> 3\n") == ErrorCode::UnknownName);
  CHECK(code_of("vertices 3\narrow a 1 -> 2\narrow b 2 -> 3\nrelation b*c\n") == ErrorCode::UnknownName);
  CHECK(code_of("vertices 3\narrow a 1 -> 2\narrow b 2 -> 3\nrelation a\n") == ErrorCode::ShortRelation);
  CHECK(code_of("vertices 3\narrow a 1 -> 2\narrow b 2 -> 3\nrelation a*b\n") == ErrorCode::NonComposable);
  CHECK(code_of("vertices 4\narrow a 1 -> 2\narrow b 2 -> 3\narrow c 3 -> 4\narrow d 2 -> 4\n"
                "relation b*a + c*b\n") == ErrorCode::NonParallel);
  CHECK(code_of("vertices 2\nfrobnicate\n") == ErrorCode::Parse);
  CHECK(code_of("arrow a 1 -> 2\n") == ErrorCode::Parse);
}

TEST_CASE("enumerate paths on the ising quiver") {
  auto pres = load_quiver(data_path("ising.quiver"));
  const Quiver& q = pres.quiver;
  std::vector<std::string> names;
  for (const auto& p : enumerate_paths(q, 1, 3)) names.push_back(path_name(q, p));
  CHECK(names == std::vector<std::string>{"a2*a1", "a2*b1", "b2*a1", "b2*b1"});
  CHECK(enumerate_paths(q, 2, 2).size() == 1);
  CHECK(enumerate_paths(q, 2, 2)[0].length() == 0);
  CHECK(enumerate_paths(q, 3, 1).empty());
}

TEST_CASE("ising algebra dimension and multiplication") {
  auto alg = QuiverAlgebra::build(load_quiver(data_path("ising.quiver")));
  const Quiver& q = alg->quiver();
  CHECK(alg->dim() == 9);
  // monomial oracle
  std::size_t survivors = 0;
  for (int i = 1; i <= 3; ++i)
    for (int j = i; j <= 3; ++j)
      for (const auto& p : enumerate_paths(q, i, j)) {
        bool dead = false;
        for (const auto& r : alg->presentation().relations)
          dead = dead || contains_subpath(p.arrows, r.terms.begin()->first.arrows);
        survivors += dead ? 0 : 1;
      }
  CHECK(survivors == alg->dim());
  std::vector<std::string> b13;
  for (const auto& p : alg->basis(1, 3)) b13.push_back(path_name(q, p));
  CHECK(b13 == std::vector<std::string>{"a2*a1", "b2*b1"});

  auto arrow_elt = [&](const char* name) {
    std::size_t a = q.arrow_index(name);
    Path p{q.arrow(a).source, q.arrow(a).target, {a}};
    return Element{p.source, p.target, alg->normal_form(p)};
  };
  Element prod = alg->multiply(arrow_elt("a2"), arrow_elt("b1"));
  CHECK(std::all_of(prod.coords.begin(), prod.coords.end(), [](const Rational& c) { return c == 0; }));
  Element good = alg->multiply(arrow_elt("a2"), arrow_elt("a1"));
  CHECK(good.coords == Vec{1, 0});
  Element e1 = alg->idempotent(1);
  CHECK(alg->multiply(e1, e1).coords == Vec{1});
  CHECK(alg->multiply(alg->idempotent(2), e1).coords == Vec{0, 0});
}

TEST_CASE("small algebras") {
  CHECK(QuiverAlgebra::build(parse_quiver("vertices 1\n"))->dim() == 1);
  CHECK(QuiverAlgebra::build(parse_quiver("vertices 2\narrow a 1 -> 2\n"))->dim() == 3);
  CHECK(QuiverAlgebra::build(load_quiver(data_path("beilinson.quiver")))->dim() == 15);
}

TEST_CASE("multiplication is associative on basis elements") {
  for (const char* file : {"ising.quiver", "beilinson.quiver"}) {
    auto alg = QuiverAlgebra::build(load_quiver(data_path(file)));
    std::vector<Element> elts;
    for (int i = 1; i <= alg->n(); ++i)
      for (int j = i; j <= alg->n(); ++j)
        for (std::size_t k = 0; k < alg->hom_dim(i, j); ++k) elts.push_back(alg->basis_element(i, j, k));
    for (const auto& x : elts)
      for (const auto& y : elts)
        for (const auto& z : elts) {
          if (x.source != y.target || y.source != z.target) continue;
          CHECK(alg->multiply(alg->multiply(x, y), z).coords == alg->multiply(x, alg->multiply(y, z)).coords);
        }
  }
}

TEST_CASE("ideal plus quotient recovers the path algebra") {
  auto alg = QuiverAlgebra::build(load_quiver(data_path("beilinson.quiver")));
  std::size_t total_paths = 0, ideal = 0;
  for (int i = 1; i <= 3; ++i)
    for (int j = 1; j <= 3; ++j) {
      total_paths += alg->paths(i, j).size();
      ideal += alg->ideal_component(i, j).cols();
    }
  CHECK(total_paths == 3 + 3 + 3 + 9);
  CHECK(alg->dim() + ideal == total_paths);
}

TEST_CASE("permuting relations keeps hom dimensions") {
  auto pres = load_quiver(data_path("beilinson.quiver"));
  auto a = QuiverAlgebra::build(pres);
  std::reverse(pres.relations.begin(), pres.relations.end());
  auto b = QuiverAlgebra::build(pres);
  for (int i = 1; i <= 3; ++i)
    for (int j = 1; j <= 3; ++j) CHECK(a->hom_dim(i, j) == b->hom_dim(i, j));
}

TEST_CASE("dsl round trip") {
  auto pres = load_quiver(data_path("beilinson.quiver"));
  auto again = parse_quiver(to_dsl(pres));
  CHECK(to_dsl(again) == to_dsl(pres));
  auto rel = parse_lincomb(pres.quiver, "3/2*a2*b1 = b2*a1");
  CHECK(rel.terms.size() == 2);
}
