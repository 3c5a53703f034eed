#pragma once

// Ext tables of module collections, exceptional/strong verdicts, presentations
// of endomorphism algebras, Cartan and Euler matrices.

#include <string>
#include <vector>

#include "towerkit/resolution.hpp"

namespace towerkit {

struct ExtTable {
  std::vector<std::string> names;
  // entries[i][j][l] = dim Ext^l(M_i, M_j)
  std::vector<std::vector<std::vector<std::size_t>>> entries;

  std::size_t size() const { return names.size(); }
};

ExtTable ext_table(const std::vector<Module>& collection);

struct Witness {
  std::size_t i = 0;  // 1-based positions in the collection
  std::size_t j = 0;
  std::size_t degree = 0;
  std::size_t dim = 0;
  std::string reason;
};

struct Verdict {
  bool exceptional = false;
  bool strong = false;
  std::vector<Witness> witnesses;
};

Verdict verdict(const ExtTable& table);
Verdict verdict(const std::vector<Module>& collection);
std::string describe(const Witness& w);

struct EndPresentation {
  QuiverPresentation presentation;
  AlgebraPtr algebra;
  // hom_dims[i-1][j-1] = dim Hom(M_i, M_j)
  std::vector<std::vector<std::size_t>> hom_dims;
  // arrow_maps[a] is the morphism named by arrow a
  std::vector<ModuleMap> arrow_maps;
  // certificate: rank of the canonical map basis(i,j) -> Hom(M_i, M_j)
  std::vector<std::vector<std::size_t>> canonical_rank;
  bool bijective = false;
};

/// Throws NotExceptional / NotStrong when the collection does not qualify.
EndPresentation end_algebra(const std::vector<Module>& collection, const std::string& name = "End");

struct CartanEuler {
  std::vector<std::vector<long>> cartan;  // C_ij = dim Hom(P_i, P_j)
  std::vector<std::vector<long>> euler;   // E_ij = sum (-1)^l dim Ext^l(S_i, S_j)
  bool inverse_transpose = false;         // E = C^{-T}
};

CartanEuler cartan_euler(const AlgebraPtr& alg);

/// d(M) E d(N)^T with E from cartan_euler.
long euler_form(const CartanEuler& ce, const Module& m, const Module& n);
long euler_characteristic(const Module& m, const Module& n);

/// Algebra map fixed by images of the arrows of `source`.
struct AlgebraMorphism {
  AlgebraPtr source;
  AlgebraPtr target;
  std::vector<Element> arrow_images;

  Element image(const Path& p) const;
};

struct MorphismReport {
  bool endpoints_ok = false;
  bool relations_ok = false;
  bool bijective = false;
  bool ok() const { return endpoints_ok && relations_ok && bijective; }
};

MorphismReport verify(const AlgebraMorphism& f);

/// Identity on arrows: same quiver, equal ideal components.
bool same_relation_ideal(const AlgebraPtr& a, const AlgebraPtr& b);

/// Arrow x of the presented algebra maps to the element x_*(e_i) of the original
/// algebra, identifying End(P_1 + ... + P_n) with A.
AlgebraMorphism projective_end_morphism(const EndPresentation& pres, const AlgebraPtr& original);

}  // namespace towerkit
