#pragma once

// Right modules over a quiver algebra, stored as reversed-arrow
// representations: an arrow a: s -> t acts by a d_s x d_t matrix
// rho_a from the space at t to the space at s.

#include <optional>
#include <string>
#include <vector>

#include "towerkit/algebra.hpp"
#include "towerkit/random.hpp"

namespace towerkit {

class Module {
 public:
  Module() = default;
  /// Validates shapes and relations; throws InvalidModule.
  Module(AlgebraPtr alg, std::vector<std::size_t> dims, std::vector<Matrix> rho, std::string name = "M");

  static Module zero(AlgebraPtr alg);

  const AlgebraPtr& algebra() const { return alg_; }
  const std::string& name() const { return name_; }
  void set_name(std::string name) { name_ = std::move(name); }

  const std::vector<std::size_t>& dims() const { return dims_; }
  std::size_t dim(int vertex) const { return dims_.at(static_cast<std::size_t>(vertex - 1)); }
  std::size_t total_dim() const;
  bool is_zero() const { return total_dim() == 0; }

  const Matrix& rho(std::size_t arrow) const { return rho_.at(arrow); }
  const std::vector<Matrix>& action() const { return rho_; }
  /// rho of a path p: i -> j, a d_i x d_j matrix.
  Matrix rho_path(const Path& p) const;
  /// Action of an algebra element x: i -> j, a d_i x d_j matrix.
  Matrix act(const Element& x) const;

  /// Stable text key: algebra id, dims and action matrices.
  std::string fingerprint() const;

 private:
  AlgebraPtr alg_;
  std::string name_ = "M";
  std::vector<std::size_t> dims_;
  std::vector<Matrix> rho_;
};

struct ModuleMap {
  Module source;
  Module target;
  std::vector<Matrix> comps;  // comps[i-1]: d_i(target) x d_i(source)

  bool is_homomorphism() const;
  bool is_zero() const;
  bool is_isomorphism() const;
};

ModuleMap identity_map(const Module& m);
ModuleMap zero_map(const Module& source, const Module& target);
/// g after f.
ModuleMap compose(const ModuleMap& g, const ModuleMap& f);
ModuleMap linear_combination(const std::vector<ModuleMap>& maps, const std::vector<Rational>& coeffs);

Module projective(const AlgebraPtr& alg, int i);
Module simple(const AlgebraPtr& alg, int i);

/// Direct sum of projectives P_{v} for v in `vertices`, in order. At vertex j the
/// coordinates are the blocks basis(j, v) concatenated.
Module projective_sum(const AlgebraPtr& alg, const std::vector<int>& vertices);

Module direct_sum(const Module& a, const Module& b);

struct HomSpace {
  std::vector<ModuleMap> basis;
  std::size_t dim() const { return basis.size(); }
};

HomSpace hom(const Module& m, const Module& n);
std::size_t hom_dim(const Module& m, const Module& n);

struct Submodule {
  Module module;
  ModuleMap inclusion;
};

struct Quotient {
  Module module;
  ModuleMap projection;
};

/// Smallest submodule containing the columns of gens[i-1] at each vertex i.
Submodule submodule(const Module& m, const std::vector<Matrix>& gens);
Quotient quotient(const Module& m, const std::vector<Matrix>& sub);
Submodule kernel(const ModuleMap& f);
Submodule image(const ModuleMap& f);

/// Subspace sum of the images of all rho_a landing at vertex i.
Matrix radical_at(const Module& m, int i);
Submodule radical(const Module& m);
Quotient top(const Module& m);
std::vector<std::size_t> top_dims(const Module& m);

struct ProjectiveCover {
  std::vector<int> generators;   // vertex of each summand
  std::vector<Matrix> tops;      // generator vector (column) in m at its vertex
  Module projective;
  ModuleMap epi;
};

ProjectiveCover projective_cover(const Module& m);

/// Module restricted to the full subalgebra on the first k vertices.
Module restrict_module(const Module& m, const AlgebraPtr& sub);

/// Explicit isomorphism from the Hom space, if one exists.
std::optional<ModuleMap> find_isomorphism(const Module& m, const Module& n, std::uint64_t seed = 7);

/// Random quotient of a random sum of projectives.
Module random_module(const AlgebraPtr& alg, Rng& rng, int max_copies = 2);

Module parse_module(std::string_view text, const AlgebraPtr& alg);
Module load_module(const std::string& path, const AlgebraPtr& alg);
std::string to_module_text(const Module& m);

}  // namespace towerkit
