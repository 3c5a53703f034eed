#pragma once

// Finite-dimensional quiver algebra kQ/I on ordered vertices.
//
// For each pair (i,j) the space e_j A e_i is spanned by paths i -> j. The
// ideal component is reduced to echelon form with the largest path (length,
// then names) as leading monomial; the remaining monomials form basis(i,j).

#include <cstdint>
#include <map>
#include <memory>
#include <vector>

#include "towerkit/linalg.hpp"
#include "towerkit/quiver.hpp"

namespace towerkit {

using Vec = std::vector<Rational>;

/// An element of e_target A e_source, coordinates in basis(source, target).
struct Element {
  int source = 0;
  int target = 0;
  Vec coords;
};

class QuiverAlgebra;
using AlgebraPtr = std::shared_ptr<const QuiverAlgebra>;

class QuiverAlgebra {
 public:
  static AlgebraPtr build(QuiverPresentation pres, Field field = {});

  const QuiverPresentation& presentation() const { return pres_; }
  const Quiver& quiver() const { return pres_.quiver; }
  const std::string& name() const { return pres_.name; }
  int n() const { return pres_.quiver.vertex_count(); }
  Field field() const { return field_; }
  std::uint64_t id() const { return id_; }

  /// Normal-form basis of paths i -> j (empty when i > j).
  const std::vector<Path>& basis(int i, int j) const { return pair(i, j).basis; }
  std::size_t hom_dim(int i, int j) const { return pair(i, j).basis.size(); }
  std::size_t dim() const { return dim_; }

  /// Every path i -> j, in path order.
  const std::vector<Path>& paths(int i, int j) const { return pair(i, j).paths; }
  /// Columns span the ideal component inside paths(i, j) coordinates.
  const Matrix& ideal_component(int i, int j) const { return pair(i, j).ideal; }

  Vec normal_form(const Path& p) const;
  Vec normal_form(const PathVector& v) const;
  PathVector to_path_vector(const Element& x) const;

  Element basis_element(int i, int j, std::size_t k) const;
  Element idempotent(int i) const { return basis_element(i, i, 0); }
  Element multiply(const Element& x, const Element& y) const;

  /// Full subquiver on vertices 1..k with relations supported there.
  AlgebraPtr restrict_to(int k) const;

 private:
  struct PairData {
    std::vector<Path> paths;
    std::map<Path, std::size_t> index;
    std::vector<Path> basis;
    Matrix nf;  // |basis| x |paths|
    Matrix ideal;
  };

  QuiverAlgebra() = default;
  const PairData& pair(int i, int j) const;

  QuiverPresentation pres_;
  Field field_;
  std::uint64_t id_ = 0;
  std::size_t dim_ = 0;
  std::vector<PairData> pairs_;
};

}  // namespace towerkit
