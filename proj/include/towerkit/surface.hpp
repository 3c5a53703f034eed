#pragma once

// Exact sheaf cohomology on Y = P1 x P1 with coordinates x0,x1 (first factor)
// and y0,y1 (second factor). Classes are Laurent monomials: H^0 of a P1 factor
// uses nonnegative exponents, H^1 uses exponents that are all <= -1.
//
// Sheaves are line bundles O(a,b), fiber sheaves O_{L_p}(d) supported on
// {p} x P1, and one-layer recipes built from them: kernels of maps onto fiber
// sheaves and extensions of a line bundle by a sum of line bundles.

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "towerkit/module.hpp"
#include "towerkit/polynomial.hpp"

namespace towerkit {

using Dims3 = std::array<std::size_t, 3>;

struct Atom {
  enum Kind { Line, Fiber } kind = Line;
  int a = 0, b = 0;                       // bidegree of a line bundle
  std::array<Rational, 2> p{1, 0};        // fiber point on the first factor
  int d = 0;                              // degree of a fiber sheaf

  static Atom line(int a, int b);
  static Atom fiber(const Rational& p0, const Rational& p1, int d);

  Atom twist(int ta, int tb) const;
  std::size_t rank() const { return kind == Line ? 1 : 0; }
  long chi() const;  // closed form
  std::string to_string() const;
};

/// Basis of H^k, as exponent vectors (x0, x1, y0, y1).
std::vector<Exponent> coh_basis(const Atom& s, int k);
Dims3 coh(const Atom& s);
Dims3 coh(const std::vector<Atom>& parts);

/// Forms in x0,x1,y0,y1; rows index targets, columns index sources.
using FormMatrix = std::vector<std::vector<Polynomial>>;

Polynomial parse_form(const std::string& text);
Polynomial zero_form();

/// Induced maps on H^0, H^1, H^2 in the concatenated coh_basis order.
/// Throws DegreeMismatch when an entry has the wrong bidegree.
std::array<Matrix, 3> coh_map(const std::vector<Atom>& src, const std::vector<Atom>& tgt, const FormMatrix& f);

struct BuiltSheaf {
  enum Kind { Split, Kernel, Extension } kind = Split;
  std::string name;
  std::vector<Atom> parts;    // Split
  std::vector<Atom> sources;  // Kernel: sources -> targets (fiber sheaves)
  std::vector<Atom> targets;
  FormMatrix phi;
  std::vector<Atom> sub;      // Extension: 0 -> sub -> E -> quot -> 0
  Atom quot;
  Matrix ext_class;           // column: coordinates in the H^1(sub_k - quot) bases, concatenated

  BuiltSheaf twist(int ta, int tb) const;
  std::size_t rank() const;
  /// Alternating sum of the closed-form Euler characteristics of the recipe.
  long recipe_chi() const;
};

BuiltSheaf split_sheaf(const std::string& name, std::vector<Atom> parts);
/// Checks surjectivity of phi on each fiber; throws DegenerateMap otherwise.
BuiltSheaf kernel_sheaf(const std::string& name, std::vector<Atom> sources, std::vector<Atom> targets, FormMatrix phi);
BuiltSheaf extension_sheaf(const std::string& name, std::vector<Atom> sub, Atom quot, Matrix ext_class);

Dims3 cohomology(const BuiltSheaf& s);
long chi(const Dims3& h);

/// Universal extension 0 -> O^2 -> U -> O(2,-1) -> 0.
BuiltSheaf build_U();

struct FiberPoints {
  std::array<Rational, 2> p1{1, 0};
  std::array<Rational, 2> p2{0, 1};
};

/// phi = [[l11, l12], [l21, l22]] of linear forms in y, row i mapping to O_{L_i}(1).
/// Throws DegenerateMap unless phi is onto each fiber and on global sections.
BuiltSheaf build_F(const FormMatrix& phi, const FiberPoints& pts = {});

/// Seeded phi. With split_det the matrix is P diag(m1, m2) Q for constant P, Q,
/// so det phi factors over Q.
FormMatrix random_phi(std::uint64_t seed, bool split_det = true);

/// Resamples from seed, seed+1, ... until build_F succeeds (at most `tries`).
BuiltSheaf build_F_seeded(std::uint64_t seed, std::uint64_t* used_seed = nullptr, int tries = 16,
                          bool split_det = true, const FiberPoints& pts = {});

/// dim Ext^j(A, B), j = 0, 1, 2. Throws UnsupportedRecipeDepth outside the
/// handled combinations.
Dims3 ext_pair(const BuiltSheaf& a, const BuiltSheaf& b);

struct RhomResult {
  Module module;                 // spaces Hom(O,F), Hom(U,F); arrows act by the two inclusions O -> U
  std::array<Rational, 3> pencil{0, 0, 0};  // det(l*rho_a1 + m*rho_b1) = c0 l^2 + c1 l m + c2 m^2
  bool pencil_distinct_roots = false;
  bool pencil_splits = false;
  Matrix arrow_change;           // 2x2, new arrow k = sum_c arrow_change(c, k) * old arrow c
  Module adapted;                // module after the arrow change
  bool isomorphic = false;       // explicit intertwiner to the reference found
  ModuleMap intertwiner;         // adapted -> reference
};

/// Module over the two-vertex Kronecker algebra `base` (arrows a1, b1 from
/// 1 to 2). Compared with `reference` when given. Throws NotDegreeZero when
/// H(F) or Ext(U, F) has higher terms.
RhomResult rhom_module(const BuiltSheaf& f, const BuiltSheaf& u, const AlgebraPtr& base,
                       const Module* reference = nullptr);

BuiltSheaf parse_sheaf(const std::string& text);
BuiltSheaf load_sheaf(const std::string& path);

}  // namespace towerkit
