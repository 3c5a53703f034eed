#pragma once

// Composition tensors mu: V (x) U -> W with dims (3,3,6), the relation space
// I = ker mu, the contraction cubics, and the induced three-vertex algebra.
//
// Column 3*j + i of mu (0-based) is the image of v_j (x) u_i.

#include <array>
#include <string>
#include <vector>

#include "towerkit/algebra.hpp"
#include "towerkit/polynomial.hpp"

namespace towerkit {

struct Tensor {
  Matrix mu;  // 6 x 9
};

enum class Side { U, V };

Tensor standard_tensor();
/// Relations a*y(x)z + b*z(x)y + c*x(x)x and their cyclic shifts, with x,y,z
/// the bases of V (left factor) and U (right factor).
Tensor sklyanin(const Rational& a, const Rational& b, const Rational& c);
/// mu is any 6x9 matrix whose kernel is spanned by the given 9-vectors.
Tensor tensor_from_relations(const Matrix& relations);

Tensor parse_tensor(const std::string& text);
Tensor load_tensor(const std::string& path);
std::string to_tensor_text(const Tensor& t);

struct KernelRelations {
  Matrix basis;  // 9 x 3, columns span I
  // r[k][j][i]: coefficient of v_j (x) u_i in the k-th relation
  std::array<std::array<std::array<Rational, 3>, 3>, 3> r;
};

/// Throws BadRank when rank(mu) != 6.
KernelRelations kernel_relations(const Tensor& t);

/// Contraction matrix with entries linear in the dual coordinates of the side:
/// Side::U gives nu_u[j][k] = sum_i u_i r[k][j][i], Side::V gives nu_v[i][k].
std::vector<std::vector<Polynomial>> contraction(const KernelRelations& rel, Side side);

/// det of the contraction; zero is a legal answer.
Polynomial gamma(const Tensor& t, Side side);

enum class NondegStatus { Nondegenerate, Degenerate, Inconclusive };

struct SideCertificate {
  NondegStatus status = NondegStatus::Inconclusive;
  int degree = -1;                 // saturation degree when Nondegenerate
  std::vector<Rational> witness;   // common zero of the 2x2 minors when Degenerate
  std::vector<std::size_t> hilbert;
};

struct NondegeneracyCertificate {
  SideCertificate u, v;
  NondegStatus status() const;
};

NondegeneracyCertificate nondegenerate(const Tensor& t, int max_degree = 8);

std::string to_string(NondegStatus s);

struct CorrespondenceCertificate {
  std::string skipped;                   // nonempty when Gamma_V is identically zero
  std::size_t adjugate_row = 0;          // row of adj(nu_v) used for kappa
  std::vector<Polynomial> kappa;         // quadrics in the V-dual coordinates
  Polynomial gamma_u, gamma_v, composed;
  Polynomial quotient, remainder;
  bool divisible = false;
};

/// kappa(v) spans the left kernel of nu_v on Gamma_V; checks Gamma_V divides
/// Gamma_U(kappa(v)). Skipped when Gamma_V is zero. Throws NotNondegenerate or
/// AdjugateDegenerate.
CorrespondenceCertificate gamma_correspondence(const Tensor& t, int max_degree = 8);

Tensor opposite(const Tensor& t);

/// Arrows a1,b1,c1: 1->2 (basis of U), a2,b2,c2: 2->3 (basis of V), one
/// relation per basis vector of I.
AlgebraPtr algebra_from_mu(const Tensor& t, const std::string& name = "ncplane");

struct FMuReport {
  std::size_t rank = 0;
  std::size_t h0 = 0, h1 = 0, h2 = 0;
  std::size_t c1 = 0, c2 = 0;
  long chi = 0;
  long chi_rr = 0;  // Riemann-Roch from rank and Chern classes
  SideCertificate fiber;  // common zeros of the 3x3 minors of the fiber map
  bool fiber_injective = false;
  // data of S^2(T(-1)) for comparison
  std::size_t sym_rank = 3, sym_h0 = 6, sym_c1 = 3, sym_c2 = 6;
};

/// F_mu = coker(I (x) O -> V (x) T(-1)) on P(U)-dual coordinates.
/// Throws NotNondegenerate when the fiber map drops rank at a certified point.
FMuReport p2_F_mu(const Tensor& t, int max_degree = 8);

}  // namespace towerkit
