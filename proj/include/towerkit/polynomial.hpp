#pragma once

// Sparse multivariate polynomials over Q with exact division by a single
// polynomial, plus graded elimination for homogeneous ideals.

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "towerkit/linalg.hpp"

namespace towerkit {

using Exponent = std::vector<int>;

class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(std::size_t nvars) : nvars_(nvars) {}

  static Polynomial constant(std::size_t nvars, const Rational& c);
  static Polynomial variable(std::size_t nvars, std::size_t i);
  static Polynomial monomial(const Exponent& e, const Rational& c = 1);

  std::size_t nvars() const { return nvars_; }
  const std::map<Exponent, Rational>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  int degree() const;  // -1 for zero
  bool is_homogeneous() const;
  Rational coefficient(const Exponent& e) const;

  void add_term(const Exponent& e, const Rational& c);

  Polynomial& operator+=(const Polynomial& o);
  Polynomial& operator-=(const Polynomial& o);
  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator*(const Rational& s, const Polynomial& p);
  bool operator==(const Polynomial& o) const { return nvars_ == o.nvars_ && terms_ == o.terms_; }

  Rational evaluate(const std::vector<Rational>& point) const;
  /// Substitute polynomial images for each variable.
  Polynomial substitute(const std::vector<Polynomial>& images) const;

  std::string to_string(const std::vector<std::string>& names) const;

 private:
  std::size_t nvars_ = 0;
  std::map<Exponent, Rational> terms_;
};

struct DivisionResult {
  Polynomial quotient;
  Polynomial remainder;
};

/// Division with graded-lex leading terms; remainder is zero iff divisor | p.
DivisionResult divide(const Polynomial& p, const Polynomial& divisor);

Polynomial det3(const std::vector<std::vector<Polynomial>>& m);

/// All exponent vectors of total degree d in n variables, graded-lex descending.
std::vector<Exponent> monomials_of_degree(std::size_t n, int d);

/// Scalar multiple normalized so the leading coefficient is 1 (zero stays zero).
Polynomial monic(const Polynomial& p);

enum class ZeroStatus { NoCommonZero, CommonZero, Inconclusive };

struct EliminationResult {
  ZeroStatus status = ZeroStatus::Inconclusive;
  int saturation_degree = -1;             // NoCommonZero: degree where the ideal fills everything
  std::vector<Rational> witness;          // CommonZero: exact common projective zero
  std::vector<std::size_t> hilbert;       // codimension of the ideal piece in degrees start..max
};

/// Decides whether homogeneous generators share a nonzero common zero.
/// Degree pieces up to max_degree are checked for fullness; otherwise integer
/// points with coordinates in [-box, box] are searched.
EliminationResult common_zero(const std::vector<Polynomial>& gens, int max_degree, int box = 3);

}  // namespace towerkit
