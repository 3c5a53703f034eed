#include "towerkit/ncplane.hpp"

#include <fstream>
#include <sstream>

#include "towerkit/error.hpp"

namespace towerkit {

namespace {

constexpr std::size_t kVars = 3;

std::size_t col(std::size_t j, std::size_t i) { return 3 * j + i; }

// index of u_a u_b (a <= b) among 00,01,02,11,12,22
std::size_t sym_index(std::size_t a, std::size_t b) {
  if (a > b) std::swap(a, b);
  static const std::size_t table[3][3] = {{0, 1, 2}, {1, 3, 4}, {2, 4, 5}};
  return table[a][b];
}

Polynomial linear_form(const std::array<Rational, 3>& c) {
  Polynomial p(kVars);
  for (std::size_t l = 0; l < kVars; ++l) p += c[l] * Polynomial::variable(kVars, l);
  return p;
}

std::vector<Polynomial> minors2(const std::vector<std::vector<Polynomial>>& m) {
  std::vector<Polynomial> out;
  for (std::size_t r1 = 0; r1 < 3; ++r1)
    for (std::size_t r2 = r1 + 1; r2 < 3; ++r2)
      for (std::size_t c1 = 0; c1 < 3; ++c1)
        for (std::size_t c2 = c1 + 1; c2 < 3; ++c2)
          out.push_back(m[r1][c1] * m[r2][c2] - m[r1][c2] * m[r2][c1]);
  return out;
}

SideCertificate certify(const std::vector<Polynomial>& gens, int max_degree) {
  EliminationResult e = common_zero(gens, max_degree);
  SideCertificate c;
  c.hilbert = e.hilbert;
  switch (e.status) {
    case ZeroStatus::NoCommonZero:
      c.status = NondegStatus::Nondegenerate;
      c.degree = e.saturation_degree;
      break;
    case ZeroStatus::CommonZero:
      c.status = NondegStatus::Degenerate;
      c.witness = e.witness;
      break;
    case ZeroStatus::Inconclusive:
      c.status = NondegStatus::Inconclusive;
      break;
  }
  return c;
}

std::string point_string(const std::vector<Rational>& p) {
  std::string s = "[";
  for (std::size_t i = 0; i < p.size(); ++i) s += (i ? ":" : "") + to_string(p[i]);
  return s + "]";
}

}  // namespace

Tensor standard_tensor() {
  Tensor t{Matrix(6, 9)};
  for (std::size_t j = 0; j < 3; ++j)
    for (std::size_t i = 0; i < 3; ++i) t.mu.set(sym_index(i, j), col(j, i), 1);
  return t;
}

Tensor sklyanin(const Rational& a, const Rational& b, const Rational& c) {
  Matrix rel(9, 3);
  for (std::size_t k = 0; k < 3; ++k) {
    std::size_t x = k, y = (k + 1) % 3, z = (k + 2) % 3;
    rel.add_to(col(y, z), k, a);
    rel.add_to(col(z, y), k, b);
    rel.add_to(col(x, x), k, c);
  }
  return tensor_from_relations(rel);
}

Tensor tensor_from_relations(const Matrix& relations) {
  if (relations.rows() != 9) throw Error(ErrorCode::BadRank, "relations must be vectors in V (x) U");
  return Tensor{kernel(relations.transpose()).transpose()};
}

Tensor parse_tensor(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  std::vector<std::vector<Rational>> rows;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::vector<Rational> row;
    std::string tok;
    while (ls >> tok) row.push_back(parse_rational(tok));
    if (row.empty()) continue;
    if (row.size() != 9)
      throw Error(ErrorCode::Parse, "line " + std::to_string(lineno) + ": expected 9 entries, got " + std::to_string(row.size()));
    rows.push_back(std::move(row));
  }
  if (rows.size() != 6) throw Error(ErrorCode::Parse, "tensor needs 6 rows, got " + std::to_string(rows.size()));
  return Tensor{Matrix::from_rows(rows, 9)};
}

Tensor load_tensor(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw Error(ErrorCode::Parse, "cannot open " + path);
  std::ostringstream ss;
  ss << f.rdbuf();
  return parse_tensor(ss.str());
}

std::string to_tensor_text(const Tensor& t) {
  std::string out;
  for (std::size_t r = 0; r < t.mu.rows(); ++r) {
    for (std::size_t c = 0; c < t.mu.cols(); ++c) out += (c ? " " : "") + to_string(t.mu(r, c));
    out += "\n";
  }
  return out;
}

KernelRelations kernel_relations(const Tensor& t) {
  if (t.mu.rows() != 6 || t.mu.cols() != 9) throw Error(ErrorCode::BadRank, "mu must be a 6x9 matrix");
  std::size_t rk = rank(t.mu);
  if (rk != 6) throw Error(ErrorCode::BadRank, "mu has rank " + std::to_string(rk) + ", expected 6");
  KernelRelations out;
  out.basis = kernel(t.mu);
  for (std::size_t k = 0; k < 3; ++k)
    for (std::size_t j = 0; j < 3; ++j)
      for (std::size_t i = 0; i < 3; ++i) out.r[k][j][i] = out.basis(col(j, i), k);
  return out;
}

std::vector<std::vector<Polynomial>> contraction(const KernelRelations& rel, Side side) {
  std::vector<std::vector<Polynomial>> m(3, std::vector<Polynomial>(3, Polynomial(kVars)));
  for (std::size_t row = 0; row < 3; ++row)
    for (std::size_t k = 0; k < 3; ++k) {
      std::array<Rational, 3> c;
      for (std::size_t l = 0; l < 3; ++l) c[l] = side == Side::U ? rel.r[k][row][l] : rel.r[k][l][row];
      m[row][k] = linear_form(c);
    }
  return m;
}

Polynomial gamma(const Tensor& t, Side side) { return monic(det3(contraction(kernel_relations(t), side))); }

NondegStatus NondegeneracyCertificate::status() const {
  if (u.status == NondegStatus::Degenerate || v.status == NondegStatus::Degenerate) return NondegStatus::Degenerate;
  if (u.status == NondegStatus::Nondegenerate && v.status == NondegStatus::Nondegenerate)
    return NondegStatus::Nondegenerate;
  return NondegStatus::Inconclusive;
}

NondegeneracyCertificate nondegenerate(const Tensor& t, int max_degree) {
  KernelRelations rel = kernel_relations(t);
  NondegeneracyCertificate c;
  c.u = certify(minors2(contraction(rel, Side::U)), max_degree);
  c.v = certify(minors2(contraction(rel, Side::V)), max_degree);
  return c;
}

std::string to_string(NondegStatus s) {
  switch (s) {
    case NondegStatus::Nondegenerate:
      return "Nondegenerate";
    case NondegStatus::Degenerate:
      return "Degenerate";
    case NondegStatus::Inconclusive:
      return "Inconclusive";
  }
  return "?";
}

CorrespondenceCertificate gamma_correspondence(const Tensor& t, int max_degree) {
  NondegeneracyCertificate nd = nondegenerate(t, max_degree);
  if (nd.status() != NondegStatus::Nondegenerate)
    throw Error(ErrorCode::NotNondegenerate, "tensor is " + to_string(nd.status()));
  KernelRelations rel = kernel_relations(t);
  CorrespondenceCertificate out;
  out.gamma_u = monic(det3(contraction(rel, Side::U)));
  out.gamma_v = monic(det3(contraction(rel, Side::V)));
  if (out.gamma_v.is_zero()) {
    out.skipped = "Gamma_V is identically zero";
    return out;
  }
  auto n = contraction(rel, Side::V);
  auto cofactor = [&](std::size_t a, std::size_t b) {
    std::size_t r[2], c[2], nr = 0, nc = 0;
    for (std::size_t x = 0; x < 3; ++x) {
      if (x != a) r[nr++] = x;
      if (x != b) c[nc++] = x;
    }
    Polynomial d = n[r[0]][c[0]] * n[r[1]][c[1]] - n[r[0]][c[1]] * n[r[1]][c[0]];
    return (a + b) % 2 ? Rational(-1) * d : d;
  };
  for (std::size_t row = 0; row < 3; ++row) {
    // row `row` of adj(n) annihilates n from the left wherever det n = 0
    std::vector<Polynomial> kappa;
    bool nonzero = false;
    for (std::size_t i = 0; i < 3; ++i) {
      kappa.push_back(cofactor(i, row));
      nonzero = nonzero || !kappa.back().is_zero();
    }
    if (!nonzero) continue;
    out.adjugate_row = row;
    out.kappa = kappa;
    out.composed = out.gamma_u.substitute(kappa);
    DivisionResult d = divide(out.composed, out.gamma_v);
    out.quotient = d.quotient;
    out.remainder = d.remainder;
    out.divisible = d.remainder.is_zero();
    return out;
  }
  throw Error(ErrorCode::AdjugateDegenerate, "every row of adj(nu_v) vanishes identically");
}

Tensor opposite(const Tensor& t) {
  Tensor o{Matrix(t.mu.rows(), t.mu.cols())};
  for (std::size_t r = 0; r < t.mu.rows(); ++r)
    for (std::size_t j = 0; j < 3; ++j)
      for (std::size_t i = 0; i < 3; ++i) o.mu.set(r, col(j, i), t.mu(r, col(i, j)));
  return o;
}

AlgebraPtr algebra_from_mu(const Tensor& t, const std::string& name) {
  KernelRelations rel = kernel_relations(t);
  QuiverPresentation pres;
  pres.name = name;
  pres.quiver = Quiver(3);
  std::size_t u[3], v[3];
  const char* letters[3] = {"a", "b", "c"};
  for (std::size_t i = 0; i < 3; ++i) u[i] = pres.quiver.add_arrow(std::string(letters[i]) + "1", 1, 2);
  for (std::size_t j = 0; j < 3; ++j) v[j] = pres.quiver.add_arrow(std::string(letters[j]) + "2", 2, 3);
  for (std::size_t k = 0; k < 3; ++k) {
    PathVector pv;
    pv.source = 1;
    pv.target = 3;
    for (std::size_t j = 0; j < 3; ++j)
      for (std::size_t i = 0; i < 3; ++i)
        if (rel.r[k][j][i] != 0) pv.add(Path{1, 3, {u[i], v[j]}}, rel.r[k][j][i]);
    pres.relations.push_back(std::move(pv));
  }
  return QuiverAlgebra::build(std::move(pres));
}

FMuReport p2_F_mu(const Tensor& t, int max_degree) {
  KernelRelations rel = kernel_relations(t);
  FMuReport out;

  // fiber at [u]: I -> V (x) U/<u> = V (x) Lambda^2 U via u' -> u ^ u'
  const std::size_t wedge[3][3] = {{9, 0, 1}, {0, 9, 2}, {1, 2, 9}};
  std::vector<std::vector<Polynomial>> fiber(9, std::vector<Polynomial>(3, Polynomial(kVars)));
  for (std::size_t k = 0; k < 3; ++k)
    for (std::size_t j = 0; j < 3; ++j)
      for (std::size_t i = 0; i < 3; ++i) {
        if (rel.r[k][j][i] == 0) continue;
        for (std::size_t l = 0; l < 3; ++l) {
          if (l == i) continue;
          Rational sign = l < i ? 1 : -1;
          fiber[3 * j + wedge[l][i]][k] += (sign * rel.r[k][j][i]) * Polynomial::variable(kVars, l);
        }
      }
  std::vector<Polynomial> minors;
  for (std::size_t a = 0; a < 9; ++a)
    for (std::size_t b = a + 1; b < 9; ++b)
      for (std::size_t c = b + 1; c < 9; ++c) minors.push_back(det3({fiber[a], fiber[b], fiber[c]}));
  out.fiber = certify(minors, max_degree);
  if (out.fiber.status == NondegStatus::Degenerate)
    throw Error(ErrorCode::NotNondegenerate,
                "I -> V (x) T(-1) drops rank at " + point_string(out.fiber.witness));
  out.fiber_injective = out.fiber.status == NondegStatus::Nondegenerate;

  // H^0(T(-1)) = U and higher cohomology of O and T(-1) vanish on P^2, so the
  // long exact sequence leaves H^0(F) = coker(I -> V (x) U)
  const std::size_t dim_i = rank(rel.basis);
  const std::size_t rank_t = 2;
  out.rank = 3 * rank_t - dim_i;
  out.h0 = 9 - dim_i;
  out.h1 = 0;
  out.h2 = 0;
  out.chi = static_cast<long>(out.h0) - static_cast<long>(out.h1) + static_cast<long>(out.h2);

  // c(T(-1)) = 1/(1-h) = 1 + h + h^2; c(F) = c(T(-1))^3 since I (x) O is trivial
  std::size_t c[3] = {1, 0, 0};
  for (int f = 0; f < 3; ++f) {
    std::size_t n0 = c[0], n1 = c[0] + c[1], n2 = c[0] + c[1] + c[2];
    c[0] = n0;
    c[1] = n1;
    c[2] = n2;
  }
  out.c1 = c[1];
  out.c2 = c[2];
  const long r = static_cast<long>(out.rank), c1 = static_cast<long>(out.c1), c2 = static_cast<long>(out.c2);
  out.chi_rr = r + (3 * c1 + c1 * c1 - 2 * c2) / 2;

  const std::size_t t1 = 1, t2 = 1;
  out.sym_rank = 3;
  out.sym_h0 = 6;  // S^2 U
  out.sym_c1 = 3 * t1;
  out.sym_c2 = 2 * t1 * t1 + 4 * t2;
  return out;
}

}  // namespace towerkit
