#include "doctest.h"
#include "test_support.hpp"
#include "towerkit/collections.hpp"
#include "towerkit/error.hpp"
#include "towerkit/ncplane.hpp"

using namespace towerkit;

namespace {

Polynomial var(std::size_t i) { return Polynomial::variable(3, i); }

// closed form of the Sklyanin determinant, up to scale
Polynomial sklyanin_cubic(const Rational& a, const Rational& b, const Rational& c) {
  Polynomial x = var(0), y = var(1), z = var(2);
  return (a * a * a + b * b * b + c * c * c) * (x * y * z) - (a * b * c) * (x * x * x + y * y * y + z * z * z);
}

Matrix flip_rows(const Matrix& m) {
  Matrix out(9, m.cols());
  for (std::size_t j = 0; j < 3; ++j)
    for (std::size_t i = 0; i < 3; ++i)
      for (std::size_t k = 0; k < m.cols(); ++k) out.set(3 * j + i, k, m(3 * i + j, k));
  return out;
}

bool same_span(const Matrix& a, const Matrix& b) { return in_span(a, b) && in_span(b, a) && rank(a) == rank(b); }

// numeric contraction of I against a dual vector, straight from the kernel basis
Matrix numeric_nu(const Matrix& kernel_basis, const std::vector<Rational>& w, Side side) {
  Matrix m(3, 3);
  for (std::size_t k = 0; k < 3; ++k)
    for (std::size_t j = 0; j < 3; ++j)
      for (std::size_t i = 0; i < 3; ++i) {
        const Rational& r = kernel_basis(3 * j + i, k);
        if (side == Side::U)
          m.add_to(j, k, w[i] * r);
        else
          m.add_to(i, k, w[j] * r);
      }
  return m;
}

Tensor random_tensor(Rng& rng) {
  Matrix rel(9, 3);
  for (std::size_t r = 0; r < 9; ++r)
    for (std::size_t c = 0; c < 3; ++c) rel.set(r, c, rng.small_rational(3));
  return tensor_from_relations(rel);
}

Matrix decomposable_relations() {
  // v1 (x) u1 and v2 (x) u1 lie in I; any covector killing u1 contracts them to 0
  Matrix rel(9, 3);
  rel.set(0, 0, 1);
  rel.set(3, 1, 1);
  rel.set(5, 2, 1);
  rel.set(7, 2, 1);
  rel.set(8, 2, 2);
  return rel;
}

}  // namespace

TEST_CASE("kernel of the standard tensor is the antisymmetric part") {
  KernelRelations rel = kernel_relations(standard_tensor());
  CHECK(rel.basis.cols() == 3);
  CHECK(flip_rows(rel.basis) == Rational(-1) * rel.basis);
}

TEST_CASE("sklyanin kernel is spanned by its defining relations") {
  Rational a = 1, b = 2, c = 3;
  Matrix expected(9, 3);
  for (std::size_t k = 0; k < 3; ++k) {
    std::size_t x = k, y = (k + 1) % 3, z = (k + 2) % 3;
    expected.add_to(3 * y + z, k, a);
    expected.add_to(3 * z + y, k, b);
    expected.add_to(3 * x + x, k, c);
  }
  Tensor t = sklyanin(a, b, c);
  CHECK(rank(t.mu) == 6);
  CHECK((t.mu * expected).is_zero());
  CHECK(same_span(kernel_relations(t).basis, expected));
}

TEST_CASE("rank-deficient tensors are rejected") {
  Tensor t = load_tensor(data_path("rank5.txt"));
  CHECK_THROWS_AS(kernel_relations(t), Error);
  try {
    kernel_relations(t);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::BadRank);
  }
  CHECK_THROWS_AS(parse_tensor("1 2 3\n"), Error);
  Tensor round = parse_tensor(to_tensor_text(sklyanin(1, 2, 3)));
  CHECK(round.mu == sklyanin(1, 2, 3).mu);
}

TEST_CASE("gamma cubics") {
  CHECK(gamma(standard_tensor(), Side::U).is_zero());
  CHECK(gamma(standard_tensor(), Side::V).is_zero());
  CHECK(gamma(sklyanin(1, -1, 0), Side::U).is_zero());

  const int samples[][3] = {{1, 2, 3}, {2, -1, 5}, {1, 1, -3}, {0, 1, 4}, {3, 3, 3}};
  for (const auto& s : samples) {
    Rational a = s[0], b = s[1], c = s[2];
    Polynomial oracle = monic(sklyanin_cubic(a, b, c));
    for (Side side : {Side::U, Side::V}) {
      Polynomial g = gamma(sklyanin(a, b, c), side);
      CHECK(g == oracle);
      if (!g.is_zero()) {
        CHECK(g.degree() == 3);
        CHECK(g.is_homogeneous());
      }
    }
  }
  CHECK_FALSE(gamma(sklyanin(1, 2, 3), Side::U).is_zero());
}

TEST_CASE("nondegeneracy certificates") {
  auto sk = nondegenerate(sklyanin(1, 2, 3));
  CHECK(sk.status() == NondegStatus::Nondegenerate);
  CHECK(sk.u.degree >= 2);

  auto st = nondegenerate(standard_tensor());
  CHECK(st.status() == NondegStatus::Nondegenerate);

  Tensor bad = tensor_from_relations(decomposable_relations());
  auto cert = nondegenerate(bad);
  CHECK(cert.status() == NondegStatus::Degenerate);
  const SideCertificate& side = cert.u.status == NondegStatus::Degenerate ? cert.u : cert.v;
  Side which = cert.u.status == NondegStatus::Degenerate ? Side::U : Side::V;
  REQUIRE(side.witness.size() == 3);
  CHECK(rank(numeric_nu(kernel_relations(bad).basis, side.witness, which)) <= 1);

  // a bound too small to saturate gives an honest answer rather than a guess
  auto low = nondegenerate(sklyanin(1, 2, 3), 2);
  CHECK(low.status() != NondegStatus::Degenerate);
}

TEST_CASE("gamma correspondence on the sklyanin tensor") {
  auto c = gamma_correspondence(sklyanin(1, 2, 3));
  CHECK(c.skipped.empty());
  CHECK(c.divisible);
  CHECK(c.quotient.degree() == 3);
  CHECK(c.composed.degree() == 6);

  auto s = gamma_correspondence(standard_tensor());
  CHECK_FALSE(s.skipped.empty());

  CHECK_THROWS_AS(gamma_correspondence(tensor_from_relations(decomposable_relations())), Error);
}

TEST_CASE("random nondegenerate tensors: involution and divisibility") {
  Rng rng(20240611);
  int tested = 0;
  int attempts = 0;
  while (tested < 10 && attempts < 200) {
    ++attempts;
    Tensor t = random_tensor(rng);
    if (rank(t.mu) != 6) continue;
    auto cert = nondegenerate(t);
    if (cert.status() != NondegStatus::Nondegenerate) continue;
    ++tested;
    CHECK(opposite(opposite(t)).mu == t.mu);
    CHECK(same_span(kernel_relations(opposite(t)).basis, flip_rows(kernel_relations(t).basis)));
    auto corr = gamma_correspondence(t);
    if (corr.skipped.empty()) CHECK(corr.divisible);
    // pointwise spot check of the certificate
    for (int p = 0; p < 5; ++p) {
      std::vector<Rational> w{rng.small_rational(), rng.small_rational(), rng.small_rational()};
      if (w[0] == 0 && w[1] == 0 && w[2] == 0) continue;
      auto basis = kernel_relations(t).basis;
      CHECK(rank(numeric_nu(basis, w, Side::U)) >= 2);
      CHECK(rank(numeric_nu(basis, w, Side::V)) >= 2);
    }
  }
  CHECK(tested == 10);
}

TEST_CASE("opposite tensors") {
  CHECK(opposite(standard_tensor()).mu == standard_tensor().mu);
  Tensor o = opposite(sklyanin(1, 2, 3));
  CHECK(same_span(kernel_relations(o).basis, kernel_relations(sklyanin(2, 1, 3)).basis));
}

TEST_CASE("algebra from a tensor") {
  auto beilinson = QuiverAlgebra::build(load_quiver(data_path("beilinson.quiver")));
  auto std_alg = algebra_from_mu(standard_tensor());
  CHECK(std_alg->dim() == 15);
  CHECK(same_relation_ideal(std_alg, beilinson));

  auto sk = algebra_from_mu(sklyanin(1, 2, 3));
  CHECK(sk->dim() == 15);
  CHECK(sk->hom_dim(1, 2) == 3);
  CHECK(sk->hom_dim(2, 3) == 3);
  CHECK(sk->hom_dim(1, 3) == 6);
  std::vector<Module> proj;
  for (int i = 1; i <= 3; ++i) proj.push_back(projective(sk, i));
  Verdict v = verdict(proj);
  CHECK(v.exceptional);
  CHECK(v.strong);

  auto op = algebra_from_mu(opposite(sklyanin(1, 2, 3)));
  CHECK(cartan_euler(op).cartan == cartan_euler(sk).cartan);
}

TEST_CASE("F_mu on the plane") {
  auto st = p2_F_mu(standard_tensor());
  CHECK(st.rank == 3);
  CHECK(st.h0 == 6);
  CHECK(st.h1 == 0);
  CHECK(st.h2 == 0);
  CHECK(st.c1 == 3);
  CHECK(st.c2 == 6);
  CHECK(st.chi == st.chi_rr);
  CHECK(st.fiber_injective);
  CHECK(st.rank == st.sym_rank);
  CHECK(st.h0 == st.sym_h0);
  CHECK(st.c1 == st.sym_c1);
  CHECK(st.c2 == st.sym_c2);

  auto sk = p2_F_mu(sklyanin(1, 2, 3));
  CHECK(sk.rank == 3);
  CHECK(sk.h0 == 6);
  CHECK(sk.fiber_injective);

  try {
    p2_F_mu(tensor_from_relations(decomposable_relations()));
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NotNondegenerate);
  }
}
