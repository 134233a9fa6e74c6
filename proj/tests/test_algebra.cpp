#include <catch2/catch_amalgamated.hpp>

#include "rbforge/corpus.hpp"
#include "rbforge/maps.hpp"

using namespace rbforge;

namespace {

// dim-2 tensor with e1 e1 = e2, e1 e2 = e1, all other products zero;
// (e1 e1) e1 = e2 e1 = 0 but e1 (e1 e1) = e1 e2 = e1, so not associative.
Tensor3<Rational> bad_mul() {
  QField q;
  Tensor3<Rational> c(2, 2, 2, q.zero());
  c.at(0, 0, 1) = q.one();
  c.at(0, 1, 0) = q.one();
  return c;
}

}  // namespace

TEST_CASE("basis products", "[algebra]") {
  auto qx2 = corpus::poly_x2(QField{});
  CHECK(qx2.mul(qx2.basis(1), qx2.basis(1)).is_zero());  // x * x = 0
  CHECK(qx2.mul(qx2.basis(0), qx2.basis(1)) == qx2.basis(1));

  auto m2 = corpus::matrix2_rationals();
  // e12 e21 = e11
  CHECK(m2.mul(m2.basis(1), m2.basis(2)) == m2.basis(0));
  // unit axiom across the whole basis
  for (std::size_t i = 0; i < m2.dim(); ++i) {
    CHECK(m2.mul(*m2.unit(), m2.basis(i)) == m2.basis(i));
    CHECK(m2.mul(m2.basis(i), *m2.unit()) == m2.basis(i));
  }
}

TEST_CASE("associativity gate", "[algebra]") {
  QField q;
  auto rep = check_associativity(q, 2, bad_mul());
  REQUIRE_FALSE(rep.ok());
  CHECK(rep.violations.front() == std::array<std::size_t, 3>{0, 0, 0});
  CHECK(rep.max_norm == "1");
  CHECK_THROWS_AS(Algebra<QField>(q, 2, bad_mul()), LoadError);

  // every corpus algebra has identically zero associator
  CHECK(corpus::poly_x2(QField{}).associativity_report().ok());
  CHECK(corpus::matrix2_rationals().associativity_report().ok());
  CHECK(corpus::null_algebra(FpField(2), 2).associativity_report().ok());
  CHECK(corpus::product_field(FpField(3)).associativity_report().ok());
}

TEST_CASE("unit detection", "[algebra]") {
  // declared units are validated; undeclared ones are solved for
  QField q;
  Tensor3<Rational> c(2, 2, 2, q.zero());
  c.at(0, 0, 0) = q.one();
  c.at(0, 1, 1) = q.one();
  c.at(1, 0, 1) = q.one();
  Algebra<QField> qx2(q, 2, std::move(c));  // no declared unit
  REQUIRE(qx2.is_unital());
  CHECK(*qx2.unit() == qx2.basis(0));

  CHECK_FALSE(corpus::null_algebra(FpField(2), 2).is_unital());
  CHECK_FALSE(corpus::null_algebra(QField{}, 1).is_unital());

  auto m2 = corpus::matrix2_rationals();
  CHECK(*m2.unit() == m2.basis(0) + m2.basis(3));

  // a wrong declared unit is a load error
  CHECK_THROWS_AS(
      Algebra<QField>(q, 2, corpus::poly_x2(QField{}).mul_tensor(),
                      std::vector<Rational>{q.zero(), q.one()}),
      LoadError);
}

TEST_CASE("unit absence is verified infeasible", "[algebra]") {
  // brute force over all 4 elements of the F2 dim-2 null algebra
  auto A = corpus::null_algebra(FpField(2), 2);
  for (Odometer od(2, 2); !od.done(); od.advance()) {
    auto u = A.element({A.field().nth(od.digits()[0]),
                        A.field().nth(od.digits()[1])});
    bool is_unit = true;
    for (std::size_t i = 0; i < 2; ++i)
      if (!(A.mul(u, A.basis(i)) == A.basis(i)) ||
          !(A.mul(A.basis(i), u) == A.basis(i)))
        is_unit = false;
    CHECK_FALSE(is_unit);
  }
}

TEST_CASE("centrality", "[algebra]") {
  auto m2 = corpus::matrix2_rationals();
  CHECK(m2.is_central(*m2.unit()).central);
  auto chk = m2.is_central(m2.basis(1));  // e12
  REQUIRE_FALSE(chk.central);
  CHECK(chk.witness.has_value());
  // e12 e21 = e11 != e22 = e21 e12
  CHECK_FALSE(m2.commutator(m2.basis(1), m2.basis(2)).is_zero());

  auto pxp = corpus::product_field(FpField(3));
  for (std::size_t i = 0; i < 2; ++i)
    CHECK(pxp.is_central(pxp.basis(i)).central);  // commutative
}

TEST_CASE("is_central agrees with commutator scan", "[algebra][property]") {
  auto m2 = corpus::matrix2_rationals();
  SplitMix64 rng(7);
  for (int t = 0; t < 50; ++t) {
    std::vector<Rational> c;
    for (int i = 0; i < 4; ++i) c.push_back(m2.field().sample(rng));
    auto x = m2.element(c);
    bool by_commutator = true;
    for (std::size_t i = 0; i < 4; ++i)
      if (!m2.commutator(x, m2.basis(i)).is_zero()) by_commutator = false;
    CHECK(m2.is_central(x).central == by_commutator);
  }
}

TEST_CASE("linear and bilinear application", "[algebra]") {
  auto m2 = corpus::matrix2_rationals();
  auto id = identity_operator(m2);
  SplitMix64 rng(11);
  std::vector<Rational> c;
  for (int i = 0; i < 4; ++i) c.push_back(m2.field().sample(rng));
  auto a = m2.element(c);
  CHECK(apply_linear(m2, id, a) == a);

  // commutator of matrix units
  CHECK(m2.commutator(m2.basis(1), m2.basis(2)) ==
        m2.basis(0) - m2.basis(3));

  auto w0 = zero_bilinear(m2);
  CHECK(apply_bilinear(m2, w0, a, m2.basis(2)).is_zero());
}

TEST_CASE("bilinearity under random linear combinations",
          "[algebra][property]") {
  auto A = corpus::poly_x2(QField{});
  auto w = mul_bilinear(A);  // the product itself is a bilinear map
  SplitMix64 rng(13);
  for (int t = 0; t < 100; ++t) {
    auto s = A.field().sample(rng), u = A.field().sample(rng);
    std::vector<Rational> c1, c2, c3;
    for (int i = 0; i < 2; ++i) {
      c1.push_back(A.field().sample(rng));
      c2.push_back(A.field().sample(rng));
      c3.push_back(A.field().sample(rng));
    }
    auto a = A.element(c1), b = A.element(c2), d = A.element(c3);
    auto lhs = apply_bilinear(A, w, a.scaled(s) + b.scaled(u), d);
    auto rhs = apply_bilinear(A, w, a, d).scaled(s) +
               apply_bilinear(A, w, b, d).scaled(u);
    CHECK(lhs == rhs);
    auto lhs2 = apply_bilinear(A, w, d, a.scaled(s) + b.scaled(u));
    auto rhs2 = apply_bilinear(A, w, d, a).scaled(s) +
                apply_bilinear(A, w, d, b).scaled(u);
    CHECK(lhs2 == rhs2);
  }
}

TEST_CASE("bimodule map check", "[algebra]") {
  auto qx2 = corpus::poly_x2(QField{});
  CHECK(is_bimodule_map(qx2, zero_bilinear(qx2)).ok);

  // w(a (x) b) = kappa a b with kappa = e2 central
  auto w = zero_bilinear(qx2);
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j) {
      auto v = qx2.mul(qx2.basis(1), qx2.mul(qx2.basis(i), qx2.basis(j)));
      for (std::size_t k = 0; k < 2; ++k) w.coeff.at(i, j, k) = v[k];
    }
  CHECK(is_bimodule_map(qx2, w).ok);

  // w nonzero only at w(e2 (x) e2) = -e1 fails the left action at
  // a = e2, (x, y) = (e1, e2)
  auto bad = zero_bilinear(qx2);
  bad.coeff.at(1, 1, 0) = -qx2.field().one();
  auto chk = is_bimodule_map(qx2, bad);
  REQUIRE_FALSE(chk.ok);
  REQUIRE(chk.witness.has_value());
  CHECK(chk.witness->side == 0);
  CHECK(chk.witness->a == 1);
  CHECK(chk.witness->x == 0);
  CHECK(chk.witness->y == 1);
}

TEST_CASE("centralizing tensors", "[algebra]") {
  auto m2 = corpus::matrix2_rationals();
  CHECK(is_centralizing(m2, corpus::casimir_m2(m2)).ok);
  CHECK(is_centralizing(m2, zero_tensor_square(m2)).ok);

  // 1 (x) 1 does not centralize: a (x) 1 != 1 (x) a already for a = e12
  auto one_one = zero_tensor_square(m2);
  for (std::size_t i : {0u, 3u})
    for (std::size_t j : {0u, 3u})
      one_one.coeff.at(i, j) = m2.field().one();
  auto chk = is_centralizing(m2, one_one);
  REQUIRE_FALSE(chk.ok);
  CHECK(*chk.witness == 0);
}

TEST_CASE("element and operator mismatch errors", "[algebra]") {
  auto qx2 = corpus::poly_x2(QField{});
  auto m2 = corpus::matrix2_rationals();
  CHECK_THROWS_AS(qx2.mul(qx2.basis(0), m2.basis(0)), Error);
  CHECK_THROWS_AS(apply_linear(qx2, identity_operator(m2), qx2.basis(0)),
                  Error);
}
