#include <catch2/catch_amalgamated.hpp>

#include "rbforge/corpus.hpp"
#include "rbforge/pseudotwistor.hpp"
#include "rbforge/search.hpp"

using namespace rbforge;

namespace {

CurvedRBSystem<QField> q_dim1_weight1() {
  auto A = corpus::dim1_unital(QField{});
  auto R = identity_operator(A);
  R.coeff.at(0, 0) = -A.field().one();
  return from_weight_curved(A, R, A.field().one());
}

}  // namespace

TEST_CASE("twistor pair from a system", "[pseudotwistor]") {
  SECTION("zero system gives zero maps") {
    auto A = corpus::poly_x2(QField{});
    CurvedRBSystem<QField> sys(A, zero_operator(A), zero_operator(A),
                               zero_bilinear(A));
    auto tw = twistor_from_system(sys);
    CHECK(tw.T == zero_two_tensor_map(A));
    for (const auto& x : tw.companion.coeff.flat()) CHECK(x.is_zero());
  }
  SECTION("(id, id, mu) over F2: T = 2 id = 0, companion = 3 id = id") {
    auto sys = corpus::f2_dim1_idid();
    auto tw = twistor_from_system(sys);
    CHECK(tw.T == zero_two_tensor_map(sys.algebra()));
    CHECK(tw.companion.coeff.at(0, 0) == sys.algebra().field().one());
  }
  SECTION("(-id, -id, -mu) over Q dim 1: T = -2 id, companion = 3 id") {
    auto sys = q_dim1_weight1();
    auto tw = twistor_from_system(sys);
    CHECK(tw.T.coeff.at(0, 0) == sys.algebra().field().from_int(-2));
    CHECK(tw.companion.coeff.at(0, 0) == sys.algebra().field().from_int(3));
  }
  SECTION("preconditions") {
    auto A = corpus::poly_x2(QField{});
    CurvedRBSystem<QField> invalid(A, identity_operator(A),
                                   identity_operator(A), zero_bilinear(A));
    CHECK_THROWS_AS(twistor_from_system(invalid), PreconditionError);
    CHECK_THROWS_AS(twistor_from_system(corpus::qx2_nonbalanced()),
                    PreconditionError);
  }
}

TEST_CASE("bow-tie diagram", "[pseudotwistor]") {
  SECTION("all-zero data commutes") {
    auto A = corpus::poly_x2(QField{});
    auto rep = check_bowtie(A, zero_two_tensor_map(A),
                            ThreeTensorMap<QField>{Mat<Rational>(
                                8, 8, A.field().zero())},
                            zero_bilinear(A));
    CHECK(rep.pass());
  }
  SECTION("system-induced pairs commute") {
    auto check_system = [](const auto& sys) {
      auto tw = twistor_from_system(sys);
      CHECK(check_bowtie(sys.algebra(), tw.T, tw.companion, sys.omega())
                .pass());
    };
    check_system(corpus::f2_dim1_idid());
    check_system(corpus::f2_dim1_0id());
    check_system(q_dim1_weight1());
  }
  SECTION("perturbing the companion leaves the pushed-through residual") {
    auto A = corpus::poly_x2(QField{});
    auto T = zero_two_tensor_map(A);
    ThreeTensorMap<QField> companion{Mat<Rational>(8, 8, A.field().zero())};
    companion.coeff.at(0, 5) = A.field().one();  // e_(0,0,0) component on
                                                 // input triple (1,0,1)
    auto rep = check_bowtie(A, T, companion, zero_bilinear(A));
    REQUIRE_FALSE(rep.pass());
    // left residual on triple (1,0,1): -(id (x) mu)(e1 (x) e1 (x) e1)
    //                                = -(e1 (x) e1)
    CHECK(rep.residual_left.at(0, 5) == -A.field().one());
    CHECK(rep.violations_left.front() == std::array<std::size_t, 3>{1, 0, 1});
  }
}

TEST_CASE("curvature square", "[pseudotwistor]") {
  auto A = corpus::poly_x2(QField{});
  CHECK(check_omega_square(A, zero_bilinear(A)));

  auto w = zero_bilinear(A);
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j) {
      auto v = A.mul(A.basis(1), A.mul(A.basis(i), A.basis(j)));
      for (std::size_t k = 0; k < 2; ++k) w.coeff.at(i, j, k) = v[k];
    }
  CHECK(check_omega_square(A, w));

  auto bad = zero_bilinear(A);
  bad.coeff.at(1, 1, 0) = -A.field().one();
  CHECK_FALSE(check_omega_square(A, bad));
}

TEST_CASE("curvature square agrees with the balance predicate",
          "[pseudotwistor][property]") {
  SplitMix64 rng(0x5eed);
  auto q_algebras = {corpus::poly_x2(QField{}), corpus::matrix2_rationals()};
  for (const auto& A : q_algebras)
    for (int t = 0; t < 50; ++t) {
      auto w = zero_bilinear(A);
      for (auto& x : w.coeff.flat()) x = A.field().sample(rng);
      CHECK(check_omega_square(A, w) == check_curvature_balance(A, w).ok);
    }
  auto f_algebras = {corpus::poly_x2(FpField(3)),
                     corpus::product_field(FpField(3))};
  for (const auto& A : f_algebras)
    for (int t = 0; t < 50; ++t) {
      auto w = zero_bilinear(A);
      for (auto& x : w.coeff.flat()) x = A.field().sample(rng);
      CHECK(check_omega_square(A, w) == check_curvature_balance(A, w).ok);
    }
}

TEST_CASE("twisted product", "[pseudotwistor]") {
  auto A = corpus::poly_x2(QField{});
  SECTION("T = 0 gives the zero product") {
    auto res = twisted_product(A, zero_two_tensor_map(A));
    CHECK(res.product.is_zero());
    CHECK(res.associative);
  }
  SECTION("T = id recovers the multiplication") {
    auto res = twisted_product(A, identity_two_tensor_map(A));
    CHECK(res.product == mul_bilinear(A));
    CHECK(res.associative);
  }
  SECTION("F2 (id, id, mu) twists to the zero product, matching star") {
    auto sys = corpus::f2_dim1_idid();
    auto tw = twistor_from_system(sys);
    auto res = twisted_product(sys.algebra(), tw.T);
    CHECK(res.product.is_zero());
    CHECK(res.associative);
    CHECK(sys.star(sys.algebra().basis(0), sys.algebra().basis(0)).is_zero());
  }
}

TEST_CASE("mu o T equals star and is associative over balanced F2 systems",
          "[pseudotwistor][property]") {
  // exhaust the 256 pairs on F2[x]/(x^2), keep valid balanced systems
  auto A = corpus::poly_x2(FpField(2));
  SearchSpec spec{A, SearchMode{}, 0, 1000, 1};
  std::size_t balanced_count = 0;
  for (const auto& [R, S] : enumerate_pairs(spec, 0, 256)) {
    auto defect = derive_curvature(A, R, S);
    if (!defect.consistent()) continue;
    CurvedRBSystem<FpField> sys(A, R, S, defect.omega_r);
    if (!check_curvature_balance(A, sys.omega()).ok) continue;
    ++balanced_count;
    auto tw = twistor_from_system(sys);
    CHECK(check_bowtie(A, tw.T, tw.companion, sys.omega()).pass());
    CHECK(check_omega_square(A, sys.omega()));
    auto res = twisted_product(A, tw.T);
    CHECK(res.associative);
    for (std::size_t i = 0; i < 2; ++i)
      for (std::size_t j = 0; j < 2; ++j)
        CHECK(apply_bilinear(A, res.product, A.basis(i), A.basis(j)) ==
              sys.star(A.basis(i), A.basis(j)));
  }
  CHECK(balanced_count > 0);
}
