#include <catch2/catch_amalgamated.hpp>

#include "rbforge/corpus.hpp"
#include "rbforge/rb_system.hpp"
#include "rbforge/search.hpp"

using namespace rbforge;

TEST_CASE("system verification", "[rb-system]") {
  SECTION("zero system always passes") {
    auto A = corpus::poly_x2(QField{});
    CurvedRBSystem<QField> sys(A, zero_operator(A), zero_operator(A),
                               zero_bilinear(A));
    CHECK(sys.verified());
  }
  SECTION("(id, id, mu) over F2 dim 1") {
    // R(a)R(b) = ab, R(R(a)b + aS(b)) = R(2ab) = 0, so omega = mu closes it
    auto sys = corpus::f2_dim1_idid();
    CHECK(sys.verified());
  }
  SECTION("(id, id, 0) over Q[x]/(x^2) fails with residual -1 at (e1,e1)") {
    auto A = corpus::poly_x2(QField{});
    CurvedRBSystem<QField> sys(A, identity_operator(A), identity_operator(A),
                               zero_bilinear(A));
    REQUIRE_FALSE(sys.verified());
    const auto& rep = sys.check();
    CHECK(rep.violations_r.front() == std::pair<std::size_t, std::size_t>{0, 0});
    CHECK(rep.residual_r.coeff.at(0, 0, 0) == -A.field().one());
  }
}

TEST_CASE("star product", "[rb-system]") {
  auto A = corpus::poly_x2(QField{});
  SECTION("zero operators give the zero product") {
    CurvedRBSystem<QField> sys(A, zero_operator(A), zero_operator(A),
                               zero_bilinear(A));
    for (std::size_t i = 0; i < 2; ++i)
      for (std::size_t j = 0; j < 2; ++j)
        CHECK(sys.star(A.basis(i), A.basis(j)).is_zero());
  }
  SECTION("R = S = id doubles the product") {
    auto st = star_product(A, identity_operator(A), identity_operator(A),
                           A.basis(0), A.basis(0));
    CHECK(st == A.basis(0).scaled(A.field().from_int(2)));
  }
  SECTION("char-2 cancellation") {
    auto sys = corpus::f2_dim1_idid();
    CHECK(sys.star(sys.algebra().basis(0), sys.algebra().basis(0)).is_zero());
  }
}

TEST_CASE("curvature balance", "[rb-system]") {
  auto A = corpus::poly_x2(QField{});
  CHECK(check_curvature_balance(A, zero_bilinear(A)).ok);

  SECTION("kappa * mu is balanced for central kappa") {
    auto w = zero_bilinear(A);
    for (std::size_t i = 0; i < 2; ++i)
      for (std::size_t j = 0; j < 2; ++j) {
        auto v = A.mul(A.basis(1), A.mul(A.basis(i), A.basis(j)));
        for (std::size_t k = 0; k < 2; ++k) w.coeff.at(i, j, k) = v[k];
      }
    CHECK(check_curvature_balance(A, w).ok);
  }
  SECTION("the derived qx2 curvature is unbalanced") {
    auto w = zero_bilinear(A);
    w.coeff.at(1, 1, 0) = -A.field().one();
    auto chk = check_curvature_balance(A, w);
    REQUIRE_FALSE(chk.ok);
    // first violating triple in scan order: e1 w(e2 (x) e2) = -e1 vs
    // w(e1 (x) e2) e2 = 0
    CHECK(*chk.witness == std::array<std::size_t, 3>{0, 1, 1});
  }
}

TEST_CASE("kappa extraction", "[rb-system]") {
  SECTION("flat curvature gives kappa = 0") {
    auto A = corpus::poly_x2(QField{});
    CHECK(extract_kappa(A, zero_bilinear(A)).is_zero());
  }
  SECTION("omega = mu over F2 dim 1 gives kappa = 1") {
    auto sys = corpus::f2_dim1_idid();
    CHECK(extract_kappa(sys.algebra(), sys.omega()) ==
          sys.algebra().basis(0));
  }
  SECTION("omega = e2 mul gives kappa = e2") {
    auto A = corpus::poly_x2(QField{});
    auto w = zero_bilinear(A);
    for (std::size_t i = 0; i < 2; ++i)
      for (std::size_t j = 0; j < 2; ++j) {
        auto v = A.mul(A.basis(1), A.mul(A.basis(i), A.basis(j)));
        for (std::size_t k = 0; k < 2; ++k) w.coeff.at(i, j, k) = v[k];
      }
    CHECK(extract_kappa(A, w) == A.basis(1));
  }
  SECTION("preconditions are enforced") {
    auto null2 = corpus::null_algebra(QField{}, 2);
    CHECK_THROWS_AS(extract_kappa(null2, zero_bilinear(null2)),
                    PreconditionError);
    auto A = corpus::poly_x2(QField{});
    auto bad = zero_bilinear(A);
    bad.coeff.at(1, 1, 0) = -A.field().one();
    CHECK_THROWS_AS(extract_kappa(A, bad), PreconditionError);
  }
}

TEST_CASE("curvature derivation", "[rb-system]") {
  SECTION("R = S forces delta = 0") {
    auto A = corpus::matrix2_rationals();
    SplitMix64 rng(3);
    for (int t = 0; t < 10; ++t) {
      auto R = zero_operator(A);
      for (auto& x : R.coeff.flat()) x = A.field().sample(rng);
      auto defect = derive_curvature(A, R, R);
      REQUIRE(defect.consistent());
      CurvedRBSystem<QField> sys(A, R, R, defect.omega_r);
      CHECK(sys.verified());
    }
  }
  SECTION("the qx2 shift operator derives w(x (x) x) = -1") {
    auto A = corpus::poly_x2(QField{});
    auto R = zero_operator(A);
    R.coeff.at(0, 1) = A.field().one();
    auto defect = derive_curvature(A, R, R);
    REQUIRE(defect.consistent());
    auto expected = zero_bilinear(A);
    expected.coeff.at(1, 1, 0) = -A.field().one();
    CHECK(defect.omega_r == expected);
  }
  SECTION("null algebra derives zero curvature for any pair") {
    auto A = corpus::null_algebra(FpField(3), 2);
    SplitMix64 rng(5);
    for (int t = 0; t < 20; ++t) {
      auto R = zero_operator(A), S = zero_operator(A);
      for (auto& x : R.coeff.flat()) x = A.field().sample(rng);
      for (auto& x : S.coeff.flat()) x = A.field().sample(rng);
      auto defect = derive_curvature(A, R, S);
      CHECK(defect.omega_r.is_zero());
      CHECK(defect.omega_s.is_zero());
    }
  }
}

TEST_CASE("weight-shift constructor", "[rb-system]") {
  SECTION("null algebra accepts any operator and weight") {
    auto A = corpus::null_algebra(QField{}, 2);
    auto R = zero_operator(A);
    R.coeff.at(0, 1) = A.field().from_int(7);
    auto sys = from_weight_shift(A, R, A.field().from_int(3));
    CHECK(sys.verified());
    CHECK(sys.omega().is_zero());
  }
  SECTION("R = -id has weight 1 on Q") {
    auto A = corpus::dim1_unital(QField{});
    auto R = identity_operator(A);
    R.coeff.at(0, 0) = -A.field().one();
    auto sys = from_weight_shift(A, R, A.field().one());
    CHECK(sys.verified());
    // S = R + id = 0
    CHECK(sys.S() == zero_operator(A));
  }
  SECTION("weight identity failures carry a witness") {
    auto A = corpus::poly_x2(QField{});
    CHECK_THROWS_AS(from_weight_shift(A, identity_operator(A),
                                      A.field().zero()),
                    PreconditionError);
  }
}

TEST_CASE("weight-curved constructor", "[rb-system]") {
  SECTION("weight 0 with R = 0 gives the zero system") {
    auto A = corpus::poly_x2(QField{});
    auto sys = from_weight_curved(A, zero_operator(A), A.field().zero());
    CHECK(sys.omega().is_zero());
  }
  SECTION("R = -id, lambda = 1 on dim-1 Q gives omega = -mu") {
    auto A = corpus::dim1_unital(QField{});
    auto R = identity_operator(A);
    R.coeff.at(0, 0) = -A.field().one();
    auto sys = from_weight_curved(A, R, A.field().one());
    CHECK(sys.verified());
    CHECK(sys.omega().coeff.at(0, 0, 0) == -A.field().one());
  }
  SECTION("id has weight 1 over F2, recovering (id, id, mu)") {
    auto A = corpus::dim1_unital(FpField(2));
    auto sys = from_weight_curved(A, identity_operator(A), A.field().one());
    auto expect = corpus::f2_dim1_idid();
    CHECK(sys.R() == expect.R());
    CHECK(sys.S() == expect.S());
    CHECK(sys.omega() == expect.omega());
  }
}

TEST_CASE("centralizing-tensor constructor", "[rb-system]") {
  auto A = corpus::matrix2_rationals();
  SECTION("zero tensors give the zero system") {
    auto sys = from_centralizing_tensors(A, zero_tensor_square(A),
                                         zero_tensor_square(A));
    CHECK(sys.R() == zero_operator(A));
    CHECK(sys.omega().is_zero());
  }
  SECTION("Casimir alone gives R = trace(.) I") {
    auto sys = corpus::m2_casimir_r_only();
    // columns of R: e11 -> I, e12 -> 0, e21 -> 0, e22 -> I
    auto R = zero_operator(A);
    R.coeff.at(0, 0) = A.field().one();
    R.coeff.at(3, 0) = A.field().one();
    R.coeff.at(0, 3) = A.field().one();
    R.coeff.at(3, 3) = A.field().one();
    CHECK(sys.R() == R);
    CHECK(sys.S() == zero_operator(A));
    CHECK(sys.omega().is_zero());
  }
  SECTION("Casimir twice composes the central factors") {
    auto sys = corpus::m2_casimir();
    CHECK(sys.R() == sys.S());
    // w(e_i (x) e_j) = -trace(e_i) trace(e_j) I
    for (std::size_t i = 0; i < 4; ++i)
      for (std::size_t j = 0; j < 4; ++j) {
        auto v = apply_bilinear(A, sys.omega(), A.basis(i), A.basis(j));
        bool diag = (i == 0 || i == 3) && (j == 0 || j == 3);
        if (diag)
          CHECK(v == -(A.basis(0) + A.basis(3)));
        else
          CHECK(v.is_zero());
      }
  }
  SECTION("non-centralizing tensors are rejected") {
    auto one_one = zero_tensor_square(A);
    for (std::size_t i : {0u, 3u})
      for (std::size_t j : {0u, 3u})
        one_one.coeff.at(i, j) = A.field().one();
    CHECK_THROWS_AS(from_centralizing_tensors(A, one_one,
                                              zero_tensor_square(A)),
                    PreconditionError);
  }
}

TEST_CASE("derived systems round-trip exhaustively on F2 dim 1",
          "[rb-system][property]") {
  for (auto A : {corpus::null_algebra(FpField(2), 1),
                 corpus::dim1_unital(FpField(2))}) {
    SearchSpec spec{A, SearchMode{}, 0, 1000, 1};
    auto pairs = enumerate_pairs(spec, 0, 4);
    REQUIRE(pairs.size() == 4);
    for (const auto& [R, S] : pairs) {
      auto defect = derive_curvature(A, R, S);
      if (!defect.consistent()) continue;
      CurvedRBSystem<FpField> sys(A, R, S, defect.omega_r);
      CHECK(sys.verified());
      // re-derivation matches: the curvature is unique
      CHECK(derive_curvature(A, sys.R(), sys.S()).omega_r == sys.omega());
    }
  }
}

TEST_CASE("curvature uniqueness: perturbed omega fails verification",
          "[rb-system][property]") {
  auto sys = corpus::f2_dim1_idid();
  auto perturbed = sys.omega();
  perturbed.coeff.at(0, 0, 0) += sys.algebra().field().one();
  CurvedRBSystem<FpField> other(sys.algebra(), sys.R(), sys.S(), perturbed);
  CHECK_FALSE(other.verified());
}

TEST_CASE("star associativity iff balance on the dim-1 exhaustive family",
          "[rb-system][property]") {
  auto A = corpus::dim1_unital(FpField(2));
  SearchSpec spec{A, SearchMode{}, 0, 1000, 1};
  for (const auto& [R, S] : enumerate_pairs(spec, 0, 4)) {
    auto defect = derive_curvature(A, R, S);
    if (!defect.consistent()) continue;
    CurvedRBSystem<FpField> sys(A, R, S, defect.omega_r);
    CHECK(check_star_associativity(sys).ok ==
          check_curvature_balance(A, sys.omega()).ok);
  }
}
