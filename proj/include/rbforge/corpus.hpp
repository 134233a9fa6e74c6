#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "rbforge/rb_system.hpp"

namespace rbforge::corpus {

/// All products zero. Has no unit for any dim >= 1.
template <Field F>
Algebra<F> null_algebra(const F& field, std::size_t dim) {
  return Algebra<F>(field, dim,
                    Tensor3<typename F::Scalar>(dim, dim, dim, field.zero()));
}

/// One-dimensional unital algebra e1^2 = e1 (the base field itself).
template <Field F>
Algebra<F> dim1_unital(const F& field) {
  Tensor3<typename F::Scalar> c(1, 1, 1, field.zero());
  c.at(0, 0, 0) = field.one();
  return Algebra<F>(field, 1, std::move(c),
                    std::vector<typename F::Scalar>{field.one()});
}

/// K[x]/(x^2) with basis e1 = 1, e2 = x.
template <Field F>
Algebra<F> poly_x2(const F& field) {
  Tensor3<typename F::Scalar> c(2, 2, 2, field.zero());
  c.at(0, 0, 0) = field.one();
  c.at(0, 1, 1) = field.one();
  c.at(1, 0, 1) = field.one();
  return Algebra<F>(field, 2, std::move(c),
                    std::vector<typename F::Scalar>{field.one(), field.zero()});
}

/// K x K componentwise, basis of the two idempotents.
template <Field F>
Algebra<F> product_field(const F& field) {
  Tensor3<typename F::Scalar> c(2, 2, 2, field.zero());
  c.at(0, 0, 0) = field.one();
  c.at(1, 1, 1) = field.one();
  return Algebra<F>(field, 2, std::move(c),
                    std::vector<typename F::Scalar>{field.one(), field.one()});
}

/// 2x2 matrices over Q, basis order (e11, e12, e21, e22):
/// index t encodes the matrix unit e_{rc} with r = t/2 + 1, c = t%2 + 1.
inline Algebra<QField> matrix2_rationals() {
  QField field;
  Tensor3<Rational> c(4, 4, 4, field.zero());
  auto row = [](std::size_t t) { return t / 2; };
  auto col = [](std::size_t t) { return t % 2; };
  for (std::size_t s = 0; s < 4; ++s)
    for (std::size_t t = 0; t < 4; ++t)
      if (col(s) == row(t)) c.at(s, t, row(s) * 2 + col(t)) = field.one();
  return Algebra<QField>(field, 4, std::move(c),
                         std::vector<Rational>{field.one(), field.zero(),
                                               field.zero(), field.one()});
}

/// The Casimir element sum_{ij} e_ij (x) e_ji of M_2, which centralizes.
inline TensorSquareElement<QField> casimir_m2(const Algebra<QField>& m2) {
  auto t = zero_tensor_square(m2);
  t.coeff.at(0, 0) = m2.field().one();  // e11 (x) e11
  t.coeff.at(1, 2) = m2.field().one();  // e12 (x) e21
  t.coeff.at(2, 1) = m2.field().one();  // e21 (x) e12
  t.coeff.at(3, 3) = m2.field().one();  // e22 (x) e22
  return t;
}

// ---------------------------------------------------------------------------
// Named systems used throughout the test corpus.
// ---------------------------------------------------------------------------

/// (F2, id, id, mu) on the one-dimensional unital algebra: a valid system
/// whose curvature is the multiplication itself.
inline CurvedRBSystem<FpField> f2_dim1_idid() {
  auto A = dim1_unital(FpField(2));
  return CurvedRBSystem<FpField>(A, identity_operator(A),
                                 identity_operator(A), mul_bilinear(A));
}

/// (F2, 0, id, 0) on the same algebra: valid with flat curvature; the
/// canonical witness that the literal differential convention breaks
/// d o d = [w, -] already in degree 0.
inline CurvedRBSystem<FpField> f2_dim1_0id() {
  auto A = dim1_unital(FpField(2));
  return CurvedRBSystem<FpField>(A, zero_operator(A), identity_operator(A),
                                 zero_bilinear(A));
}

/// Q[x]/(x^2) with R = S the coefficient shift (1 -> 0, x -> 1) and the
/// derived curvature w(x (x) x) = -1: a valid system whose curvature is not
/// balanced, so its star product is not associative.
inline CurvedRBSystem<QField> qx2_nonbalanced() {
  auto A = poly_x2(QField{});
  auto R = zero_operator(A);
  R.coeff.at(0, 1) = A.field().one();  // R(e2) = e1
  auto w = zero_bilinear(A);
  w.coeff.at(1, 1, 0) = -A.field().one();
  return CurvedRBSystem<QField>(A, R, R, std::move(w));
}

/// M2(Q) with r = s = Casimir: R = S = trace(.) I and
/// w(a (x) b) = -trace(a) trace(b) I. Valid, symmetric curvature, pre-Lie.
inline CurvedRBSystem<QField> m2_casimir() {
  auto A = matrix2_rationals();
  auto cas = casimir_m2(A);
  return from_centralizing_tensors(A, cas, cas);
}

/// M2(Q) with r = Casimir, s = 0: R = trace(.) I, S = 0, w = 0.
inline CurvedRBSystem<QField> m2_casimir_r_only() {
  auto A = matrix2_rationals();
  return from_centralizing_tensors(A, casimir_m2(A), zero_tensor_square(A));
}

}  // namespace rbforge::corpus
